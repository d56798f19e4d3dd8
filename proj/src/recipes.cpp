// SPDX-License-Identifier: Apache-2.0
//
// star-thz-perf: performance analysis of STAR-RIS assisted NOMA THz links
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "star_thz/recipes.hpp"

#include "star_thz/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <map>
#include <sstream>

namespace star_thz
{

namespace
{

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

std::string lower(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

std::string format_number(double v)
{
    return format_cell(CsvCell{v});
}

CsvCell real_or_empty(double v)
{
    return std::isnan(v) ? CsvCell{} : CsvCell{v};
}

std::vector<double> nonzero(const std::vector<double> &w)
{
    std::vector<double> out;
    for (double v : w)
        if (v != 0.0)
            out.push_back(v);
    return out;
}

SimulationPlan plan_for(const StarRisScenario &sc, const RecipeOptions &opts)
{
    SimulationPlan p = sc.mc;
    if (opts.seed)
        p.seed = *opts.seed;
    if (opts.trials)
        p.trials = *opts.trials;
    p.validate();
    return p;
}

void stamp(CsvTable &t, const std::string &name, const SimulationPlan &plan, const RecipeOptions &opts)
{
    t.set_meta("recipe", name);
    t.set_meta("mc", opts.monte_carlo ? "on" : "off");
    if (opts.monte_carlo)
    {
        t.set_meta("trials", std::to_string(plan.trials));
        t.set_meta("seed", std::to_string(plan.seed));
    }
}

// --- analytic state of one scenario --------------------------------------------------

using CollapsedOutdoor = std::variant<CollapsedGammaMixture, CollapsedGaussianMixture>;

struct Analytics
{
    StarRisScenario sc;
    E2EWeights w;
    DeltaSeries series;
    AlphaMuApprox fit;
    CollapsedOutdoor outdoor;
    const special::QuadratureRule &rule;
    double gain_i, gain_o, m2i, m4i, m2o, m4o;

    explicit Analytics(const StarRisScenario &s)
        : sc(s), w(s.weights()), series(build_delta_series(nonzero(w.indoor), s.indoor_fading, s.series_terms)),
          fit(fit_alpha_mu_approx(nonzero(w.indoor), s.indoor_fading)), outdoor(collapse(s, w)),
          rule(special::gauss_laguerre_cached(s.quadrature_order))
    {
        gain_i = low_snr_gain(w.indoor);
        gain_o = low_snr_gain(w.outdoor);
        const std::vector<double> mi = weighted_sum_moments(nonzero(w.indoor), s.indoor_fading, 4);
        m2i = mi[2] / gain_i;
        m4i = mi[4] / (gain_i * gain_i);
        std::visit(
            [&](const auto &c) {
                using T = std::decay_t<decltype(c)>;
                if constexpr (std::is_same_v<T, CollapsedGammaMixture>)
                {
                    m2o = mog_moment(c, 2.0);
                    m4o = mog_moment(c, 4.0);
                }
                else
                {
                    m2o = gm_sum_moment(c, 2);
                    m4o = gm_sum_moment(c, 4);
                }
            },
            outdoor);
        m2o /= gain_o;
        m4o /= gain_o * gain_o;
    }

    static CollapsedOutdoor collapse(const StarRisScenario &s, const E2EWeights &w)
    {
        return std::visit(
            [&](const auto &g) -> CollapsedOutdoor {
                using T = std::decay_t<decltype(g)>;
                if constexpr (std::is_same_v<T, GammaMixture>)
                    return collapse_mog_sum(w.outdoor, g);
                else
                    return collapse_gm_sum(w.outdoor, g);
            },
            s.outdoor_mixture);
    }

    double op(Side u, const PowerConfig &pc, const OutageThresholds &th) const
    {
        if (u == Side::indoor)
            return op_indoor(th, pc, series);
        return std::visit([&](const auto &c) { return op_outdoor(th, pc, c); }, outdoor);
    }

    double op_asym(Side u, const PowerConfig &pc, const OutageThresholds &th) const
    {
        if (u == Side::indoor)
            return op_asymptotic_indoor(th, pc, series);
        if (const auto *m = std::get_if<CollapsedGammaMixture>(&outdoor))
            return op_asymptotic_outdoor(th, pc, *m);
        return nan;
    }

    double op_oma(Side u, const PowerConfig &pc, const OutageThresholds &th) const
    {
        if (u == Side::indoor)
            return op_oma_indoor(th.indoor, pc, series);
        return std::visit([&](const auto &c) { return op_oma_outdoor(th.outdoor, pc, c); }, outdoor);
    }

    double ec(Side u, const PowerConfig &pc) const
    {
        if (u == Side::indoor)
            return ec_indoor(pc, fit, rule);
        return std::visit([&](const auto &c) { return ec_outdoor(pc, c, rule); }, outdoor);
    }

    double ec_asym(Side u, const PowerConfig &pc) const
    {
        return u == Side::indoor ? ec_high_snr_indoor(pc, fit) : ec_high_snr_outdoor(pc);
    }

    double ec_oma(Side u, const PowerConfig &pc) const
    {
        if (u == Side::indoor)
            return ec_oma_indoor(pc, fit, rule);
        return std::visit([&](const auto &c) { return ec_oma_outdoor(pc, c, rule); }, outdoor);
    }

    LowSnrCapacity low(Side u, const PowerConfig &pc) const
    {
        return u == Side::indoor ? ec_low_snr(Side::indoor, pc, m2i, m4i, gain_i)
                                 : ec_low_snr(Side::outdoor, pc, m2o, m4o, gain_o);
    }
};

// --- sweep engine -------------------------------------------------------------------------

struct Point
{
    double p_dbm, kappa2;
};

struct Setting
{
    StarRisScenario sc;
    double sweep_value;
    std::vector<Point> points;
};

const char *variable_name(SweepVariable v)
{
    switch (v)
    {
    case SweepVariable::p:
        return "P";
    case SweepVariable::kappa2:
        return "kappa2";
    case SweepVariable::m:
        return "M";
    case SweepVariable::rho_i:
        return "rho_I";
    }
    return "?";
}

const char *side_name(Side s)
{
    return s == Side::indoor ? "indoor" : "outdoor";
}

std::string join_flags(const std::vector<std::string> &f)
{
    std::string out;
    for (const std::string &s : f)
        out += (out.empty() ? "" : ";") + s;
    return out;
}

class SweepEngine
{
  public:
    SweepEngine(const SweepRequest &req, const RecipeOptions &opts, CsvTable &out)
        : req_(req), opts_(opts), out_(out)
    {
    }

    void run(const Setting &st)
    {
        st.sc.validate();
        const Analytics a(st.sc);
        const ChannelModel model = st.sc.channel_model();
        const SimulationPlan plan = plan_for(st.sc, opts_);
        std::vector<PowerConfig> grid;
        for (const Point &p : st.points)
            grid.push_back(st.sc.power_at(p.p_dbm, p.kappa2));
        const OutageThresholds th = st.sc.thresholds();
        const OutageThresholds th_oma = OutageThresholds::oma_from_rates(st.sc.rate_indoor, st.sc.rate_outdoor);

        std::map<std::tuple<int, int, int>, EmpiricalResult> cache;
        auto mc = [&](Metric metric, Side u, Access acc) -> const EmpiricalResult * {
            if (!opts_.monte_carlo)
                return nullptr;
            const auto key = std::make_tuple(static_cast<int>(metric), static_cast<int>(u), static_cast<int>(acc));
            auto it = cache.find(key);
            if (it == cache.end())
            {
                EmpiricalResult r = metric == Metric::op ? estimate_op(model, plan, u, grid, acc == Access::oma ? th_oma : th, acc)
                                                         : estimate_ec(model, plan, u, grid, acc);
                it = cache.emplace(key, std::move(r)).first;
            }
            return &it->second;
        };

        for (SweepMetric metric : req_.metrics)
        {
            if (metric == SweepMetric::sum_rate)
            {
                for (Access acc : {Access::noma, Access::oma})
                {
                    const EmpiricalResult *ri = mc(Metric::ec, Side::indoor, acc);
                    const EmpiricalResult *ro = mc(Metric::ec, Side::outdoor, acc);
                    for (std::size_t i = 0; i < grid.size(); ++i)
                    {
                        double an, asym = nan;
                        if (acc == Access::noma)
                        {
                            an = a.ec(Side::indoor, grid[i]) + a.ec(Side::outdoor, grid[i]);
                            asym = a.ec_asym(Side::indoor, grid[i]) + a.ec_asym(Side::outdoor, grid[i]);
                        }
                        else
                            an = a.ec_oma(Side::indoor, grid[i]) + a.ec_oma(Side::outdoor, grid[i]);
                        double m = nan, se = nan;
                        if (ri)
                        {
                            m = ri->estimates[i] + ro->estimates[i];
                            se = std::hypot(ri->std_errors[i], ro->std_errors[i]);
                        }
                        emit(st, i, "ec", "sum", acc, an, asym, std::isnan(asym) ? "" : "high_snr", nan, m, se, {});
                    }
                }
                continue;
            }
            for (Side u : {Side::indoor, Side::outdoor})
            {
                const bool is_op = metric == SweepMetric::op || metric == SweepMetric::op_oma;
                const Access acc =
                    (metric == SweepMetric::op_oma || metric == SweepMetric::ec_oma) ? Access::oma : Access::noma;
                const EmpiricalResult *r = mc(is_op ? Metric::op : Metric::ec, u, acc);
                for (std::size_t i = 0; i < grid.size(); ++i)
                {
                    std::vector<std::string> flags;
                    double an = nan, asym = nan, ratio = nan;
                    std::string kind;
                    try
                    {
                        switch (metric)
                        {
                        case SweepMetric::op:
                            an = a.op(u, grid[i], th);
                            asym = a.op_asym(u, grid[i], th);
                            break;
                        case SweepMetric::op_oma:
                            an = a.op_oma(u, grid[i], th_oma);
                            break;
                        case SweepMetric::ec:
                            an = a.ec(u, grid[i]);
                            asym = a.ec_asym(u, grid[i]);
                            break;
                        case SweepMetric::ec_oma:
                            an = a.ec_oma(u, grid[i]);
                            break;
                        case SweepMetric::ec_low_snr:
                        {
                            an = a.ec(u, grid[i]);
                            const LowSnrCapacity l = a.low(u, grid[i]);
                            asym = l.capacity;
                            ratio = l.ratio;
                            if (!l.trusted())
                                flags.push_back("low_snr_untrusted");
                            break;
                        }
                        case SweepMetric::sum_rate:
                            break;
                        }
                    }
                    catch (const NumericalError &)
                    {
                        // only the exact indoor series can run out of reach
                        if (!(is_op && u == Side::indoor))
                            throw;
                        flags.push_back("beyond_series_reach");
                    }
                    if (!std::isnan(asym))
                        kind = metric == SweepMetric::ec_low_snr ? "low_snr" : "high_snr";
                    double m = nan, se = nan;
                    if (r)
                    {
                        m = r->estimates[i];
                        se = r->std_errors[i];
                        if (r->unreliable(i))
                            flags.insert(flags.begin(), "mc_unreliable");
                    }
                    emit(st, i, is_op ? "op" : "ec", side_name(u), acc, an, asym, kind, ratio, m, se, flags);
                }
            }
        }
    }

  private:
    void emit(const Setting &st, std::size_t i, const char *metric, const char *user, Access acc, double an,
              double asym, const std::string &kind, double ratio, double mc, double se,
              const std::vector<std::string> &flags)
    {
        const Point &p = st.points[i];
        double value = st.sweep_value;
        if (req_.variable == SweepVariable::p)
            value = p.p_dbm;
        else if (req_.variable == SweepVariable::kappa2)
            value = p.kappa2;
        out_.add_row({std::string(variable_name(req_.variable)), value, std::string(metric), std::string(user),
                      std::string(acc == Access::noma ? "noma" : "oma"),
                      std::string(st.sc.protocol == ProtocolMode::es ? "es" : "ms"),
                      static_cast<long long>(st.sc.elements()), p.p_dbm, p.kappa2, st.sc.rho_i, real_or_empty(an),
                      real_or_empty(asym), kind.empty() ? CsvCell{} : CsvCell{kind}, real_or_empty(ratio),
                      real_or_empty(mc), real_or_empty(se), join_flags(flags)});
    }

    const SweepRequest &req_;
    const RecipeOptions &opts_;
    CsvTable &out_;
};

std::vector<Point> cartesian(const std::vector<double> &p, const std::vector<double> &k)
{
    std::vector<Point> out;
    for (double kk : k)
        for (double pp : p)
            out.push_back({pp, kk});
    return out;
}

StarRisScenario with_elements(StarRisScenario s, std::size_t m)
{
    if (m == 0)
        throw ConfigError("sweep M: element count must be positive");
    s.cols = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(m))));
    s.rows = (m + s.cols - 1) / s.cols;
    s.active_elements = m;
    s.ms_indoor_elements.clear();
    for (std::size_t k = 0; k < m; k += 2)
        s.ms_indoor_elements.push_back(k);
    return s;
}

// --- distribution recipes ---------------------------------------------------------------------

const std::vector<std::string> &distribution_columns()
{
    static const std::vector<std::string> c{"m", "x", "quantity", "analytic", "mc", "mc_se"};
    return c;
}

std::string weights_text(const std::vector<double> &w)
{
    std::string s;
    for (double v : w)
        s += (s.empty() ? "" : ";") + format_number(v);
    return s;
}

// Density histogram and empirical cdf of samples on x_1..x_n = h, 2h, ..., n h.
void add_distribution_rows(CsvTable &t, std::size_t m, double x_max, std::size_t n_grid, bool pdf_rows,
                           bool cdf_rows, const std::function<double(double)> &pdf,
                           const std::function<double(double)> &cdf, std::vector<double> samples)
{
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    const double h = x_max / static_cast<double>(n_grid);
    auto count_below = [&](double x) {
        return static_cast<double>(std::lower_bound(samples.begin(), samples.end(), x) - samples.begin());
    };
    if (pdf_rows)
        for (std::size_t i = 0; i < n_grid; ++i)
        {
            const double x = (static_cast<double>(i) + 0.5) * h;
            CsvCell mc, se;
            if (!samples.empty())
            {
                const double frac = (count_below(x + 0.5 * h) - count_below(x - 0.5 * h)) / n;
                mc = frac / h;
                se = std::sqrt(frac * (1.0 - frac) / n) / h;
            }
            t.add_row({static_cast<long long>(m), x, std::string("pdf"), pdf(x), mc, se});
        }
    if (cdf_rows)
        for (std::size_t i = 1; i <= n_grid; ++i)
        {
            const double x = static_cast<double>(i) * h;
            CsvCell mc, se;
            if (!samples.empty())
            {
                const double f = static_cast<double>(std::upper_bound(samples.begin(), samples.end(), x) -
                                                     samples.begin()) /
                                 n;
                mc = f;
                se = std::sqrt(f * (1.0 - f) / n);
            }
            t.add_row({static_cast<long long>(m), x, std::string("cdf"), cdf(x), mc, se});
        }
}

CsvTable recipe_table1()
{
    CsvTable t({"m", "weights", "x", "n_terms", "pdf_truncation_error", "cdf_truncation_error"});
    for (std::size_t m = 2; m <= 5; ++m)
    {
        const std::vector<double> w = table1_weights(m);
        const DeltaSeries s = build_delta_series(w, table1_fading(), 30);
        t.add_row({static_cast<long long>(m), weights_text(w), 2.0, 30LL, truncation_error(s, 2.0, SeriesKind::pdf),
                   truncation_error(s, 2.0, SeriesKind::cdf)});
    }
    t.set_meta("recipe", "table1");
    return t;
}

CsvTable recipe_alpha_mu_sum(const std::string &name, bool pdf_rows, const StarRisScenario &sc,
                             const RecipeOptions &opts)
{
    const SimulationPlan plan = plan_for(sc, opts);
    CsvTable t(distribution_columns());
    const AlphaMuParams base = table1_fading();
    const double mean_x = alpha_mu_moment(base, 1.0);
    for (std::size_t m = 2; m <= 5; ++m)
    {
        const std::vector<double> w = table1_weights(m);
        double sum_w = 0.0;
        for (double v : w)
            sum_w += v;
        const DeltaSeries s = build_delta_series(w, base, 256);
        std::vector<double> samples;
        if (opts.monte_carlo)
        {
            const ChannelModel model{{w, {}}, base, RicianTruth{}};
            samples = draw_e2e(model, Side::indoor, plan.trials, plan.seed + m, plan.workers);
        }
        add_distribution_rows(
            t, m, 3.0 * sum_w * mean_x, 120, pdf_rows, !pdf_rows, [&](double x) { return s.pdf(x); },
            [&](double x) { return s.cdf(x); }, std::move(samples));
    }
    stamp(t, name, plan, opts);
    return t;
}

CsvTable recipe_gm_sum(const StarRisScenario &sc, const RecipeOptions &opts)
{
    const SimulationPlan plan = plan_for(sc, opts);
    const GaussianMixture g =
        std::holds_alternative<GaussianMixture>(sc.outdoor_mixture) ? std::get<GaussianMixture>(sc.outdoor_mixture)
                                                                    : example_gm3();
    CsvTable t(distribution_columns());
    double mean = 0.0;
    for (const GaussianComponent &c : g.components)
        mean += c.weight * c.mean;
    for (std::size_t m : {2u, 3u, 9u})
    {
        const std::vector<double> w = table1_weights(m);
        double sum_w = 0.0;
        for (double v : w)
            sum_w += v;
        const CollapsedGaussianMixture c = collapse_gm_sum(w, g);
        std::vector<double> samples;
        if (opts.monte_carlo)
        {
            const ChannelModel model{{{}, w}, table1_fading(), g};
            samples = draw_e2e(model, Side::outdoor, plan.trials, plan.seed + m, plan.workers);
        }
        add_distribution_rows(
            t, m, 2.0 * sum_w * mean, 120, true, true, [&](double x) { return gm_pdf(c, x); },
            [&](double x) { return gm_cdf(c, x); }, std::move(samples));
    }
    stamp(t, "fig4", plan, opts);
    return t;
}

std::vector<double> range(double a, double b, double step)
{
    std::vector<double> out;
    const long n = std::lround(std::floor((b - a) / step + 1e-9));
    for (long i = 0; i <= n; ++i)
        out.push_back(std::round((a + static_cast<double>(i) * step) * 1e9) / 1e9);
    return out;
}

CsvTable sweep_recipe(const std::string &name, const StarRisScenario &sc, SweepRequest req, const RecipeOptions &opts)
{
    CsvTable t = run_sweep(sc, req, opts);
    stamp(t, name, plan_for(sc, opts), opts);
    return t;
}

} // namespace

std::vector<double> table1_weights(std::size_t m)
{
    static const double base[] = {1.0, 0.7, 2.5, 1.4, 0.8};
    std::vector<double> w;
    for (std::size_t i = 0; i < m; ++i)
        w.push_back(base[i % 5]);
    return w;
}

AlphaMuParams table1_fading()
{
    return AlphaMuParams::from_root_mean(0.5, 1.5, 1.0);
}

GaussianMixture example_gm3()
{
    return {{{0.3, 0.6, 0.12}, {0.45, 1.0, 0.18}, {0.25, 1.4, 0.25}}};
}

const std::vector<std::string> &sweep_columns()
{
    static const std::vector<std::string> c{"sweep_var",  "sweep_value", "metric",    "user",           "access",
                                            "protocol",   "m",           "p_dbm",     "kappa2",         "rho_i",
                                            "analytic",   "asymptotic",  "asymptotic_kind", "trust_ratio", "mc",
                                            "mc_se",      "flags"};
    return c;
}

const std::vector<std::string> &recipe_names()
{
    static const std::vector<std::string> n{"table1", "fig2", "fig3",  "fig4",  "fig5",  "fig6", "fig7",
                                            "fig8",   "fig9", "fig10", "fig11", "fig12", "fig13"};
    return n;
}

std::vector<RecipeOutput> build_recipe(const std::string &name, const StarRisScenario &scenario,
                                       const RecipeOptions &opts)
{
    if (std::find(recipe_names().begin(), recipe_names().end(), name) == recipe_names().end())
    {
        std::string all;
        for (const std::string &n : recipe_names())
            all += (all.empty() ? "" : ", ") + n;
        throw UsageError("unknown recipe '" + name + "' (expected one of " + all + ")");
    }
    scenario.validate();
    if (name == "table1")
        return {{name, recipe_table1()}};
    if (name == "fig2" || name == "fig3")
        return {{name, recipe_alpha_mu_sum(name, name == "fig2", scenario, opts)}};
    if (name == "fig4")
        return {{name, recipe_gm_sum(scenario, opts)}};

    StarRisScenario sc = scenario;
    SweepRequest req;
    req.variable = SweepVariable::p;
    req.grid = sc.p_dbm;
    req.kappa2 = sc.kappa2;
    if (name == "fig5")
        req.metrics = {SweepMetric::op};
    else if (name == "fig6")
    {
        sc.indoor_fading = {2.0, 2.0, 1.0};
        req.metrics = {SweepMetric::op};
    }
    else if (name == "fig7")
    {
        req.grid = range(sc.p_dbm.front(), std::max(sc.p_dbm.back(), 60.0), 5.0);
        req.metrics = {SweepMetric::ec};
    }
    else if (name == "fig8")
    {
        req.grid = range(-30.0, 0.0, 2.5);
        req.metrics = {SweepMetric::ec_low_snr};
    }
    else if (name == "fig9")
    {
        req.variable = SweepVariable::kappa2;
        req.grid = range(0.0, 0.2, 0.01);
        req.p_dbm = {30.0};
        req.metrics = {SweepMetric::op, SweepMetric::ec};
    }
    else if (name == "fig10" || name == "fig11")
    {
        sc.protocol = ProtocolMode::ms;
        req.metrics = {name == "fig10" ? SweepMetric::op : SweepMetric::ec};
    }
    else if (name == "fig12")
    {
        // NOMA at the same target rates: gamma_th = 2^R - 1
        const OutageThresholds th = OutageThresholds::from_rates(sc.rate_indoor, sc.rate_outdoor);
        sc.threshold_indoor_db = linear_to_db(th.indoor);
        sc.threshold_outdoor_db = linear_to_db(th.outdoor);
        req.metrics = {SweepMetric::op, SweepMetric::op_oma};
    }
    else if (name == "fig13")
        req.metrics = {SweepMetric::sum_rate};
    return {{name, sweep_recipe(name, sc, req, opts)}};
}

std::vector<std::string> run_recipe(const std::string &name, const StarRisScenario &scenario,
                                    const std::string &out_dir, const RecipeOptions &opts)
{
    const std::vector<RecipeOutput> outputs = build_recipe(name, scenario, opts);
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec)
        throw ConfigError(out_dir + ": cannot create output directory (" + ec.message() + ")");
    std::vector<std::string> paths;
    for (const RecipeOutput &o : outputs)
    {
        const std::string path = (std::filesystem::path(out_dir) / (o.name + ".csv")).string();
        o.table.write(path);
        paths.push_back(path);
    }
    return paths;
}

SweepVariable parse_sweep_variable(const std::string &s)
{
    const std::string v = lower(s);
    if (v == "p")
        return SweepVariable::p;
    if (v == "kappa2")
        return SweepVariable::kappa2;
    if (v == "m")
        return SweepVariable::m;
    if (v == "rho_i")
        return SweepVariable::rho_i;
    throw UsageError("unknown sweep variable '" + s + "' (expected P, kappa2, M or rho_I)");
}

std::vector<SweepMetric> parse_sweep_metrics(const std::string &s)
{
    static const std::map<std::string, SweepMetric> names{
        {"op", SweepMetric::op},         {"ec", SweepMetric::ec},
        {"op_oma", SweepMetric::op_oma}, {"ec_oma", SweepMetric::ec_oma},
        {"ec_low_snr", SweepMetric::ec_low_snr}, {"sum_rate", SweepMetric::sum_rate}};
    std::vector<SweepMetric> out;
    std::stringstream ss(s);
    for (std::string t; std::getline(ss, t, ',');)
    {
        auto it = names.find(lower(t));
        if (it == names.end())
            throw UsageError("unknown metric '" + t + "' (expected op, ec, op_oma, ec_oma, ec_low_snr, sum_rate)");
        if (std::find(out.begin(), out.end(), it->second) == out.end())
            out.push_back(it->second);
    }
    if (out.empty())
        throw UsageError("no metrics requested");
    return out;
}

CsvTable run_sweep(const StarRisScenario &scenario, const SweepRequest &req, const RecipeOptions &opts)
{
    if (req.grid.empty())
        throw ConfigError(std::string("sweep ") + variable_name(req.variable) + ": grid must be nonempty");
    if (req.metrics.empty())
        throw UsageError("no metrics requested");
    const std::vector<double> p = req.p_dbm.empty() ? scenario.p_dbm : req.p_dbm;
    const std::vector<double> k = req.kappa2.empty() ? scenario.kappa2 : req.kappa2;

    std::vector<Setting> settings;
    switch (req.variable)
    {
    case SweepVariable::p:
        settings.push_back({scenario, nan, cartesian(req.grid, k)});
        break;
    case SweepVariable::kappa2:
        settings.push_back({scenario, nan, cartesian(p, req.grid)});
        break;
    case SweepVariable::m:
        for (double v : req.grid)
        {
            if (!(v >= 1.0) || v != std::floor(v))
                throw ConfigError("sweep M: grid values must be positive integers");
            settings.push_back({with_elements(scenario, static_cast<std::size_t>(v)), v, cartesian(p, k)});
        }
        break;
    case SweepVariable::rho_i:
        for (double v : req.grid)
        {
            StarRisScenario s = scenario;
            s.rho_i = v;
            s.rho_o = 1.0 - v;
            settings.push_back({s, v, cartesian(p, k)});
        }
        break;
    }
    // the swept grid travels through the scenario so its invariants are checked too
    for (Setting &st : settings)
    {
        if (req.variable == SweepVariable::p)
            st.sc.p_dbm = req.grid;
        else if (req.variable == SweepVariable::kappa2)
            st.sc.kappa2 = req.grid;
    }

    CsvTable t(sweep_columns());
    SweepEngine engine(req, opts, t);
    for (const Setting &st : settings)
        engine.run(st);
    t.set_meta("sweep", variable_name(req.variable));
    return t;
}

} // namespace star_thz
