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
//
// Acceptance run: one PASS/FAIL line per criterion, INFO lines for supporting
// diagnostics that do not gate the exit status. Exit 0 iff every criterion passes.

#include "star_thz/errors.hpp"
#include "star_thz/recipes.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <tuple>

using namespace star_thz;

namespace
{

using clock_type = std::chrono::steady_clock;

int failures = 0;

void report(const char *id, bool pass, const std::string &detail, clock_type::time_point t0)
{
    const double secs = std::chrono::duration<double>(clock_type::now() - t0).count();
    std::printf("%s %s: %s [%.1f s]\n", pass ? "PASS" : "FAIL", id, detail.c_str(), secs);
    std::fflush(stdout);
    if (!pass)
        ++failures;
}

void info(const char *id, const std::string &detail)
{
    std::printf("INFO %s: %s\n", id, detail.c_str());
    std::fflush(stdout);
}

std::string fmt(const char *f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char *f, ...)
{
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

double seconds_since(clock_type::time_point t0)
{
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

double cell(const CsvTable &t, std::size_t r, const std::string &col)
{
    const CsvCell &c = t.rows()[r][t.column(col)];
    if (const double *d = std::get_if<double>(&c))
        return *d;
    if (const long long *i = std::get_if<long long>(&c))
        return static_cast<double>(*i);
    return std::numeric_limits<double>::quiet_NaN();
}

std::string text(const CsvTable &t, std::size_t r, const std::string &col)
{
    return format_cell(t.rows()[r][t.column(col)]);
}

// |p_hat - p| <= 3 sqrt(p (1 - p) / n): the standard error taken at the analytic value,
// which stays meaningful when the estimate is 0 deep in the tail.
bool covered(double analytic, double estimate, double n)
{
    return std::abs(estimate - analytic) <= 3.0 * std::sqrt(analytic * (1.0 - analytic) / n) + 1e-300;
}

// Largest x at which both series still evaluate; the cdf above it differs from 1
// by less than 1 - F(reach).
double series_reach(const DeltaSeries &s, double lo)
{
    auto ok = [&](double x) {
        try
        {
            (void)s.cdf(x);
            (void)s.pdf(x);
            return true;
        }
        catch (const NumericalError &)
        {
            return false;
        }
    };
    double hi = lo;
    while (ok(hi))
    {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e8)
            return hi;
    }
    for (int it = 0; it < 40 && hi - lo > 1e-6 * hi; ++it)
    {
        const double mid = 0.5 * (lo + hi);
        (ok(mid) ? lo : hi) = mid;
    }
    return lo;
}

constexpr std::uint64_t mc_trials = 1000000;
constexpr std::uint64_t mc_seed = 2024;

// --- distributions ---------------------------------------------------------------

void table1()
{
    const auto t0 = clock_type::now();
    const CsvTable t = build_recipe("table1", default_scenario())[0].table;
    double worst = 0.0;
    for (std::size_t r = 0; r < t.size(); ++r)
        worst = std::max({worst, cell(t, r, "pdf_truncation_error"), cell(t, r, "cdf_truncation_error")});
    const double secs = seconds_since(t0);
    report("table1_truncation", t.size() == 4 && worst <= 1e-12 && secs < 1.0,
           fmt("%zu rows, max truncation error %.3g (<= 1e-12), runtime %.2f s (< 1 s)", t.size(), worst, secs), t0);
}

void exact_sum_vs_mc()
{
    const auto t0 = clock_type::now();
    const AlphaMuParams base = table1_fading();
    bool pass = true;
    std::string detail;
    for (std::size_t m = 2; m <= 5; ++m)
    {
        const std::vector<double> w = table1_weights(m);
        const DeltaSeries s = build_delta_series(w, base, 256);
        const double reach = series_reach(s, 1.0);
        // clamping the cdf to 1 past the reach moves the KS distance by at most tail
        const double tail = 1.0 - s.cdf(reach);
        auto cdf = [&](double x) { return x >= reach ? 1.0 : s.cdf(x); };
        const ChannelModel model{{w, {}}, base, RicianTruth{}};
        const double ks = ks_distance(draw_e2e(model, Side::indoor, mc_trials, mc_seed + m), cdf, 20000);

        auto pdf = [&](double x) { return s.pdf(x); };
        boost::math::quadrature::tanh_sinh<double> ts;
        const double head = ts.integrate(pdf, 0.0, 1.0, 1e-12);
        const double body =
            boost::math::quadrature::gauss_kronrod<double, 31>::integrate(pdf, 1.0, reach, 30, 1e-12);
        const double mass = head + body;
        const bool ok = ks <= 0.002 && std::abs(mass - 1.0) <= 1e-6 && tail <= 1e-6;
        pass = pass && ok;
        detail += fmt("%sM=%zu KS=%.5f mass-1=%.1e", detail.empty() ? "" : "; ", m, ks, mass - 1.0);
        info("exact_sum_reach", fmt("M=%zu series evaluates up to x=%.4g, 1-F there %.2e", m, reach, tail));
    }
    const double secs = seconds_since(t0);
    pass = pass && secs < 30.0;
    report("exact_sum_ks", pass, detail + fmt(" (KS <= 0.002, |mass-1| <= 1e-6, runtime < 30 s)"), t0);
}

void gm_sum_vs_mc()
{
    const auto t0 = clock_type::now();
    const GaussianMixture g = example_gm3();
    bool pass = true;
    std::string detail;
    for (std::size_t m : {2u, 3u, 9u})
    {
        const std::vector<double> w = table1_weights(m);
        const CollapsedGaussianMixture c = collapse_gm_sum(w, g);
        const ChannelModel model{{{}, w}, table1_fading(), g};
        const double ks = ks_distance(draw_e2e(model, Side::outdoor, mc_trials, mc_seed + m),
                                      [&](double x) { return gm_cdf(c, x); }, 10000);
        pass = pass && ks <= 0.002;
        detail += fmt("%sM=%zu KS=%.5f", detail.empty() ? "" : "; ", m, ks);
    }
    const double secs = seconds_since(t0);
    pass = pass && secs < 30.0;
    report("gm_sum_ks", pass, detail + " (KS <= 0.002, runtime < 30 s)", t0);
}

// --- outage and capacity ---------------------------------------------------------

RecipeOptions full_mc()
{
    RecipeOptions o;
    o.trials = mc_trials;
    return o;
}

RecipeOptions analytic_only()
{
    RecipeOptions o;
    o.monte_carlo = false;
    return o;
}

struct OpCheck
{
    std::size_t points = 0, covered = 0, relative_points = 0;
    double worst_relative = 0.0;
    bool relative_ok = true;
};

OpCheck check_op_table(const CsvTable &t)
{
    OpCheck c;
    for (std::size_t r = 0; r < t.size(); ++r)
    {
        const double a = cell(t, r, "analytic"), e = cell(t, r, "mc");
        if (std::isnan(a))
            continue;
        ++c.points;
        if (covered(a, e, static_cast<double>(mc_trials)))
            ++c.covered;
        if (a >= 1e-3)
        {
            ++c.relative_points;
            const double rel = std::abs(e / a - 1.0);
            c.worst_relative = std::max(c.worst_relative, rel);
            c.relative_ok = c.relative_ok && rel <= 0.10;
        }
    }
    return c;
}

void outage_vs_mc(const StarRisScenario &sc)
{
    const auto t0 = clock_type::now();
    const CsvTable t = build_recipe("fig5", sc, full_mc())[0].table;
    const OpCheck c = check_op_table(t);
    const double frac = c.points ? static_cast<double>(c.covered) / static_cast<double>(c.points) : 0.0;
    const double secs = seconds_since(t0);
    const bool pass = c.points == t.size() && c.relative_ok && frac >= 0.95 && secs < 300.0;
    report("outage_vs_mc",
           pass,
           fmt("%zu points, %zu with OP >= 1e-3 (worst relative error %.3f, <= 0.10), %.1f%% inside 3 SE (>= 95%%), "
               "runtime %.0f s (< 300 s)",
               c.points, c.relative_points, c.worst_relative, 100.0 * frac, secs),
           t0);

    // The heavy-load end of the curve: lower powers where OP is large enough for
    // the relative check to bite on the indoor user too.
    SweepRequest req;
    req.grid = {0.0, 2.5, 5.0, 7.5};
    req.metrics = {SweepMetric::op};
    const OpCheck low = check_op_table(run_sweep(sc, req, full_mc()));
    info("outage_vs_mc_low_power",
         fmt("P in {0, 2.5, 5, 7.5} dBm: %zu points, %zu with OP >= 1e-3, worst relative error %.3f, %zu/%zu inside 3 SE",
             low.points, low.relative_points, low.worst_relative, low.covered, low.points));
}

void diversity_order(const StarRisScenario &sc)
{
    const auto t0 = clock_type::now();
    const E2EWeights w = sc.weights();
    const DeltaSeries s = build_delta_series(w.indoor, sc.indoor_fading, sc.series_terms);
    const double target = -static_cast<double>(w.indoor.size()) * sc.indoor_fading.alpha * sc.indoor_fading.mu / 2.0;
    const OutageThresholds th = sc.thresholds();
    bool pass = true;
    std::string detail;
    for (double k2 : sc.kappa2)
    {
        // least squares of log10 OP against log10 SNR over the top decade of the sweep
        const double top = sc.p_dbm.back();
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int n = 0;
        for (double p = top - 10.0; p <= top + 1e-9; p += 1.0)
        {
            const PowerConfig pc = sc.power_at(p, k2);
            const double x = std::log10(pc.snr()), y = std::log10(op_indoor(th, pc, s));
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            ++n;
        }
        const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        pass = pass && std::abs(slope / target - 1.0) <= 0.05;
        detail += fmt("%skappa2=%g slope %.4f", detail.empty() ? "" : "; ", k2, slope);
    }
    report("diversity_order", pass, detail + fmt(" (target %.1f within 5%%)", target), t0);
}

void capacity_saturation(const StarRisScenario &sc)
{
    const auto t0 = clock_type::now();
    const E2EWeights w = sc.weights();
    const AlphaMuApprox fit = fit_alpha_mu_approx(w.indoor, sc.indoor_fading);
    const CollapsedGammaMixture out = collapse_mog_sum(w.outdoor, std::get<GammaMixture>(sc.outdoor_mixture));
    const auto &rule = special::gauss_laguerre_cached(sc.quadrature_order);

    const PowerConfig sat = sc.power_at(60.0, 0.08);
    const double ec_i = ec_indoor(sat, fit, rule), ec_o = ec_outdoor(sat, out, rule);
    const double lim_i = std::log2(6.0), lim_o = std::log2(2.25);

    const double top = sc.p_dbm.back() + 10.0;
    const double gain = ec_indoor(sc.power_at(top, 0.0), fit, rule) - ec_indoor(sc.power_at(top - 10.0, 0.0), fit, rule);
    const double per_doubling = gain / (10.0 / (10.0 * std::log10(2.0)));
    const bool pass = std::abs(ec_i - lim_i) <= 0.05 && std::abs(ec_o - lim_o) <= 0.05 &&
                      std::abs(per_doubling - 1.0) <= 0.02;
    report("capacity_saturation", pass,
           fmt("kappa2=0.08 at 60 dBm: indoor %.4f vs %.4f, outdoor %.4f vs %.4f (within 0.05 bit); kappa2=0 "
               "%g..%g dBm: %.4f bit per 3.01 dB (1 +- 0.02)",
               ec_i, lim_i, ec_o, lim_o, top - 10.0, top, per_doubling),
           t0);
}

void capacity_vs_mc(const StarRisScenario &sc)
{
    const auto t0 = clock_type::now();
    SweepRequest req;
    req.grid = sc.p_dbm;
    req.metrics = {SweepMetric::ec};
    const CsvTable t = run_sweep(sc, req, full_mc());
    double worst = 0.0;
    for (std::size_t r = 0; r < t.size(); ++r)
        worst = std::max(worst, std::abs(cell(t, r, "analytic") - cell(t, r, "mc")));
    const double secs = seconds_since(t0);
    report("capacity_vs_mc", worst <= 0.05 && secs < 300.0,
           fmt("%zu points, worst |analytic - MC| %.4f bit (<= 0.05), runtime %.0f s (< 300 s)", t.size(), worst,
               secs),
           t0);
}

void low_snr_vs_mc(const StarRisScenario &sc)
{
    const auto t0 = clock_type::now();
    SweepRequest req;
    req.grid = {-30.0, -25.0, -20.0, -15.0, -10.0, -5.0};
    req.metrics = {SweepMetric::ec_low_snr};
    const CsvTable t = run_sweep(sc, req, full_mc());
    std::size_t trusted = 0;
    double worst = 0.0;
    bool pass = true;
    for (std::size_t r = 0; r < t.size(); ++r)
    {
        const double rel = std::abs(cell(t, r, "asymptotic") / cell(t, r, "mc") - 1.0);
        const std::string where = fmt("%s P=%g kappa2=%g", text(t, r, "user").c_str(), cell(t, r, "p_dbm"),
                                      cell(t, r, "kappa2"));
        if (text(t, r, "flags").find("low_snr_untrusted") != std::string::npos)
        {
            info("low_snr_untrusted",
                 fmt("%s: second/first order ratio %.3f > 0.25, deviation from MC %.1f%% (not gated)", where.c_str(),
                     cell(t, r, "trust_ratio"), 100.0 * rel));
            continue;
        }
        ++trusted;
        worst = std::max(worst, rel);
        pass = pass && rel <= 0.05;
    }
    pass = pass && trusted >= t.size() / 2;
    report("low_snr_vs_mc", pass,
           fmt("%zu of %zu points inside the trust region (ratio <= 0.25), worst relative deviation %.4f (<= 0.05)",
               trusted, t.size(), worst),
           t0);
}

// (metric, user, access, kappa2, p) -> analytic
using Keyed = std::map<std::tuple<std::string, std::string, std::string, double, double>, double>;

Keyed keyed(const CsvTable &t)
{
    Keyed out;
    for (std::size_t r = 0; r < t.size(); ++r)
        out[{text(t, r, "metric"), text(t, r, "user"), text(t, r, "access"), cell(t, r, "kappa2"),
             cell(t, r, "p_dbm")}] = cell(t, r, "analytic");
    return out;
}

void protocol_ordering(const StarRisScenario &sc)
{
    const auto t0 = clock_type::now();
    StarRisScenario ms = sc;
    ms.protocol = ProtocolMode::ms;
    SweepRequest req;
    req.grid = sc.p_dbm;
    req.metrics = {SweepMetric::op, SweepMetric::ec};
    const Keyed es_v = keyed(run_sweep(sc, req, analytic_only()));
    const Keyed ms_v = keyed(run_sweep(ms, req, analytic_only()));
    std::size_t checked = 0, bad = 0;
    for (const auto &[key, v] : es_v)
    {
        const double other = ms_v.at(key);
        const bool ok = std::get<0>(key) == "op" ? v <= other : v >= other;
        ++checked;
        bad += ok ? 0 : 1;
    }
    report("protocol_ordering", bad == 0 && checked > 0,
           fmt("%zu comparisons (OP_ES <= OP_MS, EC_ES >= EC_MS), %zu violations", checked, bad), t0);
}

void noma_vs_oma(const StarRisScenario &sc)
{
    const auto t0 = clock_type::now();
    const Keyed op = keyed(build_recipe("fig12", sc, analytic_only())[0].table);
    const Keyed rate = keyed(build_recipe("fig13", sc, analytic_only())[0].table);
    std::size_t checked = 0, bad = 0;
    for (const auto &[key, v] : op)
        if (std::get<2>(key) == "noma")
        {
            auto k = key;
            std::get<2>(k) = "oma";
            ++checked;
            bad += v <= op.at(k) ? 0 : 1;
        }
    for (const auto &[key, v] : rate)
        if (std::get<2>(key) == "noma")
        {
            auto k = key;
            std::get<2>(k) = "oma";
            ++checked;
            bad += v >= rate.at(k) ? 0 : 1;
        }
    report("noma_vs_oma", bad == 0 && checked > 0,
           fmt("R_I = R_O = %g, kappa2 in {0, 0.08}: %zu comparisons (OP_NOMA <= OP_OMA per user, sum rate NOMA >= "
               "OMA), %zu violations",
               sc.rate_indoor, checked, bad),
           t0);
}

} // namespace

int main()
{
    const StarRisScenario sc = load_scenario(STAR_THZ_SOURCE_DIR "/data/reference_scenario.toml");
    sc.validate();
    try
    {
        table1();
        exact_sum_vs_mc();
        gm_sum_vs_mc();
        outage_vs_mc(sc);
        diversity_order(sc);
        capacity_saturation(sc);
        capacity_vs_mc(sc);
        low_snr_vs_mc(sc);
        protocol_ordering(sc);
        noma_vs_oma(sc);
    }
    catch (const std::exception &e)
    {
        std::printf("FAIL aborted: %s\n", e.what());
        return 1;
    }
    std::printf("%s: %d criterion failure(s)\n", failures ? "FAILED" : "ALL PASSED", failures);
    return failures ? 1 : 0;
}
