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

#include "star_thz/dist_mixture.hpp"
#include "star_thz/errors.hpp"
#include "star_thz/special_math.hpp"

#include <boost/math/tools/roots.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

namespace star_thz
{

using special::CompensatedSum;
using special::log_gamma;

namespace
{
constexpr double max_multi_indices = 1e7;

double gamma_term_pdf(double log_mass, double b, double c, double x)
{
    return std::exp(log_mass + b * std::log(c) + (b - 1.0) * std::log(x) - c * x - log_gamma(b));
}

double gamma_term_moment(double b, double c, double nu)
{
    return std::exp(log_gamma(b + nu) - log_gamma(b) - nu * std::log(c));
}

double normal_pdf(double mean, double sd, double x)
{
    const double z = (x - mean) / sd;
    return std::exp(-0.5 * z * z) / (sd * std::sqrt(2.0 * std::numbers::pi));
}

// E[X^nu] of N(mean, sd^2) in the confluent hypergeometric form.
double normal_raw_moment(double mean, double sd, int nu)
{
    const double ratio = -(mean * mean) / (2.0 * sd * sd);
    if (nu % 2 == 0)
        return std::pow(sd, nu) * std::pow(2.0, nu / 2.0) * std::tgamma((nu + 1) / 2.0) / std::sqrt(std::numbers::pi) *
               special::kummer_1f1(-nu / 2.0, 0.5, ratio);
    return mean * std::pow(sd, nu - 1) * std::pow(2.0, (nu + 1) / 2.0) * std::tgamma(nu / 2.0 + 1.0) /
           std::sqrt(std::numbers::pi) * special::kummer_1f1((1.0 - nu) / 2.0, 1.5, ratio);
}

void check_multi_index_count(std::size_t n, std::size_t m, const char *who)
{
    if (std::pow(static_cast<double>(n), static_cast<double>(m)) > max_multi_indices)
    {
        std::ostringstream msg;
        msg << who << ": " << n << "^" << m << " multi-indices exceed the 1e7 limit; prune mixture components "
            << "or reduce the number of elements";
        throw ConfigError(msg.str());
    }
}

void check_weights(const std::vector<double> &weights, const char *who)
{
    if (weights.empty())
        throw ConfigError(std::string(who) + ": weights must not be empty");
    for (double a : weights)
        if (!(a >= 0.0) || !std::isfinite(a))
            throw ConfigError(std::string(who) + ": weights must be nonnegative and finite");
}
} // namespace

// --- parameter types -----------------------------------------------------------------

double GammaComponent::mass() const
{
    return std::exp(std::log(a) + log_gamma(b) - b * std::log(c));
}

void GammaMixture::validate(double tol) const
{
    if (components.empty())
        throw ConfigError("mixture: at least one component is required");
    double total = 0.0;
    for (std::size_t n = 0; n < components.size(); ++n)
    {
        const GammaComponent &k = components[n];
        if (!(k.a > 0.0) || !(k.b > 0.0) || !(k.c > 0.0) || !std::isfinite(k.a) || !std::isfinite(k.b) ||
            !std::isfinite(k.c))
            throw ConfigError("mixture.components[" + std::to_string(n) + "]: a, b, c must be positive and finite");
        total += k.mass();
    }
    if (std::abs(total - 1.0) > tol)
    {
        std::ostringstream msg;
        msg << "mixture: sum of a_n Gamma(b_n) / c_n^b_n is " << total << ", expected 1";
        throw ConfigError(msg.str());
    }
}

void GaussianMixture::validate(double tol) const
{
    if (components.empty())
        throw ConfigError("mixture: at least one component is required");
    double total = 0.0;
    for (std::size_t n = 0; n < components.size(); ++n)
    {
        const GaussianComponent &k = components[n];
        if (!(k.weight > 0.0 && k.weight <= 1.0) || !(k.std > 0.0) || !std::isfinite(k.mean) || !std::isfinite(k.std))
            throw ConfigError("mixture.components[" + std::to_string(n) +
                              "]: weight must be in (0, 1], std positive, mean finite");
        total += k.weight;
    }
    if (std::abs(total - 1.0) > tol)
    {
        std::ostringstream msg;
        msg << "mixture: component weights sum to " << total << ", expected 1";
        throw ConfigError(msg.str());
    }
}

double CollapsedGammaTerm::log_a() const
{
    return std::log(weight) + b * std::log(c) - log_gamma(b);
}

double CollapsedGammaTerm::a() const
{
    return std::exp(log_a());
}

// --- gamma mixtures -------------------------------------------------------------------

double mog_pdf(const GammaMixture &g, double x)
{
    if (!(x > 0.0))
        throw DomainError("mog_pdf: x must be positive");
    CompensatedSum s;
    for (const GammaComponent &k : g.components)
        s.add(std::exp(std::log(k.a) + (k.b - 1.0) * std::log(x) - k.c * x));
    return s.value();
}

double mog_cdf(const GammaMixture &g, double x)
{
    if (!(x > 0.0))
        return 0.0;
    CompensatedSum s;
    for (const GammaComponent &k : g.components)
        s.add(k.mass() * (std::isinf(x) ? 1.0 : special::lower_incomplete_gamma_reg(k.b, k.c * x)));
    return std::clamp(s.value(), 0.0, 1.0);
}

double mog_moment(const GammaMixture &g, double nu)
{
    CompensatedSum s;
    for (const GammaComponent &k : g.components)
        s.add(std::exp(std::log(k.a) + log_gamma(k.b + nu) - (k.b + nu) * std::log(k.c)));
    return s.value();
}

double mog_pdf(const CollapsedGammaMixture &g, double x)
{
    if (!(x > 0.0))
        throw DomainError("mog_pdf: x must be positive");
    CompensatedSum s;
    for (const CollapsedGammaTerm &t : g.terms)
        s.add(gamma_term_pdf(std::log(t.weight), t.b, t.c, x));
    return s.value();
}

double mog_cdf(const CollapsedGammaMixture &g, double x)
{
    if (!(x > 0.0))
        return 0.0;
    CompensatedSum s;
    for (const CollapsedGammaTerm &t : g.terms)
        s.add(t.weight * (std::isinf(x) ? 1.0 : special::lower_incomplete_gamma_reg(t.b, t.c * x)));
    return std::clamp(s.value(), 0.0, 1.0);
}

double mog_moment(const CollapsedGammaMixture &g, double nu)
{
    CompensatedSum s;
    for (const CollapsedGammaTerm &t : g.terms)
        s.add(t.weight * gamma_term_moment(t.b, t.c, nu));
    return s.value();
}

CollapsedGammaMixture collapse_mog_sum(const std::vector<double> &weights, const GammaMixture &g, double prune_below)
{
    check_weights(weights, "collapse_mog_sum");
    if (g.components.empty())
        throw ConfigError("collapse_mog_sum: mixture has no components");
    const std::size_t n = g.size(), m = weights.size();
    check_multi_index_count(n, m, "collapse_mog_sum");

    // elements with zero weight contribute nothing to the sum
    std::vector<double> active;
    for (double a : weights)
        if (a > 0.0)
            active.push_back(a);
    if (active.empty())
        throw ConfigError("collapse_mog_sum: all weights are zero");

    std::vector<double> mass(n);
    for (std::size_t k = 0; k < n; ++k)
        mass[k] = g.components[k].mass();

    CollapsedGammaMixture out;
    out.multi_indices = static_cast<std::size_t>(std::llround(std::pow(static_cast<double>(n), static_cast<double>(m))));
    double kept = 0.0, total = 0.0;
    for (double p : mass)
        total += p;
    total = std::pow(total, static_cast<double>(active.size()));

    // depth-first walk over (n_1..n_M) carrying Phi_1, Phi_2, Phi_3
    struct Frame
    {
        std::size_t depth;
        double phi1, phi2, phi3;
    };
    std::vector<Frame> stack{{0, 0.0, 0.0, 1.0}};
    while (!stack.empty())
    {
        const Frame f = stack.back();
        stack.pop_back();
        if (f.depth == active.size())
        {
            out.terms.push_back({f.phi3, f.phi1 * f.phi1 / f.phi2, f.phi1 / f.phi2});
            kept += f.phi3;
            continue;
        }
        const double a = active[f.depth];
        for (std::size_t k = n; k-- > 0;)
        {
            const GammaComponent &comp = g.components[k];
            const double phi3 = f.phi3 * mass[k];
            if (phi3 < prune_below)
                continue;
            const double r = a / comp.c;
            stack.push_back({f.depth + 1, f.phi1 + comp.b * r, f.phi2 + comp.b * r * r, phi3});
        }
    }
    if (out.terms.empty())
        throw ConfigError("collapse_mog_sum: pruning removed every term; lower the threshold");
    for (CollapsedGammaTerm &t : out.terms)
        t.weight /= kept;
    out.dropped_weight = std::max(0.0, total - kept);
    return out;
}

// --- Gaussian mixtures ------------------------------------------------------------------

double gm_pdf(const GaussianMixture &g, double x)
{
    CompensatedSum s;
    for (const GaussianComponent &k : g.components)
        s.add(k.weight * normal_pdf(k.mean, k.std, x));
    return s.value();
}

double gm_cdf(const GaussianMixture &g, double x)
{
    CompensatedSum s;
    for (const GaussianComponent &k : g.components)
        s.add(k.weight * (1.0 - special::gauss_q((x - k.mean) / k.std)));
    return std::clamp(s.value(), 0.0, 1.0);
}

double gm_moment(const GaussianMixture &g, int nu)
{
    if (nu < 1)
        throw DomainError("gm_moment: nu must be a positive integer");
    CompensatedSum s;
    for (const GaussianComponent &k : g.components)
        s.add(k.weight * normal_raw_moment(k.mean, k.std, nu));
    return s.value();
}

double gm_pdf(const CollapsedGaussianMixture &g, double x)
{
    CompensatedSum s;
    for (const CollapsedGaussianTerm &t : g.terms)
        s.add(t.weight * normal_pdf(t.mean, std::sqrt(t.var), x));
    return s.value();
}

double gm_cdf(const CollapsedGaussianMixture &g, double x)
{
    CompensatedSum s;
    for (const CollapsedGaussianTerm &t : g.terms)
        s.add(t.weight * (1.0 - special::gauss_q((x - t.mean) / std::sqrt(t.var))));
    return std::clamp(s.value(), 0.0, 1.0);
}

CollapsedGaussianMixture collapse_gm_sum(const std::vector<double> &weights, const GaussianMixture &g,
                                         double prune_below)
{
    check_weights(weights, "collapse_gm_sum");
    if (g.components.empty())
        throw ConfigError("collapse_gm_sum: mixture has no components");
    const std::size_t n = g.size(), m = weights.size();
    check_multi_index_count(n, m, "collapse_gm_sum");
    std::vector<double> active;
    for (double a : weights)
        if (a > 0.0)
            active.push_back(a);
    if (active.empty())
        throw ConfigError("collapse_gm_sum: all weights are zero");

    CollapsedGaussianMixture out;
    out.multi_indices = static_cast<std::size_t>(std::llround(std::pow(static_cast<double>(n), static_cast<double>(m))));
    struct Frame
    {
        std::size_t depth;
        double mean, var, weight;
    };
    std::vector<Frame> stack{{0, 0.0, 0.0, 1.0}};
    double kept = 0.0;
    while (!stack.empty())
    {
        const Frame f = stack.back();
        stack.pop_back();
        if (f.depth == active.size())
        {
            out.terms.push_back({f.weight, f.mean, f.var});
            kept += f.weight;
            continue;
        }
        const double a = active[f.depth];
        for (std::size_t k = n; k-- > 0;)
        {
            const GaussianComponent &comp = g.components[k];
            const double w = f.weight * comp.weight;
            if (w < prune_below)
                continue;
            stack.push_back({f.depth + 1, f.mean + a * comp.mean, f.var + a * a * comp.std * comp.std, w});
        }
    }
    if (out.terms.empty())
        throw ConfigError("collapse_gm_sum: pruning removed every term; lower the threshold");
    if (kept < 1.0)
    {
        for (CollapsedGaussianTerm &t : out.terms)
            t.weight /= kept;
    }
    out.dropped_weight = std::max(0.0, 1.0 - kept);
    return out;
}

double gm_sum_moment(const CollapsedGaussianMixture &c, int nu)
{
    if (nu != 2 && nu != 4)
        return gm_sum_moment_hypergeometric(c, nu);
    CompensatedSum s;
    for (const CollapsedGaussianTerm &t : c.terms)
    {
        const double m2 = t.mean * t.mean;
        s.add(nu == 2 ? t.weight * (m2 + t.var) : t.weight * (m2 * m2 + 6.0 * m2 * t.var + 3.0 * t.var * t.var));
    }
    return s.value();
}

double gm_sum_moment_hypergeometric(const CollapsedGaussianMixture &c, int nu)
{
    if (nu < 1)
        throw DomainError("gm_sum_moment: nu must be a positive integer");
    CompensatedSum s;
    for (const CollapsedGaussianTerm &t : c.terms)
        s.add(t.weight * normal_raw_moment(t.mean, std::sqrt(t.var), nu));
    return s.value();
}

// --- sampling ---------------------------------------------------------------------------

namespace
{
template <class Weights>
std::size_t pick_component(const Weights &w, double total, RngStream &rng)
{
    std::uniform_real_distribution<double> u(0.0, total);
    double r = u(rng);
    for (std::size_t k = 0; k + 1 < w.size(); ++k)
    {
        r -= w[k];
        if (r < 0.0)
            return k;
    }
    return w.size() - 1;
}
} // namespace

double mog_sample(const GammaMixture &g, RngStream &rng)
{
    std::vector<double> mass(g.size());
    double total = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k)
        total += mass[k] = g.components[k].mass();
    const GammaComponent &c = g.components[pick_component(mass, total, rng)];
    std::gamma_distribution<double> d(c.b, 1.0 / c.c);
    return d(rng);
}

double gm_sample(const GaussianMixture &g, RngStream &rng)
{
    std::vector<double> w(g.size());
    double total = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k)
        total += w[k] = g.components[k].weight;
    for (int attempt = 0; attempt < 1000000; ++attempt)
    {
        const GaussianComponent &c = g.components[pick_component(w, total, rng)];
        std::normal_distribution<double> d(c.mean, c.std);
        const double x = d(rng);
        if (x >= 0.0)
            return x;
    }
    throw NumericalError("gm_sample: mixture carries (almost) no mass on x >= 0");
}

double rician_sample(double k_factor, RngStream &rng)
{
    if (!(k_factor >= 0.0))
        throw DomainError("rician_sample: K must be nonnegative");
    const double los = std::sqrt(k_factor / (k_factor + 1.0));
    const double sigma = std::sqrt(0.5 / (k_factor + 1.0));
    std::normal_distribution<double> n(0.0, sigma);
    const double re = los + n(rng), im = n(rng);
    return std::hypot(re, im);
}

double rician_pdf(double k_factor, double x)
{
    if (!(x > 0.0))
        return 0.0;
    const double k1 = k_factor + 1.0;
    const double z = 2.0 * x * std::sqrt(k_factor * k1);
    // exp(-z) scaled Bessel keeps the product finite for large z
    const double log_i0 = z + std::log(std::cyl_bessel_i(0.0, z) * std::exp(-z));
    return 2.0 * k1 * x * std::exp(-k_factor - k1 * x * x + log_i0);
}

// --- EM fit -----------------------------------------------------------------------------

namespace
{
// Shape solving log b - psi(b) = s (s > 0), the exact M-step for a gamma component.
double solve_gamma_shape(double s)
{
    auto f = [s](double lb) {
        const double b = std::exp(lb);
        return std::log(b) - special::digamma(b) - s;
    };
    double lo = std::log(1e-4), hi = std::log(1e7);
    double flo = f(lo), fhi = f(hi);
    if (flo <= 0.0)
        return std::exp(lo);
    if (fhi >= 0.0)
        return std::exp(hi);
    std::uintmax_t iters = 200;
    const auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(50),
                                                     iters);
    return std::exp(0.5 * (r.first + r.second));
}

struct EmState
{
    std::vector<double> pi, b, c;
};

EmState initial_state(const std::vector<double> &sorted, int n, RngStream *jitter)
{
    EmState st;
    const std::size_t size = sorted.size();
    for (int k = 0; k < n; ++k)
    {
        std::size_t lo = size * k / n, hi = size * (k + 1) / n;
        if (jitter)
        {
            std::uniform_real_distribution<double> u(-0.3, 0.3);
            const double span = static_cast<double>(size) / n;
            lo = static_cast<std::size_t>(std::clamp(lo + u(*jitter) * span, 0.0, size - 2.0));
            hi = static_cast<std::size_t>(std::clamp(hi + u(*jitter) * span, lo + 2.0, static_cast<double>(size)));
        }
        double s1 = 0.0, s2 = 0.0;
        for (std::size_t i = lo; i < hi; ++i)
        {
            s1 += sorted[i];
            s2 += sorted[i] * sorted[i];
        }
        const double cnt = static_cast<double>(hi - lo);
        const double mean = s1 / cnt;
        const double var = std::max(s2 / cnt - mean * mean, 1e-6 * mean * mean);
        st.pi.push_back(1.0 / n);
        st.b.push_back(mean * mean / var);
        st.c.push_back(mean / var);
    }
    return st;
}
} // namespace

GammaMixture fit_mog_from_samples(const std::vector<double> &samples, int n_components, std::uint64_t seed,
                                  MogFitReport *report)
{
    if (n_components < 1 || n_components > 8)
        throw ConfigError("fit_mog_from_samples: number of components must be in [1, 8]");
    if (samples.size() < 10000)
        throw ConfigError("fit_mog_from_samples: at least 1e4 samples are required");
    for (double x : samples)
        if (!(x > 0.0) || !std::isfinite(x))
            throw ConfigError("fit_mog_from_samples: samples must be positive and finite");

    std::vector<double> sorted(samples);
    std::sort(sorted.begin(), sorted.end());
    const std::size_t size = sorted.size();
    std::vector<double> lx(size);
    for (std::size_t i = 0; i < size; ++i)
        lx[i] = std::log(sorted[i]);

    const int n = n_components;
    constexpr int max_restarts = 10, max_iter = 5000;
    std::vector<double> lw(n);
    for (int attempt = 0; attempt <= max_restarts; ++attempt)
    {
        RngStream jitter_rng = derive_stream(seed, 0x6d6f67ULL, attempt);
        EmState st = initial_state(sorted, n, attempt == 0 ? nullptr : &jitter_rng);
        std::vector<double> trace;
        bool degenerate = false;
        double prev = -std::numeric_limits<double>::infinity();
        int it = 0;
        for (; it < max_iter; ++it)
        {
            std::vector<double> base(n);
            for (int k = 0; k < n; ++k)
                base[k] = std::log(st.pi[k]) + st.b[k] * std::log(st.c[k]) - log_gamma(st.b[k]);
            std::vector<double> s0(n, 0.0), s1(n, 0.0), s2(n, 0.0);
            CompensatedSum ll;
            for (std::size_t i = 0; i < size; ++i)
            {
                double mx = -std::numeric_limits<double>::infinity();
                for (int k = 0; k < n; ++k)
                {
                    lw[k] = base[k] + (st.b[k] - 1.0) * lx[i] - st.c[k] * sorted[i];
                    mx = std::max(mx, lw[k]);
                }
                double z = 0.0;
                for (int k = 0; k < n; ++k)
                    z += (lw[k] = std::exp(lw[k] - mx));
                ll.add(mx + std::log(z));
                for (int k = 0; k < n; ++k)
                {
                    const double r = lw[k] / z;
                    s0[k] += r;
                    s1[k] += r * sorted[i];
                    s2[k] += r * lx[i];
                }
            }
            const double cur = ll.value();
            trace.push_back(cur);
            for (int k = 0; k < n; ++k)
            {
                if (!(s0[k] > 1e-6 * size))
                {
                    degenerate = true;
                    break;
                }
                const double mean = s1[k] / s0[k];
                const double s = std::log(mean) - s2[k] / s0[k];
                if (!(s > 1e-12))
                {
                    degenerate = true;
                    break;
                }
                st.pi[k] = s0[k] / size;
                st.b[k] = solve_gamma_shape(s);
                st.c[k] = st.b[k] / mean;
            }
            if (degenerate || !std::isfinite(cur))
            {
                degenerate = true;
                break;
            }
            if (std::abs(cur - prev) <= 1e-8 * std::abs(cur))
                break;
            prev = cur;
        }
        if (degenerate)
            continue;

        GammaMixture g;
        double total = 0.0;
        for (int k = 0; k < n; ++k)
            total += st.pi[k];
        for (int k = 0; k < n; ++k)
        {
            // a = pi c^b / Gamma(b) makes the component masses equal to the mixing weights
            const double pi = st.pi[k] / total;
            g.components.push_back({std::exp(std::log(pi) + st.b[k] * std::log(st.c[k]) - log_gamma(st.b[k])),
                                    st.b[k], st.c[k]});
        }
        std::sort(g.components.begin(), g.components.end(),
                  [](const GammaComponent &x, const GammaComponent &y) { return x.b / x.c < y.b / y.c; });
        if (report)
        {
            report->log_likelihood = std::move(trace);
            report->restarts = attempt;
            report->iterations = it + 1;
        }
        return g;
    }
    throw NumericalError("fit_mog_from_samples: every EM run collapsed a component (10 restarts)");
}

// --- JSON -------------------------------------------------------------------------------

namespace
{
double require_number(const nlohmann::json &obj, const char *key, std::size_t index)
{
    const std::string where = "components[" + std::to_string(index) + "]." + key;
    if (!obj.contains(key))
        throw ConfigError("mixture file: missing field " + where);
    if (!obj.at(key).is_number())
        throw ConfigError("mixture file: field " + where + " must be a number");
    return obj.at(key).get<double>();
}
} // namespace

MixtureModel parse_mixture_json(const std::string &text)
{
    nlohmann::json j;
    try
    {
        j = nlohmann::json::parse(text);
    }
    catch (const nlohmann::json::parse_error &e)
    {
        throw ConfigError(std::string("mixture file: ") + e.what());
    }
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
        throw ConfigError("mixture file: field \"type\" (\"mog\" or \"gm\") is required");
    if (!j.contains("components") || !j["components"].is_array())
        throw ConfigError("mixture file: field \"components\" must be an array");
    const std::string type = j["type"].get<std::string>();
    const auto &comps = j["components"];
    if (type == "mog")
    {
        GammaMixture g;
        for (std::size_t i = 0; i < comps.size(); ++i)
            g.components.push_back(
                {require_number(comps[i], "a", i), require_number(comps[i], "b", i), require_number(comps[i], "c", i)});
        g.validate();
        return g;
    }
    if (type == "gm")
    {
        GaussianMixture g;
        for (std::size_t i = 0; i < comps.size(); ++i)
            g.components.push_back({require_number(comps[i], "weight", i), require_number(comps[i], "mean", i),
                                    require_number(comps[i], "std", i)});
        g.validate();
        return g;
    }
    throw ConfigError("mixture file: unknown type \"" + type + "\" (expected \"mog\" or \"gm\")");
}

MixtureModel load_mixture_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open mixture file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    try
    {
        return parse_mixture_json(buf.str());
    }
    catch (const ConfigError &e)
    {
        throw ConfigError(path + ": " + e.what());
    }
}

std::string mixture_to_json(const MixtureModel &m)
{
    nlohmann::json j;
    j["components"] = nlohmann::json::array();
    if (const auto *g = std::get_if<GammaMixture>(&m))
    {
        j["type"] = "mog";
        for (const GammaComponent &k : g->components)
            j["components"].push_back({{"a", k.a}, {"b", k.b}, {"c", k.c}});
    }
    else
    {
        j["type"] = "gm";
        for (const GaussianComponent &k : std::get<GaussianMixture>(m).components)
            j["components"].push_back({{"weight", k.weight}, {"mean", k.mean}, {"std", k.std}});
    }
    return j.dump(2) + "\n";
}

} // namespace star_thz
