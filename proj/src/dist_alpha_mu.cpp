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

#include "star_thz/dist_alpha_mu.hpp"
#include "star_thz/errors.hpp"
#include "star_thz/special_math.hpp"

#include <boost/math/tools/roots.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>

namespace star_thz
{

using special::log_gamma;

// --- single alpha-mu variate ---------------------------------------------------

AlphaMuParams AlphaMuParams::from_root_mean(double alpha, double mu, double root_mean)
{
    AlphaMuParams p{alpha, mu, 1.0};
    p.validate();
    if (!(root_mean > 0.0))
        throw ConfigError("alpha_mu.root_mean must be positive");
    p.omega = root_mean * p.beta() / std::pow(mu, 1.0 / alpha);
    return p;
}

double AlphaMuParams::beta() const
{
    return std::exp(log_gamma(mu + 1.0 / alpha) - log_gamma(mu));
}

double AlphaMuParams::root_mean() const
{
    return omega / beta() * std::pow(mu, 1.0 / alpha);
}

void AlphaMuParams::validate() const
{
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw ConfigError("alpha_mu.alpha must be a positive finite number");
    if (!(mu > 0.0) || !std::isfinite(mu))
        throw ConfigError("alpha_mu.mu must be a positive finite number");
    if (!(omega > 0.0) || !std::isfinite(omega))
        throw ConfigError("alpha_mu.omega must be a positive finite number");
}

double alpha_mu_pdf(const AlphaMuParams &p, double x)
{
    if (!(x > 0.0))
        throw DomainError("alpha_mu_pdf: x must be positive");
    const double a = p.alpha, m = p.mu;
    const double lr = std::log(p.beta() / p.omega); // log of the rate beta / omega
    const double log_f = std::log(a) + a * m * lr + (a * m - 1.0) * std::log(x) -
                         std::exp(a * (lr + std::log(x))) - log_gamma(m);
    return std::exp(log_f);
}

double alpha_mu_cdf(const AlphaMuParams &p, double x)
{
    if (!(x > 0.0))
        return 0.0;
    if (std::isinf(x))
        return 1.0;
    const double z = std::pow(p.beta() * x / p.omega, p.alpha);
    return special::lower_incomplete_gamma_reg(p.mu, z);
}

double alpha_mu_moment(const AlphaMuParams &p, double nu)
{
    if (!(p.mu + nu / p.alpha > 0.0))
        throw DomainError("alpha_mu_moment: moment order must exceed -alpha*mu");
    return std::exp(nu * std::log(p.omega / p.beta()) + log_gamma(p.mu + nu / p.alpha) - log_gamma(p.mu));
}

double alpha_mu_sample(const AlphaMuParams &p, RngStream &rng)
{
    std::gamma_distribution<double> g(p.mu, 1.0);
    return p.root_mean() * std::pow(g(rng) / p.mu, 1.0 / p.alpha);
}

// --- exact weighted sum ----------------------------------------------------------

namespace
{
namespace bmp = boost::multiprecision;
using mpf = bmp::number<bmp::mpfr_float_backend<110, bmp::allocate_stack>, bmp::et_off>;

// Terms this far below the largest one are beyond the working precision.
const mpf negligible("1e-120");
// A result keeps ~15 digits as long as sum|t_i| / |sum t_i| stays below this.
constexpr double max_condition = 1e90;
// Relative size of the discarded terms N_T+1..2N_T tolerated by pdf/cdf.
constexpr double max_relative_tail = 1e-10;
constexpr int max_terms = 512;
} // namespace

struct DeltaSeries::Impl
{
    std::vector<double> weights;
    AlphaMuParams base;
    int n_terms = 0;
    int m = 0;
    double scale = 1.0;     // mean of the weights
    double log_scale = 0.0; // log(scale)
    double prefactor = 0.0;

    std::vector<mpf> abs_delta;  // |delta_i| for weights / scale, i = 0..2 N_T
    std::vector<mpf> pdf_coef;   // prefactor |delta_i| / Gamma(i a + M a mu)
    std::vector<mpf> cdf_coef;   // prefactor |delta_i| / Gamma(i a + M a mu + 1)
    std::vector<std::vector<double>> log_abs_b; // [m][n], unscaled weights

    struct Sums
    {
        mpf head;      // sum_{i=0}^{N_T} signed terms
        mpf abs_head;  // sum_{i=0}^{N_T} |terms|
        mpf last;      // signed term N_T
        mpf tail;      // sum_{i=N_T+1}^{2 N_T} signed terms
        mpf prefix;    // x'^{M a mu - 1} (pdf) or x'^{M a mu} (cdf)
    };

    Sums evaluate(double x_scaled, SeriesKind kind) const
    {
        const std::vector<mpf> &c = kind == SeriesKind::pdf ? pdf_coef : cdf_coef;
        const mpf lx = bmp::log(mpf(x_scaled));
        const mpf y = bmp::exp(mpf(base.alpha) * lx);
        const double lead = m * base.alpha * base.mu - (kind == SeriesKind::pdf ? 1.0 : 0.0);
        Sums s;
        s.prefix = bmp::exp(mpf(lead) * lx);
        mpf power = 1, peak = 0, prev = 0;
        const int total = static_cast<int>(c.size());
        for (int i = 0; i < total; ++i)
        {
            const mpf t = c[i] * power;
            // past the peak the terms decay monotonically
            if (t < prev && t < negligible * peak)
                break;
            peak = std::max(peak, t);
            prev = t;
            const bool negative = (i % 2) == 1;
            if (i <= n_terms)
            {
                s.head += negative ? -t : t;
                s.abs_head += t;
                if (i == n_terms)
                    s.last = negative ? -t : t;
            }
            else
                s.tail += negative ? -t : t;
            power *= y;
        }
        return s;
    }

    double value(double x, SeriesKind kind) const
    {
        const double xs = x / scale;
        const Sums s = evaluate(xs, kind);
        const mpf head_abs = bmp::abs(s.head);
        if (s.abs_head > 0 && (head_abs == 0 || s.abs_head > max_condition * head_abs))
        {
            std::ostringstream msg;
            msg << "exact weighted-sum series: cancellation exceeds working precision at x=" << x
                << " (term magnitudes up to 1e" << static_cast<int>(bmp::log10(s.abs_head).convert_to<double>())
                << ")";
            throw NumericalError(msg.str(), {x, bmp::log10(s.abs_head).convert_to<double>()});
        }
        if (bmp::abs(s.tail) > max_relative_tail * head_abs)
        {
            const double rel = (bmp::abs(s.tail) / head_abs).convert_to<double>();
            std::ostringstream msg;
            msg << "exact weighted-sum series not converged at x=" << x << " with N_T=" << n_terms
                << " (relative tail " << rel << "); increase n_terms";
            throw NumericalError(msg.str(), {x, rel});
        }
        mpf v = s.prefix * s.head;
        if (kind == SeriesKind::pdf)
            v /= scale;
        return v.convert_to<double>();
    }
};

DeltaSeries::DeltaSeries(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

const std::vector<double> &DeltaSeries::weights() const { return impl_->weights; }
const AlphaMuParams &DeltaSeries::base() const { return impl_->base; }
int DeltaSeries::n_terms() const { return impl_->n_terms; }
int DeltaSeries::order() const { return impl_->m; }
double DeltaSeries::prefactor() const { return impl_->prefactor; }

double DeltaSeries::log_abs_delta(int i) const
{
    if (i < 0 || i > impl_->n_terms)
        throw DomainError("DeltaSeries::log_abs_delta: index out of range");
    const Impl &s = *impl_;
    // delta_i scales as scale^{-alpha (i + M mu)}
    return bmp::log(s.abs_delta[i]).convert_to<double>() - s.base.alpha * (i + s.m * s.base.mu) * s.log_scale;
}

int DeltaSeries::delta_sign(int i) const { return (i % 2) == 0 ? 1 : -1; }

double DeltaSeries::delta(int i) const
{
    return delta_sign(i) * std::exp(log_abs_delta(i));
}

std::vector<double> DeltaSeries::delta() const
{
    std::vector<double> d(impl_->n_terms + 1);
    for (int i = 0; i <= impl_->n_terms; ++i)
        d[i] = delta(i);
    return d;
}

double DeltaSeries::log_abs_b(int n, int m) const
{
    if (m < 0 || m >= impl_->m || n < 0 || n > impl_->n_terms)
        throw DomainError("DeltaSeries::log_abs_b: index out of range");
    return impl_->log_abs_b[m][n];
}

double DeltaSeries::b(int n, int m) const
{
    return ((n % 2) == 0 ? 1.0 : -1.0) * std::exp(log_abs_b(n, m));
}

double DeltaSeries::pdf(double x) const
{
    if (!(x > 0.0))
        throw DomainError("exact_sum_pdf: x must be positive");
    if (std::isinf(x))
        return 0.0;
    return std::max(0.0, impl_->value(x, SeriesKind::pdf));
}

double DeltaSeries::cdf(double x) const
{
    if (!(x > 0.0))
        return 0.0;
    if (std::isinf(x))
        return 1.0;
    return std::clamp(impl_->value(x, SeriesKind::cdf), 0.0, 1.0);
}

double DeltaSeries::truncation_error(double x, SeriesKind kind) const
{
    if (!(x > 0.0))
        throw DomainError("truncation_error: x must be positive");
    const Impl &s = *impl_;
    const Impl::Sums sums = s.evaluate(x / s.scale, kind);
    mpf err = bmp::abs(sums.prefix * (sums.last + sums.tail));
    if (kind == SeriesKind::pdf)
        err /= s.scale;
    return err.convert_to<double>();
}

DeltaSeries build_delta_series(const std::vector<double> &weights, const AlphaMuParams &base, int n_terms)
{
    if (weights.empty())
        throw ConfigError("build_delta_series: weights must not be empty");
    for (double a : weights)
        if (!(a > 0.0) || !std::isfinite(a))
            throw ConfigError("build_delta_series: weights must be positive and finite");
    if (n_terms < 1 || n_terms > max_terms)
        throw ConfigError("build_delta_series: n_terms must be in [1, 512], got " + std::to_string(n_terms));
    base.validate();

    auto impl = std::make_shared<DeltaSeries::Impl>();
    impl->weights = weights;
    impl->base = base;
    impl->n_terms = n_terms;
    impl->m = static_cast<int>(weights.size());
    impl->scale = std::accumulate(weights.begin(), weights.end(), 0.0) / impl->m;
    impl->log_scale = std::log(impl->scale);

    const int len = 2 * n_terms + 1;
    const int m_count = impl->m;
    const mpf alpha = base.alpha, mu = base.mu, omega = base.omega;
    const mpf beta = bmp::exp(bmp::lgamma(mu + 1 / alpha) - bmp::lgamma(mu));
    const mpf log_pref = bmp::log(alpha) + mu * bmp::log(mu) - bmp::lgamma(mu);
    impl->prefactor = bmp::exp(m_count * log_pref).convert_to<double>();

    // log G_n = log Gamma(alpha (n+mu)) - log n! - mu log mu, common to every element
    std::vector<mpf> log_g(len);
    for (int n = 0; n < len; ++n)
        log_g[n] = bmp::lgamma(alpha * (n + mu)) - bmp::lgamma(mpf(n + 1)) - mu * bmp::log(mu);

    impl->log_abs_b.assign(m_count, std::vector<double>(n_terms + 1));
    std::vector<mpf> abs_b(len);
    std::vector<mpf> delta;
    for (int k = 0; k < m_count; ++k)
    {
        const mpf scaled = mpf(weights[k]) / impl->scale;
        const mpf log_rate = bmp::log(beta) - bmp::log(scaled * omega);
        const mpf log_rate_raw = bmp::log(beta) - bmp::log(mpf(weights[k]) * omega);
        for (int n = 0; n < len; ++n)
        {
            abs_b[n] = bmp::exp(log_g[n] + alpha * (n + mu) * log_rate);
            if (n <= n_terms)
                impl->log_abs_b[k][n] = (log_g[n] + alpha * (n + mu) * log_rate_raw).convert_to<double>();
        }
        if (k == 0)
        {
            delta = abs_b;
            continue;
        }
        // Cauchy product; both factors carry sign (-1)^index, so magnitudes simply add
        std::vector<mpf> next(len);
        for (int i = 0; i < len; ++i)
        {
            mpf acc = 0;
            for (int j = 0; j <= i; ++j)
                acc += delta[i - j] * abs_b[j];
            next[i] = acc;
        }
        delta.swap(next);
    }

    const mpf pref = bmp::exp(m_count * log_pref);
    const mpf lead = m_count * alpha * mu;
    impl->abs_delta = delta;
    impl->pdf_coef.resize(len);
    impl->cdf_coef.resize(len);
    for (int i = 0; i < len; ++i)
    {
        const mpf arg = i * alpha + lead;
        impl->pdf_coef[i] = pref * delta[i] * bmp::exp(-bmp::lgamma(arg));
        impl->cdf_coef[i] = impl->pdf_coef[i] / arg;
    }
    return DeltaSeries(std::move(impl));
}

double exact_sum_pdf(const DeltaSeries &s, double x) { return s.pdf(x); }
double exact_sum_cdf(const DeltaSeries &s, double x) { return s.cdf(x); }
double truncation_error(const DeltaSeries &s, double x, SeriesKind kind) { return s.truncation_error(x, kind); }

// --- moment-matched approximation -------------------------------------------------

double AlphaMuApprox::beta_star() const
{
    return params().beta();
}

std::vector<double> weighted_sum_moments(const std::vector<double> &weights, const AlphaMuParams &base,
                                         int max_order)
{
    if (weights.empty())
        throw ConfigError("weighted_sum_moments: weights must not be empty");
    std::vector<double> single(max_order + 1);
    for (int k = 0; k <= max_order; ++k)
        single[k] = k == 0 ? 1.0 : alpha_mu_moment(base, k);
    // binomial coefficients
    std::vector<std::vector<double>> binom(max_order + 1, std::vector<double>(max_order + 1, 0.0));
    for (int n = 0; n <= max_order; ++n)
    {
        binom[n][0] = binom[n][n] = 1.0;
        for (int k = 1; k < n; ++k)
            binom[n][k] = binom[n - 1][k - 1] + binom[n - 1][k];
    }
    std::vector<double> acc(max_order + 1, 0.0);
    acc[0] = 1.0;
    for (double a : weights)
    {
        std::vector<double> next(max_order + 1, 0.0);
        for (int k = 0; k <= max_order; ++k)
            for (int j = 0; j <= k; ++j)
                next[k] += binom[k][j] * acc[k - j] * std::pow(a, j) * single[j];
        acc.swap(next);
    }
    return acc;
}

namespace
{
// log(E^2[X^q] / E[X^{2q}]) for an alpha-mu law; does not depend on omega.
double log_ratio(double alpha, double mu, double q)
{
    return 2.0 * log_gamma(mu + q / alpha) - log_gamma(mu) - log_gamma(mu + 2.0 * q / alpha);
}

constexpr double log_mu_lo = -9.0;  // mu* >= 1.2e-4
constexpr double log_mu_hi = 11.5;  // mu* <= 1e5

// mu solving log_ratio(alpha, mu, 1) = target; NaN when the target is out of reach.
double solve_mu(double alpha, double target)
{
    auto f = [&](double lm) { return log_ratio(alpha, std::exp(lm), 1.0) - target; };
    const double flo = f(log_mu_lo), fhi = f(log_mu_hi);
    if (!(flo <= 0.0 && fhi >= 0.0))
        return std::numeric_limits<double>::quiet_NaN();
    std::uintmax_t iters = 200;
    const auto r = boost::math::tools::toms748_solve(f, log_mu_lo, log_mu_hi, flo, fhi,
                                                     boost::math::tools::eps_tolerance<double>(52), iters);
    return std::exp(0.5 * (r.first + r.second));
}
} // namespace

AlphaMuApprox fit_alpha_mu_approx(const std::vector<double> &weights, const AlphaMuParams &base)
{
    base.validate();
    const double scale = std::accumulate(weights.begin(), weights.end(), 0.0) / static_cast<double>(weights.size());
    std::vector<double> scaled(weights);
    for (double &a : scaled)
        a /= scale;
    const std::vector<double> mom = weighted_sum_moments(scaled, base, 4);
    const double t1 = 2.0 * std::log(mom[1]) - std::log(mom[2]);
    const double t2 = 2.0 * std::log(mom[2]) - std::log(mom[4]);

    auto g = [&](double la) {
        const double a = std::exp(la);
        const double mu = solve_mu(a, t1);
        if (std::isnan(mu))
            return std::numeric_limits<double>::quiet_NaN();
        return log_ratio(a, mu, 2.0) - t2;
    };

    // scan log(alpha) for sign changes, then refine the root nearest the base alpha
    constexpr double la_lo = -3.5, la_hi = 4.5; // alpha in [0.03, 90]
    constexpr int steps = 160;
    double best_la = std::numeric_limits<double>::quiet_NaN();
    double prev_la = la_lo, prev_g = g(la_lo);
    double min_abs_residual = std::abs(prev_g);
    for (int k = 1; k <= steps; ++k)
    {
        const double la = la_lo + (la_hi - la_lo) * k / steps;
        const double gv = g(la);
        if (std::isfinite(gv))
            min_abs_residual = std::min(min_abs_residual, std::abs(gv));
        if (std::isfinite(gv) && std::isfinite(prev_g) && (gv == 0.0 || (prev_g < 0.0) != (gv < 0.0)))
        {
            double root = la;
            if (gv != 0.0)
            {
                std::uintmax_t iters = 200;
                const auto r = boost::math::tools::toms748_solve(g, prev_la, la, prev_g, gv,
                                                                 boost::math::tools::eps_tolerance<double>(52), iters);
                root = 0.5 * (r.first + r.second);
            }
            if (std::isnan(best_la) || std::abs(root - std::log(base.alpha)) < std::abs(best_la - std::log(base.alpha)))
                best_la = root;
        }
        prev_la = la;
        prev_g = gv;
    }
    if (std::isnan(best_la))
        throw NumericalError("fit_alpha_mu_approx: no (alpha*, mu*) reproduces the moment ratios",
                             {t1, t2, min_abs_residual});

    AlphaMuApprox fit;
    fit.alpha_star = std::exp(best_la);
    fit.mu_star = solve_mu(fit.alpha_star, t1);
    fit.omega_star = mom[1] * scale;
    const double r1 = log_ratio(fit.alpha_star, fit.mu_star, 1.0) - t1;
    const double r2 = log_ratio(fit.alpha_star, fit.mu_star, 2.0) - t2;
    if (!(std::abs(r1) < 1e-9 && std::abs(r2) < 1e-9))
        throw NumericalError("fit_alpha_mu_approx: moment ratios not matched", {r1, r2});
    return fit;
}

} // namespace star_thz
