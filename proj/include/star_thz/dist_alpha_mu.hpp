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

#ifndef STAR_THZ_DIST_ALPHA_MU_HPP
#define STAR_THZ_DIST_ALPHA_MU_HPP

#include "star_thz/rng.hpp"

#include <memory>
#include <vector>

namespace star_thz
{

// alpha-mu law with mean omega: f(x) = a b^{am} x^{am-1} e^{-(b x / omega)^a} / (omega^{am} Gamma(m)).
struct AlphaMuParams
{
    double alpha = 2.0;
    double mu = 1.0;
    double omega = 1.0;

    // Parameters with a given alpha-root mean x^ = (E[X^alpha])^{1/alpha}.
    static AlphaMuParams from_root_mean(double alpha, double mu, double root_mean);

    // Gamma(mu + 1/alpha) / Gamma(mu)
    double beta() const;
    // (omega / beta) mu^{1/alpha}
    double root_mean() const;
    // ConfigError naming the offending field.
    void validate() const;
};

double alpha_mu_pdf(const AlphaMuParams &p, double x);
double alpha_mu_cdf(const AlphaMuParams &p, double x);
// E[X^nu] = omega^nu Gamma(mu + nu/alpha) / (beta^nu Gamma(mu)); any real nu > -alpha mu.
double alpha_mu_moment(const AlphaMuParams &p, double nu);
// x^ (G / mu)^{1/alpha} with G ~ Gamma(mu, 1).
double alpha_mu_sample(const AlphaMuParams &p, RngStream &rng);

enum class SeriesKind
{
    pdf,
    cdf
};

/// Power-series representation of the density of Y = sum_m A_m X_m, X_m i.i.d.
/// alpha-mu, in powers of y^alpha.
///
/// The coefficients delta_i come from the M-fold Cauchy product of the per-element
/// sequences B_{n,m}; every product feeding delta_i carries the sign (-1)^i, so the
/// recursion itself is cancellation free. The evaluation sum is alternating and its
/// terms grow far beyond the result for large y, so coefficients and evaluation are
/// carried in ~110 significant digits (MPFR). Weights are rescaled internally by their
/// mean, which keeps the powers of y in range for physically tiny weights.
///
/// pdf/cdf use delta_0..delta_{N_T}; coefficients up to 2 N_T are kept for the
/// truncation error and the convergence check. Evaluation throws NumericalError when
/// the tail beyond N_T is not negligible at x, or when cancellation would leave fewer
/// than ~15 correct digits.
class DeltaSeries
{
public:
    const std::vector<double> &weights() const;
    const AlphaMuParams &base() const;
    int n_terms() const;
    int order() const; // M
    // (alpha mu^mu / Gamma(mu))^M
    double prefactor() const;

    // log|delta_i| and the sign (-1)^i for the unscaled weights, 0 <= i <= N_T.
    double log_abs_delta(int i) const;
    int delta_sign(int i) const;
    // delta_i as a double; +-inf when it exceeds the double range.
    double delta(int i) const;
    std::vector<double> delta() const;
    // log|B_{n,m}| and B_{n,m} for element m in [0, M), 0 <= n <= N_T.
    double log_abs_b(int n, int m) const;
    double b(int n, int m) const;

    double pdf(double x) const;
    double cdf(double x) const;
    // |sum_{i=N_T}^{2 N_T} term_i(x)|: the series truncated after N_T terms
    // (indices 0..N_T-1) compared against the series with 2 N_T + 1 terms.
    double truncation_error(double x, SeriesKind kind) const;

    struct Impl;

private:
    explicit DeltaSeries(std::shared_ptr<const Impl> impl);
    std::shared_ptr<const Impl> impl_;
    friend DeltaSeries build_delta_series(const std::vector<double> &, const AlphaMuParams &, int);
};

// ConfigError for empty or non-positive weights and n_terms outside [1, 512].
DeltaSeries build_delta_series(const std::vector<double> &weights, const AlphaMuParams &base, int n_terms = 30);

double exact_sum_pdf(const DeltaSeries &s, double x);
double exact_sum_cdf(const DeltaSeries &s, double x);
double truncation_error(const DeltaSeries &s, double x, SeriesKind kind);

// Single alpha-mu law matching the 1st, 2nd and 4th moments of the weighted sum.
struct AlphaMuApprox
{
    double alpha_star = 0.0;
    double mu_star = 0.0;
    double omega_star = 0.0;

    double beta_star() const;
    AlphaMuParams params() const { return {alpha_star, mu_star, omega_star}; }
};

// Exact E[(sum_m A_m X_m)^k] for k = 0..max_order by iterated binomial convolution.
std::vector<double> weighted_sum_moments(const std::vector<double> &weights, const AlphaMuParams &base,
                                         int max_order = 4);

// Solves the moment-ratio system E^2[Y]/E[Y^2], E^2[Y^2]/E[Y^4] for (alpha*, mu*),
// then omega* = E[Y]. Throws NumericalError carrying the ratio residuals when no
// root is bracketed.
AlphaMuApprox fit_alpha_mu_approx(const std::vector<double> &weights, const AlphaMuParams &base);

} // namespace star_thz

#endif
