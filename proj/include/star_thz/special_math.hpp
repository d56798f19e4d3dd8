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

#ifndef STAR_THZ_SPECIAL_MATH_HPP
#define STAR_THZ_SPECIAL_MATH_HPP

#include <cstddef>
#include <vector>

namespace star_thz::special
{

// Complete gamma function for x > 0 (Lanczos, g = 7). Throws DomainError otherwise.
double gamma_fn(double x);

// log(Gamma(x)) for x > 0. Stays finite where gamma_fn overflows (x > 171.6).
double log_gamma(double x);

// Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a).
// Series expansion for x < a + 1, continued fraction for the complement otherwise.
double lower_incomplete_gamma_reg(double a, double x);

// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x), without the cancellation.
double upper_incomplete_gamma_reg(double a, double x);

// Gaussian tail probability Q(x) = 1 - Phi(x). Q(+inf) = 0, Q(-inf) = 1.
double gauss_q(double x);

// Digamma psi(x) for x > 0: upward recurrence to x >= 10, then the asymptotic series.
double digamma(double x);

// Confluent hypergeometric 1F1(a; b; x) by its power series with Neumaier-compensated
// summation. Terminates exactly when a is a non-positive integer. Intended for the
// moderate arguments used by mixture moments (|x| <= 50).
double kummer_1f1(double a, double b, double x);

/// Q-point Gauss-Laguerre rule for the weight e^{-t} on (0, inf).
///
/// Weights of the outermost nodes fall below the smallest double for Q beyond
/// roughly 150; they are stored as 0 in `weights` while `log_weights` keeps the
/// finite logarithm.
struct QuadratureRule
{
    std::vector<double> nodes;       // strictly increasing, positive
    std::vector<double> weights;     // w_q, sums to 1
    std::vector<double> log_weights; // log(w_q)

    std::size_t order() const noexcept { return nodes.size(); }
};

// Nodes by Newton iteration on the three-term Laguerre recurrence (rescaled against
// overflow), started from the usual asymptotic guesses; falls back to the eigenvalues
// of the Jacobi matrix (Golub-Welsch) when the guesses do not isolate every root.
// 1 <= Q <= 512, otherwise ConfigError.
QuadratureRule gauss_laguerre(int order);

// Shared read-only instance per order (built on first use, thread-safe).
const QuadratureRule &gauss_laguerre_cached(int order);

// Neumaier's improvement of Kahan summation.
class CompensatedSum
{
public:
    void add(double v) noexcept
    {
        const double t = sum_ + v;
        if ((sum_ >= 0 ? sum_ : -sum_) >= (v >= 0 ? v : -v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

} // namespace star_thz::special

#endif
