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

#include "star_thz/special_math.hpp"
#include "star_thz/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

namespace star_thz::special
{

namespace
{
constexpr double lanczos_g = 7.0;
constexpr double lanczos_coef[9] = {
    0.99999999999980993, 676.5203681218851, -1259.1392167224028,
    771.32342877765313, -176.61502916214059, 12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

// Lanczos sum A_g(z) for argument z = x - 1
double lanczos_sum(double z)
{
    double a = lanczos_coef[0];
    for (int i = 1; i < 9; ++i)
        a += lanczos_coef[i] / (z + i);
    return a;
}

constexpr double log_sqrt_2pi = 0.91893853320467274178;
constexpr double eps = std::numeric_limits<double>::epsilon();
} // namespace

double gamma_fn(double x)
{
    if (!(x > 0.0))
        throw DomainError("gamma_fn: argument must be positive, got " + std::to_string(x));
    if (x < 0.5) // reflection keeps the Lanczos argument in its accurate range
        return std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma_fn(1.0 - x));
    if (x == std::floor(x) && x <= 30.0)
    {
        double f = 1.0;
        for (int k = 2; k < static_cast<int>(x); ++k)
            f *= k;
        return f;
    }
    const double z = x - 1.0;
    const double t = z + lanczos_g + 0.5;
    // split the power so that t^(z+0.5) does not overflow before e^-t is applied
    const double half = std::pow(t, 0.5 * (z + 0.5));
    return std::sqrt(2.0 * std::numbers::pi) * half * (std::exp(-t) * half) * lanczos_sum(z);
}

double log_gamma(double x)
{
    if (!(x > 0.0))
        throw DomainError("log_gamma: argument must be positive, got " + std::to_string(x));
    if (x < 0.5)
        return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) - log_gamma(1.0 - x);
    if (x < 15.0)
        return std::log(gamma_fn(x));
    const double z = x - 1.0;
    const double t = z + lanczos_g + 0.5;
    return log_sqrt_2pi + (z + 0.5) * std::log(t) - t + std::log(lanczos_sum(z));
}

namespace
{
// log of x^a e^-x / Gamma(a)
double incomplete_gamma_prefactor_log(double a, double x)
{
    return a * std::log(x) - x - log_gamma(a);
}

double lower_series(double a, double x)
{
    double ap = a;
    double term = 1.0 / a;
    double sum = term;
    for (int n = 0; n < 100000; ++n)
    {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::abs(term) < std::abs(sum) * eps)
            return sum * std::exp(incomplete_gamma_prefactor_log(a, x));
    }
    throw NumericalError("lower_incomplete_gamma_reg: series did not converge", {a, x});
}

double upper_continued_fraction(double a, double x)
{
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 100000; ++i)
    {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny)
            d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < eps)
            return std::exp(incomplete_gamma_prefactor_log(a, x)) * h;
    }
    throw NumericalError("upper_incomplete_gamma_reg: continued fraction did not converge", {a, x});
}

void check_incomplete_args(double a, double x, const char *who)
{
    if (!(a > 0.0) || !(x >= 0.0) || std::isnan(x))
        throw DomainError(std::string(who) + ": requires a > 0 and x >= 0 (a=" + std::to_string(a) +
                          ", x=" + std::to_string(x) + ")");
}
} // namespace

double lower_incomplete_gamma_reg(double a, double x)
{
    check_incomplete_args(a, x, "lower_incomplete_gamma_reg");
    if (x == 0.0)
        return 0.0;
    if (std::isinf(x))
        return 1.0;
    if (x < a + 1.0)
        return std::min(1.0, lower_series(a, x));
    return std::max(0.0, 1.0 - upper_continued_fraction(a, x));
}

double upper_incomplete_gamma_reg(double a, double x)
{
    check_incomplete_args(a, x, "upper_incomplete_gamma_reg");
    if (x == 0.0)
        return 1.0;
    if (std::isinf(x))
        return 0.0;
    if (x < a + 1.0)
        return std::max(0.0, 1.0 - lower_series(a, x));
    return std::min(1.0, upper_continued_fraction(a, x));
}

double gauss_q(double x)
{
    return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

double digamma(double x)
{
    if (!(x > 0.0))
        throw DomainError("digamma: argument must be positive, got " + std::to_string(x));
    double shift = 0.0;
    while (x < 10.0)
    {
        shift -= 1.0 / x;
        x += 1.0;
    }
    const double r = 1.0 / (x * x);
    // Bernoulli-number tail: B_2k / (2k x^2k), k = 1..7
    const double tail =
        r * (1.0 / 12 - r * (1.0 / 120 - r * (1.0 / 252 - r * (1.0 / 240 - r * (1.0 / 132 - r * (691.0 / 32760 - r / 12.0))))));
    return shift + std::log(x) - 0.5 / x - tail;
}

double kummer_1f1(double a, double b, double x)
{
    if (b <= 0.0 && b == std::floor(b))
        throw DomainError("kummer_1f1: b must not be a non-positive integer, got " + std::to_string(b));
    CompensatedSum sum;
    double term = 1.0;
    sum.add(term);
    int small_run = 0;
    for (int k = 0; k < 20000; ++k)
    {
        term *= (a + k) / (b + k) * x / (k + 1);
        if (term == 0.0)
            return sum.value(); // terminating polynomial (a = 0, -1, -2, ...)
        sum.add(term);
        if (std::abs(term) <= 1e-16 * std::abs(sum.value()))
        {
            if (++small_run >= 3)
                return sum.value();
        }
        else
            small_run = 0;
    }
    throw NumericalError("kummer_1f1: power series did not converge", {a, b, x});
}

// --- Gauss-Laguerre ---------------------------------------------------------

namespace
{
// Evaluated in long double: at the smallest roots L_{n-1} is a small residue of O(1)
// recurrence terms, and the extra bits keep the weights at double precision.
struct LaguerrePair
{
    long double ln;       // L_n(x) * e^-log_scale
    long double ln_minus; // L_{n-1}(x) * e^-log_scale
    double log_scale;
};

LaguerrePair laguerre_pair(int n, long double x)
{
    long double p1 = 1.0L, p2 = 0.0L;
    double log_scale = 0.0;
    for (int k = 0; k < n; ++k)
    {
        const long double p3 = p2;
        p2 = p1;
        p1 = ((2.0L * k + 1.0L - x) * p2 - k * p3) / (k + 1.0L);
        if (std::abs(p1) > 1e150L)
        {
            p1 *= 1e-150L;
            p2 *= 1e-150L;
            log_scale += 150.0 * std::numbers::ln10;
        }
    }
    return {p1, p2, log_scale};
}

// Newton iteration for the root of L_n near z; returns false if it does not settle.
bool polish_root(int n, long double &z)
{
    for (int it = 0; it < 100; ++it)
    {
        const LaguerrePair p = laguerre_pair(n, z);
        const long double dz = p.ln / (n * (p.ln - p.ln_minus) / z);
        z -= dz;
        if (!(z > 0.0L) || !std::isfinite(static_cast<double>(z)))
            return false;
        if (std::abs(dz) <= 1e-14L * z)
        {
            // one more step: quadratic convergence takes z to full working precision
            const LaguerrePair q = laguerre_pair(n, z);
            z -= q.ln / (n * (q.ln - q.ln_minus) / z);
            return z > 0.0L;
        }
    }
    return false;
}

bool nodes_are_valid(const std::vector<long double> &x)
{
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        if (!(x[i] > 0.0L) || !std::isfinite(static_cast<double>(x[i])))
            return false;
        if (i > 0 && !(x[i] > x[i - 1] * (1.0L + 1e-10L)))
            return false;
    }
    return true;
}

bool newton_from_asymptotic_guesses(int n, std::vector<long double> &x)
{
    long double z = 0.0L;
    for (int i = 0; i < n; ++i)
    {
        if (i == 0)
            z = 3.0 / (1.0 + 2.4 * n);
        else if (i == 1)
            z += 15.0 / (1.0 + 2.5 * n);
        else
        {
            const long double ai = i - 1;
            z += (1.0L + 2.55L * ai) / (1.9L * ai) * (z - x[i - 2]);
        }
        if (!polish_root(n, z))
            return false;
        x[i] = z;
    }
    return nodes_are_valid(x);
}

void golub_welsch_nodes(int n, std::vector<long double> &x)
{
    Eigen::VectorXd diag(n);
    Eigen::VectorXd sub(std::max(n - 1, 0));
    for (int k = 0; k < n; ++k)
        diag[k] = 2.0 * k + 1.0;
    for (int k = 1; k < n; ++k)
        sub[k - 1] = k;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd &ev = solver.eigenvalues(); // ascending
    for (int i = 0; i < n; ++i)
    {
        long double z = ev[i];
        x[i] = polish_root(n, z) ? z : static_cast<long double>(ev[i]);
    }
}
} // namespace

QuadratureRule gauss_laguerre(int order)
{
    if (order < 1 || order > 512)
        throw ConfigError("gauss_laguerre: order must be in [1, 512], got " + std::to_string(order));
    const int n = order;
    std::vector<long double> x(n, 0.0L);
    if (!newton_from_asymptotic_guesses(n, x))
    {
        golub_welsch_nodes(n, x);
        if (!nodes_are_valid(x))
            throw NumericalError("gauss_laguerre: could not isolate the roots of L_" + std::to_string(n));
    }
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    rule.log_weights.resize(n);
    for (int i = 0; i < n; ++i)
    {
        const long double z = x[i];
        const LaguerrePair p = laguerre_pair(n, z);
        rule.nodes[i] = static_cast<double>(z);
        // w = z / (n L_{n-1}(z))^2 at a root of L_n
        const double lw = static_cast<double>(std::log(z) - 2.0L * std::log(static_cast<long double>(n)) -
                                              2.0L * (std::log(std::abs(p.ln_minus)) + p.log_scale));
        rule.log_weights[i] = lw;
        rule.weights[i] = std::exp(lw);
    }
    return rule;
}

const QuadratureRule &gauss_laguerre_cached(int order)
{
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<const QuadratureRule>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(order);
    if (it == cache.end())
        it = cache.emplace(order, std::make_unique<const QuadratureRule>(gauss_laguerre(order))).first;
    return *it->second;
}

} // namespace star_thz::special
