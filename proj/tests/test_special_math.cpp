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

#include <doctest.h>

#include "star_thz/errors.hpp"
#include "star_thz/special_math.hpp"

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <numbers>
#include <random>

using namespace star_thz;
using namespace star_thz::special;

namespace
{
bool rel_close(double got, double want, double tol)
{
    return std::abs(got - want) <= tol * std::abs(want);
}

// Direct truncated power series of 1F1 with 200 terms, compensated.
double kummer_reference(double a, double b, double x)
{
    CompensatedSum s;
    double term = 1.0;
    s.add(term);
    for (int k = 0; k < 200; ++k)
    {
        term *= (a + k) / (b + k) * x / (k + 1);
        s.add(term);
    }
    return s.value();
}
} // namespace

TEST_CASE("gamma_fn")
{
    CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(rel_close(gamma_fn(0.5), std::sqrt(std::numbers::pi), 1e-13));
    // 50-digit reference values (mpmath)
    CHECK(rel_close(gamma_fn(4.2), 7.7566895357931794455, 1e-13));
    CHECK(rel_close(gamma_fn(0.3), 2.9915689876875907446, 1e-13));
    CHECK(rel_close(gamma_fn(150.5), 4.6610726270973779184e261, 1e-13));
    CHECK(gamma_fn(5.0) == 24.0);
    CHECK_THROWS_AS(gamma_fn(0.0), DomainError);
    CHECK_THROWS_AS(gamma_fn(-1.5), DomainError);
}

TEST_CASE("log_gamma")
{
    CHECK(rel_close(log_gamma(250.5), 1131.2840013322551691, 1e-14));
    CHECK(std::abs(log_gamma(1.0)) < 1e-15);
    CHECK(std::abs(log_gamma(2.0)) < 1e-15);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.01, 300.0);
    for (int i = 0; i < 500; ++i)
    {
        const double x = u(rng);
        CHECK(std::abs(log_gamma(x) - boost::math::lgamma(x)) <= 1e-13 * std::max(1.0, std::abs(log_gamma(x))));
    }
}

TEST_CASE("lower_incomplete_gamma_reg")
{
    CHECK(lower_incomplete_gamma_reg(2.0, 0.0) == 0.0);
    for (double x : {0.01, 0.5, 1.0, 3.0, 12.0})
        CHECK(rel_close(lower_incomplete_gamma_reg(1.0, x), -std::expm1(-x), 1e-13));
    CHECK(rel_close(lower_incomplete_gamma_reg(2.5, 1.3), 0.23863473215498609683, 1e-13));
    CHECK(rel_close(lower_incomplete_gamma_reg(30.0, 25.0), 0.18210391597745510980, 1e-12));
    CHECK(rel_close(lower_incomplete_gamma_reg(0.3, 5.0), 0.99934868124928154845, 1e-13));
    CHECK(rel_close(lower_incomplete_gamma_reg(200.0, 210.0), 0.76396967450115385408, 1e-11));
    CHECK(lower_incomplete_gamma_reg(3.0, INFINITY) == 1.0);
    CHECK(upper_incomplete_gamma_reg(3.0, 0.0) == 1.0);
    CHECK_THROWS_AS(lower_incomplete_gamma_reg(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(lower_incomplete_gamma_reg(1.0, -1.0), DomainError);

    SUBCASE("nondecreasing in x and agrees with boost on random grids")
    {
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> ua(0.05, 60.0);
        for (int trial = 0; trial < 200; ++trial)
        {
            const double a = ua(rng);
            double prev = 0.0;
            for (double x = 0.0; x < 4.0 * a + 20.0; x += (a + 1.0) / 37.0)
            {
                const double p = lower_incomplete_gamma_reg(a, x);
                CHECK(p >= prev);
                CHECK(p <= 1.0);
                CHECK(std::abs(p - boost::math::gamma_p(a, x)) < 1e-13);
                CHECK(std::abs(p + upper_incomplete_gamma_reg(a, x) - 1.0) < 1e-14);
                prev = p;
            }
        }
    }
}

TEST_CASE("gauss_q")
{
    CHECK(gauss_q(0.0) == 0.5);
    CHECK(gauss_q(INFINITY) == 0.0);
    CHECK(gauss_q(-INFINITY) == 1.0);
    CHECK(rel_close(gauss_q(1.0), 0.15865525393145705141, 1e-14));
    for (double x = -8.0; x <= 8.0; x += 0.173)
        CHECK(std::abs(gauss_q(x) + gauss_q(-x) - 1.0) <= 1e-14);
}

TEST_CASE("digamma")
{
    constexpr double euler = 0.57721566490153286061;
    CHECK(rel_close(digamma(1.0), -euler, 1e-12));
    CHECK(rel_close(digamma(2.0), 1.0 - euler, 1e-12));
    CHECK(rel_close(digamma(3.7), 1.1671535393615114409, 1e-12));
    CHECK(rel_close(digamma(0.1), -10.423754940411076232, 1e-12));
    CHECK(rel_close(digamma(25.0), 3.1987425128519740085, 1e-12));
    CHECK_THROWS_AS(digamma(0.0), DomainError);
    for (double x = 0.05; x < 80.0; x *= 1.37)
        CHECK(std::abs(digamma(x) - boost::math::digamma(x)) <= 1e-12 * std::max(1.0, std::abs(digamma(x))));
}

TEST_CASE("kummer_1f1")
{
    CHECK(kummer_1f1(0.7, 2.1, 0.0) == 1.0);
    for (double x : {-3.0, -0.5, 0.25, 2.0, 6.0})
        CHECK(rel_close(kummer_1f1(1.0, 1.0, x), std::exp(x), 1e-13));
    CHECK(kummer_1f1(-1.0, 0.5, -2.0) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(rel_close(kummer_1f1(0.3, 1.7, 4.5), 5.0165937206431666596, 1e-12));
    CHECK(rel_close(kummer_1f1(-2.5, 0.5, -12.5), 697.15598888357960428, 1e-10));
    CHECK(rel_close(kummer_1f1(1.2, 2.3, -7.0), 0.11609507716907735874, 1e-10));
    CHECK_THROWS_AS(kummer_1f1(1.0, -2.0, 1.0), DomainError);
    CHECK_THROWS_AS(kummer_1f1(1.0, 0.0, 1.0), DomainError);

    SUBCASE("matches 200-term compensated series on |x| <= 10")
    {
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> ua(-4.0, 4.0), ub(0.3, 5.0), ux(-10.0, 10.0);
        for (int i = 0; i < 300; ++i)
        {
            const double a = ua(rng), b = ub(rng), x = ux(rng);
            const double ref = kummer_reference(a, b, x);
            CHECK(std::abs(kummer_1f1(a, b, x) - ref) <= 1e-9 * std::max(1.0, std::abs(ref)));
        }
    }
}

TEST_CASE("gauss_laguerre")
{
    SUBCASE("small orders")
    {
        const QuadratureRule one = gauss_laguerre(1);
        REQUIRE(one.order() == 1);
        CHECK(one.nodes[0] == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(one.weights[0] == doctest::Approx(1.0).epsilon(1e-15));

        const QuadratureRule two = gauss_laguerre(2);
        CHECK(two.nodes[0] == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-15));
        CHECK(two.nodes[1] == doctest::Approx(2.0 + std::sqrt(2.0)).epsilon(1e-15));
        CHECK(two.weights[0] == doctest::Approx((2.0 + std::sqrt(2.0)) / 4.0).epsilon(1e-14));
    }

    SUBCASE("Q = 64 integrates t^3 to 6")
    {
        const QuadratureRule &r = gauss_laguerre_cached(64);
        CompensatedSum s;
        for (std::size_t q = 0; q < r.order(); ++q)
            s.add(r.weights[q] * std::pow(r.nodes[q], 3));
        CHECK(std::abs(s.value() - 6.0) < 1e-10);
    }

    SUBCASE("exactness for monomials up to degree 2Q-1 and rule invariants")
    {
        for (int order : {1, 2, 3, 5, 8, 13, 16, 24, 32, 48, 64})
        {
            const QuadratureRule r = gauss_laguerre(order);
            REQUIRE(r.order() == static_cast<std::size_t>(order));
            CompensatedSum total;
            for (int q = 0; q < order; ++q)
            {
                CHECK(r.nodes[q] > 0.0);
                if (q > 0)
                    CHECK(r.nodes[q] > r.nodes[q - 1]);
                CHECK(r.weights[q] > 0.0);
                total.add(r.weights[q]);
            }
            CHECK(std::abs(total.value() - 1.0) < 1e-12);
            // degrees above ~150 overflow Gamma(k+1) in double
            for (int k = 0; k <= std::min(2 * order - 1, 120); ++k)
            {
                CompensatedSum s;
                for (int q = 0; q < order; ++q)
                    s.add(std::exp(r.log_weights[q] + k * std::log(r.nodes[q]) - log_gamma(k + 1.0)));
                CHECK(std::abs(s.value() - 1.0) < 1e-9);
            }
        }
    }

    SUBCASE("large orders stay well formed")
    {
        for (int order : {128, 256, 512})
        {
            const QuadratureRule r = gauss_laguerre(order);
            REQUIRE(r.order() == static_cast<std::size_t>(order));
            CompensatedSum total;
            bool ordered = true;
            for (int q = 0; q < order; ++q)
            {
                ordered = ordered && r.nodes[q] > 0.0 && (q == 0 || r.nodes[q] > r.nodes[q - 1]);
                total.add(r.weights[q]);
                CHECK(std::isfinite(r.log_weights[q]));
            }
            CHECK(ordered);
            CHECK(std::abs(total.value() - 1.0) < 1e-12);
            CompensatedSum m;
            for (int q = 0; q < order; ++q)
                m.add(r.weights[q] * r.nodes[q] * r.nodes[q]);
            CHECK(std::abs(m.value() - 2.0) < 1e-10);
        }
    }

    CHECK_THROWS_AS(gauss_laguerre(0), ConfigError);
    CHECK_THROWS_AS(gauss_laguerre(513), ConfigError);
}
