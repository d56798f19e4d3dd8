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
#include "star_thz/performance.hpp"

#include <cmath>
#include <numbers>

using namespace star_thz;

namespace
{
const double n0 = noise_power(-174.0, 4e9);

struct Fixture
{
    E2EWeights w;
    AlphaMuParams base{2.0, 1.0, 1.0};
    DeltaSeries series;
    AlphaMuApprox fit;
    CollapsedGammaMixture mog;

    Fixture()
        : w(make_weights()), series(build_delta_series(w.indoor, base, 256)), fit(fit_alpha_mu_approx(w.indoor, base)),
          mog(collapse_mog_sum(w.outdoor, std::get<GammaMixture>(load_mixture_file(
                                              STAR_THZ_SOURCE_DIR "/data/mixtures/rician_k1_mog3.json"))))
    {
    }

    static E2EWeights make_weights()
    {
        const RisPanel panel = RisPanel::regular_grid(3, 3, 0.01, 0.01, 1.0, 49.0);
        ThzLinkParams in, out;
        in.distance = distance({0, 0, 0}, {5, -2, -9});
        out.distance = distance({0, 0, 0}, {7, -3, 15});
        return build_e2e_weights(panel, ProtocolConfig::energy_splitting(9, 0.5), in, out);
    }
};

const Fixture &fixture()
{
    static const Fixture f;
    return f;
}

PowerConfig at_dbm(double p_dbm, double kappa2)
{
    return {dbm_to_watt(p_dbm), 0.4, 0.6, kappa2, n0};
}
} // namespace

TEST_CASE("sidnr")
{
    const PowerConfig pc{2.0, 0.4, 0.6, 0.08, 1e-3};
    for (SidnrKind k : {SidnrKind::indoor_sic, SidnrKind::indoor_own, SidnrKind::outdoor, SidnrKind::oma_indoor,
                        SidnrKind::oma_outdoor})
        CHECK(sidnr(k, 0.0, pc) == 0.0);
    CHECK(sidnr(SidnrKind::outdoor, 1e12, pc) == doctest::Approx(0.6 / 0.48).epsilon(1e-12));
    CHECK(sidnr(SidnrKind::indoor_own, 1e12, pc) == doctest::Approx(0.4 / 0.08).epsilon(1e-12));
    CHECK(sidnr(SidnrKind::oma_outdoor, 1e12, pc) == doctest::Approx(0.6 / 0.08).epsilon(1e-12));
    const double h2 = 0.37;
    CHECK(sidnr(SidnrKind::indoor_sic, h2, pc) == doctest::Approx(1.2 * h2 / (0.16 * h2 + 0.8 * h2 + 1e-3)));

    PowerConfig ideal = pc;
    ideal.kappa2 = 0.0;
    CHECK(sidnr(SidnrKind::indoor_own, 1e12, ideal) > 1e14);
}

TEST_CASE("power configuration validation")
{
    CHECK_NOTHROW(at_dbm(30.0, 0.08).validate());
    PowerConfig bad{1.0, 0.6, 0.4, 0.08, 1e-9};
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = {1.0, 0.4, 0.5, 0.08, 1e-9};
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = {1.0, 0.4, 0.6, -0.1, 1e-9};
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    CHECK(dbm_to_watt(30.0) == doctest::Approx(1.0));
    CHECK(watt_to_dbm(1e-3) == doctest::Approx(0.0));
    CHECK(noise_power(-174.0, 4e9) == doctest::Approx(1.5924e-11).epsilon(1e-4));
}

TEST_CASE("thresholds from rates")
{
    const OutageThresholds oma = OutageThresholds::oma_from_rates(0.5, 0.5);
    CHECK(oma.indoor == doctest::Approx(1.0).epsilon(1e-15));
    const OutageThresholds noma = OutageThresholds::from_rates(0.5, 0.5);
    CHECK(noma.outdoor == doctest::Approx(std::numbers::sqrt2 - 1.0).epsilon(1e-15));
}

TEST_CASE("outage ceilings")
{
    const Fixture &f = fixture();
    const PowerConfig pc = at_dbm(30.0, 0.08);
    CHECK(op_indoor({5.0, 1.0}, pc, f.series) == 1.0);
    CHECK(op_indoor({1.0, 1.25}, pc, f.series) == 1.0);
    CHECK(op_outdoor({1.0, 1.25}, pc, f.mog) == 1.0);
    CHECK(op_outdoor({1.0, 1.3}, pc, f.mog) == 1.0);
    CHECK(op_indoor({4.0, 1.0}, at_dbm(50.0, 0.08), f.series) < 1.0);
    CHECK(op_oma_indoor(5.0, pc, f.series) == 1.0);
    CHECK(op_oma_outdoor(7.5, pc, f.mog) == 1.0);
    CHECK(op_oma_outdoor(7.4, pc, f.mog) < 1.0);
}

TEST_CASE("psi reduces without impairments")
{
    const PowerConfig pc = at_dbm(20.0, 0.0);
    const OutageThresholds th{2.0, 0.5};
    CHECK(psi_io(th, pc) == doctest::Approx(n0 * 2.0 / pc.p_indoor()).epsilon(1e-14));
    CHECK(psi_oma(Side::outdoor, 0.5, pc) == doctest::Approx(n0 * 0.5 / pc.p_outdoor()).epsilon(1e-14));
    CHECK(psi_o(th, pc) == doctest::Approx(n0 * 0.5 / (pc.p_outdoor() - 0.5 * pc.p_indoor())).epsilon(1e-14));
    CHECK(psi_indoor(th, pc) == std::max(psi_io(th, pc), psi_o(th, pc)));
}

TEST_CASE("outage monotonicity")
{
    const Fixture &f = fixture();
    for (double k2 : {0.0, 0.04, 0.08})
    {
        double prev_i = 2.0, prev_o = 2.0;
        for (double p = 2.5; p <= 50.0; p += 2.5)
        {
            const PowerConfig pc = at_dbm(p, k2);
            const double oi = op_indoor({1.0, 1.0}, pc, f.series), oo = op_outdoor({1.0, 1.0}, pc, f.mog);
            CHECK(oi <= prev_i);
            CHECK(oo <= prev_o);
            prev_i = oi;
            prev_o = oo;
        }
    }
    // nondecreasing in kappa^2 and in the thresholds
    const PowerConfig lo = at_dbm(5.0, 0.02), hi = at_dbm(5.0, 0.08);
    CHECK(op_indoor({1.0, 1.0}, lo, f.series) <= op_indoor({1.0, 1.0}, hi, f.series));
    CHECK(op_outdoor({1.0, 1.0}, lo, f.mog) <= op_outdoor({1.0, 1.0}, hi, f.mog));
    double prev = 0.0;
    for (double g = 0.1; g < 1.2; g += 0.1)
    {
        const double v = op_outdoor({g, g}, hi, f.mog);
        CHECK(v >= prev);
        prev = v;
    }
}

TEST_CASE("indoor OP asymptote and diversity order")
{
    const Fixture &f = fixture();
    const OutageThresholds th{1.0, 1.0};
    for (double k2 : {0.0, 0.08})
    {
        const double a1 = op_asymptotic_indoor(th, at_dbm(40.0, k2), f.series);
        const double a2 = op_asymptotic_indoor(th, at_dbm(50.0, k2), f.series);
        CHECK(std::log10(a2 / a1) == doctest::Approx(-9.0).epsilon(1e-12));
        const double exact = op_indoor(th, at_dbm(50.0, k2), f.series);
        CHECK(std::abs(exact / a2 - 1.0) < 0.05);
        // the asymptote is the leading term of a decreasing series
        CHECK(std::abs(exact / a2 - 1.0) < std::abs(op_indoor(th, at_dbm(30.0, k2), f.series) /
                                                         op_asymptotic_indoor(th, at_dbm(30.0, k2), f.series) -
                                                     1.0));
    }
    const double o1 = op_asymptotic_outdoor(th, at_dbm(55.0, 0.08), f.mog);
    CHECK(std::abs(op_outdoor(th, at_dbm(55.0, 0.08), f.mog) / o1 - 1.0) < 0.25);
}

TEST_CASE("ergodic capacity limits")
{
    const Fixture &f = fixture();
    const auto &q64 = special::gauss_laguerre_cached(64);
    const PowerConfig hw = at_dbm(60.0, 0.08);
    CHECK(std::abs(ec_indoor(hw, f.fit, q64) - std::log2(6.0)) < 0.05);
    CHECK(std::abs(ec_outdoor(hw, f.mog, q64) - std::log2(1.08 / 0.48)) < 0.05);
    CHECK(ec_high_snr_indoor(hw, f.fit) == doctest::Approx(std::log2(6.0)));
    CHECK(ec_high_snr_outdoor(hw) == doctest::Approx(std::log2(2.25)));

    const PowerConfig ideal = at_dbm(60.0, 0.0);
    CHECK(ec_high_snr_outdoor(ideal) == doctest::Approx(std::log2(2.5)));
    CHECK(std::abs(ec_outdoor(ideal, f.mog, q64) - std::log2(2.5)) < 0.01);
    CHECK(std::abs(ec_indoor(ideal, f.fit, q64) - ec_high_snr_indoor(ideal, f.fit)) < 0.05);
    // one bit per doubling of the SNR without impairments
    const double step = ec_indoor(at_dbm(60.0, 0.0), f.fit, q64) - ec_indoor(at_dbm(50.0, 0.0), f.fit, q64);
    CHECK(step / (10.0 / (10.0 * std::log10(2.0))) == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("ergodic capacity monotone in P and stable in Q")
{
    const Fixture &f = fixture();
    const auto &q64 = special::gauss_laguerre_cached(64);
    const auto &q128 = special::gauss_laguerre_cached(128);
    const auto &q256 = special::gauss_laguerre_cached(256);
    for (double k2 : {0.0, 0.08})
    {
        double prev_i = -1.0, prev_o = -1.0;
        for (double p = -30.0; p <= 60.0; p += 5.0)
        {
            const PowerConfig pc = at_dbm(p, k2);
            const double ei = ec_indoor(pc, f.fit, q64), eo = ec_outdoor(pc, f.mog, q64);
            CHECK(ei >= prev_i);
            CHECK(eo >= prev_o);
            CHECK(ei >= 0.0);
            prev_i = ei;
            prev_o = eo;
            CHECK(std::abs(ec_indoor(pc, f.fit, q256) - ei) < 1e-6);
            CHECK(std::abs(ec_outdoor(pc, f.mog, q128) - eo) < 1e-6);
        }
    }
}

TEST_CASE("Gaussian-mixture capacity path")
{
    // GM collapse of a single Gaussian element carries almost no negative mass, so the
    // Laguerre form must match a direct integral of the normal density.
    const GaussianMixture g{{{1.0, 1.0, 0.25}}};
    const CollapsedGaussianMixture c = collapse_gm_sum({1.0}, g);
    const PowerConfig pc{1.0, 0.4, 0.6, 0.08, 0.5};
    const auto &q = special::gauss_laguerre_cached(128);
    double direct = 0.0;
    const int n = 20000;
    const double h = 4.0 / n;
    for (int i = 0; i < n; ++i)
    {
        const double u = (i + 0.5) * h;
        const double dens = std::exp(-0.5 * std::pow((u - 1.0) / 0.25, 2)) / (0.25 * std::sqrt(2.0 * std::numbers::pi));
        direct += h * dens * std::log2(1.0 + sidnr(SidnrKind::outdoor, u * u, pc));
    }
    CHECK(ec_outdoor(pc, c, q) == doctest::Approx(direct).epsilon(1e-6));
    CHECK(op_outdoor({0.5, 0.5}, pc, c) == doctest::Approx(gm_cdf(c, std::sqrt(psi_o({0.5, 0.5}, pc)))));
}

TEST_CASE("GM and MoG outage paths agree on a moment-matched channel")
{
    // Each gamma component of the Rician fit replaced by a Gaussian with the same
    // mean and variance.
    const GammaMixture mog =
        std::get<GammaMixture>(load_mixture_file(STAR_THZ_SOURCE_DIR "/data/mixtures/rician_k1_mog3.json"));
    GaussianMixture gm;
    for (const GammaComponent &k : mog.components)
        gm.components.push_back({k.mass(), k.b / k.c, std::sqrt(k.b) / k.c});
    const std::vector<double> a(9, 1.0);
    const CollapsedGammaMixture cm = collapse_mog_sum(a, mog);
    const CollapsedGaussianMixture cg = collapse_gm_sum(a, gm);
    const PowerConfig pc{1.0, 0.4, 0.6, 0.08, 1.0};
    for (double scale : {20.0, 40.0, 60.0, 80.0})
    {
        PowerConfig p = pc;
        p.power = scale;
        CHECK(std::abs(op_outdoor({1.0, 1.0}, p, cm) - op_outdoor({1.0, 1.0}, p, cg)) < 0.02);
    }
}

TEST_CASE("low-SNR expansion")
{
    const Fixture &f = fixture();
    const double gi = low_snr_gain(f.w.indoor), go = low_snr_gain(f.w.outdoor);
    CHECK(gi == doctest::Approx(std::pow(*std::min_element(f.w.indoor.begin(), f.w.indoor.end()), 2)));
    const std::vector<double> mi = weighted_sum_moments(f.w.indoor, f.base, 4);
    const double m2 = mi[2] / gi, m4 = mi[4] / (gi * gi);
    const PowerConfig pc = at_dbm(-20.0, 0.08);
    const LowSnrCapacity li = ec_low_snr(Side::indoor, pc, m2, m4, gi);
    const LowSnrCapacity lo = ec_low_snr(Side::outdoor, pc, m2, m4, gi);
    const double g = pc.power * gi / pc.noise;
    CHECK(li.first_order == doctest::Approx(std::numbers::log2e * g * 0.4 * m2));
    // same moments: the second-order terms differ only through the extra interference flag
    CHECK(lo.second_order / 0.6 - li.second_order / 0.4 ==
          doctest::Approx(-0.5 * std::numbers::log2e * g * g * m4).epsilon(1e-12));
    CHECK(li.trusted());

    // agreement with the quadrature capacity deep in the low-SNR regime
    const auto &q = special::gauss_laguerre_cached(64);
    for (double p : {-30.0, -20.0})
    {
        const PowerConfig pp = at_dbm(p, 0.08);
        const LowSnrCapacity l = ec_low_snr(Side::indoor, pp, m2, m4, gi);
        CHECK(std::abs(l.capacity / ec_indoor(pp, f.fit, q) - 1.0) < 0.01);
        const double m2o = mog_moment(f.mog, 2.0) / go, m4o = mog_moment(f.mog, 4.0) / (go * go);
        const LowSnrCapacity o = ec_low_snr(Side::outdoor, pp, m2o, m4o, go);
        CHECK(std::abs(o.capacity / ec_outdoor(pp, f.mog, q) - 1.0) < 0.01);
    }
    const LowSnrCapacity far = ec_low_snr(Side::indoor, at_dbm(5.0, 0.08), m2, m4, gi);
    CHECK_FALSE(far.trusted());
}

TEST_CASE("OMA baselines")
{
    const Fixture &f = fixture();
    const auto &q = special::gauss_laguerre_cached(64);
    const PowerConfig pc = at_dbm(20.0, 0.0);
    CHECK(ec_oma_indoor(pc, f.fit, q) == doctest::Approx(0.5 * ec_indoor(pc, f.fit, q)).epsilon(1e-15));

    // outdoor full-time single-user capacity from the mixture pdf directly
    const double x0 = std::sqrt(mog_moment(f.mog, 2.0));
    double direct = 0.0;
    const int n = 4000;
    const double h = 4.0 * x0 / n;
    for (int i = 0; i < n; ++i)
    {
        const double u = (i + 0.5) * h;
        direct += h * mog_pdf(f.mog, u) * std::log2(1.0 + sidnr(SidnrKind::oma_outdoor, u * u, pc));
    }
    CHECK(ec_oma_outdoor(pc, f.mog, q) == doctest::Approx(0.5 * direct).epsilon(1e-5));

    // OMA thresholds at the same rate are stricter, so NOMA outage is lower here
    const OutageThresholds noma = OutageThresholds::from_rates(0.5, 0.5);
    const OutageThresholds oma = OutageThresholds::oma_from_rates(0.5, 0.5);
    for (double p : {0.0, 5.0, 10.0})
    {
        const PowerConfig pp = at_dbm(p, 0.08);
        CHECK(op_outdoor(noma, pp, f.mog) <= op_oma_outdoor(oma.outdoor, pp, f.mog));
        CHECK(op_indoor(noma, pp, f.series) <= op_oma_indoor(oma.indoor, pp, f.series));
    }
}
