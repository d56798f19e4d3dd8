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

#ifndef STAR_THZ_PERFORMANCE_HPP
#define STAR_THZ_PERFORMANCE_HPP

#include "star_thz/channel_geometry.hpp"
#include "star_thz/dist_alpha_mu.hpp"
#include "star_thz/dist_mixture.hpp"
#include "star_thz/special_math.hpp"

namespace star_thz
{

// Powers in watts, everything linear.
struct PowerConfig
{
    double power = 1.0;
    double rho_i = 0.4;
    double rho_o = 0.6;
    double kappa2 = 0.08;
    double noise = 1.0;

    double p_indoor() const { return rho_i * power; }
    double p_outdoor() const { return rho_o * power; }
    double snr() const { return power / noise; }
    // ConfigError unless rho_i + rho_o = 1, rho_o > rho_i, kappa2 >= 0 and noise > 0.
    void validate() const;
};

// dBm to watts, and the noise power of a PSD (dBm/Hz) over a bandwidth (Hz).
double dbm_to_watt(double dbm);
double watt_to_dbm(double w);
double noise_power(double psd_dbm_per_hz, double bandwidth_hz);

struct OutageThresholds
{
    double indoor = 1.0;
    double outdoor = 1.0;

    void validate() const;
    // NOMA: 2^R - 1; OMA: 2^{2R} - 1.
    static OutageThresholds from_rates(double r_indoor, double r_outdoor);
    static OutageThresholds oma_from_rates(double r_indoor, double r_outdoor);
};

enum class SidnrKind
{
    indoor_sic,  // indoor user decoding the outdoor signal
    indoor_own,  // indoor user after SIC
    outdoor,
    oma_indoor,
    oma_outdoor
};

double sidnr(SidnrKind kind, double h2, const PowerConfig &pc);

// Squared-envelope thresholds; +inf on the ceiling regions.
double psi_io(const OutageThresholds &th, const PowerConfig &pc);
double psi_o(const OutageThresholds &th, const PowerConfig &pc);
double psi_indoor(const OutageThresholds &th, const PowerConfig &pc);
double psi_oma(Side user, double threshold, const PowerConfig &pc);

// Exact-series indoor OP. NumericalError propagates when sqrt(Psi) lies beyond the
// reach of the series (raise n_terms).
double op_indoor(const OutageThresholds &th, const PowerConfig &pc, const DeltaSeries &series);
double op_outdoor(const OutageThresholds &th, const PowerConfig &pc, const CollapsedGammaMixture &model);
double op_outdoor(const OutageThresholds &th, const PowerConfig &pc, const CollapsedGaussianMixture &model);

// First-term asymptotes, valid as P/N0 grows.
double op_asymptotic_indoor(const OutageThresholds &th, const PowerConfig &pc, const DeltaSeries &series);
double op_asymptotic_outdoor(const OutageThresholds &th, const PowerConfig &pc, const CollapsedGammaMixture &model);

double ec_indoor(const PowerConfig &pc, const AlphaMuApprox &fit, const special::QuadratureRule &rule);
double ec_outdoor(const PowerConfig &pc, const CollapsedGammaMixture &model, const special::QuadratureRule &rule);
double ec_outdoor(const PowerConfig &pc, const CollapsedGaussianMixture &model, const special::QuadratureRule &rule);

double ec_high_snr_indoor(const PowerConfig &pc, const AlphaMuApprox &fit);
double ec_high_snr_outdoor(const PowerConfig &pc);

struct LowSnrCapacity
{
    double capacity = 0.0;
    double first_order = 0.0;
    double second_order = 0.0; // signed, <= 0
    double ratio = 0.0;        // |second / first|

    // Outside the trust region of the expansion once the quadratic term exceeds a
    // quarter of the linear one.
    bool trusted() const { return ratio <= 0.25; }
};

// Second-order expansion in gamma_R = P G / N0 with normalized moments
// m2 = E|H|^2 / G and m4 = E|H|^4 / G^2. The outdoor user carries the extra
// interference term rho_I |H|^2 in its denominator.
LowSnrCapacity ec_low_snr(Side user, const PowerConfig &pc, double m2, double m4, double gain);

// min_m A_m^2 over the nonzero weights.
double low_snr_gain(const std::vector<double> &weights);

// OMA baselines: no inter-user interference, capacity halved.
double op_oma_indoor(double threshold, const PowerConfig &pc, const DeltaSeries &series);
double op_oma_outdoor(double threshold, const PowerConfig &pc, const CollapsedGammaMixture &model);
double op_oma_outdoor(double threshold, const PowerConfig &pc, const CollapsedGaussianMixture &model);
double ec_oma_indoor(const PowerConfig &pc, const AlphaMuApprox &fit, const special::QuadratureRule &rule);
double ec_oma_outdoor(const PowerConfig &pc, const CollapsedGammaMixture &model, const special::QuadratureRule &rule);
double ec_oma_outdoor(const PowerConfig &pc, const CollapsedGaussianMixture &model, const special::QuadratureRule &rule);

} // namespace star_thz

#endif
