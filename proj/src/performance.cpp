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

#include "star_thz/performance.hpp"
#include "star_thz/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace star_thz
{

using special::CompensatedSum;
using special::log_gamma;

namespace
{
constexpr double inf = std::numeric_limits<double>::infinity();

double log2_1p(double x)
{
    return std::log1p(x) / std::numbers::ln2;
}

// N0 gamma / (p - gamma * interference), +inf past the pole
double psi(double noise, double gamma, double p, double interference)
{
    const double den = p - gamma * interference;
    return den > 0.0 ? noise * gamma / den : inf;
}

double mog_cdf_at(const CollapsedGammaMixture &m, double psi_value)
{
    return std::isinf(psi_value) ? 1.0 : mog_cdf(m, std::sqrt(psi_value));
}

double gm_cdf_at(const CollapsedGaussianMixture &m, double psi_value)
{
    return std::isinf(psi_value) ? 1.0 : gm_cdf(m, std::sqrt(psi_value));
}

double series_cdf_at(const DeltaSeries &s, double psi_value)
{
    return std::isinf(psi_value) ? 1.0 : s.cdf(std::sqrt(psi_value));
}

// sum_n w_n / Gamma(b_n) sum_q w_q t_q^{b_n - 1} log2(1 + t^2 p / (N0 c^2 + t^2 interference))
double mog_capacity(const CollapsedGammaMixture &m, const special::QuadratureRule &rule, double p, double noise,
                    double interference)
{
    CompensatedSum total;
    for (const CollapsedGammaTerm &t : m.terms)
    {
        const double base = std::log(t.weight) - log_gamma(t.b);
        const double nc2 = noise * t.c * t.c;
        CompensatedSum s;
        for (std::size_t q = 0; q < rule.order(); ++q)
        {
            const double x = rule.nodes[q], x2 = x * x;
            const double w = std::exp(base + rule.log_weights[q] + (t.b - 1.0) * std::log(x));
            if (w > 0.0)
                s.add(w * log2_1p(x2 * p / (nc2 + x2 * interference)));
        }
        total.add(s.value());
    }
    return total.value();
}

double gm_capacity(const CollapsedGaussianMixture &m, const special::QuadratureRule &rule, double p, double noise,
                   double interference)
{
    CompensatedSum total;
    for (const CollapsedGaussianTerm &t : m.terms)
    {
        const double eta = std::sqrt(t.var);
        const double shift = t.mean * std::numbers::sqrt2 / eta;
        const double lead = std::log(t.weight) - 0.5 * std::log(std::numbers::pi) - t.mean * t.mean / (2.0 * t.var);
        CompensatedSum s;
        for (std::size_t q = 0; q < rule.order(); ++q)
        {
            const double x = rule.nodes[q];
            const double w = std::exp(lead + rule.log_weights[q] - x * x + x + shift * x);
            if (w > 0.0)
            {
                const double g = 2.0 * t.var * x * x;
                s.add(w * log2_1p(g * p / (noise + g * interference)));
            }
        }
        total.add(s.value());
    }
    return total.value();
}
} // namespace

// --- configuration ----------------------------------------------------------------------

void PowerConfig::validate() const
{
    std::ostringstream msg;
    if (!(power >= 0.0) || !std::isfinite(power))
        msg << "power.P must be nonnegative; ";
    if (!(rho_i > 0.0 && rho_i < 1.0) || !(rho_o > 0.0 && rho_o < 1.0))
        msg << "power.rho_I and power.rho_O must lie in (0, 1); ";
    if (std::abs(rho_i + rho_o - 1.0) > 1e-12)
        msg << "power.rho_I + power.rho_O must equal 1; ";
    if (!(rho_o > rho_i))
        msg << "power.rho_O must exceed power.rho_I; ";
    if (!(kappa2 >= 0.0) || !std::isfinite(kappa2))
        msg << "power.kappa2 must be nonnegative; ";
    if (!(noise > 0.0) || !std::isfinite(noise))
        msg << "noise power must be positive; ";
    const std::string s = msg.str();
    if (!s.empty())
        throw ConfigError(s.substr(0, s.size() - 2));
}

double dbm_to_watt(double dbm)
{
    return std::pow(10.0, (dbm - 30.0) / 10.0);
}

double watt_to_dbm(double w)
{
    return 10.0 * std::log10(w) + 30.0;
}

double noise_power(double psd_dbm_per_hz, double bandwidth_hz)
{
    return dbm_to_watt(psd_dbm_per_hz) * bandwidth_hz;
}

void OutageThresholds::validate() const
{
    if (!(indoor >= 0.0) || !(outdoor >= 0.0) || !std::isfinite(indoor) || !std::isfinite(outdoor))
        throw ConfigError("thresholds: SNR thresholds must be finite and nonnegative");
}

OutageThresholds OutageThresholds::from_rates(double r_indoor, double r_outdoor)
{
    return {std::exp2(r_indoor) - 1.0, std::exp2(r_outdoor) - 1.0};
}

OutageThresholds OutageThresholds::oma_from_rates(double r_indoor, double r_outdoor)
{
    return {std::exp2(2.0 * r_indoor) - 1.0, std::exp2(2.0 * r_outdoor) - 1.0};
}

// --- SIDNR and outage -------------------------------------------------------------------

double sidnr(SidnrKind kind, double h2, const PowerConfig &pc)
{
    const double kp = pc.kappa2 * pc.power * h2;
    switch (kind)
    {
    case SidnrKind::indoor_sic:
    case SidnrKind::outdoor:
        return pc.p_outdoor() * h2 / (kp + pc.p_indoor() * h2 + pc.noise);
    case SidnrKind::indoor_own:
    case SidnrKind::oma_indoor:
        return pc.p_indoor() * h2 / (kp + pc.noise);
    case SidnrKind::oma_outdoor:
        return pc.p_outdoor() * h2 / (kp + pc.noise);
    }
    return 0.0;
}

double psi_io(const OutageThresholds &th, const PowerConfig &pc)
{
    return psi(pc.noise, th.indoor, pc.p_indoor(), pc.kappa2 * pc.power);
}

double psi_o(const OutageThresholds &th, const PowerConfig &pc)
{
    return psi(pc.noise, th.outdoor, pc.p_outdoor(), pc.kappa2 * pc.power + pc.p_indoor());
}

double psi_indoor(const OutageThresholds &th, const PowerConfig &pc)
{
    return std::max(psi_io(th, pc), psi_o(th, pc));
}

double psi_oma(Side user, double threshold, const PowerConfig &pc)
{
    const double p = user == Side::indoor ? pc.p_indoor() : pc.p_outdoor();
    return psi(pc.noise, threshold, p, pc.kappa2 * pc.power);
}

double op_indoor(const OutageThresholds &th, const PowerConfig &pc, const DeltaSeries &series)
{
    return series_cdf_at(series, psi_indoor(th, pc));
}

double op_outdoor(const OutageThresholds &th, const PowerConfig &pc, const CollapsedGammaMixture &model)
{
    return mog_cdf_at(model, psi_o(th, pc));
}

double op_outdoor(const OutageThresholds &th, const PowerConfig &pc, const CollapsedGaussianMixture &model)
{
    return gm_cdf_at(model, psi_o(th, pc));
}

double op_asymptotic_indoor(const OutageThresholds &th, const PowerConfig &pc, const DeltaSeries &series)
{
    const double ps = psi_indoor(th, pc);
    if (std::isinf(ps))
        return 1.0;
    const AlphaMuParams &b = series.base();
    const double order = series.order() * b.alpha * b.mu;
    return std::exp(std::log(series.prefactor()) + series.log_abs_delta(0) + 0.5 * order * std::log(ps) -
                    log_gamma(order + 1.0));
}

double op_asymptotic_outdoor(const OutageThresholds &th, const PowerConfig &pc, const CollapsedGammaMixture &model)
{
    const double ps = psi_o(th, pc);
    if (std::isinf(ps))
        return 1.0;
    // gamma(b, x) ~ x^b / b, with a~ c~^{-b~} = weight / Gamma(b~)
    CompensatedSum s;
    for (const CollapsedGammaTerm &t : model.terms)
        s.add(std::exp(std::log(t.weight) + t.b * (std::log(t.c) + 0.5 * std::log(ps)) - log_gamma(t.b + 1.0)));
    return s.value();
}

// --- ergodic capacity -------------------------------------------------------------------

double ec_indoor(const PowerConfig &pc, const AlphaMuApprox &fit, const special::QuadratureRule &rule)
{
    const double a = fit.alpha_star, mu = fit.mu_star;
    const double o2 = fit.omega_star * fit.omega_star, b2 = fit.beta_star() * fit.beta_star();
    const double lg = log_gamma(mu);
    CompensatedSum s;
    for (std::size_t q = 0; q < rule.order(); ++q)
    {
        const double t = rule.nodes[q];
        const double w = std::exp(rule.log_weights[q] + (mu - 1.0) * std::log(t) - lg);
        if (w == 0.0)
            continue;
        const double y = std::pow(t, 2.0 / a) * o2;
        s.add(w * log2_1p(y * pc.p_indoor() / (pc.noise * b2 + y * pc.kappa2 * pc.power)));
    }
    return s.value();
}

double ec_outdoor(const PowerConfig &pc, const CollapsedGammaMixture &model, const special::QuadratureRule &rule)
{
    return mog_capacity(model, rule, pc.p_outdoor(), pc.noise, pc.kappa2 * pc.power + pc.p_indoor());
}

double ec_outdoor(const PowerConfig &pc, const CollapsedGaussianMixture &model, const special::QuadratureRule &rule)
{
    return gm_capacity(model, rule, pc.p_outdoor(), pc.noise, pc.kappa2 * pc.power + pc.p_indoor());
}

double ec_high_snr_indoor(const PowerConfig &pc, const AlphaMuApprox &fit)
{
    if (pc.kappa2 != 0.0)
        return log2_1p(pc.rho_i / pc.kappa2);
    const double b = fit.beta_star();
    return 2.0 * special::digamma(fit.mu_star) / (fit.alpha_star * std::numbers::ln2) +
           std::log2(fit.omega_star * fit.omega_star * pc.p_indoor() / (b * b * pc.noise));
}

double ec_high_snr_outdoor(const PowerConfig &pc)
{
    return std::log2((1.0 + pc.kappa2) / (pc.rho_i + pc.kappa2));
}

LowSnrCapacity ec_low_snr(Side user, const PowerConfig &pc, double m2, double m4, double gain)
{
    const double g = pc.power * gain / pc.noise;
    const double rho = user == Side::indoor ? pc.rho_i : pc.rho_o;
    const double flag = user == Side::indoor ? 0.0 : 1.0;
    LowSnrCapacity r;
    r.first_order = std::numbers::log2e * g * rho * m2;
    r.second_order = -0.5 * std::numbers::log2e * g * g * rho * (2.0 * pc.kappa2 + pc.rho_i + flag) * m4;
    r.capacity = r.first_order + r.second_order;
    r.ratio = r.first_order > 0.0 ? std::abs(r.second_order / r.first_order) : 0.0;
    return r;
}

double low_snr_gain(const std::vector<double> &weights)
{
    double g = inf;
    for (double a : weights)
        if (a > 0.0)
            g = std::min(g, a * a);
    if (std::isinf(g))
        throw ConfigError("low_snr_gain: all weights are zero");
    return g;
}

// --- OMA --------------------------------------------------------------------------------

double op_oma_indoor(double threshold, const PowerConfig &pc, const DeltaSeries &series)
{
    return series_cdf_at(series, psi_oma(Side::indoor, threshold, pc));
}

double op_oma_outdoor(double threshold, const PowerConfig &pc, const CollapsedGammaMixture &model)
{
    return mog_cdf_at(model, psi_oma(Side::outdoor, threshold, pc));
}

double op_oma_outdoor(double threshold, const PowerConfig &pc, const CollapsedGaussianMixture &model)
{
    return gm_cdf_at(model, psi_oma(Side::outdoor, threshold, pc));
}

double ec_oma_indoor(const PowerConfig &pc, const AlphaMuApprox &fit, const special::QuadratureRule &rule)
{
    return 0.5 * ec_indoor(pc, fit, rule);
}

double ec_oma_outdoor(const PowerConfig &pc, const CollapsedGammaMixture &model, const special::QuadratureRule &rule)
{
    return 0.5 * mog_capacity(model, rule, pc.p_outdoor(), pc.noise, pc.kappa2 * pc.power);
}

double ec_oma_outdoor(const PowerConfig &pc, const CollapsedGaussianMixture &model, const special::QuadratureRule &rule)
{
    return 0.5 * gm_capacity(model, rule, pc.p_outdoor(), pc.noise, pc.kappa2 * pc.power);
}

} // namespace star_thz
