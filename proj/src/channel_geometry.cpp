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

#include "star_thz/channel_geometry.hpp"
#include "star_thz/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace star_thz
{

double dbi_to_linear(double dbi)
{
    return std::pow(10.0, dbi / 10.0);
}

double db_to_linear(double db)
{
    return std::pow(10.0, db / 10.0);
}

double linear_to_db(double x)
{
    return 10.0 * std::log10(x);
}

double distance(const Point3 &a, const Point3 &b)
{
    return std::sqrt((a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y) + (a.z - b.z) * (a.z - b.z));
}

void ThzLinkParams::validate() const
{
    auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
    if (!positive(frequency) || !positive(distance) || !positive(tx_gain) || !positive(rx_gain))
        throw ConfigError("link: frequency, distance and antenna gains must be positive");
    if (!(absorption >= 0.0) || !std::isfinite(absorption))
        throw ConfigError("link: absorption coefficient must be nonnegative");
}

double thz_path_gain(const ThzLinkParams &p)
{
    p.validate();
    return speed_of_light * std::sqrt(p.tx_gain * p.rx_gain) / (4.0 * std::numbers::pi * p.frequency * p.distance) *
           std::exp(-0.5 * p.absorption * p.distance);
}

// --- panel ------------------------------------------------------------------------------

RisPanel RisPanel::regular_grid(int rows, int cols, double dx, double dy, double d0, double zeta)
{
    if (rows < 1 || cols < 1)
        throw ConfigError("panel: rows and cols must be at least 1");
    RisPanel p;
    p.dx = dx;
    p.dy = dy;
    p.d0 = d0;
    p.zeta = zeta;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
        {
            p.x.push_back((c - 0.5 * (cols - 1)) * dx);
            p.y.push_back((r - 0.5 * (rows - 1)) * dy);
        }
    p.validate();
    return p;
}

void RisPanel::validate() const
{
    if (x.empty() || x.size() != y.size())
        throw ConfigError("panel: element center lists must be nonempty and of equal length");
    if (!(dx > 0.0) || !(dy > 0.0))
        throw ConfigError("panel: element sizes must be positive");
    if (!(d0 > 0.0))
        throw ConfigError("panel: AP offset d0 must be positive");
    if (!(zeta > -1.0) || !std::isfinite(zeta))
        throw ConfigError("panel: directivity exponent must exceed -1");
    // elements may touch but not overlap
    const double slack = 1e-9;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i + 1; j < x.size(); ++j)
            if (std::abs(x[i] - x[j]) < dx * (1.0 - slack) && std::abs(y[i] - y[j]) < dy * (1.0 - slack))
            {
                std::ostringstream msg;
                msg << "panel: elements " << i << " and " << j << " overlap";
                throw ConfigError(msg.str());
            }
}

double element_distance(const RisPanel &panel, std::size_t m)
{
    if (m >= panel.size())
        throw DomainError("element_distance: element index out of range");
    return std::sqrt(panel.x[m] * panel.x[m] + panel.y[m] * panel.y[m] + panel.d0 * panel.d0);
}

namespace
{
// 10-point Gauss-Legendre, positive half
constexpr double gl_x[5] = {0.1488743389816312, 0.4333953941292472, 0.6794095682990244, 0.8650633666889845,
                            0.9739065285171717};
constexpr double gl_w[5] = {0.2955242247147529, 0.2692667193099963, 0.2190863625159820, 0.1494513491505806,
                            0.0666713443086881};

struct NearFieldIntegrand
{
    double scale, d02, power;

    double operator()(double x, double y) const { return scale * std::pow(x * x + y * y + d02, -power); }
};

double tensor_rule(const NearFieldIntegrand &f, double x0, double x1, double y0, double y1)
{
    const double cx = 0.5 * (x0 + x1), hx = 0.5 * (x1 - x0);
    const double cy = 0.5 * (y0 + y1), hy = 0.5 * (y1 - y0);
    double s = 0.0;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
        {
            const double ux = hx * gl_x[i], uy = hy * gl_x[j];
            s += gl_w[i] * gl_w[j] * (f(cx - ux, cy - uy) + f(cx - ux, cy + uy) + f(cx + ux, cy - uy) +
                                      f(cx + ux, cy + uy));
        }
    return s * hx * hy;
}

double adaptive(const NearFieldIntegrand &f, double x0, double x1, double y0, double y1, double whole, double tol,
                int depth)
{
    const double xm = 0.5 * (x0 + x1), ym = 0.5 * (y0 + y1);
    const double q[4] = {tensor_rule(f, x0, xm, y0, ym), tensor_rule(f, xm, x1, y0, ym), tensor_rule(f, x0, xm, ym, y1),
                         tensor_rule(f, xm, x1, ym, y1)};
    const double refined = q[0] + q[1] + q[2] + q[3];
    if (std::abs(refined - whole) <= tol)
        return refined;
    if (depth >= 14)
        throw NumericalError("near_field_energy: adaptive quadrature did not reach 1e-12", {refined - whole});
    return adaptive(f, x0, xm, y0, ym, q[0], 0.25 * tol, depth + 1) +
           adaptive(f, xm, x1, y0, ym, q[1], 0.25 * tol, depth + 1) +
           adaptive(f, x0, xm, ym, y1, q[2], 0.25 * tol, depth + 1) +
           adaptive(f, xm, x1, ym, y1, q[3], 0.25 * tol, depth + 1);
}
} // namespace

double near_field_energy(const RisPanel &panel, std::size_t m)
{
    if (m >= panel.size())
        throw DomainError("near_field_energy: element index out of range");
    const double z = panel.zeta;
    const NearFieldIntegrand f{panel.directivity_gain() * std::pow(panel.d0, z + 1.0) / (4.0 * std::numbers::pi),
                               panel.d0 * panel.d0, 0.5 * (z + 3.0)};
    const double x0 = panel.x[m] - 0.5 * panel.dx, x1 = panel.x[m] + 0.5 * panel.dx;
    const double y0 = panel.y[m] - 0.5 * panel.dy, y1 = panel.y[m] + 0.5 * panel.dy;
    return adaptive(f, x0, x1, y0, y1, tensor_rule(f, x0, x1, y0, y1), 1e-12, 0);
}

std::vector<double> near_field_energies(const RisPanel &panel)
{
    panel.validate();
    std::vector<double> out(panel.size());
    for (std::size_t m = 0; m < panel.size(); ++m)
        out[m] = near_field_energy(panel, m);
    return out;
}

// --- protocol ---------------------------------------------------------------------------

ProtocolConfig ProtocolConfig::energy_splitting(std::size_t m, double indoor_power_fraction)
{
    if (!(indoor_power_fraction >= 0.0 && indoor_power_fraction <= 1.0))
        throw ConfigError("protocol: ES power fraction must lie in [0, 1]");
    return energy_splitting(std::vector<double>(m, std::sqrt(indoor_power_fraction)),
                            std::vector<double>(m, std::sqrt(1.0 - indoor_power_fraction)));
}

ProtocolConfig ProtocolConfig::energy_splitting(std::vector<double> a_indoor, std::vector<double> a_outdoor)
{
    ProtocolConfig p;
    p.mode = ProtocolMode::es;
    p.a_indoor = std::move(a_indoor);
    p.a_outdoor = std::move(a_outdoor);
    p.validate(p.a_indoor.size());
    return p;
}

ProtocolConfig ProtocolConfig::mode_switching(std::size_t m, std::vector<std::size_t> indoor_elements)
{
    ProtocolConfig p;
    p.mode = ProtocolMode::ms;
    std::sort(indoor_elements.begin(), indoor_elements.end());
    p.indoor_elements = std::move(indoor_elements);
    p.a_indoor.assign(m, 0.0);
    p.a_outdoor.assign(m, 1.0);
    for (std::size_t k : p.indoor_elements)
    {
        if (k >= m)
            throw ConfigError("protocol: MS element index out of range");
        p.a_indoor[k] = 1.0;
        p.a_outdoor[k] = 0.0;
    }
    for (std::size_t k = 0; k < m; ++k)
        if (p.a_outdoor[k] == 1.0)
            p.outdoor_elements.push_back(k);
    p.validate(m);
    return p;
}

void ProtocolConfig::validate(std::size_t m) const
{
    if (a_indoor.size() != m || a_outdoor.size() != m)
    {
        std::ostringstream msg;
        msg << "protocol: expected " << m << " amplitudes per side, got " << a_indoor.size() << " and "
            << a_outdoor.size();
        throw ConfigError(msg.str());
    }
    if (mode == ProtocolMode::es)
    {
        for (std::size_t k = 0; k < m; ++k)
        {
            const double ai = a_indoor[k], ao = a_outdoor[k];
            if (!(ai >= 0.0 && ai <= 1.0) || !(ao >= 0.0 && ao <= 1.0) || std::abs(ai * ai + ao * ao - 1.0) > 1e-9)
            {
                std::ostringstream msg;
                msg << "protocol: element " << k << " violates a_I^2 + a_O^2 = 1 (" << ai * ai + ao * ao << ")";
                throw ConfigError(msg.str());
            }
        }
        return;
    }
    std::vector<int> owner(m, 0);
    for (std::size_t k : indoor_elements)
        if (k >= m || owner[k]++)
            throw ConfigError("protocol: MS indoor element set has a duplicate or out-of-range index");
    for (std::size_t k : outdoor_elements)
        if (k >= m || owner[k]++)
            throw ConfigError("protocol: MS element sets must be disjoint and within range");
    for (std::size_t k = 0; k < m; ++k)
    {
        if (owner[k] != 1)
        {
            std::ostringstream msg;
            msg << "protocol: MS partition does not cover element " << k;
            throw ConfigError(msg.str());
        }
        const bool indoor = std::find(indoor_elements.begin(), indoor_elements.end(), k) != indoor_elements.end();
        if (a_indoor[k] != (indoor ? 1.0 : 0.0) || a_outdoor[k] != (indoor ? 0.0 : 1.0))
            throw ConfigError("protocol: MS amplitudes must be binary and match the partition");
    }
}

// --- e2e weights ------------------------------------------------------------------------

E2EWeights build_e2e_weights(const std::vector<double> &energies, const ProtocolConfig &protocol,
                             const ThzLinkParams &indoor_link, const ThzLinkParams &outdoor_link)
{
    const std::size_t m = energies.size();
    protocol.validate(m);
    const double hi = thz_path_gain(indoor_link), ho = thz_path_gain(outdoor_link);
    E2EWeights w;
    w.indoor.resize(m);
    w.outdoor.resize(m);
    for (std::size_t k = 0; k < m; ++k)
    {
        const double g = std::sqrt(energies[k]);
        w.indoor[k] = hi * g * protocol.a_indoor[k];
        w.outdoor[k] = ho * g * protocol.a_outdoor[k];
    }
    return w;
}

E2EWeights build_e2e_weights(const RisPanel &panel, const ProtocolConfig &protocol, const ThzLinkParams &indoor_link,
                             const ThzLinkParams &outdoor_link)
{
    return build_e2e_weights(near_field_energies(panel), protocol, indoor_link, outdoor_link);
}

// --- co-phasing -------------------------------------------------------------------------

std::vector<double> co_phase_shifts(const std::vector<std::complex<double>> &h,
                                    const std::vector<std::complex<double>> &g)
{
    if (h.size() != g.size())
        throw ConfigError("co_phase_shifts: channel vectors differ in length");
    std::vector<double> theta(h.size());
    for (std::size_t k = 0; k < h.size(); ++k)
        theta[k] = -std::arg(h[k]) - std::arg(g[k]);
    return theta;
}

double combined_magnitude(const std::vector<std::complex<double>> &h, const std::vector<std::complex<double>> &g,
                          const std::vector<double> &a, const std::vector<double> &theta)
{
    if (h.size() != g.size() || h.size() != a.size() || h.size() != theta.size())
        throw ConfigError("combined_magnitude: vectors differ in length");
    std::complex<double> s = 0.0;
    for (std::size_t k = 0; k < h.size(); ++k)
        s += h[k] * a[k] * std::polar(1.0, theta[k]) * g[k];
    return std::abs(s);
}

double phase_align_check(const std::vector<std::complex<double>> &h, const std::vector<std::complex<double>> &g,
                         const std::vector<double> &a)
{
    const double coherent = combined_magnitude(h, g, a, co_phase_shifts(h, g));
    double ideal = 0.0;
    for (std::size_t k = 0; k < h.size(); ++k)
        ideal += std::abs(h[k]) * a[k] * std::abs(g[k]);
    return std::abs(coherent - ideal);
}

} // namespace star_thz
