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

#ifndef STAR_THZ_CHANNEL_GEOMETRY_HPP
#define STAR_THZ_CHANNEL_GEOMETRY_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace star_thz
{

inline constexpr double speed_of_light = 299792458.0;

double dbi_to_linear(double dbi);
double db_to_linear(double db);
double linear_to_db(double x);

struct Point3
{
    double x = 0.0, y = 0.0, z = 0.0;
};

double distance(const Point3 &a, const Point3 &b);

struct ThzLinkParams
{
    double frequency = 140e9; // Hz
    double distance = 1.0;    // m
    double tx_gain = 100.0;   // linear
    double rx_gain = 100.0;   // linear
    double absorption = 3.18e-4; // per meter

    void validate() const;
};

// Amplitude gain c sqrt(Gt Gr) / (4 pi f d) * exp(-absorption d / 2).
double thz_path_gain(const ThzLinkParams &p);

/// Rectangular STAR-RIS panel in the z = 0 plane, AP on the axis at (0, 0, -d0).
///
/// `zeta` is the directivity exponent of the AP feed used for the near-field energy
/// split; its gain 2(zeta + 1) is unrelated to the far-field antenna gains of the
/// user links. Element energies are computed once on construction through
/// `make_panel` or `regular_grid` and cached.
struct RisPanel
{
    std::vector<double> x, y; // element centers, m
    double dx = 0.01, dy = 0.01;
    double d0 = 1.0;
    double zeta = 49.0;

    std::size_t size() const { return x.size(); }
    double directivity_gain() const { return 2.0 * (zeta + 1.0); }
    // ConfigError for empty panels, non-positive sizes or overlapping elements.
    void validate() const;

    // rows x cols grid centered at the origin, row-major from the lowest y.
    static RisPanel regular_grid(int rows, int cols, double dx, double dy, double d0, double zeta);
};

// Energy fraction collected by element m. Adaptive tensor Gauss-Legendre with an
// absolute tolerance of 1e-12; NumericalError if refinement does not converge.
double near_field_energy(const RisPanel &panel, std::size_t m);
std::vector<double> near_field_energies(const RisPanel &panel);
double element_distance(const RisPanel &panel, std::size_t m);

enum class Side
{
    indoor,
    outdoor
};

enum class ProtocolMode
{
    es,
    ms
};

struct ProtocolConfig
{
    ProtocolMode mode = ProtocolMode::es;
    // Per-element amplitudes (not powers). For MS these are 0/1 masks derived from the partition.
    std::vector<double> a_indoor, a_outdoor;
    std::vector<std::size_t> indoor_elements, outdoor_elements; // MS partition

    static ProtocolConfig energy_splitting(std::size_t m, double indoor_power_fraction);
    static ProtocolConfig energy_splitting(std::vector<double> a_indoor, std::vector<double> a_outdoor);
    static ProtocolConfig mode_switching(std::size_t m, std::vector<std::size_t> indoor_elements);

    const std::vector<double> &amplitudes(Side s) const { return s == Side::indoor ? a_indoor : a_outdoor; }
    // ConfigError when ES violates a_I^2 + a_O^2 = 1 or MS is not a disjoint cover of 0..m-1.
    void validate(std::size_t m) const;
};

struct E2EWeights
{
    std::vector<double> indoor, outdoor;

    const std::vector<double> &side(Side s) const { return s == Side::indoor ? indoor : outdoor; }
};

// A_{chi,m} = path gain * sqrt(energy_m) * a_{chi,m}, with co-phased elements.
E2EWeights build_e2e_weights(const RisPanel &panel, const ProtocolConfig &protocol, const ThzLinkParams &indoor_link,
                             const ThzLinkParams &outdoor_link);
E2EWeights build_e2e_weights(const std::vector<double> &energies, const ProtocolConfig &protocol,
                             const ThzLinkParams &indoor_link, const ThzLinkParams &outdoor_link);

// theta*_m = -arg h_m - arg g_m
std::vector<double> co_phase_shifts(const std::vector<std::complex<double>> &h,
                                    const std::vector<std::complex<double>> &g);
double combined_magnitude(const std::vector<std::complex<double>> &h, const std::vector<std::complex<double>> &g,
                          const std::vector<double> &a, const std::vector<double> &theta);
// | |sum h a e^{j theta*} g| - sum |h| a |g| |
double phase_align_check(const std::vector<std::complex<double>> &h, const std::vector<std::complex<double>> &g,
                         const std::vector<double> &a);

} // namespace star_thz

#endif
