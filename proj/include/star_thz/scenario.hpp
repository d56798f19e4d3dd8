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

#ifndef STAR_THZ_SCENARIO_HPP
#define STAR_THZ_SCENARIO_HPP

#include "star_thz/channel_geometry.hpp"
#include "star_thz/dist_alpha_mu.hpp"
#include "star_thz/dist_mixture.hpp"
#include "star_thz/monte_carlo.hpp"
#include "star_thz/performance.hpp"

#include <string>
#include <vector>

namespace star_thz
{

enum class OutdoorTruthKind
{
    mixture,
    rician
};

// A full system description. Config files carry dBm/dBi/dB; the fields below hold
// those values as written and the accessors convert to linear units.
struct StarRisScenario
{
    // geometry, meters; the panel is centered at the origin in the xOy plane
    Point3 ap{0.0, 0.0, -1.0};
    Point3 indoor_user{5.0, -2.0, -9.0};
    Point3 outdoor_user{7.0, -3.0, 15.0};
    std::size_t rows = 3, cols = 3;
    std::size_t active_elements = 0; // first k grid positions, row by row; 0 uses all
    double element_dx = 0.01, element_dy = 0.01;
    double zeta = 49.0;

    // links, shared by both hops
    double frequency = 140e9;
    double absorption = 3.18e-4;
    double tx_gain_dbi = 20.0, rx_gain_dbi = 20.0;

    AlphaMuParams indoor_fading{2.0, 1.0, 1.0};
    MixtureModel outdoor_mixture;
    std::string mixture_source; // path the mixture was read from, if any
    OutdoorTruthKind outdoor_truth = OutdoorTruthKind::mixture;
    double rician_k = 1.0;

    ProtocolMode protocol = ProtocolMode::es;
    double es_indoor_power = 0.5;                             // a_I^2 on every element
    double es_outdoor_power = 0.5;                            // a_O^2 on every element
    std::vector<std::size_t> ms_indoor_elements{0, 2, 4, 6, 8}; // reflecting elements under MS

    std::vector<double> p_dbm{10, 15, 20, 25, 30, 35, 40, 45, 50};
    std::vector<double> kappa2{0.0, 0.08};
    double rho_i = 0.4, rho_o = 0.6;
    double noise_psd_dbm_hz = -174.0;
    double bandwidth = 4e9;

    double threshold_indoor_db = 0.0, threshold_outdoor_db = 0.0;
    double rate_indoor = 0.5, rate_outdoor = 0.5; // NOMA/OMA comparison

    int quadrature_order = 64;
    int series_terms = 256;
    SimulationPlan mc{1000000, 2024, 0};

    std::size_t elements() const { return active_elements ? active_elements : rows * cols; }
    RisPanel panel() const;
    ThzLinkParams link(Side user) const;
    ProtocolConfig protocol_config() const;
    E2EWeights weights() const;
    ChannelModel channel_model() const;
    double noise_power() const;
    PowerConfig power_at(double p_dbm_value, double kappa2_value) const;
    OutageThresholds thresholds() const;

    // Every invariant violation, each naming its field; empty when valid.
    std::vector<std::string> violations() const;
    // ConfigError listing all violations.
    void validate() const;
};

// Reference operating point with the bundled Rician(K=1) mixture fit.
StarRisScenario default_scenario();

// Scenario from TOML or JSON text. Relative mixture paths resolve against base_dir.
// Errors carry the origin name and the offending field; TOML syntax errors carry
// line and column.
StarRisScenario parse_scenario_toml(const std::string &text, const std::string &origin = "<toml>",
                                    const std::string &base_dir = ".");
StarRisScenario parse_scenario_json(const std::string &text, const std::string &origin = "<json>",
                                    const std::string &base_dir = ".");
// Format by extension (.json, otherwise TOML). Does not validate invariants.
StarRisScenario load_scenario(const std::string &path);

// "a:b:step" or "a,b,c" into a sorted grid; ConfigError on malformed or empty input.
std::vector<double> parse_grid(const std::string &spec);

} // namespace star_thz

#endif
