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
#include "star_thz/scenario.hpp"

#include <cmath>
#include <functional>

using namespace star_thz;

namespace
{
const std::string default_file = STAR_THZ_SOURCE_DIR "/data/reference_scenario.toml";
const std::string data_dir = STAR_THZ_SOURCE_DIR "/data";

bool mentions(const std::vector<std::string> &v, const std::string &needle)
{
    for (const std::string &s : v)
        if (s.find(needle) != std::string::npos)
            return true;
    return false;
}

std::string error_of(const std::function<void()> &f)
{
    try
    {
        f();
    }
    catch (const ConfigError &e)
    {
        return e.what();
    }
    return "";
}
} // namespace

TEST_CASE("default scenario file is valid and matches the built-in defaults")
{
    const StarRisScenario s = load_scenario(default_file);
    CHECK(s.violations().empty());
    CHECK_NOTHROW(s.validate());

    const StarRisScenario d = default_scenario();
    CHECK(d.violations().empty());
    CHECK(s.elements() == 9);
    CHECK(s.p_dbm == d.p_dbm);
    CHECK(s.kappa2 == d.kappa2);
    CHECK(s.frequency == doctest::Approx(140e9));
    CHECK(s.bandwidth == doctest::Approx(4e9));
    CHECK(s.indoor_fading.alpha == 2.0);
    CHECK(s.indoor_fading.mu == 1.0);
    CHECK(s.mc.seed == 2024u);
    CHECK(s.noise_power() == doctest::Approx(noise_power(-174.0, 4e9)).epsilon(1e-12));

    const E2EWeights ws = s.weights(), wd = d.weights();
    REQUIRE(ws.indoor.size() == wd.indoor.size());
    for (std::size_t k = 0; k < ws.indoor.size(); ++k)
    {
        CHECK(ws.indoor[k] == doctest::Approx(wd.indoor[k]).epsilon(1e-14));
        CHECK(ws.outdoor[k] == doctest::Approx(wd.outdoor[k]).epsilon(1e-14));
    }
}

TEST_CASE("bundled mixture equals the shipped JSON file")
{
    const GammaMixture file = std::get<GammaMixture>(load_mixture_file(data_dir + "/mixtures/rician_k1_mog3.json"));
    const GammaMixture bundled = std::get<GammaMixture>(default_scenario().outdoor_mixture);
    REQUIRE(file.size() == bundled.size());
    for (std::size_t k = 0; k < file.size(); ++k)
    {
        CHECK(file.components[k].a == bundled.components[k].a);
        CHECK(file.components[k].b == bundled.components[k].b);
        CHECK(file.components[k].c == bundled.components[k].c);
    }
}

TEST_CASE("energy split that does not sum to one is a named violation")
{
    StarRisScenario s = default_scenario();
    s.es_indoor_power = 0.6; // 0.6 + 0.5 = 1.1
    const auto v = s.violations();
    REQUIRE(v.size() == 1);
    CHECK(mentions(v, "protocol.indoor_power_fraction"));
    CHECK(mentions(v, "protocol.outdoor_power_fraction"));
    const std::string msg = error_of([&] { s.validate(); });
    CHECK(msg.find("indoor_power_fraction") != std::string::npos);
}

TEST_CASE("rho_O must exceed rho_I")
{
    StarRisScenario s = default_scenario();
    s.rho_i = 0.6;
    s.rho_o = 0.4;
    const auto v = s.violations();
    REQUIRE(v.size() == 1);
    CHECK(mentions(v, "power.rho_outdoor: must exceed power.rho_indoor"));
}

TEST_CASE("every violation is reported, not just the first")
{
    StarRisScenario s = default_scenario();
    s.es_indoor_power = 0.6;
    s.rho_i = 0.6;
    s.rho_o = 0.4;
    s.p_dbm = {20, 10};
    s.kappa2 = {};
    s.outdoor_user = {7, -3, -15};
    s.ms_indoor_elements = {0, 2, 20};
    s.protocol = ProtocolMode::ms;
    const auto v = s.violations();
    CHECK(mentions(v, "geometry.outdoor_user"));
    CHECK(mentions(v, "power.rho_outdoor"));
    CHECK(mentions(v, "power.p_dbm"));
    CHECK(mentions(v, "power.kappa2"));
    CHECK(mentions(v, "protocol"));
    CHECK(v.size() >= 5);
    const std::string msg = error_of([&] { s.validate(); });
    CHECK(msg.find("constraint(s)") != std::string::npos);
}

TEST_CASE("MS partition and bad mixtures are checked")
{
    StarRisScenario s = default_scenario();
    s.protocol = ProtocolMode::ms;
    CHECK(s.violations().empty());
    const ProtocolConfig pc = s.protocol_config();
    CHECK(pc.mode == ProtocolMode::ms);

    s.ms_indoor_elements = {0, 9};
    CHECK_FALSE(s.violations().empty());

    StarRisScenario m = default_scenario();
    std::get<GammaMixture>(m.outdoor_mixture).components[0].a *= 1.5;
    CHECK(mentions(m.violations(), "fading.outdoor"));
}

TEST_CASE("TOML errors carry line and column")
{
    const std::string bad = "[panel]\nrows = 3\ncols = = 3\n";
    const std::string msg = error_of([&] { parse_scenario_toml(bad, "bad.toml"); });
    CHECK(msg.rfind("bad.toml:3:", 0) == 0);
}

TEST_CASE("schema errors name every offending key")
{
    const std::string text = "[panel]\nrows = \"three\"\nbogus = 1\n[power]\nrho_indoor = [1]\n";
    const std::string msg = error_of([&] { parse_scenario_toml(text, "s.toml"); });
    CHECK(msg.find("panel.rows") != std::string::npos);
    CHECK(msg.find("panel.bogus: unknown key") != std::string::npos);
    CHECK(msg.find("power.rho_indoor") != std::string::npos);
    CHECK(error_of([] { load_scenario("/nonexistent/file.toml"); }).find("cannot open") != std::string::npos);
}

TEST_CASE("JSON and TOML describe the same scenario")
{
    const std::string toml_text = R"([panel]
rows = 2
cols = 4
[power]
p_dbm = { start = 0.0, stop = 20.0, step = 10.0 }
kappa2 = [0.0, 0.1]
rho_indoor = 0.3
rho_outdoor = 0.7
[protocol]
mode = "ms"
indoor_elements = [1, 3]
[fading.outdoor]
mixture = "mixtures/example_gm3.json"
)";
    const std::string json_text = R"({"panel": {"rows": 2, "cols": 4},
 "power": {"p_dbm": [0, 10, 20], "kappa2": [0.0, 0.1], "rho_indoor": 0.3, "rho_outdoor": 0.7},
 "protocol": {"mode": "ms", "indoor_elements": [1, 3]},
 "fading": {"outdoor": {"mixture": "mixtures/example_gm3.json"}}})";
    const StarRisScenario t = parse_scenario_toml(toml_text, "a.toml", data_dir);
    const StarRisScenario j = parse_scenario_json(json_text, "a.json", data_dir);
    CHECK(t.violations().empty());
    CHECK(t.rows == j.rows);
    CHECK(t.cols == j.cols);
    CHECK(t.p_dbm == j.p_dbm);
    CHECK(t.p_dbm == std::vector<double>{0, 10, 20});
    CHECK(t.kappa2 == j.kappa2);
    CHECK(t.rho_i == j.rho_i);
    CHECK(t.ms_indoor_elements == j.ms_indoor_elements);
    CHECK(std::holds_alternative<GaussianMixture>(t.outdoor_mixture));
    CHECK(std::holds_alternative<GaussianMixture>(j.outdoor_mixture));
    CHECK(t.weights().indoor == j.weights().indoor);
}

TEST_CASE("inline mixtures and the outdoor fraction default")
{
    const std::string text = R"([protocol]
indoor_power_fraction = 0.3
[fading.outdoor]
truth = "rician"
rician_k = 2.0
[fading.outdoor.mixture]
type = "gm"
components = [{weight = 1.0, mean = 1.0, std = 0.2}]
)";
    const StarRisScenario s = parse_scenario_toml(text, "inline.toml");
    CHECK(s.es_outdoor_power == doctest::Approx(0.7));
    CHECK(s.outdoor_truth == OutdoorTruthKind::rician);
    CHECK(std::holds_alternative<RicianTruth>(s.channel_model().outdoor_fading));
    CHECK(s.violations().empty());
}

TEST_CASE("panel.elements truncates the grid")
{
    StarRisScenario s = default_scenario();
    s.active_elements = 5;
    s.ms_indoor_elements = {0, 2, 4};
    CHECK(s.violations().empty());
    CHECK(s.panel().size() == 5);
    CHECK(s.weights().indoor.size() == 5);
    s.active_elements = 10;
    CHECK(mentions(s.violations(), "panel.elements"));
}

TEST_CASE("grid strings")
{
    CHECK(parse_grid("10:50:10") == std::vector<double>{10, 20, 30, 40, 50});
    CHECK(parse_grid("0:0.2:0.1").size() == 3);
    CHECK(parse_grid("30") == std::vector<double>{30});
    CHECK(parse_grid("3,1,2,2") == std::vector<double>{1, 2, 3});
    CHECK_THROWS_AS(parse_grid(""), ConfigError);
    CHECK_THROWS_AS(parse_grid("1:0:1"), ConfigError);
    CHECK_THROWS_AS(parse_grid("0:1:0"), ConfigError);
    CHECK_THROWS_AS(parse_grid("a,b"), ConfigError);
    CHECK_THROWS_AS(parse_grid("1:2"), ConfigError);
}
