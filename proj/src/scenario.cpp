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

#include "star_thz/scenario.hpp"

#include "star_thz/errors.hpp"

#include <json.hpp>
#include <toml.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace star_thz
{

namespace
{
using json = nlohmann::json;

// Rician K = 1 envelope (E[X^2] = 1) fitted by EM with three gamma components;
// identical to data/mixtures/rician_k1_mog3.json.
GammaMixture bundled_rician_mog()
{
    return {{{6.301156501636516, 2.406791448476735, 4.6829246350311635},
             {900.4041322724904, 6.354859573830111, 7.708529449142465},
             {23594.586150424777, 13.583074027673717, 11.025399200437873}}};
}

std::string join(const std::vector<std::string> &lines, const std::string &head)
{
    std::ostringstream out;
    out << head;
    for (const std::string &l : lines)
        out << "\n  " << l;
    return out.str();
}

// Schema reader over a JSON tree. Problems are collected, not thrown, so one pass
// reports every malformed field.
class Reader
{
  public:
    std::vector<std::string> errors;

    const json *table(const json &parent, const char *key, const std::string &path)
    {
        auto it = parent.find(key);
        if (it == parent.end())
            return nullptr;
        if (!it->is_object())
        {
            errors.push_back(path + ": expected a table");
            return nullptr;
        }
        return &*it;
    }

    void allow(const json &obj, const std::string &path, std::initializer_list<const char *> keys)
    {
        std::set<std::string> ok(keys.begin(), keys.end());
        for (auto it = obj.begin(); it != obj.end(); ++it)
            if (!ok.count(it.key()))
                errors.push_back(prefix(path) + it.key() + ": unknown key");
    }

    void number(const json &obj, const char *key, const std::string &path, double &out)
    {
        auto it = obj.find(key);
        if (it == obj.end())
            return;
        if (!it->is_number())
            errors.push_back(prefix(path) + key + ": expected a number");
        else
            out = it->get<double>();
    }

    template <class Int>
    void integer(const json &obj, const char *key, const std::string &path, Int &out)
    {
        auto it = obj.find(key);
        if (it == obj.end())
            return;
        if (!it->is_number_integer() || (std::is_unsigned_v<Int> && it->get<long long>() < 0))
            errors.push_back(prefix(path) + key + ": expected " +
                             (std::is_unsigned_v<Int> ? "a nonnegative integer" : "an integer"));
        else
            out = static_cast<Int>(it->get<long long>());
    }

    void text(const json &obj, const char *key, const std::string &path, std::string &out)
    {
        auto it = obj.find(key);
        if (it == obj.end())
            return;
        if (!it->is_string())
            errors.push_back(prefix(path) + key + ": expected a string");
        else
            out = it->get<std::string>();
    }

    void numbers(const json &obj, const char *key, const std::string &path, std::vector<double> &out)
    {
        auto it = obj.find(key);
        if (it == obj.end())
            return;
        if (!it->is_array())
        {
            errors.push_back(prefix(path) + key + ": expected an array of numbers");
            return;
        }
        std::vector<double> v;
        for (const json &e : *it)
        {
            if (!e.is_number())
            {
                errors.push_back(prefix(path) + key + ": expected an array of numbers");
                return;
            }
            v.push_back(e.get<double>());
        }
        out = v;
    }

    void point(const json &obj, const char *key, const std::string &path, Point3 &out)
    {
        std::vector<double> v;
        if (!obj.contains(key))
            return;
        numbers(obj, key, path, v);
        if (v.size() != 3)
        {
            if (obj.at(key).is_array())
                errors.push_back(prefix(path) + key + ": expected [x, y, z]");
            return;
        }
        out = {v[0], v[1], v[2]};
    }

    // Array, or {start, stop, step}.
    void grid(const json &obj, const char *key, const std::string &path, std::vector<double> &out)
    {
        auto it = obj.find(key);
        if (it == obj.end())
            return;
        if (it->is_object())
        {
            const std::string sub = prefix(path) + key;
            allow(*it, sub, {"start", "stop", "step"});
            double a = NAN, b = NAN, s = NAN;
            number(*it, "start", sub, a);
            number(*it, "stop", sub, b);
            number(*it, "step", sub, s);
            if (!(s > 0.0) || !(b >= a))
            {
                errors.push_back(sub + ": need start <= stop and step > 0");
                return;
            }
            out.clear();
            const long n = std::lround(std::floor((b - a) / s + 1e-9));
            for (long i = 0; i <= n; ++i)
                out.push_back(a + static_cast<double>(i) * s);
            return;
        }
        numbers(obj, key, path, out);
    }

  private:
    static std::string prefix(const std::string &path) { return path.empty() ? "" : path + "."; }
};

json toml_to_json(const toml::node &n)
{
    if (const toml::table *t = n.as_table())
    {
        json o = json::object();
        for (const auto &[k, v] : *t)
            o[std::string(k.str())] = toml_to_json(v);
        return o;
    }
    if (const toml::array *a = n.as_array())
    {
        json o = json::array();
        for (const toml::node &v : *a)
            o.push_back(toml_to_json(v));
        return o;
    }
    if (const auto *v = n.as_integer())
        return v->get();
    if (const auto *v = n.as_floating_point())
        return v->get();
    if (const auto *v = n.as_boolean())
        return v->get();
    if (const auto *v = n.as_string())
        return v->get();
    // dates and times have no meaning here; a placeholder makes them fail type checks
    return "<date/time>";
}

StarRisScenario from_tree(const json &root, const std::string &origin, const std::string &base_dir)
{
    if (!root.is_object())
        throw ConfigError(origin + ": top level must be a table");
    StarRisScenario s = default_scenario();
    Reader r;
    r.allow(root, "", {"geometry", "panel", "link", "fading", "protocol", "power", "thresholds", "analysis", "mc"});

    if (const json *g = r.table(root, "geometry", "geometry"))
    {
        r.allow(*g, "geometry", {"ap", "indoor_user", "outdoor_user"});
        r.point(*g, "ap", "geometry", s.ap);
        r.point(*g, "indoor_user", "geometry", s.indoor_user);
        r.point(*g, "outdoor_user", "geometry", s.outdoor_user);
    }
    if (const json *p = r.table(root, "panel", "panel"))
    {
        r.allow(*p, "panel", {"rows", "cols", "elements", "element_dx_m", "element_dy_m", "zeta"});
        r.integer(*p, "rows", "panel", s.rows);
        r.integer(*p, "cols", "panel", s.cols);
        r.integer(*p, "elements", "panel", s.active_elements);
        r.number(*p, "element_dx_m", "panel", s.element_dx);
        r.number(*p, "element_dy_m", "panel", s.element_dy);
        r.number(*p, "zeta", "panel", s.zeta);
    }
    if (const json *l = r.table(root, "link", "link"))
    {
        r.allow(*l, "link", {"frequency_ghz", "absorption_per_m", "tx_gain_dbi", "rx_gain_dbi"});
        double ghz = s.frequency / 1e9;
        r.number(*l, "frequency_ghz", "link", ghz);
        s.frequency = ghz * 1e9;
        r.number(*l, "absorption_per_m", "link", s.absorption);
        r.number(*l, "tx_gain_dbi", "link", s.tx_gain_dbi);
        r.number(*l, "rx_gain_dbi", "link", s.rx_gain_dbi);
    }
    if (const json *f = r.table(root, "fading", "fading"))
    {
        r.allow(*f, "fading", {"indoor", "outdoor"});
        if (const json *in = r.table(*f, "indoor", "fading.indoor"))
        {
            r.allow(*in, "fading.indoor", {"alpha", "mu", "omega"});
            r.number(*in, "alpha", "fading.indoor", s.indoor_fading.alpha);
            r.number(*in, "mu", "fading.indoor", s.indoor_fading.mu);
            r.number(*in, "omega", "fading.indoor", s.indoor_fading.omega);
        }
        if (const json *out = r.table(*f, "outdoor", "fading.outdoor"))
        {
            r.allow(*out, "fading.outdoor", {"mixture", "truth", "rician_k"});
            auto it = out->find("mixture");
            if (it != out->end())
            {
                try
                {
                    if (it->is_string())
                    {
                        std::filesystem::path p = it->get<std::string>();
                        if (p.is_relative())
                            p = std::filesystem::path(base_dir) / p;
                        s.mixture_source = p.string();
                        s.outdoor_mixture = load_mixture_file(s.mixture_source);
                    }
                    else if (it->is_object())
                    {
                        s.mixture_source.clear();
                        s.outdoor_mixture = parse_mixture_json(it->dump());
                    }
                    else
                        r.errors.push_back("fading.outdoor.mixture: expected a file path or an inline table");
                }
                catch (const ConfigError &e)
                {
                    r.errors.push_back(std::string("fading.outdoor.mixture: ") + e.what());
                }
            }
            std::string truth = "mixture";
            r.text(*out, "truth", "fading.outdoor", truth);
            if (truth == "mixture")
                s.outdoor_truth = OutdoorTruthKind::mixture;
            else if (truth == "rician")
                s.outdoor_truth = OutdoorTruthKind::rician;
            else
                r.errors.push_back("fading.outdoor.truth: expected \"mixture\" or \"rician\"");
            r.number(*out, "rician_k", "fading.outdoor", s.rician_k);
        }
    }
    if (const json *p = r.table(root, "protocol", "protocol"))
    {
        r.allow(*p, "protocol", {"mode", "indoor_power_fraction", "outdoor_power_fraction", "indoor_elements"});
        std::string mode = "es";
        r.text(*p, "mode", "protocol", mode);
        if (mode == "es")
            s.protocol = ProtocolMode::es;
        else if (mode == "ms")
            s.protocol = ProtocolMode::ms;
        else
            r.errors.push_back("protocol.mode: expected \"es\" or \"ms\"");
        r.number(*p, "indoor_power_fraction", "protocol", s.es_indoor_power);
        // the outdoor share defaults to the complement
        s.es_outdoor_power = 1.0 - s.es_indoor_power;
        r.number(*p, "outdoor_power_fraction", "protocol", s.es_outdoor_power);
        auto it = p->find("indoor_elements");
        if (it != p->end())
        {
            bool ok = it->is_array();
            std::vector<std::size_t> idx;
            if (ok)
                for (const json &e : *it)
                {
                    if (!e.is_number_integer() || e.get<long long>() < 0)
                    {
                        ok = false;
                        break;
                    }
                    idx.push_back(static_cast<std::size_t>(e.get<long long>()));
                }
            if (ok)
                s.ms_indoor_elements = idx;
            else
                r.errors.push_back("protocol.indoor_elements: expected an array of element indices");
        }
    }
    if (const json *p = r.table(root, "power", "power"))
    {
        r.allow(*p, "power", {"p_dbm", "kappa2", "rho_indoor", "rho_outdoor", "noise_psd_dbm_hz", "bandwidth_ghz"});
        r.grid(*p, "p_dbm", "power", s.p_dbm);
        r.grid(*p, "kappa2", "power", s.kappa2);
        r.number(*p, "rho_indoor", "power", s.rho_i);
        r.number(*p, "rho_outdoor", "power", s.rho_o);
        r.number(*p, "noise_psd_dbm_hz", "power", s.noise_psd_dbm_hz);
        double ghz = s.bandwidth / 1e9;
        r.number(*p, "bandwidth_ghz", "power", ghz);
        s.bandwidth = ghz * 1e9;
    }
    if (const json *t = r.table(root, "thresholds", "thresholds"))
    {
        r.allow(*t, "thresholds", {"indoor_db", "outdoor_db", "rate_indoor", "rate_outdoor"});
        r.number(*t, "indoor_db", "thresholds", s.threshold_indoor_db);
        r.number(*t, "outdoor_db", "thresholds", s.threshold_outdoor_db);
        r.number(*t, "rate_indoor", "thresholds", s.rate_indoor);
        r.number(*t, "rate_outdoor", "thresholds", s.rate_outdoor);
    }
    if (const json *a = r.table(root, "analysis", "analysis"))
    {
        r.allow(*a, "analysis", {"quadrature_order", "series_terms"});
        r.integer(*a, "quadrature_order", "analysis", s.quadrature_order);
        r.integer(*a, "series_terms", "analysis", s.series_terms);
    }
    if (const json *m = r.table(root, "mc", "mc"))
    {
        r.allow(*m, "mc", {"trials", "seed", "workers"});
        r.integer(*m, "trials", "mc", s.mc.trials);
        r.integer(*m, "seed", "mc", s.mc.seed);
        r.integer(*m, "workers", "mc", s.mc.workers);
    }
    if (!r.errors.empty())
        throw ConfigError(join(r.errors, origin + ": invalid scenario"));
    return s;
}

bool sorted_unique(const std::vector<double> &v)
{
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i] > v[i - 1]))
            return false;
    return true;
}

// Runs a component validator and records its message instead of stopping.
template <class F>
void collect(std::vector<std::string> &out, const std::string &field, F &&check)
{
    try
    {
        check();
    }
    catch (const std::exception &e)
    {
        out.push_back(field + ": " + e.what());
    }
}

} // namespace

RisPanel StarRisScenario::panel() const
{
    RisPanel p =
        RisPanel::regular_grid(static_cast<int>(rows), static_cast<int>(cols), element_dx, element_dy, -ap.z, zeta);
    if (active_elements && active_elements < p.size())
    {
        p.x.resize(active_elements);
        p.y.resize(active_elements);
    }
    return p;
}

ThzLinkParams StarRisScenario::link(Side user) const
{
    ThzLinkParams p;
    p.frequency = frequency;
    p.absorption = absorption;
    p.tx_gain = dbi_to_linear(tx_gain_dbi);
    p.rx_gain = dbi_to_linear(rx_gain_dbi);
    p.distance = distance({0.0, 0.0, 0.0}, user == Side::indoor ? indoor_user : outdoor_user);
    return p;
}

ProtocolConfig StarRisScenario::protocol_config() const
{
    if (protocol == ProtocolMode::ms)
        return ProtocolConfig::mode_switching(elements(), ms_indoor_elements);
    if (!(es_indoor_power >= 0.0) || !(es_outdoor_power >= 0.0))
        throw ConfigError("protocol: power fractions must be nonnegative");
    return ProtocolConfig::energy_splitting(std::vector<double>(elements(), std::sqrt(es_indoor_power)),
                                            std::vector<double>(elements(), std::sqrt(es_outdoor_power)));
}

E2EWeights StarRisScenario::weights() const
{
    return build_e2e_weights(panel(), protocol_config(), link(Side::indoor), link(Side::outdoor));
}

ChannelModel StarRisScenario::channel_model() const
{
    ChannelModel m{weights(), indoor_fading, RicianTruth{rician_k}};
    if (outdoor_truth == OutdoorTruthKind::mixture)
        m.outdoor_fading = std::visit([](const auto &g) -> OutdoorTruth { return g; }, outdoor_mixture);
    return m;
}

double StarRisScenario::noise_power() const
{
    return star_thz::noise_power(noise_psd_dbm_hz, bandwidth);
}

PowerConfig StarRisScenario::power_at(double p_dbm_value, double kappa2_value) const
{
    return {dbm_to_watt(p_dbm_value), rho_i, rho_o, kappa2_value, noise_power()};
}

OutageThresholds StarRisScenario::thresholds() const
{
    return {db_to_linear(threshold_indoor_db), db_to_linear(threshold_outdoor_db)};
}

std::vector<std::string> StarRisScenario::violations() const
{
    std::vector<std::string> v;
    if (ap.x != 0.0 || ap.y != 0.0 || !(ap.z < 0.0))
        v.push_back("geometry.ap: the AP must sit on the panel axis at (0, 0, -d0) with d0 > 0");
    if (!(indoor_user.z < 0.0))
        v.push_back("geometry.indoor_user: must lie on the reflection side (z < 0)");
    if (!(outdoor_user.z > 0.0))
        v.push_back("geometry.outdoor_user: must lie on the transmission side (z > 0)");
    if (rows == 0 || cols == 0)
        v.push_back("panel.rows, panel.cols: must be positive");
    else if (active_elements > rows * cols)
        v.push_back("panel.elements: exceeds rows * cols");
    else
        collect(v, "panel", [&] { panel().validate(); });
    collect(v, "link", [&] {
        link(Side::indoor).validate();
        link(Side::outdoor).validate();
    });
    collect(v, "fading.indoor", [&] { indoor_fading.validate(); });
    collect(v, "fading.outdoor.mixture", [&] { std::visit([](const auto &g) { g.validate(); }, outdoor_mixture); });
    if (outdoor_truth == OutdoorTruthKind::rician && !(rician_k >= 0.0 && std::isfinite(rician_k)))
        v.push_back("fading.outdoor.rician_k: must be nonnegative");
    if (rows > 0 && cols > 0)
    {
        if (protocol == ProtocolMode::es && std::abs(es_indoor_power + es_outdoor_power - 1.0) > 1e-9)
            v.push_back("protocol.indoor_power_fraction + protocol.outdoor_power_fraction: a_I^2 + a_O^2 must "
                        "equal 1 (got " +
                        std::to_string(es_indoor_power + es_outdoor_power) + ")");
        else
            collect(v, "protocol", [&] { protocol_config().validate(elements()); });
    }

    if (p_dbm.empty())
        v.push_back("power.p_dbm: grid must be nonempty");
    else if (!sorted_unique(p_dbm))
        v.push_back("power.p_dbm: grid must be strictly increasing");
    if (kappa2.empty())
        v.push_back("power.kappa2: grid must be nonempty");
    else if (!sorted_unique(kappa2))
        v.push_back("power.kappa2: grid must be strictly increasing");
    for (double k : kappa2)
        if (!(k >= 0.0))
        {
            v.push_back("power.kappa2: values must be nonnegative");
            break;
        }
    if (std::abs(rho_i + rho_o - 1.0) > 1e-12)
        v.push_back("power.rho_indoor + power.rho_outdoor: must equal 1");
    if (!(rho_o > rho_i))
        v.push_back("power.rho_outdoor: must exceed power.rho_indoor");
    if (!(rho_i > 0.0) || !(rho_o > 0.0))
        v.push_back("power.rho_indoor, power.rho_outdoor: must be positive");
    if (!(bandwidth > 0.0))
        v.push_back("power.bandwidth_ghz: must be positive");
    if (!std::isfinite(threshold_indoor_db) || !std::isfinite(threshold_outdoor_db))
        v.push_back("thresholds: dB thresholds must be finite");
    if (!(rate_indoor > 0.0) || !(rate_outdoor > 0.0))
        v.push_back("thresholds.rate_indoor, thresholds.rate_outdoor: must be positive");
    if (quadrature_order < 1 || quadrature_order > 512)
        v.push_back("analysis.quadrature_order: must lie in 1..512");
    if (series_terms < 1 || series_terms > 4096)
        v.push_back("analysis.series_terms: must lie in 1..4096");
    if (mc.trials == 0)
        v.push_back("mc.trials: must be positive");
    return v;
}

void StarRisScenario::validate() const
{
    const std::vector<std::string> v = violations();
    if (!v.empty())
        throw ConfigError(join(v, "scenario violates " + std::to_string(v.size()) + " constraint(s):"));
}

StarRisScenario default_scenario()
{
    StarRisScenario s;
    s.outdoor_mixture = bundled_rician_mog();
    return s;
}

StarRisScenario parse_scenario_toml(const std::string &text, const std::string &origin, const std::string &base_dir)
{
    toml::table tbl;
    try
    {
        tbl = toml::parse(text, origin);
    }
    catch (const toml::parse_error &e)
    {
        std::ostringstream msg;
        msg << origin << ":" << e.source().begin.line << ":" << e.source().begin.column << ": " << e.description();
        throw ConfigError(msg.str());
    }
    return from_tree(toml_to_json(tbl), origin, base_dir);
}

StarRisScenario parse_scenario_json(const std::string &text, const std::string &origin, const std::string &base_dir)
{
    json root;
    try
    {
        root = json::parse(text);
    }
    catch (const json::parse_error &e)
    {
        throw ConfigError(origin + ": " + e.what());
    }
    return from_tree(root, origin, base_dir);
}

StarRisScenario load_scenario(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError(path + ": cannot open scenario file");
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::filesystem::path p(path);
    const std::string base = p.has_parent_path() ? p.parent_path().string() : ".";
    if (p.extension() == ".json")
        return parse_scenario_json(buf.str(), path, base);
    return parse_scenario_toml(buf.str(), path, base);
}

std::vector<double> parse_grid(const std::string &text)
{
    std::vector<double> out;
    auto to_double = [&](const std::string &t) {
        std::size_t used = 0;
        double v = 0.0;
        try
        {
            v = std::stod(t, &used);
        }
        catch (const std::exception &)
        {
            used = 0;
        }
        if (used == 0 || used != t.size() || !std::isfinite(v))
            throw ConfigError("grid '" + text + "': '" + t + "' is not a number");
        return v;
    };
    if (text.find(':') != std::string::npos)
    {
        std::vector<std::string> parts;
        std::stringstream ss(text);
        for (std::string t; std::getline(ss, t, ':');)
            parts.push_back(t);
        if (parts.size() != 3)
            throw ConfigError("grid '" + text + "': expected start:stop:step");
        const double a = to_double(parts[0]), b = to_double(parts[1]), s = to_double(parts[2]);
        if (!(s > 0.0) || !(b >= a))
            throw ConfigError("grid '" + text + "': need start <= stop and step > 0");
        const long n = std::lround(std::floor((b - a) / s + 1e-9));
        for (long i = 0; i <= n; ++i)
            out.push_back(a + static_cast<double>(i) * s);
        return out;
    }
    std::stringstream ss(text);
    for (std::string t; std::getline(ss, t, ',');)
        if (!t.empty())
            out.push_back(to_double(t));
    if (out.empty())
        throw ConfigError("grid is empty");
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace star_thz
