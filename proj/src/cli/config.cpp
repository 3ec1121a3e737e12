/******************************************************************************
*                                                                             *
*  Copyright 2026 the nscascade authors                                       *
*                                                                             *
*  Licensed under the Apache License, Version 2.0 (the "License");            *
*  you may not use this file except in compliance with the License.           *
*  You may obtain a copy of the License at                                    *
*                                                                             *
*      http://www.apache.org/licenses/LICENSE-2.0                             *
*                                                                             *
*  Unless required by applicable law or agreed to in writing, software        *
*  distributed under the License is distributed on an "AS IS" BASIS,          *
*  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.   *
*  See the License for the specific language governing permissions and        *
*  limitations under the License.                                             *
*                                                                             *
******************************************************************************/

#include "nsc/cli/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "nsc/construction/principal.hpp"

namespace nsc::cli {

using construction::ConfigurationError;

namespace {

std::string trim(const std::string& s)
{
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::vector<std::string> split_ws(const std::string& s)
{
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

[[noreturn]] void bad(const std::string& origin, const std::string& what)
{
    throw ConfigurationError(origin + ": " + what);
}

double parse_real(const std::string& origin, const std::string& key,
                  const std::string& v)
{
    std::size_t pos = 0;
    double x = 0.0;
    try {
        x = std::stod(v, &pos);
    } catch (const std::exception&) {
        bad(origin, "key '" + key + "': cannot parse '" + v + "' as a real number");
    }
    if (pos != v.size())
        bad(origin, "key '" + key + "': trailing characters after '" + v + "'");
    if (!std::isfinite(x))
        bad(origin, "key '" + key + "': value must be finite");
    return x;
}

long parse_int(const std::string& origin, const std::string& key,
               const std::string& v)
{
    std::size_t pos = 0;
    long x = 0;
    try {
        x = std::stol(v, &pos);
    } catch (const std::exception&) {
        bad(origin, "key '" + key + "': cannot parse '" + v + "' as an integer");
    }
    if (pos != v.size())
        bad(origin, "key '" + key + "': trailing characters after '" + v + "'");
    return x;
}

} // namespace

double ExperimentConfig::alpha_resolved() const
{
    return alpha >= 0.0 ? alpha : construction::default_force_exponent(b, gamma);
}

double ExperimentConfig::beta_resolved() const
{
    return beta >= 0.0 ? beta : construction::default_force_exponent(b, gamma);
}

construction::TargetSpec ExperimentConfig::target() const
{
    construction::TargetSpec t;
    t.theta_star = theta_star;
    t.eta_star = eta_star;
    t.n_max = n_max;
    return t;
}

void ExperimentConfig::validate() const
{
    const auto reject = [](const std::string& what) {
        throw ConfigurationError("configuration rejected: " + what);
    };
    if (!(K > 0.0)) reject("horizon factor must satisfy K > 0");
    if (!(cfl > 0.0)) reject("step policy must satisfy cfl > 0");
    if (!(max_dt > 0.0)) reject("step policy must satisfy max_dt > 0");
    if (per_decade < 1) reject("sample cadence must satisfy per_decade >= 1");
    if (n_max < 0) reject("derivative count must satisfy n_max >= 0");
    if (alpha >= 0.0 && !(alpha <= 2.0))
        reject("diagnostic exponent must satisfy 0 <= alpha <= 2");
    if (beta >= 0.0 && !(beta <= 2.0))
        reject("diagnostic exponent must satisfy 0 <= beta <= 2");
    for (double t : snapshot_times)
        if (!(t >= 0.0) || !std::isfinite(t))
            reject("snapshot times must satisfy t >= 0");
    target().validate();
}

construction::ScaleTable ExperimentConfig::build_scales() const
{
    validate();
    return construction::build_scales(target(), b, gamma, A, k_star, epsilon0, n);
}

ExperimentConfig parse_config_text(const std::string& text, const std::string& origin)
{
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            bad(origin, "line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty())
            bad(origin, "line " + std::to_string(lineno) + ": empty key");
        if (kv.count(key))
            bad(origin, "duplicate key '" + key + "' (each key may appear once)");
        kv[key] = val;
    }

    if (!kv.count("schema"))
        bad(origin, "missing required key 'schema'");

    ExperimentConfig cfg;
    const auto take = [&](const char* key) -> std::string {
        auto it = kv.find(key);
        if (it == kv.end()) return {};
        std::string v = it->second;
        kv.erase(it);
        return v;
    };

    cfg.schema = static_cast<int>(parse_int(origin, "schema", take("schema")));
    if (cfg.schema != 1)
        bad(origin, "schema version " + std::to_string(cfg.schema) +
                        " is not supported (this build reads version 1)");

    if (std::string v = take("theta_star"); !v.empty()) {
        const auto parts = split_ws(v);
        if (parts.size() != 3)
            bad(origin, "key 'theta_star': expected 3 components");
        for (int i = 0; i < 3; ++i)
            cfg.theta_star[i] = parse_real(origin, "theta_star", parts[i]);
    }
    if (std::string v = take("eta_star"); !v.empty()) {
        const auto parts = split_ws(v);
        if (parts.size() != 3)
            bad(origin, "key 'eta_star': expected 3 integer components");
        for (int i = 0; i < 3; ++i)
            cfg.eta_star[i] = parse_int(origin, "eta_star", parts[i]);
    }
    if (std::string v = take("b"); !v.empty()) cfg.b = parse_real(origin, "b", v);
    if (std::string v = take("gamma"); !v.empty())
        cfg.gamma = parse_real(origin, "gamma", v);
    if (std::string v = take("A"); !v.empty()) cfg.A = parse_real(origin, "A", v);
    if (std::string v = take("epsilon0"); !v.empty())
        cfg.epsilon0 = parse_real(origin, "epsilon0", v);
    if (std::string v = take("k_star"); !v.empty()) {
        if (v == "auto")
            cfg.k_star = 0;
        else
            cfg.k_star = static_cast<int>(parse_int(origin, "k_star", v));
    }
    if (std::string v = take("n"); !v.empty())
        cfg.n = static_cast<int>(parse_int(origin, "n", v));
    if (std::string v = take("K"); !v.empty()) cfg.K = parse_real(origin, "K", v);
    if (std::string v = take("cfl"); !v.empty())
        cfg.cfl = parse_real(origin, "cfl", v);
    if (std::string v = take("max_dt"); !v.empty())
        cfg.max_dt = parse_real(origin, "max_dt", v);
    if (std::string v = take("alpha"); !v.empty())
        cfg.alpha = (v == "auto") ? -1.0 : parse_real(origin, "alpha", v);
    if (std::string v = take("beta"); !v.empty())
        cfg.beta = (v == "auto") ? -1.0 : parse_real(origin, "beta", v);
    if (std::string v = take("output"); !v.empty()) cfg.output = v;
    if (std::string v = take("per_decade"); !v.empty())
        cfg.per_decade = static_cast<int>(parse_int(origin, "per_decade", v));
    if (std::string v = take("snapshot_times"); !v.empty()) {
        for (const auto& tok : split_ws(v))
            cfg.snapshot_times.push_back(parse_real(origin, "snapshot_times", tok));
    }
    if (std::string v = take("n_max"); !v.empty())
        cfg.n_max = static_cast<int>(parse_int(origin, "n_max", v));

    if (!kv.empty())
        bad(origin, "unknown configuration key '" + kv.begin()->first + "'");

    cfg.validate();
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigurationError(path + ": cannot open configuration file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

std::string config_json(const ExperimentConfig& cfg)
{
    nlohmann::json j;
    j["schema_version"] = cfg.schema;
    j["theta_star"] = cfg.theta_star;
    j["eta_star"] = cfg.eta_star;
    j["b"] = cfg.b;
    j["gamma"] = cfg.gamma;
    j["A"] = cfg.A;
    j["epsilon0"] = cfg.epsilon0;
    j["k_star"] = cfg.k_star > 0 ? nlohmann::json(cfg.k_star) : nlohmann::json("auto");
    j["n"] = cfg.n;
    j["K"] = cfg.K;
    j["cfl"] = cfg.cfl;
    j["max_dt"] = cfg.max_dt;
    j["alpha"] = cfg.alpha_resolved();
    j["beta"] = cfg.beta_resolved();
    j["output"] = cfg.output;
    j["per_decade"] = cfg.per_decade;
    j["snapshot_times"] = cfg.snapshot_times;
    j["n_max"] = cfg.n_max;
    return j.dump(2);
}

} // namespace nsc::cli
