/*
 Copyright 2026 The vilqr Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#include "vilqr/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>

namespace vilqr {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> splitList(const std::string& value) {
    std::vector<std::string> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(trim(item));
    }
    return out;
}

double parseNumber(const std::string& key, const std::string& token) {
    // Accepts "pi", "-pi" and plain decimals.
    if (token == "pi") {
        return std::numbers::pi;
    }
    if (token == "-pi") {
        return -std::numbers::pi;
    }
    if (token.empty()) {
        throw ConfigError(key + ": empty value");
    }
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(token.c_str(), &end);
    if (end != token.c_str() + token.size() || errno == ERANGE || !std::isfinite(v)) {
        throw ConfigError(key + ": '" + token + "' is not a finite number");
    }
    return v;
}

int parseInt(const std::string& key, const std::string& token) {
    const double v = parseNumber(key, token);
    if (v != std::floor(v) || std::abs(v) > 1e9) {
        throw ConfigError(key + ": '" + token + "' is not an integer");
    }
    return static_cast<int>(v);
}

std::vector<double> parseDoubles(const std::string& key, const std::string& value) {
    std::vector<double> out;
    for (const auto& t : splitList(value)) {
        out.push_back(parseNumber(key, t));
    }
    return out;
}

std::vector<int> parseInts(const std::string& key, const std::string& value) {
    std::vector<int> out;
    for (const auto& t : splitList(value)) {
        out.push_back(parseInt(key, t));
    }
    return out;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

template <typename T>
std::string fmtList(const std::vector<T>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) {
            out += ",";
        }
        if constexpr (std::is_same_v<T, double>) {
            out += fmt(values[i]);
        } else if constexpr (std::is_same_v<T, Backend>) {
            out += std::string(toString(values[i]));
        } else {
            out += std::to_string(values[i]);
        }
    }
    return out;
}

using Setter = std::function<void(ExperimentConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"pendulum.M", [](auto& c, auto& k, auto& v) { c.pendulum.M = parseNumber(k, v); }},
        {"pendulum.G", [](auto& c, auto& k, auto& v) { c.pendulum.G = parseNumber(k, v); }},
        {"pendulum.L", [](auto& c, auto& k, auto& v) { c.pendulum.L = parseNumber(k, v); }},
        {"pendulum.J",
         [](auto& c, auto& k, auto& v) {
             c.pendulum.J = parseNumber(k, v);
             c.inertia_given = true;
         }},
        {"cost.Qs", [](auto& c, auto& k, auto& v) { c.Qs_diag = parseDoubles(k, v); }},
        {"cost.R", [](auto& c, auto& k, auto& v) { c.R = parseNumber(k, v); }},
        {"cost.Qf", [](auto& c, auto& k, auto& v) { c.Qf_diag = parseDoubles(k, v); }},
        {"problem.x0", [](auto& c, auto& k, auto& v) { c.x0 = parseDoubles(k, v); }},
        {"run.backends",
         [](auto& c, auto& k, auto& v) {
             c.backends.clear();
             for (const auto& t : splitList(v)) {
                 try {
                     c.backends.push_back(parseBackend(t));
                 } catch (const std::invalid_argument&) {
                     throw ConfigError(k + ": unknown backend '" + t + "'");
                 }
             }
         }},
        {"run.workers", [](auto& c, auto& k, auto& v) { c.workers = parseInt(k, v); }},
        {"solver.substeps", [](auto& c, auto& k, auto& v) { c.substeps = parseInt(k, v); }},
        {"solver.mu", [](auto& c, auto& k, auto& v) { c.mu = parseNumber(k, v); }},
        {"solver.alphas", [](auto& c, auto& k, auto& v) { c.alphas = parseDoubles(k, v); }},
        {"trajopt.dt_list", [](auto& c, auto& k, auto& v) { c.trajopt_dt_list = parseDoubles(k, v); }},
        {"trajopt.horizon_time",
         [](auto& c, auto& k, auto& v) { c.trajopt_horizon_time = parseNumber(k, v); }},
        {"trajopt.n_iter", [](auto& c, auto& k, auto& v) { c.trajopt_n_iter = parseInt(k, v); }},
        {"mpc.dt_list", [](auto& c, auto& k, auto& v) { c.mpc_dt_list = parseDoubles(k, v); }},
        {"mpc.n_iter_list", [](auto& c, auto& k, auto& v) { c.mpc_n_iter_list = parseInts(k, v); }},
        {"mpc.horizon_time", [](auto& c, auto& k, auto& v) { c.mpc_horizon_time = parseNumber(k, v); }},
        {"mpc.sim_time", [](auto& c, auto& k, auto& v) { c.sim_time = parseNumber(k, v); }},
        {"mpc.plant_substeps", [](auto& c, auto& k, auto& v) { c.plant_substeps = parseInt(k, v); }},
        {"oracle.t_end", [](auto& c, auto& k, auto& v) { c.oracle_t_end = parseNumber(k, v); }},
        {"oracle.grid_points", [](auto& c, auto& k, auto& v) { c.oracle_grid_points = parseInt(k, v); }},
        {"oracle.seed_radius", [](auto& c, auto& k, auto& v) { c.oracle_seed_radius = parseNumber(k, v); }},
        {"oracle.backward_step",
         [](auto& c, auto& k, auto& v) { c.oracle_backward_step = parseNumber(k, v); }},
        {"oracle.export_step", [](auto& c, auto& k, auto& v) { c.oracle_export_step = parseNumber(k, v); }},
    };
    return table;
}

void requirePositive(const std::vector<double>& values, const std::string& key) {
    if (values.empty()) {
        throw ConfigError(key + ": list must be non-empty");
    }
    for (double v : values) {
        if (!(v > 0.0)) {
            throw ConfigError(key + ": entries must be positive");
        }
    }
}

std::string hex64(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string joinEntries(const std::map<std::string, std::string>& entries) {
    std::string text;
    for (const auto& [k, v] : entries) {
        text += k + "=" + v + "\n";
    }
    return text;
}

} // namespace

void applySetting(ExperimentConfig& config, const std::string& key, const std::string& value) {
    const auto& table = setters();
    const auto it = table.find(key);
    if (it == table.end()) {
        throw ConfigError("unknown key '" + key + "'");
    }
    it->second(config, key, value);
    if (!config.inertia_given && (key == "pendulum.M" || key == "pendulum.L")) {
        config.pendulum.J = config.pendulum.M * config.pendulum.L * config.pendulum.L / 3.0;
    }
}

ExperimentConfig parseConfig(std::istream& in, const std::string& source) {
    ExperimentConfig config;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(source + ":" + std::to_string(lineno) + ": expected key = value");
        }
        try {
            applySetting(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        } catch (const ConfigError& e) {
            throw ConfigError(source + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    config.validate();
    return config;
}

ExperimentConfig loadConfig(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file " + path.string());
    }
    return parseConfig(in, path.string());
}

void ExperimentConfig::validate() const {
    try {
        pendulum.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (x0.size() != 2) {
        throw ConfigError("problem.x0: expected 2 entries for the pendulum state");
    }
    if (Qs_diag.size() != 2 || Qf_diag.size() != 2) {
        throw ConfigError("cost.Qs / cost.Qf: expected 2 diagonal entries");
    }
    for (double q : Qs_diag) {
        if (!(q >= 0.0)) {
            throw ConfigError("cost.Qs: entries must be nonnegative");
        }
    }
    for (double q : Qf_diag) {
        if (!(q >= 0.0)) {
            throw ConfigError("cost.Qf: entries must be nonnegative");
        }
    }
    if (!(R > 0.0)) {
        throw ConfigError("cost.R: must be positive");
    }
    if (backends.empty()) {
        throw ConfigError("run.backends: list must be non-empty");
    }
    if (workers < 1) {
        throw ConfigError("run.workers: must be >= 1");
    }
    if (substeps < 1 || plant_substeps < 1) {
        throw ConfigError("solver.substeps / mpc.plant_substeps: must be >= 1");
    }
    try {
        solverSettings(1).validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    requirePositive(trajopt_dt_list, "trajopt.dt_list");
    requirePositive(mpc_dt_list, "mpc.dt_list");
    if (mpc_n_iter_list.empty()) {
        throw ConfigError("mpc.n_iter_list: list must be non-empty");
    }
    for (int n : mpc_n_iter_list) {
        if (n < 1) {
            throw ConfigError("mpc.n_iter_list: entries must be >= 1");
        }
    }
    if (trajopt_n_iter < 1) {
        throw ConfigError("trajopt.n_iter: must be >= 1");
    }
    for (double dt : trajopt_dt_list) {
        if (std::lround(trajopt_horizon_time / dt) < 1) {
            throw ConfigError("trajopt.horizon_time: shorter than one step");
        }
    }
    for (double dt : mpc_dt_list) {
        if (std::lround(mpc_horizon_time / dt) < 1) {
            throw ConfigError("mpc.horizon_time: shorter than one step");
        }
    }
    if (!(sim_time > 0.0)) {
        throw ConfigError("mpc.sim_time: must be positive");
    }
    if (!(oracle_t_end > 0.0) || oracle_grid_points < 2 || !(oracle_seed_radius > 0.0) ||
        !(oracle_backward_step > 0.0) || !(oracle_export_step > 0.0)) {
        throw ConfigError("oracle.*: settings must be positive (grid_points >= 2)");
    }
}

CostModel ExperimentConfig::costModel() const {
    CostModel c;
    c.Qs = Eigen::Map<const Vector>(Qs_diag.data(), 2).asDiagonal();
    c.Qf = Eigen::Map<const Vector>(Qf_diag.data(), 2).asDiagonal();
    c.R = Matrix::Constant(1, 1, R);
    return c;
}

IntegratorConfig ExperimentConfig::integrator() const {
    IntegratorConfig cfg;
    cfg.substeps = substeps;
    return cfg;
}

SolverSettings ExperimentConfig::solverSettings(int n_iter) const {
    SolverSettings s;
    s.n_iter = n_iter;
    s.alphas = alphas;
    s.mu = mu;
    return s;
}

MpcConfig ExperimentConfig::mpcConfig(double dt, int n_iter, Backend backend) const {
    MpcConfig m;
    m.dt = dt;
    m.horizon_time = mpc_horizon_time;
    m.n_iter = n_iter;
    m.sim_time = sim_time;
    m.backend = backend;
    m.plant_substeps = plant_substeps;
    m.integrator = integrator();
    m.alphas = alphas;
    m.mu = mu;
    return m;
}

MatchSettings ExperimentConfig::matchSettings() const {
    MatchSettings s;
    s.picard.t_end = oracle_t_end;
    s.picard.grid_points = oracle_grid_points;
    s.seed_radius = oracle_seed_radius;
    s.backward_step = oracle_backward_step;
    return s;
}

Vector ExperimentConfig::initialState() const {
    return Eigen::Map<const Vector>(x0.data(), static_cast<Eigen::Index>(x0.size()));
}

std::map<std::string, std::string> ExperimentConfig::entries() const {
    return {
        {"pendulum.M", fmt(pendulum.M)},
        {"pendulum.G", fmt(pendulum.G)},
        {"pendulum.L", fmt(pendulum.L)},
        {"pendulum.J", fmt(pendulum.J)},
        {"cost.Qs", fmtList(Qs_diag)},
        {"cost.R", fmt(R)},
        {"cost.Qf", fmtList(Qf_diag)},
        {"problem.x0", fmtList(x0)},
        {"run.backends", fmtList(backends)},
        {"solver.substeps", std::to_string(substeps)},
        {"solver.mu", fmt(mu)},
        {"solver.alphas", fmtList(alphas)},
        {"trajopt.dt_list", fmtList(trajopt_dt_list)},
        {"trajopt.horizon_time", fmt(trajopt_horizon_time)},
        {"trajopt.n_iter", std::to_string(trajopt_n_iter)},
        {"mpc.dt_list", fmtList(mpc_dt_list)},
        {"mpc.n_iter_list", fmtList(mpc_n_iter_list)},
        {"mpc.horizon_time", fmt(mpc_horizon_time)},
        {"mpc.sim_time", fmt(sim_time)},
        {"mpc.plant_substeps", std::to_string(plant_substeps)},
        {"oracle.t_end", fmt(oracle_t_end)},
        {"oracle.grid_points", std::to_string(oracle_grid_points)},
        {"oracle.seed_radius", fmt(oracle_seed_radius)},
        {"oracle.backward_step", fmt(oracle_backward_step)},
        {"oracle.export_step", fmt(oracle_export_step)},
    };
}

std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string ExperimentConfig::hash() const {
    return hex64(fnv1a64(joinEntries(entries())));
}

std::string ExperimentConfig::oracleHash() const {
    auto all = entries();
    std::map<std::string, std::string> subset;
    for (const auto& [k, v] : all) {
        if (k.rfind("pendulum.", 0) == 0 || k.rfind("oracle.", 0) == 0 || k == "cost.Qs" ||
            k == "cost.R" || k == "problem.x0") {
            subset[k] = v;
        }
    }
    return hex64(fnv1a64(joinEntries(subset)));
}

} // namespace vilqr
