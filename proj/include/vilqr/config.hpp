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

#ifndef VILQR_CONFIG_HPP
#define VILQR_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "vilqr/discretize.hpp"
#include "vilqr/ilqr.hpp"
#include "vilqr/manifold.hpp"
#include "vilqr/mpc.hpp"
#include "vilqr/pendulum.hpp"

namespace vilqr {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * @brief Everything an experiment run depends on. Fully deterministic.
 *
 * Text form is flat key=value with dotted sections, '#' comments:
 *
 *   pendulum.M = 1.0
 *   cost.Qs = 2, 0.01
 *   problem.x0 = -pi, 0
 *   mpc.dt_list = 0.01, 0.02, 0.03, 0.04, 0.05
 *
 * Unknown keys are rejected. pendulum.J defaults to M L^2 / 3 unless given.
 */
struct ExperimentConfig {
    PendulumParams pendulum;
    bool inertia_given = false;

    std::vector<double> Qs_diag{2.0, 0.01};
    double R = 2.0;
    std::vector<double> Qf_diag{2.0, 0.01};
    std::vector<double> x0{-3.14159265358979323846, 0.0};

    std::vector<Backend> backends{Backend::Euler, Backend::Variational};
    int substeps = 4;
    double mu = 0.0;
    std::vector<double> alphas{1.0, 0.5, 0.25, 0.125, 0.0625};

    std::vector<double> trajopt_dt_list{0.01, 0.02, 0.03, 0.04, 0.05};
    double trajopt_horizon_time = 0.8;
    int trajopt_n_iter = 200;

    std::vector<double> mpc_dt_list{0.01, 0.02, 0.03, 0.04, 0.05};
    std::vector<int> mpc_n_iter_list{1, 2, 3, 4, 5, 6, 7, 8};
    double mpc_horizon_time = 0.4;
    double sim_time = 2.0;
    int plant_substeps = 10;

    double oracle_t_end = 6.0;
    int oracle_grid_points = 2000;
    double oracle_seed_radius = 0.05;
    double oracle_backward_step = 2.5e-4;
    double oracle_export_step = 1e-3;

    int workers = 1;

    void validate() const;

    CostModel costModel() const;
    IntegratorConfig integrator() const;
    SolverSettings solverSettings(int n_iter) const;
    MpcConfig mpcConfig(double dt, int n_iter, Backend backend) const;
    MatchSettings matchSettings() const;
    Vector initialState() const;

    /// Canonical key=value pairs; every key that influences results.
    std::map<std::string, std::string> entries() const;

    /// FNV-1a 64 over the canonical entries, as 16 hex digits.
    std::string hash() const;

    /// Hash over the entries the oracle depends on (model, Qs, R, oracle.*).
    std::string oracleHash() const;
};

ExperimentConfig parseConfig(std::istream& in, const std::string& source = "<stream>");
ExperimentConfig loadConfig(const std::filesystem::path& path);

/// Applies one key=value assignment; throws ConfigError on unknown keys or bad values.
void applySetting(ExperimentConfig& config, const std::string& key, const std::string& value);

std::uint64_t fnv1a64(const std::string& data);

} // namespace vilqr

#endif // VILQR_CONFIG_HPP
