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

#ifndef VILQR_MPC_HPP
#define VILQR_MPC_HPP

#include <string>
#include <vector>

#include "vilqr/ilqr.hpp"

namespace vilqr {

struct MpcConfig {
    double dt = 0.02;            ///< control and discretization timestep [s]
    double horizon_time = 0.4;   ///< prediction interval T [s]
    int n_iter = 1;              ///< ILQR iterations per control step
    double sim_time = 2.0;       ///< closed-loop duration [s]
    Backend backend = Backend::Variational;
    int plant_substeps = 10;     ///< RK4 steps per dt for the simulated plant
    IntegratorConfig integrator; ///< controller-side integrator (variational backend)
    std::vector<double> alphas{1.0, 0.5, 0.25, 0.125, 0.0625};
    double mu = 0.0;

    int horizon() const;
    int simSteps() const;
    SolverSettings solverSettings() const;
    void validate() const;
};

struct StepRecord {
    std::vector<double> iter_times;  ///< one entry per ILQR iteration
    double predicted_cost = 0.0;
    bool failed = false;
    std::string message;
};

struct MpcStepResult {
    Vector u_applied;
    std::vector<Vector> U_next;
    StepRecord record;
};

struct ClosedLoopResult {
    double dt = 0.0;
    std::vector<Vector> states;                ///< K_sim + 1 entries unless terminated early
    std::vector<Vector> inputs;                ///< K_sim entries unless terminated early
    std::vector<std::vector<double>> iter_times;
    std::vector<double> costs;
    std::vector<bool> step_failed;
    bool terminated_early = false;
    std::string message;

    double meanIterTime() const;
    double maxIterTime() const;
};

/// Drops the first input and repeats the last one; length is preserved.
std::vector<Vector> shiftWarmStart(const std::vector<Vector>& U);

/**
 * @brief One receding-horizon update: n_iter ILQR iterations from x_k.
 *
 * On solver failure the first warm-start input is applied unmodified and
 * the step is flagged.
 */
MpcStepResult mpcStep(const ContinuousModel& model, const CostModel& cost, const Vector& x_k,
                      const std::vector<Vector>& U_warm, const MpcConfig& config);

/**
 * @brief Simulates the controller against the RK4 plant.
 *
 * The plant always integrates the continuous model with plant_substeps,
 * independent of the controller backend. Full state feedback, no delay.
 */
ClosedLoopResult simulateClosedLoop(const ContinuousModel& model, const CostModel& cost,
                                    const Vector& x0, const MpcConfig& config);

enum class TimingStatistic { Mean, Max };

struct FeasibilityRow {
    int n_iter = 0;
    bool feasible = false;
};

struct FeasibilityReport {
    double dt = 0.0;
    double iter_time = 0.0;  ///< mean (or max) single-iteration time [s]
    int n_iter_max = 0;      ///< largest n_iter with n_iter * iter_time <= dt
    std::vector<FeasibilityRow> rows;

    bool feasible(int n_iter) const;
};

/// Real-time feasibility: n_iter is feasible iff n_iter * iter_time <= dt.
FeasibilityReport feasibilityReport(double iter_time, double dt, int max_rows);

FeasibilityReport feasibilityReport(const ClosedLoopResult& result, double dt, int max_rows,
                                    TimingStatistic stat = TimingStatistic::Mean);

} // namespace vilqr

#endif // VILQR_MPC_HPP
