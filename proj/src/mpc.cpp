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

#include "vilqr/mpc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace vilqr {

int MpcConfig::horizon() const {
    return static_cast<int>(std::lround(horizon_time / dt));
}

int MpcConfig::simSteps() const {
    return static_cast<int>(std::lround(sim_time / dt));
}

SolverSettings MpcConfig::solverSettings() const {
    SolverSettings s;
    s.n_iter = n_iter;
    s.alphas = alphas;
    s.mu = mu;
    return s;
}

void MpcConfig::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw std::invalid_argument("MpcConfig: dt must be positive");
    }
    if (!(horizon_time > 0.0) || horizon() < 1) {
        throw std::invalid_argument("MpcConfig: horizon_time / dt must round to at least 1");
    }
    if (n_iter < 1) {
        throw std::invalid_argument("MpcConfig: n_iter must be >= 1");
    }
    if (!(sim_time >= 0.0) || !std::isfinite(sim_time)) {
        throw std::invalid_argument("MpcConfig: sim_time must be nonnegative");
    }
    if (plant_substeps < 1) {
        throw std::invalid_argument("MpcConfig: plant_substeps must be >= 1");
    }
    integrator.validate();
    solverSettings().validate();
}

double ClosedLoopResult::meanIterTime() const {
    double total = 0.0;
    std::size_t count = 0;
    for (const auto& step : iter_times) {
        total = std::accumulate(step.begin(), step.end(), total);
        count += step.size();
    }
    return count == 0 ? 0.0 : total / static_cast<double>(count);
}

double ClosedLoopResult::maxIterTime() const {
    double worst = 0.0;
    for (const auto& step : iter_times) {
        for (double t : step) {
            worst = std::max(worst, t);
        }
    }
    return worst;
}

std::vector<Vector> shiftWarmStart(const std::vector<Vector>& U) {
    if (U.size() <= 1) {
        return U;
    }
    std::vector<Vector> shifted(U.begin() + 1, U.end());
    shifted.push_back(U.back());
    return shifted;
}

MpcStepResult mpcStep(const ContinuousModel& model, const CostModel& cost, const Vector& x_k,
                      const std::vector<Vector>& U_warm, const MpcConfig& config) {
    config.validate();
    if (static_cast<int>(U_warm.size()) != config.horizon()) {
        throw std::invalid_argument("mpcStep: warm start length " + std::to_string(U_warm.size()) +
                                    " does not match horizon " + std::to_string(config.horizon()));
    }

    const Discretizer disc(model, config.backend, config.dt, config.integrator);
    MpcStepResult out;
    try {
        OptimizeResult opt = optimize(disc, cost, x_k, U_warm, config.solverSettings());
        out.record.iter_times = std::move(opt.iter_times);
        out.record.predicted_cost = opt.cost_history.back();
        out.u_applied = opt.trajectory.U.front();
        out.U_next = shiftWarmStart(opt.trajectory.U);
    } catch (const std::runtime_error& e) {
        // BackwardPassError or a blow-up in the initial rollout.
        out.record.failed = true;
        out.record.message = e.what();
        out.u_applied = U_warm.front();
        out.U_next = shiftWarmStart(U_warm);
    }
    return out;
}

ClosedLoopResult simulateClosedLoop(const ContinuousModel& model, const CostModel& cost,
                                    const Vector& x0, const MpcConfig& config) {
    config.validate();
    const int steps = config.simSteps();
    const int m = model.inputDim();
    IntegratorConfig plant;
    plant.substeps = config.plant_substeps;

    ClosedLoopResult result;
    result.dt = config.dt;
    result.states.reserve(steps + 1);
    result.inputs.reserve(steps);
    result.states.push_back(x0);

    std::vector<Vector> U(config.horizon(), Vector::Zero(m));
    for (int k = 0; k < steps; ++k) {
        MpcStepResult step = mpcStep(model, cost, result.states.back(), U, config);
        Vector next;
        try {
            next = integrateStep(model, result.states.back(), step.u_applied, config.dt, plant);
        } catch (const BlowUpError& e) {
            result.terminated_early = true;
            result.message = "plant blow-up at step " + std::to_string(k) + ": " + e.what();
            break;
        }
        result.inputs.push_back(step.u_applied);
        result.iter_times.push_back(std::move(step.record.iter_times));
        result.costs.push_back(step.record.predicted_cost);
        result.step_failed.push_back(step.record.failed);
        if (step.record.failed && result.message.empty()) {
            result.message = step.record.message;
        }
        result.states.push_back(std::move(next));
        U = std::move(step.U_next);
    }
    return result;
}

bool FeasibilityReport::feasible(int n_iter) const {
    return n_iter >= 1 && static_cast<double>(n_iter) * iter_time <= dt;
}

FeasibilityReport feasibilityReport(double iter_time, double dt, int max_rows) {
    if (!(iter_time >= 0.0) || !(dt > 0.0)) {
        throw std::invalid_argument("feasibilityReport: need iter_time >= 0 and dt > 0");
    }
    FeasibilityReport report;
    report.dt = dt;
    report.iter_time = iter_time;
    if (iter_time == 0.0) {
        report.n_iter_max = std::numeric_limits<int>::max();
    } else {
        // floor(dt / t), corrected so that it agrees with the n * t <= dt rule.
        int n = static_cast<int>(std::floor(dt / iter_time));
        while (n > 0 && static_cast<double>(n) * iter_time > dt) {
            --n;
        }
        while (static_cast<double>(n + 1) * iter_time <= dt) {
            ++n;
        }
        report.n_iter_max = n;
    }
    for (int n = 1; n <= max_rows; ++n) {
        report.rows.push_back({n, report.feasible(n)});
    }
    return report;
}

FeasibilityReport feasibilityReport(const ClosedLoopResult& result, double dt, int max_rows,
                                    TimingStatistic stat) {
    std::size_t count = 0;
    for (const auto& step : result.iter_times) {
        count += step.size();
    }
    if (count == 0) {
        throw std::invalid_argument("feasibilityReport: result has no recorded iteration times");
    }
    const double t = stat == TimingStatistic::Mean ? result.meanIterTime() : result.maxIterTime();
    return feasibilityReport(t, dt, max_rows);
}

} // namespace vilqr
