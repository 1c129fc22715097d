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

#include "vilqr/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace vilqr {

namespace {

// Linear interpolation on a uniform grid X sampled every dt.
Vector sampleUniform(const std::vector<Vector>& X, double dt, double t) {
    const double s = t / dt;
    auto i = static_cast<std::size_t>(std::floor(s));
    if (i + 1 >= X.size()) {
        return X.back();
    }
    const double w = s - static_cast<double>(i);
    return (1.0 - w) * X[i] + w * X[i + 1];
}

} // namespace

Vector interpolateState(const ManifoldSolution& oracle, double t) {
    const auto& tg = oracle.t_grid;
    if (tg.empty()) {
        throw MetricError("interpolateState: empty oracle");
    }
    if (t <= tg.front()) {
        return oracle.x_path.front();
    }
    if (t >= tg.back()) {
        return oracle.x_path.back();
    }
    const auto it = std::upper_bound(tg.begin(), tg.end(), t);
    const std::size_t hi = static_cast<std::size_t>(it - tg.begin());
    const std::size_t lo = hi - 1;
    const double w = (t - tg[lo]) / (tg[hi] - tg[lo]);
    return (1.0 - w) * oracle.x_path[lo] + w * oracle.x_path[hi];
}

double mseToReference(const std::vector<Vector>& states, double dt, const ManifoldSolution& oracle) {
    if (states.empty() || oracle.t_grid.empty()) {
        throw MetricError("mseToReference: closed loop and oracle must be non-empty");
    }
    const double t_last = dt * static_cast<double>(states.size() - 1);
    if (oracle.t_grid.back() < t_last - 1e-9) {
        throw MetricError("mseToReference: oracle window ends at " + std::to_string(oracle.t_grid.back()) +
                          " s, simulation needs " + std::to_string(t_last) + " s");
    }
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t k = 0; k < states.size(); ++k) {
        const Vector diff = states[k] - interpolateState(oracle, dt * static_cast<double>(k));
        sum += diff.squaredNorm();
        count += static_cast<std::size_t>(diff.size());
    }
    return sum / static_cast<double>(count);
}

double mseToReference(const ClosedLoopResult& closed, const ManifoldSolution& oracle) {
    return mseToReference(closed.states, closed.dt, oracle);
}

double trajectoryMse(const std::vector<Vector>& Xa, double dt_a, const std::vector<Vector>& Xb,
                     double dt_b) {
    if (Xa.empty() || Xb.empty() || !(dt_a > 0.0) || !(dt_b > 0.0)) {
        throw MetricError("trajectoryMse: need non-empty paths and positive steps");
    }
    const bool a_coarse = dt_a >= dt_b;
    const auto& coarse = a_coarse ? Xa : Xb;
    const auto& fine = a_coarse ? Xb : Xa;
    const double dc = a_coarse ? dt_a : dt_b;
    const double df = a_coarse ? dt_b : dt_a;
    const double window = std::min(dc * static_cast<double>(coarse.size() - 1),
                                   df * static_cast<double>(fine.size() - 1));

    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t k = 0; k < coarse.size(); ++k) {
        const double t = dc * static_cast<double>(k);
        if (t > window + 1e-9) {
            break;
        }
        const Vector diff = coarse[k] - sampleUniform(fine, df, t);
        sum += diff.squaredNorm();
        count += static_cast<std::size_t>(diff.size());
    }
    return sum / static_cast<double>(count);
}

double continuousCost(const ContinuousModel& model, const CostModel& cost, const Trajectory& traj,
                      int substeps, const Matrix* tail) {
    traj.validate();
    if (substeps < 1 || !(traj.dt > 0.0)) {
        throw MetricError("continuousCost: need substeps >= 1 and dt > 0");
    }
    IntegratorConfig one;
    one.substeps = 1;
    const double h = traj.dt / substeps;
    double total = 0.0;
    for (std::size_t i = 0; i < traj.U.size(); ++i) {
        Vector x = traj.X[i];
        const Vector& u = traj.U[i];
        double prev = cost.running(x, u);
        for (int s = 0; s < substeps; ++s) {
            x = integrateStep(model, x, u, h, one);
            const double next = cost.running(x, u);
            total += 0.5 * h * (prev + next);
            prev = next;
        }
    }
    if (tail) {
        total += traj.X.back().dot(*tail * traj.X.back());
    }
    return total;
}

} // namespace vilqr
