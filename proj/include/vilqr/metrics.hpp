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

#ifndef VILQR_METRICS_HPP
#define VILQR_METRICS_HPP

#include <stdexcept>
#include <vector>

#include "vilqr/ilqr.hpp"
#include "vilqr/manifold.hpp"
#include "vilqr/mpc.hpp"

namespace vilqr {

class MetricError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Linear interpolation of the oracle state at time t (t inside the oracle window).
Vector interpolateState(const ManifoldSolution& oracle, double t);

/**
 * @brief Mean over samples k = 0..K and all state components of
 * (x_k - x_ref(k dt))^2, the reference linearly interpolated.
 *
 * Throws MetricError if the oracle window ends before K dt.
 */
double mseToReference(const std::vector<Vector>& states, double dt, const ManifoldSolution& oracle);

double mseToReference(const ClosedLoopResult& closed, const ManifoldSolution& oracle);

/**
 * @brief Mean squared difference of two uniformly sampled state paths.
 *
 * Compared on the coarser grid over the common time window; the finer path
 * is linearly interpolated.
 */
double trajectoryMse(const std::vector<Vector>& Xa, double dt_a, const std::vector<Vector>& Xb,
                     double dt_b);

/**
 * @brief Continuous cost int x'Qs x + u'Ru dt of a zero-order-hold trajectory.
 *
 * Each interval is integrated from the trajectory's own node X[i] with
 * `substeps` RK4 steps and the trapezoidal rule, so an unstable open-loop
 * flow does not accumulate drift. Adds X_N' tail X_N when tail is given.
 */
double continuousCost(const ContinuousModel& model, const CostModel& cost, const Trajectory& traj,
                      int substeps, const Matrix* tail = nullptr);

} // namespace vilqr

#endif // VILQR_METRICS_HPP
