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

#ifndef VILQR_ILQR_HPP
#define VILQR_ILQR_HPP

#include <span>
#include <stdexcept>
#include <vector>

#include "vilqr/discretize.hpp"

namespace vilqr {

/**
 * @brief Quadratic running and terminal cost.
 *
 * l(x, u) = x' Qs x + u' R u,  l_f(x) = x' Qf x. No dt weighting: the
 * discrete objective is the plain sum of the integrand.
 */
struct CostModel {
    Matrix Qs;
    Matrix R;
    Matrix Qf;

    /// Symmetric PSD Qs, Qf and symmetric PD R; throws std::invalid_argument.
    void validate() const;

    double running(const Vector& x, const Vector& u) const;
    double terminal(const Vector& x) const;
};

struct Trajectory {
    std::vector<Vector> X;  ///< N + 1 states
    std::vector<Vector> U;  ///< N inputs
    double dt = 0.0;

    int horizon() const { return static_cast<int>(U.size()); }
    void validate() const;
};

struct CostDerivatives {
    Vector l_x;
    Vector l_u;
    Matrix l_xx;
    Matrix l_uu;
    Matrix l_ux;
};

struct ValueExpansion {
    Vector V_x;
    Matrix V_xx;
};

struct QExpansion {
    Vector Q_x;
    Vector Q_u;
    Matrix Q_xx;
    Matrix Q_uu;
    Matrix Q_ux;
};

struct GainSchedule {
    std::vector<Vector> d;  ///< feedforward
    std::vector<Matrix> K;  ///< feedback
};

struct SolverSettings {
    int n_iter = 1;
    std::vector<double> alphas{1.0, 0.5, 0.25, 0.125, 0.0625};
    double mu = 0.0;
    /// Adopt the best line-search candidate even when it increases the cost.
    bool always_adopt = false;

    void validate() const;
};

/// Q_uu + mu I was not positive definite at `step`.
class BackwardPassError : public std::runtime_error {
public:
    BackwardPassError(int step, const std::string& what);
    int step() const { return step_; }

private:
    int step_;
};

double evaluateCost(const Trajectory& traj, const CostModel& cost);

CostDerivatives costDerivatives(const Vector& x, const Vector& u, const CostModel& cost);

/// Boundary condition of the backward recursion: V_x = 2 Qf x_N, V_xx = 2 Qf.
ValueExpansion terminalExpansion(const Vector& x_N, const CostModel& cost);

struct BackwardPassResult {
    GainSchedule gains;
    std::vector<ValueExpansion> values;  ///< N + 1 entries, values[N] = terminal
    std::vector<QExpansion> q;           ///< N entries
};

/**
 * @brief Gauss-Newton backward recursion.
 *
 * Second-order dynamics terms are dropped. Q_uu is regularized with mu I and
 * factored by Cholesky; failure throws BackwardPassError with the step index.
 */
BackwardPassResult backwardPass(std::span<const StepLinearization> lins,
                                std::span<const CostDerivatives> derivs,
                                const ValueExpansion& terminal, double mu);

/// Simulates U from x0 with the discretizer's transition map.
Trajectory rollout(const Discretizer& disc, const Vector& x0, const std::vector<Vector>& U);

/**
 * @brief Closed-loop rollout u_i = u_bar_i + K_i (x_i - x_bar_i) + alpha d_i.
 *
 * Throws BlowUpError if the propagated state becomes non-finite.
 */
Trajectory forwardPass(const Discretizer& disc, const Trajectory& nominal, const GainSchedule& gains,
                       double alpha, const Vector& x0);

struct OptimizeResult {
    Trajectory trajectory;
    std::vector<double> cost_history;  ///< nominal cost after each iteration
    std::vector<double> iter_times;    ///< wall-clock seconds per iteration
    std::vector<double> alpha_history; ///< adopted alpha, 0 when the nominal was retained
    double initial_cost = 0.0;
};

/**
 * @brief Fixed-iteration ILQR trajectory optimization.
 *
 * Each iteration linearizes along the nominal, runs the backward pass,
 * evaluates one forward pass per line-search alpha and adopts the cheapest
 * (ties go to the larger alpha). Unless settings.always_adopt is set, a
 * nominal is kept when every candidate is more expensive or blew up.
 */
OptimizeResult optimize(const Discretizer& disc, const CostModel& cost, const Vector& x0,
                        const std::vector<Vector>& U_init, const SolverSettings& settings);

} // namespace vilqr

#endif // VILQR_ILQR_HPP
