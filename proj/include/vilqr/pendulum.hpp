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

#ifndef VILQR_PENDULUM_HPP
#define VILQR_PENDULUM_HPP

#include "vilqr/dynamics.hpp"

namespace vilqr {

/// Physical parameters of the pendulum on a mass-less cart.
struct PendulumParams {
    double M = 1.0;              ///< Pendulum mass [kg]
    double G = 9.8;              ///< Gravitational acceleration [m/s^2]
    double L = 0.3;              ///< Pivot to center of gravity [m]
    double J = 1.0 * 0.3 * 0.3 / 3.0;  ///< Moment of inertia [kg m^2]

    /// Throws std::invalid_argument unless all four are strictly positive and finite.
    void validate() const;
};

/**
 * @brief Inverted pendulum driven by cart acceleration.
 *
 * State: [theta, theta_dot], theta = 0 upright, theta = -pi hanging.
 * Control: [cart acceleration].
 *
 *   theta_ddot = (M G L sin x1 - M L^2 x2^2 sin x1 cos x1 - L cos x1 u)
 *                / (J + M L^2 sin^2 x1)
 */
class Pendulum : public InputAffineModel {
public:
    explicit Pendulum(const PendulumParams& params = {});

    int stateDim() const override { return 2; }
    int inputDim() const override { return 1; }

    Vector drift(const Vector& x) const override;
    Matrix driftJacobian(const Vector& x) const override;
    Matrix inputMatrix(const Vector& x) const override;
    std::vector<Matrix> inputMatrixJacobian(const Vector& x) const override;

    // Closed forms; cheaper than the generic input-affine assembly.
    Vector dynamics(const Vector& x, const Vector& u) const override;
    Matrix jacobianX(const Vector& x, const Vector& u) const override;
    Matrix jacobianU(const Vector& x, const Vector& u) const override;

    const PendulumParams& params() const { return params_; }

private:
    PendulumParams params_;
};

} // namespace vilqr

#endif // VILQR_PENDULUM_HPP
