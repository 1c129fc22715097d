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

#ifndef VILQR_DYNAMICS_HPP
#define VILQR_DYNAMICS_HPP

#include <vector>

#include <Eigen/Dense>

namespace vilqr {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/**
 * @brief Continuous-time controlled system xdot = f_c(x, u).
 *
 * Implementations carry analytic Jacobians; the variational linearizer
 * evaluates them along the integrated flow. Instances are immutable after
 * construction and may be shared between solver threads.
 */
class ContinuousModel {
public:
    virtual ~ContinuousModel() = default;

    virtual int stateDim() const = 0;
    virtual int inputDim() const = 0;

    virtual Vector dynamics(const Vector& x, const Vector& u) const = 0;

    /// df_c/dx, n x n.
    virtual Matrix jacobianX(const Vector& x, const Vector& u) const = 0;

    /// df_c/du, n x m.
    virtual Matrix jacobianU(const Vector& x, const Vector& u) const = 0;
};

/**
 * @brief Input-affine system xdot = f(x) + g(x) u.
 *
 * The stable-manifold solver needs the drift and input matrix separately,
 * together with their state derivatives.
 */
class InputAffineModel : public ContinuousModel {
public:
    virtual Vector drift(const Vector& x) const = 0;
    virtual Matrix driftJacobian(const Vector& x) const = 0;

    /// g(x), n x m.
    virtual Matrix inputMatrix(const Vector& x) const = 0;

    /// Entry j is d g_j / dx (n x n) for input column j.
    virtual std::vector<Matrix> inputMatrixJacobian(const Vector& x) const = 0;

    Vector dynamics(const Vector& x, const Vector& u) const override;
    Matrix jacobianX(const Vector& x, const Vector& u) const override;
    Matrix jacobianU(const Vector& x, const Vector& u) const override;
};

} // namespace vilqr

#endif // VILQR_DYNAMICS_HPP
