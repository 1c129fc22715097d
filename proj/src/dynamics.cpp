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

#include "vilqr/dynamics.hpp"

namespace vilqr {

Vector InputAffineModel::dynamics(const Vector& x, const Vector& u) const {
    return drift(x) + inputMatrix(x) * u;
}

Matrix InputAffineModel::jacobianX(const Vector& x, const Vector& u) const {
    Matrix jac = driftJacobian(x);
    const std::vector<Matrix> dg = inputMatrixJacobian(x);
    for (int j = 0; j < u.size(); ++j) {
        jac += u(j) * dg[j];
    }
    return jac;
}

Matrix InputAffineModel::jacobianU(const Vector& x, const Vector&) const {
    return inputMatrix(x);
}

} // namespace vilqr
