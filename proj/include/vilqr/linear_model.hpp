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

#ifndef VILQR_LINEAR_MODEL_HPP
#define VILQR_LINEAR_MODEL_HPP

#include "vilqr/dynamics.hpp"

namespace vilqr {

/// LTI system xdot = A x + B u.
class LinearModel : public InputAffineModel {
public:
    LinearModel(Matrix A, Matrix B);

    int stateDim() const override { return static_cast<int>(A_.rows()); }
    int inputDim() const override { return static_cast<int>(B_.cols()); }

    Vector drift(const Vector& x) const override { return A_ * x; }
    Matrix driftJacobian(const Vector&) const override { return A_; }
    Matrix inputMatrix(const Vector&) const override { return B_; }
    std::vector<Matrix> inputMatrixJacobian(const Vector& x) const override;

    const Matrix& A() const { return A_; }
    const Matrix& B() const { return B_; }

private:
    Matrix A_;
    Matrix B_;
};

} // namespace vilqr

#endif // VILQR_LINEAR_MODEL_HPP
