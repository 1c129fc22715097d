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

#include "vilqr/linear_model.hpp"

#include <stdexcept>

namespace vilqr {

LinearModel::LinearModel(Matrix A, Matrix B) : A_(std::move(A)), B_(std::move(B)) {
    if (A_.rows() == 0 || A_.rows() != A_.cols()) {
        throw std::invalid_argument("LinearModel: A must be square and non-empty");
    }
    if (B_.rows() != A_.rows() || B_.cols() == 0) {
        throw std::invalid_argument("LinearModel: B must have as many rows as A and at least one column");
    }
}

std::vector<Matrix> LinearModel::inputMatrixJacobian(const Vector& x) const {
    return std::vector<Matrix>(B_.cols(), Matrix::Zero(x.size(), x.size()));
}

} // namespace vilqr
