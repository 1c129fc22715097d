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

#include "vilqr/pendulum.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace vilqr {

void PendulumParams::validate() const {
    auto check = [](double v, const char* name) {
        if (!std::isfinite(v) || v <= 0.0) {
            throw std::invalid_argument(std::string("PendulumParams: ") + name +
                                        " must be strictly positive, got " + std::to_string(v));
        }
    };
    check(M, "M");
    check(G, "G");
    check(L, "L");
    check(J, "J");
}

Pendulum::Pendulum(const PendulumParams& params) : params_(params) {
    params_.validate();
}

// Shorthand used below:
//   a = M G L, b = M L^2, D = J + b sin^2 x1,
//   theta_ddot = (a s - b x2^2 s c - L c u) / D.

Vector Pendulum::dynamics(const Vector& x, const Vector& u) const {
    const auto& p = params_;
    const double s = std::sin(x(0));
    const double c = std::cos(x(0));
    const double a = p.M * p.G * p.L;
    const double b = p.M * p.L * p.L;
    const double den = p.J + b * s * s;
    Vector xdot(2);
    xdot(0) = x(1);
    xdot(1) = (a * s - b * x(1) * x(1) * s * c - p.L * c * u(0)) / den;
    return xdot;
}

Matrix Pendulum::jacobianX(const Vector& x, const Vector& u) const {
    const auto& p = params_;
    const double s = std::sin(x(0));
    const double c = std::cos(x(0));
    const double a = p.M * p.G * p.L;
    const double b = p.M * p.L * p.L;
    const double den = p.J + b * s * s;
    const double num = a * s - b * x(1) * x(1) * s * c - p.L * c * u(0);
    const double dnum = a * c - b * x(1) * x(1) * (c * c - s * s) + p.L * s * u(0);
    const double dden = 2.0 * b * s * c;

    Matrix jac(2, 2);
    jac(0, 0) = 0.0;
    jac(0, 1) = 1.0;
    jac(1, 0) = (dnum * den - num * dden) / (den * den);
    jac(1, 1) = -2.0 * b * x(1) * s * c / den;
    return jac;
}

Matrix Pendulum::jacobianU(const Vector& x, const Vector&) const {
    return inputMatrix(x);
}

Vector Pendulum::drift(const Vector& x) const {
    return dynamics(x, Vector::Zero(1));
}

Matrix Pendulum::driftJacobian(const Vector& x) const {
    return jacobianX(x, Vector::Zero(1));
}

Matrix Pendulum::inputMatrix(const Vector& x) const {
    const auto& p = params_;
    const double s = std::sin(x(0));
    const double c = std::cos(x(0));
    const double den = p.J + p.M * p.L * p.L * s * s;
    Matrix g(2, 1);
    g(0, 0) = 0.0;
    g(1, 0) = -p.L * c / den;
    return g;
}

std::vector<Matrix> Pendulum::inputMatrixJacobian(const Vector& x) const {
    const auto& p = params_;
    const double s = std::sin(x(0));
    const double c = std::cos(x(0));
    const double b = p.M * p.L * p.L;
    const double den = p.J + b * s * s;
    // d/dx1 (-L c / D) = L s (D + 2 b c^2) / D^2
    Matrix dg = Matrix::Zero(2, 2);
    dg(1, 0) = p.L * s * (den + 2.0 * b * c * c) / (den * den);
    return {dg};
}

} // namespace vilqr
