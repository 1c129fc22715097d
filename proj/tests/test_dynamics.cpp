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

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "vilqr/linear_model.hpp"
#include "vilqr/pendulum.hpp"

using namespace vilqr;

namespace {

// Central differences of f_c with respect to x and u.
Matrix fdJacobianX(const ContinuousModel& m, const Vector& x, const Vector& u, double h = 1e-6) {
    Matrix J(m.stateDim(), m.stateDim());
    for (int i = 0; i < m.stateDim(); ++i) {
        Vector xp = x, xm = x;
        xp(i) += h;
        xm(i) -= h;
        J.col(i) = (m.dynamics(xp, u) - m.dynamics(xm, u)) / (2 * h);
    }
    return J;
}

Matrix fdJacobianU(const ContinuousModel& m, const Vector& x, const Vector& u, double h = 1e-6) {
    Matrix J(m.stateDim(), m.inputDim());
    for (int j = 0; j < m.inputDim(); ++j) {
        Vector up = u, um = u;
        up(j) += h;
        um(j) -= h;
        J.col(j) = (m.dynamics(x, up) - m.dynamics(x, um)) / (2 * h);
    }
    return J;
}

} // namespace

TEST(PendulumTest, UprightIsEquilibrium) {
    Pendulum p;
    const Vector f = p.dynamics(Vector::Zero(2), Vector::Zero(1));
    EXPECT_EQ(f(0), 0.0);
    EXPECT_EQ(f(1), 0.0);
}

TEST(PendulumTest, HorizontalPositionByHand) {
    PendulumParams prm;
    Pendulum p(prm);
    const Vector f = p.dynamics(Vector{{std::numbers::pi / 2, 0.0}}, Vector::Zero(1));
    // sin = 1, cos ~ 0: theta_ddot = MGL / (J + M L^2)
    const double expected = prm.M * prm.G * prm.L / (prm.J + prm.M * prm.L * prm.L);
    EXPECT_NEAR(f(0), 0.0, 1e-15);
    EXPECT_NEAR(f(1), expected, 1e-12);
}

TEST(PendulumTest, HangingInputDirection) {
    // At theta = -pi, cos = -1 so a positive cart acceleration gives +L/J.
    Pendulum p;
    const Vector f = p.dynamics(Vector{{-std::numbers::pi, 0.0}}, Vector::Constant(1, 1.0));
    EXPECT_NEAR(f(1), 0.3 / 0.03, 1e-9);
}

TEST(PendulumTest, DefaultLinearizationAtOrigin) {
    Pendulum p;
    const Matrix A = p.jacobianX(Vector::Zero(2), Vector::Zero(1));
    EXPECT_NEAR(A(0, 0), 0.0, 1e-15);
    EXPECT_NEAR(A(0, 1), 1.0, 1e-15);
    EXPECT_NEAR(A(1, 0), 98.0, 1e-9);  // MGL / J = 3G / L
    EXPECT_NEAR(A(1, 1), 0.0, 1e-15);
    const Matrix B = p.jacobianU(Vector::Zero(2), Vector::Zero(1));
    EXPECT_NEAR(B(1, 0), -10.0, 1e-12);
}

TEST(PendulumTest, JacobiansMatchFiniteDifferences) {
    Pendulum p;
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> angle(-4.0, 4.0), rate(-10.0, 10.0), input(-20.0, 20.0);
    for (int trial = 0; trial < 200; ++trial) {
        const Vector x{{angle(rng), rate(rng)}};
        const Vector u = Vector::Constant(1, input(rng));
        const Matrix Jx = p.jacobianX(x, u);
        const Matrix Ju = p.jacobianU(x, u);
        const double scale = 1.0 + Jx.cwiseAbs().maxCoeff();
        EXPECT_LT((Jx - fdJacobianX(p, x, u)).cwiseAbs().maxCoeff(), 1e-6 * scale);
        EXPECT_LT((Ju - fdJacobianU(p, x, u)).cwiseAbs().maxCoeff(), 1e-6 * scale);
    }
}

TEST(PendulumTest, ClosedFormsAgreeWithInputAffineSplit) {
    Pendulum p;
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> d(-3.0, 3.0);
    for (int trial = 0; trial < 50; ++trial) {
        const Vector x{{d(rng), d(rng)}};
        const Vector u = Vector::Constant(1, d(rng));
        const Vector split = p.drift(x) + p.inputMatrix(x) * u;
        EXPECT_LT((p.dynamics(x, u) - split).cwiseAbs().maxCoeff(), 1e-12);

        Matrix generic = p.driftJacobian(x);
        const auto dg = p.inputMatrixJacobian(x);
        generic += u(0) * dg[0];
        EXPECT_LT((p.jacobianX(x, u) - generic).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST(PendulumTest, InputMatrixJacobianMatchesFiniteDifferences) {
    Pendulum p;
    const Vector x{{0.7, -1.3}};
    const double h = 1e-6;
    const Matrix dg = p.inputMatrixJacobian(x)[0];
    for (int i = 0; i < 2; ++i) {
        Vector xp = x, xm = x;
        xp(i) += h;
        xm(i) -= h;
        const Vector col = (p.inputMatrix(xp) - p.inputMatrix(xm)).col(0) / (2 * h);
        EXPECT_NEAR((dg.col(i) - col).norm(), 0.0, 1e-7);
    }
}

TEST(PendulumTest, RejectsNonPositiveParameters) {
    PendulumParams prm;
    prm.J = 0.0;
    EXPECT_THROW(Pendulum{prm}, std::invalid_argument);
    prm = {};
    prm.L = -0.3;
    EXPECT_THROW(Pendulum{prm}, std::invalid_argument);
    prm = {};
    prm.M = std::nan("");
    EXPECT_THROW(Pendulum{prm}, std::invalid_argument);
}

TEST(LinearModelTest, MatchesMatrices) {
    Matrix A(2, 2);
    A << 0, 1, -2, -3;
    Matrix B(2, 1);
    B << 0, 1;
    LinearModel m(A, B);
    const Vector x{{1.0, 2.0}};
    const Vector u = Vector::Constant(1, 0.5);
    EXPECT_TRUE(m.dynamics(x, u).isApprox(A * x + B * u));
    EXPECT_TRUE(m.jacobianX(x, u).isApprox(A));
    EXPECT_TRUE(m.jacobianU(x, u).isApprox(B));
    EXPECT_EQ(m.inputMatrixJacobian(x)[0].norm(), 0.0);
}

TEST(LinearModelTest, RejectsMismatchedShapes) {
    EXPECT_THROW(LinearModel(Matrix::Zero(2, 3), Matrix::Zero(2, 1)), std::invalid_argument);
    EXPECT_THROW(LinearModel(Matrix::Zero(2, 2), Matrix::Zero(3, 1)), std::invalid_argument);
}
