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

#include <gtest/gtest.h>

#include "vilqr/ilqr.hpp"
#include "vilqr/linear_model.hpp"
#include "vilqr/pendulum.hpp"

using namespace vilqr;

namespace {

CostModel pendulumCost() {
    CostModel c;
    c.Qs = Vector{{2.0, 0.01}}.asDiagonal();
    c.R = Matrix::Constant(1, 1, 2.0);
    c.Qf = c.Qs;
    return c;
}

LinearModel doubleIntegrator() {
    Matrix A(2, 2);
    A << 0, 1, 0, 0;
    Matrix B(2, 1);
    B << 0, 1;
    return LinearModel(A, B);
}

struct RiccatiOracle {
    std::vector<Matrix> K;
    std::vector<Matrix> P;
};

// Finite-horizon discrete LQR for sum x'Qx + u'Ru + x_N'Qf x_N.
RiccatiOracle riccatiRecursion(const Matrix& A, const Matrix& B, const Matrix& Q, const Matrix& R,
                               const Matrix& Qf, int N) {
    RiccatiOracle o;
    o.K.resize(N);
    o.P.resize(N + 1);
    o.P[N] = Qf;
    for (int i = N - 1; i >= 0; --i) {
        const Matrix& P = o.P[i + 1];
        const Matrix S = R + B.transpose() * P * B;
        o.K[i] = -S.ldlt().solve(B.transpose() * P * A);
        o.P[i] = Q + A.transpose() * P * A + A.transpose() * P * B * o.K[i];
    }
    return o;
}

} // namespace

TEST(CostTest, HandEvaluation) {
    CostModel c = pendulumCost();
    Trajectory t;
    t.X = {Vector{{1.0, 2.0}}, Vector{{0.5, -1.0}}};
    t.U = {Vector::Constant(1, 3.0)};
    // 2*1 + 0.01*4 + 2*9 + terminal 2*0.25 + 0.01*1
    EXPECT_NEAR(evaluateCost(t, c), 2.0 + 0.04 + 18.0 + 0.5 + 0.01, 1e-12);
}

TEST(CostTest, DerivativesMatchFiniteDifferences) {
    CostModel c = pendulumCost();
    const Vector x{{0.3, -0.7}};
    const Vector u = Vector::Constant(1, 1.1);
    const CostDerivatives d = costDerivatives(x, u, c);
    const double h = 1e-6;
    for (int i = 0; i < 2; ++i) {
        Vector xp = x, xm = x;
        xp(i) += h;
        xm(i) -= h;
        EXPECT_NEAR(d.l_x(i), (c.running(xp, u) - c.running(xm, u)) / (2 * h), 1e-6);
    }
    EXPECT_NEAR(d.l_u(0), (c.running(x, u + Vector::Constant(1, h)) - c.running(x, u - Vector::Constant(1, h))) / (2 * h), 1e-6);
    EXPECT_TRUE(d.l_xx.isApprox(2.0 * c.Qs));
    EXPECT_TRUE(d.l_uu.isApprox(2.0 * c.R));
    EXPECT_TRUE(d.l_ux.isZero());
}

TEST(CostTest, ValidationRejectsIndefiniteWeights) {
    CostModel c = pendulumCost();
    c.Qs(0, 0) = -1.0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = pendulumCost();
    c.R(0, 0) = 0.0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = pendulumCost();
    c.Qf(0, 1) = 0.5;  // not symmetric
    EXPECT_THROW(c.validate(), std::invalid_argument);
    EXPECT_NO_THROW(pendulumCost().validate());
}

TEST(IlqrTest, LinearQuadraticConvergesInOneStep) {
    const LinearModel m = doubleIntegrator();
    const double dt = 0.1;
    const int N = 30;
    const Discretizer disc(m, Backend::Variational, dt);
    CostModel c;
    c.Qs = Vector{{1.0, 0.1}}.asDiagonal();
    c.R = Matrix::Constant(1, 1, 0.5);
    c.Qf = Vector{{10.0, 1.0}}.asDiagonal();

    Matrix Ad(2, 2);
    Ad << 1, dt, 0, 1;
    Matrix Bd(2, 1);
    Bd << dt * dt / 2, dt;
    const RiccatiOracle oracle = riccatiRecursion(Ad, Bd, c.Qs, c.R, c.Qf, N);

    const Vector x0{{1.0, -0.5}};
    SolverSettings s;
    s.n_iter = 2;
    const OptimizeResult r = optimize(disc, c, x0, std::vector<Vector>(N, Vector::Zero(1)), s);

    EXPECT_EQ(r.alpha_history[0], 1.0);
    EXPECT_NEAR(r.cost_history[0], x0.dot(oracle.P[0] * x0), 1e-9);
    EXPECT_NEAR(r.cost_history[1], r.cost_history[0], 1e-9);
    for (int i = 0; i < N; ++i) {
        const Vector u_opt = oracle.K[i] * r.trajectory.X[i];
        EXPECT_NEAR(r.trajectory.U[i](0), u_opt(0), 1e-9);
    }

    // Gains of a backward pass on the converged trajectory.
    std::vector<StepLinearization> lins;
    std::vector<CostDerivatives> derivs;
    for (int i = 0; i < N; ++i) {
        lins.push_back(disc.linearize(r.trajectory.X[i], r.trajectory.U[i]));
        derivs.push_back(costDerivatives(r.trajectory.X[i], r.trajectory.U[i], c));
    }
    const BackwardPassResult bp = backwardPass(lins, derivs, terminalExpansion(r.trajectory.X.back(), c), 0.0);
    for (int i = 0; i < N; ++i) {
        EXPECT_LT((bp.gains.K[i] - oracle.K[i]).cwiseAbs().maxCoeff(), 1e-9);
        EXPECT_LT(bp.gains.d[i].norm(), 1e-9);
        EXPECT_LT((bp.values[i].V_xx - 2.0 * oracle.P[i]).cwiseAbs().maxCoeff(), 1e-8);
    }
}

TEST(IlqrTest, GradientMatchesFiniteDifferencesOfRolloutCost) {
    // The linearizations give the exact shooting gradient through the adjoint
    // recursion p_i = l_x + f_x' p_{i+1}. Q_u equals it only at the last step,
    // earlier steps see the value of the minimized tail instead.
    Pendulum p;
    const CostModel c = pendulumCost();
    const Vector x0{{-2.0, 0.3}};
    const int N = 12;
    std::vector<Vector> U;
    for (int i = 0; i < N; ++i) {
        U.push_back(Vector::Constant(1, std::sin(0.7 * i)));
    }
    for (Backend b : {Backend::Euler, Backend::Variational}) {
        const Discretizer disc(p, b, 0.04);
        const Trajectory nom = rollout(disc, x0, U);
        std::vector<StepLinearization> lins;
        std::vector<CostDerivatives> derivs;
        for (int i = 0; i < N; ++i) {
            lins.push_back(disc.linearize(nom.X[i], nom.U[i]));
            derivs.push_back(costDerivatives(nom.X[i], nom.U[i], c));
        }
        const BackwardPassResult bp = backwardPass(lins, derivs, terminalExpansion(nom.X.back(), c), 0.0);
        std::vector<double> grad(N);
        Vector adj = 2.0 * c.Qf * nom.X.back();
        for (int i = N - 1; i >= 0; --i) {
            grad[i] = (derivs[i].l_u + lins[i].f_u.transpose() * adj)(0);
            adj = derivs[i].l_x + lins[i].f_x.transpose() * adj;
        }
        const double h = 1e-6;
        for (int i : {0, 5, N - 1}) {
            auto Up = U, Um = U;
            Up[i](0) += h;
            Um[i](0) -= h;
            const double fd = (evaluateCost(rollout(disc, x0, Up), c) - evaluateCost(rollout(disc, x0, Um), c)) / (2 * h);
            EXPECT_NEAR(grad[i], fd, 1e-5 * (1.0 + std::abs(fd))) << toString(b) << " step " << i;
        }
        EXPECT_NEAR(bp.q[N - 1].Q_u(0), grad[N - 1], 1e-12 * (1.0 + std::abs(grad[N - 1])));
    }
}

TEST(IlqrTest, CostNeverIncreasesWithRetention) {
    Pendulum p;
    const CostModel c = pendulumCost();
    for (Backend b : {Backend::Euler, Backend::Variational}) {
        const Discretizer disc(p, b, 0.03);
        SolverSettings s;
        s.n_iter = 30;
        const OptimizeResult r = optimize(disc, c, Vector{{-1.0, 0.0}}, std::vector<Vector>(20, Vector::Zero(1)), s);
        EXPECT_LE(r.cost_history[0], r.initial_cost);
        for (std::size_t k = 1; k < r.cost_history.size(); ++k) {
            EXPECT_LE(r.cost_history[k], r.cost_history[k - 1]);
            if (r.alpha_history[k] == 0.0) {
                EXPECT_EQ(r.cost_history[k], r.cost_history[k - 1]);
            }
        }
        EXPECT_EQ(r.iter_times.size(), 30u);
        EXPECT_EQ(r.trajectory.horizon(), 20);
    }
}

TEST(IlqrTest, SettledNominalAdoptsLargestAlphaOnTies) {
    // At the origin with zero inputs every candidate reproduces the nominal exactly.
    Pendulum p;
    const Discretizer disc(p, Backend::Variational, 0.02);
    SolverSettings s;
    s.n_iter = 2;
    const OptimizeResult r = optimize(disc, pendulumCost(), Vector::Zero(2), std::vector<Vector>(10, Vector::Zero(1)), s);
    EXPECT_EQ(r.cost_history[0], 0.0);
    EXPECT_EQ(r.alpha_history[0], 1.0);
    EXPECT_EQ(r.alpha_history[1], 1.0);
}

TEST(IlqrTest, BackwardPassReportsIndefiniteStep) {
    const int N = 4;
    StepLinearization lin{Matrix::Identity(2, 2), Matrix::Constant(2, 1, 0.01), Vector::Zero(2)};
    CostDerivatives good{Vector::Zero(2), Vector::Zero(1), Matrix::Identity(2, 2), Matrix::Identity(1, 1), Matrix::Zero(1, 2)};
    CostDerivatives bad = good;
    bad.l_uu = Matrix::Constant(1, 1, -1.0);
    std::vector<StepLinearization> lins(N, lin);
    std::vector<CostDerivatives> derivs(N, good);
    derivs[2] = bad;
    const ValueExpansion term{Vector::Zero(2), Matrix::Identity(2, 2)};
    try {
        backwardPass(lins, derivs, term, 0.0);
        FAIL() << "expected BackwardPassError";
    } catch (const BackwardPassError& e) {
        EXPECT_EQ(e.step(), 2);
    }
    EXPECT_NO_THROW(backwardPass(lins, derivs, term, 2.0));
}

TEST(IlqrTest, ForwardPassValidatesInputs) {
    Pendulum p;
    const Discretizer disc(p, Backend::Euler, 0.05);
    const Trajectory nom = rollout(disc, Vector::Zero(2), std::vector<Vector>(3, Vector::Zero(1)));
    GainSchedule g{std::vector<Vector>(3, Vector::Zero(1)), std::vector<Matrix>(3, Matrix::Zero(1, 2))};
    EXPECT_THROW(forwardPass(disc, nom, g, 0.0, Vector::Zero(2)), std::invalid_argument);
    EXPECT_THROW(forwardPass(disc, nom, g, 1.5, Vector::Zero(2)), std::invalid_argument);
    g.d.pop_back();
    EXPECT_THROW(forwardPass(disc, nom, g, 1.0, Vector::Zero(2)), std::invalid_argument);
}

TEST(IlqrTest, ForwardPassWithZeroGainsReproducesNominal) {
    Pendulum p;
    const Discretizer disc(p, Backend::Variational, 0.05);
    const Vector x0{{-std::numbers::pi, 0.0}};
    std::vector<Vector> U{Vector::Constant(1, 1.0), Vector::Constant(1, -2.0), Vector::Constant(1, 0.5)};
    const Trajectory nom = rollout(disc, x0, U);
    GainSchedule g{std::vector<Vector>(3, Vector::Zero(1)), std::vector<Matrix>(3, Matrix::Zero(1, 2))};
    const Trajectory out = forwardPass(disc, nom, g, 1.0, x0);
    for (std::size_t i = 0; i < nom.X.size(); ++i) {
        EXPECT_TRUE(out.X[i].isApprox(nom.X[i]));
    }
}

TEST(IlqrTest, SettingsValidation) {
    SolverSettings s;
    EXPECT_NO_THROW(s.validate());
    s.n_iter = 0;
    EXPECT_THROW(s.validate(), std::invalid_argument);
    s = {};
    s.alphas = {};
    EXPECT_THROW(s.validate(), std::invalid_argument);
    s = {};
    s.alphas = {1.0, 0.0};
    EXPECT_THROW(s.validate(), std::invalid_argument);
    s = {};
    s.mu = -1.0;
    EXPECT_THROW(s.validate(), std::invalid_argument);

    Pendulum p;
    const Discretizer disc(p, Backend::Euler, 0.05);
    EXPECT_THROW(optimize(disc, pendulumCost(), Vector::Zero(2), {}, SolverSettings{}), std::invalid_argument);
}

TEST(IlqrTest, TrajectoryShapeChecked) {
    Trajectory t;
    t.X = {Vector::Zero(2)};
    t.U = {Vector::Zero(1)};
    EXPECT_THROW(t.validate(), std::invalid_argument);
}
