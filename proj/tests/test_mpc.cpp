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

#include "vilqr/linear_model.hpp"
#include "vilqr/manifold.hpp"
#include "vilqr/mpc.hpp"
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

std::vector<Vector> scalars(std::initializer_list<double> v) {
    std::vector<Vector> out;
    for (double x : v) {
        out.push_back(Vector::Constant(1, x));
    }
    return out;
}

} // namespace

TEST(WarmStartTest, ShiftDuplicatesLast) {
    const auto shifted = shiftWarmStart(scalars({1, 2, 3, 4}));
    ASSERT_EQ(shifted.size(), 4u);
    EXPECT_EQ(shifted[0](0), 2);
    EXPECT_EQ(shifted[1](0), 3);
    EXPECT_EQ(shifted[2](0), 4);
    EXPECT_EQ(shifted[3](0), 4);
}

TEST(WarmStartTest, ShortSequences) {
    EXPECT_EQ(shiftWarmStart(scalars({7}))[0](0), 7);
    EXPECT_TRUE(shiftWarmStart({}).empty());
}

TEST(MpcConfigTest, HorizonAndSteps) {
    MpcConfig c;
    c.dt = 0.03;
    EXPECT_EQ(c.horizon(), 13);  // round(0.4 / 0.03)
    EXPECT_EQ(c.simSteps(), 67);
    c.dt = 0.05;
    EXPECT_EQ(c.horizon(), 8);
    c.dt = 1.0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = {};
    c.n_iter = 0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(MpcStepTest, RejectsWrongWarmStartLength) {
    Pendulum p;
    MpcConfig c;
    EXPECT_THROW(mpcStep(p, pendulumCost(), Vector::Zero(2), scalars({0, 0}), c), std::invalid_argument);
}

TEST(MpcStepTest, EquilibriumStaysPut) {
    Pendulum p;
    MpcConfig c;
    c.sim_time = 0.5;
    const ClosedLoopResult r = simulateClosedLoop(p, pendulumCost(), Vector::Zero(2), c);
    ASSERT_EQ(r.states.size(), static_cast<std::size_t>(c.simSteps() + 1));
    ASSERT_EQ(r.inputs.size(), static_cast<std::size_t>(c.simSteps()));
    for (const auto& x : r.states) {
        EXPECT_EQ(x.norm(), 0.0);
    }
    for (const auto& t : r.iter_times) {
        EXPECT_EQ(t.size(), 1u);
    }
}

TEST(MpcStepTest, StabilizesNearUpright) {
    Pendulum p;
    MpcConfig c;
    c.n_iter = 3;
    c.sim_time = 1.5;
    // With Qf = Qs the short horizon prefers falling; the Riccati terminal
    // weight (scaled to the unweighted discrete sum) makes it stabilizing.
    CostModel cost = pendulumCost();
    const HamiltonianSystem sys(p, cost.Qs, cost.R);
    cost.Qf = solveRiccatiContinuous(sys.A(), sys.rbar(Vector::Zero(2)), cost.Qs) / c.dt;
    const ClosedLoopResult r = simulateClosedLoop(p, cost, Vector{{0.3, 0.0}}, c);
    EXPECT_FALSE(r.terminated_early);
    EXPECT_LT(r.states.back().norm(), 0.05);
}

TEST(MpcStepTest, FailedSolveAppliesWarmStart) {
    LinearModel m(Matrix::Zero(1, 1), Matrix::Identity(1, 1));
    CostModel c;
    c.Qs = Matrix::Identity(1, 1);
    c.R = Matrix::Constant(1, 1, 1.0);
    c.Qf = c.Qs;
    MpcConfig cfg;
    cfg.dt = 0.1;
    cfg.horizon_time = 0.3;
    cfg.mu = 0.0;
    const auto U = scalars({0.5, 0.25, 0.125});
    const MpcStepResult ok = mpcStep(m, c, Vector::Ones(1), U, cfg);
    EXPECT_FALSE(ok.record.failed);

    // A non-finite measurement makes the initial rollout blow up.
    const Vector nan = Vector::Constant(1, std::nan(""));
    const MpcStepResult bad = mpcStep(m, c, nan, U, cfg);
    EXPECT_TRUE(bad.record.failed);
    EXPECT_EQ(bad.u_applied(0), 0.5);
    EXPECT_EQ(bad.U_next.size(), 3u);
    EXPECT_EQ(bad.U_next[0](0), 0.25);
    EXPECT_FALSE(bad.record.message.empty());
}

TEST(MpcStepTest, PlantIsIndependentOfControllerBackend) {
    // Same inputs through the plant must give the same states, whatever the controller used.
    Pendulum p;
    MpcConfig c;
    c.sim_time = 0.2;
    c.backend = Backend::Euler;
    const ClosedLoopResult r = simulateClosedLoop(p, pendulumCost(), Vector{{-3.0, 0.0}}, c);
    IntegratorConfig plant;
    plant.substeps = c.plant_substeps;
    Vector x = r.states.front();
    for (std::size_t k = 0; k < r.inputs.size(); ++k) {
        x = integrateStep(p, x, r.inputs[k], c.dt, plant);
        EXPECT_TRUE(x.isApprox(r.states[k + 1], 1e-14));
    }
}

TEST(FeasibilityTest, FloorRule) {
    const FeasibilityReport rep = feasibilityReport(0.004, 0.02, 8);
    EXPECT_EQ(rep.n_iter_max, 5);
    ASSERT_EQ(rep.rows.size(), 8u);
    for (const auto& row : rep.rows) {
        EXPECT_EQ(row.feasible, row.n_iter <= 5) << row.n_iter;
    }
}

TEST(FeasibilityTest, AgreesWithProductRule) {
    for (double t : {0.001, 0.0013, 0.0031, 0.007, 0.01, 0.03}) {
        for (double dt : {0.01, 0.02, 0.03, 0.04, 0.05}) {
            const FeasibilityReport rep = feasibilityReport(t, dt, 10);
            EXPECT_LE(rep.n_iter_max * t, dt);
            EXPECT_GT((rep.n_iter_max + 1) * t, dt);
            for (const auto& row : rep.rows) {
                EXPECT_EQ(row.feasible, row.n_iter * t <= dt);
            }
        }
    }
}

TEST(FeasibilityTest, SlowIterationIsInfeasible) {
    const FeasibilityReport rep = feasibilityReport(0.05, 0.02, 3);
    EXPECT_EQ(rep.n_iter_max, 0);
    for (const auto& row : rep.rows) {
        EXPECT_FALSE(row.feasible);
    }
    EXPECT_THROW(feasibilityReport(-1.0, 0.02, 3), std::invalid_argument);
    EXPECT_THROW(feasibilityReport(ClosedLoopResult{}, 0.02, 3), std::invalid_argument);
}

TEST(FeasibilityTest, BudgetGrowsWithStep) {
    // With a fixed per-iteration time the budget is linear in dt.
    const int a = feasibilityReport(0.002, 0.02, 1).n_iter_max;
    const int b = feasibilityReport(0.002, 0.04, 1).n_iter_max;
    EXPECT_GE(b, 2 * a);
}
