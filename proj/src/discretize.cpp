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

#include "vilqr/discretize.hpp"

#include <cmath>
#include <string>

namespace vilqr {

namespace {

void requirePositiveStep(double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw std::invalid_argument("timestep must be positive and finite, got " + std::to_string(dt));
    }
}

template <typename Derived>
void requireFinite(const Eigen::MatrixBase<Derived>& value, const char* what) {
    if (!value.allFinite()) {
        throw BlowUpError(std::string(what) + ": non-finite value after integration");
    }
}

} // namespace

std::string_view toString(Backend backend) {
    switch (backend) {
    case Backend::Euler:
        return "euler";
    case Backend::Variational:
        return "variational";
    }
    return "unknown";
}

Backend parseBackend(std::string_view name) {
    if (name == "euler") {
        return Backend::Euler;
    }
    if (name == "variational" || name == "ve") {
        return Backend::Variational;
    }
    throw std::invalid_argument("unknown backend '" + std::string(name) +
                                "' (expected euler or variational)");
}

void IntegratorConfig::validate() const {
    if (substeps < 1) {
        throw std::invalid_argument("IntegratorConfig: substeps must be >= 1");
    }
}

Vector integrateStep(const ContinuousModel& model, const Vector& x, const Vector& u, double dt,
                     const IntegratorConfig& cfg) {
    requirePositiveStep(dt);
    cfg.validate();

    const double h = dt / cfg.substeps;
    Vector state = x;
    for (int s = 0; s < cfg.substeps; ++s) {
        const Vector k1 = model.dynamics(state, u);
        const Vector k2 = model.dynamics(state + 0.5 * h * k1, u);
        const Vector k3 = model.dynamics(state + 0.5 * h * k2, u);
        const Vector k4 = model.dynamics(state + h * k3, u);
        state += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    requireFinite(state, "integrateStep");
    return state;
}

Vector eulerStep(const ContinuousModel& model, const Vector& x, const Vector& u, double dt) {
    requirePositiveStep(dt);
    Vector next = x + dt * model.dynamics(x, u);
    requireFinite(next, "eulerStep");
    return next;
}

StepLinearization linearizeEuler(const ContinuousModel& model, const Vector& x, const Vector& u,
                                 double dt) {
    requirePositiveStep(dt);
    const int n = model.stateDim();
    StepLinearization lin;
    lin.f_x = Matrix::Identity(n, n) + dt * model.jacobianX(x, u);
    lin.f_u = dt * model.jacobianU(x, u);
    lin.x_next = x + dt * model.dynamics(x, u);
    requireFinite(lin.x_next, "linearizeEuler");
    return lin;
}

VariationalFlow integrateVariational(const ContinuousModel& model, const Vector& x, const Vector& u,
                                     double dt, const IntegratorConfig& cfg) {
    requirePositiveStep(dt);
    cfg.validate();

    const int n = model.stateDim();
    const int m = model.inputDim();
    const int na = n + m;

    // Right-hand side of the augmented system and its variational equation.
    // The input rows of both the state and Phi have zero derivative.
    auto rhs = [&](const Vector& xs, const Matrix& phi, Vector& dx, Matrix& dphi) {
        dx = model.dynamics(xs, u);
        Matrix jac(n, na);
        jac.leftCols(n) = model.jacobianX(xs, u);
        jac.rightCols(m) = model.jacobianU(xs, u);
        dphi = Matrix::Zero(na, na);
        dphi.topRows(n) = jac * phi;
    };

    const double h = dt / cfg.substeps;
    Vector xs = x;
    Matrix phi = Matrix::Identity(na, na);
    Vector k1, k2, k3, k4;
    Matrix p1, p2, p3, p4;
    for (int s = 0; s < cfg.substeps; ++s) {
        rhs(xs, phi, k1, p1);
        rhs(xs + 0.5 * h * k1, phi + 0.5 * h * p1, k2, p2);
        rhs(xs + 0.5 * h * k2, phi + 0.5 * h * p2, k3, p3);
        rhs(xs + h * k3, phi + h * p3, k4, p4);
        xs += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        phi += (h / 6.0) * (p1 + 2.0 * p2 + 2.0 * p3 + p4);
    }
    requireFinite(xs, "integrateVariational");
    requireFinite(phi, "integrateVariational");
    return {std::move(xs), std::move(phi)};
}

StepLinearization linearizeVariational(const ContinuousModel& model, const Vector& x,
                                       const Vector& u, double dt, const IntegratorConfig& cfg) {
    const int n = model.stateDim();
    const int m = model.inputDim();
    VariationalFlow flow = integrateVariational(model, x, u, dt, cfg);
    StepLinearization lin;
    lin.f_x = flow.phi.topLeftCorner(n, n);
    lin.f_u = flow.phi.topRightCorner(n, m);
    lin.x_next = std::move(flow.x_next);
    return lin;
}

Discretizer::Discretizer(const ContinuousModel& model, Backend backend, double dt,
                         IntegratorConfig cfg)
    : model_(&model), backend_(backend), dt_(dt), cfg_(cfg) {
    requirePositiveStep(dt_);
    cfg_.validate();
}

Vector Discretizer::step(const Vector& x, const Vector& u) const {
    if (backend_ == Backend::Euler) {
        return eulerStep(*model_, x, u, dt_);
    }
    return integrateStep(*model_, x, u, dt_, cfg_);
}

StepLinearization Discretizer::linearize(const Vector& x, const Vector& u) const {
    if (backend_ == Backend::Euler) {
        return linearizeEuler(*model_, x, u, dt_);
    }
    return linearizeVariational(*model_, x, u, dt_, cfg_);
}

} // namespace vilqr
