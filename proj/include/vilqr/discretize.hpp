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

#ifndef VILQR_DISCRETIZE_HPP
#define VILQR_DISCRETIZE_HPP

#include <stdexcept>
#include <string>
#include <string_view>

#include "vilqr/dynamics.hpp"

namespace vilqr {

/// Raised when an integrated state or sensitivity becomes non-finite.
class BlowUpError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Linearization scheme used for the discrete transition map.
enum class Backend { Euler, Variational };

std::string_view toString(Backend backend);

/// Parses "euler" or "variational"; throws std::invalid_argument otherwise.
Backend parseBackend(std::string_view name);

struct IntegratorConfig {
    enum class Method { RK4 };

    int substeps = 4;  ///< Internal RK4 steps per discretization step.
    Method method = Method::RK4;

    void validate() const;
};

/// Discrete linear model of one step: x_{k+1} ~ f_x dx + f_u du around (x, u).
struct StepLinearization {
    Matrix f_x;
    Matrix f_u;
    Vector x_next;
};

/// Augmented flow of [x; u] over one step together with its (n+m)x(n+m) sensitivity.
struct VariationalFlow {
    Vector x_next;
    Matrix phi;
};

/// Zero-order-hold flow of xdot = f_c(x, u) over dt with classical RK4.
Vector integrateStep(const ContinuousModel& model, const Vector& x, const Vector& u, double dt,
                     const IntegratorConfig& cfg);

/// Forward-Euler transition map x + dt f_c(x, u).
Vector eulerStep(const ContinuousModel& model, const Vector& x, const Vector& u, double dt);

/// f_x = I + dt df_c/dx, f_u = dt df_c/du, x_next = Euler step.
StepLinearization linearizeEuler(const ContinuousModel& model, const Vector& x, const Vector& u,
                                 double dt);

/**
 * @brief Integrates the variational equation of the augmented system [x; u].
 *
 * The augmented state evolves under [f_c(x, u); 0] while Phi obeys
 * Phi_dot = (d f~/d x~) Phi, Phi(0) = I. Both are advanced in one RK4
 * right-hand side so the Jacobian is sampled on the same internal flow.
 */
VariationalFlow integrateVariational(const ContinuousModel& model, const Vector& x, const Vector& u,
                                     double dt, const IntegratorConfig& cfg);

/// f_x, f_u from the top blocks of Phi(dt); x_next from the RK4 flow.
StepLinearization linearizeVariational(const ContinuousModel& model, const Vector& x,
                                       const Vector& u, double dt, const IntegratorConfig& cfg);

/**
 * @brief Discrete transition map bound to a backend.
 *
 * Euler backend: transition and linearization both follow the Euler scheme.
 * Variational backend: RK4 transition with variational-equation sensitivities.
 * Holds a non-owning reference to the model.
 */
class Discretizer {
public:
    Discretizer(const ContinuousModel& model, Backend backend, double dt,
                IntegratorConfig cfg = {});

    Vector step(const Vector& x, const Vector& u) const;
    StepLinearization linearize(const Vector& x, const Vector& u) const;

    const ContinuousModel& model() const { return *model_; }
    Backend backend() const { return backend_; }
    double dt() const { return dt_; }
    const IntegratorConfig& integrator() const { return cfg_; }

private:
    const ContinuousModel* model_;
    Backend backend_;
    double dt_;
    IntegratorConfig cfg_;
};

} // namespace vilqr

#endif // VILQR_DISCRETIZE_HPP
