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

#include "vilqr/ilqr.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include <Eigen/Cholesky>

namespace vilqr {

namespace {

constexpr double kSymmetryTol = 1e-9;

bool isSymmetric(const Matrix& m) {
    return m.rows() == m.cols() &&
           (m - m.transpose()).cwiseAbs().maxCoeff() <= kSymmetryTol * (1.0 + m.cwiseAbs().maxCoeff());
}

bool isPositiveSemidefinite(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() >= -1e-12 * (1.0 + m.cwiseAbs().maxCoeff());
}

Matrix symmetrize(const Matrix& m) {
    return 0.5 * (m + m.transpose());
}

} // namespace

void CostModel::validate() const {
    const auto n = Qs.rows();
    if (n == 0 || Qs.cols() != n || Qf.rows() != n || Qf.cols() != n) {
        throw std::invalid_argument("CostModel: Qs and Qf must be square with matching size");
    }
    if (R.rows() == 0 || R.rows() != R.cols()) {
        throw std::invalid_argument("CostModel: R must be square and non-empty");
    }
    if (!isSymmetric(Qs) || !isPositiveSemidefinite(Qs)) {
        throw std::invalid_argument("CostModel: Qs must be symmetric positive semidefinite");
    }
    if (!isSymmetric(Qf) || !isPositiveSemidefinite(Qf)) {
        throw std::invalid_argument("CostModel: Qf must be symmetric positive semidefinite");
    }
    if (!isSymmetric(R) || Eigen::LLT<Matrix>(R).info() != Eigen::Success) {
        throw std::invalid_argument("CostModel: R must be symmetric positive definite");
    }
}

double CostModel::running(const Vector& x, const Vector& u) const {
    return x.dot(Qs * x) + u.dot(R * u);
}

double CostModel::terminal(const Vector& x) const {
    return x.dot(Qf * x);
}

void Trajectory::validate() const {
    if (X.size() != U.size() + 1) {
        throw std::invalid_argument("Trajectory: expected " + std::to_string(U.size() + 1) +
                                    " states for " + std::to_string(U.size()) + " inputs, got " +
                                    std::to_string(X.size()));
    }
}

void SolverSettings::validate() const {
    if (n_iter < 1) {
        throw std::invalid_argument("SolverSettings: n_iter must be >= 1");
    }
    if (alphas.empty()) {
        throw std::invalid_argument("SolverSettings: alphas must be non-empty");
    }
    for (double a : alphas) {
        if (!(a > 0.0 && a <= 1.0)) {
            throw std::invalid_argument("SolverSettings: every alpha must lie in (0, 1]");
        }
    }
    if (!(mu >= 0.0) || !std::isfinite(mu)) {
        throw std::invalid_argument("SolverSettings: mu must be nonnegative");
    }
}

BackwardPassError::BackwardPassError(int step, const std::string& what)
    : std::runtime_error(what), step_(step) {}

double evaluateCost(const Trajectory& traj, const CostModel& cost) {
    traj.validate();
    double total = 0.0;
    for (std::size_t i = 0; i < traj.U.size(); ++i) {
        total += cost.running(traj.X[i], traj.U[i]);
    }
    return total + cost.terminal(traj.X.back());
}

CostDerivatives costDerivatives(const Vector& x, const Vector& u, const CostModel& cost) {
    CostDerivatives d;
    d.l_x = 2.0 * cost.Qs * x;
    d.l_u = 2.0 * cost.R * u;
    d.l_xx = 2.0 * cost.Qs;
    d.l_uu = 2.0 * cost.R;
    d.l_ux = Matrix::Zero(u.size(), x.size());
    return d;
}

ValueExpansion terminalExpansion(const Vector& x_N, const CostModel& cost) {
    return {2.0 * cost.Qf * x_N, 2.0 * cost.Qf};
}

BackwardPassResult backwardPass(std::span<const StepLinearization> lins,
                                std::span<const CostDerivatives> derivs,
                                const ValueExpansion& terminal, double mu) {
    if (lins.size() != derivs.size()) {
        throw std::invalid_argument("backwardPass: linearizations and cost derivatives differ in length");
    }
    const int N = static_cast<int>(lins.size());

    BackwardPassResult out;
    out.gains.d.resize(N);
    out.gains.K.resize(N);
    out.q.resize(N);
    out.values.resize(N + 1);
    out.values[N] = {terminal.V_x, symmetrize(terminal.V_xx)};

    for (int i = N - 1; i >= 0; --i) {
        const StepLinearization& lin = lins[i];
        const CostDerivatives& l = derivs[i];
        const ValueExpansion& next = out.values[i + 1];
        QExpansion& q = out.q[i];

        const Matrix Vxx_fx = next.V_xx * lin.f_x;
        q.Q_x = l.l_x + lin.f_x.transpose() * next.V_x;
        q.Q_u = l.l_u + lin.f_u.transpose() * next.V_x;
        q.Q_xx = symmetrize(l.l_xx + lin.f_x.transpose() * Vxx_fx);
        q.Q_uu = symmetrize(l.l_uu + lin.f_u.transpose() * next.V_xx * lin.f_u);
        q.Q_ux = l.l_ux + lin.f_u.transpose() * Vxx_fx;

        const int m = static_cast<int>(q.Q_uu.rows());
        const Matrix Quu_reg = q.Q_uu + mu * Matrix::Identity(m, m);
        Eigen::LLT<Matrix> llt(Quu_reg);
        if (!Quu_reg.allFinite() || llt.info() != Eigen::Success) {
            throw BackwardPassError(i, "backwardPass: Q_uu + mu I is not positive definite at step " +
                                           std::to_string(i));
        }

        out.gains.d[i] = -llt.solve(q.Q_u);
        out.gains.K[i] = -llt.solve(q.Q_ux);

        // V_x = Q_x - Q_xu Q_uu^-1 Q_u, V_xx = Q_xx - Q_xu Q_uu^-1 Q_ux.
        ValueExpansion& v = out.values[i];
        v.V_x = q.Q_x + q.Q_ux.transpose() * out.gains.d[i];
        v.V_xx = symmetrize(q.Q_xx + q.Q_ux.transpose() * out.gains.K[i]);
    }
    return out;
}

Trajectory rollout(const Discretizer& disc, const Vector& x0, const std::vector<Vector>& U) {
    Trajectory traj;
    traj.dt = disc.dt();
    traj.U = U;
    traj.X.reserve(U.size() + 1);
    traj.X.push_back(x0);
    for (const Vector& u : U) {
        traj.X.push_back(disc.step(traj.X.back(), u));
    }
    return traj;
}

Trajectory forwardPass(const Discretizer& disc, const Trajectory& nominal, const GainSchedule& gains,
                       double alpha, const Vector& x0) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw std::invalid_argument("forwardPass: alpha must lie in (0, 1]");
    }
    nominal.validate();
    const int N = nominal.horizon();
    if (static_cast<int>(gains.d.size()) != N || static_cast<int>(gains.K.size()) != N) {
        throw std::invalid_argument("forwardPass: gain schedule horizon does not match nominal");
    }

    Trajectory out;
    out.dt = nominal.dt;
    out.X.reserve(N + 1);
    out.U.reserve(N);
    out.X.push_back(x0);
    for (int i = 0; i < N; ++i) {
        const Vector& x = out.X.back();
        Vector u = nominal.U[i] + gains.K[i] * (x - nominal.X[i]) + alpha * gains.d[i];
        if (!u.allFinite()) {
            throw BlowUpError("forwardPass: non-finite input at step " + std::to_string(i));
        }
        out.X.push_back(disc.step(x, u));
        out.U.push_back(std::move(u));
    }
    return out;
}

OptimizeResult optimize(const Discretizer& disc, const CostModel& cost, const Vector& x0,
                        const std::vector<Vector>& U_init, const SolverSettings& settings) {
    settings.validate();
    if (U_init.empty()) {
        throw std::invalid_argument("optimize: initial control sequence must have length >= 1");
    }
    using Clock = std::chrono::steady_clock;

    OptimizeResult result;
    Trajectory nominal = rollout(disc, x0, U_init);
    double nominal_cost = evaluateCost(nominal, cost);
    result.initial_cost = nominal_cost;

    const int N = nominal.horizon();
    std::vector<StepLinearization> lins(N);
    std::vector<CostDerivatives> derivs(N);

    for (int iter = 0; iter < settings.n_iter; ++iter) {
        const auto start = Clock::now();

        for (int i = 0; i < N; ++i) {
            lins[i] = disc.linearize(nominal.X[i], nominal.U[i]);
            derivs[i] = costDerivatives(nominal.X[i], nominal.U[i], cost);
        }
        const BackwardPassResult bp =
            backwardPass(lins, derivs, terminalExpansion(nominal.X.back(), cost), settings.mu);

        std::optional<Trajectory> best;
        double best_cost = std::numeric_limits<double>::infinity();
        double best_alpha = 0.0;
        for (double alpha : settings.alphas) {
            Trajectory candidate;
            try {
                candidate = forwardPass(disc, nominal, bp.gains, alpha, x0);
            } catch (const BlowUpError&) {
                continue;
            }
            const double c = evaluateCost(candidate, cost);
            if (!std::isfinite(c)) {
                continue;
            }
            if (c < best_cost || (c == best_cost && alpha > best_alpha)) {
                best_cost = c;
                best_alpha = alpha;
                best = std::move(candidate);
            }
        }

        const bool adopt = best.has_value() && (settings.always_adopt || best_cost <= nominal_cost);
        if (adopt) {
            nominal = std::move(*best);
            nominal_cost = best_cost;
            result.alpha_history.push_back(best_alpha);
        } else {
            result.alpha_history.push_back(0.0);
        }

        result.iter_times.push_back(std::chrono::duration<double>(Clock::now() - start).count());
        result.cost_history.push_back(nominal_cost);
    }

    result.trajectory = std::move(nominal);
    return result;
}

} // namespace vilqr
