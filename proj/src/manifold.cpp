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

#include "vilqr/manifold.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/QR>
#include <unsupported/Eigen/MatrixFunctions>

namespace vilqr {

namespace {

constexpr double kHurwitzMargin = 1e-10;

double maxRealPart(const Matrix& m) {
    return Eigen::EigenSolver<Matrix>(m, false).eigenvalues().real().maxCoeff();
}

Vector stack(const Vector& a, const Vector& b) {
    Vector out(a.size() + b.size());
    out << a, b;
    return out;
}

/// Solves F S + S F' = C for S via the Kronecker form.
Matrix solveLyapunov(const Matrix& F, const Matrix& C) {
    const int n = static_cast<int>(F.rows());
    const Matrix I = Matrix::Identity(n, n);
    Matrix K = Matrix::Zero(n * n, n * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            // vec(F S) = (I kron F) vec(S), vec(S F') = (F kron I) vec(S)
            K.block(i * n, j * n, n, n) += I(i, j) * F + F(i, j) * I;
        }
    }
    Eigen::FullPivLU<Matrix> lu(K);
    if (!lu.isInvertible()) {
        throw RiccatiError("buildTransform: Lyapunov operator is singular");
    }
    const Vector c = Eigen::Map<const Vector>(C.data(), n * n);
    const Vector s = lu.solve(c);
    return Eigen::Map<const Matrix>(s.data(), n, n);
}

} // namespace

// ---------------------------------------------------------------------------
// HamiltonianSystem

HamiltonianSystem::HamiltonianSystem(const InputAffineModel& model, Matrix Q, Matrix R)
    : model_(&model), n_(model.stateDim()), Q_(std::move(Q)), R_(std::move(R)) {
    const int m = model.inputDim();
    if (Q_.rows() != n_ || Q_.cols() != n_) {
        throw std::invalid_argument("HamiltonianSystem: Q must be n x n");
    }
    if (R_.rows() != m || R_.cols() != m) {
        throw std::invalid_argument("HamiltonianSystem: R must be m x m");
    }
    Eigen::LLT<Matrix> llt(R_);
    if (llt.info() != Eigen::Success) {
        throw std::invalid_argument("HamiltonianSystem: R must be positive definite");
    }
    R_inv_ = llt.solve(Matrix::Identity(m, m));
    const Vector zero = Vector::Zero(n_);
    if (model.drift(zero).cwiseAbs().maxCoeff() > 1e-12) {
        throw std::invalid_argument("HamiltonianSystem: the origin must be an equilibrium, f(0) = 0");
    }
    A_ = model.driftJacobian(zero);
}

Matrix HamiltonianSystem::rbar(const Vector& x) const {
    const Matrix g = model_->inputMatrix(x);
    return g * R_inv_ * g.transpose();
}

double HamiltonianSystem::hamiltonian(const Vector& x, const Vector& lambda) const {
    const Vector w = model_->inputMatrix(x).transpose() * lambda;
    return lambda.dot(model_->drift(x)) - 0.25 * w.dot(R_inv_ * w) + x.dot(Q_ * x);
}

void HamiltonianSystem::canonicalRhs(const Vector& x, const Vector& lambda, Vector& xdot,
                                     Vector& lambdadot) const {
    const Matrix g = model_->inputMatrix(x);
    const Vector v = R_inv_ * (g.transpose() * lambda);
    xdot = model_->drift(x) - 0.5 * g * v;

    // dH/dx = f_x' lambda - 1/2 sum_j v_j (dg_j/dx)' lambda + 2 Q x
    Vector dHdx = model_->driftJacobian(x).transpose() * lambda + 2.0 * Q_ * x;
    const std::vector<Matrix> dg = model_->inputMatrixJacobian(x);
    for (int j = 0; j < v.size(); ++j) {
        dHdx -= 0.5 * v(j) * (dg[j].transpose() * lambda);
    }
    lambdadot = -dHdx;
}

Vector HamiltonianSystem::optimalInput(const Vector& x, const Vector& lambda) const {
    return -0.5 * R_inv_ * (model_->inputMatrix(x).transpose() * lambda);
}

Matrix HamiltonianSystem::linearPart() const {
    Matrix H(2 * n_, 2 * n_);
    H << A_, -0.5 * rbar(Vector::Zero(n_)), -2.0 * Q_, -A_.transpose();
    return H;
}

double hjbResidual(const HamiltonianSystem& sys, const Vector& x, const Vector& lambda) {
    return std::abs(sys.hamiltonian(x, lambda));
}

// ---------------------------------------------------------------------------
// Riccati solution and block-diagonalizing transform

Matrix solveRiccatiContinuous(const Matrix& A, const Matrix& Rbar0, const Matrix& Q) {
    const int n = static_cast<int>(A.rows());
    if (A.cols() != n || Rbar0.rows() != n || Rbar0.cols() != n || Q.rows() != n || Q.cols() != n) {
        throw std::invalid_argument("solveRiccatiContinuous: dimension mismatch");
    }

    Matrix Z(2 * n, 2 * n);
    Z << A, -Rbar0, -Q, -A.transpose();

    // Scaled Newton iteration for sign(Z).
    bool converged = false;
    for (int it = 0; it < 100; ++it) {
        Eigen::PartialPivLU<Matrix> lu(Z);
        const double det = std::abs(lu.determinant());
        if (!(det > 0.0) || !std::isfinite(det)) {
            throw RiccatiError("solveRiccatiContinuous: Hamiltonian matrix has eigenvalues on the "
                               "imaginary axis; no stabilizing solution");
        }
        const double c = std::pow(det, -1.0 / (2.0 * n));
        const Matrix next = 0.5 * (c * Z + lu.inverse() / c);
        const double change = (next - Z).lpNorm<1>();
        Z = next;
        if (change <= 1e-13 * Z.lpNorm<1>()) {
            converged = true;
            break;
        }
    }
    if (!converged || !Z.allFinite()) {
        throw RiccatiError("solveRiccatiContinuous: sign iteration did not converge");
    }

    // Stable subspace [I; X] spans the null space of sign(Z) + I.
    const Matrix I = Matrix::Identity(n, n);
    Matrix lhs(2 * n, n);
    lhs << Z.topRightCorner(n, n), Z.bottomRightCorner(n, n) + I;
    Matrix rhs(2 * n, n);
    rhs << Z.topLeftCorner(n, n) + I, Z.bottomLeftCorner(n, n);
    Matrix X = lhs.colPivHouseholderQr().solve(-rhs);
    X = 0.5 * (X + X.transpose());

    const Matrix F = A - Rbar0 * X;
    if (!X.allFinite() || maxRealPart(F) >= -kHurwitzMargin) {
        throw RiccatiError("solveRiccatiContinuous: no stabilizing solution (closed loop not Hurwitz)");
    }
    return X;
}

Matrix buildTransform(const Matrix& A, const Matrix& Rbar0, const Matrix& Gamma) {
    const int n = static_cast<int>(A.rows());
    const Matrix F = A - Rbar0 * Gamma;
    if (maxRealPart(F) >= -kHurwitzMargin) {
        throw RiccatiError("buildTransform: Gamma is not stabilizing");
    }
    const Matrix S = solveLyapunov(F, 0.5 * Rbar0);
    const Matrix I = Matrix::Identity(n, n);
    Matrix T(2 * n, 2 * n);
    T << I, S, 2.0 * Gamma, I + 2.0 * Gamma * S;
    if (!T.allFinite() || Eigen::FullPivLU<Matrix>(T).rank() < 2 * n) {
        throw RiccatiError("buildTransform: transform is singular");
    }
    return T;
}

// ---------------------------------------------------------------------------
// Picard iteration

ManifoldIterate picardIterate(const HamiltonianSystem& sys, const Matrix& F, const Matrix& T,
                              const Vector& xi, const PicardSettings& settings) {
    const int n = sys.dim();
    if (xi.size() != n) {
        throw std::invalid_argument("picardIterate: xi has wrong dimension");
    }
    if (!(settings.t_end > 0.0) || settings.grid_points < 2 || settings.k_max < 1) {
        throw std::invalid_argument("picardIterate: need t_end > 0, grid_points >= 2, k_max >= 1");
    }

    const int G = settings.grid_points;
    const double h = settings.t_end / (G - 1);
    const Matrix E = (F * h).exp();
    const Matrix Et = E.transpose();
    const Matrix T_inv = T.inverse();
    const Matrix H_lin = sys.linearPart();

    ManifoldIterate it;
    it.xi = xi;
    it.t_grid.resize(G);
    for (int j = 0; j < G; ++j) {
        it.t_grid[j] = j * h;
    }

    // Linear flow e^{Ft} xi is shared by every iterate.
    std::vector<Vector> linear(G);
    linear[0] = xi;
    for (int j = 1; j < G; ++j) {
        linear[j] = E * linear[j - 1];
    }
    it.q = linear;
    it.p.assign(G, Vector::Zero(n));

    std::vector<Vector> ns(G), nu(G);
    Vector xdot, lambdadot;
    for (int k = 0; k < settings.k_max; ++k) {
        for (int j = 0; j < G; ++j) {
            const Vector z = T * stack(it.q[j], it.p[j]);
            sys.canonicalRhs(z.head(n), z.tail(n), xdot, lambdadot);
            const Vector nl = T_inv * (stack(xdot, lambdadot) - H_lin * z);
            ns[j] = nl.head(n);
            nu[j] = nl.tail(n);
        }

        std::vector<Vector> q_new(G), p_new(G);
        Vector acc = Vector::Zero(n);
        q_new[0] = linear[0];
        for (int j = 0; j + 1 < G; ++j) {
            acc = E * acc + 0.5 * h * (E * ns[j] + ns[j + 1]);
            q_new[j + 1] = linear[j + 1] + acc;
        }
        p_new[G - 1] = Vector::Zero(n);
        for (int j = G - 2; j >= 0; --j) {
            p_new[j] = Et * p_new[j + 1] - 0.5 * h * (nu[j] + Et * nu[j + 1]);
        }

        double diff = 0.0;
        for (int j = 0; j < G; ++j) {
            diff = std::max(diff, (q_new[j] - it.q[j]).cwiseAbs().maxCoeff());
            diff = std::max(diff, (p_new[j] - it.p[j]).cwiseAbs().maxCoeff());
        }
        it.q = std::move(q_new);
        it.p = std::move(p_new);
        it.iterations = k + 1;
        it.diff_history.push_back(diff);

        if (!std::isfinite(diff)) {
            throw DivergenceError("picardIterate: iterates became non-finite; reduce |xi|");
        }
        if (diff < settings.tol) {
            it.converged = true;
            break;
        }
        const auto& d = it.diff_history;
        const std::size_t s = d.size();
        if (s >= 4 && d[s - 1] > d[s - 2] && d[s - 2] > d[s - 3] && d[s - 3] > d[s - 4]) {
            throw DivergenceError("picardIterate: iterate differences grew three times in a row; "
                                  "reduce |xi|");
        }
    }
    return it;
}

// ---------------------------------------------------------------------------
// Solution helpers

double ManifoldSolution::cost(const Matrix& Q, const Matrix& R) const {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < t_grid.size(); ++i) {
        const double a = x_path[i].dot(Q * x_path[i]) + u_path[i].dot(R * u_path[i]);
        const double b = x_path[i + 1].dot(Q * x_path[i + 1]) + u_path[i + 1].dot(R * u_path[i + 1]);
        total += 0.5 * (t_grid[i + 1] - t_grid[i]) * (a + b);
    }
    return total;
}

MatchError::MatchError(const std::string& what, double best_residual)
    : std::runtime_error(what), best_residual_(best_residual) {}

// ---------------------------------------------------------------------------
// StableManifold

StableManifold::StableManifold(const HamiltonianSystem& sys) : sys_(&sys) {
    const Matrix rbar0 = sys.rbar(Vector::Zero(sys.dim()));
    gamma_ = solveRiccatiContinuous(sys.A(), rbar0, sys.Q());
    F_ = sys.A() - rbar0 * gamma_;
    T_ = buildTransform(sys.A(), rbar0, gamma_);
    T_inv_ = T_.inverse();
}

ManifoldIterate StableManifold::picard(const Vector& xi, const PicardSettings& settings) const {
    return picardIterate(*sys_, F_, T_, xi, settings);
}

StableManifold::Seed StableManifold::seed(const Vector& xi, const PicardSettings& settings) const {
    Seed s;
    s.iterate = picard(xi, settings);
    const int n = sys_->dim();
    const Vector z = T_ * stack(s.iterate.q.front(), s.iterate.p.front());
    s.x0 = z.head(n);
    s.lambda0 = z.tail(n);
    return s;
}

void StableManifold::backward(const Vector& x, const Vector& lambda, double duration,
                              double max_step, std::vector<Vector>* xs,
                              std::vector<Vector>* lambdas, Vector& x_end,
                              Vector& lambda_end) const {
    x_end = x;
    lambda_end = lambda;
    if (xs) {
        xs->push_back(x_end);
        lambdas->push_back(lambda_end);
    }
    if (duration <= 0.0) {
        return;
    }
    const int steps = std::max(1, static_cast<int>(std::ceil(duration / max_step - 1e-9)));
    const double h = duration / steps;

    // Reverse-time canonical flow: d/ds (x, lambda) = -rhs.
    Vector kx1, kl1, kx2, kl2, kx3, kl3, kx4, kl4;
    for (int s = 0; s < steps; ++s) {
        sys_->canonicalRhs(x_end, lambda_end, kx1, kl1);
        sys_->canonicalRhs(x_end - 0.5 * h * kx1, lambda_end - 0.5 * h * kl1, kx2, kl2);
        sys_->canonicalRhs(x_end - 0.5 * h * kx2, lambda_end - 0.5 * h * kl2, kx3, kl3);
        sys_->canonicalRhs(x_end - h * kx3, lambda_end - h * kl3, kx4, kl4);
        x_end -= (h / 6.0) * (kx1 + 2.0 * kx2 + 2.0 * kx3 + kx4);
        lambda_end -= (h / 6.0) * (kl1 + 2.0 * kl2 + 2.0 * kl3 + kl4);
        if (xs) {
            xs->push_back(x_end);
            lambdas->push_back(lambda_end);
        }
    }
}

ManifoldSolution StableManifold::assemble(const Seed& s, double shift, double max_step) const {
    const int n = sys_->dim();
    ManifoldSolution sol;
    sol.xi = s.iterate.xi;
    sol.time_shift = shift;

    if (shift > 0.0) {
        std::vector<Vector> xs, lambdas;
        Vector xe, le;
        backward(s.x0, s.lambda0, shift, max_step, &xs, &lambdas, xe, le);
        const int steps = static_cast<int>(xs.size()) - 1;
        const double h = shift / steps;
        // Samples run from the seed backwards; reverse them so t increases.
        for (int k = steps; k >= 1; --k) {
            sol.t_grid.push_back((steps - k) * h);
            sol.x_path.push_back(xs[k]);
            sol.lambda_path.push_back(lambdas[k]);
        }
    }
    const auto& it = s.iterate;
    for (std::size_t j = 0; j < it.t_grid.size(); ++j) {
        const Vector z = T_ * stack(it.q[j], it.p[j]);
        sol.t_grid.push_back(shift + it.t_grid[j]);
        sol.x_path.push_back(z.head(n));
        sol.lambda_path.push_back(z.tail(n));
    }
    sol.u_path.reserve(sol.x_path.size());
    for (std::size_t i = 0; i < sol.x_path.size(); ++i) {
        sol.u_path.push_back(sys_->optimalInput(sol.x_path[i], sol.lambda_path[i]));
    }
    return sol;
}

ManifoldSolution StableManifold::match(const Vector& target, const MatchSettings& settings) const {
    const int n = sys_->dim();
    if (target.size() != n) {
        throw std::invalid_argument("extendAndMatch: target has wrong dimension");
    }
    if (!(settings.seed_radius > 0.0) || !(settings.backward_step > 0.0) ||
        !(settings.tolerance > 0.0)) {
        throw std::invalid_argument("extendAndMatch: invalid search settings");
    }

    // Seeds are resolved well below the match tolerance so that finite
    // differences through the Picard solution stay smooth.
    PicardSettings picard = settings.picard;
    picard.tol = std::min(picard.tol, 1e-13);

    const double target_norm = target.norm();
    const double solve_tol = std::min(1e-10 * (1.0 + target_norm), 0.01 * settings.tolerance);

    if (target_norm == 0.0) {
        ManifoldSolution sol = assemble(seed(Vector::Zero(n), picard), 0.0, settings.backward_step);
        return sol;
    }

    // Generic damped Gauss-Newton on residual(params) with central differences.
    auto solveLeastSquares = [&](Vector params, auto&& residual, const Vector& fd_step) {
        Vector r = residual(params);
        double cost = r.allFinite() ? r.norm() : std::numeric_limits<double>::infinity();
        double damping = 1e-3;
        for (int it = 0; it < settings.max_iterations && cost > solve_tol; ++it) {
            Matrix J(r.size(), params.size());
            bool ok = true;
            for (int c = 0; c < params.size(); ++c) {
                Vector hi = params, lo = params;
                hi(c) += fd_step(c);
                lo(c) -= fd_step(c);
                const Vector rh = residual(hi);
                const Vector rl = residual(lo);
                if (!rh.allFinite() || !rl.allFinite()) {
                    ok = false;
                    break;
                }
                J.col(c) = (rh - rl) / (2.0 * fd_step(c));
            }
            if (!ok) {
                break;
            }
            const Matrix JtJ = J.transpose() * J;
            const Vector Jtr = J.transpose() * r;
            bool improved = false;
            for (int tries = 0; tries < 12; ++tries) {
                Matrix lhs = JtJ;
                lhs.diagonal() += damping * (JtJ.diagonal().array() + 1e-12).matrix();
                const Vector delta = lhs.ldlt().solve(-Jtr);
                const Vector trial = params + delta;
                const Vector rt = residual(trial);
                const double ct = rt.allFinite() ? rt.norm() : std::numeric_limits<double>::infinity();
                if (ct < cost) {
                    params = trial;
                    r = rt;
                    cost = ct;
                    damping = std::max(damping / 5.0, 1e-12);
                    improved = true;
                    break;
                }
                damping *= 8.0;
            }
            if (!improved) {
                break;
            }
        }
        return std::make_pair(params, cost);
    };

    // Inside the local patch: match x(0, xi) = target directly.
    if (target_norm <= settings.seed_radius) {
        auto residual = [&](const Vector& xi) -> Vector {
            try {
                return seed(xi, picard).x0 - target;
            } catch (const std::runtime_error&) {
                return Vector::Constant(n, std::numeric_limits<double>::infinity());
            }
        };
        const Vector fd = Vector::Constant(n, 1e-7 * std::max(target_norm, 1e-6));
        auto [xi, res] = solveLeastSquares(target, residual, fd);
        if (res > settings.tolerance) {
            throw MatchError("extendAndMatch: direct seed match failed, residual " + std::to_string(res),
                             res);
        }
        ManifoldSolution sol = assemble(seed(xi, picard), 0.0, settings.backward_step);
        sol.match_residual = res;
        return sol;
    }

    if (n != 2) {
        throw std::invalid_argument("extendAndMatch: backward extension is implemented for n = 2");
    }

    const double r = settings.seed_radius;
    auto seedAt = [&](double theta) {
        return seed(Vector{{r * std::cos(theta), r * std::sin(theta)}}, picard);
    };

    // Scan seed angles, recording the closest approach of each backward trajectory.
    struct Candidate {
        double dist;
        double theta;
        double shift;
    };
    std::vector<Candidate> candidates;
    const double escape = 10.0 * (1.0 + target_norm);
    for (int j = 0; j < settings.scan_count; ++j) {
        const double theta = 2.0 * std::numbers::pi * j / settings.scan_count;
        Seed s;
        try {
            s = seedAt(theta);
        } catch (const std::runtime_error&) {
            continue;
        }
        Vector x = s.x0, lam = s.lambda0, xe, le;
        Candidate best{(x - target).norm(), theta, 0.0};
        const int steps = static_cast<int>(std::ceil(settings.max_backward_time / settings.backward_step));
        const double h = settings.max_backward_time / steps;
        for (int k = 1; k <= steps; ++k) {
            backward(x, lam, h, h, nullptr, nullptr, xe, le);
            x = xe;
            lam = le;
            if (!x.allFinite() || x.norm() > escape) {
                break;
            }
            const double d = (x - target).norm();
            if (d < best.dist) {
                best = {d, theta, k * h};
            }
        }
        candidates.push_back(best);
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const Candidate& a, const Candidate& b) { return a.dist < b.dist; });

    auto residual = [&](const Vector& params) -> Vector {
        if (!(params(1) >= 0.0) || params(1) > 2.0 * settings.max_backward_time) {
            return Vector::Constant(n, std::numeric_limits<double>::infinity());
        }
        try {
            const Seed s = seedAt(params(0));
            Vector xe, le;
            backward(s.x0, s.lambda0, params(1), settings.backward_step, nullptr, nullptr, xe, le);
            return xe - target;
        } catch (const std::runtime_error&) {
            return Vector::Constant(n, std::numeric_limits<double>::infinity());
        }
    };

    double best_res = std::numeric_limits<double>::infinity();
    const int attempts = std::min<int>(5, static_cast<int>(candidates.size()));
    for (int a = 0; a < attempts; ++a) {
        const Vector start{{candidates[a].theta, candidates[a].shift}};
        auto [params, res] = solveLeastSquares(start, residual, Vector{{1e-7, 1e-7}});
        best_res = std::min(best_res, res);
        if (res <= settings.tolerance) {
            ManifoldSolution sol = assemble(seedAt(params(0)), params(1), settings.backward_step);
            sol.match_residual = res;
            return sol;
        }
    }
    throw MatchError("extendAndMatch: no manifold trajectory reaches the target; best residual " +
                         std::to_string(best_res),
                     best_res);
}

ManifoldSolution extendAndMatch(const HamiltonianSystem& sys, const Vector& target,
                                const MatchSettings& settings) {
    const StableManifold manifold(sys);
    return manifold.match(target, settings);
}

ManifoldSolution resampleUniform(const ManifoldSolution& sol, const HamiltonianSystem& sys,
                                 double step) {
    if (sol.t_grid.size() < 2 || !(step > 0.0)) {
        throw std::invalid_argument("resampleUniform: need at least two samples and step > 0");
    }
    ManifoldSolution out;
    out.xi = sol.xi;
    out.time_shift = sol.time_shift;
    out.match_residual = sol.match_residual;

    const double t0 = sol.t_grid.front();
    const double t1 = sol.t_grid.back();
    const int count = static_cast<int>(std::floor((t1 - t0) / step + 1e-9)) + 1;
    std::size_t i = 0;
    Vector dx0, dl0, dx1, dl1;
    for (int k = 0; k < count; ++k) {
        const double t = t0 + k * step;
        while (i + 2 < sol.t_grid.size() && sol.t_grid[i + 1] < t) {
            ++i;
        }
        const double ta = sol.t_grid[i];
        const double tb = sol.t_grid[i + 1];
        const double h = tb - ta;
        const double s = std::clamp((t - ta) / h, 0.0, 1.0);
        sys.canonicalRhs(sol.x_path[i], sol.lambda_path[i], dx0, dl0);
        sys.canonicalRhs(sol.x_path[i + 1], sol.lambda_path[i + 1], dx1, dl1);
        const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
        const double h10 = s * (1 - s) * (1 - s);
        const double h01 = s * s * (3 - 2 * s);
        const double h11 = s * s * (s - 1);
        Vector x = h00 * sol.x_path[i] + h10 * h * dx0 + h01 * sol.x_path[i + 1] + h11 * h * dx1;
        Vector l = h00 * sol.lambda_path[i] + h10 * h * dl0 + h01 * sol.lambda_path[i + 1] +
                   h11 * h * dl1;
        out.t_grid.push_back(t);
        out.u_path.push_back(sys.optimalInput(x, l));
        out.x_path.push_back(std::move(x));
        out.lambda_path.push_back(std::move(l));
    }
    return out;
}

} // namespace vilqr
