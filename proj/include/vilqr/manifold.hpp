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

#ifndef VILQR_MANIFOLD_HPP
#define VILQR_MANIFOLD_HPP

#include <stdexcept>
#include <vector>

#include "vilqr/dynamics.hpp"

namespace vilqr {

/**
 * @brief Hamiltonian of the infinite-horizon problem
 *   min int x'Qx + u'Ru dt,  xdot = f(x) + g(x) u.
 *
 *   H(x, lambda) = lambda' f(x) - 1/4 lambda' g R^-1 g' lambda + x' Q x
 *
 * with lambda = dV/dx and the minimizing input u* = -1/2 R^-1 g' lambda.
 */
class HamiltonianSystem {
public:
    /// Holds a non-owning reference to `model`, which must satisfy f(0) = 0.
    HamiltonianSystem(const InputAffineModel& model, Matrix Q, Matrix R);

    int dim() const { return n_; }
    const Matrix& A() const { return A_; }
    const Matrix& Q() const { return Q_; }
    const Matrix& R() const { return R_; }
    const InputAffineModel& model() const { return *model_; }

    /// g(x) R^-1 g(x)'.
    Matrix rbar(const Vector& x) const;

    double hamiltonian(const Vector& x, const Vector& lambda) const;

    /// Canonical equations xdot = dH/dlambda, lambdadot = -dH/dx.
    void canonicalRhs(const Vector& x, const Vector& lambda, Vector& xdot, Vector& lambdadot) const;

    Vector optimalInput(const Vector& x, const Vector& lambda) const;

    /// Linearization of the canonical equations at the origin, [[A, -Rbar0/2], [-2Q, -A']].
    Matrix linearPart() const;

private:
    const InputAffineModel* model_;
    int n_;
    Matrix Q_;
    Matrix R_;
    Matrix R_inv_;
    Matrix A_;
};

/// |H(x, lambda)|.
double hjbResidual(const HamiltonianSystem& sys, const Vector& x, const Vector& lambda);

class RiccatiError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * @brief Stabilizing solution Gamma of A'G + GA - G Rbar0 G + Q = 0.
 *
 * The stable manifold of the linearized canonical equations is
 * lambda = 2 Gamma x and F = A - Rbar0 Gamma is Hurwitz. Solved with the
 * scaled matrix-sign-function iteration on the Hamiltonian matrix.
 */
Matrix solveRiccatiContinuous(const Matrix& A, const Matrix& Rbar0, const Matrix& Q);

/**
 * @brief Transform T with T^-1 Hlin T = blkdiag(F, -F').
 *
 *   T = [[I, S], [2 Gamma, I + 2 Gamma S]],  F S + S F' = Rbar0 / 2.
 *
 * det T = 1, so T is always invertible once S exists.
 */
Matrix buildTransform(const Matrix& A, const Matrix& Rbar0, const Matrix& Gamma);

struct PicardSettings {
    int k_max = 200;
    double t_end = 6.0;
    int grid_points = 2000;
    double tol = 1e-9;  ///< sup-norm change between successive iterates
};

/// Iterates on a uniform grid; q, p are the transformed coordinates.
struct ManifoldIterate {
    std::vector<double> t_grid;
    std::vector<Vector> q;
    std::vector<Vector> p;
    Vector xi;
    int iterations = 0;
    bool converged = false;
    std::vector<double> diff_history;  ///< sup-norm difference per iteration
};

class DivergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * @brief Successive approximation of a stable-manifold trajectory.
 *
 *   q_{k+1}(t) = e^{Ft} xi + int_0^t e^{F(t-s)} n_s ds
 *   p_{k+1}(t) = -int_t^inf e^{-F'(t-s)} n_u ds
 *
 * starting from q_0 = e^{Ft} xi, p_0 = 0. Integrals use the composite
 * trapezoidal rule on the grid, evaluated recursively; the p integral is
 * truncated at t_end. Throws DivergenceError when the iterate difference
 * grows three times in a row.
 */
ManifoldIterate picardIterate(const HamiltonianSystem& sys, const Matrix& F, const Matrix& T,
                              const Vector& xi, const PicardSettings& settings);

/// Sampled optimal trajectory; t_grid starts at 0 where x = x0.
struct ManifoldSolution {
    std::vector<double> t_grid;
    std::vector<Vector> x_path;
    std::vector<Vector> lambda_path;
    std::vector<Vector> u_path;
    Vector xi;                  ///< seed of the Picard segment
    double time_shift = 0.0;    ///< length of the backward-extended segment [s]
    double match_residual = 0.0;

    /// int x'Qx + u'Ru dt by the trapezoidal rule over the samples.
    double cost(const Matrix& Q, const Matrix& R) const;
};

struct MatchSettings {
    PicardSettings picard;
    double seed_radius = 0.05;      ///< |xi| for targets outside the local patch
    int scan_count = 180;           ///< seed angles tried before refinement
    double max_backward_time = 4.0; ///< [s]
    double backward_step = 2.5e-4;  ///< RK4 step for the backward extension [s]
    double tolerance = 1e-4;        ///< required |x(0) - target|
    int max_iterations = 100;       ///< damped least-squares iterations
};

class MatchError : public std::runtime_error {
public:
    MatchError(const std::string& what, double best_residual);
    double bestResidual() const { return best_residual_; }

private:
    double best_residual_;
};

/**
 * @brief Builds the stable-manifold structure for one Hamiltonian system.
 *
 * Targets inside the seed radius are matched directly through the seed xi.
 * Farther targets use a seed on the circle |xi| = seed_radius whose Picard
 * trajectory is extended backward in time along the canonical flow; the
 * seed angle and the backward time are fitted by damped least squares,
 * initialized from a scan over angles.
 */
class StableManifold {
public:
    explicit StableManifold(const HamiltonianSystem& sys);

    const HamiltonianSystem& system() const { return *sys_; }
    const Matrix& gamma() const { return gamma_; }
    const Matrix& F() const { return F_; }
    const Matrix& T() const { return T_; }
    const Matrix& Tinv() const { return T_inv_; }

    ManifoldIterate picard(const Vector& xi, const PicardSettings& settings) const;

    ManifoldSolution match(const Vector& target, const MatchSettings& settings) const;

private:
    struct Seed {
        ManifoldIterate iterate;
        Vector x0;
        Vector lambda0;
    };

    Seed seed(const Vector& xi, const PicardSettings& settings) const;
    void backward(const Vector& x, const Vector& lambda, double duration, double max_step,
                  std::vector<Vector>* xs, std::vector<Vector>* lambdas, Vector& x_end,
                  Vector& lambda_end) const;
    ManifoldSolution assemble(const Seed& s, double shift, double max_step) const;

    const HamiltonianSystem* sys_;
    Matrix gamma_;
    Matrix F_;
    Matrix T_;
    Matrix T_inv_;
};

/// Convenience wrapper over StableManifold::match.
ManifoldSolution extendAndMatch(const HamiltonianSystem& sys, const Vector& target,
                                const MatchSettings& settings = {});

/**
 * @brief Resamples onto a uniform grid with cubic Hermite interpolation.
 *
 * Slopes come from the canonical equations, u is recomputed from (x, lambda).
 */
ManifoldSolution resampleUniform(const ManifoldSolution& sol, const HamiltonianSystem& sys,
                                 double step);

} // namespace vilqr

#endif // VILQR_MANIFOLD_HPP
