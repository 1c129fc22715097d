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

#include "vilqr/experiments.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <thread>

#include "vilqr/metrics.hpp"

#ifndef VILQR_BUILD_TAG
#define VILQR_BUILD_TAG "unknown"
#endif

namespace vilqr {

namespace {

// Runs job(i) for i in [0, count) on up to `workers` threads.
void parallelFor(std::size_t count, int workers, const std::function<void(std::size_t)>& job) {
    const std::size_t threads = std::min<std::size_t>(static_cast<std::size_t>(std::max(workers, 1)), count);
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            job(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t w = 0; w < threads; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                job(i);
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
}

double mean(const std::vector<double>& v) {
    if (v.empty()) {
        return 0.0;
    }
    double s = 0.0;
    for (double x : v) {
        s += x;
    }
    return s / static_cast<double>(v.size());
}

Vector interpolateInput(const ManifoldSolution& oracle, double t) {
    const auto& tg = oracle.t_grid;
    if (t <= tg.front()) {
        return oracle.u_path.front();
    }
    if (t >= tg.back()) {
        return oracle.u_path.back();
    }
    const auto it = std::upper_bound(tg.begin(), tg.end(), t);
    const std::size_t hi = static_cast<std::size_t>(it - tg.begin());
    const double w = (t - tg[hi - 1]) / (tg[hi] - tg[hi - 1]);
    return (1.0 - w) * oracle.u_path[hi - 1] + w * oracle.u_path[hi];
}

std::string statusCell(bool ok, const std::string& error) {
    return ok ? "ok" : "error: " + error;
}

std::string str(Backend b) {
    return std::string(toString(b));
}

} // namespace

std::string buildTag() {
    return VILQR_BUILD_TAG;
}

std::string provenance(const ExperimentConfig& config, const std::string& backend) {
    return "cfg=" + config.hash() + ";backend=" + backend + ";build=" + buildTag();
}

const std::vector<std::string>& timingColumns() {
    static const std::vector<std::string> cols{"mean_iter_time", "n_iter_max", "feasible"};
    return cols;
}

// --- oracle ---------------------------------------------------------------

ManifoldSolution computeOracle(const ExperimentConfig& config) {
    const Pendulum model(config.pendulum);
    const CostModel cost = config.costModel();
    const HamiltonianSystem sys(model, cost.Qs, cost.R);
    const StableManifold manifold(sys);
    const ManifoldSolution native = manifold.match(config.initialState(), config.matchSettings());
    return resampleUniform(native, sys, config.oracle_export_step);
}

CsvTable oracleTable(const ManifoldSolution& oracle) {
    return trajectoryTable(oracle.t_grid, oracle.x_path, oracle.u_path);
}

ManifoldSolution oracleFromTable(const CsvTable& table) {
    const std::size_t ct = table.column("t");
    const std::size_t c1 = table.column("x1");
    const std::size_t c2 = table.column("x2");
    const std::size_t cu = table.column("u");
    ManifoldSolution sol;
    for (const auto& row : table.rows) {
        sol.t_grid.push_back(parseDouble(row[ct]));
        sol.x_path.push_back(Vector{{parseDouble(row[c1]), parseDouble(row[c2])}});
        sol.u_path.push_back(Vector::Constant(1, parseDouble(row[cu])));
    }
    if (sol.t_grid.empty()) {
        throw CsvError("oracle table has no samples");
    }
    return sol;
}

std::filesystem::path oracleCachePath(const ExperimentConfig& config, const std::filesystem::path& dir) {
    return dir / ("oracle_" + config.oracleHash() + ".csv");
}

ManifoldSolution loadOrComputeOracle(const ExperimentConfig& config, const std::filesystem::path& dir,
                                     bool* computed) {
    const auto path = oracleCachePath(config, dir);
    const bool exists = std::filesystem::exists(path);
    if (!exists) {
        writeCsv(path, oracleTable(computeOracle(config)));
    }
    if (computed) {
        *computed = !exists;
    }
    return oracleFromTable(readCsv(path));
}

// --- open-loop trajectory optimization -------------------------------------

const TrajoptCell* TrajoptReport::find(double dt, Backend backend) const {
    for (const auto& c : cells) {
        if (c.backend == backend && std::abs(c.dt - dt) < 1e-12) {
            return &c;
        }
    }
    return nullptr;
}

TrajoptReport runTrajoptExperiment(const ExperimentConfig& config, const ManifoldSolution* oracle) {
    config.validate();
    TrajoptReport report;
    for (Backend b : config.backends) {
        for (double dt : config.trajopt_dt_list) {
            TrajoptCell cell;
            cell.dt = dt;
            cell.backend = b;
            cell.horizon = static_cast<int>(std::lround(config.trajopt_horizon_time / dt));
            report.cells.push_back(std::move(cell));
        }
    }

    const Pendulum model(config.pendulum);
    const CostModel cost = config.costModel();
    const Vector x0 = config.initialState();
    parallelFor(report.cells.size(), config.workers, [&](std::size_t i) {
        TrajoptCell& cell = report.cells[i];
        try {
            const Discretizer disc(model, cell.backend, cell.dt, config.integrator());
            const std::vector<Vector> U0(cell.horizon, Vector::Zero(model.inputDim()));
            OptimizeResult r = optimize(disc, cost, x0, U0, config.solverSettings(config.trajopt_n_iter));
            cell.trajectory = std::move(r.trajectory);
            cell.initial_cost = r.initial_cost;
            cell.cost_history = std::move(r.cost_history);
            cell.iter_times = std::move(r.iter_times);
            if (oracle) {
                cell.mse_to_oracle = mseToReference(cell.trajectory.X, cell.dt, *oracle);
            }
            cell.ok = true;
        } catch (const std::exception& e) {
            cell.ok = false;
            cell.error = e.what();
        }
    });
    return report;
}

int iterationsToWithin(double initial, const std::vector<double>& history, double rel) {
    if (history.empty()) {
        return 0;
    }
    const double target = history.back();
    const double band = rel * std::abs(target);
    int k = static_cast<int>(history.size());
    // Walk back while the tail stays inside the band.
    while (k > 0 && std::abs(history[k - 1] - target) <= band) {
        --k;
    }
    if (k == 0 && std::abs(initial - target) > band) {
        return 1;
    }
    return k == 0 ? 0 : k + 1;
}

CsvTable trajoptSummaryTable(const TrajoptReport& report, const ExperimentConfig& config) {
    CsvTable t;
    t.header = {"dt", "backend", "horizon", "final_cost", "terminal_norm", "mse_to_oracle",
                "iterations_to_1pct", "mean_iter_time", "status", "provenance"};
    for (const auto& c : report.cells) {
        const bool has = c.ok && !c.trajectory.X.empty();
        t.rows.push_back({formatDouble(c.dt), str(c.backend), std::to_string(c.horizon),
                          has ? formatDouble(c.cost_history.back()) : "",
                          has ? formatDouble(c.trajectory.X.back().norm()) : "",
                          has && std::isfinite(c.mse_to_oracle) ? formatDouble(c.mse_to_oracle) : "",
                          has ? std::to_string(iterationsToWithin(c.initial_cost, c.cost_history, 0.01)) : "",
                          has ? formatDouble(mean(c.iter_times)) : "", statusCell(c.ok, c.error),
                          provenance(config, str(c.backend))});
    }
    return t;
}

CsvTable costHistoryTable(const TrajoptReport& report, const ExperimentConfig& config) {
    CsvTable t;
    t.header = {"dt", "backend", "iteration", "cost", "provenance"};
    for (const auto& c : report.cells) {
        if (!c.ok) {
            continue;
        }
        const std::string prov = provenance(config, str(c.backend));
        t.rows.push_back({formatDouble(c.dt), str(c.backend), "0", formatDouble(c.initial_cost), prov});
        for (std::size_t k = 0; k < c.cost_history.size(); ++k) {
            t.rows.push_back({formatDouble(c.dt), str(c.backend), std::to_string(k + 1),
                              formatDouble(c.cost_history[k]), prov});
        }
    }
    return t;
}

// --- closed-loop sweep -----------------------------------------------------

const ErrorRow* ErrorTable::find(double dt, int n_iter, Backend backend) const {
    for (const auto& r : rows) {
        if (r.backend == backend && r.n_iter == n_iter && std::abs(r.dt - dt) < 1e-12) {
            return &r;
        }
    }
    return nullptr;
}

ErrorTable runMpcSweep(const ExperimentConfig& config, const ManifoldSolution& oracle) {
    config.validate();
    ErrorTable table;
    for (Backend b : config.backends) {
        for (double dt : config.mpc_dt_list) {
            for (int n : config.mpc_n_iter_list) {
                ErrorRow row;
                row.dt = dt;
                row.n_iter = n;
                row.backend = b;
                table.rows.push_back(std::move(row));
            }
        }
    }

    const Pendulum model(config.pendulum);
    const CostModel cost = config.costModel();
    const Vector x0 = config.initialState();
    int max_rows = 1;
    for (int n : config.mpc_n_iter_list) {
        max_rows = std::max(max_rows, n);
    }

    parallelFor(table.rows.size(), config.workers, [&](std::size_t i) {
        ErrorRow& row = table.rows[i];
        try {
            const MpcConfig mpc = config.mpcConfig(row.dt, row.n_iter, row.backend);
            row.closed_loop = simulateClosedLoop(model, cost, x0, mpc);
            const ClosedLoopResult& cl = row.closed_loop;
            for (bool f : cl.step_failed) {
                row.failed_steps += f ? 1 : 0;
            }
            if (cl.terminated_early) {
                throw std::runtime_error(cl.message);
            }
            row.mse = mseToReference(cl, oracle);
            const FeasibilityReport feas = feasibilityReport(cl, row.dt, max_rows);
            row.mean_iter_time = feas.iter_time;
            row.n_iter_max = feas.n_iter_max;
            row.feasible = feas.feasible(row.n_iter);
            row.ok = true;
        } catch (const std::exception& e) {
            row.ok = false;
            row.error = e.what();
        }
    });
    return table;
}

CsvTable errorTableCsv(const ErrorTable& table, const ExperimentConfig& config) {
    CsvTable t;
    t.header = {"dt", "n_iter", "backend", "mse", "failed_steps", "mean_iter_time", "n_iter_max",
                "feasible", "status", "provenance"};
    for (const auto& r : table.rows) {
        t.rows.push_back({formatDouble(r.dt), std::to_string(r.n_iter), str(r.backend),
                          r.ok ? formatDouble(r.mse) : "", std::to_string(r.failed_steps),
                          r.ok ? formatDouble(r.mean_iter_time) : "", r.ok ? std::to_string(r.n_iter_max) : "",
                          r.ok ? (r.feasible ? "1" : "0") : "", statusCell(r.ok, r.error),
                          provenance(config, str(r.backend))});
    }
    return t;
}

// --- oracle cost cross-check -----------------------------------------------

OracleCrossCheck crossCheckOracle(const ExperimentConfig& config, const ManifoldSolution& oracle,
                                  double dt, double horizon_time, int n_iter) {
    const Pendulum model(config.pendulum);
    CostModel cost = config.costModel();
    const HamiltonianSystem sys(model, cost.Qs, cost.R);
    const Matrix gamma = solveRiccatiContinuous(sys.A(), sys.rbar(Vector::Zero(2)), cost.Qs);

    OracleCrossCheck out;
    out.dt = dt;
    out.horizon = static_cast<int>(std::lround(horizon_time / dt));
    if (oracle.t_grid.back() < out.horizon * dt) {
        throw MetricError("crossCheckOracle: oracle window shorter than the ILQR horizon");
    }

    // Unweighted discrete sum ~ (1/dt) int l dt, so the value-function tail scales the same way.
    cost.Qf = gamma / dt;
    const Discretizer disc(model, Backend::Variational, dt, config.integrator());
    const int N = out.horizon;

    Trajectory guess;
    guess.dt = dt;
    for (int i = 0; i <= N; ++i) {
        guess.X.push_back(interpolateState(oracle, i * dt));
        if (i < N) {
            guess.U.push_back(interpolateInput(oracle, (i + 0.5) * dt));
        }
    }
    std::vector<StepLinearization> lins(N);
    std::vector<CostDerivatives> derivs(N);
    for (int i = 0; i < N; ++i) {
        lins[i] = disc.linearize(guess.X[i], guess.U[i]);
        derivs[i] = costDerivatives(guess.X[i], guess.U[i], cost);
    }
    BackwardPassResult bp = backwardPass(lins, derivs, terminalExpansion(guess.X.back(), cost), config.mu);
    for (auto& d : bp.gains.d) {
        d.setZero();
    }
    const Vector x0 = config.initialState();
    const Trajectory tracked = forwardPass(disc, guess, bp.gains, 1.0, x0);

    const OptimizeResult r = optimize(disc, cost, x0, tracked.U, config.solverSettings(n_iter));
    out.ilqr_cost = continuousCost(model, cost, r.trajectory, 20, &gamma);
    out.terminal_norm = r.trajectory.X.back().norm();
    out.oracle_cost = oracle.cost(cost.Qs, cost.R);
    return out;
}

CsvTable crossCheckTable(const OracleCrossCheck& check, const ExperimentConfig& config) {
    CsvTable t;
    t.header = {"dt", "horizon", "oracle_cost", "ilqr_cost", "ratio", "terminal_norm", "provenance"};
    t.rows.push_back({formatDouble(check.dt), std::to_string(check.horizon), formatDouble(check.oracle_cost),
                      formatDouble(check.ilqr_cost), formatDouble(check.ilqr_cost / check.oracle_cost),
                      formatDouble(check.terminal_norm), provenance(config, "variational")});
    return t;
}

} // namespace vilqr
