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

#ifndef VILQR_EXPERIMENTS_HPP
#define VILQR_EXPERIMENTS_HPP

#include <filesystem>
#include <limits>
#include <string>
#include <vector>

#include "vilqr/config.hpp"
#include "vilqr/csv.hpp"
#include "vilqr/manifold.hpp"

namespace vilqr {

/// git-describe style tag baked in at configure time.
std::string buildTag();

/// "cfg=<hash>;backend=<name>;build=<tag>", the trailing metadata column of every table.
std::string provenance(const ExperimentConfig& config, const std::string& backend);

/// Columns that hold wall-clock measurements and are excluded from determinism checks.
const std::vector<std::string>& timingColumns();

// --- oracle ---------------------------------------------------------------

/// Matched stable-manifold trajectory from x0, resampled on the export grid.
ManifoldSolution computeOracle(const ExperimentConfig& config);

CsvTable oracleTable(const ManifoldSolution& oracle);

/// Parses t, x1, x2, u columns; lambda_path stays empty.
ManifoldSolution oracleFromTable(const CsvTable& table);

std::filesystem::path oracleCachePath(const ExperimentConfig& config, const std::filesystem::path& dir);

/**
 * @brief Reads oracle_<hash>.csv from `dir`, computing and writing it first if absent.
 *
 * The returned trajectory is always the parsed file, so cached and fresh runs agree.
 */
ManifoldSolution loadOrComputeOracle(const ExperimentConfig& config, const std::filesystem::path& dir,
                                     bool* computed = nullptr);

// --- open-loop trajectory optimization -------------------------------------

struct TrajoptCell {
    double dt = 0.0;
    Backend backend = Backend::Variational;
    int horizon = 0;
    bool ok = false;
    std::string error;
    Trajectory trajectory;
    double initial_cost = 0.0;
    std::vector<double> cost_history;
    std::vector<double> iter_times;
    double mse_to_oracle = std::numeric_limits<double>::quiet_NaN();
};

struct TrajoptReport {
    std::vector<TrajoptCell> cells;  ///< ordered by backend, then dt

    const TrajoptCell* find(double dt, Backend backend) const;
};

/**
 * @brief ILQR from U = 0 for every (dt, backend); N = round(horizon_time / dt).
 *
 * Solver errors are recorded per cell. mse_to_oracle is filled when an
 * oracle is supplied.
 */
TrajoptReport runTrajoptExperiment(const ExperimentConfig& config, const ManifoldSolution* oracle = nullptr);

/**
 * @brief Iterations needed before the cost stays within rel of its final value.
 *
 * history[k] is the cost after k + 1 iterations, `initial` the cost before
 * the first; returns 0 if the initial cost already qualifies.
 */
int iterationsToWithin(double initial, const std::vector<double>& history, double rel);

CsvTable trajoptSummaryTable(const TrajoptReport& report, const ExperimentConfig& config);
CsvTable costHistoryTable(const TrajoptReport& report, const ExperimentConfig& config);

// --- closed-loop sweep -----------------------------------------------------

struct ErrorRow {
    double dt = 0.0;
    int n_iter = 0;
    Backend backend = Backend::Variational;
    bool ok = false;
    std::string error;
    double mse = std::numeric_limits<double>::quiet_NaN();
    int failed_steps = 0;
    double mean_iter_time = 0.0;
    int n_iter_max = 0;
    bool feasible = false;
    ClosedLoopResult closed_loop;
};

struct ErrorTable {
    std::vector<ErrorRow> rows;  ///< ordered by backend, dt, n_iter

    const ErrorRow* find(double dt, int n_iter, Backend backend) const;
};

/**
 * @brief Closed-loop run and oracle MSE for every (dt, n_iter, backend).
 *
 * Cells run on up to config.workers threads. A failing cell is marked and
 * the sweep continues.
 */
ErrorTable runMpcSweep(const ExperimentConfig& config, const ManifoldSolution& oracle);

CsvTable errorTableCsv(const ErrorTable& table, const ExperimentConfig& config);

// --- oracle cost cross-check -----------------------------------------------

struct OracleCrossCheck {
    double dt = 0.0;
    int horizon = 0;
    double oracle_cost = 0.0;  ///< infinite-horizon integral along the oracle
    double ilqr_cost = 0.0;    ///< continuous cost of the converged ILQR trajectory plus x_N' Gamma x_N
    double terminal_norm = 0.0;
};

/**
 * @brief Long-horizon VE ILQR compared against the oracle cost.
 *
 * Terminal weight Gamma / dt stands in for the infinite tail. The solver
 * starts from an LQR-tracking rollout of the oracle inputs and then
 * iterates freely.
 */
OracleCrossCheck crossCheckOracle(const ExperimentConfig& config, const ManifoldSolution& oracle,
                                  double dt = 0.01, double horizon_time = 2.0, int n_iter = 200);

CsvTable crossCheckTable(const OracleCrossCheck& check, const ExperimentConfig& config);

} // namespace vilqr

#endif // VILQR_EXPERIMENTS_HPP
