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

#include "cli.hpp"

#include <cstdio>
#include <filesystem>
#include <string>

#include <CLI11.hpp>

#include "vilqr/config.hpp"
#include "vilqr/csv.hpp"
#include "vilqr/experiments.hpp"

namespace vilqr {

namespace {

namespace fs = std::filesystem;

struct Options {
    std::string config;
    std::string out;
    std::string backend;
};

std::string dtTag(double dt) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", dt);
    return buf;
}

ExperimentConfig loadWithOverrides(const Options& opt) {
    ExperimentConfig config = loadConfig(opt.config);
    if (!opt.backend.empty()) {
        try {
            config.backends = {parseBackend(opt.backend)};
        } catch (const std::invalid_argument&) {
            throw ConfigError("--backend: expected euler or variational, got '" + opt.backend + "'");
        }
    }
    config.validate();
    return config;
}

ManifoldSolution oracleFor(const ExperimentConfig& config, const fs::path& dir, std::ostream& out) {
    bool computed = false;
    ManifoldSolution oracle = loadOrComputeOracle(config, dir, &computed);
    out << (computed ? "oracle computed: " : "oracle cached: ") << oracleCachePath(config, dir).string()
        << "\n";
    return oracle;
}

int writeTrajopt(const ExperimentConfig& config, const fs::path& dir, const ManifoldSolution& oracle,
                 std::ostream& out, std::ostream& err) {
    const TrajoptReport report = runTrajoptExperiment(config, &oracle);
    writeCsv(dir / "trajopt_summary.csv", trajoptSummaryTable(report, config));
    writeCsv(dir / "trajopt_cost_history.csv", costHistoryTable(report, config));
    int failures = 0;
    for (const auto& c : report.cells) {
        if (!c.ok) {
            ++failures;
            err << "trajopt " << toString(c.backend) << " dt=" << c.dt << " failed: " << c.error << "\n";
            continue;
        }
        std::vector<double> t;
        for (std::size_t k = 0; k < c.trajectory.X.size(); ++k) {
            t.push_back(c.dt * static_cast<double>(k));
        }
        writeCsv(dir / "trajectories" /
                     ("trajopt_" + std::string(toString(c.backend)) + "_dt" + dtTag(c.dt) + ".csv"),
                 trajectoryTable(t, c.trajectory.X, c.trajectory.U));
    }
    out << "trajopt: " << report.cells.size() << " cells, " << failures << " failed\n";
    return failures;
}

int writeMpc(const ExperimentConfig& config, const fs::path& dir, const ManifoldSolution& oracle,
             std::ostream& out, std::ostream& err) {
    const ErrorTable table = runMpcSweep(config, oracle);
    writeCsv(dir / "mpc_error_table.csv", errorTableCsv(table, config));
    int failures = 0;
    for (const auto& r : table.rows) {
        if (!r.ok) {
            ++failures;
            err << "mpc " << toString(r.backend) << " dt=" << r.dt << " n_iter=" << r.n_iter
                << " failed: " << r.error << "\n";
        }
        const auto& cl = r.closed_loop;
        if (cl.states.empty()) {
            continue;
        }
        std::vector<double> t;
        for (std::size_t k = 0; k < cl.states.size(); ++k) {
            t.push_back(r.dt * static_cast<double>(k));
        }
        writeCsv(dir / "trajectories" /
                     ("mpc_" + std::string(toString(r.backend)) + "_dt" + dtTag(r.dt) + "_n" +
                      std::to_string(r.n_iter) + ".csv"),
                 trajectoryTable(t, cl.states, cl.inputs));
    }
    out << "mpc: " << table.rows.size() << " cells, " << failures << " failed\n";
    return failures;
}

} // namespace

int runCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Experiment harness for ILQR with variational-equation linearization"};
    app.require_subcommand(1);

    Options opt;
    auto addCommon = [&](CLI::App* sub, bool backend) {
        sub->add_option("--config", opt.config, "key=value configuration file")->required();
        sub->add_option("--out", opt.out, "output location")->required();
        if (backend) {
            sub->add_option("--backend", opt.backend, "restrict to one backend (euler|variational)");
        }
    };
    CLI::App* trajopt = app.add_subcommand("trajopt", "open-loop swing-up sweep over dt and backend");
    CLI::App* mpc = app.add_subcommand("mpc", "closed-loop MSE table over dt, n_iter and backend");
    CLI::App* oracle = app.add_subcommand("oracle", "stable-manifold reference trajectory as CSV");
    CLI::App* sweep = app.add_subcommand("sweep", "oracle, trajopt, mpc and the oracle cost cross-check");
    addCommon(trajopt, true);
    addCommon(mpc, true);
    addCommon(oracle, false);
    addCommon(sweep, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kExitConfigError;
    }

    ExperimentConfig config;
    try {
        config = loadWithOverrides(opt);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfigError;
    }

    try {
        if (oracle->parsed()) {
            const fs::path path(opt.out);
            writeCsv(path, oracleTable(computeOracle(config)));
            out << "oracle written: " << path.string() << "\n";
            return kExitOk;
        }

        const fs::path dir(opt.out);
        fs::create_directories(dir);
        const ManifoldSolution ref = oracleFor(config, dir, out);

        if (trajopt->parsed()) {
            return writeTrajopt(config, dir, ref, out, err) > 0 ? kExitSolverFailure : kExitOk;
        }
        if (mpc->parsed()) {
            return writeMpc(config, dir, ref, out, err) > 0 ? kExitSolverFailure : kExitOk;
        }

        // sweep: cell failures are recorded in the tables, never fatal.
        writeTrajopt(config, dir, ref, out, err);
        writeMpc(config, dir, ref, out, err);
        try {
            const OracleCrossCheck check = crossCheckOracle(config, ref);
            writeCsv(dir / "oracle_check.csv", crossCheckTable(check, config));
            out << "oracle check: oracle " << check.oracle_cost << ", ilqr " << check.ilqr_cost << "\n";
        } catch (const std::exception& e) {
            err << "oracle cross-check failed: " << e.what() << "\n";
        }
        return kExitOk;
    } catch (const CsvError& e) {
        err << "I/O error: " << e.what() << "\n";
        return kExitSolverFailure;
    } catch (const fs::filesystem_error& e) {
        err << "I/O error: " << e.what() << "\n";
        return kExitSolverFailure;
    } catch (const std::exception& e) {
        err << "solver failure: " << e.what() << "\n";
        return kExitSolverFailure;
    }
}

} // namespace vilqr
