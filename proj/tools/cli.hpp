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

#ifndef VILQR_TOOLS_CLI_HPP
#define VILQR_TOOLS_CLI_HPP

#include <ostream>

namespace vilqr {

enum ExitCode { kExitOk = 0, kExitConfigError = 1, kExitSolverFailure = 2 };

/**
 * @brief Entry point of vilqr_exp, callable in-process.
 *
 *   vilqr_exp trajopt --config FILE --out DIR [--backend euler|variational]
 *   vilqr_exp mpc     --config FILE --out DIR [--backend ...]
 *   vilqr_exp oracle  --config FILE --out FILE
 *   vilqr_exp sweep   --config FILE --out DIR [--backend ...]
 */
int runCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace vilqr

#endif // VILQR_TOOLS_CLI_HPP
