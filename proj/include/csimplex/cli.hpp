/*
 * Copyright 2026 The csimplex Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#ifndef CSIMPLEX_CLI_HPP
#define CSIMPLEX_CLI_HPP

#include <iosfwd>
#include <string>

namespace csimplex::cli {

// Process exit codes.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitInconclusive = 2;
inline constexpr int kExitNoConvergence = 3;
inline constexpr int kExitBadInput = 64;

/// Entry point of the csimplex tool. Output files go to --out; without it the
/// primary output goes to `out`. Diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Round-trip decimal formatting used for every CSV number.
std::string format_number(double v);

}  // namespace csimplex::cli

#endif  // CSIMPLEX_CLI_HPP
