// Copyright 2026 The oneway Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace oneway::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kUsage = 2,
  kFormat = 3,
  kNoConvergence = 4,
};

/// Runs one command line (args exclude the program name). Reports go to
/// `out`, diagnostics to `err`, and `--input -` reads `in`. Files are written
/// only where --out asks for them.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);
/// Same, with argv[0] skipped and standard input as `in`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace oneway::cli
