// Copyright 2026 The ghzft Authors
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

#ifndef GHZFT_CLI_H
#define GHZFT_CLI_H

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ghzft/encodings.h"
#include "ghzft/montecarlo.h"

namespace ghzft {

constexpr const char *kToolVersion = "0.1.0";
constexpr uint64_t kDefaultSeed = 20260101;

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 2,
    kExitInvariant = 3,
    kExitWorkCap = 4,
};

/// Default scan window for the built-in encodings under the NL model.
std::optional<std::pair<double, double>> default_window(const EncodingSpec &spec);

/// Encodings of the threshold table, smallest first.
std::vector<EncodingSpec> table_encodings(bool include_large);

/// Quotes a CSV field when it contains a comma, quote or newline.
std::string csv_field(const std::string &text);
std::string csv_header(bool per_lattice);
std::string csv_row(const PointResult &p, bool per_lattice);

/// Runs the command line `args` (without the program name).
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace ghzft

#endif
