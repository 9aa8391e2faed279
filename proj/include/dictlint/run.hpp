// Copyright 2026 The dictlint Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dictlint/detectors.hpp"
#include "dictlint/report.hpp"

namespace dictlint {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SingleFieldSpec {
    std::string tag;
    std::vector<std::string> detectors;
};

struct TiedFieldSpec {
    std::string first_tag;
    std::string second_tag;
    std::vector<std::string> detectors;
};

struct RunConfig {
    std::string input_path;
    std::string entry_tag;
    bool deep_text = false;
    NormalizationOptions normalization;
    DetectorConfig detectors;
    std::vector<SingleFieldSpec> single_fields;
    std::vector<TiedFieldSpec> tied_fields;
    std::string output_path;  // empty writes to stdout
    ReportFormat output_format = ReportFormat::kJson;
};

/// Parses and validates a JSON run configuration. Unknown keys, invalid
/// detector ids for a spec kind, and out-of-range values raise ConfigError
/// listing the offenders. Omitted keys take their defaults.
RunConfig parse_config_json(std::string_view text);

RunConfig load_config(const std::string& path);

// Exit codes shared by run() and the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitInputError = 2;

struct RunResult {
    int exit_code = kExitOk;
    Report report;
    std::string serialized;              // report bytes in the configured format
    std::vector<std::string> warnings;   // diagnostics; never fatal
    std::vector<std::string> errors;     // reasons for a nonzero exit
};

/// End-to-end scan: ingest, detect, assemble, serialize, and (when
/// output_path is set) write the report. Output bytes are a deterministic
/// function of the input bytes and the configuration.
RunResult run(const RunConfig& config);

/// FNV-1a digest of the effective configuration, hex-encoded.
std::string config_digest(const RunConfig& config);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view bytes);

}  // namespace dictlint
