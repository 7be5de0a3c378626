// Copyright 2026 The Vibronic Authors
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


#ifndef VIBRONIC_TOOLS_CLI_H_
#define VIBRONIC_TOOLS_CLI_H_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "vibronic/ion_device.h"
#include "vibronic/spectrum.h"

namespace vibronic::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // I/O and anything unexpected
inline constexpr int kExitInput = 2;    // bad flags, unreadable or malformed files
inline constexpr int kExitNumeric = 3;  // cutoff cap hit
inline constexpr int kExitModel = 4;    // physically invalid request

inline constexpr char kOutputDirEnv[] = "VIBRONIC_OUTPUT_DIR";
inline constexpr char kDefaultOutputDir[] = "vibronic-output";

struct EmitFlags {
  bool sticks = true;
  bool curve = true;
  bool raw_vs_corrected = true;
  bool pulse_plan = false;
};

struct RunConfig {
  std::filesystem::path input_path;
  std::vector<int> cutoffs;  // empty: auto-cutoff
  int auto_initial_cutoff = 8;
  int auto_max_cutoff = 64;
  double leakage_tolerance = 1e-6;
  std::optional<double> scale;  // falls back to the file, then 25
  double broaden_width = 50.0;  // cm^-1
  WidthKind width_kind = WidthKind::kFwhm;
  double grid_step = 1.0;  // cm^-1
  DeviceConfig device;
  std::filesystem::path fdm_table;
  std::optional<double> fdm_per_pulse;
  std::optional<std::filesystem::path> output_dir;  // from the flag
  EmitFlags emit;
  bool omit_zero_pulses = false;
  bool json = false;
};

// Flag beats environment beats default.
std::filesystem::path resolve_output_dir(const RunConfig& config,
                                         const char* env_value);

// Writes to a sibling temp file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& body);

// Entry point shared by main() and the tests. `env_output_dir` is the value
// of VIBRONIC_OUTPUT_DIR (null when unset).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const char* env_output_dir);

}  // namespace vibronic::cli

#endif  // VIBRONIC_TOOLS_CLI_H_
