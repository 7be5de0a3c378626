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

#ifndef VIBRONIC_PARAM_FILE_H_
#define VIBRONIC_PARAM_FILE_H_

#include <filesystem>
#include <istream>
#include <optional>
#include <string>

#include "vibronic/doktorov.h"

namespace vibronic {

// Molecular parameter file: one `key = value` per line, '#' starts a
// comment. Vectors are comma or space separated; matrix rows are separated
// by ';'. Recognised keys:
//
//   name           free text
//   omega_initial  initial-state frequencies, cm^-1        (required)
//   omega_final    final-state frequencies, cm^-1          (required)
//   duschinsky     row-major N x N matrix                  (required)
//   delta          dimensionless displacement              (delta or d)
//   d              mass-weighted displacement              (delta or d)
//   unit_system    amu_angstrom | atomic, for d
//   omega_00       offset frequency, cm^-1 (default 0)
//   scale          squeezing rescale constant (default 25)
struct ParamFile {
  MolecularParams params;
  std::optional<double> scale;
};

// Throws ParseError naming the line and field on malformed input.
ParamFile parse_param_file(std::istream& in,
                           const std::string& source = "<input>");
ParamFile load_param_file(const std::filesystem::path& path);

}  // namespace vibronic

#endif  // VIBRONIC_PARAM_FILE_H_
