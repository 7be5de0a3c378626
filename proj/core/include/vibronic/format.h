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

#ifndef VIBRONIC_FORMAT_H_
#define VIBRONIC_FORMAT_H_

#include <cstdio>
#include <string>

namespace vibronic {

// Locale-independent "%.*g" rendering used by every text output so that
// files are byte-stable across runs.
inline std::string format_double(double value, int significant = 12) {
  if (value == 0.0) return "0";  // folds -0
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", significant, value);
  return buf;
}

}  // namespace vibronic

#endif  // VIBRONIC_FORMAT_H_
