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

#ifndef VIBRONIC_SPECTRUM_H_
#define VIBRONIC_SPECTRUM_H_

#include <cstddef>
#include <ostream>
#include <span>
#include <string_view>
#include <vector>

#include "vibronic/fock.h"

namespace vibronic {

// Transitions merge only on exact degeneracy by default.
inline constexpr double kDefaultMergeTolerance = 1e-6;  // cm^-1

// Sticks weaker than this are left out of the list but still counted in
// StickSpectrum::total_intensity.
inline constexpr double kMinStickIntensity = 1e-12;

struct Stick {
  double frequency = 0.0;  // cm^-1
  double intensity = 0.0;
  std::vector<FockIndex> assignment;
};

struct StickSpectrum {
  std::vector<Stick> sticks;  // ascending frequency
  double offset = 0.0;        // cm^-1
  // Sum over every final Fock state, including the dropped weak ones.
  double total_intensity = 0.0;

  double stick_sum() const;
  double max_intensity() const;
};

// One stick per final Fock state m at offset + sum_k m_k omega'_k with
// weight |<m|psi>|^2.
StickSpectrum stick_spectrum(const TruncatedState& state,
                             std::span<const double> omega_final,
                             double offset = 0.0,
                             double merge_tol = kDefaultMergeTolerance);

// Sorts and coalesces sticks whose neighbours lie within merge_tol of each
// other. Intensities add; the merged frequency is intensity-weighted.
std::vector<Stick> merge_sticks(std::vector<Stick> sticks, double merge_tol);

enum class WidthKind { kFwhm, kStddev };

std::string_view to_string(WidthKind kind);
// "fwhm" | "stddev"; throws ConfigurationError otherwise.
WidthKind parse_width_kind(std::string_view name);
double gaussian_sigma(double width, WidthKind kind);

struct BroadenedCurve {
  std::vector<double> grid;    // cm^-1, uniform
  std::vector<double> values;  // intensity per cm^-1
  double width = 0.0;
  WidthKind width_kind = WidthKind::kFwhm;

  // Trapezoid rule over the grid.
  double integral() const;
};

// Gaussian convolution of the sticks on a grid aligned to multiples of
// grid_step that extends five widths past the outermost sticks.
BroadenedCurve broaden(const StickSpectrum& sticks, double width,
                       WidthKind kind, double grid_step);

// Same, on a caller-supplied grid.
BroadenedCurve broaden_onto(const StickSpectrum& sticks, double width,
                            WidthKind kind, std::span<const double> grid);

struct StickDeviation {
  double frequency_a = 0.0;
  double frequency_b = 0.0;
  double intensity_a = 0.0;
  double intensity_b = 0.0;
  double deviation() const;
};

struct SpectrumComparison {
  std::vector<StickDeviation> matched;
  double max_intensity_deviation = 0.0;
  // Total intensity of sticks in either spectrum without a partner.
  double unmatched_mass = 0.0;
  // Largest single unmatched stick.
  double max_unmatched_intensity = 0.0;
};

// Greedy nearest-frequency matching, strongest sticks of `a` first.
SpectrumComparison compare_spectra(const StickSpectrum& a,
                                   const StickSpectrum& b, double freq_tol);

// Tab-separated with a header row:
//   frequency_cm-1  intensity  intensity_maxnorm  assignment
// assignment lists the contributing Fock states joined by ';'.
void write_stick_table(std::ostream& out, const StickSpectrum& spectrum);

// Tab-separated: frequency_cm-1  value
void write_curve_table(std::ostream& out, const BroadenedCurve& curve);

}  // namespace vibronic

#endif  // VIBRONIC_SPECTRUM_H_
