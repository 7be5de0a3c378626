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

#include "vibronic/spectrum.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "vibronic/errors.h"
#include "vibronic/format.h"

namespace vibronic {

double StickSpectrum::stick_sum() const {
  double total = 0.0;
  for (const Stick& s : sticks) total += s.intensity;
  return total;
}

double StickSpectrum::max_intensity() const {
  double best = 0.0;
  for (const Stick& s : sticks) best = std::max(best, s.intensity);
  return best;
}

std::vector<Stick> merge_sticks(std::vector<Stick> sticks, double merge_tol) {
  if (merge_tol < 0.0) {
    throw InvalidParameterError("merge tolerance must be non-negative");
  }
  std::stable_sort(sticks.begin(), sticks.end(),
                   [](const Stick& a, const Stick& b) {
                     return a.frequency < b.frequency;
                   });
  std::vector<Stick> merged;
  std::size_t i = 0;
  while (i < sticks.size()) {
    std::size_t j = i + 1;
    while (j < sticks.size() &&
           sticks[j].frequency - sticks[j - 1].frequency <= merge_tol) {
      ++j;
    }
    if (j == i + 1) {
      merged.push_back(std::move(sticks[i]));
    } else {
      Stick group;
      double weighted = 0.0;
      for (std::size_t k = i; k < j; ++k) {
        group.intensity += sticks[k].intensity;
        weighted += sticks[k].intensity * sticks[k].frequency;
        group.assignment.insert(group.assignment.end(),
                                sticks[k].assignment.begin(),
                                sticks[k].assignment.end());
      }
      group.frequency = group.intensity > 0.0 ? weighted / group.intensity
                                              : sticks[i].frequency;
      // Keep the representative inside the group's span.
      group.frequency = std::clamp(group.frequency, sticks[i].frequency,
                                   sticks[j - 1].frequency);
      merged.push_back(std::move(group));
    }
    i = j;
  }
  return merged;
}

StickSpectrum stick_spectrum(const TruncatedState& state,
                             std::span<const double> omega_final,
                             double offset, double merge_tol) {
  if (omega_final.size() != static_cast<std::size_t>(state.num_modes())) {
    throw InvalidDimensionError(
        "omega_final has " + std::to_string(omega_final.size()) +
        " entries but the state has " + std::to_string(state.num_modes()) +
        " modes");
  }
  StickSpectrum out;
  out.offset = offset;
  std::vector<Stick> sticks;
  std::span<const Complex> amps = state.amplitudes();
  for (std::size_t linear = 0; linear < amps.size(); ++linear) {
    const double p = std::norm(amps[linear]);
    out.total_intensity += p;
    if (p < kMinStickIntensity) continue;
    FockIndex index = state.index_at(linear);
    double frequency = offset;
    for (std::size_t k = 0; k < index.size(); ++k) {
      frequency += index[k] * omega_final[k];
    }
    sticks.push_back(Stick{frequency, p, {std::move(index)}});
  }
  out.sticks = merge_sticks(std::move(sticks), merge_tol);
  return out;
}

std::string_view to_string(WidthKind kind) {
  return kind == WidthKind::kFwhm ? "fwhm" : "stddev";
}

WidthKind parse_width_kind(std::string_view name) {
  if (name == "fwhm" || name == "FWHM") return WidthKind::kFwhm;
  if (name == "stddev" || name == "sigma") return WidthKind::kStddev;
  throw ConfigurationError("unknown width kind '" + std::string(name) +
                           "' (expected fwhm or stddev)");
}

double gaussian_sigma(double width, WidthKind kind) {
  if (kind == WidthKind::kStddev) return width;
  return width / (2.0 * std::sqrt(2.0 * std::numbers::ln2));
}

double BroadenedCurve::integral() const {
  double total = 0.0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    total += 0.5 * (values[i] + values[i - 1]) * (grid[i] - grid[i - 1]);
  }
  return total;
}

BroadenedCurve broaden_onto(const StickSpectrum& sticks, double width,
                            WidthKind kind, std::span<const double> grid) {
  if (!(width > 0.0) || !std::isfinite(width)) {
    throw InvalidParameterError("broadening width must be positive");
  }
  BroadenedCurve curve;
  curve.width = width;
  curve.width_kind = kind;
  curve.grid.assign(grid.begin(), grid.end());
  curve.values.assign(grid.size(), 0.0);
  const double sigma = gaussian_sigma(width, kind);
  const double norm = 1.0 / (sigma * std::sqrt(2.0 * std::numbers::pi));
  for (std::size_t g = 0; g < grid.size(); ++g) {
    double value = 0.0;
    for (const Stick& s : sticks.sticks) {
      const double z = (grid[g] - s.frequency) / sigma;
      value += s.intensity * norm * std::exp(-0.5 * z * z);
    }
    curve.values[g] = value;
  }
  return curve;
}

BroadenedCurve broaden(const StickSpectrum& sticks, double width,
                       WidthKind kind, double grid_step) {
  if (!(grid_step > 0.0) || !std::isfinite(grid_step)) {
    throw InvalidParameterError("grid step must be positive");
  }
  if (!(width > 0.0) || !std::isfinite(width)) {
    throw InvalidParameterError("broadening width must be positive");
  }
  double lo = sticks.offset;
  double hi = sticks.offset;
  if (!sticks.sticks.empty()) {
    lo = sticks.sticks.front().frequency;
    hi = sticks.sticks.back().frequency;
  }
  const double margin = 5.0 * std::max(width, gaussian_sigma(width, kind));
  const auto first = static_cast<long long>(std::floor((lo - margin) / grid_step));
  const auto last = static_cast<long long>(std::ceil((hi + margin) / grid_step));
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(last - first + 1));
  for (long long i = first; i <= last; ++i) grid.push_back(i * grid_step);
  return broaden_onto(sticks, width, kind, grid);
}

double StickDeviation::deviation() const {
  return std::abs(intensity_a - intensity_b);
}

SpectrumComparison compare_spectra(const StickSpectrum& a,
                                   const StickSpectrum& b, double freq_tol) {
  SpectrumComparison report;
  std::vector<std::size_t> order(a.sticks.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a.sticks[x].intensity > a.sticks[y].intensity;
  });
  std::vector<bool> taken(b.sticks.size(), false);
  auto note_unmatched = [&report](double intensity) {
    report.unmatched_mass += intensity;
    report.max_unmatched_intensity =
        std::max(report.max_unmatched_intensity, intensity);
  };
  for (std::size_t ia : order) {
    const Stick& sa = a.sticks[ia];
    std::size_t best = b.sticks.size();
    double best_distance = freq_tol;
    for (std::size_t ib = 0; ib < b.sticks.size(); ++ib) {
      if (taken[ib]) continue;
      const double distance = std::abs(b.sticks[ib].frequency - sa.frequency);
      if (distance <= best_distance) {
        if (best == b.sticks.size() || distance < best_distance) {
          best = ib;
          best_distance = distance;
        }
      }
    }
    if (best == b.sticks.size()) {
      note_unmatched(sa.intensity);
      continue;
    }
    taken[best] = true;
    const Stick& sb = b.sticks[best];
    report.matched.push_back(
        StickDeviation{sa.frequency, sb.frequency, sa.intensity, sb.intensity});
    report.max_intensity_deviation =
        std::max(report.max_intensity_deviation, report.matched.back().deviation());
  }
  for (std::size_t ib = 0; ib < b.sticks.size(); ++ib) {
    if (!taken[ib]) note_unmatched(b.sticks[ib].intensity);
  }
  return report;
}

void write_stick_table(std::ostream& out, const StickSpectrum& spectrum) {
  const double peak = spectrum.max_intensity();
  out << "frequency_cm-1\tintensity\tintensity_maxnorm\tassignment\n";
  for (const Stick& s : spectrum.sticks) {
    out << format_double(s.frequency) << '\t' << format_double(s.intensity)
        << '\t' << format_double(peak > 0.0 ? s.intensity / peak : 0.0) << '\t';
    for (std::size_t k = 0; k < s.assignment.size(); ++k) {
      if (k) out << ';';
      out << to_string(s.assignment[k]);
    }
    out << '\n';
  }
}

void write_curve_table(std::ostream& out, const BroadenedCurve& curve) {
  out << "frequency_cm-1\tvalue\n";
  for (std::size_t i = 0; i < curve.grid.size(); ++i) {
    out << format_double(curve.grid[i]) << '\t' << format_double(curve.values[i])
        << '\n';
  }
}

}  // namespace vibronic
