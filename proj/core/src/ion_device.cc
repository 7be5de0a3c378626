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

#include "vibronic/ion_device.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "vibronic/errors.h"
#include "vibronic/format.h"

namespace vibronic {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_phase(double phase) {
  double wrapped = std::fmod(phase, kTwoPi);
  if (wrapped < 0.0) wrapped += kTwoPi;
  // fmod can return exactly 2 pi after the shift for tiny negatives.
  if (wrapped >= kTwoPi) wrapped = 0.0;
  return wrapped;
}

std::string mode_name(int mode) {
  if (mode == 0) return "X";
  if (mode == 1) return "Y";
  return std::to_string(mode);
}

void check_fidelity(double eta, const char* name) {
  if (!(eta > 0.5 && eta <= 1.0)) {
    throw InvalidParameterError(std::string(name) + " must lie in (0.5, 1]");
  }
}

// [0, 1) with 53 random bits; identical on every platform.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

void DeviceConfig::validate() const {
  if (!(rate_displacement > 0.0) || !(rate_squeeze > 0.0) ||
      !(rate_rotation > 0.0)) {
    throw InvalidParameterError("drive rates must be positive");
  }
  check_fidelity(eta_up, "eta_up");
  check_fidelity(eta_down, "eta_down");
  if (shots < 1) throw InvalidParameterError("shots must be >= 1");
  if (!(target_threshold >= 0.0)) {
    throw InvalidParameterError("target threshold must be non-negative");
  }
}

std::string_view to_string(PulseKind kind) {
  switch (kind) {
    case PulseKind::kDisplace:
      return "displace";
    case PulseKind::kSqueeze:
      return "squeeze";
    case PulseKind::kRotate:
      return "rotate";
  }
  return "unknown";
}

double PulseSchedule::total_duration_us() const {
  double total = 0.0;
  for (const Pulse& p : pulses) total += p.duration_us;
  return total;
}

bool PulseSchedule::has_warnings() const {
  return std::any_of(pulses.begin(), pulses.end(),
                     [](const Pulse& p) { return !p.warning.empty(); });
}

PulseSchedule plan_pulses(std::span<const GaussianOp> ops,
                          const DeviceConfig& cfg) {
  cfg.validate();
  auto trap = [&cfg](int mode) {
    if (mode == 0) return cfg.trap_freq_x;
    if (mode == 1) return cfg.trap_freq_y;
    throw UnsupportedDimensionError(
        "the ion device drives two modes (X, Y); got mode " +
        std::to_string(mode));
  };

  PulseSchedule schedule;
  int stage = 0;
  std::size_t previous_kind = static_cast<std::size_t>(-1);
  for (const GaussianOp& op : ops) {
    validate_op(op, 2);
    if (op.index() != previous_kind) ++stage;
    previous_kind = op.index();

    Pulse pulse;
    pulse.stage = stage;
    std::visit(
        [&](const auto& o) {
          using T = std::decay_t<decltype(o)>;
          if constexpr (std::is_same_v<T, Displace>) {
            pulse.kind = PulseKind::kDisplace;
            pulse.modes = {o.mode};
            pulse.frequency_label = "omega_" + mode_name(o.mode);
            pulse.raman_frequency_mhz = trap(o.mode);
            pulse.parameter = std::abs(o.delta);
            pulse.phase = pulse.parameter > 0.0 ? wrap_phase(std::arg(o.delta)) : 0.0;
            pulse.duration_us = pulse.parameter / cfg.rate_displacement;
          } else if constexpr (std::is_same_v<T, Squeeze>) {
            pulse.kind = PulseKind::kSqueeze;
            pulse.modes = {o.mode};
            pulse.frequency_label = "2omega_" + mode_name(o.mode);
            pulse.raman_frequency_mhz = 2.0 * trap(o.mode);
            pulse.parameter = std::abs(o.zeta);
            pulse.phase = wrap_phase(o.phase + (o.zeta < 0.0 ? std::numbers::pi : 0.0));
            pulse.duration_us = pulse.parameter / cfg.rate_squeeze;
            if (pulse.parameter > kSqueezeGuard) {
              std::ostringstream msg;
              msg << "|zeta|=" << format_double(pulse.parameter, 6)
                  << " exceeds device limit " << kSqueezeGuard;
              pulse.warning = msg.str();
            }
          } else {
            pulse.kind = PulseKind::kRotate;
            pulse.modes = {o.mode_i, o.mode_j};
            pulse.frequency_label =
                "omega_" + mode_name(o.mode_i) + "-omega_" + mode_name(o.mode_j);
            pulse.raman_frequency_mhz = trap(o.mode_i) - trap(o.mode_j);
            pulse.parameter = std::abs(o.theta);
            pulse.phase = wrap_phase(o.phase + (o.theta < 0.0 ? std::numbers::pi : 0.0));
            pulse.duration_us = pulse.parameter / cfg.rate_rotation;
          }
        },
        op);
    schedule.pulses.push_back(std::move(pulse));
  }
  return schedule;
}

PulseSchedule plan_pulses(const DoktorovSequence& seq, const DeviceConfig& cfg) {
  return plan_pulses(std::span<const GaussianOp>(seq.ops), cfg);
}

TransferFidelityTable TransferFidelityTable::Synthetic(double per_pulse_fidelity) {
  if (!(per_pulse_fidelity > 0.0 && per_pulse_fidelity <= 1.0)) {
    throw InvalidParameterError("per-pulse fidelity must lie in (0, 1]");
  }
  TransferFidelityTable table;
  table.per_pulse_ = per_pulse_fidelity;
  return table;
}

void TransferFidelityTable::set(const FockIndex& target, double fidelity) {
  if (!(fidelity >= 0.0 && fidelity <= 1.0)) {
    throw InvalidParameterError("F_D.M for " + to_string(target) +
                                " must lie in [0, 1]");
  }
  entries_[target] = fidelity;
}

double TransferFidelityTable::at(const FockIndex& target) const {
  if (auto it = entries_.find(target); it != entries_.end()) return it->second;
  if (per_pulse_) return std::pow(*per_pulse_, target.total() + 2);
  return 1.0;
}

TransferFidelityTable TransferFidelityTable::Load(std::istream& in,
                                                  const std::string& source) {
  TransferFidelityTable table;
  std::string raw;
  std::size_t line_no = 0;
  bool seen_row = false;
  while (std::getline(in, raw)) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string::npos) {
      raw.resize(hash);
    }
    std::istringstream fields(raw);
    std::vector<std::string> tokens;
    for (std::string t; fields >> t;) tokens.push_back(t);
    if (tokens.empty()) continue;
    auto fail = [&](const std::string& what) -> void {
      throw ParseError(source + ":" + std::to_string(line_no) + ": " + what,
                       line_no, "F_D.M");
    };
    // An optional header row such as "nX nY F" may precede the data.
    const bool first_row = !seen_row;
    seen_row = true;
    if (first_row && !std::isdigit(static_cast<unsigned char>(tokens[0][0]))) {
      continue;
    }
    if (tokens.size() != 3) fail("expected 'n_X n_Y F'");
    int nx = 0;
    int ny = 0;
    double f = 0.0;
    try {
      std::size_t used = 0;
      nx = std::stoi(tokens[0], &used);
      if (used != tokens[0].size()) fail("bad n_X '" + tokens[0] + "'");
      ny = std::stoi(tokens[1], &used);
      if (used != tokens[1].size()) fail("bad n_Y '" + tokens[1] + "'");
      f = std::stod(tokens[2], &used);
      if (used != tokens[2].size()) fail("bad fidelity '" + tokens[2] + "'");
    } catch (const std::logic_error&) {
      fail("could not parse '" + raw + "'");
    }
    if (nx < 0 || ny < 0) fail("occupations must be non-negative");
    if (!(f >= 0.0 && f <= 1.0)) fail("fidelity must lie in [0, 1]");
    table.entries_[FockIndex{nx, ny}] = f;
  }
  return table;
}

TransferFidelityTable TransferFidelityTable::LoadFile(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open F_D.M table " + path.string(), 0, "F_D.M");
  }
  return Load(in, path.string());
}

DetectionModel DetectionModel::Perfect() {
  return DetectionModel{1.0, 1.0, {}};
}

DetectionModel DetectionModel::FromConfig(const DeviceConfig& cfg) {
  return DetectionModel{cfg.eta_up, cfg.eta_down, {}};
}

void DetectionModel::validate() const {
  check_fidelity(eta_up, "eta_up");
  check_fidelity(eta_down, "eta_down");
}

WindowErrors window_errors(const DetectionModel& model) {
  model.validate();
  WindowErrors w;
  w.dark_false_bright = 1.0 - std::cbrt(model.eta_down);
  w.bright_detected = 1.0 - std::cbrt(1.0 - model.eta_up);
  return w;
}

ShotRecord expected_record(double population, double transfer_fidelity,
                           const DetectionModel& model) {
  const WindowErrors w = window_errors(model);
  const double success = std::clamp(population, 0.0, 1.0) * transfer_fidelity;
  const double e = w.dark_false_bright;
  const double h = w.bright_detected;
  ShotRecord r;
  r.p1 = success * e + (1.0 - success) * h;
  r.p2 = success * (1.0 - e) * e + (1.0 - success) * (1.0 - h) * h;
  r.p3 = success * (1.0 - e) * (1.0 - e) * e +
         (1.0 - success) * (1.0 - h) * (1.0 - h) * h;
  r.p4 = 1.0 - r.p1 - r.p2 - r.p3;
  return r;
}

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer over a combination of both inputs.
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(seed) ^ (stream * 0xd1b54a32d192ed03ULL + 1));
}

ShotRecord measure_target(const TruncatedState& state, const FockIndex& target,
                          const DetectionModel& model, int shots,
                          std::uint64_t seed) {
  if (shots < 1) throw InvalidParameterError("shots must be >= 1");
  const double population = std::clamp(probability(state, target), 0.0, 1.0);
  const double success = population * model.f_dm.at(target);
  const WindowErrors w = window_errors(model);

  std::mt19937_64 rng(seed);
  ShotRecord record;
  record.shots = shots;
  for (int shot = 0; shot < shots; ++shot) {
    const bool dark = uniform01(rng) < success;
    const double p_bright = dark ? w.dark_false_bright : w.bright_detected;
    int event = 3;
    for (int window = 0; window < 3; ++window) {
      if (uniform01(rng) < p_bright) {
        event = window;
        break;
      }
    }
    ++record.counts[event];
  }
  const double n = static_cast<double>(shots);
  record.p1 = record.counts[0] / n;
  record.p2 = record.counts[1] / n;
  record.p3 = record.counts[2] / n;
  record.p4 = record.counts[3] / n;
  return record;
}

CorrectionResult correct_population(double p_measured,
                                    const DetectionModel& model) {
  model.validate();
  const double value =
      (p_measured - (1.0 - model.eta_down)) / (model.eta_down + model.eta_up - 1.0);
  CorrectionResult result{value, false};
  if (value < -0.05 || value > 1.05) {
    result.out_of_model = true;
    result.value = std::clamp(value, -0.05, 1.05);
  }
  return result;
}

double corrected_p4(const ShotRecord& record, const DetectionModel& model,
                    const FockIndex& target) {
  const double f = model.f_dm.at(target);
  if (!(f > 0.0)) {
    throw DivisionError("F_D.M is zero for target " + to_string(target) +
                        "; cannot correct its population");
  }
  const double bright = record.p1 + record.p2 + record.p3;
  return (1.0 - correct_population(bright, model).value) / f;
}

double corrected_p4_stderr(const ShotRecord& record,
                           const DetectionModel& model,
                           const FockIndex& target) {
  const double f = model.f_dm.at(target);
  if (!(f > 0.0)) {
    throw DivisionError("F_D.M is zero for target " + to_string(target));
  }
  if (record.shots < 1) return 0.0;
  const double q = std::clamp(record.p4, 0.0, 1.0);
  return std::sqrt(q * (1.0 - q) / record.shots) /
         ((model.eta_down + model.eta_up - 1.0) * f);
}

SampledSpectrum sampled_spectrum(const TruncatedState& state,
                                 std::span<const double> omega_final,
                                 const DetectionModel& model,
                                 const DeviceConfig& cfg, double offset) {
  cfg.validate();
  model.validate();
  if (omega_final.size() != static_cast<std::size_t>(state.num_modes())) {
    throw InvalidDimensionError("omega_final does not match the state's modes");
  }
  SampledSpectrum out;
  out.raw.offset = offset;
  out.corrected.offset = offset;
  std::vector<Stick> raw;
  std::vector<Stick> corrected;
  std::span<const Complex> amps = state.amplitudes();
  for (std::size_t linear = 0; linear < amps.size(); ++linear) {
    const double ideal = std::norm(amps[linear]);
    if (!(ideal > cfg.target_threshold)) continue;
    TargetMeasurement m;
    m.target = state.index_at(linear);
    m.ideal = ideal;
    m.frequency = offset;
    for (std::size_t k = 0; k < m.target.size(); ++k) {
      m.frequency += m.target[k] * omega_final[k];
    }
    m.transfer_fidelity = model.f_dm.at(m.target);
    m.record = measure_target(state, m.target, model, cfg.shots,
                              substream_seed(cfg.rng_seed, linear));
    m.p4_corrected = corrected_p4(m.record, model, m.target);
    m.stderr_corrected = corrected_p4_stderr(m.record, model, m.target);
    m.out_of_model =
        correct_population(m.record.p1 + m.record.p2 + m.record.p3, model)
            .out_of_model;
    raw.push_back(Stick{m.frequency, m.record.p4, {m.target}});
    corrected.push_back(Stick{m.frequency, m.p4_corrected, {m.target}});
    out.targets.push_back(std::move(m));
  }
  out.raw.sticks = merge_sticks(std::move(raw), kDefaultMergeTolerance);
  out.corrected.sticks = merge_sticks(std::move(corrected), kDefaultMergeTolerance);
  out.raw.total_intensity = out.raw.stick_sum();
  out.corrected.total_intensity = out.corrected.stick_sum();
  return out;
}

void write_shot_table(std::ostream& out, const SampledSpectrum& sampled) {
  const std::size_t modes =
      sampled.targets.empty() ? 2 : sampled.targets.front().target.size();
  if (modes == 2) {
    out << "nX\tnY";
  } else {
    for (std::size_t k = 0; k < modes; ++k) out << (k ? "\t" : "") << 'n' << k;
  }
  out << "\tP1\tP2\tP3\tP4\tP4_corrected\tstderr\n";
  for (const TargetMeasurement& m : sampled.targets) {
    for (std::size_t k = 0; k < m.target.size(); ++k) {
      out << (k ? "\t" : "") << m.target[k];
    }
    out << '\t' << format_double(m.record.p1) << '\t' << format_double(m.record.p2)
        << '\t' << format_double(m.record.p3) << '\t' << format_double(m.record.p4)
        << '\t' << format_double(m.p4_corrected) << '\t'
        << format_double(m.stderr_corrected) << '\n';
  }
}

}  // namespace vibronic
