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

#ifndef VIBRONIC_ION_DEVICE_H_
#define VIBRONIC_ION_DEVICE_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vibronic/doktorov.h"
#include "vibronic/fock.h"
#include "vibronic/spectrum.h"

namespace vibronic {

// Effective drive rates and detection figures of a single-ion, two-mode
// (X, Y) device.
struct DeviceConfig {
  double rate_displacement = 0.066;  // |delta| per us
  double rate_squeeze = 0.006;       // |zeta| per us
  double rate_rotation = 0.006;      // rad per us
  double trap_freq_x = 2.4;          // MHz (omega / 2 pi)
  double trap_freq_y = 1.9;          // MHz
  double lamb_dicke_x = 0.117;
  double lamb_dicke_y = 0.132;
  double eta_up = 0.972;    // P(bright read as bright)
  double eta_down = 0.993;  // P(dark read as dark)
  int shots = 2000;
  std::uint64_t rng_seed = 1;
  // Fock states with a smaller ideal population are not measured.
  double target_threshold = 1e-4;

  void validate() const;
};

enum class PulseKind { kDisplace, kSqueeze, kRotate };
std::string_view to_string(PulseKind kind);

struct Pulse {
  int stage = 0;  // 1-based run of consecutive same-kind ops
  PulseKind kind = PulseKind::kDisplace;
  std::vector<int> modes;
  std::string frequency_label;  // omega_X, 2omega_Y, omega_X-omega_Y, ...
  double raman_frequency_mhz = 0.0;
  double parameter = 0.0;  // |delta|, |zeta| or |theta|
  double duration_us = 0.0;
  double phase = 0.0;  // radians in [0, 2 pi); a negative parameter adds pi
  std::string warning;
};

struct PulseSchedule {
  std::vector<Pulse> pulses;
  double total_duration_us() const;
  bool has_warnings() const;
};

// One pulse per op, in application order; duration = |parameter| / rate.
// Squeezing beyond kSqueezeGuard is flagged on the pulse, not rejected.
PulseSchedule plan_pulses(std::span<const GaussianOp> ops,
                          const DeviceConfig& cfg);
PulseSchedule plan_pulses(const DoktorovSequence& seq, const DeviceConfig& cfg);

// Fidelity F_D.M of the transfer-and-detect sequence per target state.
// Unlisted targets fall back to the synthetic model f_pi^(sum n + 2) when
// one is set, and to 1 otherwise.
class TransferFidelityTable {
 public:
  TransferFidelityTable() = default;

  static TransferFidelityTable Synthetic(double per_pulse_fidelity);

  // Whitespace-separated rows "n_X n_Y F"; '#' comments. F must lie in
  // [0, 1]; a zero entry is accepted here and rejected when used.
  static TransferFidelityTable Load(std::istream& in,
                                    const std::string& source = "<input>");
  static TransferFidelityTable LoadFile(const std::filesystem::path& path);

  void set(const FockIndex& target, double fidelity);
  double at(const FockIndex& target) const;

  const std::map<FockIndex, double>& entries() const { return entries_; }
  std::optional<double> per_pulse_fidelity() const { return per_pulse_; }

 private:
  std::map<FockIndex, double> entries_;
  std::optional<double> per_pulse_;
};

struct DetectionModel {
  double eta_up = 0.972;
  double eta_down = 0.993;
  TransferFidelityTable f_dm;

  static DetectionModel Perfect();
  static DetectionModel FromConfig(const DeviceConfig& cfg);
  void validate() const;
};

// Frequencies of the readout classes {B**, DB*, DDB, DDD}.
struct ShotRecord {
  double p1 = 0.0;
  double p2 = 0.0;
  double p3 = 0.0;
  double p4 = 0.0;
  int shots = 0;
  std::array<std::int64_t, 4> counts{};
};

// Per-window readout error probabilities. The sequence-level fidelities
// eta_up / eta_down are split across the three detection windows so that a
// dark ion reads DDD with probability eta_down and an ion that stays bright
// reads DDD with probability 1 - eta_up.
struct WindowErrors {
  double dark_false_bright = 0.0;
  double bright_detected = 1.0;
};
WindowErrors window_errors(const DetectionModel& model);

// Closed-form class probabilities of the forward model for a target with
// true population p and transfer fidelity F.
ShotRecord expected_record(double population, double transfer_fidelity,
                           const DetectionModel& model);

// Independent stream seed for stream `stream` of a run seeded with `seed`.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream);

// Monte Carlo readout of one target. Per shot the transfer succeeds with
// probability p * F(target) and the ion is dark in all three windows;
// otherwise it is bright from the first window on. Each window then misreads
// per window_errors().
ShotRecord measure_target(const TruncatedState& state, const FockIndex& target,
                          const DetectionModel& model, int shots,
                          std::uint64_t seed);

struct CorrectionResult {
  double value = 0.0;
  bool out_of_model = false;  // raw value fell outside [-0.05, 1.05]
};

// Inverts P_M = P_R eta_up + (1 - P_R)(1 - eta_down).
CorrectionResult correct_population(double p_measured,
                                    const DetectionModel& model);

// (1 - Corr(P1 + P2 + P3)) / F(target). Throws DivisionError if F = 0.
double corrected_p4(const ShotRecord& record, const DetectionModel& model,
                    const FockIndex& target);

// Binomial standard error of corrected_p4, propagated from P4.
double corrected_p4_stderr(const ShotRecord& record,
                           const DetectionModel& model,
                           const FockIndex& target);

struct TargetMeasurement {
  FockIndex target;
  double frequency = 0.0;
  double ideal = 0.0;
  double transfer_fidelity = 1.0;
  ShotRecord record;
  double p4_corrected = 0.0;
  double stderr_corrected = 0.0;
  bool out_of_model = false;
};

struct SampledSpectrum {
  std::vector<TargetMeasurement> targets;  // linear-index order
  StickSpectrum raw;        // P4 per target
  StickSpectrum corrected;  // corrected P4 per target
};

// Measures every Fock state whose ideal population exceeds
// cfg.target_threshold. Target k of the state draws from
// substream_seed(cfg.rng_seed, linear index), so results do not depend on
// iteration order.
SampledSpectrum sampled_spectrum(const TruncatedState& state,
                                 std::span<const double> omega_final,
                                 const DetectionModel& model,
                                 const DeviceConfig& cfg, double offset = 0.0);

// Tab-separated: nX nY P1 P2 P3 P4 P4_corrected stderr (n0 n1 ... for
// states that are not two-mode).
void write_shot_table(std::ostream& out, const SampledSpectrum& sampled);

}  // namespace vibronic

#endif  // VIBRONIC_ION_DEVICE_H_
