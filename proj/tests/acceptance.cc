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


// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "vibronic/doktorov.h"
#include "vibronic/fock.h"
#include "vibronic/ion_device.h"
#include "vibronic/param_file.h"
#include "vibronic/spectrum.h"

namespace vibronic {
namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double Factorial(int n) { return std::tgamma(n + 1.0); }

MolecularParams Fixture(const char* name) {
  return load_param_file(std::string(VIBRONIC_TEST_DATA_DIR) + "/" + name).params;
}

// Largest |P_a - P_b| over a common index box.
double MaxProbabilityGap(const TruncatedState& a, const TruncatedState& b) {
  double gap = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const FockIndex idx = a.index_at(k);
    gap = std::max(gap, std::abs(probability(a, idx) - probability(b, idx)));
  }
  return gap;
}

Outcome TableRegression() {
  const std::vector<double> freqs{1112.7, 415.0, 1178.4, 518.9, 989.5, 451.4};
  const std::vector<double> table{0.288, -0.204, 0.317, -0.093, 0.229, -0.162};
  const std::vector<double> zeta = squeezing_params(freqs, 25.0);
  double worst_zeta = 0.0;
  for (std::size_t k = 0; k < freqs.size(); ++k) {
    worst_zeta = std::max(worst_zeta, std::abs(zeta[k] - table[k]));
  }
  Eigen::Matrix2d u1, u2;
  u1 << 0.982, 0.188, -0.188, 0.982;
  u2 << 0.998, 0.065, -0.065, 0.998;
  const double worst_theta = std::max(std::abs(rotation_angle_from_U(u1) - 0.1892),
                                      std::abs(rotation_angle_from_U(u2) - 0.065));
  std::ostringstream msg;
  msg << "max |dzeta| = " << worst_zeta << ", max |dtheta| = " << worst_theta;
  return {worst_zeta <= 1e-3 && worst_theta <= 5e-4, msg.str()};
}

Outcome OperatorOracles() {
  double worst_poisson = 0.0;
  const TruncatedState coherent = apply_displacement(TruncatedState::Vacuum({30}), 0, 1.0);
  for (int m = 0; m < 30; ++m) {
    worst_poisson = std::max(
        worst_poisson, std::abs(probability(coherent, {m}) - std::exp(-1.0) / Factorial(m)));
  }

  double worst_squeeze = 0.0;
  bool odd_exact = true;
  const TruncatedState squeezed = apply_squeeze(TruncatedState::Vacuum({40}), 0, 1.0);
  for (int m = 0; m < 40; ++m) {
    const double p = probability(squeezed, {m});
    if (m % 2) {
      odd_exact = odd_exact && p == 0.0;
      continue;
    }
    const double expected = Factorial(m) /
                            (std::pow(4.0, m / 2) * std::pow(Factorial(m / 2), 2)) *
                            std::pow(std::tanh(1.0), m) / std::cosh(1.0);
    worst_squeeze = std::max(worst_squeeze, std::abs(p - expected));
  }

  // Fock rotations: |n,0> splits binomially.
  double worst_rotation = 0.0;
  for (double theta : {0.189, std::numbers::pi / 4, 1.1}) {
    for (int n = 1; n <= 5; ++n) {
      const TruncatedState out =
          apply_rotation(TruncatedState::Basis({8, 8}, {n, 0}), 0, 1, theta);
      for (int k = 0; k <= n; ++k) {
        const double expected = Factorial(n) / (Factorial(k) * Factorial(n - k)) *
                                std::pow(std::cos(theta), 2 * k) *
                                std::pow(std::sin(theta), 2 * (n - k));
        worst_rotation =
            std::max(worst_rotation, std::abs(probability(out, {k, n - k}) - expected));
      }
    }
  }
  std::ostringstream msg;
  msg << "poisson " << worst_poisson << ", squeezed " << worst_squeeze
      << (odd_exact ? " (odd terms exactly 0)" : " (odd terms NOT zero)")
      << ", rotation " << worst_rotation;
  return {worst_poisson <= 1e-10 && worst_squeeze <= 1e-9 && odd_exact &&
              worst_rotation <= 1e-10,
          msg.str()};
}

Outcome HongOuMandel() {
  const TruncatedState out = apply_rotation(TruncatedState::Basis({4, 4}, {1, 1}), 0, 1,
                                            std::numbers::pi / 4);
  const double p11 = probability(out, {1, 1});
  const std::vector<GaussianOp> ops{Rotate{0, 1, std::numbers::pi / 4}};
  const double duration = plan_pulses(ops, DeviceConfig{}).pulses.at(0).duration_us;
  std::ostringstream msg;
  msg << "P(1,1) = " << p11 << ", duration = " << duration << " us";
  return {p11 < 1e-10 && std::abs(duration - 130.9) <= 0.1, msg.str()};
}

Outcome PipelineConvergence() {
  AutoCutoffOptions options;
  options.initial_cutoff = 8;
  options.max_cutoff = 32;
  bool ok = true;
  std::ostringstream msg;

  for (const char* name : {"so2_to_so2plus.params", "so2minus_to_so2.params"}) {
    const MolecularParams params = Fixture(name);
    const DoktorovSequence seq = build_sequence(params);
    const AutoCutoffResult run = run_with_auto_cutoff(2, seq.ops, options);
    const StickSpectrum sticks = stick_spectrum(run.state, params.omega_final);
    const int doubled = 2 * run.cutoffs[0];
    const TruncatedState wide =
        apply_sequence(TruncatedState::Vacuum({doubled, doubled}), seq.ops);
    const SpectrumComparison cmp =
        compare_spectra(sticks, stick_spectrum(wide, params.omega_final), 1e-6);
    const double leak = leakage(run.state);
    const double shift = std::max(cmp.max_intensity_deviation, cmp.max_unmatched_intensity);
    ok = ok && leak < 1e-6 && sticks.total_intensity >= 1.0 - 1e-6 &&
         sticks.total_intensity <= 1.0 + 1e-12 && shift <= 1e-6;
    msg << params.name << ": cutoff " << run.cutoffs[0] << ", leakage " << leak
        << ", total " << sticks.total_intensity << ", doubling shift " << shift << "; ";

    std::vector<Stick> strongest = sticks.sticks;
    std::sort(strongest.begin(), strongest.end(),
              [](const Stick& a, const Stick& b) { return a.intensity > b.intensity; });
    if (params.omega_final[1] == 415.0) {
      // Origin at 0 and the strongest lines on the 415 ladder.
      const bool origin = sticks.sticks.front().frequency == 0.0 &&
                          sticks.sticks.front().assignment.front() == FockIndex{0, 0};
      bool ladder = true;
      for (int k = 0; k < 4; ++k) {
        const double n = strongest[k].frequency / 415.0;
        ladder = ladder && std::abs(n - std::round(n)) < 1e-9 &&
                 strongest[k].assignment.front()[0] == 0;
      }
      ok = ok && origin && ladder;
      msg << (origin && ladder ? "415 progression ok; " : "415 progression MISSING; ");
    } else {
      int combos = 0;
      for (const Stick& s : sticks.sticks) {
        const FockIndex& idx = s.assignment.front();
        if (idx[0] >= 1 && idx[1] >= 1 && s.intensity > 1e-4) ++combos;
      }
      ok = ok && combos > 0;
      msg << combos << " combination bands above 1e-4; ";
    }
  }
  return {ok, msg.str()};
}

Outcome ScaleInvariance() {
  const MolecularParams params = Fixture("so2_to_so2plus.params");
  constexpr int kCutoff = 128;
  std::vector<TruncatedState> states;
  for (double scale : {10.0, 25.0, 50.0}) {
    states.push_back(apply_sequence(TruncatedState::Vacuum({kCutoff, kCutoff}),
                                    build_sequence(params, scale).ops));
  }
  const double gap = std::max({MaxProbabilityGap(states[0], states[1]),
                               MaxProbabilityGap(states[1], states[2]),
                               MaxProbabilityGap(states[0], states[2])});
  std::ostringstream msg;
  msg << "cutoff " << kCutoff << ", max probability gap across scales 10/25/50 = " << gap;
  return {gap <= 1e-8, msg.str()};
}

Outcome MeasurementRoundTrip() {
  bool closed_ok = true;
  double worst_closed = 0.0;
  double worst_coverage = 1.0;
  const DeviceConfig cfg;
  constexpr int kTrials = 1000;
  for (double f : {0.6, 0.8, 1.0}) {
    DetectionModel model = DetectionModel::FromConfig(cfg);
    model.f_dm.set({0}, f);
    for (int k = 0; k <= 10; ++k) {
      const double p = k / 10.0;
      const ShotRecord expected = expected_record(p, f, model);
      const double closed = corrected_p4(expected, model, {0});
      worst_closed = std::max(worst_closed, std::abs(closed - p));
      closed_ok = closed_ok && std::abs(closed - p) <= 1e-12;

      // Single-mode state with population p in |0>.
      const TruncatedState state(
          {2}, {Complex(std::sqrt(p)), Complex(std::sqrt(1.0 - p))});
      const double q = expected.p4;
      const double sigma = std::sqrt(q * (1.0 - q) / cfg.shots) /
                           ((model.eta_up + model.eta_down - 1.0) * f);
      int inside = 0;
      for (int trial = 0; trial < kTrials; ++trial) {
        const std::uint64_t seed = substream_seed(20260101, trial * 64 + k * 4);
        const ShotRecord r = measure_target(state, {0}, model, cfg.shots, seed);
        if (std::abs(corrected_p4(r, model, {0}) - p) <= 3.0 * sigma + 1e-12) ++inside;
      }
      worst_coverage = std::min(worst_coverage, inside / static_cast<double>(kTrials));
    }
  }
  std::ostringstream msg;
  msg << "closed-form max error " << worst_closed << ", worst 3-sigma coverage "
      << worst_coverage * 100.0 << "% over 33 (p, F) cells";
  return {closed_ok && worst_coverage >= 0.99, msg.str()};
}

Outcome Determinism() {
  const MolecularParams params = Fixture("so2_to_so2plus.params");
  const TruncatedState state =
      apply_sequence(TruncatedState::Vacuum({24, 24}), build_sequence(params).ops);
  DetectionModel model = DetectionModel::FromConfig(DeviceConfig{});
  model.f_dm = TransferFidelityTable::Synthetic(0.99);
  auto render = [&](std::uint64_t seed) {
    DeviceConfig cfg;
    cfg.rng_seed = seed;
    const SampledSpectrum s = sampled_spectrum(state, params.omega_final, model, cfg);
    std::ostringstream out;
    write_shot_table(out, s);
    write_stick_table(out, s.corrected);
    return out.str();
  };
  const std::string a = render(1);
  const std::string b = render(1);
  const std::string c = render(2);
  std::ostringstream msg;
  msg << a.size() << " bytes; seed 1 twice " << (a == b ? "identical" : "DIFFERENT")
      << ", seed 2 " << (a != c ? "differs" : "IDENTICAL");
  return {a == b && a != c, msg.str()};
}

struct Criterion {
  int number;
  const char* title;
  double time_limit_s;  // <= 0 means no limit
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace vibronic

int main() {
  using namespace vibronic;
  const std::vector<Criterion> criteria{
      {1, "table regression", 1.0, TableRegression},
      {2, "analytic operator oracles", 5.0, OperatorOracles},
      {3, "Hong-Ou-Mandel point", 0.0, HongOuMandel},
      {4, "full-pipeline convergence", 10.0, PipelineConvergence},
      {5, "scale invariance", 0.0, ScaleInvariance},
      {6, "measurement round trip", 30.0, MeasurementRoundTrip},
      {7, "determinism", 0.0, Determinism},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("threw: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.time_limit_s <= 0.0 || seconds < c.time_limit_s;
    const bool pass = outcome.pass && in_time;
    if (!pass) ++failures;
    std::printf("[%s] criterion %d (%s): %s [%.2f s%s]\n", pass ? "PASS" : "FAIL",
                c.number, c.title, outcome.detail.c_str(), seconds,
                in_time ? "" : ", over time limit");
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
