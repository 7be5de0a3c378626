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

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "vibronic/doktorov.h"
#include "vibronic/errors.h"
#include "vibronic/fock.h"

namespace vibronic {
namespace {

const DeviceConfig kDefaults{};

ShotRecord RecordWithBright(double bright) {
  ShotRecord r;
  r.p1 = bright;
  r.p4 = 1.0 - bright;
  r.shots = 2000;
  return r;
}

DoktorovSequence CationSequence() {
  MolecularParams p;
  p.omega_initial = {1178.4, 518.9};
  p.omega_final = {1112.7, 415.0};
  p.duschinsky.resize(2, 2);
  p.duschinsky << 0.982, 0.188, -0.188, 0.982;
  p.delta = std::vector<double>{-0.026, 1.716};
  return build_sequence(p);
}

TEST(PlanPulsesTest, BalancedRotationDuration) {
  const std::vector<GaussianOp> ops{Rotate{0, 1, std::numbers::pi / 4}};
  const PulseSchedule s = plan_pulses(ops, kDefaults);
  ASSERT_EQ(s.pulses.size(), 1u);
  EXPECT_NEAR(s.pulses[0].duration_us, 130.9, 0.1);
  EXPECT_EQ(s.pulses[0].frequency_label, "omega_X-omega_Y");
  EXPECT_NEAR(s.pulses[0].raman_frequency_mhz, 0.5, 1e-12);
}

TEST(PlanPulsesTest, RateArithmetic) {
  const std::vector<GaussianOp> ops{Displace{0, 1.0}, Squeeze{1, 0.0},
                                    Squeeze{0, 0.3}};
  const PulseSchedule s = plan_pulses(ops, kDefaults);
  EXPECT_NEAR(s.pulses[0].duration_us, 1.0 / 0.066, 1e-12);
  EXPECT_NEAR(s.pulses[0].duration_us, 15.15, 0.01);
  EXPECT_EQ(s.pulses[1].duration_us, 0.0);
  EXPECT_NEAR(s.pulses[2].duration_us, 50.0, 1e-9);
  EXPECT_EQ(s.pulses[0].frequency_label, "omega_X");
  EXPECT_EQ(s.pulses[1].frequency_label, "2omega_Y");
  EXPECT_NEAR(s.pulses[1].raman_frequency_mhz, 3.8, 1e-12);
  EXPECT_EQ(s.pulses[0].stage, 1);
  EXPECT_EQ(s.pulses[1].stage, 2);
  EXPECT_EQ(s.pulses[2].stage, 2);
}

TEST(PlanPulsesTest, NegativeParameterBecomesPhase) {
  const std::vector<GaussianOp> ops{Squeeze{0, -0.2}, Displace{1, -0.5},
                                    Rotate{0, 1, -0.1}};
  const PulseSchedule s = plan_pulses(ops, kDefaults);
  for (const Pulse& p : s.pulses) {
    EXPECT_GT(p.parameter, 0.0);
    EXPECT_NEAR(p.phase, std::numbers::pi, 1e-12);
  }
}

TEST(PlanPulsesTest, DurationsScaleLinearly) {
  for (double x : {0.1, 0.2, 0.4}) {
    const std::vector<GaussianOp> ops{Rotate{0, 1, x}};
    EXPECT_NEAR(plan_pulses(ops, kDefaults).pulses[0].duration_us, x / 0.006, 1e-9);
  }
}

TEST(PlanPulsesTest, CationSchedule) {
  const PulseSchedule s = plan_pulses(CationSequence(), kDefaults);
  ASSERT_EQ(s.pulses.size(), 7u);
  EXPECT_EQ(s.pulses[2].kind, PulseKind::kRotate);
  EXPECT_NEAR(s.pulses[2].duration_us, 31.5, 0.05);
  EXPECT_EQ(s.pulses.back().stage, 4);
  EXPECT_FALSE(s.has_warnings());
  double total = 0.0;
  for (const Pulse& p : s.pulses) total += p.duration_us;
  EXPECT_NEAR(s.total_duration_us(), total, 1e-9);
}

TEST(PlanPulsesTest, GuardWarnsWithoutFailing) {
  const std::vector<GaussianOp> ops{Squeeze{0, 4.5}};
  const PulseSchedule s = plan_pulses(ops, kDefaults);
  EXPECT_TRUE(s.has_warnings());
  EXPECT_FALSE(s.pulses[0].warning.empty());
}

TEST(PlanPulsesTest, RejectsThirdMode) {
  const std::vector<GaussianOp> ops{Displace{2, 0.1}};
  EXPECT_THROW(plan_pulses(ops, kDefaults), ModelError);
}

TEST(DeviceConfigTest, Validates) {
  EXPECT_NO_THROW(kDefaults.validate());
  DeviceConfig c;
  c.shots = 0;
  EXPECT_THROW(c.validate(), InvalidParameterError);
  c = DeviceConfig{};
  c.eta_up = 0.4;
  EXPECT_THROW(c.validate(), InvalidParameterError);
  c = DeviceConfig{};
  c.rate_squeeze = 0.0;
  EXPECT_THROW(c.validate(), InvalidParameterError);
}

TEST(MeasureTargetTest, PerfectModelExtremes) {
  const DetectionModel perfect = DetectionModel::Perfect();
  const TruncatedState one = TruncatedState::Basis({3, 3}, {1, 2});
  EXPECT_EQ(measure_target(one, {1, 2}, perfect, 500, 1).p4, 1.0);
  EXPECT_EQ(measure_target(one, {0, 0}, perfect, 500, 1).p4, 0.0);
  EXPECT_EQ(measure_target(one, {0, 0}, perfect, 500, 1).p1, 1.0);
}

TEST(MeasureTargetTest, FrequenciesSumToOne) {
  const TruncatedState s = apply_displacement(TruncatedState::Vacuum({12, 3}), 0, 0.9);
  const ShotRecord r =
      measure_target(s, {1, 0}, DetectionModel::FromConfig(kDefaults), 777, 5);
  EXPECT_EQ(r.shots, 777);
  EXPECT_EQ(r.counts[0] + r.counts[1] + r.counts[2] + r.counts[3], 777);
  EXPECT_NEAR(r.p1 + r.p2 + r.p3 + r.p4, 1.0, 1e-12);
  EXPECT_GE(r.p3, 0.0);
}

TEST(MeasureTargetTest, Deterministic) {
  const TruncatedState s = apply_displacement(TruncatedState::Vacuum({12, 3}), 0, 0.9);
  const DetectionModel m = DetectionModel::FromConfig(kDefaults);
  const ShotRecord a = measure_target(s, {1, 0}, m, 2000, 42);
  const ShotRecord b = measure_target(s, {1, 0}, m, 2000, 42);
  const ShotRecord c = measure_target(s, {1, 0}, m, 2000, 43);
  EXPECT_EQ(a.counts, b.counts);
  EXPECT_NE(a.counts, c.counts);
}

TEST(MeasureTargetTest, RejectsZeroShots) {
  EXPECT_THROW(measure_target(TruncatedState::Vacuum({2}), {0},
                              DetectionModel::Perfect(), 0, 1),
               InvalidParameterError);
}

TEST(MeasureTargetTest, LargeSampleMatchesExpectation) {
  const TruncatedState s = apply_displacement(TruncatedState::Vacuum({20}), 0, 1.0);
  const DetectionModel m = DetectionModel::FromConfig(kDefaults);
  const int shots = 200000;
  const ShotRecord r = measure_target(s, {1}, m, shots, 9);
  const ShotRecord e = expected_record(probability(s, {1}), 1.0, m);
  for (auto [got, want] : {std::pair{r.p1, e.p1}, {r.p2, e.p2}, {r.p3, e.p3},
                           {r.p4, e.p4}}) {
    EXPECT_NEAR(got, want, 4.0 * std::sqrt(want * (1.0 - want) / shots) + 1e-12);
  }
}

TEST(CorrectPopulationTest, Examples) {
  const DetectionModel m = DetectionModel::FromConfig(kDefaults);
  EXPECT_NEAR(correct_population(0.007, m).value, 0.0, 1e-12);
  EXPECT_NEAR(correct_population(0.972, m).value, 1.0, 1e-12);
  EXPECT_NEAR(correct_population(0.4895, m).value, 0.5, 1e-12);
  EXPECT_FALSE(correct_population(0.4895, m).out_of_model);
}

TEST(CorrectPopulationTest, ClampsOutOfModel) {
  const DetectionModel m = DetectionModel::FromConfig(kDefaults);
  const CorrectionResult low = correct_population(0.0, m);
  EXPECT_FALSE(low.out_of_model);  // -0.00725 is inside the band
  const CorrectionResult high = correct_population(1.2, m);
  EXPECT_TRUE(high.out_of_model);
  EXPECT_EQ(high.value, 1.05);
}

TEST(CorrectedP4Test, PerfectModelIsIdentity) {
  const DetectionModel perfect = DetectionModel::Perfect();
  EXPECT_NEAR(corrected_p4(RecordWithBright(0.7), perfect, {0, 0}), 0.3, 1e-15);
}

TEST(CorrectedP4Test, InvertsDefaultDetection) {
  // p = 1/2: bright classes 0.5 * 0.972 + 0.5 * 0.007, dark-all-three 0.5105.
  DetectionModel m = DetectionModel::FromConfig(kDefaults);
  const ShotRecord r = RecordWithBright(0.4895);
  EXPECT_NEAR(r.p4, 0.5105, 1e-15);
  EXPECT_NEAR(corrected_p4(r, m, {0, 0}), 0.5, 1e-12);
  m.f_dm.set({0, 0}, 0.8);
  EXPECT_NEAR(corrected_p4(r, m, {0, 0}), 0.625, 1e-12);
}

TEST(CorrectedP4Test, MonotoneDecreasingInBrightClasses) {
  const DetectionModel m = DetectionModel::FromConfig(kDefaults);
  double previous = corrected_p4(RecordWithBright(0.0), m, {0, 0});
  for (int k = 1; k <= 100; ++k) {
    const double next = corrected_p4(RecordWithBright(k / 100.0), m, {0, 0});
    EXPECT_LE(next, previous);
    previous = next;
  }
}

TEST(CorrectedP4Test, ZeroFidelityNamesTarget) {
  DetectionModel m = DetectionModel::Perfect();
  m.f_dm.set({2, 1}, 0.0);
  try {
    corrected_p4(RecordWithBright(0.5), m, {2, 1});
    FAIL() << "expected a division error";
  } catch (const DivisionError& e) {
    EXPECT_NE(std::string(e.what()).find("|2,1>"), std::string::npos);
  }
}

TEST(CorrectedP4Test, StandardErrorIsBinomial) {
  const ShotRecord r = RecordWithBright(0.7);
  EXPECT_NEAR(corrected_p4_stderr(r, DetectionModel::Perfect(), {0, 0}),
              std::sqrt(0.3 * 0.7 / 2000.0), 1e-15);
  const DetectionModel m = DetectionModel::FromConfig(kDefaults);
  EXPECT_NEAR(corrected_p4_stderr(r, m, {0, 0}),
              std::sqrt(0.3 * 0.7 / 2000.0) / 0.965, 1e-15);
}

TEST(ExpectedRecordTest, RoundTripIsExact) {
  DetectionModel m = DetectionModel::FromConfig(kDefaults);
  for (double f : {0.3, 0.6, 1.0}) {
    m.f_dm.set({0, 0}, f);
    for (int k = 0; k <= 20; ++k) {
      const double p = k / 20.0;
      const ShotRecord r = expected_record(p, f, m);
      EXPECT_NEAR(r.p1 + r.p2 + r.p3 + r.p4, 1.0, 1e-15);
      EXPECT_NEAR(corrected_p4(r, m, {0, 0}), p, 1e-12) << p << " " << f;
    }
  }
}

TEST(ExpectedRecordTest, SequenceFidelitiesMatchDetectionFidelities) {
  const DetectionModel m{0.9, 0.95, {}};
  const ShotRecord dark = expected_record(1.0, 1.0, m);
  const ShotRecord bright = expected_record(0.0, 1.0, m);
  EXPECT_NEAR(dark.p4, 0.95, 1e-14);
  EXPECT_NEAR(bright.p1 + bright.p2 + bright.p3, 0.9, 1e-14);
}

TEST(TransferFidelityTableTest, LoadsRowsAndHeader) {
  std::istringstream in("# comment\nnX nY F\n0 0 0.98\n1 2 0.9\n");
  const TransferFidelityTable t = TransferFidelityTable::Load(in);
  EXPECT_EQ(t.at({0, 0}), 0.98);
  EXPECT_EQ(t.at({1, 2}), 0.9);
  EXPECT_EQ(t.at({5, 5}), 1.0);
  EXPECT_EQ(t.entries().size(), 2u);
}

TEST(TransferFidelityTableTest, RejectsJunk) {
  std::istringstream bad_value("0 0 1.5\n");
  EXPECT_THROW(TransferFidelityTable::Load(bad_value), InputError);
  std::istringstream late_header("0 0 0.9\nnX nY F\n");
  EXPECT_THROW(TransferFidelityTable::Load(late_header), InputError);
}

TEST(TransferFidelityTableTest, SyntheticPower) {
  const TransferFidelityTable t = TransferFidelityTable::Synthetic(0.99);
  EXPECT_NEAR(t.at({0, 0}), 0.9801, 1e-15);
  EXPECT_NEAR(t.at({2, 1}), std::pow(0.99, 5), 1e-15);
}

TEST(TransferFidelityTableTest, ShippedSyntheticFile) {
  const TransferFidelityTable t =
      TransferFidelityTable::LoadFile(VIBRONIC_TEST_DATA_DIR "/synthetic_fdm.tsv");
  EXPECT_NEAR(t.at({1, 1}), std::pow(0.99, 4), 1e-12);
}

TEST(SampledSpectrumTest, ZeroStateGivesEmptySpectrum) {
  const TruncatedState zero({3, 3}, std::vector<Complex>(9));
  const std::vector<double> w{1112.7, 415.0};
  const SampledSpectrum s =
      sampled_spectrum(zero, w, DetectionModel::Perfect(), kDefaults);
  EXPECT_TRUE(s.targets.empty());
  EXPECT_TRUE(s.raw.sticks.empty());
  EXPECT_TRUE(s.corrected.sticks.empty());
}

TEST(SampledSpectrumTest, LargeShotsMatchIdeal) {
  const TruncatedState state =
      apply_sequence(TruncatedState::Vacuum({24, 24}), CationSequence().ops);
  const std::vector<double> w{1112.7, 415.0};
  DeviceConfig cfg;
  cfg.shots = 1000000;
  cfg.target_threshold = 1e-3;
  const SampledSpectrum s =
      sampled_spectrum(state, w, DetectionModel::Perfect(), cfg);
  ASSERT_GT(s.targets.size(), 5u);
  for (const TargetMeasurement& t : s.targets) {
    const double sigma = std::sqrt(t.ideal * (1.0 - t.ideal) / cfg.shots);
    EXPECT_LE(std::abs(t.p4_corrected - t.ideal), 3.0 * sigma) << to_string(t.target);
  }
}

TEST(SampledSpectrumTest, StandardErrorColumn) {
  const TruncatedState state =
      apply_sequence(TruncatedState::Vacuum({16, 16}), CationSequence().ops);
  const std::vector<double> w{1112.7, 415.0};
  const SampledSpectrum s =
      sampled_spectrum(state, w, DetectionModel::FromConfig(kDefaults), kDefaults);
  for (const TargetMeasurement& t : s.targets) {
    const double q = t.record.p4;
    EXPECT_NEAR(t.stderr_corrected, std::sqrt(q * (1.0 - q) / 2000.0) / 0.965, 1e-15);
  }
  std::ostringstream out;
  write_shot_table(out, s);
  EXPECT_EQ(out.str().rfind("nX\tnY\tP1\tP2\tP3\tP4\tP4_corrected\tstderr\n", 0), 0u);
}

TEST(SampledSpectrumTest, SubstreamsIndependentOfIterationOrder) {
  EXPECT_NE(substream_seed(1, 0), substream_seed(1, 1));
  EXPECT_NE(substream_seed(1, 0), substream_seed(2, 0));
  EXPECT_EQ(substream_seed(7, 3), substream_seed(7, 3));
}

}  // namespace
}  // namespace vibronic
