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


#include <vector>

#include <benchmark/benchmark.h>

#include "vibronic/doktorov.h"
#include "vibronic/fock.h"
#include "vibronic/ion_device.h"
#include "vibronic/spectrum.h"

namespace vibronic {
namespace {

MolecularParams Cation() {
  MolecularParams p;
  p.omega_initial = {1178.4, 518.9};
  p.omega_final = {1112.7, 415.0};
  p.duschinsky.resize(2, 2);
  p.duschinsky << 0.982, 0.188, -0.188, 0.982;
  p.delta = std::vector<double>{-0.026, 1.716};
  return p;
}

void BM_DoktorovSequence(benchmark::State& state) {
  const int c = static_cast<int>(state.range(0));
  const DoktorovSequence seq = build_sequence(Cation());
  for (auto _ : state) {
    benchmark::DoNotOptimize(apply_sequence(TruncatedState::Vacuum({c, c}), seq.ops));
  }
}
BENCHMARK(BM_DoktorovSequence)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_Rotation(benchmark::State& state) {
  const int c = static_cast<int>(state.range(0));
  const TruncatedState s = apply_displacement(TruncatedState::Vacuum({c, c}), 0, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(apply_rotation(s, 0, 1, 0.3));
}
BENCHMARK(BM_Rotation)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_StickSpectrum(benchmark::State& state) {
  const TruncatedState s =
      apply_sequence(TruncatedState::Vacuum({32, 32}), build_sequence(Cation()).ops);
  const std::vector<double> w{1112.7, 415.0};
  for (auto _ : state) {
    const StickSpectrum sticks = stick_spectrum(s, w);
    benchmark::DoNotOptimize(broaden(sticks, 50.0, WidthKind::kFwhm, 1.0));
  }
}
BENCHMARK(BM_StickSpectrum)->Unit(benchmark::kMillisecond);

void BM_MeasureTarget(benchmark::State& state) {
  const TruncatedState s = apply_displacement(TruncatedState::Vacuum({16}), 0, 1.0);
  const DetectionModel model = DetectionModel::FromConfig(DeviceConfig{});
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(measure_target(s, {1}, model, 2000, ++seed));
  }
}
BENCHMARK(BM_MeasureTarget);

}  // namespace
}  // namespace vibronic
