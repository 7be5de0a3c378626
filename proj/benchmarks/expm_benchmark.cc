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


#include <complex>

#include <benchmark/benchmark.h>

#include "vibronic/expm.h"

namespace vibronic {
namespace {

// Displacement-style generator on n levels: delta a^dag - delta a.
SparseGenerator Tridiagonal(int n, double delta) {
  std::vector<Eigen::Triplet<std::complex<double>>> t;
  for (int k = 0; k + 1 < n; ++k) {
    const double s = delta * std::sqrt(k + 1.0);
    t.emplace_back(k + 1, k, s);
    t.emplace_back(k, k + 1, -s);
  }
  SparseGenerator g(n, n);
  g.setFromTriplets(t.begin(), t.end());
  return g;
}

void BM_DenseExpm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Eigen::MatrixXcd g = Eigen::MatrixXcd(Tridiagonal(n, 1.5));
  for (auto _ : state) benchmark::DoNotOptimize(Expm(g));
}
BENCHMARK(BM_DenseExpm)->RangeMultiplier(2)->Range(16, 256);

void BM_ExpmMultiplyColumn(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SparseGenerator g = Tridiagonal(n, 1.5);
  const Eigen::MatrixXcd b = Eigen::MatrixXcd::Identity(n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(ExpmMultiply(g, b));
}
BENCHMARK(BM_ExpmMultiplyColumn)->RangeMultiplier(2)->Range(16, 1024);

}  // namespace
}  // namespace vibronic
