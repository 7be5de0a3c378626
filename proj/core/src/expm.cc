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

#include "vibronic/expm.h"

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace vibronic {
namespace {

using Matrix = Eigen::MatrixXcd;

double OneNorm(const Matrix& a) {
  return a.cwiseAbs().colwise().sum().maxCoeff();
}

// Fills u (odd part) and v (even part) so that r(A) = (v - u)^{-1} (v + u).
template <std::size_t N>
void PadeLowOrder(const Matrix& a, const std::array<double, N>& b, Matrix& u,
                  Matrix& v) {
  const Matrix id = Matrix::Identity(a.rows(), a.cols());
  const Matrix a2 = a * a;
  Matrix power = id;
  Matrix odd = Matrix::Zero(a.rows(), a.cols());
  Matrix even = Matrix::Zero(a.rows(), a.cols());
  for (std::size_t k = 0; k + 1 < N; k += 2) {
    even += b[k] * power;
    odd += b[k + 1] * power;
    power = power * a2;
  }
  u = a * odd;
  v = even;
}

void Pade13(const Matrix& a, Matrix& u, Matrix& v) {
  static constexpr std::array<double, 14> b = {
      64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
      1187353796428800.0,  129060195264000.0,   10559470521600.0,
      670442572800.0,      33522128640.0,       1323241920.0,
      40840800.0,          960960.0,            16380.0,
      182.0,               1.0};
  const Matrix id = Matrix::Identity(a.rows(), a.cols());
  const Matrix a2 = a * a;
  const Matrix a4 = a2 * a2;
  const Matrix a6 = a4 * a2;
  const Matrix odd_high = b[13] * a6 + b[11] * a4 + b[9] * a2;
  u = a * (a6 * odd_high + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
  const Matrix even_high = b[12] * a6 + b[10] * a4 + b[8] * a2;
  v = a6 * even_high + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
}

}  // namespace

Matrix Expm(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("Expm: matrix must be square");
  }
  if (a.rows() == 0) return a;
  if (!a.allFinite()) {
    throw std::invalid_argument("Expm: matrix has non-finite entries");
  }

  static constexpr std::array<double, 4> kThetaLow = {
      1.495585217958292e-2, 2.539398330063230e-1, 9.504178996162932e-1,
      2.097847961257068e0};
  static constexpr double kTheta13 = 5.371920351148152e0;

  const double norm = OneNorm(a);
  Matrix u;
  Matrix v;
  int squarings = 0;
  if (norm <= kThetaLow[0]) {
    PadeLowOrder(a, std::array<double, 4>{120.0, 60.0, 12.0, 1.0}, u, v);
  } else if (norm <= kThetaLow[1]) {
    PadeLowOrder(a,
                 std::array<double, 6>{30240.0, 15120.0, 3360.0, 420.0, 30.0,
                                       1.0},
                 u, v);
  } else if (norm <= kThetaLow[2]) {
    PadeLowOrder(a,
                 std::array<double, 8>{17297280.0, 8648640.0, 1995840.0,
                                       277200.0, 25200.0, 1512.0, 56.0, 1.0},
                 u, v);
  } else if (norm <= kThetaLow[3]) {
    PadeLowOrder(a,
                 std::array<double, 10>{17643225600.0, 8821612800.0,
                                        2075673600.0, 302702400.0, 30270240.0,
                                        2162160.0, 110880.0, 3960.0, 90.0, 1.0},
                 u, v);
  } else {
    squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm / kTheta13))));
    Pade13(a / std::ldexp(1.0, squarings), u, v);
  }

  Matrix result = (v - u).partialPivLu().solve(v + u);
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

namespace {

// J_0(x) .. J_n(x) by backward recurrence, normalized with
// J_0 + 2 sum J_2k = 1. Stable for any order, unlike std::cyl_bessel_j.
std::vector<double> BesselSequence(int n, double x) {
  const int start = n + 40 + static_cast<int>(std::sqrt(40.0 * (n + 1)));
  std::vector<double> j(start + 2, 0.0);
  j[start + 1] = 0.0;
  j[start] = 1e-300;
  for (int k = start; k > 0; --k) {
    j[k - 1] = (2.0 * k / x) * j[k] - j[k + 1];
    if (std::abs(j[k - 1]) > 1e250) {
      for (int m = k - 1; m <= start; ++m) j[m] *= 1e-250;
    }
  }
  double norm = j[0];
  for (int k = 2; k <= start; k += 2) norm += 2.0 * j[k];
  j.resize(n + 1);
  for (double& v : j) v /= norm;
  return j;
}

}  // namespace

Matrix ExpmMultiply(const SparseGenerator& g, const Matrix& b) {
  if (g.rows() != g.cols() || g.cols() != b.rows()) {
    throw std::invalid_argument("ExpmMultiply: dimension mismatch");
  }
  double radius = 0.0;
  for (int r = 0; r < g.outerSize(); ++r) {
    double row = 0.0;
    for (SparseGenerator::InnerIterator it(g, r); it; ++it) {
      row += std::abs(it.value());
    }
    radius = std::max(radius, row);
  }
  if (!std::isfinite(radius)) {
    throw std::invalid_argument("ExpmMultiply: generator has non-finite entries");
  }
  if (radius == 0.0) return b;

  // x = H / R = i G / R; T_0 = b, T_1 = x b, T_{k+1} = 2 x T_k - T_{k-1}.
  const std::complex<double> scale(0.0, 1.0 / radius);
  const int max_terms = static_cast<int>(radius + 15.0 * std::cbrt(radius)) + 60;
  const std::vector<double> bessel = BesselSequence(max_terms, radius);

  Matrix previous = b;
  Matrix current = scale * (g * b);
  Matrix result = bessel[0] * previous;
  std::complex<double> phase(0.0, -1.0);  // (-i)^k
  Matrix next;
  for (int k = 1; k <= max_terms; ++k) {
    const double coeff = 2.0 * bessel[k];
    result += (coeff * phase) * current;
    if (k > radius && std::abs(coeff) < 1e-18) break;
    next = 2.0 * scale * (g * current) - previous;
    previous = std::move(current);
    current = std::move(next);
    phase *= std::complex<double>(0.0, -1.0);
  }
  return result;
}

}  // namespace vibronic
