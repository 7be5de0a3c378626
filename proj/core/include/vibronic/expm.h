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

#ifndef VIBRONIC_EXPM_H_
#define VIBRONIC_EXPM_H_

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace vibronic {

// Dense matrix exponential by scaling and squaring with a diagonal Padé
// approximant of degree 3, 5, 7, 9 or 13, chosen from the 1-norm of the
// argument (Higham 2005 backward-error thresholds for double precision).
Eigen::MatrixXcd Expm(const Eigen::MatrixXcd& a);

using SparseGenerator = Eigen::SparseMatrix<std::complex<double>, Eigen::RowMajor>;

// exp(G) * B for anti-Hermitian G (G^dag = -G), without forming exp(G).
// Writing G = -i H with H Hermitian, the Chebyshev expansion
//   exp(-i H) = sum_k (2 - [k == 0]) (-i)^k J_k(R) T_k(H / R)
// converges once k exceeds R, the Gershgorin bound on the spectrum of H.
// The result is not checked for anti-Hermiticity; other inputs give
// meaningless output.
Eigen::MatrixXcd ExpmMultiply(const SparseGenerator& g, const Eigen::MatrixXcd& b);

}  // namespace vibronic

#endif  // VIBRONIC_EXPM_H_
