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

#ifndef VIBRONIC_FOCK_H_
#define VIBRONIC_FOCK_H_

#include <complex>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace vibronic {

using Complex = std::complex<double>;

// Tolerance on the squared norm of a state; truncation may only lose norm.
inline constexpr double kNormEpsilon = 1e-12;

// Occupation numbers |m_1, ..., m_M>, one per mode.
class FockIndex {
 public:
  FockIndex() = default;
  FockIndex(std::initializer_list<int> occupations)
      : occupations_(occupations) {}
  explicit FockIndex(std::vector<int> occupations)
      : occupations_(std::move(occupations)) {}

  std::size_t size() const { return occupations_.size(); }
  int operator[](std::size_t mode) const { return occupations_[mode]; }
  const std::vector<int>& occupations() const { return occupations_; }
  int total() const;

  friend auto operator<=>(const FockIndex&, const FockIndex&) = default;

 private:
  std::vector<int> occupations_;
};

// "|1,2>"
std::string to_string(const FockIndex& index);

// Complex amplitudes over a multimode truncated Fock basis. Mode 0 is the
// slowest-varying axis of the row-major amplitude tensor.
class TruncatedState {
 public:
  TruncatedState(std::vector<int> cutoffs, std::vector<Complex> amplitudes);

  static TruncatedState Vacuum(std::vector<int> cutoffs);
  static TruncatedState Basis(std::vector<int> cutoffs, const FockIndex& index);

  int num_modes() const { return static_cast<int>(cutoffs_.size()); }
  const std::vector<int>& cutoffs() const { return cutoffs_; }
  int cutoff(int mode) const { return cutoffs_[mode]; }
  std::size_t size() const { return amplitudes_.size(); }
  std::size_t stride(int mode) const { return strides_[mode]; }

  std::span<const Complex> amplitudes() const { return amplitudes_; }
  Complex amplitude(const FockIndex& index) const;

  double norm_sq() const { return norm_sq_; }

  // Throws IndexError when the index does not fit the basis.
  std::size_t linear_index(const FockIndex& index) const;
  FockIndex index_at(std::size_t linear) const;

 private:
  std::vector<int> cutoffs_;
  std::vector<std::size_t> strides_;
  std::vector<Complex> amplitudes_;
  double norm_sq_ = 0.0;
};

// exp(delta a^dag - conj(delta) a) on one mode.
struct Displace {
  int mode = 0;
  Complex delta;
};

// exp((conj(z) a a - z a^dag a^dag) / 2) with z = zeta * exp(i phase).
struct Squeeze {
  int mode = 0;
  double zeta = 0.0;
  double phase = 0.0;
};

// exp(theta (e^{i phase} a_i^dag a_j - e^{-i phase} a_i a_j^dag)).
struct Rotate {
  int mode_i = 0;
  int mode_j = 1;
  double theta = 0.0;
  double phase = 0.0;
};

using GaussianOp = std::variant<Displace, Squeeze, Rotate>;

std::string describe(const GaussianOp& op);

// Throws InvalidParameterError / IndexError if the op cannot act on a state
// with `num_modes` modes.
void validate_op(const GaussianOp& op, int num_modes);

TruncatedState new_vacuum(int num_modes, std::span<const int> cutoffs);

TruncatedState apply_displacement(const TruncatedState& state, int mode,
                                  Complex delta);
TruncatedState apply_squeeze(const TruncatedState& state, int mode,
                             double zeta, double phase = 0.0);
TruncatedState apply_rotation(const TruncatedState& state, int mode_i,
                              int mode_j, double theta, double phase = 0.0);
TruncatedState apply_op(const TruncatedState& state, const GaussianOp& op);

// Ops are applied in list order, i.e. the list is the operator product read
// right to left.
TruncatedState apply_sequence(const TruncatedState& state,
                              std::span<const GaussianOp> ops);

double probability(const TruncatedState& state, const FockIndex& index);

// 1 - norm_sq, clamped at zero.
double leakage(const TruncatedState& state);

// Truncated single-mode propagators: the cutoff x cutoff block of the
// exponential of the generator built in a padded basis. The padding grows
// until the block is converged, so the block is a contraction and the norm
// it drops is the probability pushed past the cutoff.
Eigen::MatrixXcd displacement_matrix(int cutoff, Complex delta);
Eigen::MatrixXcd squeeze_matrix(int cutoff, double zeta, double phase = 0.0);

struct AutoCutoffOptions {
  int initial_cutoff = 8;
  int max_cutoff = 64;
  double leakage_tolerance = 1e-6;
};

struct AutoCutoffResult {
  TruncatedState state;
  std::vector<int> cutoffs;
  // Leakage seen at every cutoff tried, in order.
  std::vector<std::pair<int, double>> history;
};

// Runs `ops` on the vacuum, doubling a uniform per-mode cutoff until the
// leakage drops below the tolerance. Throws LeakageError past max_cutoff.
AutoCutoffResult run_with_auto_cutoff(int num_modes,
                                      std::span<const GaussianOp> ops,
                                      const AutoCutoffOptions& options = {});

}  // namespace vibronic

#endif  // VIBRONIC_FOCK_H_
