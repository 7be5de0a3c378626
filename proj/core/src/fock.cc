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

#include "vibronic/fock.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "vibronic/errors.h"
#include "vibronic/expm.h"

namespace vibronic {
namespace {

// The padded basis doubles until the amplitude that reached its outer
// quarter, which bounds what a reflection off the artificial edge can feed
// back into the kept levels, is below this. The doubling stops after
// kMaxPaddingDoublings: a state that still reaches that far is dominated by
// leakage at the chosen cutoff anyway.
constexpr double kPaddingTolerance = 1e-12;
constexpr int kMaxPaddingDoublings = 2;

double sum_norm_sq(std::span<const Complex> amplitudes) {
  double total = 0.0;
  for (const Complex& a : amplitudes) total += std::norm(a);
  return total;
}

void check_finite(double value, const char* what) {
  if (!std::isfinite(value)) {
    throw InvalidParameterError(std::string(what) + " must be finite");
  }
}

void check_nonzero(const TruncatedState& state) {
  if (!(state.norm_sq() > 0.0)) {
    throw InvalidParameterError("cannot transform a state with zero norm");
  }
}

using Triplets = std::vector<Eigen::Triplet<Complex>>;
using GeneratorBuilder = SparseGenerator (*)(int dim, Complex param);

SparseGenerator from_triplets(int dim, const Triplets& entries) {
  SparseGenerator g(dim, dim);
  g.setFromTriplets(entries.begin(), entries.end());
  return g;
}

// delta a^dag - conj(delta) a
SparseGenerator displacement_generator(int dim, Complex delta) {
  Triplets t;
  t.reserve(2 * dim);
  for (int n = 0; n + 1 < dim; ++n) {
    const double s = std::sqrt(static_cast<double>(n + 1));
    t.emplace_back(n + 1, n, delta * s);
    t.emplace_back(n, n + 1, -std::conj(delta) * s);
  }
  return from_triplets(dim, t);
}

// (conj(z) a a - z a^dag a^dag) / 2
SparseGenerator squeeze_generator(int dim, Complex z) {
  Triplets t;
  t.reserve(2 * dim);
  for (int n = 0; n + 2 < dim; ++n) {
    const double s = std::sqrt(static_cast<double>(n + 1) * (n + 2));
    t.emplace_back(n + 2, n, -0.5 * z * s);
    t.emplace_back(n, n + 2, 0.5 * std::conj(z) * s);
  }
  return from_triplets(dim, t);
}

// exp(G) restricted to the first `cutoff` levels, applied to the columns of
// `columns` (cutoff rows). G is built in a padded basis.
Eigen::MatrixXcd padded_apply(GeneratorBuilder build, Complex param,
                              const Eigen::MatrixXcd& columns) {
  const auto cutoff = static_cast<int>(columns.rows());
  Eigen::MatrixXcd result(cutoff, columns.cols());
  // Columns whose tail still reaches the padded edge are rerun wider.
  std::vector<Eigen::Index> pending(static_cast<std::size_t>(columns.cols()));
  std::iota(pending.begin(), pending.end(), Eigen::Index{0});
  int dim = 2 * cutoff + 16;
  for (int doubling = 0; !pending.empty(); ++doubling, dim *= 2) {
    Eigen::MatrixXcd padded = Eigen::MatrixXcd::Zero(
        dim, static_cast<Eigen::Index>(pending.size()));
    for (std::size_t c = 0; c < pending.size(); ++c) {
      padded.col(static_cast<Eigen::Index>(c)).head(cutoff) =
          columns.col(pending[c]);
    }
    const Eigen::MatrixXcd evolved = ExpmMultiply(build(dim, param), padded);
    const int edge = dim - dim / 4;
    std::vector<Eigen::Index> again;
    for (std::size_t c = 0; c < pending.size(); ++c) {
      const auto col = static_cast<Eigen::Index>(c);
      const double tail = evolved.col(col).tail(dim - edge).norm();
      if (tail > kPaddingTolerance && doubling < kMaxPaddingDoublings) {
        again.push_back(pending[c]);
      } else {
        result.col(pending[c]) = evolved.col(col).head(cutoff);
      }
    }
    pending = std::move(again);
  }
  return result;
}

// Applies a single-mode generator to every fiber of the tensor along `mode`.
TruncatedState apply_single_mode(const TruncatedState& state, int mode,
                                 GeneratorBuilder build, Complex param) {
  const int dim = state.cutoff(mode);
  const std::size_t stride = state.stride(mode);
  const std::size_t block = stride * static_cast<std::size_t>(dim);
  std::span<const Complex> in = state.amplitudes();

  // Only fibers that carry amplitude are propagated.
  std::vector<std::size_t> bases;
  for (std::size_t outer = 0; outer < in.size(); outer += block) {
    for (std::size_t inner = 0; inner < stride; ++inner) {
      const std::size_t base = outer + inner;
      for (int k = 0; k < dim; ++k) {
        if (in[base + k * stride] != Complex{}) {
          bases.push_back(base);
          break;
        }
      }
    }
  }
  Eigen::MatrixXcd fibers(dim, static_cast<Eigen::Index>(bases.size()));
  for (std::size_t f = 0; f < bases.size(); ++f) {
    for (int k = 0; k < dim; ++k) fibers(k, f) = in[bases[f] + k * stride];
  }
  const Eigen::MatrixXcd result = padded_apply(build, param, fibers);
  std::vector<Complex> out(in.size(), Complex{});
  for (std::size_t f = 0; f < bases.size(); ++f) {
    for (int k = 0; k < dim; ++k) out[bases[f] + k * stride] = result(k, f);
  }
  return TruncatedState(state.cutoffs(), std::move(out));
}

}  // namespace

int FockIndex::total() const {
  return std::accumulate(occupations_.begin(), occupations_.end(), 0);
}

std::string to_string(const FockIndex& index) {
  std::ostringstream out;
  out << '|';
  for (std::size_t k = 0; k < index.size(); ++k) {
    if (k) out << ',';
    out << index[k];
  }
  out << '>';
  return out.str();
}

TruncatedState::TruncatedState(std::vector<int> cutoffs,
                               std::vector<Complex> amplitudes)
    : cutoffs_(std::move(cutoffs)), amplitudes_(std::move(amplitudes)) {
  if (cutoffs_.empty()) {
    throw InvalidDimensionError("a state needs at least one mode");
  }
  std::size_t count = 1;
  for (int c : cutoffs_) {
    if (c < 2) {
      throw InvalidDimensionError("every cutoff must be >= 2, got " +
                                  std::to_string(c));
    }
    count *= static_cast<std::size_t>(c);
  }
  if (amplitudes_.size() != count) {
    throw InvalidDimensionError("expected " + std::to_string(count) +
                                " amplitudes, got " +
                                std::to_string(amplitudes_.size()));
  }
  strides_.assign(cutoffs_.size(), 1);
  for (int k = static_cast<int>(cutoffs_.size()) - 2; k >= 0; --k) {
    strides_[k] = strides_[k + 1] * static_cast<std::size_t>(cutoffs_[k + 1]);
  }
  norm_sq_ = sum_norm_sq(amplitudes_);
}

TruncatedState TruncatedState::Vacuum(std::vector<int> cutoffs) {
  FockIndex zeros(std::vector<int>(cutoffs.size(), 0));
  return Basis(std::move(cutoffs), zeros);
}

TruncatedState TruncatedState::Basis(std::vector<int> cutoffs,
                                     const FockIndex& index) {
  std::size_t count = 1;
  for (int c : cutoffs) count *= static_cast<std::size_t>(std::max(c, 0));
  TruncatedState state(std::move(cutoffs), std::vector<Complex>(count));
  state.amplitudes_[state.linear_index(index)] = 1.0;
  state.norm_sq_ = 1.0;
  return state;
}

std::size_t TruncatedState::linear_index(const FockIndex& index) const {
  if (index.size() != cutoffs_.size()) {
    throw IndexError("index " + to_string(index) + " has " +
                     std::to_string(index.size()) + " modes, state has " +
                     std::to_string(cutoffs_.size()));
  }
  std::size_t linear = 0;
  for (std::size_t k = 0; k < cutoffs_.size(); ++k) {
    if (index[k] < 0 || index[k] >= cutoffs_[k]) {
      throw IndexError("index " + to_string(index) +
                       " outside cutoff on mode " + std::to_string(k));
    }
    linear += static_cast<std::size_t>(index[k]) * strides_[k];
  }
  return linear;
}

FockIndex TruncatedState::index_at(std::size_t linear) const {
  if (linear >= amplitudes_.size()) {
    throw IndexError("linear index out of range");
  }
  std::vector<int> occ(cutoffs_.size());
  for (std::size_t k = 0; k < cutoffs_.size(); ++k) {
    occ[k] = static_cast<int>(linear / strides_[k]);
    linear %= strides_[k];
  }
  return FockIndex(std::move(occ));
}

Complex TruncatedState::amplitude(const FockIndex& index) const {
  return amplitudes_[linear_index(index)];
}

std::string describe(const GaussianOp& op) {
  std::ostringstream out;
  out.precision(12);
  std::visit(
      [&](const auto& o) {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, Displace>) {
          out << "Displace(mode=" << o.mode << ", delta=" << o.delta.real();
          if (o.delta.imag() != 0.0) out << (o.delta.imag() < 0 ? "" : "+") << o.delta.imag() << "i";
          out << ")";
        } else if constexpr (std::is_same_v<T, Squeeze>) {
          out << "Squeeze(mode=" << o.mode << ", zeta=" << o.zeta
              << ", phase=" << o.phase << ")";
        } else {
          out << "Rotate(modes=" << o.mode_i << "," << o.mode_j
              << ", theta=" << o.theta << ", phase=" << o.phase << ")";
        }
      },
      op);
  return out.str();
}

void validate_op(const GaussianOp& op, int num_modes) {
  auto check = [num_modes](int mode) {
    if (mode < 0 || mode >= num_modes) {
      throw IndexError("mode " + std::to_string(mode) + " out of range for " +
                       std::to_string(num_modes) + "-mode state");
    }
  };
  std::visit(
      [&](const auto& o) {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, Displace>) {
          check(o.mode);
          check_finite(o.delta.real(), "displacement");
          check_finite(o.delta.imag(), "displacement");
        } else if constexpr (std::is_same_v<T, Squeeze>) {
          check(o.mode);
          check_finite(o.zeta, "squeezing parameter");
          check_finite(o.phase, "squeezing phase");
        } else {
          if (o.mode_i == o.mode_j) {
            throw InvalidParameterError("rotation needs two distinct modes");
          }
          check(o.mode_i);
          check(o.mode_j);
          check_finite(o.theta, "rotation angle");
          check_finite(o.phase, "rotation phase");
        }
      },
      op);
}

TruncatedState new_vacuum(int num_modes, std::span<const int> cutoffs) {
  if (num_modes < 1) {
    throw InvalidDimensionError("need at least one mode");
  }
  if (cutoffs.size() != static_cast<std::size_t>(num_modes)) {
    throw InvalidDimensionError("expected " + std::to_string(num_modes) +
                                " cutoffs, got " +
                                std::to_string(cutoffs.size()));
  }
  return TruncatedState::Vacuum({cutoffs.begin(), cutoffs.end()});
}

Eigen::MatrixXcd displacement_matrix(int cutoff, Complex delta) {
  if (cutoff < 2) throw InvalidDimensionError("cutoff must be >= 2");
  return padded_apply(&displacement_generator, delta,
                      Eigen::MatrixXcd::Identity(cutoff, cutoff));
}

Eigen::MatrixXcd squeeze_matrix(int cutoff, double zeta, double phase) {
  if (cutoff < 2) throw InvalidDimensionError("cutoff must be >= 2");
  return padded_apply(&squeeze_generator, std::polar(zeta, phase),
                      Eigen::MatrixXcd::Identity(cutoff, cutoff));
}

TruncatedState apply_displacement(const TruncatedState& state, int mode,
                                  Complex delta) {
  validate_op(Displace{mode, delta}, state.num_modes());
  check_nonzero(state);
  if (delta == Complex{}) return state;
  return apply_single_mode(state, mode, &displacement_generator, delta);
}

TruncatedState apply_squeeze(const TruncatedState& state, int mode,
                             double zeta, double phase) {
  validate_op(Squeeze{mode, zeta, phase}, state.num_modes());
  check_nonzero(state);
  if (zeta == 0.0) return state;
  return apply_single_mode(state, mode, &squeeze_generator,
                           std::polar(zeta, phase));
}

TruncatedState apply_rotation(const TruncatedState& state, int mode_i,
                              int mode_j, double theta, double phase) {
  validate_op(Rotate{mode_i, mode_j, theta, phase}, state.num_modes());
  check_nonzero(state);
  if (theta == 0.0) return state;

  // The generator conserves n_i + n_j, so it is block diagonal over sectors
  // of fixed total N. Each sector is complete at dimension N + 1; only the
  // components inside the cutoffs are kept afterwards.
  const int ci = state.cutoff(mode_i);
  const int cj = state.cutoff(mode_j);
  const int max_total = (ci - 1) + (cj - 1);
  const Complex up = theta * std::polar(1.0, phase);
  const Complex down = theta * std::polar(1.0, -phase);
  const std::size_t si = state.stride(mode_i);
  const std::size_t sj = state.stride(mode_j);
  std::span<const Complex> in = state.amplitudes();
  std::vector<Complex> out(in.size(), Complex{});

  // Spectator configurations are the entries with n_i = n_j = 0.
  std::vector<std::size_t> spectators;
  for (std::size_t base = 0; base < in.size(); ++base) {
    if ((base / si) % ci == 0 && (base / sj) % cj == 0) spectators.push_back(base);
  }

  for (int total = 0; total <= max_total; ++total) {
    const int k_lo = std::max(0, total - (cj - 1));
    const int k_hi = std::min(total, ci - 1);
    std::vector<std::size_t> active;
    for (std::size_t base : spectators) {
      for (int k = k_lo; k <= k_hi; ++k) {
        if (in[base + k * si + (total - k) * sj] != Complex{}) {
          active.push_back(base);
          break;
        }
      }
    }
    if (active.empty()) continue;

    // Basis element k is |n_i = k, n_j = total - k>.
    Triplets t;
    t.reserve(2 * total);
    for (int k = 0; k < total; ++k) {
      const double s = std::sqrt(static_cast<double>(k + 1) * (total - k));
      t.emplace_back(k + 1, k, up * s);
      t.emplace_back(k, k + 1, -down * s);
    }
    const SparseGenerator g = from_triplets(total + 1, t);

    Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(total + 1, active.size());
    for (std::size_t c = 0; c < active.size(); ++c) {
      for (int k = k_lo; k <= k_hi; ++k) {
        x(k, c) = in[active[c] + k * si + (total - k) * sj];
      }
    }
    const Eigen::MatrixXcd y = ExpmMultiply(g, x);
    for (std::size_t c = 0; c < active.size(); ++c) {
      for (int k = k_lo; k <= k_hi; ++k) {
        out[active[c] + k * si + (total - k) * sj] = y(k, c);
      }
    }
  }
  return TruncatedState(state.cutoffs(), std::move(out));
}

TruncatedState apply_op(const TruncatedState& state, const GaussianOp& op) {
  return std::visit(
      [&](const auto& o) -> TruncatedState {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, Displace>) {
          return apply_displacement(state, o.mode, o.delta);
        } else if constexpr (std::is_same_v<T, Squeeze>) {
          return apply_squeeze(state, o.mode, o.zeta, o.phase);
        } else {
          return apply_rotation(state, o.mode_i, o.mode_j, o.theta, o.phase);
        }
      },
      op);
}

TruncatedState apply_sequence(const TruncatedState& state,
                              std::span<const GaussianOp> ops) {
  for (const GaussianOp& op : ops) validate_op(op, state.num_modes());
  TruncatedState current = state;
  for (const GaussianOp& op : ops) current = apply_op(current, op);
  return current;
}

double probability(const TruncatedState& state, const FockIndex& index) {
  return std::norm(state.amplitude(index));
}

double leakage(const TruncatedState& state) {
  return std::max(0.0, 1.0 - state.norm_sq());
}

AutoCutoffResult run_with_auto_cutoff(int num_modes,
                                      std::span<const GaussianOp> ops,
                                      const AutoCutoffOptions& options) {
  if (options.initial_cutoff < 2 || options.max_cutoff < options.initial_cutoff) {
    throw ConfigurationError("auto-cutoff needs 2 <= initial <= max");
  }
  std::vector<std::pair<int, double>> history;
  int cutoff = options.initial_cutoff;
  while (true) {
    const std::vector<int> cutoffs(num_modes, cutoff);
    TruncatedState state = apply_sequence(new_vacuum(num_modes, cutoffs), ops);
    const double leak = leakage(state);
    history.emplace_back(cutoff, leak);
    if (leak < options.leakage_tolerance) {
      return {std::move(state), cutoffs, std::move(history)};
    }
    if (cutoff >= options.max_cutoff) {
      std::ostringstream msg;
      msg << "leakage " << leak << " at cutoff " << cutoff
          << " per mode still exceeds " << options.leakage_tolerance
          << " (cap " << options.max_cutoff << ")";
      throw LeakageError(msg.str(), leak);
    }
    cutoff = std::min(2 * cutoff, options.max_cutoff);
  }
}

}  // namespace vibronic
