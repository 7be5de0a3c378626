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

#include "vibronic/doktorov.h"

#include <cmath>
#include <numbers>
#include <sstream>

#include "vibronic/errors.h"

namespace vibronic {
namespace {

constexpr double kSpeedOfLightCmPerS = 2.99792458e10;
constexpr double kHbarJs = 1.054571817e-34;
constexpr double kAtomicMassKg = 1.66053906660e-27;
constexpr double kAngstromM = 1e-10;
constexpr double kHartreeInvCm = 219474.6313632;

// delta_k = factor(omega'_k) * d_k
double displacement_factor(double omega_final, UnitSystem units) {
  if (!(omega_final > 0.0)) {
    throw InvalidParameterError("final-state frequencies must be positive");
  }
  switch (units) {
    case UnitSystem::kAmuAngstrom: {
      const double angular = 2.0 * std::numbers::pi * kSpeedOfLightCmPerS * omega_final;
      return std::sqrt(angular * kAtomicMassKg * kAngstromM * kAngstromM /
                       (2.0 * kHbarJs));
    }
    case UnitSystem::kAtomic:
      return std::sqrt(omega_final / kHartreeInvCm / 2.0);
  }
  throw ConfigurationError("unknown unit system");
}

void check_lengths(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    std::ostringstream msg;
    msg << what << ": length " << a << " does not match " << b << " modes";
    throw InvalidParameterError(msg.str());
  }
}

}  // namespace

UnitSystem parse_unit_system(std::string_view name) {
  if (name == "amu_angstrom") return UnitSystem::kAmuAngstrom;
  if (name == "atomic") return UnitSystem::kAtomic;
  throw ConfigurationError("unknown unit system '" + std::string(name) +
                           "' (expected amu_angstrom or atomic)");
}

std::string_view to_string(UnitSystem system) {
  switch (system) {
    case UnitSystem::kAmuAngstrom:
      return "amu_angstrom";
    case UnitSystem::kAtomic:
      return "atomic";
  }
  return "unknown";
}

void MolecularParams::validate(double orthogonality_tol) const {
  const std::size_t n = omega_initial.size();
  if (n == 0) throw InvalidParameterError("omega_initial is empty");
  check_lengths(omega_final.size(), n, "omega_final");
  for (double w : omega_initial) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw InvalidParameterError("omega_initial entries must be positive");
    }
  }
  for (double w : omega_final) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw InvalidParameterError("omega_final entries must be positive");
    }
  }
  if (duschinsky.rows() != static_cast<Eigen::Index>(n) ||
      duschinsky.cols() != static_cast<Eigen::Index>(n)) {
    throw InvalidParameterError("duschinsky must be " + std::to_string(n) +
                                "x" + std::to_string(n));
  }
  const double defect =
      (duschinsky.transpose() * duschinsky -
       Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (!(defect < orthogonality_tol)) {
    std::ostringstream msg;
    msg << "duschinsky is not orthogonal: max |U^T U - I| = " << defect
        << " (tolerance " << orthogonality_tol << ")";
    throw InvalidParameterError(msg.str());
  }
  if (delta.has_value() == d.has_value()) {
    throw InvalidParameterError("exactly one of delta and d must be given");
  }
  if (delta) check_lengths(delta->size(), n, "delta");
  if (d) check_lengths(d->size(), n, "d");
  if (!std::isfinite(omega_00)) {
    throw InvalidParameterError("omega_00 must be finite");
  }
}

std::vector<double> MolecularParams::dimensionless_displacement() const {
  if (delta) return *delta;
  if (d) return delta_from_d(*d, omega_final, unit_system);
  throw InvalidParameterError("no displacement given");
}

std::vector<double> squeezing_params(std::span<const double> freqs,
                                     double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw InvalidParameterError("scale must be positive");
  }
  std::vector<double> zeta;
  zeta.reserve(freqs.size());
  for (double w : freqs) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw InvalidParameterError("frequencies must be positive");
    }
    zeta.push_back(std::log(std::sqrt(w) / scale));
  }
  return zeta;
}

double rotation_angle_from_U(const Eigen::Matrix2d& u, double tol) {
  if (!u.allFinite()) throw NotARotationError("U has non-finite entries");
  const double det = u.determinant();
  if (det < 0.0 && std::abs(det + 1.0) <= tol) {
    throw UnsupportedReflectionError(
        "U has determinant -1 (a reflection); only proper rotations map to a "
        "two-mode beam splitter");
  }
  const double defect =
      (u.transpose() * u - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff();
  if (std::abs(det - 1.0) > tol || defect > tol) {
    std::ostringstream msg;
    msg << "U is not a rotation: det = " << det
        << ", max |U^T U - I| = " << defect;
    throw NotARotationError(msg.str());
  }
  const double theta = std::atan2(u(0, 1), u(0, 0));
  // Entries of U normalized to unit determinant must match the rotation form.
  const Eigen::Matrix2d normalized = u / std::sqrt(det);
  Eigen::Matrix2d expected;
  expected << std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta);
  const double mismatch = (normalized - expected).cwiseAbs().maxCoeff();
  if (mismatch > 1e-4) {
    std::ostringstream msg;
    msg << "U entries are inconsistent with a single rotation angle "
           "(mismatch " << mismatch << ")";
    throw NotARotationError(msg.str());
  }
  return theta;
}

std::vector<double> delta_from_d(std::span<const double> d,
                                 std::span<const double> omega_final,
                                 UnitSystem units) {
  check_lengths(d.size(), omega_final.size(), "d");
  std::vector<double> out(d.size());
  for (std::size_t k = 0; k < d.size(); ++k) {
    out[k] = displacement_factor(omega_final[k], units) * d[k];
  }
  return out;
}

std::vector<double> d_from_delta(std::span<const double> delta,
                                 std::span<const double> omega_final,
                                 UnitSystem units) {
  check_lengths(delta.size(), omega_final.size(), "delta");
  std::vector<double> out(delta.size());
  for (std::size_t k = 0; k < delta.size(); ++k) {
    out[k] = delta[k] / displacement_factor(omega_final[k], units);
  }
  return out;
}

DoktorovSequence build_sequence(const MolecularParams& params, double scale) {
  params.validate();
  if (params.num_modes() != 2) {
    throw UnsupportedDimensionError(
        "only two-mode molecules are supported (got " +
        std::to_string(params.num_modes()) +
        " modes); the general N-mode rotation needs a matrix logarithm");
  }

  DoktorovSequence seq;
  seq.scale = scale;
  seq.zeta = squeezing_params(params.omega_initial, scale);
  seq.zeta_prime = squeezing_params(params.omega_final, scale);
  seq.theta = rotation_angle_from_U(params.duschinsky);
  seq.delta = params.dimensionless_displacement();

  for (int k = 0; k < 2; ++k) seq.ops.push_back(Squeeze{k, seq.zeta[k], 0.0});
  seq.ops.push_back(Rotate{0, 1, seq.theta, 0.0});
  for (int k = 0; k < 2; ++k) seq.ops.push_back(Squeeze{k, -seq.zeta_prime[k], 0.0});
  for (int k = 0; k < 2; ++k) seq.ops.push_back(Displace{k, seq.delta[k]});

  for (const GaussianOp& op : seq.ops) {
    if (const auto* s = std::get_if<Squeeze>(&op);
        s && std::abs(s->zeta) > kSqueezeGuard) {
      std::ostringstream msg;
      msg << "|zeta| = " << std::abs(s->zeta) << " on mode " << s->mode
          << " exceeds the device limit " << kSqueezeGuard;
      seq.warnings.push_back(msg.str());
    }
  }
  return seq;
}

}  // namespace vibronic
