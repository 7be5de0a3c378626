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

#ifndef VIBRONIC_DOKTOROV_H_
#define VIBRONIC_DOKTOROV_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "vibronic/fock.h"

namespace vibronic {

inline constexpr double kDefaultScale = 25.0;

// Device limit on a single squeezing parameter; exceeding it is a warning.
inline constexpr double kSqueezeGuard = 4.0;

// Published Duschinsky matrices are rounded to three decimals, which leaves
// |U^T U - I| around 1e-3.
inline constexpr double kDefaultOrthogonalityTolerance = 2e-3;

// Units for converting a mass-weighted displacement d into the
// dimensionless delta = sqrt(omega' / (2 hbar)) d. Frequencies are always
// wavenumbers (cm^-1).
enum class UnitSystem {
  kAmuAngstrom,  // d in amu^(1/2) Angstrom
  kAtomic,       // d in bohr m_e^(1/2), hbar = 1
};

// Throws ConfigurationError for unknown names.
UnitSystem parse_unit_system(std::string_view name);
std::string_view to_string(UnitSystem system);

struct MolecularParams {
  std::string name;
  std::vector<double> omega_initial;  // cm^-1
  std::vector<double> omega_final;    // cm^-1
  Eigen::MatrixXd duschinsky;         // Q' = U Q + d
  std::optional<std::vector<double>> delta;
  std::optional<std::vector<double>> d;
  UnitSystem unit_system = UnitSystem::kAmuAngstrom;
  double omega_00 = 0.0;  // cm^-1

  int num_modes() const { return static_cast<int>(omega_initial.size()); }

  // Throws InvalidParameterError on the first violated invariant.
  void validate(double orthogonality_tol = kDefaultOrthogonalityTolerance) const;

  // delta as given, or converted from d.
  std::vector<double> dimensionless_displacement() const;
};

// Ops in application order: S(zeta) on every mode, R(U), S(-zeta') on every
// mode, D(delta) on every mode. The parameter vectors are kept alongside for
// reporting; zeta_prime is stored with its natural sign.
struct DoktorovSequence {
  std::vector<GaussianOp> ops;
  double scale = kDefaultScale;
  std::vector<double> zeta;
  double theta = 0.0;
  std::vector<double> zeta_prime;
  std::vector<double> delta;
  std::vector<std::string> warnings;
};

// zeta_k = ln(sqrt(omega_k) / scale).
std::vector<double> squeezing_params(std::span<const double> freqs,
                                     double scale = kDefaultScale);

// theta for U = [[cos, sin], [-sin, cos]].
double rotation_angle_from_U(const Eigen::Matrix2d& u,
                             double tol = kDefaultOrthogonalityTolerance);

std::vector<double> delta_from_d(std::span<const double> d,
                                 std::span<const double> omega_final,
                                 UnitSystem units);
std::vector<double> d_from_delta(std::span<const double> delta,
                                 std::span<const double> omega_final,
                                 UnitSystem units);

// Only two-mode molecules are supported.
DoktorovSequence build_sequence(const MolecularParams& params,
                                double scale = kDefaultScale);

}  // namespace vibronic

#endif  // VIBRONIC_DOKTOROV_H_
