// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include "pbloch/profile.hpp"

namespace pbloch {

using Point = Eigen::Vector2d;

/// Periodic profile zeta, perturbation p (zeta_p = zeta + p) and the strip
/// parameters: period Lambda, top height H and blending height H0.
class SurfacePair {
public:
  /// Validates sup zeta_p < H0 < H, the periodicity of zeta, and the
  /// invertibility guard sup|p| < 0.3 (H0 - sup zeta). Throws ConfigError for
  /// parameter violations and GeometryError when the guard fails.
  SurfacePair(Profile zeta, Profile p, double Lambda, double H, double H0);

  const Profile& zeta() const { return zeta_; }
  const Profile& perturbation() const { return p_; }
  double zeta_p(double x1) const { return zeta_(x1) + p_(x1); }

  double Lambda() const { return Lambda_; }
  double H() const { return H_; }
  double H0() const { return H0_; }

  double sup_zeta() const { return sup_zeta_; }
  double min_zeta() const { return min_zeta_; }
  double sup_abs_p() const { return sup_abs_p_; }
  bool unperturbed() const { return p_.is_zero(); }

private:
  Profile zeta_;
  Profile p_;
  double Lambda_;
  double H_;
  double H0_;
  double sup_zeta_ = 0.0;
  double min_zeta_ = 0.0;
  double sup_abs_p_ = 0.0;
};

struct Diffeo {
  Point image;
  Eigen::Matrix2d jacobian;
};

/// Flattening map Theta_p: periodic strip -> perturbed strip,
/// Theta_p(x1, x2) = (x1, x2 + p(x1) chi(x1, x2)) with the cubic blending
/// chi = ((H0 - x2) / (H0 - zeta(x1)))^3 below H0 and identity above.
/// Throws DomainError when x2 < zeta(x1).
Diffeo diffeo(const SurfacePair& sp, const Point& x);

/// Transformed coefficients of the flattened problem.
struct Coefficients {
  Eigen::Matrix2d A;  ///< |det J| J^{-1} J^{-T}
  double c;           ///< |det J|
};

Coefficients coefficients(const SurfacePair& sp, const Point& x);

/// Coefficients from a precomputed Jacobian. For the lower-triangular
/// Jacobians produced by `diffeo` the determinant of A is exactly one.
Coefficients coefficients_from_jacobian(const Eigen::Matrix2d& jacobian);

}  // namespace pbloch
