// SPDX-License-Identifier: Apache-2.0
#include "pbloch/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pbloch/error.hpp"

namespace pbloch {

namespace {

constexpr double kGuardFraction = 0.3;

// Half-width, in periods, of the window used to estimate sup|p| for
// non-periodic perturbations.
constexpr int kPerturbationWindow = 64;

}  // namespace

SurfacePair::SurfacePair(Profile zeta, Profile p, double Lambda, double H, double H0)
    : zeta_(std::move(zeta)), p_(std::move(p)), Lambda_(Lambda), H_(H), H0_(H0) {
  if (!(Lambda_ > 0.0)) throw ConfigError("Lambda must be positive");
  if (!(H0_ < H_)) throw ConfigError("H0 must be below H");

  constexpr int samples = 4096;
  sup_zeta_ = -INFINITY;
  min_zeta_ = INFINITY;
  for (int i = 0; i < samples; ++i) {
    const double x = -Lambda_ / 2 + Lambda_ * i / samples;
    const double z = zeta_(x);
    sup_zeta_ = std::max(sup_zeta_, z);
    min_zeta_ = std::min(min_zeta_, z);
    const double shifted = zeta_(x + Lambda_);
    if (std::abs(shifted - z) > 1e-12 * std::max(1.0, std::abs(z))) {
      throw ConfigError("profile '" + zeta_.id() + "' is not Lambda-periodic");
    }
  }

  if (!p_.is_zero()) {
    const int n = static_cast<int>(2 * kPerturbationWindow * Lambda_ / 0.01);
    for (int i = 0; i <= n; ++i) {
      const double x = -kPerturbationWindow * Lambda_ + 0.01 * i;
      sup_abs_p_ = std::max(sup_abs_p_, std::abs(p_(x)));
    }
  }

  if (!(sup_zeta_ + sup_abs_p_ < H0_)) {
    std::ostringstream os;
    os << "H0 = " << H0_ << " must lie above sup zeta_p = " << sup_zeta_ + sup_abs_p_;
    throw ConfigError(os.str());
  }
  if (!(sup_abs_p_ < kGuardFraction * (H0_ - sup_zeta_))) {
    std::ostringstream os;
    os << "perturbation too large for the blending map: sup|p| = " << sup_abs_p_
       << " >= " << kGuardFraction << " (H0 - sup zeta) = " << kGuardFraction * (H0_ - sup_zeta_);
    throw GeometryError(os.str());
  }
}

Diffeo diffeo(const SurfacePair& sp, const Point& x) {
  const double z = sp.zeta()(x[0]);
  if (x[1] < z - 1e-12 * std::max(1.0, std::abs(z))) {
    std::ostringstream os;
    os << "point (" << x[0] << ", " << x[1] << ") lies below the surface zeta = " << z;
    throw DomainError(os.str());
  }
  const double H0 = sp.H0();
  if (x[1] >= H0 || sp.unperturbed()) return {x, Eigen::Matrix2d::Identity()};

  const double p = sp.perturbation()(x[0]);
  const double dp = sp.perturbation().derivative(x[0]);
  const double dz = sp.zeta().derivative(x[0]);
  const double depth = H0 - z;
  const double r = (H0 - x[1]) / depth;
  const double chi = r * r * r;
  const double dchi_dx1 = 3.0 * chi * dz / depth;
  const double dchi_dx2 = -3.0 * r * r / depth;

  Diffeo d;
  d.image = Point(x[0], x[1] + p * chi);
  d.jacobian << 1.0, 0.0, dp * chi + p * dchi_dx1, 1.0 + p * dchi_dx2;
  if (!(d.jacobian(1, 1) > 0.0)) throw GeometryError("flattening map is not invertible");
  return d;
}

Coefficients coefficients_from_jacobian(const Eigen::Matrix2d& J) {
  // J = [[1, 0], [a, d]]  =>  |d| J^{-1} J^{-T} = [[d, -a], [-a, (1 + a^2)/d]].
  if (J(0, 1) == 0.0 && J(0, 0) == 1.0) {
    const double a = J(1, 0);
    const double d = J(1, 1);
    Coefficients c;
    c.A << d, -a, -a, (1.0 + a * a) / d;
    c.c = d;
    return c;
  }
  const double det = J.determinant();
  const Eigen::Matrix2d inv = J.inverse();
  return {std::abs(det) * inv * inv.transpose(), std::abs(det)};
}

Coefficients coefficients(const SurfacePair& sp, const Point& x) {
  return coefficients_from_jacobian(diffeo(sp, x).jacobian);
}

}  // namespace pbloch
