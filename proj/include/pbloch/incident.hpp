// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <numbers>

#include "pbloch/geometry.hpp"

namespace pbloch {

/// Herglotz density: (t-0.5)^6 (t-1.3)^6 on (0.5, 1.3), mirrored onto
/// (-1.3, -0.5), zero elsewhere, normalized to unit sup-norm.
double herglotz_density(double t);

/// Support of the density on the positive half-line.
inline constexpr double kHerglotzLower = 0.5;
inline constexpr double kHerglotzUpper = 1.3;

/// u^i(x) = int_{-pi/2}^{pi/2} exp(i k (x1 sin t - x2 cos t)) h(t) dt.
std::complex<double> herglotz_field(const Point& x, double k);

/// Bloch transform of u^i at quasi-momentum alpha: the sum over propagating
/// indices of exp(i xi x1 - i b x2) h(arcsin(xi/k)) / b with xi = Lambda* j - alpha,
/// b = sqrt(k^2 - xi^2), scaled by sqrt(2 pi / Lambda) (one for Lambda = 2 pi).
std::complex<double> bloch_incident(double alpha, const Point& x, double k,
                                    double Lambda = 2 * std::numbers::pi);

/// Boundary data F(alpha, x1) = d2(J u^i) - T_alpha(J u^i) on x2 = H:
/// -2i sum exp(i xi x1 - i b H) h(arcsin(xi/k)), same scaling as bloch_incident.
std::complex<double> rhs_data_F(double alpha, double x1, double k, double H,
                                double Lambda = 2 * std::numbers::pi);

/// Exact total field above the flat Dirichlet line x2 = surface.
std::complex<double> exact_flat_total(const Point& x, double k, double surface = 1.1);

/// Bloch transform of exact_flat_total.
std::complex<double> exact_flat_bloch(double alpha, const Point& x, double k, double surface = 1.1,
                                      double Lambda = 2 * std::numbers::pi);

}  // namespace pbloch
