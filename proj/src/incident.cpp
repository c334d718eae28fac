// SPDX-License-Identifier: Apache-2.0
#include "pbloch/incident.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

namespace pbloch {

namespace {

using cd = std::complex<double>;
using boost::math::quadrature::gauss_kronrod;

constexpr double kNorm = 1.6777216e-05;  // 0.4^12 = sup of the unnormalized density

// Adaptive Gauss-Kronrod over both support intervals.
template <class F>
cd integrate_support(F&& f) {
  constexpr double tol = 1e-14;
  auto re = [&](double t) { return f(t).real(); };
  auto im = [&](double t) { return f(t).imag(); };
  cd acc = 0.0;
  for (const auto& [a, b] : {std::pair{-kHerglotzUpper, -kHerglotzLower},
                             std::pair{kHerglotzLower, kHerglotzUpper}}) {
    acc += cd(gauss_kronrod<double, 31>::integrate(re, a, b, 15, tol),
              gauss_kronrod<double, 31>::integrate(im, a, b, 15, tol));
  }
  return acc;
}

template <class Term>
cd sum_propagating(double alpha, double k, double Lambda, Term&& term) {
  const double ls = 2.0 * std::numbers::pi / Lambda;
  const int jlo = static_cast<int>(std::ceil((alpha - k) / ls));
  const int jhi = static_cast<int>(std::floor((alpha + k) / ls));
  cd acc = 0.0;
  for (int j = jlo; j <= jhi; ++j) {
    const double xi = ls * j - alpha;
    if (!(std::abs(xi) < k)) continue;
    const double h = herglotz_density(std::asin(xi / k));
    if (h == 0.0) continue;
    acc += term(xi, std::sqrt(k * k - xi * xi), h);
  }
  return acc * std::sqrt(ls);
}

}  // namespace

double herglotz_density(double t) {
  const double s = std::abs(t);
  if (!(s > kHerglotzLower && s < kHerglotzUpper)) return 0.0;
  const double a = (s - kHerglotzLower) * (s - kHerglotzUpper);
  const double a3 = a * a * a;
  return a3 * a3 / kNorm;
}

cd herglotz_field(const Point& x, double k) {
  return integrate_support([&](double t) {
    return std::polar(herglotz_density(t), k * (x[0] * std::sin(t) - x[1] * std::cos(t)));
  });
}

cd exact_flat_total(const Point& x, double k, double surface) {
  return integrate_support([&](double t) {
    const double h = herglotz_density(t);
    const double s = std::sin(t), c = std::cos(t);
    return std::polar(h, k * (x[0] * s - x[1] * c)) -
           std::polar(h, k * (x[0] * s + (x[1] - 2.0 * surface) * c));
  });
}

cd bloch_incident(double alpha, const Point& x, double k, double Lambda) {
  return sum_propagating(alpha, k, Lambda, [&](double xi, double b, double h) {
    return std::polar(h / b, xi * x[0] - b * x[1]);
  });
}

cd rhs_data_F(double alpha, double x1, double k, double H, double Lambda) {
  return sum_propagating(alpha, k, Lambda, [&](double xi, double b, double h) {
    return cd(0.0, -2.0) * std::polar(h, xi * x1 - b * H);
  });
}

cd exact_flat_bloch(double alpha, const Point& x, double k, double surface, double Lambda) {
  return sum_propagating(alpha, k, Lambda, [&](double xi, double b, double h) {
    return std::polar(h / b, xi * x[0] - b * x[1]) -
           std::polar(h / b, xi * x[0] + b * (x[1] - 2.0 * surface));
  });
}

}  // namespace pbloch
