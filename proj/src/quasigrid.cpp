// SPDX-License-Identifier: Apache-2.0
#include "pbloch/quasigrid.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

#include "pbloch/error.hpp"

namespace pbloch {

WavenumberClass exceptional_set(double k, double Lambda) {
  if (!(k > 0.0) || !(Lambda > 0.0)) throw ConfigError("k and Lambda must be positive");
  WavenumberClass wc;
  wc.k = k;
  wc.Lambda = Lambda;
  wc.lambda_star = 2.0 * std::numbers::pi / Lambda;
  const double ls = wc.lambda_star;

  const double j0 = std::round(k / ls);
  double ku = std::abs(ls * j0 - k);
  const double tol = 1e-12 * std::max(1.0, k);
  if (ku < tol) {
    ku = 0.0;
    wc.case_id = WavenumberCase::Case1;
  } else if (std::abs(ku - ls / 2) < tol) {
    ku = ls / 2;
    wc.case_id = WavenumberCase::Case1;
  } else {
    wc.case_id = WavenumberCase::Case2;
  }
  wc.k_under = ku;
  wc.a0 = -ku;
  wc.a1 = ls - ku;
  if (wc.case_id == WavenumberCase::Case1) wc.S = {wc.a0, wc.a1};
  else wc.S = {wc.a0, ku, wc.a1};
  return wc;
}

double cutoff_normalization(int n) {
  // (2n+3)! / ((n+1)!)^2 = binomial(2n+2, n+1) * (2n+3)
  double binom = 1.0;
  for (int i = 1; i <= n + 1; ++i) binom = binom * (n + 1 + i) / i;
  return binom * (2 * n + 3);
}

GMap::GMap(const WavenumberClass& wc, int n, CutoffKind kind) : wc_(wc), n_(n), kind_(kind) {
  if (n < 1) throw ConfigError("cutoff order n must be at least 1");
  if (kind_ == CutoffKind::Polynomial) {
    norm_ = cutoff_normalization(n);
    // int_0^s tau^{n+1} (1-tau)^{n+1} = sum_i C(n+1,i) (-1)^i s^{n+2+i} / (n+2+i)
    poly_.assign(2 * n + 4, 0.0);
    double binom = 1.0;
    for (int i = 0; i <= n + 1; ++i) {
      poly_[n + 2 + i] = ((i % 2) ? -binom : binom) / (n + 2 + i);
      binom = binom * (n + 1 - i) / (i + 1);
    }
  } else if (kind_ == CutoffKind::Exponential) {
    auto bump = [](double s) { return s <= 0.0 || s >= 1.0 ? 0.0 : std::exp(-1.0 / (s * (1.0 - s))); };
    norm_ = 1.0 / boost::math::quadrature::gauss_kronrod<double, 31>::integrate(bump, 0.0, 1.0, 10,
                                                                               1e-14);
  }
}

double GMap::cutoff(double s) const {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  switch (kind_) {
    case CutoffKind::Identity:
      return s;
    case CutoffKind::Polynomial: {
      // The kernel is symmetric about 1/2; evaluate on the short side.
      const bool flip = s > 0.5;
      const double x = flip ? 1.0 - s : s;
      double acc = 0.0;
      for (int i = static_cast<int>(poly_.size()) - 1; i >= 0; --i) acc = acc * x + poly_[i];
      acc *= norm_;
      return flip ? 1.0 - acc : acc;
    }
    case CutoffKind::Exponential: {
      auto bump = [](double u) {
        return u <= 0.0 || u >= 1.0 ? 0.0 : std::exp(-1.0 / (u * (1.0 - u)));
      };
      const bool flip = s > 0.5;
      const double x = flip ? 1.0 - s : s;
      const double part =
          norm_ * boost::math::quadrature::gauss_kronrod<double, 31>::integrate(bump, 0.0, x, 10,
                                                                                1e-14);
      return flip ? 1.0 - part : part;
    }
  }
  return s;
}

double GMap::cutoff_derivative(double s) const {
  if (kind_ == CutoffKind::Identity) return 1.0;
  if (s <= 0.0 || s >= 1.0) return 0.0;
  if (kind_ == CutoffKind::Polynomial) {
    const double q = s * (1.0 - s);
    return norm_ * std::pow(q, n_ + 1);
  }
  return norm_ * std::exp(-1.0 / (s * (1.0 - s)));
}

GMap::Value GMap::operator()(double t) const {
  const double tol = 1e-12 * std::max(1.0, wc_.width());
  if (t < wc_.a0 - tol || t > wc_.a1 + tol) {
    std::ostringstream os;
    os << "t = " << t << " outside [" << wc_.a0 << ", " << wc_.a1 << "]";
    throw DomainError(os.str());
  }
  if (kind_ == CutoffKind::Identity) return {t, 1.0};
  const auto& S = wc_.S;
  // Piece [S[i], S[i+1]] containing t.
  std::size_t i = 0;
  while (i + 2 < S.size() && t > S[i + 1]) ++i;
  const double a = S[i];
  const double b = S[i + 1];
  const double s = std::clamp((t - a) / (b - a), 0.0, 1.0);
  if (s == 0.0) return {a, 0.0};
  if (s == 1.0) return {b, 0.0};
  return {a + (b - a) * cutoff(s), cutoff_derivative(s)};
}

GMap build_g(const WavenumberClass& wc, int n, CutoffKind kind) { return GMap(wc, n, kind); }

QuadratureGrid quad_nodes(const WavenumberClass& wc, int N) {
  if (N < 2 || N % 2 != 0) throw ConfigError("N must be even and at least 2");
  QuadratureGrid q;
  q.nodes.resize(N);
  q.weights.assign(N, wc.width() / N);
  for (int j = 1; j <= N; ++j) q.nodes[j - 1] = wc.a0 + wc.width() * j / N;
  q.nodes.back() = wc.a1;
  return q;
}

std::complex<double> interp_eval(std::span<const std::complex<double>> samples, double a0,
                                 double a1, double t) {
  const int N = static_cast<int>(samples.size());
  const double width = a1 - a0;
  const double omega = 2.0 * std::numbers::pi / width;
  std::complex<double> acc = 0.0;
  for (int j = 1; j <= N; ++j) {
    const double tj = a0 + width * j / N;
    std::complex<double> psi = 0.0;
    for (int l = -N / 2 + 1; l <= N / 2; ++l) psi += std::polar(1.0, l * (t - tj) * omega);
    acc += samples[j - 1] * psi / static_cast<double>(N);
  }
  return acc;
}

BlochNodes bloch_nodes(const GMap& g, int N) {
  const QuadratureGrid q = quad_nodes(g.wavenumber_class(), N);
  BlochNodes nodes;
  nodes.t = q.nodes;
  nodes.alpha.resize(N);
  nodes.weight.resize(N);
  for (int m = 0; m < N; ++m) {
    const auto v = g(q.nodes[m]);
    nodes.alpha[m] = v.g;
    nodes.weight[m] = q.weights[m] * v.gprime;
  }
  return nodes;
}

Eigen::MatrixXcd interpolatory_weights(const GMap& g, int N, std::span<const double> X) {
  const WavenumberClass& wc = g.wavenumber_class();
  const double width = wc.width();
  const double omega = 2.0 * std::numbers::pi / width;
  double x_max = 0.0;
  for (double x : X) x_max = std::max(x_max, std::abs(x));
  // Highest harmonic of psi_m g' e^{-i g X} in t is about N/2 + sup g' * |X| * width / 2 pi;
  // sup g' stays below 3 for the orders in use.
  const double harmonic = 0.5 * N + 3.0 * x_max * width / (2.0 * std::numbers::pi);
  int M = 4096;
  while (M < 16.0 * harmonic) M *= 2;

  Eigen::MatrixXcd basis(N, M);  // (1/N) sum_l e^{i l omega (tau_s - t_m)}
  Eigen::MatrixXcd integrand(M, static_cast<Eigen::Index>(X.size()));
  std::vector<double> tau(M), gv(M), gp(M);
  for (int s = 0; s < M; ++s) {
    tau[s] = wc.a0 + width * s / M;
    const auto v = g(tau[s]);
    gv[s] = v.g;
    gp[s] = v.gprime;
  }
  for (int m = 0; m < N; ++m) {
    const double tm = wc.a0 + width * (m + 1) / N;
    for (int s = 0; s < M; ++s) {
      // sum_{l=-N/2+1}^{N/2} e^{i l d} = e^{i d/2} sin(N d/2) / sin(d/2).
      const double d = omega * (tau[s] - tm);
      const double den = std::sin(0.5 * d);
      std::complex<double> acc = 0.0;
      if (std::abs(den) > 1e-8) {
        acc = std::polar(std::sin(0.5 * N * d) / den, 0.5 * d);
      } else {
        for (int l = -N / 2 + 1; l <= N / 2; ++l) acc += std::polar(1.0, l * d);
      }
      basis(m, s) = acc / static_cast<double>(N);
    }
  }
  for (std::size_t r = 0; r < X.size(); ++r)
    for (int s = 0; s < M; ++s)
      integrand(s, static_cast<Eigen::Index>(r)) = std::polar(gp[s] * width / M, -gv[s] * X[r]);
  return (basis * integrand).transpose();
}

}  // namespace pbloch
