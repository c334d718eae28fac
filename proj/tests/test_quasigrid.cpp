#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <complex>
#include <vector>

#include "pbloch/error.hpp"
#include "pbloch/quasigrid.hpp"

using namespace pbloch;
using cd = std::complex<double>;

namespace {

constexpr double kTwoPi = 2 * M_PI;

double gk(const std::function<double(double)>& f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 12, 1e-13);
}

}  // namespace

TEST(Quasigrid, ExceptionalSetCases) {
  const auto c1 = exceptional_set(1.0, kTwoPi);
  EXPECT_EQ(c1.case_id, WavenumberCase::Case1);
  EXPECT_NEAR(c1.k_under, 0.0, 1e-15);
  EXPECT_NEAR(c1.a0, 0.0, 1e-15);
  EXPECT_NEAR(c1.a1, 1.0, 1e-15);
  ASSERT_EQ(c1.S.size(), 2u);
  EXPECT_NEAR(c1.S[0], 0.0, 1e-15);
  EXPECT_NEAR(c1.S[1], 1.0, 1e-15);

  const auto c15 = exceptional_set(1.5, kTwoPi);
  EXPECT_EQ(c15.case_id, WavenumberCase::Case1);
  EXPECT_NEAR(c15.k_under, 0.5, 1e-15);
  ASSERT_EQ(c15.S.size(), 2u);
  EXPECT_NEAR(c15.S[0], -0.5, 1e-15);
  EXPECT_NEAR(c15.S[1], 0.5, 1e-15);

  const auto c2 = exceptional_set(std::sqrt(2.0), kTwoPi);
  EXPECT_EQ(c2.case_id, WavenumberCase::Case2);
  EXPECT_NEAR(c2.k_under, 0.414214, 1e-6);
  ASSERT_EQ(c2.S.size(), 3u);
  EXPECT_NEAR(c2.S[0], -0.414214, 1e-6);
  EXPECT_NEAR(c2.S[1], 0.414214, 1e-6);
  EXPECT_NEAR(c2.S[2], 0.585786, 1e-6);

  EXPECT_THROW(exceptional_set(-1.0, kTwoPi), ConfigError);
}

TEST(Quasigrid, ExceptionalPointsAreCutOffModes) {
  // Every S-point has some j with |Lambda* j - alpha| = k, found by brute force.
  for (double k : {1.0, 1.5, std::sqrt(2.0), 2.3, 0.2}) {
    const auto wc = exceptional_set(k, kTwoPi);
    for (double s : wc.S) {
      double best = 1e300;
      for (int j = -10; j <= 10; ++j) best = std::min(best, std::abs(std::abs(j - s) - k));
      EXPECT_LT(best, 1e-12) << k << " " << s;
    }
    EXPECT_NEAR(wc.width(), 1.0, 1e-15);
  }
}

TEST(Quasigrid, NormalizationConstant) {
  EXPECT_DOUBLE_EQ(cutoff_normalization(5), 12012.0);
  EXPECT_THROW(build_g(exceptional_set(1.0, kTwoPi), 0), ConfigError);
}

TEST(Quasigrid, GMapValues) {
  const GMap g = build_g(exceptional_set(1.0, kTwoPi), 5);
  EXPECT_NEAR(g(0.5).gprime, 12012.0 * std::pow(0.5, 12), 1e-12);
  EXPECT_NEAR(g(0.5).gprime, 2.93262, 1e-5);
  EXPECT_NEAR(g(0.5).g, 0.5, 1e-14);

  const double oracle =
      12012.0 * gk([](double s) { return std::pow(s * (1 - s), 6); }, 0.0, 0.25);
  EXPECT_NEAR(g(0.25).g, oracle, 1e-12);

  const auto c2 = exceptional_set(std::sqrt(2.0), kTwoPi);
  const GMap g2 = build_g(c2, 5);
  EXPECT_NEAR(g2(c2.k_under).g, c2.k_under, 1e-14);
  EXPECT_EQ(g2(c2.k_under).gprime, 0.0);
  EXPECT_NEAR(g2(c2.a1).g, c2.a1, 1e-14);
  EXPECT_EQ(g2(c2.a1).gprime, 0.0);

  EXPECT_THROW(g(1.1), DomainError);
  EXPECT_THROW(g(-0.01), DomainError);
}

TEST(Quasigrid, GMapIntegratesItsDerivative) {
  for (double k : {1.0, std::sqrt(2.0)}) {
    const auto wc = exceptional_set(k, kTwoPi);
    for (CutoffKind kind : {CutoffKind::Polynomial, CutoffKind::Exponential}) {
      const GMap g = build_g(wc, 5, kind);
      for (double t : {wc.a0 + 0.1, wc.a0 + 0.37, wc.a0 + 0.8}) {
        const double integral = gk([&](double s) { return g(s).gprime; }, wc.a0, t);
        EXPECT_NEAR(g(t).g - wc.a0, integral, 1e-10);
      }
    }
  }
}

TEST(Quasigrid, GMapMonotoneAndFlat) {
  for (double k : {1.0, 1.5, std::sqrt(2.0)}) {
    const auto wc = exceptional_set(k, kTwoPi);
    const GMap g = build_g(wc, 5);
    double prev = g(wc.a0).g;
    for (int i = 1; i <= 10000; ++i) {
      const double v = g(wc.a0 + wc.width() * i / 10000.0).g;
      EXPECT_GE(v, prev);
      prev = v;
    }
    for (double s : wc.S) {
      EXPECT_NEAR(g(s).g, s, 1e-12);
      const double side = s < wc.a1 - 0.5 ? 1.0 : -1.0;
      const double d1 = 2e-3, d2 = 1e-3;
      const double order = std::log(g(s + side * d1).gprime / g(s + side * d2).gprime) /
                           std::log(d1 / d2);
      EXPECT_NEAR(order, 6.0, 0.3) << k << " " << s;
    }
  }
}

TEST(Quasigrid, IdentityCutoff) {
  const GMap g = build_g(exceptional_set(1.0, kTwoPi), 5, CutoffKind::Identity);
  EXPECT_EQ(g(0.3).g, 0.3);
  EXPECT_EQ(g(0.3).gprime, 1.0);
}

TEST(Quasigrid, QuadNodes) {
  const auto q = quad_nodes(exceptional_set(1.0, kTwoPi), 4);
  const std::vector<double> expect{0.25, 0.5, 0.75, 1.0};
  for (int i = 0; i < 4; ++i) {
    EXPECT_NEAR(q.nodes[i], expect[i], 1e-15);
    EXPECT_NEAR(q.weights[i], 0.25, 1e-15);
  }
  const auto q2 = quad_nodes(exceptional_set(1.5, kTwoPi), 2);
  EXPECT_NEAR(q2.nodes[0], 0.0, 1e-15);
  EXPECT_NEAR(q2.nodes[1], 0.5, 1e-15);
  EXPECT_NEAR(q2.weights[0], 0.5, 1e-15);
  EXPECT_THROW(quad_nodes(exceptional_set(1.0, kTwoPi), 5), ConfigError);
  EXPECT_THROW(quad_nodes(exceptional_set(1.0, kTwoPi), 0), ConfigError);
}

TEST(Quasigrid, BlochNodesWeights) {
  const GMap g = build_g(exceptional_set(std::sqrt(2.0), kTwoPi), 5);
  const BlochNodes nodes = bloch_nodes(g, 16);
  ASSERT_EQ(nodes.size(), 16);
  for (int m = 0; m < 16; ++m) {
    EXPECT_NEAR(nodes.alpha[m], g(nodes.t[m]).g, 0.0);
    EXPECT_NEAR(nodes.weight[m], g(nodes.t[m]).gprime / 16.0, 1e-15);
  }
  // The weights integrate g' over the unit-width interval with high algebraic order.
  std::vector<double> err;
  for (int N : {16, 32, 64}) {
    const BlochNodes b = bloch_nodes(g, N);
    double total = 0.0;
    for (double w : b.weight) total += w;
    err.push_back(std::abs(total - 1.0));
  }
  EXPECT_LT(err[1], err[0] / 64.0);
  EXPECT_LT(err[2], 1e-6);
}

TEST(Quasigrid, InterpolationKroneckerAndConstants) {
  const int N = 8;
  const double a0 = -0.3, a1 = 0.7;
  std::vector<cd> s(N);
  for (int j = 0; j < N; ++j) s[j] = cd(std::cos(1.7 * j), std::sin(0.3 * j * j));
  for (int j = 0; j < N; ++j) {
    const double t = a0 + (a1 - a0) * (j + 1) / N;
    EXPECT_NEAR(std::abs(interp_eval(s, a0, a1, t) - s[j]), 0.0, 1e-13);
  }
  std::vector<cd> c(N, cd(2.0, -1.0));
  for (double t : {-0.29, 0.0, 0.123, 0.69})
    EXPECT_NEAR(std::abs(interp_eval(c, a0, a1, t) - c[0]), 0.0, 1e-13);
}

TEST(Quasigrid, InterpolationReproducesTheFundamentalMode) {
  const int N = 8;
  const double a0 = 0.0, a1 = 1.0;
  auto f = [&](double t) { return std::polar(1.0, kTwoPi * t / (a1 - a0)); };
  std::vector<cd> s(N);
  for (int j = 0; j < N; ++j) s[j] = f(a0 + (a1 - a0) * (j + 1) / N);
  for (double t : {0.013, 0.27, 0.5, 0.91})
    EXPECT_NEAR(std::abs(interp_eval(s, a0, a1, t) - f(t)), 0.0, 1e-12);
}

TEST(Quasigrid, InterpolationRateBeatsFifthOrder) {
  auto f = [](double t) { return cd(1.0 / (1.5 - std::cos(kTwoPi * t)), std::sin(kTwoPi * t)); };
  std::vector<double> err;
  for (int N : {8, 16, 32, 64}) {
    std::vector<cd> s(N);
    for (int j = 0; j < N; ++j) s[j] = f((j + 1.0) / N);
    double e = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const double t = (i + 0.5) / 1000.0;
      e = std::max(e, std::abs(interp_eval(s, 0.0, 1.0, t) - f(t)));
    }
    err.push_back(e);
  }
  for (std::size_t i = 1; i < err.size(); ++i)
    EXPECT_LT(err[i], std::max(err[i - 1] / 32.0, 1e-13)) << i;
}

TEST(Quasigrid, InterpolatoryWeightsMatchDirectQuadrature) {
  const auto wc = exceptional_set(std::sqrt(2.0), kTwoPi);
  const GMap g = build_g(wc, 5);
  const int N = 8;
  const std::vector<double> X{0.0, kTwoPi * 3, -kTwoPi * 12, 4.1};
  const Eigen::MatrixXcd V = interpolatory_weights(g, N, X);
  ASSERT_EQ(V.rows(), 4);
  ASSERT_EQ(V.cols(), N);
  const double w = wc.width();
  for (int r = 0; r < 4; ++r) {
    for (int m = 0; m < N; ++m) {
      const double tm = wc.a0 + w * (m + 1) / N;
      auto integrand = [&](double t) {
        cd psi = 0.0;
        for (int l = -N / 2 + 1; l <= N / 2; ++l) psi += std::polar(1.0, kTwoPi * l * (t - tm) / w);
        psi /= double(N);
        const auto v = g(t);
        return psi * v.gprime * std::polar(1.0, -v.g * X[r]);
      };
      // Integrate piecewise between S-points so each piece is smooth.
      cd ref = 0.0;
      for (std::size_t i = 0; i + 1 < wc.S.size(); ++i) {
        ref += cd(gk([&](double t) { return integrand(t).real(); }, wc.S[i], wc.S[i + 1]),
                  gk([&](double t) { return integrand(t).imag(); }, wc.S[i], wc.S[i + 1]));
      }
      EXPECT_NEAR(std::abs(V(r, m) - ref), 0.0, 1e-10) << r << " " << m;
    }
  }
}

TEST(Quasigrid, InterpolatoryWeightsReduceToTrapezoidForResolvedCells) {
  const auto wc = exceptional_set(1.0, kTwoPi);
  const GMap g = build_g(wc, 5, CutoffKind::Identity);
  const int N = 8;
  std::vector<double> X;
  for (int j = -N / 2 + 1; j <= N / 2; ++j) X.push_back(kTwoPi * j);
  const Eigen::MatrixXcd V = interpolatory_weights(g, N, X);
  const BlochNodes nodes = bloch_nodes(g, N);
  for (std::size_t r = 0; r < X.size(); ++r)
    for (int m = 0; m < N; ++m)
      EXPECT_NEAR(std::abs(V(r, m) - std::polar(nodes.weight[m], -nodes.alpha[m] * X[r])), 0.0,
                  1e-12);
}
