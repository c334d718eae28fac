// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <vector>

namespace pbloch {

enum class WavenumberCase { Case1, Case2 };

/// Classification of the wavenumber relative to the dual lattice.
///
/// The quasi-momentum interval is W* = (a0, a1] = (-k_under, Lambda* - k_under],
/// and S lists the points of closure(W*) at which some mode j satisfies
/// |Lambda* j - alpha| = k.
struct WavenumberClass {
  double k = 0.0;
  double Lambda = 0.0;
  double lambda_star = 0.0;
  double k_under = 0.0;
  WavenumberCase case_id = WavenumberCase::Case1;
  std::vector<double> S;
  double a0 = 0.0;
  double a1 = 0.0;

  double width() const { return a1 - a0; }
};

WavenumberClass exceptional_set(double k, double Lambda);

enum class CutoffKind {
  Polynomial,   ///< c * int_0^s tau^{n+1} (1 - tau)^{n+1}
  Exponential,  ///< normalized C-infinity bump exp(-1 / (tau (1 - tau)))
  Identity,     ///< g(t) = t; the unmodified scheme, kept for diagnostics
};

/// Monotone reparameterization g of W*, flat to order n+2 at each point of S.
class GMap {
public:
  GMap(const WavenumberClass& wc, int n, CutoffKind kind = CutoffKind::Polynomial);

  struct Value {
    double g;
    double gprime;
  };

  /// Throws DomainError for t outside closure(W*).
  Value operator()(double t) const;

  int order() const { return n_; }
  CutoffKind kind() const { return kind_; }
  const WavenumberClass& wavenumber_class() const { return wc_; }

  /// Normalized cutoff G on [0, 1] and its derivative.
  double cutoff(double s) const;
  double cutoff_derivative(double s) const;

private:
  WavenumberClass wc_;
  int n_;
  CutoffKind kind_;
  double norm_ = 1.0;
  std::vector<double> poly_;  // coefficients of the antiderivative in powers of s
};

GMap build_g(const WavenumberClass& wc, int n, CutoffKind kind = CutoffKind::Polynomial);

/// c = 1 / B(n+2, n+2) = (2n+3)! / ((n+1)!)^2.
double cutoff_normalization(int n);

struct QuadratureGrid {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// t_j = a0 + (a1 - a0) j / N, j = 1..N, with periodic-trapezoid weights.
/// Throws ConfigError when N is odd or below 2.
QuadratureGrid quad_nodes(const WavenumberClass& wc, int N);

/// Trigonometric interpolant through samples on the uniform grid of
/// `quad_nodes` over the interval (a0, a1].
std::complex<double> interp_eval(std::span<const std::complex<double>> samples, double a0,
                                 double a1, double t);

/// Per-node data used by the discrete scheme: alpha_m = g(t_m) and the
/// reconstruction weights omega_m g'(t_m).
struct BlochNodes {
  std::vector<double> t;
  std::vector<double> alpha;
  std::vector<double> weight;

  int size() const { return static_cast<int>(alpha.size()); }
};

BlochNodes bloch_nodes(const GMap& g, int N);

/// Weights V(r, m) = int psi_m(t) g'(t) e^{-i g(t) X_r} dt over (a0, a1], where
/// psi_m is the interpolation basis of `interp_eval` on the N-point grid, so that
/// sum_m V(r, m) f_m is the exact t-integral of the interpolant of the samples f_m
/// against g' e^{-i g X_r}. Evaluated by a fine periodic trapezoid rule.
Eigen::MatrixXcd interpolatory_weights(const GMap& g, int N, std::span<const double> X);

}  // namespace pbloch
