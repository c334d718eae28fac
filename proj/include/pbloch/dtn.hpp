// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <complex>

#include "pbloch/mesh.hpp"

namespace pbloch {

using cdouble = std::complex<double>;

/// DtN symbol i sqrt(k^2 - xi^2): purely imaginary with positive imaginary
/// part for |xi| < k, zero at |xi| = k, and -sqrt(xi^2 - k^2) (decaying
/// upward) for |xi| > k.
cdouble beta(double k, double xi);

/// Truncated quasi-periodic DtN operator on the top-edge trace, acting on the
/// periodic part of the field.
struct DtnBlock {
  double alpha = 0.0;
  int M_dtn = 0;
  Eigen::VectorXcd beta;  ///< beta(k, Lambda* j - alpha), j = -M..M
  /// Fourier coefficients of the top-edge hats: E(j, b) = (1/Lambda) int phi_b e^{-i Lambda* j x1}.
  Eigen::MatrixXcd E;
  /// Lambda E^H diag(beta) E, indexed by top-edge position.
  Eigen::MatrixXcd trace_matrix;
};

/// Default truncation: max(ceil(k / Lambda*) + 8, 16), capped at n_top / 2.
int default_M_dtn(double k, double Lambda, int n_top);

/// Throws ConfigError when 2 M_dtn exceeds the number of top-edge nodes or
/// M_dtn < ceil(k / Lambda*) + 2.
DtnBlock dtn_matrix(const PeriodicMesh& mesh, double alpha, double k, int M_dtn);

}  // namespace pbloch
