// SPDX-License-Identifier: Apache-2.0
#include "pbloch/dtn.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "pbloch/error.hpp"

namespace pbloch {

cdouble beta(double k, double xi) {
  const double d = k * k - xi * xi;
  if (d >= 0.0) return {0.0, std::sqrt(d)};
  return {-std::sqrt(-d), 0.0};
}

int default_M_dtn(double k, double Lambda, int n_top) {
  const double ls = 2.0 * std::numbers::pi / Lambda;
  const int M = std::max(static_cast<int>(std::ceil(k / ls)) + 8, 16);
  return std::min(M, n_top / 2);
}

DtnBlock dtn_matrix(const PeriodicMesh& mesh, double alpha, double k, int M) {
  const double Lambda = mesh.Lambda();
  const double ls = 2.0 * std::numbers::pi / Lambda;
  const int n_top = static_cast<int>(mesh.top_edge().size());
  if (2 * M > n_top) {
    std::ostringstream os;
    os << "DtN truncation M = " << M << " exceeds the top-edge Nyquist limit " << n_top / 2;
    throw ConfigError(os.str());
  }
  const int M_min = static_cast<int>(std::ceil(k / ls)) + 2;
  if (M < M_min) {
    std::ostringstream os;
    os << "DtN truncation M = " << M << " below the propagating-mode bound " << M_min;
    throw ConfigError(os.str());
  }

  const double spacing = Lambda / n_top;
  const double x_first = mesh.vertices()[mesh.top_edge().front()][0];

  DtnBlock block;
  block.alpha = alpha;
  block.M_dtn = M;
  block.beta.resize(2 * M + 1);
  block.E.resize(2 * M + 1, n_top);
  for (int j = -M; j <= M; ++j) {
    const int row = j + M;
    block.beta[row] = beta(k, ls * j - alpha);
    // Periodic hat of half-width `spacing`: int phi(x - x_b) e^{-i xi x} dx
    //   = e^{-i xi x_b} spacing sinc^2(xi spacing / 2).
    const double xi = ls * j;
    const double arg = 0.5 * xi * spacing;
    const double sinc = arg == 0.0 ? 1.0 : std::sin(arg) / arg;
    const double moment = spacing * sinc * sinc / Lambda;
    for (int b = 0; b < n_top; ++b) {
      const double xb = x_first + spacing * b;
      block.E(row, b) = std::polar(moment, -xi * xb);
    }
  }
  block.trace_matrix = Lambda * block.E.adjoint() * block.beta.asDiagonal() * block.E;
  return block;
}

}  // namespace pbloch
