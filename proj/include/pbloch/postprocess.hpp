// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <utility>
#include <vector>

#include "pbloch/coupling.hpp"
#include "pbloch/mesh.hpp"
#include "pbloch/quasigrid.hpp"

namespace pbloch {

/// sqrt(Lambda / 2 pi).
double bloch_constant(double Lambda);

/// Inverse transform at x + (Lambda j, 0) from the periodic parts W_m(x):
/// C_Lambda sum_m weight_m W_m(x) e^{-i alpha_m (x1 + Lambda j)}.
cdouble inverse_bloch(std::span<const cdouble> periodic_parts, const BlochNodes& nodes, double x1,
                      int cell_j, double Lambda);

/// Periodic part of the forward transform at quasi-momentum alpha for a field
/// known on the cells j = -L+1..L: C_Lambda sum_j u(x + Lambda j) e^{i alpha (x1 + Lambda j)}.
/// `cell_values[jj]` holds u at x + (Lambda (jj - L + 1), 0).
cdouble forward_bloch(std::span<const cdouble> cell_values, double alpha, double x1, int L,
                      double Lambda);

/// Field values at x + (Lambda j, 0) for points x of the periodic cell.
/// Throws DomainError for points outside the mesh.
std::vector<cdouble> reconstruct(const BlochField& W, const BlochNodes& nodes,
                                 const PeriodicMesh& mesh, int cell_j,
                                 std::span<const Point> points);

/// Field values at the top-edge nodes of cell j, in top-edge order.
std::vector<cdouble> reconstruct_top(const BlochField& W, const BlochNodes& nodes,
                                     const PeriodicMesh& mesh, int cell_j);

/// Relative L2 error of nodal values on a uniform periodic grid (trapezoid rule).
/// Throws DomainError when the reference vanishes or the sizes differ.
double relative_l2_error(std::span<const cdouble> numeric, std::span<const cdouble> reference);

/// Least-squares slope of log(error) against log(N). Points whose error is
/// within 3x of the final one form the plateau; of those only the first is kept,
/// unless the plateau is the final point alone. Throws DomainError with fewer
/// than three usable points.
double fit_convergence_slope(const std::vector<std::pair<int, double>>& table);

}  // namespace pbloch
