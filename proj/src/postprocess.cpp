// SPDX-License-Identifier: Apache-2.0
#include "pbloch/postprocess.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "pbloch/error.hpp"

namespace pbloch {

double bloch_constant(double Lambda) { return std::sqrt(Lambda / (2.0 * std::numbers::pi)); }

cdouble inverse_bloch(std::span<const cdouble> periodic_parts, const BlochNodes& nodes, double x1,
                      int cell_j, double Lambda) {
  const double X1 = x1 + Lambda * cell_j;
  cdouble acc = 0.0;
  for (int m = 0; m < nodes.size(); ++m)
    acc += periodic_parts[m] * std::polar(nodes.weight[m], -nodes.alpha[m] * X1);
  return bloch_constant(Lambda) * acc;
}

cdouble forward_bloch(std::span<const cdouble> cell_values, double alpha, double x1, int L,
                      double Lambda) {
  cdouble acc = 0.0;
  for (int jj = 0; jj < 2 * L; ++jj)
    acc += cell_values[jj] * std::polar(1.0, alpha * (x1 + Lambda * (jj - L + 1)));
  return bloch_constant(Lambda) * acc;
}

std::vector<cdouble> reconstruct(const BlochField& W, const BlochNodes& nodes,
                                 const PeriodicMesh& mesh, int cell_j,
                                 std::span<const Point> points) {
  const auto& dof = mesh.dof_of_vertex();
  std::vector<cdouble> out;
  out.reserve(points.size());
  std::vector<cdouble> parts(nodes.size());
  for (const Point& x : points) {
    const auto loc = mesh.locate(x);
    if (!loc) {
      std::ostringstream os;
      os << "point (" << x[0] << ", " << x[1] << ") lies outside the mesh";
      throw DomainError(os.str());
    }
    const auto& tri = mesh.triangles()[loc->triangle];
    for (int m = 0; m < nodes.size(); ++m) {
      cdouble v = 0.0;
      for (int a = 0; a < 3; ++a)
        if (dof[tri[a]] >= 0) v += loc->bary[a] * W(dof[tri[a]], m);
      parts[m] = v;
    }
    out.push_back(inverse_bloch(parts, nodes, x[0], cell_j, mesh.Lambda()));
  }
  return out;
}

std::vector<cdouble> reconstruct_top(const BlochField& W, const BlochNodes& nodes,
                                     const PeriodicMesh& mesh, int cell_j) {
  const auto& dof = mesh.dof_of_vertex();
  std::vector<cdouble> out;
  out.reserve(mesh.top_edge().size());
  std::vector<cdouble> parts(nodes.size());
  for (int v : mesh.top_edge()) {
    for (int m = 0; m < nodes.size(); ++m) parts[m] = W(dof[v], m);
    out.push_back(inverse_bloch(parts, nodes, mesh.vertices()[v][0], cell_j, mesh.Lambda()));
  }
  return out;
}

double relative_l2_error(std::span<const cdouble> numeric, std::span<const cdouble> reference) {
  if (numeric.size() != reference.size()) throw DomainError("sample counts differ");
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < numeric.size(); ++i) {
    num += std::norm(numeric[i] - reference[i]);
    den += std::norm(reference[i]);
  }
  if (den == 0.0) throw DomainError("reference field vanishes on the top edge");
  return std::sqrt(num / den);
}

double fit_convergence_slope(const std::vector<std::pair<int, double>>& table) {
  if (table.empty()) throw DomainError("empty convergence table");
  const double last = table.back().second;
  std::size_t plateau = table.size();
  while (plateau > 0 && table[plateau - 1].second <= 3.0 * last) --plateau;
  std::size_t used = table.size();
  if (table.size() - plateau > 1) used = plateau + 1;
  if (used < 3) throw DomainError("fewer than three pre-plateau points");

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < used; ++i) {
    if (!(table[i].second > 0.0)) throw DomainError("errors must be positive");
    const double x = std::log(static_cast<double>(table[i].first));
    const double y = std::log(table[i].second);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(used);
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace pbloch
