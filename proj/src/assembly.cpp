// SPDX-License-Identifier: Apache-2.0
#include "pbloch/assembly.hpp"

#include <array>
#include <sstream>

#include "pbloch/error.hpp"

namespace pbloch {

MeshOperators mesh_operators(const PeriodicMesh& mesh) {
  using Triplet = Eigen::Triplet<double>;
  std::vector<Triplet> s, m, q;
  const auto& dof = mesh.dof_of_vertex();
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const auto& tri = mesh.triangles()[t];
    const P1Element e = mesh.element(t);
    for (int a = 0; a < 3; ++a) {
      const int da = dof[tri[a]];
      if (da < 0) continue;
      for (int b = 0; b < 3; ++b) {
        const int db = dof[tri[b]];
        if (db < 0) continue;
        s.emplace_back(da, db, e.area * e.grad[a].dot(e.grad[b]));
        m.emplace_back(da, db, e.area / 12.0 * (a == b ? 2.0 : 1.0));
        q.emplace_back(da, db, e.area / 3.0 * (e.grad[b][0] - e.grad[a][0]));
      }
    }
  }
  const int n = mesh.dof_count();
  MeshOperators ops;
  ops.stiffness.resize(n, n);
  ops.mass.resize(n, n);
  ops.first_order.resize(n, n);
  ops.stiffness.setFromTriplets(s.begin(), s.end());
  ops.mass.setFromTriplets(m.begin(), m.end());
  ops.first_order.setFromTriplets(q.begin(), q.end());
  ops.top_dofs.reserve(mesh.top_edge().size());
  for (int v : mesh.top_edge()) ops.top_dofs.push_back(dof[v]);
  return ops;
}

SparseMatrixC assemble_matrix(const PeriodicMesh& mesh, const MeshOperators& ops, double alpha,
                              double k, int M_dtn) {
  const int n = mesh.dof_count();
  const DtnBlock dtn = dtn_matrix(mesh, alpha, k, M_dtn);

  std::vector<Eigen::Triplet<cdouble>> trip;
  trip.reserve(ops.stiffness.nonZeros() + dtn.trace_matrix.size());
  const double shift = alpha * alpha - k * k;
  // S, M and Q share a sparsity pattern (all built from the same element loop).
  for (int col = 0; col < n; ++col) {
    SparseMatrixR::InnerIterator is(ops.stiffness, col), im(ops.mass, col), iq(ops.first_order, col);
    for (; is; ++is, ++im, ++iq) {
      trip.emplace_back(is.row(), col, cdouble(is.value() + shift * im.value(), alpha * iq.value()));
    }
  }
  const auto& top = ops.top_dofs;
  for (std::size_t a = 0; a < top.size(); ++a)
    for (std::size_t b = 0; b < top.size(); ++b)
      trip.emplace_back(top[a], top[b], -dtn.trace_matrix(a, b));

  SparseMatrixC K(n, n);
  K.setFromTriplets(trip.begin(), trip.end());
  K.makeCompressed();
  return K;
}

NodeSystem::NodeSystem(double alpha, SparseMatrixC K)
    : alpha_(alpha),
      K_(std::move(K)),
      lu_(std::make_shared<Eigen::SparseLU<SparseMatrixC, Eigen::COLAMDOrdering<int>>>()) {
  lu_->analyzePattern(K_);
  lu_->factorize(K_);
  if (lu_->info() != Eigen::Success) {
    std::ostringstream os;
    os << "factorization of the node system at alpha = " << alpha_ << " failed";
    throw ConvergenceError(os.str());
  }
}

Eigen::VectorXcd NodeSystem::solve(const Eigen::VectorXcd& rhs) const { return lu_->solve(rhs); }

NodeSystem assemble_node(const PeriodicMesh& mesh, const MeshOperators& ops, double alpha, double k,
                         int M_dtn) {
  return NodeSystem(alpha, assemble_matrix(mesh, ops, alpha, k, M_dtn));
}

NodeSystem assemble_node(const PeriodicMesh& mesh, double alpha, double k, int M_dtn) {
  return assemble_node(mesh, mesh_operators(mesh), alpha, k, M_dtn);
}

Eigen::VectorXcd load_vector(const PeriodicMesh& mesh, double alpha,
                             const std::function<cdouble(double)>& F) {
  // Gauss-Legendre on [0, 1].
  static constexpr std::array<double, 4> gx = {0.0694318442029737, 0.3300094782075719,
                                               0.6699905217924281, 0.9305681557970263};
  static constexpr std::array<double, 4> gw = {0.1739274225687269, 0.3260725774312731,
                                               0.3260725774312731, 0.1739274225687269};
  const auto& top = mesh.top_edge();
  const auto& dof = mesh.dof_of_vertex();
  const int n_top = static_cast<int>(top.size());
  const double spacing = mesh.top_spacing();
  const double x_first = mesh.vertices()[top.front()][0];

  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(mesh.dof_count());
  for (int i = 0; i < n_top; ++i) {
    const int left = dof[top[i]];
    const int right = dof[top[(i + 1) % n_top]];
    const double xl = x_first + spacing * i;
    for (int g = 0; g < 4; ++g) {
      const double x1 = xl + spacing * gx[g];
      const cdouble f = F(x1) * std::polar(1.0, alpha * x1) * (spacing * gw[g]);
      out[left] += f * (1.0 - gx[g]);
      out[right] += f * gx[g];
    }
  }
  return out;
}

}  // namespace pbloch
