// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <functional>
#include <memory>

#include "pbloch/dtn.hpp"
#include "pbloch/mesh.hpp"

namespace pbloch {

using SparseMatrixC = Eigen::SparseMatrix<cdouble>;
using SparseMatrixR = Eigen::SparseMatrix<double>;

/// Alpha-independent pieces of the per-node forms over the free DoFs:
/// stiffness S, mass M and the antisymmetric first-order matrix
/// Q(a, b) = int (d1 phi_b) phi_a - phi_b (d1 phi_a).
struct MeshOperators {
  SparseMatrixR stiffness;
  SparseMatrixR mass;
  SparseMatrixR first_order;
  std::vector<int> top_dofs;  ///< DoF of each top-edge node, in top-edge order
};

MeshOperators mesh_operators(const PeriodicMesh& mesh);

/// Quasi-periodic Helmholtz block for one node alpha_m:
/// K = S + (alpha^2 - k^2) M + i alpha Q - T_alpha^M, with a stored LU factorization.
class NodeSystem {
public:
  NodeSystem(double alpha, SparseMatrixC K);

  double alpha() const { return alpha_; }
  const SparseMatrixC& matrix() const { return K_; }

  /// K^{-1} rhs using the stored factorization.
  Eigen::VectorXcd solve(const Eigen::VectorXcd& rhs) const;

private:
  double alpha_;
  SparseMatrixC K_;
  std::shared_ptr<Eigen::SparseLU<SparseMatrixC, Eigen::COLAMDOrdering<int>>> lu_;
};

/// Matrix of the per-node form; no factorization.
SparseMatrixC assemble_matrix(const PeriodicMesh& mesh, const MeshOperators& ops, double alpha,
                              double k, int M_dtn);

NodeSystem assemble_node(const PeriodicMesh& mesh, const MeshOperators& ops, double alpha, double k,
                         int M_dtn);
NodeSystem assemble_node(const PeriodicMesh& mesh, double alpha, double k, int M_dtn);

/// Entries int_{top} F(x1) e^{i alpha x1} phi_a(x1) dx1 for the top-edge hats,
/// four-point Gauss per top-edge segment. `F` is the boundary data
/// (alpha-quasi-periodic); the factor e^{i alpha x1} maps it to its periodic part.
Eigen::VectorXcd load_vector(const PeriodicMesh& mesh, double alpha,
                             const std::function<cdouble(double)>& F);

}  // namespace pbloch
