// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <functional>
#include <vector>

#include "pbloch/assembly.hpp"
#include "pbloch/geometry.hpp"
#include "pbloch/mesh.hpp"
#include "pbloch/quasigrid.hpp"

namespace pbloch {

/// Per-node periodic parts: column m holds the free-DoF vector W_m.
using BlochField = Eigen::MatrixXcd;

/// Coefficient perturbation at a point X of the unbounded strip:
/// {A11 - 1, A12, A22 - 1, c - 1}.
using CoefficientPerturbation = std::function<std::array<double, 4>(const Point& X)>;

/// Perturbation of the flattened coefficients for the pair (zeta, p).
CoefficientPerturbation flattened_coefficients(const SurfacePair& sp);

/// How the inverse transform onto the cells j = -L+1..L integrates over t.
enum class TransformRule {
  /// Exact t-integral of the trigonometric interpolant of the node values.
  Interpolatory,
  /// Periodic trapezoid rule on the nodes; cells with |j| beyond about
  /// N / (2 sup g') alias onto the central ones.
  Trapezoid,
};

/// Finite-section coupling b^L between Bloch nodes.
///
/// For each node m and test hat phi_a the output is
///   C_Lambda sum_j e^{i alpha_m Lambda j} int_cell e^{i alpha_m x1}
///     [ (A - I) grad u_j . conj(grad(e^{-i alpha_m x1} phi_a)) - k^2 (c - 1) u_j phi_a ]
/// with u_j the inverse transform of W evaluated on cell j = -L+1..L.
/// Only triangles reaching below H0 contribute.
class CouplingOperator {
public:
  /// `gmap` supplies the interpolation weights for TransformRule::Interpolatory
  /// and must be the map that produced `nodes`.
  CouplingOperator(const PeriodicMesh& mesh, const SurfacePair& sp, double k, const GMap& gmap,
                   const BlochNodes& nodes, int L,
                   TransformRule rule = TransformRule::Interpolatory);
  /// Variant with caller-supplied coefficients, supported below `support_top`.
  CouplingOperator(const PeriodicMesh& mesh, CoefficientPerturbation coeff, double support_top,
                   double k, const GMap& gmap, const BlochNodes& nodes, int L,
                   TransformRule rule = TransformRule::Interpolatory);

  int L() const { return L_; }
  int node_count() const { return static_cast<int>(alpha_.size()); }
  int dof_count() const { return n_dof_; }
  /// True when every coefficient sample vanishes, so the output is identically zero.
  bool is_zero() const { return is_zero_; }
  /// Number of volume quadrature points carrying coefficient samples.
  int quadrature_points() const { return static_cast<int>(points_.size()); }

  BlochField apply(const BlochField& W) const;
  /// Adjoint with respect to the Euclidean inner product over all nodes and DoFs.
  BlochField apply_adjoint(const BlochField& W) const;

  /// Inverse-transform matrix (2L x N), cell index jj = j + L - 1.
  const Eigen::MatrixXcd& inverse_phases() const { return P_; }
  /// Forward-transform matrix (N x 2L).
  const Eigen::MatrixXcd& forward_phases() const { return R_; }

private:
  struct QuadPoint {
    Point x;
    double weight;
    std::array<int, 3> dof;
    std::array<double, 3> bary;
    std::array<Eigen::Vector2d, 3> grad;
  };

  void setup_phases(const GMap& gmap, const BlochNodes& nodes, TransformRule rule);
  void setup(const PeriodicMesh& mesh, const CoefficientPerturbation& coeff, double support_top);
  BlochField run(const BlochField& W, const Eigen::MatrixXcd& in_phases,
                 const Eigen::MatrixXcd& out_phases) const;
  std::array<double, 4> sample(int q, int jj) const;
  void fill_chunk(int q0, int q1, std::vector<double>& out) const;

  int n_dof_;
  double k_;
  double Lambda_;
  int L_;
  std::vector<double> alpha_;
  std::vector<QuadPoint> points_;
  CoefficientPerturbation coeff_;
  std::vector<double> table_;  // [(q * 2L + jj) * 4 + c] when cached
  bool cached_ = false;
  bool is_zero_ = true;
  Eigen::MatrixXcd P_;  // (2L x N): C_Lambda times the t-integration weights against e^{-i alpha Lambda j}
  Eigen::MatrixXcd R_;  // (N x 2L): C_Lambda e^{+i alpha_m Lambda j}
  Eigen::MatrixXcd P_adj_, R_adj_;  // R^H and P^H
};

/// Convenience wrapper matching the operator form: co.apply(W).
BlochField coupling_apply(const CouplingOperator& co, const BlochField& W);

}  // namespace pbloch
