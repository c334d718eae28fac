// SPDX-License-Identifier: Apache-2.0
#include "pbloch/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace pbloch {

namespace {

constexpr std::size_t kTableBudgetBytes = std::size_t{1} << 30;
constexpr int kChunk = 512;

}  // namespace

CoefficientPerturbation flattened_coefficients(const SurfacePair& sp) {
  return [sp](const Point& X) -> std::array<double, 4> {
    // Edge midpoints on the bottom chord may sit marginally below a curved surface;
    // the coefficient formula extends smoothly, so evaluate on the surface there.
    Point y = X;
    y[1] = std::max(y[1], sp.zeta()(X[0]));
    const Coefficients c = coefficients(sp, y);
    return {c.A(0, 0) - 1.0, c.A(0, 1), c.A(1, 1) - 1.0, c.c - 1.0};
  };
}

CouplingOperator::CouplingOperator(const PeriodicMesh& mesh, const SurfacePair& sp, double k,
                                   const GMap& gmap, const BlochNodes& nodes, int L,
                                   TransformRule rule)
    : n_dof_(mesh.dof_count()), k_(k), Lambda_(mesh.Lambda()), L_(L), alpha_(nodes.alpha) {
  setup_phases(gmap, nodes, rule);
  if (!sp.unperturbed()) setup(mesh, flattened_coefficients(sp), sp.H0());
}

CouplingOperator::CouplingOperator(const PeriodicMesh& mesh, CoefficientPerturbation coeff,
                                   double support_top, double k, const GMap& gmap,
                                   const BlochNodes& nodes, int L, TransformRule rule)
    : n_dof_(mesh.dof_count()), k_(k), Lambda_(mesh.Lambda()), L_(L), alpha_(nodes.alpha) {
  setup_phases(gmap, nodes, rule);
  setup(mesh, std::move(coeff), support_top);
}

void CouplingOperator::setup_phases(const GMap& gmap, const BlochNodes& nodes,
                                    TransformRule rule) {
  const int N = node_count();
  const double C = std::sqrt(Lambda_ / (2.0 * std::numbers::pi));
  std::vector<double> shifts(2 * L_);
  for (int jj = 0; jj < 2 * L_; ++jj) shifts[jj] = Lambda_ * (jj - L_ + 1);
  if (rule == TransformRule::Interpolatory) {
    P_ = C * interpolatory_weights(gmap, N, shifts);
  } else {
    P_.resize(2 * L_, N);
    for (int jj = 0; jj < 2 * L_; ++jj)
      for (int m = 0; m < N; ++m) P_(jj, m) = std::polar(C * nodes.weight[m], -alpha_[m] * shifts[jj]);
  }
  R_.resize(N, 2 * L_);
  for (int jj = 0; jj < 2 * L_; ++jj)
    for (int m = 0; m < N; ++m) R_(m, jj) = std::polar(C, alpha_[m] * shifts[jj]);
  P_adj_ = R_.adjoint();
  R_adj_ = P_.adjoint();
}

void CouplingOperator::setup(const PeriodicMesh& mesh, const CoefficientPerturbation& coeff,
                             double support_top) {
  coeff_ = coeff;
  const auto quad = p1_quadrature(mesh);
  const auto& dof = mesh.dof_of_vertex();
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const auto& tri = mesh.triangles()[t];
    double lowest = INFINITY;
    for (int v : tri) lowest = std::min(lowest, mesh.vertices()[v][1]);
    if (!(lowest < support_top)) continue;
    const P1Element e = mesh.element(t);
    for (int q = 0; q < 3; ++q) {
      QuadPoint qp;
      qp.x = quad[t].points[q];
      qp.weight = quad[t].weights[q];
      for (int v = 0; v < 3; ++v) {
        qp.dof[v] = dof[tri[v]];
        qp.bary[v] = TriangleQuadrature::bary[q][v];
        qp.grad[v] = e.grad[v];
      }
      points_.push_back(qp);
    }
  }

  const std::size_t entries = points_.size() * static_cast<std::size_t>(2 * L_) * 4;
  cached_ = entries * sizeof(double) <= kTableBudgetBytes;
  if (cached_) table_.resize(entries);
  is_zero_ = true;
  for (int q = 0; q < quadrature_points(); ++q) {
    for (int jj = 0; jj < 2 * L_; ++jj) {
      const auto s = sample(q, jj);
      if (s[0] != 0.0 || s[1] != 0.0 || s[2] != 0.0 || s[3] != 0.0) is_zero_ = false;
      if (cached_) std::copy(s.begin(), s.end(), table_.begin() + (q * 2 * L_ + jj) * 4);
    }
  }
  if (is_zero_) {
    points_.clear();
    table_.clear();
  }
}

std::array<double, 4> CouplingOperator::sample(int q, int jj) const {
  const Point X = points_[q].x + Point(Lambda_ * (jj - L_ + 1), 0.0);
  return coeff_(X);
}

void CouplingOperator::fill_chunk(int q0, int q1, std::vector<double>& out) const {
  const int J = 2 * L_;
  out.resize(static_cast<std::size_t>(q1 - q0) * J * 4);
  if (cached_) {
    std::copy(table_.begin() + static_cast<std::size_t>(q0) * J * 4,
              table_.begin() + static_cast<std::size_t>(q1) * J * 4, out.begin());
    return;
  }
  for (int q = q0; q < q1; ++q)
    for (int jj = 0; jj < J; ++jj) {
      const auto s = sample(q, jj);
      std::copy(s.begin(), s.end(), out.begin() + ((q - q0) * J + jj) * 4);
    }
}

BlochField CouplingOperator::apply(const BlochField& W) const { return run(W, P_, R_); }

BlochField CouplingOperator::apply_adjoint(const BlochField& W) const {
  return run(W, P_adj_, R_adj_);
}

BlochField CouplingOperator::run(const BlochField& W, const Eigen::MatrixXcd& in_phases,
                                 const Eigen::MatrixXcd& out_phases) const {
  const int N = node_count();
  const int J = 2 * L_;
  BlochField out = BlochField::Zero(n_dof_, N);
  if (is_zero_) return out;

  const double k2 = k_ * k_;
  const cdouble I(0.0, 1.0);
  std::vector<double> coef;
  Eigen::MatrixXcd in, cells, mid, back;
  for (int q0 = 0; q0 < quadrature_points(); q0 += kChunk) {
    const int q1 = std::min(q0 + kChunk, quadrature_points());
    const int C = q1 - q0;

    // Stage 1: quasi-periodic node values and gradients at each point, then
    // the inverse transform onto every cell.
    in.resize(N, 3 * C);
    for (int c = 0; c < C; ++c) {
      const QuadPoint& qp = points_[q0 + c];
      for (int m = 0; m < N; ++m) {
        cdouble val = 0.0, g1 = 0.0, g2 = 0.0;
        for (int v = 0; v < 3; ++v) {
          if (qp.dof[v] < 0) continue;
          const cdouble w = W(qp.dof[v], m);
          val += qp.bary[v] * w;
          g1 += qp.grad[v][0] * w;
          g2 += qp.grad[v][1] * w;
        }
        const cdouble ph = std::polar(1.0, -alpha_[m] * qp.x[0]);
        in(m, 3 * c) = ph * val;
        in(m, 3 * c + 1) = ph * (g1 - I * alpha_[m] * val);
        in(m, 3 * c + 2) = ph * g2;
      }
    }
    cells.noalias() = in_phases * in;

    // Stage 2: coefficient multiplication on every translated cell.
    fill_chunk(q0, q1, coef);
    mid.resize(J, 3 * C);
    for (int c = 0; c < C; ++c) {
      const double wq = points_[q0 + c].weight;
      for (int jj = 0; jj < J; ++jj) {
        const double* a = coef.data() + (c * J + jj) * 4;
        const cdouble u = cells(jj, 3 * c), u1 = cells(jj, 3 * c + 1), u2 = cells(jj, 3 * c + 2);
        mid(jj, 3 * c) = -k2 * a[3] * wq * u;
        mid(jj, 3 * c + 1) = wq * (a[0] * u1 + a[1] * u2);
        mid(jj, 3 * c + 2) = wq * (a[1] * u1 + a[2] * u2);
      }
    }

    // Stage 3: forward transform and testing against the node basis.
    back.noalias() = out_phases * mid;
    for (int c = 0; c < C; ++c) {
      const QuadPoint& qp = points_[q0 + c];
      for (int m = 0; m < N; ++m) {
        const cdouble ph = std::polar(1.0, alpha_[m] * qp.x[0]);
        const cdouble s = back(m, 3 * c) * ph;
        const cdouble G1 = back(m, 3 * c + 1) * ph;
        const cdouble G2 = back(m, 3 * c + 2) * ph;
        for (int v = 0; v < 3; ++v) {
          if (qp.dof[v] < 0) continue;
          out(qp.dof[v], m) += G1 * (qp.grad[v][0] + I * alpha_[m] * qp.bary[v]) +
                               G2 * qp.grad[v][1] + s * qp.bary[v];
        }
      }
    }
  }
  return out;
}

BlochField coupling_apply(const CouplingOperator& co, const BlochField& W) { return co.apply(W); }

}  // namespace pbloch
