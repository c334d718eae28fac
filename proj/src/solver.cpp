// SPDX-License-Identifier: Apache-2.0
#include "pbloch/solver.hpp"

#include <bit>
#include <chrono>
#include <cmath>
#include <sstream>

#include "pbloch/error.hpp"

namespace pbloch {

namespace {

BlochField block_solve(const NodeSystemList& systems, const BlochField& rhs) {
  BlochField out(rhs.rows(), rhs.cols());
  for (int m = 0; m < rhs.cols(); ++m) out.col(m) = systems[m]->solve(rhs.col(m));
  return out;
}

BlochField block_multiply(const NodeSystemList& systems, const BlochField& X) {
  BlochField out(X.rows(), X.cols());
  for (int m = 0; m < X.cols(); ++m) out.col(m) = systems[m]->matrix() * X.col(m);
  return out;
}

class Driver {
public:
  Driver(const NodeSystemList& systems, const BlochField& F, const CouplingOperator* B,
         const SolveOptions& opt, SolveReport& report)
      : systems_(systems), F_(F), B_(B), opt_(opt), report_(report), normF_(F.norm()) {}

  BlochField residual(const BlochField& W) const {
    BlochField r = F_ - block_multiply(systems_, W);
    if (B_) r -= B_->apply(W);
    return r;
  }

  void record(double rel) {
    report_.relative_residual = rel;
    report_.residual_history.push_back(rel);
  }

  void check_budget() const {
    if (report_.iterations >= opt_.max_iterations) {
      std::ostringstream os;
      os << "perturbation too large: no convergence within " << opt_.max_iterations
         << " iterations (relative residual " << report_.relative_residual << ")";
      throw ConvergenceError(os.str());
    }
  }

  // One restart cycle; returns true when the cycle stopped at the basis cap.
  bool gmres_cycle(BlochField& W, BlochField r, int cap) {
    const double beta = r.norm();
    std::vector<BlochField> V;
    V.reserve(cap + 1);
    V.push_back(r / beta);
    Eigen::MatrixXcd Hm = Eigen::MatrixXcd::Zero(cap + 1, cap);
    std::vector<cdouble> cs(cap), sn(cap);
    Eigen::VectorXcd g = Eigen::VectorXcd::Zero(cap + 1);
    g[0] = beta;

    int n = 0;
    bool converged = false;
    while (n < cap) {
      check_budget();
      BlochField w = V[n] + B_->apply(block_solve(systems_, V[n]));
      ++report_.iterations;
      for (int i = 0; i <= n; ++i) {
        const cdouble hij = V[i].cwiseProduct(w.conjugate()).sum();
        Hm(i, n) = std::conj(hij);
        w -= Hm(i, n) * V[i];
      }
      const double hn = w.norm();
      Hm(n + 1, n) = hn;
      for (int i = 0; i < n; ++i) {
        const cdouble a = Hm(i, n), b = Hm(i + 1, n);
        Hm(i, n) = std::conj(cs[i]) * a + std::conj(sn[i]) * b;
        Hm(i + 1, n) = -sn[i] * a + cs[i] * b;
      }
      const cdouble a = Hm(n, n);
      const double denom = std::hypot(std::abs(a), hn);
      cs[n] = denom == 0.0 ? 1.0 : a / denom;
      sn[n] = denom == 0.0 ? 0.0 : hn / denom;
      Hm(n, n) = std::conj(cs[n]) * a + std::conj(sn[n]) * hn;
      Hm(n + 1, n) = 0.0;
      g[n + 1] = -sn[n] * g[n];
      g[n] = std::conj(cs[n]) * g[n];
      ++n;
      record(std::abs(g[n]) / normF_);
      if (report_.relative_residual <= opt_.tol || hn == 0.0) {
        converged = true;
        break;
      }
      V.push_back(w / hn);
    }

    Eigen::VectorXcd y = Hm.topLeftCorner(n, n).triangularView<Eigen::Upper>().solve(g.head(n));
    BlochField Y = BlochField::Zero(W.rows(), W.cols());
    for (int i = 0; i < n; ++i) Y += y[i] * V[i];
    W += block_solve(systems_, Y);
    return !converged;
  }

  BlochField run() {
    BlochField W = block_solve(systems_, F_);
    report_.iterations = 1;
    if (!B_ || B_->is_zero()) {
      record((F_ - block_multiply(systems_, W)).norm() / normF_);
      return W;
    }
    BlochField r = residual(W);
    record(r.norm() / normF_);

    const std::size_t vec_bytes = static_cast<std::size_t>(F_.size()) * sizeof(cdouble);
    const int cap = std::max<int>(
        2, std::min<std::size_t>(opt_.krylov_cap, opt_.krylov_budget_bytes / vec_bytes));

    bool stationary = false;
    while (true) {
      const double rel = r.norm() / normF_;
      report_.relative_residual = rel;
      if (rel <= opt_.tol) return W;
      check_budget();
      if (stationary) {
        W = block_solve(systems_, F_ - B_->apply(W));
        ++report_.iterations;
        r = residual(W);
        record(r.norm() / normF_);
      } else {
        stationary = gmres_cycle(W, r, cap);
        report_.stationary_fallback = stationary;
        r = residual(W);
      }
    }
  }

private:
  const NodeSystemList& systems_;
  const BlochField& F_;
  const CouplingOperator* B_;
  const SolveOptions& opt_;
  SolveReport& report_;
  double normF_;
};

}  // namespace

std::pair<BlochField, SolveReport> solve_coupled(const NodeSystemList& systems,
                                                 const BlochField& loads,
                                                 const CouplingOperator* coupling,
                                                 const SolveOptions& options) {
  if (static_cast<int>(systems.size()) != loads.cols())
    throw ConfigError("one node system per load column is required");
  const auto start = std::chrono::steady_clock::now();
  SolveReport report;
  BlochField W;
  if (loads.norm() == 0.0) {
    W = BlochField::Zero(loads.rows(), loads.cols());
    report.iterations = 1;
    report.residual_history.push_back(0.0);
  } else {
    W = Driver(systems, loads, coupling, options, report).run();
  }
  report.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return {std::move(W), std::move(report)};
}

NodeCache::NodeCache(const PeriodicMesh& mesh, double k, int M_dtn)
    : mesh_(mesh), ops_(mesh_operators(mesh)), k_(k), M_dtn_(M_dtn) {}

std::shared_ptr<const NodeSystem> NodeCache::get(double alpha) {
  const auto key = std::bit_cast<std::uint64_t>(alpha);
  if (auto it = systems_.find(key); it != systems_.end()) {
    ++hits_;
    return it->second;
  }
  ++misses_;
  auto sys = std::make_shared<const NodeSystem>(assemble_node(mesh_, ops_, alpha, k_, M_dtn_));
  systems_.emplace(key, sys);
  return sys;
}

NodeSystemList NodeCache::get(const std::vector<double>& alphas) {
  NodeSystemList out;
  out.reserve(alphas.size());
  for (double a : alphas) out.push_back(get(a));
  return out;
}

}  // namespace pbloch
