// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "pbloch/assembly.hpp"
#include "pbloch/coupling.hpp"

namespace pbloch {

struct SolveOptions {
  double tol = 1e-10;
  int max_iterations = 200;
  /// Largest Krylov basis kept before switching to the stationary iteration.
  int krylov_cap = 100;
  /// Memory allowed for the Krylov basis; lowers the cap for large fields.
  std::size_t krylov_budget_bytes = std::size_t{1536} << 20;
};

struct SolveReport {
  /// Block solves with the node factorizations, counting the initial one.
  int iterations = 0;
  double relative_residual = 0.0;
  bool factorization_reused = false;
  bool stationary_fallback = false;
  double wall_ms = 0.0;
  /// Relative residual after each iteration (estimated in the Krylov phase).
  std::vector<double> residual_history;
};

using NodeSystemList = std::vector<std::shared_ptr<const NodeSystem>>;

/// Solves K W + B W = F, K block diagonal with one node system per column.
///
/// GMRES with the right preconditioner K^{-1}; when the basis reaches its cap
/// the iteration continues as W <- K^{-1}(F - B W). `coupling` may be null
/// (no perturbation). Throws ConvergenceError after `max_iterations`.
std::pair<BlochField, SolveReport> solve_coupled(const NodeSystemList& systems,
                                                 const BlochField& loads,
                                                 const CouplingOperator* coupling,
                                                 const SolveOptions& options = {});

/// Node systems keyed by the exact bit pattern of alpha, so sweeps over N whose
/// node sets overlap factorize each system once.
class NodeCache {
public:
  NodeCache(const PeriodicMesh& mesh, double k, int M_dtn);

  std::shared_ptr<const NodeSystem> get(double alpha);
  NodeSystemList get(const std::vector<double>& alphas);

  std::size_t size() const { return systems_.size(); }
  int hits() const { return hits_; }
  int misses() const { return misses_; }
  void clear() { systems_.clear(); }

private:
  const PeriodicMesh& mesh_;
  MeshOperators ops_;
  double k_;
  int M_dtn_;
  std::map<std::uint64_t, std::shared_ptr<const NodeSystem>> systems_;
  int hits_ = 0;
  int misses_ = 0;
};

}  // namespace pbloch
