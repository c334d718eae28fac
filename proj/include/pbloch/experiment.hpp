// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <vector>

#include "pbloch/config.hpp"
#include "pbloch/coupling.hpp"
#include "pbloch/geometry.hpp"
#include "pbloch/mesh.hpp"
#include "pbloch/quasigrid.hpp"
#include "pbloch/solver.hpp"

namespace pbloch {

/// Mesh, g-map and node factorizations for one wavenumber of a RunConfig.
/// Solves for different N share factorizations wherever node sets coincide.
class SweepContext {
public:
  SweepContext(const RunConfig& cfg, double k);

  struct Solution {
    int N = 0;
    int L = 0;
    BlochNodes nodes;
    BlochField W;
    SolveReport report;
    std::vector<cdouble> top;  ///< total field at the top-edge nodes of cell 0
  };

  Solution solve(int N, int L);

  /// Reference top-edge values according to cfg.reference.
  std::vector<cdouble> reference();
  bool exact_reference() const { return exact_; }

  const SurfacePair& surfaces() const { return sp_; }
  const PeriodicMesh& mesh() const { return *mesh_; }
  const GMap& gmap() const { return g_; }
  int M_dtn() const { return M_dtn_; }
  NodeCache& cache() { return *cache_; }

private:
  const RunConfig& cfg_;
  double k_;
  SurfacePair sp_;
  std::unique_ptr<PeriodicMesh> mesh_;
  GMap g_;
  int M_dtn_;
  std::unique_ptr<NodeCache> cache_;
  bool exact_;
  std::optional<std::vector<cdouble>> reference_;
};

struct ErrorRow {
  std::string example;
  double k;
  int N;
  int L;
  double h;
  double rel_l2_error;
  int iterations;
  double wall_ms;
};

struct SweepResult {
  std::vector<ErrorRow> rows;
  /// Fitted slope per wavenumber; empty when the table is too short.
  std::vector<std::pair<double, std::optional<double>>> slopes;
};

using SolutionHook =
    std::function<void(const SweepContext&, double k, const SweepContext::Solution&)>;

/// Runs the sweep in memory; throws the library exceptions. `hook` sees every
/// sweep solution (not the reference).
SweepResult run_sweep(const RunConfig& cfg, std::ostream* log = nullptr,
                      const SolutionHook& hook = {});

/// Runs the sweep and writes errors.csv, slope.txt and optional field dumps
/// under cfg.out. Returns 0 on success, 2 for configuration errors,
/// 3 when the coupled solve does not converge, 4 when the geometry guard fails.
int run_experiment(const RunConfig& cfg, std::ostream& log, std::ostream& err);

/// CSV text for the error table (fixed column order).
std::string errors_csv(const SweepResult& result, bool timing);

}  // namespace pbloch
