// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pbloch/coupling.hpp"
#include "pbloch/quasigrid.hpp"

namespace pbloch {

enum class ReferenceKind {
  Auto,       ///< exact for flat surface pairs, numerical otherwise
  Exact,      ///< closed-form field above a flat surface
  Numerical,  ///< the same pipeline at `reference_N`
};

/// Settings for one experiment: a sweep over wavenumbers and node counts.
struct RunConfig {
  int example = 0;  ///< 1..3 for the presets, 0 for a custom geometry
  std::vector<double> k{1.0};
  std::vector<int> N{8, 16, 32, 64};
  std::optional<int> L;  ///< finite-section half-width; N/2 when absent
  double Lambda = 6.283185307179586;
  double H = 3.0;
  double H0 = 2.9;
  int n = 5;
  double h = 0.1;
  int M_dtn = 0;  ///< 0 selects the automatic truncation
  double tol = 1e-10;
  std::string zeta = "flat:1";
  std::string perturbation = "zero";
  ReferenceKind reference = ReferenceKind::Auto;
  int reference_N = 128;
  CutoffKind cutoff = CutoffKind::Polynomial;
  TransformRule transform = TransformRule::Interpolatory;
  std::string out = "out";
  std::uint64_t seed = 0;
  bool dump_fields = false;
  bool timing = true;  ///< false writes wall_ms = 0 for reproducible CSVs
  int max_iterations = 200;
  int krylov_cap = 100;

  int L_for(int N_value) const { return L.value_or(N_value / 2); }
  std::string label() const;
};

/// Command-line values that take precedence over the file.
struct ConfigOverrides {
  std::optional<int> example;
  std::optional<double> k;
  std::optional<int> N;
  std::optional<std::string> out;
};

/// Preset for example 1, 2 or 3 on top of the defaults.
RunConfig preset(int example);

/// Parse a JSON document (an empty document is accepted). Keys:
/// example, k, N, L, Lambda, H, H0, n, h, M_dtn, tol, zeta, perturbation,
/// reference, reference_N, cutoff, transform, out, seed, dump_fields, timing,
/// max_iterations, krylov_cap. Unknown keys and invalid values throw
/// ConfigError naming the key.
RunConfig parse_config_text(const std::string& text, const ConfigOverrides& overrides = {});
RunConfig parse_config(const std::string& path, const ConfigOverrides& overrides = {});

/// Checks the cross-field invariants; throws ConfigError.
void validate(const RunConfig& cfg);

}  // namespace pbloch
