// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <vector>

#include "pbloch/geometry.hpp"

namespace pbloch {

/// Linear triangle: area and constant gradients of the three hat functions.
struct P1Element {
  double area;
  std::array<Eigen::Vector2d, 3> grad;
};

/// Triangulation of one periodic cell (-Lambda/2, Lambda/2] x (zeta, H).
///
/// Vertices on the right edge duplicate those on the left edge and share their
/// degree of freedom; vertices on the bottom surface carry none (Dirichlet).
class PeriodicMesh {
public:
  /// Structured-grid metadata; absent for meshes built from raw arrays.
  struct Structure {
    int n_edge = 0;      ///< x1 intervals
    int n_vertical = 0;  ///< x2 intervals per column
  };

  /// `dof` holds one entry per vertex (-1 for Dirichlet vertices);
  /// `top_edge` lists top-boundary vertex indices ordered by increasing x1,
  /// uniformly spaced with the first at x1 = -Lambda/2, one per DoF.
  PeriodicMesh(std::vector<Point> vertices, std::vector<std::array<int, 3>> triangles,
               std::vector<int> dof, std::vector<int> top_edge, double Lambda, double H,
               std::optional<Structure> structure = std::nullopt);

  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<std::array<int, 3>>& triangles() const { return triangles_; }
  const std::vector<int>& dof_of_vertex() const { return dof_; }
  const std::vector<int>& top_edge() const { return top_edge_; }
  int dof_count() const { return dof_count_; }
  int triangle_count() const { return static_cast<int>(triangles_.size()); }
  double Lambda() const { return Lambda_; }
  double H() const { return H_; }
  /// Longest edge.
  double h() const { return h_; }
  /// Spacing of the top-edge nodes.
  double top_spacing() const { return Lambda_ / static_cast<double>(top_edge_.size()); }
  const std::optional<Structure>& structure() const { return structure_; }

  P1Element element(int t) const;

  /// Triangle containing x (periodic coordinate) and barycentric weights.
  struct Location {
    int triangle;
    std::array<double, 3> bary;
  };
  std::optional<Location> locate(const Point& x) const;

  /// Vertex and triangle tables for external visualization.
  void write_csv(std::ostream& vertices_out, std::ostream& triangles_out) const;

private:
  std::vector<Point> vertices_;
  std::vector<std::array<int, 3>> triangles_;
  std::vector<int> dof_;
  std::vector<int> top_edge_;
  double Lambda_;
  double H_;
  double h_ = 0.0;
  int dof_count_ = 0;
  std::optional<Structure> structure_;
};

/// Structured mapped grid: n_edge = floor(Lambda / h_target) columns, each
/// column split uniformly over [zeta(x1), H] into round((H - min zeta) / h_target)
/// intervals, every quad cut into two triangles.
/// Throws ConfigError when h_target >= H - sup zeta.
PeriodicMesh build_mesh(const SurfacePair& sp, double h_target);

/// Three-point edge-midpoint rule per triangle (exact for quadratics).
struct TriangleQuadrature {
  std::array<Point, 3> points;
  std::array<double, 3> weights;
  /// Hat-function values at each point: bary[q][v].
  static constexpr std::array<std::array<double, 3>, 3> bary = {{
      {0.5, 0.5, 0.0},
      {0.0, 0.5, 0.5},
      {0.5, 0.0, 0.5},
  }};
};

std::vector<TriangleQuadrature> p1_quadrature(const PeriodicMesh& mesh);

/// Largest circumradius-to-inradius ratio over all triangles.
double max_aspect_ratio(const PeriodicMesh& mesh);

}  // namespace pbloch
