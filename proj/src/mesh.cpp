// SPDX-License-Identifier: Apache-2.0
#include "pbloch/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "pbloch/error.hpp"

namespace pbloch {

namespace {

double signed_area(const Point& a, const Point& b, const Point& c) {
  return 0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]));
}

}  // namespace

PeriodicMesh::PeriodicMesh(std::vector<Point> vertices, std::vector<std::array<int, 3>> triangles,
                           std::vector<int> dof, std::vector<int> top_edge, double Lambda, double H,
                           std::optional<Structure> structure)
    : vertices_(std::move(vertices)),
      triangles_(std::move(triangles)),
      dof_(std::move(dof)),
      top_edge_(std::move(top_edge)),
      Lambda_(Lambda),
      H_(H),
      structure_(structure) {
  if (dof_.size() != vertices_.size()) throw ConfigError("dof table size mismatch");
  for (int d : dof_) dof_count_ = std::max(dof_count_, d + 1);
  for (std::size_t t = 0; t < triangles_.size(); ++t) {
    const auto& tri = triangles_[t];
    const double a = signed_area(vertices_[tri[0]], vertices_[tri[1]], vertices_[tri[2]]);
    if (!(a > 0.0)) {
      std::ostringstream os;
      os << "triangle " << t << " has non-positive area " << a;
      throw ConfigError(os.str());
    }
    for (int e = 0; e < 3; ++e)
      h_ = std::max(h_, (vertices_[tri[e]] - vertices_[tri[(e + 1) % 3]]).norm());
  }
  for (int v : top_edge_) {
    if (std::abs(vertices_[v][1] - H_) > 1e-12 * std::max(1.0, H_))
      throw ConfigError("top-edge vertex not on x2 = H");
  }
}

P1Element PeriodicMesh::element(int t) const {
  const auto& tri = triangles_[t];
  const Point& a = vertices_[tri[0]];
  const Point& b = vertices_[tri[1]];
  const Point& c = vertices_[tri[2]];
  P1Element e;
  e.area = signed_area(a, b, c);
  const double inv2a = 1.0 / (2.0 * e.area);
  // grad lambda_i = rot90(opposite edge) / (2 area)
  e.grad[0] = Eigen::Vector2d(b[1] - c[1], c[0] - b[0]) * inv2a;
  e.grad[1] = Eigen::Vector2d(c[1] - a[1], a[0] - c[0]) * inv2a;
  e.grad[2] = Eigen::Vector2d(a[1] - b[1], b[0] - a[0]) * inv2a;
  return e;
}

std::optional<PeriodicMesh::Location> PeriodicMesh::locate(const Point& x) const {
  constexpr double tol = 1e-12;
  auto test = [&](int t) -> std::optional<Location> {
    const auto& tri = triangles_[t];
    const Point& a = vertices_[tri[0]];
    const Point& b = vertices_[tri[1]];
    const Point& c = vertices_[tri[2]];
    const double area = signed_area(a, b, c);
    const double l0 = signed_area(x, b, c) / area;
    const double l1 = signed_area(a, x, c) / area;
    const double l2 = 1.0 - l0 - l1;
    if (l0 >= -tol && l1 >= -tol && l2 >= -tol) return Location{t, {l0, l1, l2}};
    return std::nullopt;
  };
  if (structure_) {
    const int ne = structure_->n_edge;
    const int nv = structure_->n_vertical;
    const double dx = Lambda_ / ne;
    int col = static_cast<int>(std::floor((x[0] + Lambda_ / 2) / dx));
    col = std::clamp(col, 0, ne - 1);
    for (int c : {col, std::max(col - 1, 0), std::min(col + 1, ne - 1)}) {
      for (int r = 0; r < nv; ++r) {
        for (int s = 0; s < 2; ++s) {
          if (auto loc = test(2 * (c * nv + r) + s)) return loc;
        }
      }
    }
    return std::nullopt;
  }
  for (int t = 0; t < triangle_count(); ++t)
    if (auto loc = test(t)) return loc;
  return std::nullopt;
}

void PeriodicMesh::write_csv(std::ostream& vout, std::ostream& tout) const {
  vout.precision(17);
  vout << "index,x1,x2,dof\n";
  for (std::size_t v = 0; v < vertices_.size(); ++v)
    vout << v << ',' << vertices_[v][0] << ',' << vertices_[v][1] << ',' << dof_[v] << '\n';
  tout << "v0,v1,v2\n";
  for (const auto& t : triangles_) tout << t[0] << ',' << t[1] << ',' << t[2] << '\n';
}

PeriodicMesh build_mesh(const SurfacePair& sp, double h_target) {
  if (!(h_target > 0.0)) throw ConfigError("mesh width must be positive");
  if (!(h_target < sp.H() - sp.sup_zeta()))
    throw ConfigError("mesh width must be smaller than the strip height H - sup zeta");

  const double Lambda = sp.Lambda();
  const double H = sp.H();
  const int ne = std::max(1, static_cast<int>(std::floor(Lambda / h_target)));
  const int nv = std::max(1, static_cast<int>(std::lround((H - sp.min_zeta()) / h_target)));
  const double dx = Lambda / ne;

  auto vid = [nv](int i, int r) { return i * (nv + 1) + r; };

  std::vector<Point> vertices((ne + 1) * (nv + 1));
  std::vector<int> dof(vertices.size(), -1);
  for (int i = 0; i <= ne; ++i) {
    const double x1 = -Lambda / 2 + dx * i;
    // The right column reuses the left column's heights so the identification is exact.
    const double z = sp.zeta()(i == ne ? -Lambda / 2 : x1);
    for (int r = 0; r <= nv; ++r) {
      const double x2 = r == nv ? H : z + (H - z) * r / nv;
      vertices[vid(i, r)] = Point(i == ne ? Lambda / 2 : x1, x2);
      if (r > 0) dof[vid(i, r)] = (i == ne ? 0 : i) * nv + (r - 1);
    }
  }

  std::vector<std::array<int, 3>> triangles;
  triangles.reserve(2 * ne * nv);
  for (int i = 0; i < ne; ++i) {
    for (int r = 0; r < nv; ++r) {
      const int v00 = vid(i, r), v10 = vid(i + 1, r), v11 = vid(i + 1, r + 1), v01 = vid(i, r + 1);
      triangles.push_back({v00, v10, v11});
      triangles.push_back({v00, v11, v01});
    }
  }

  std::vector<int> top(ne);
  for (int i = 0; i < ne; ++i) top[i] = vid(i, nv);

  return PeriodicMesh(std::move(vertices), std::move(triangles), std::move(dof), std::move(top),
                      Lambda, H, PeriodicMesh::Structure{ne, nv});
}

std::vector<TriangleQuadrature> p1_quadrature(const PeriodicMesh& mesh) {
  std::vector<TriangleQuadrature> out(mesh.triangles().size());
  const auto& V = mesh.vertices();
  for (std::size_t t = 0; t < out.size(); ++t) {
    const auto& tri = mesh.triangles()[t];
    const double a = mesh.element(static_cast<int>(t)).area;
    for (int q = 0; q < 3; ++q) {
      const auto& b = TriangleQuadrature::bary[q];
      out[t].points[q] = b[0] * V[tri[0]] + b[1] * V[tri[1]] + b[2] * V[tri[2]];
      out[t].weights[q] = a / 3.0;
    }
  }
  return out;
}

double max_aspect_ratio(const PeriodicMesh& mesh) {
  double worst = 0.0;
  const auto& V = mesh.vertices();
  for (const auto& tri : mesh.triangles()) {
    const double a = (V[tri[1]] - V[tri[2]]).norm();
    const double b = (V[tri[0]] - V[tri[2]]).norm();
    const double c = (V[tri[0]] - V[tri[1]]).norm();
    const double area = signed_area(V[tri[0]], V[tri[1]], V[tri[2]]);
    const double s = 0.5 * (a + b + c);
    const double inradius = area / s;
    const double circumradius = a * b * c / (4.0 * area);
    worst = std::max(worst, circumradius / inradius);
  }
  return worst;
}

}  // namespace pbloch
