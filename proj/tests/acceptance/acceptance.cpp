// Acceptance checks: one PASS/FAIL line per criterion.
//
// Usage: acceptance [--only 1,3,...] [--expect-fail 8,...]
// The exit status counts failures that were not listed with --expect-fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "pbloch/assembly.hpp"
#include "pbloch/dtn.hpp"
#include "pbloch/experiment.hpp"
#include "pbloch/incident.hpp"
#include "pbloch/postprocess.hpp"
#include "support/coupling_oracle.hpp"

using namespace pbloch;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::set<int> parse_list(const std::string& s) {
  std::set<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.insert(std::stoi(item));
  return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome example_one() {
  const auto t0 = std::chrono::steady_clock::now();
  const SweepResult r = run_sweep(preset(1), &std::cout);
  const double secs = seconds_since(t0);
  bool ok = secs <= 15 * 60;
  std::string detail;
  for (std::size_t i = 0; i < r.rows.size(); i += 4) {
    const auto& a = r.rows;
    const bool monotone = a[i].rel_l2_error > a[i + 1].rel_l2_error &&
                          a[i + 1].rel_l2_error > a[i + 2].rel_l2_error;
    const bool plateau = a[i + 2].rel_l2_error <= 2e-3 && a[i + 3].rel_l2_error <= 2e-3;
    ok = ok && monotone && plateau;
    detail += "k=" + fmt("%.4g", a[i].k) + ": ";
    for (int j = 0; j < 4; ++j) detail += fmt("%.2e", a[i + j].rel_l2_error) + (j < 3 ? " " : "; ");
  }
  return {ok, detail + fmt("%.0f s", secs)};
}

Outcome self_convergence() {
  bool ok = true;
  std::string detail;
  for (int ex : {2, 3}) {
    const SweepResult r = run_sweep(preset(ex), &std::cout);
    for (const auto& [k, s] : r.slopes) {
      ok = ok && s && *s <= -5.0;
      detail += "ex" + std::to_string(ex) + " k=" + fmt("%.4g", k) + " slope " +
                (s ? fmt("%.2f", *s) : std::string("n/a")) + "; ";
    }
  }
  return {ok, detail};
}

Outcome per_alpha_oracle() {
  const SurfacePair sp(Profile::from_id("flat:1.1"), Profile::from_id("zero"), 2 * M_PI, 3.0, 2.9);
  bool ok = true;
  std::string detail;
  for (double k : {1.0, std::sqrt(2.0)}) {
    const BlochNodes nodes = bloch_nodes(build_g(exceptional_set(k, 2 * M_PI), 5), 16);
    std::vector<double> err;
    for (double h : {0.1, 0.05, 0.025}) {
      const PeriodicMesh mesh = build_mesh(sp, h);
      const MeshOperators ops = mesh_operators(mesh);
      double num = 0.0, den = 0.0;
      for (double alpha : nodes.alpha) {
        const NodeSystem sys = assemble_node(mesh, ops, alpha, k, 16);
        const Eigen::VectorXcd W =
            sys.solve(load_vector(mesh, alpha, [&](double x1) { return rhs_data_F(alpha, x1, k, 3.0); }));
        for (int v : mesh.top_edge()) {
          const Point x = mesh.vertices()[v];
          const cdouble exact = exact_flat_bloch(alpha, x, k) * std::polar(1.0, alpha * x[0]);
          num += std::norm(W[mesh.dof_of_vertex()[v]] - exact);
          den += std::norm(exact);
        }
      }
      err.push_back(std::sqrt(num / den));
    }
    detail += "k=" + fmt("%.4g", k) + " ratios";
    for (std::size_t i = 0; i + 1 < err.size(); ++i) {
      const double ratio = err[i] / err[i + 1];
      ok = ok && ratio >= 3.0 && ratio <= 5.0;
      detail += " " + fmt("%.3f", ratio);
    }
    detail += "; ";
  }
  return {ok, detail};
}

Outcome dtn_eigentest() {
  const SurfacePair sp(Profile::from_id("flat:1"), Profile::from_id("zero"), 2 * M_PI, 3.0, 2.9);
  const PeriodicMesh mesh = build_mesh(sp, 0.1);
  const int n = static_cast<int>(mesh.top_edge().size());
  const double s = mesh.top_spacing();
  const int M = 20;
  double worst = 0.0;
  bool signs = true;
  for (double k : {1.0, std::sqrt(2.0), 3.3}) {
    for (double alpha : {0.0, 0.17, 0.6}) {
      const DtnBlock b = dtn_matrix(mesh, alpha, k, M);
      for (int j0 = -M; j0 <= M; ++j0) {
        Eigen::VectorXcd v(n);
        for (int i = 0; i < n; ++i) v[i] = std::polar(1.0, j0 * mesh.vertices()[mesh.top_edge()[i]][0]);
        const double arg = 0.5 * j0 * s;
        const double sinc = j0 == 0 ? 1.0 : std::sin(arg) / arg;
        const cdouble value = v.dot(b.trace_matrix * v) / std::pow(sinc, 4);
        const double xi = j0 - alpha;
        const cdouble expect = 2 * M_PI * cdouble(0.0, 1.0) *
                               std::sqrt(cdouble(k * k - xi * xi, 0.0));
        worst = std::max(worst, std::abs(value - expect));
        if (std::abs(xi) < k) signs = signs && value.imag() > 0.0 && std::abs(value.real()) < 1e-10;
        if (std::abs(xi) > k) signs = signs && value.real() < 0.0 && std::abs(value.imag()) < 1e-10;
      }
    }
  }
  return {worst <= 1e-10 && signs, "max deviation " + fmt("%.2e", worst) + (signs ? ", branch signs ok" : ", branch sign mismatch")};
}

Outcome gmap_properties() {
  bool ok = true;
  double fixed = 0.0, order_dev = 0.0;
  bool monotone = true;
  for (double k : {1.0, 1.5, std::sqrt(2.0)}) {
    const auto wc = exceptional_set(k, 2 * M_PI);
    const GMap g = build_g(wc, 5);
    double prev = g(wc.a0).g;
    for (int i = 1; i <= 10000; ++i) {
      const double v = g(wc.a0 + wc.width() * i / 10000.0).g;
      monotone = monotone && v >= prev;
      prev = v;
    }
    for (double s : wc.S) {
      fixed = std::max(fixed, std::abs(g(s).g - s));
      for (double side : {-1.0, 1.0}) {
        const double t1 = s + side * 2e-3, t2 = s + side * 1e-3;
        if (t1 < wc.a0 || t1 > wc.a1) continue;
        const double order = std::log(g(t1).gprime / g(t2).gprime) / std::log(2.0);
        order_dev = std::max(order_dev, std::abs(order - (g.order() + 1)));
      }
    }
  }
  ok = fixed <= 1e-12 && monotone && order_dev <= 0.3;
  return {ok, "fixed-point error " + fmt("%.1e", fixed) + ", monotone " + (monotone ? "yes" : "no") +
                  ", flatness order deviation " + fmt("%.3f", order_dev)};
}

Outcome structural() {
  std::mt19937_64 rng(2024);
  double det_dev = 0.0;
  const char* pert[] = {"flat:0.1", "example2-p", "example3-p"};
  const char* zeta[] = {"flat:1", "example2-zeta", "example2-zeta"};
  for (int ex = 0; ex < 3; ++ex) {
    const SurfacePair sp(Profile::from_id(zeta[ex]), Profile::from_id(pert[ex]), 2 * M_PI, 3.0, 2.9);
    std::uniform_real_distribution<double> x1(-50.0, 50.0), u(0.0, 1.0);
    for (int i = 0; i < 10000; ++i) {
      const double a = x1(rng);
      const double z = sp.zeta()(a);
      det_dev = std::max(det_dev, std::abs(coefficients(sp, Point(a, z + u(rng) * (3.0 - z))).A.determinant() - 1.0));
    }
  }

  const SurfacePair flat(Profile::from_id("example2-zeta"), Profile::from_id("zero"), 2 * M_PI, 3.0, 2.9);
  const PeriodicMesh mesh = build_mesh(flat, 0.3);
  const GMap g = build_g(exceptional_set(1.0, 2 * M_PI), 5);
  const BlochNodes nodes = bloch_nodes(g, 8);
  const CouplingOperator zero(mesh, flat, 1.0, g, nodes, 4);
  const BlochField W = BlochField::Random(mesh.dof_count(), 8);
  const double zero_norm = zero.apply(W).norm();

  const PeriodicMesh micro = testing::micro_mesh();
  double micro_dev = 0.0;
  for (double k : {1.0, std::sqrt(2.0)}) {
    const GMap gk = build_g(exceptional_set(k, 2 * M_PI), 5);
    const BlochNodes nk = bloch_nodes(gk, 2);
    const BlochField Wm = BlochField::Random(micro.dof_count(), 2);
    for (TransformRule rule : {TransformRule::Trapezoid, TransformRule::Interpolatory}) {
      const CouplingOperator B(micro, testing::smooth_coefficients, 10.0, k, gk, nk, 1, rule);
      micro_dev = std::max(micro_dev, (B.apply(Wm) - testing::brute_force(micro, gk, nk, 1, k, Wm, rule)).norm());
    }
  }
  const bool ok = det_dev <= 1e-12 && zero_norm == 0.0 && micro_dev <= 1e-12;
  return {ok, "max |det A - 1| " + fmt("%.1e", det_dev) + ", p=0 coupling norm " + fmt("%.1e", zero_norm) +
                  ", micro brute-force deviation " + fmt("%.1e", micro_dev)};
}

Outcome interpolation_rate() {
  auto f = [](double t) {
    return cdouble(1.0 / (1.5 - std::cos(2 * M_PI * t)), std::sin(2 * M_PI * t));
  };
  std::vector<double> err;
  std::string detail = "max errors";
  for (int N : {8, 16, 32, 64}) {
    std::vector<cdouble> s(N);
    for (int j = 0; j < N; ++j) s[j] = f((j + 1.0) / N);
    double e = 0.0;
    for (int i = 0; i < 2000; ++i) {
      const double t = (i + 0.5) / 2000.0;
      e = std::max(e, std::abs(interp_eval(s, 0.0, 1.0, t) - f(t)));
    }
    err.push_back(e);
    detail += " " + fmt("%.2e", e);
  }
  bool ok = true;
  // Faster than N^-5: each doubling gains more than 2^5 until round-off.
  for (std::size_t i = 1; i < err.size(); ++i) ok = ok && err[i] < std::max(err[i - 1] / 32.0, 1e-13);
  return {ok, detail};
}

Outcome finite_section() {
  const RunConfig cfg = preset(2);
  double worst = 0.0;
  std::string detail;
  for (double k : cfg.k) {
    SweepContext ctx(cfg, k);
    const auto a = ctx.solve(16, 8);
    const auto b = ctx.solve(16, 16);
    const double change = relative_l2_error(a.top, b.top);
    worst = std::max(worst, change);
    detail += "k=" + fmt("%.4g", k) + " change " + fmt("%.2e", change) + "; ";
  }
  return {worst < 1e-6, detail};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only, expected;
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string flag = argv[i];
    if (flag == "--only") only = parse_list(argv[i + 1]);
    else if (flag == "--expect-fail") expected = parse_list(argv[i + 1]);
    else {
      std::cerr << "usage: acceptance [--only list] [--expect-fail list]\n";
      return 2;
    }
  }

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"Example 1 reproduction", example_one},
      {"self-convergence slope, Examples 2 and 3", self_convergence},
      {"per-alpha FEM oracle", per_alpha_oracle},
      {"DtN eigentest", dtn_eigentest},
      {"g-map properties", gmap_properties},
      {"structural invariants", structural},
      {"interpolation rate", interpolation_rate},
      {"finite-section stability", finite_section},
  };

  std::vector<std::string> lines;
  int unexpected = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && !only.contains(id)) continue;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    while (!o.detail.empty() && (o.detail.back() == ' ' || o.detail.back() == ';')) o.detail.pop_back();
    std::string line = std::string(o.pass ? "PASS" : "FAIL") + " criterion " + std::to_string(id) +
                       " (" + criteria[i].first + "): " + o.detail;
    if (!o.pass && expected.contains(id)) line += " [expected failure]";
    if (!o.pass && !expected.contains(id)) ++unexpected;
    std::cout << line << std::endl;
    lines.push_back(line);
  }
  std::cout << "\nSummary\n";
  for (const auto& l : lines) std::cout << l << '\n';
  return unexpected;
}
