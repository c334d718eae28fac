// SPDX-License-Identifier: Apache-2.0
#include "pbloch/experiment.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "pbloch/coupling.hpp"
#include "pbloch/dtn.hpp"
#include "pbloch/error.hpp"
#include "pbloch/incident.hpp"
#include "pbloch/postprocess.hpp"

namespace pbloch {

namespace {

bool flat_pair(const RunConfig& cfg) {
  return cfg.zeta.rfind("flat", 0) == 0 &&
         (cfg.perturbation == "zero" || cfg.perturbation.rfind("flat", 0) == 0);
}

std::string format(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

void write_field(const std::filesystem::path& path, const SweepContext& ctx,
                 const SweepContext::Solution& sol) {
  std::ofstream out(path);
  out << "x1,x2,re_u,im_u\n";
  const PeriodicMesh& mesh = ctx.mesh();
  const auto& dof = mesh.dof_of_vertex();
  std::vector<cdouble> parts(sol.nodes.size());
  for (std::size_t v = 0; v < mesh.vertices().size(); ++v) {
    const Point& x = mesh.vertices()[v];
    cdouble u = 0.0;
    if (dof[v] >= 0) {
      for (int m = 0; m < sol.nodes.size(); ++m) parts[m] = sol.W(dof[v], m);
      u = inverse_bloch(parts, sol.nodes, x[0], 0, mesh.Lambda());
    }
    const Point X = diffeo(ctx.surfaces(), x).image;
    out << format("%.10g", X[0]) << ',' << format("%.10g", X[1]) << ','
        << format("%.12e", u.real()) << ',' << format("%.12e", u.imag()) << '\n';
  }
}

}  // namespace

SweepContext::SweepContext(const RunConfig& cfg, double k)
    : cfg_(cfg),
      k_(k),
      sp_(Profile::from_id(cfg.zeta), Profile::from_id(cfg.perturbation), cfg.Lambda, cfg.H,
          cfg.H0),
      mesh_(std::make_unique<PeriodicMesh>(build_mesh(sp_, cfg.h))),
      g_(build_g(exceptional_set(k, cfg.Lambda), cfg.n, cfg.cutoff)),
      M_dtn_(cfg.M_dtn > 0 ? cfg.M_dtn
                           : default_M_dtn(k, cfg.Lambda, static_cast<int>(mesh_->top_edge().size()))),
      cache_(std::make_unique<NodeCache>(*mesh_, k, M_dtn_)),
      exact_(cfg.reference == ReferenceKind::Exact ||
             (cfg.reference == ReferenceKind::Auto && flat_pair(cfg))) {}

SweepContext::Solution SweepContext::solve(int N, int L) {
  Solution sol;
  sol.N = N;
  sol.L = L;
  sol.nodes = bloch_nodes(g_, N);
  const NodeSystemList systems = cache_->get(sol.nodes.alpha);
  BlochField F(mesh_->dof_count(), N);
  for (int m = 0; m < N; ++m) {
    const double alpha = sol.nodes.alpha[m];
    F.col(m) = load_vector(*mesh_, alpha, [&](double x1) {
      return rhs_data_F(alpha, x1, k_, cfg_.H, cfg_.Lambda);
    });
  }
  SolveOptions opt;
  opt.tol = cfg_.tol;
  opt.max_iterations = cfg_.max_iterations;
  opt.krylov_cap = cfg_.krylov_cap;
  if (sp_.unperturbed()) {
    std::tie(sol.W, sol.report) = solve_coupled(systems, F, nullptr, opt);
  } else {
    const CouplingOperator B(*mesh_, sp_, k_, g_, sol.nodes, L, cfg_.transform);
    std::tie(sol.W, sol.report) = solve_coupled(systems, F, &B, opt);
  }
  sol.report.factorization_reused = cache_->hits() > 0;
  sol.top = reconstruct_top(sol.W, sol.nodes, *mesh_, 0);
  return sol;
}

std::vector<cdouble> SweepContext::reference() {
  if (reference_) return *reference_;
  std::vector<cdouble> ref;
  if (exact_) {
    const double surface = sp_.zeta()(0.0) + sp_.perturbation()(0.0);
    for (int v : mesh_->top_edge()) {
      const Point x = mesh_->vertices()[v];
      ref.push_back(exact_flat_total(x, k_, surface));
    }
  } else {
    ref = solve(cfg_.reference_N, cfg_.L_for(cfg_.reference_N)).top;
  }
  reference_ = ref;
  return ref;
}

SweepResult run_sweep(const RunConfig& cfg, std::ostream* log, const SolutionHook& hook) {
  validate(cfg);
  SweepResult result;
  for (double k : cfg.k) {
    SweepContext ctx(cfg, k);
    if (log)
      *log << cfg.label() << ": k = " << k << ", " << ctx.mesh().dof_count() << " DoFs, M_dtn = "
           << ctx.M_dtn() << ", reference "
           << (ctx.exact_reference() ? std::string("exact")
                                     : "N = " + std::to_string(cfg.reference_N))
           << std::endl;
    const std::vector<cdouble> ref = ctx.reference();
    std::vector<std::pair<int, double>> table;
    for (int N : cfg.N) {
      const auto start = std::chrono::steady_clock::now();
      const int L = cfg.L_for(N);
      const auto sol = ctx.solve(N, L);
      const double ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
              .count();
      const double err = relative_l2_error(sol.top, ref);
      table.emplace_back(N, err);
      result.rows.push_back({cfg.label(), k, N, L, cfg.h, err, sol.report.iterations, ms});
      if (log)
        *log << "  N = " << N << "  L = " << L << "  error = " << format("%.3e", err)
             << "  iterations = " << sol.report.iterations << "  (" << format("%.0f", ms)
             << " ms)" << std::endl;
      if (hook) hook(ctx, k, sol);
    }
    std::optional<double> slope;
    try {
      slope = fit_convergence_slope(table);
    } catch (const DomainError&) {
    }
    result.slopes.emplace_back(k, slope);
  }
  return result;
}

std::string errors_csv(const SweepResult& result, bool timing) {
  std::string s = "example,k,N,L,h,rel_l2_error,iterations,wall_ms\n";
  for (const auto& r : result.rows) {
    s += r.example + ',' + format("%.10g", r.k) + ',' + std::to_string(r.N) + ',' +
         std::to_string(r.L) + ',' + format("%.6g", r.h) + ',' + format("%.6e", r.rel_l2_error) +
         ',' + std::to_string(r.iterations) + ',' + format("%.1f", timing ? r.wall_ms : 0.0) +
         '\n';
  }
  return s;
}

int run_experiment(const RunConfig& cfg, std::ostream& log, std::ostream& err) {
  namespace fs = std::filesystem;
  try {
    const fs::path out(cfg.out);
    fs::create_directories(out);
    SolutionHook hook;
    if (cfg.dump_fields) {
      fs::create_directories(out / "fields");
      hook = [&](const SweepContext& ctx, double k, const SweepContext::Solution& sol) {
        const std::string name =
            cfg.label() + "_k" + format("%.6g", k) + "_N" + std::to_string(sol.N) + ".csv";
        write_field(out / "fields" / name, ctx, sol);
      };
    }
    const SweepResult result = run_sweep(cfg, &log, hook);

    std::ofstream(out / "errors.csv") << errors_csv(result, cfg.timing);
    std::ofstream slope(out / "slope.txt");
    slope << "example,k,slope\n";
    for (const auto& [k, s] : result.slopes)
      slope << cfg.label() << ',' << format("%.10g", k) << ','
            << (s ? format("%.4f", *s) : std::string("nan")) << '\n';
    return 0;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const ConvergenceError& e) {
    err << "solver error: " << e.what() << '\n';
    return 3;
  } catch (const GeometryError& e) {
    err << "geometry error: " << e.what() << '\n';
    return 4;
  } catch (const fs::filesystem_error& e) {
    err << "output error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace pbloch
