#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "pbloch/experiment.hpp"

using namespace pbloch;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

RunConfig quick() {
  RunConfig cfg = preset(2);
  cfg.k = {1.0};
  cfg.N = {8, 16};
  cfg.h = 0.3;
  cfg.reference_N = 32;
  cfg.timing = false;
  return cfg;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("pbloch_test_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST(Experiment, WritesReproducibleOutputs) {
  RunConfig cfg = quick();
  cfg.dump_fields = true;
  cfg.out = scratch("a").string();
  std::ostringstream log, err;
  ASSERT_EQ(run_experiment(cfg, log, err), 0) << err.str();
  const std::string csv = slurp(fs::path(cfg.out) / "errors.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "example,k,N,L,h,rel_l2_error,iterations,wall_ms");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
  EXPECT_NE(csv.find("example2,1,8,4,0.3,"), std::string::npos);
  EXPECT_NE(csv.find(",0.0\n"), std::string::npos);
  const std::string slope = slurp(fs::path(cfg.out) / "slope.txt");
  EXPECT_EQ(slope, "example,k,slope\nexample2,1,nan\n");

  const fs::path field = fs::path(cfg.out) / "fields" / "example2_k1_N16.csv";
  ASSERT_TRUE(fs::exists(field));
  const std::string f = slurp(field);
  EXPECT_EQ(f.substr(0, f.find('\n')), "x1,x2,re_u,im_u");

  RunConfig again = cfg;
  again.out = scratch("b").string();
  ASSERT_EQ(run_experiment(again, log, err), 0);
  EXPECT_EQ(slurp(fs::path(again.out) / "errors.csv"), csv);
  EXPECT_EQ(slurp(fs::path(again.out) / "fields" / "example2_k1_N16.csv"), f);
}

TEST(Experiment, ZeroPerturbationReportsOneIteration) {
  RunConfig cfg = quick();
  cfg.example = 0;
  cfg.perturbation = "zero";
  const SweepResult r = run_sweep(cfg);
  ASSERT_EQ(r.rows.size(), 2u);
  for (const auto& row : r.rows) {
    EXPECT_EQ(row.iterations, 1);
    EXPECT_EQ(row.example, "custom");
  }
}

TEST(Experiment, ErrorsDecreaseWithN) {
  RunConfig cfg = quick();
  cfg.N = {8, 16, 32};
  cfg.reference_N = 64;
  cfg.h = 0.2;
  const SweepResult r = run_sweep(cfg);
  ASSERT_EQ(r.rows.size(), 3u);
  EXPECT_GT(r.rows[0].rel_l2_error, r.rows[1].rel_l2_error);
  EXPECT_GT(r.rows[1].rel_l2_error, r.rows[2].rel_l2_error);
  ASSERT_TRUE(r.slopes[0].second);
  EXPECT_LT(*r.slopes[0].second, -5.0);
}

TEST(Experiment, ExitCodes) {
  std::ostringstream log, err;
  RunConfig bad = quick();
  bad.H0 = 3.5;
  bad.out = scratch("c").string();
  EXPECT_EQ(run_experiment(bad, log, err), 2);

  RunConfig geometry = quick();
  geometry.zeta = "flat:1";
  geometry.perturbation = "flat:0.6";
  geometry.out = scratch("d").string();
  EXPECT_EQ(run_experiment(geometry, log, err), 4);

  RunConfig diverge = quick();
  diverge.max_iterations = 1;
  diverge.out = scratch("e").string();
  EXPECT_EQ(run_experiment(diverge, log, err), 3);
  EXPECT_NE(err.str().find("perturbation too large"), std::string::npos);
}

TEST(Experiment, CsvFormatting) {
  SweepResult r;
  r.rows.push_back({"example1", 1.4142135623730951, 32, 16, 0.025, 9.92e-5, 11, 1234.56});
  EXPECT_EQ(errors_csv(r, true),
            "example,k,N,L,h,rel_l2_error,iterations,wall_ms\n"
            "example1,1.414213562,32,16,0.025,9.920000e-05,11,1234.6\n");
  EXPECT_NE(errors_csv(r, false).find(",11,0.0\n"), std::string::npos);
}
