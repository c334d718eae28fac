// SPDX-License-Identifier: Apache-2.0
#include "pbloch/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "pbloch/error.hpp"
#include "pbloch/profile.hpp"

namespace pbloch {

namespace {

using json = nlohmann::json;

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "example", "k",         "N",           "L",      "Lambda",      "H",
      "H0",      "n",         "h",           "M_dtn",  "tol",         "zeta",
      "perturbation", "reference", "reference_N", "cutoff", "transform", "out",  "seed",
      "dump_fields",  "timing",    "max_iterations", "krylov_cap"};
  return keys;
}

[[noreturn]] void bad(const std::string& key, const std::string& what) {
  throw ConfigError("config key '" + key + "': " + what);
}

double get_number(const json& j, const std::string& key) {
  if (!j.is_number()) bad(key, "expected a number");
  return j.get<double>();
}

int get_int(const json& j, const std::string& key) {
  if (!j.is_number_integer()) bad(key, "expected an integer");
  return j.get<int>();
}

bool get_bool(const json& j, const std::string& key) {
  if (!j.is_boolean()) bad(key, "expected true or false");
  return j.get<bool>();
}

std::string get_string(const json& j, const std::string& key) {
  if (!j.is_string()) bad(key, "expected a string");
  return j.get<std::string>();
}

template <class T, class Get>
std::vector<T> get_list(const json& j, const std::string& key, Get get) {
  std::vector<T> out;
  if (j.is_array()) {
    for (const auto& e : j) out.push_back(get(e, key));
    if (out.empty()) bad(key, "empty list");
  } else {
    out.push_back(get(j, key));
  }
  return out;
}

}  // namespace

std::string RunConfig::label() const {
  return example == 0 ? std::string("custom") : "example" + std::to_string(example);
}

RunConfig preset(int example) {
  RunConfig cfg;
  cfg.example = example;
  cfg.k = {1.0, std::sqrt(2.0)};
  switch (example) {
    case 1:
      cfg.zeta = "flat:1";
      cfg.perturbation = "flat:0.1";
      cfg.h = 0.025;
      break;
    case 2:
      cfg.zeta = "example2-zeta";
      cfg.perturbation = "example2-p";
      break;
    case 3:
      cfg.zeta = "example2-zeta";
      cfg.perturbation = "example3-p";
      cfg.k = {1.0, 1.5};
      break;
    default:
      bad("example", "expected 1, 2 or 3");
  }
  return cfg;
}

RunConfig parse_config_text(const std::string& text, const ConfigOverrides& overrides) {
  json doc = json::object();
  if (text.find_first_not_of(" \t\r\n") != std::string::npos) {
    try {
      doc = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ConfigError(std::string("malformed configuration: ") + e.what());
    }
  }
  if (!doc.is_object()) throw ConfigError("configuration must be a JSON object");
  for (const auto& item : doc.items())
    if (!known_keys().contains(item.key())) bad(item.key(), "unknown key");

  std::optional<int> example = overrides.example;
  if (!example && doc.contains("example")) example = get_int(doc["example"], "example");
  RunConfig cfg = (example && *example != 0) ? preset(*example) : RunConfig{};

  for (const auto& [key, v] : doc.items()) {
    if (key == "example") continue;
    if (key == "k") cfg.k = get_list<double>(v, key, get_number);
    else if (key == "N") cfg.N = get_list<int>(v, key, get_int);
    else if (key == "L") cfg.L = get_int(v, key);
    else if (key == "Lambda") cfg.Lambda = get_number(v, key);
    else if (key == "H") cfg.H = get_number(v, key);
    else if (key == "H0") cfg.H0 = get_number(v, key);
    else if (key == "n") cfg.n = get_int(v, key);
    else if (key == "h") cfg.h = get_number(v, key);
    else if (key == "M_dtn") cfg.M_dtn = get_int(v, key);
    else if (key == "tol") cfg.tol = get_number(v, key);
    else if (key == "zeta") cfg.zeta = get_string(v, key);
    else if (key == "perturbation") cfg.perturbation = get_string(v, key);
    else if (key == "reference_N") cfg.reference_N = get_int(v, key);
    else if (key == "out") cfg.out = get_string(v, key);
    else if (key == "seed") {
      if (!v.is_number_unsigned()) bad(key, "expected a non-negative integer");
      cfg.seed = v.get<std::uint64_t>();
    } else if (key == "dump_fields") cfg.dump_fields = get_bool(v, key);
    else if (key == "timing") cfg.timing = get_bool(v, key);
    else if (key == "max_iterations") cfg.max_iterations = get_int(v, key);
    else if (key == "krylov_cap") cfg.krylov_cap = get_int(v, key);
    else if (key == "reference") {
      const std::string s = get_string(v, key);
      if (s == "auto") cfg.reference = ReferenceKind::Auto;
      else if (s == "exact") cfg.reference = ReferenceKind::Exact;
      else if (s == "numerical") cfg.reference = ReferenceKind::Numerical;
      else bad(key, "expected auto, exact or numerical");
    } else if (key == "transform") {
      const std::string s = get_string(v, key);
      if (s == "interpolatory") cfg.transform = TransformRule::Interpolatory;
      else if (s == "trapezoid") cfg.transform = TransformRule::Trapezoid;
      else bad(key, "expected interpolatory or trapezoid");
    } else if (key == "cutoff") {
      const std::string s = get_string(v, key);
      if (s == "polynomial") cfg.cutoff = CutoffKind::Polynomial;
      else if (s == "exponential") cfg.cutoff = CutoffKind::Exponential;
      else if (s == "identity") cfg.cutoff = CutoffKind::Identity;
      else bad(key, "expected polynomial, exponential or identity");
    }
  }

  if (overrides.k) cfg.k = {*overrides.k};
  if (overrides.N) cfg.N = {*overrides.N};
  if (overrides.out) cfg.out = *overrides.out;
  validate(cfg);
  return cfg;
}

RunConfig parse_config(const std::string& path, const ConfigOverrides& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read configuration file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), overrides);
}

void validate(const RunConfig& cfg) {
  for (double k : cfg.k)
    if (!(k > 0.0) || !std::isfinite(k)) bad("k", "wavenumbers must be positive");
  for (int N : cfg.N)
    if (N < 2 || N % 2 != 0) bad("N", "node counts must be even and at least 2");
  if (cfg.L && *cfg.L < 1) bad("L", "must be at least 1");
  if (!(cfg.Lambda > 0.0)) bad("Lambda", "must be positive");
  if (!(cfg.H0 < cfg.H)) bad("H0", "must lie below H");
  if (cfg.n < 0) bad("n", "must be non-negative");
  if (!(cfg.h > 0.0)) bad("h", "must be positive");
  if (cfg.M_dtn < 0) bad("M_dtn", "must be non-negative");
  if (!(cfg.tol > 0.0)) bad("tol", "must be positive");
  if (cfg.max_iterations < 1) bad("max_iterations", "must be positive");
  if (cfg.krylov_cap < 2) bad("krylov_cap", "must be at least 2");
  if (cfg.reference_N < 2 || cfg.reference_N % 2 != 0)
    bad("reference_N", "must be even and at least 2");
  try {
    (void)Profile::from_id(cfg.zeta);
  } catch (const ConfigError& e) {
    bad("zeta", e.what());
  }
  try {
    (void)Profile::from_id(cfg.perturbation);
  } catch (const ConfigError& e) {
    bad("perturbation", e.what());
  }
  const bool flat = cfg.zeta.rfind("flat", 0) == 0 &&
                    (cfg.perturbation == "zero" || cfg.perturbation.rfind("flat", 0) == 0);
  if (cfg.reference == ReferenceKind::Exact && !flat)
    bad("reference", "the exact reference needs flat surfaces");
}

}  // namespace pbloch
