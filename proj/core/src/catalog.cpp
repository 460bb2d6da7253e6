#include "equigeo/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

// Compiled-in default location of the family data files; the build passes
// the source-tree path, overridable at runtime via EQUIGEO_DATA_DIR.
#ifndef EQUIGEO_DATA_DIR
#define EQUIGEO_DATA_DIR "."
#endif

namespace equigeo {

namespace {

MetricClassPartition resolve_partition(
    const SpaceConfig& config,
    const std::vector<std::vector<std::string>>& labels) {
  MetricClassPartition partition;
  for (const auto& cls : labels) {
    std::vector<int> members;
    for (const std::string& label : cls) {
      members.push_back(config.module_index(label));
    }
    partition.classes.push_back(members);
  }
  if (!partition.covers(config.module_count())) {
    throw InvalidParametersError("family partition does not cover modules");
  }
  return partition;
}

std::vector<std::vector<std::string>> singleton_labels(
    const SpaceConfig& config) {
  std::vector<std::vector<std::string>> out;
  for (const IsotropyModule& mod : config.modules) out.push_back({mod.label});
  return out;
}

void validate_family(const SpaceConfig& config, const SolutionFamily& family) {
  std::set<std::string> vars;
  for (const std::string& v : config.var_names()) vars.insert(v);
  std::set<std::string> covered;
  for (const std::string& p : family.free_params) {
    if (!vars.count(p)) {
      throw InvalidInputError(family.id + ": unknown free parameter " + p);
    }
    if (!covered.insert(p).second) {
      throw InvalidInputError(family.id + ": duplicate coverage of " + p);
    }
  }
  for (const auto& [name, a] : family.assignments) {
    if (!vars.count(name)) {
      throw InvalidInputError(family.id + ": unknown coordinate " + name);
    }
    if (a.kind == Assignment::Kind::free_param) {
      throw InvalidInputError(family.id +
                              ": free coordinates belong in free_params");
    }
    if (!covered.insert(name).second) {
      throw InvalidInputError(family.id + ": duplicate coverage of " + name);
    }
  }
  if (covered.size() != vars.size()) {
    throw InvalidInputError(family.id +
                            ": assignments do not cover all coordinates");
  }
}

}  // namespace

std::string data_dir() {
  if (const char* env = std::getenv("EQUIGEO_DATA_DIR")) return env;
  return EQUIGEO_DATA_DIR;
}

nlohmann::json family_to_json(const SolutionFamily& family) {
  nlohmann::json j;
  j["space"] = family.space;
  j["id"] = family.id;
  j["free_params"] = family.free_params;
  nlohmann::json assignments = nlohmann::json::object();
  for (const auto& [name, a] : family.assignments) {
    if (a.kind == Assignment::Kind::zero) {
      assignments[name] = "zero";
    } else if (a.kind == Assignment::Kind::free_param) {
      assignments[name] = "free";
    } else {
      nlohmann::json num = nlohmann::json::array();
      for (const Monomial& m : a.expr.numerator) {
        num.push_back({{"sign", m.sign}, {"params", m.params}});
      }
      assignments[name] = {{"num", num}, {"den", a.expr.denominator}};
    }
  }
  j["assignments"] = assignments;
  j["constraints"] = family.constraints;
  j["partition"] = family.partition;
  j["claim"] = family.claim;
  return j;
}

SolutionFamily family_from_json(const nlohmann::json& j) {
  SolutionFamily f;
  f.space = j.at("space").get<std::string>();
  f.id = j.at("id").get<std::string>();
  f.free_params = j.at("free_params").get<std::vector<std::string>>();
  for (const auto& [name, value] : j.at("assignments").items()) {
    Assignment a;
    if (value.is_string()) {
      std::string s = value.get<std::string>();
      if (s == "zero") {
        a.kind = Assignment::Kind::zero;
      } else if (s == "free") {
        a.kind = Assignment::Kind::free_param;
      } else {
        throw InvalidInputError("bad assignment tag: " + s);
      }
    } else {
      a.kind = Assignment::Kind::expression;
      for (const nlohmann::json& jm : value.at("num")) {
        Monomial m;
        m.sign = jm.at("sign").get<int>();
        m.params = jm.at("params").get<std::vector<std::string>>();
        a.expr.numerator.push_back(m);
      }
      a.expr.denominator = value.at("den").get<std::vector<std::string>>();
    }
    f.assignments[name] = a;
  }
  f.constraints = j.at("constraints").get<std::vector<std::string>>();
  f.partition = j.at("partition").get<std::vector<std::vector<std::string>>>();
  f.claim = j.at("claim").get<std::string>();
  return f;
}

namespace {

std::vector<SolutionFamily> load_family_file(const SpaceConfig& config,
                                             const std::string& filename) {
  std::string path = data_dir() + "/" + filename;
  std::ifstream in(path);
  if (!in) throw NotFoundError("cannot open family data file " + path);
  nlohmann::json j;
  in >> j;
  std::vector<SolutionFamily> out;
  auto partition =
      j.at("partition").get<std::vector<std::vector<std::string>>>();
  std::string space = j.at("space").get<std::string>();
  for (const nlohmann::json& jf : j.at("families")) {
    nlohmann::json merged = jf;
    merged["space"] = space;
    merged["partition"] = partition;
    SolutionFamily f = family_from_json(merged);
    validate_family(config, f);
    out.push_back(std::move(f));
  }
  return out;
}

SolutionFamily make_family(const SpaceConfig& config, const std::string& id,
                           const std::vector<std::vector<std::string>>& part,
                           const std::vector<std::string>& free_params,
                           const std::map<std::string, Assignment>& assigned,
                           const std::vector<std::string>& constraints,
                           const std::string& claim) {
  SolutionFamily f;
  f.space = config.name();
  f.id = id;
  f.partition = part;
  f.free_params = free_params;
  f.constraints = constraints;
  f.claim = claim;
  std::set<std::string> free_set(free_params.begin(), free_params.end());
  f.assignments = assigned;
  for (const std::string& v : config.var_names()) {
    if (!free_set.count(v) && !f.assignments.count(v)) {
      f.assignments[v] = Assignment{Assignment::Kind::zero, {}};
    }
  }
  validate_family(config, f);
  return f;
}

// Trivial family supported on a single module: every coordinate of the
// module free, everything else zero.
SolutionFamily single_module_family(const SpaceConfig& config,
                                    const std::string& id,
                                    const std::string& module_label) {
  std::vector<std::string> names = config.var_names();
  std::vector<std::string> free_params;
  int mod = config.module_index(module_label);
  for (int k = 0; k < config.dim_m(); ++k) {
    if (config.module_of_position(k) == mod) free_params.push_back(names[k]);
  }
  return make_family(config, id, singleton_labels(config), free_params, {},
                     {}, "trivial");
}

std::vector<SolutionFamily> stiefel_v2_families(const SpaceConfig& config) {
  const int n = config.params[0];
  std::vector<SolutionFamily> out;
  auto a1 = [](int b) { return "a1" + std::to_string(b); };
  auto a2 = [](int b) { return "a2" + std::to_string(b); };
  std::string base = config.name();
  out.push_back(single_module_family(config, base + "/1", "m0"));
  out.push_back(single_module_family(config, base + "/2", "m2"));
  {
    // One coordinate of m1 plus the complementary coordinates of m2.
    std::vector<std::string> free_params = {a1(3)};
    for (int b = 4; b <= n; ++b) free_params.push_back(a2(b));
    out.push_back(make_family(config, base + "/3", singleton_labels(config),
                              free_params, {}, {}, "algebraic"));
  }
  for (int p = 4; p <= n; ++p) {
    // Pivot family: a1p clears the sum equation for a2p.
    std::vector<std::string> free_params;
    for (int b = 3; b <= p; ++b) free_params.push_back(a1(b));
    for (int b = 3; b < p; ++b) free_params.push_back(a2(b));
    for (int b = p + 1; b <= n; ++b) free_params.push_back(a2(b));
    Assignment pivot;
    pivot.kind = Assignment::Kind::expression;
    for (int j = 3; j < p; ++j) {
      pivot.expr.numerator.push_back(Monomial{-1, {a1(j), a2(j)}});
    }
    pivot.expr.denominator = {a1(p)};
    out.push_back(make_family(config, base + "/" + std::to_string(p),
                              singleton_labels(config), free_params,
                              {{a2(p), pivot}}, {a1(p)}, "algebraic"));
  }
  return out;
}

std::vector<SolutionFamily> stiefel_v2_einstein_families(
    const SpaceConfig& config) {
  const int n = config.params[0];
  std::vector<std::vector<std::string>> part = {{"m0"}, {"m1", "m2"}};
  std::vector<SolutionFamily> out;
  std::string base = config.name() + "-einstein";
  {
    std::vector<std::string> free_params;
    for (int b = 3; b <= n; ++b) free_params.push_back("a1" + std::to_string(b));
    for (int b = 3; b <= n; ++b) free_params.push_back("a2" + std::to_string(b));
    out.push_back(make_family(config, base + "/1", part, free_params, {}, {},
                              "algebraic"));
  }
  {
    SolutionFamily f = make_family(config, base + "/2", part, {"a12"}, {}, {},
                                   "trivial");
    out.push_back(f);
  }
  return out;
}

std::vector<SolutionFamily> sphere_families(const SpaceConfig& config) {
  return {single_module_family(config, config.name() + "/1", "m1"),
          single_module_family(config, config.name() + "/2", "m2")};
}

}  // namespace

std::vector<SolutionFamily> list_families(const SpaceConfig& config,
                                          const std::string& metric) {
  std::string m = (metric == "generic") ? "" : metric;
  switch (config.family) {
    case SpaceFamily::wallach_so:
      if (m.empty() && config.params == std::vector<int>{1, 3, 2}) {
        return load_family_file(config, "wallach-so-1-3-2.json");
      }
      break;
    case SpaceFamily::wallach_u3:
      if (m.empty()) return load_family_file(config, "wallach-u3.json");
      break;
    case SpaceFamily::wallach_sp3:
      if (m.empty()) return load_family_file(config, "wallach-sp3.json");
      break;
    case SpaceFamily::stiefel_v2:
      if (m.empty()) return stiefel_v2_families(config);
      if (m == "einstein" || m == "einstein-v2") {
        return stiefel_v2_einstein_families(config);
      }
      break;
    case SpaceFamily::stiefel_v1k:
      if (m == "jensen" && config.params == std::vector<int>{3, 2}) {
        return load_family_file(config, "stiefel-v1k-3-2-jensen.json");
      }
      break;
    case SpaceFamily::sphere_u:
    case SpaceFamily::sphere_sp:
      if (m.empty()) return sphere_families(config);
      break;
  }
  throw NotFoundError("no curated families for " + config.name() +
                      (m.empty() ? "" : " with metric " + m));
}

Eigen::VectorXd instantiate(const SpaceConfig& config,
                            const SolutionFamily& family,
                            const std::map<std::string, double>& params) {
  auto value_of = [&](const std::string& name) {
    auto it = params.find(name);
    if (it == params.end()) {
      throw InvalidInputError("missing parameter value for " + name);
    }
    return it->second;
  };
  for (const std::string& c : family.constraints) {
    if (std::abs(value_of(c)) < 1e-12) {
      throw ConstraintViolationError(family.id + " requires " + c +
                                     " nonzero");
    }
  }
  std::vector<std::string> names = config.var_names();
  std::set<std::string> free_set(family.free_params.begin(),
                                 family.free_params.end());
  Eigen::VectorXd x = Eigen::VectorXd::Zero(config.dim_m());
  for (int k = 0; k < config.dim_m(); ++k) {
    const std::string& name = names[k];
    if (free_set.count(name)) {
      x[k] = value_of(name);
      continue;
    }
    const Assignment& a = family.assignments.at(name);
    if (a.kind == Assignment::Kind::zero) continue;
    double num = 0.0;
    for (const Monomial& mono : a.expr.numerator) {
      double term = mono.sign;
      for (const std::string& p : mono.params) term *= value_of(p);
      num += term;
    }
    double den = 1.0;
    for (const std::string& p : a.expr.denominator) den *= value_of(p);
    if (std::abs(den) < 1e-12) {
      throw ConstraintViolationError(family.id + ": denominator of " + name +
                                     " vanishes");
    }
    x[k] = num / den;
  }
  return x;
}

bool VerificationReport::all_pass() const {
  return std::all_of(families.begin(), families.end(),
                     [](const FamilyVerification& f) { return f.pass(); });
}

namespace {

std::map<std::string, double> sample_params(const SolutionFamily& family,
                                            std::mt19937_64& rng) {
  std::set<std::string> constrained(family.constraints.begin(),
                                    family.constraints.end());
  std::uniform_real_distribution<double> wide(-2.0, 2.0);
  std::uniform_real_distribution<double> mag(0.1, 2.0);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::map<std::string, double> params;
  for (const std::string& p : family.free_params) {
    if (constrained.count(p)) {
      double v = mag(rng);
      if (coin(rng) < 0.5) v = -v;
      params[p] = v;
    } else {
      params[p] = wide(rng);
    }
  }
  return params;
}

bool claim_matches(const std::string& claim, Classification c) {
  if (claim == "trivial") return c == Classification::trivial;
  if (claim == "algebraic") {
    return c == Classification::algebraic ||
           c == Classification::structural_nontrivial;
  }
  return false;
}

bool is_singleton(const std::vector<std::vector<std::string>>& part) {
  return std::all_of(part.begin(), part.end(),
                     [](const auto& c) { return c.size() == 1; });
}

}  // namespace

FamilyVerification verify_family(const SpaceConfig& config,
                                 const SolutionFamily& family, int samples,
                                 double tol, unsigned long long seed) {
  if (samples < 1) throw InvalidParametersError("samples must be >= 1");
  FamilyVerification out;
  out.id = family.id;
  out.samples = samples;
  out.residual_ok = out.metric_ok = out.classification_ok = true;
  MetricClassPartition partition = resolve_partition(config, family.partition);
  bool singleton = is_singleton(family.partition);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> lam(0.1, 2.0);
  std::ostringstream detail;
  for (int s = 0; s < samples; ++s) {
    auto params = sample_params(family, rng);
    Eigen::VectorXd x = instantiate(config, family, params);
    double norm2 = x.squaredNorm();
    if (norm2 == 0.0) continue;  // all-zero draw carries no information

    double max_cross = 0.0;
    for (const auto& [pair, r] :
         class_cross_residuals(config, partition, x)) {
      max_cross = std::max(max_cross, r.cwiseAbs().maxCoeff());
    }
    out.max_residual = std::max(out.max_residual, max_cross / norm2);
    if (max_cross > tol * norm2) {
      if (out.residual_ok) {
        detail << "cross-class residual " << max_cross / norm2
               << " at sample " << s << "; ";
      }
      out.residual_ok = false;
    }

    if (singleton) {
      for (int t = 0; t < 10; ++t) {
        MetricSpec metric;
        for (int mod = 0; mod < config.module_count(); ++mod) {
          metric.lambdas.push_back(lam(rng));
        }
        Eigen::VectorXd r = equigeodesic_residual(config, metric, x);
        double v = r.cwiseAbs().maxCoeff();
        out.max_residual = std::max(out.max_residual, v / norm2);
        if (v > tol * norm2) {
          if (out.metric_ok) {
            detail << "metric residual " << v / norm2 << " at sample " << s
                   << "; ";
          }
          out.metric_ok = false;
        }
      }
    }

    Classification c = classify_vector(config, partition, x);
    if (!claim_matches(family.claim, c)) {
      if (out.classification_ok) {
        detail << "classified " << to_string(c) << ", claim " << family.claim
               << "; ";
      }
      out.classification_ok = false;
    }
  }
  out.detail = detail.str();
  return out;
}

VerificationReport verify_all(const SpaceConfig& config,
                              const std::vector<SolutionFamily>& families,
                              int samples, double tol,
                              unsigned long long seed) {
  VerificationReport report;
  unsigned long long k = 0;
  for (const SolutionFamily& f : families) {
    report.families.push_back(verify_family(config, f, samples, tol, seed + k));
    ++k;
  }
  return report;
}

GeodesicConsistency geodesic_consistency(const SpaceConfig& config,
                                         const SolutionFamily& family,
                                         int metrics,
                                         unsigned long long seed) {
  GeodesicConsistency out;
  out.id = family.id;
  out.pass = true;
  MetricClassPartition partition = resolve_partition(config, family.partition);
  std::mt19937_64 rng(seed);
  auto params = sample_params(family, rng);
  Eigen::VectorXd x = instantiate(config, family, params);
  if (x.norm() == 0.0) {
    // Degenerate draw: retry once with fresh parameters.
    params = sample_params(family, rng);
    x = instantiate(config, family, params);
  }
  std::uniform_real_distribution<double> lam(0.1, 2.0);
  double norm2 = x.squaredNorm();
  for (int t = 0; t < metrics; ++t) {
    MetricSpec metric;
    metric.lambdas.assign(config.module_count(), 0.0);
    for (const std::vector<int>& cls : partition.classes) {
      double v = lam(rng);
      for (int mod : cls) metric.lambdas[mod] = v;
    }
    GeodesicCheck check = geodesic_vector_check(config, metric, x);
    out.max_violation = std::max(out.max_violation, check.max_violation / norm2);
    if (!check.pass) out.pass = false;
  }
  return out;
}

}  // namespace equigeo
