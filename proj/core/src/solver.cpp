#include "equigeo/solver.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include <nlohmann/json.hpp>

namespace equigeo {

namespace {

// Canonical sign: the largest-magnitude coordinate is positive, so that X
// and -X (both solutions of a homogeneous system) collapse to one point.
void canonicalize_sign(Eigen::VectorXd& x) {
  int imax = 0;
  x.cwiseAbs().maxCoeff(&imax);
  if (x[imax] < 0) x = -x;
}

std::vector<std::string> support_from_modules(
    const std::vector<std::string>& module_of, const Eigen::VectorXd& x,
    double threshold) {
  std::map<std::string, double> norm2;
  for (int k = 0; k < x.size(); ++k) norm2[module_of[k]] += x[k] * x[k];
  double total = x.norm();
  std::set<std::string> seen;
  std::vector<std::string> out;
  for (int k = 0; k < x.size(); ++k) {  // preserve module order
    const std::string& label = module_of[k];
    if (seen.count(label)) continue;
    if (std::sqrt(norm2[label]) > threshold * total) {
      out.push_back(label);
    }
    seen.insert(label);
  }
  return out;
}

}  // namespace

std::vector<std::string> support_signature(const SpaceConfig& config,
                                           const Eigen::VectorXd& x,
                                           double threshold) {
  if (x.size() != config.dim_m()) {
    throw IncompatibleElementsError(
        "coefficient vector does not match the configuration");
  }
  if (x.norm() == 0.0) throw InvalidInputError("zero vector has no support");
  std::vector<std::string> module_of;
  for (int k = 0; k < config.dim_m(); ++k) {
    module_of.push_back(config.modules[config.module_of_position(k)].label);
  }
  return support_from_modules(module_of, x, threshold);
}

SolverResult solve(const QuadraticSystem& system, int restarts, double tol,
                   unsigned long long seed, double support_threshold) {
  if (restarts < 1) throw InvalidParametersError("restarts must be >= 1");
  if (!(tol > 0.0)) throw InvalidParametersError("tol must be positive");
  const int n = system.num_variables();
  SolverResult result;
  result.restarts_used = restarts;
  result.seed = seed;
  result.tol = tol;
  if (system.num_equations() == 0) return result;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  for (int r = 0; r < restarts; ++r) {
    Eigen::VectorXd x(n);
    for (int k = 0; k < n; ++k) x[k] = gauss(rng);
    x.normalize();

    double mu = 1e-3;
    Eigen::VectorXd res = system.residual(x);
    for (int it = 0; it < 200; ++it) {
      if (res.norm() < tol) break;
      Eigen::MatrixXd jac = system.jacobian(x);
      Eigen::MatrixXd jtj = jac.transpose() * jac;
      jtj.diagonal().array() += mu;
      Eigen::VectorXd step = jtj.ldlt().solve(-jac.transpose() * res);
      if (step.norm() < 1e-14) break;
      Eigen::VectorXd cand = (x + step).normalized();
      Eigen::VectorXd cand_res = system.residual(cand);
      if (cand_res.norm() < res.norm()) {
        x = cand;
        res = cand_res;
        mu = std::max(mu * 0.5, 1e-12);
      } else {
        mu *= 2.0;
        if (mu > 1e12) break;
      }
    }
    double final_res = res.norm();
    if (final_res >= tol) continue;
    ++result.converged_count;
    canonicalize_sign(x);
    std::vector<std::string> support =
        support_from_modules(system.module_of, x, support_threshold);
    bool duplicate = false;
    for (const SolverSolution& s : result.solutions) {
      if (s.support != support) continue;
      double d = std::min((s.x - x).norm(), (s.x + x).norm());
      if (d < 1e-4) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) {
      result.solutions.push_back({x, final_res, support});
    }
  }
  return result;
}

ExhaustivenessReport exhaustiveness_report(
    const SpaceConfig& config, const SolverResult& result,
    const std::vector<SolutionFamily>& families) {
  ExhaustivenessReport report;
  std::vector<std::string> names = config.var_names();
  for (size_t i = 0; i < result.solutions.size(); ++i) {
    const Eigen::VectorXd& x = result.solutions[i].x;
    ExhaustivenessEntry entry;
    entry.solution_index = static_cast<int>(i);
    entry.distance = -1.0;
    for (const SolutionFamily& family : families) {
      // Family free-parameter names coincide with coordinate names, so the
      // candidate parameters are read straight off the solution.
      std::map<std::string, double> params;
      for (const std::string& p : family.free_params) {
        params[p] = x[config.var_index(p)];
      }
      Eigen::VectorXd fit;
      try {
        fit = instantiate(config, family, params);
      } catch (const ConstraintViolationError&) {
        continue;  // solution violates the family's nonvanishing constraint
      }
      double d = std::min((fit - x).norm(), (fit + x).norm());
      if (d < 1e-6) {
        entry.family_id = family.id;
        entry.distance = d;
        break;
      }
    }
    if (entry.family_id.empty()) ++report.unmatched_count;
    report.entries.push_back(entry);
  }
  return report;
}

nlohmann::json solver_result_to_json(const QuadraticSystem& system,
                                     const SolverResult& result) {
  nlohmann::json j;
  j["space"] = system.space;
  j["seed"] = result.seed;
  j["tol"] = result.tol;
  j["restarts"] = result.restarts_used;
  j["converged_count"] = result.converged_count;
  nlohmann::json sols = nlohmann::json::array();
  for (const SolverSolution& s : result.solutions) {
    nlohmann::json js;
    nlohmann::json coords = nlohmann::json::object();
    for (int k = 0; k < s.x.size(); ++k) {
      coords[system.variables[k]] = s.x[k];
    }
    js["coordinates"] = coords;
    js["residual"] = s.residual;
    js["support"] = s.support;
    sols.push_back(js);
  }
  j["solutions"] = sols;
  return j;
}

}  // namespace equigeo
