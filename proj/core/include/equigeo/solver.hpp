#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "equigeo/catalog.hpp"
#include "equigeo/engine.hpp"

namespace equigeo {

struct SolverSolution {
  Eigen::VectorXd x;  // unit norm, sign-canonicalized
  double residual = 0.0;
  std::vector<std::string> support;  // module labels
};

struct SolverResult {
  std::vector<SolverSolution> solutions;  // deduplicated
  int restarts_used = 0;
  int converged_count = 0;  // converged restarts before deduplication
  unsigned long long seed = 0;
  double tol = 0.0;
};

// Random-restart damped Gauss-Newton on the unit sphere.  Each restart
// begins at a uniform random unit vector; steps solve
// (J^T J + mu I) d = -J^T r with mu doubled on rejected steps and halved
// on accepted ones, renormalizing after each step.  Converged points
// (residual < tol) are collected and deduplicated by support signature and
// pairwise distance < 1e-4 up to sign.
SolverResult solve(const QuadraticSystem& system, int restarts, double tol,
                   unsigned long long seed, double support_threshold = 1e-6);

// Module labels whose restriction norm exceeds threshold * |X|.
std::vector<std::string> support_signature(const SpaceConfig& config,
                                           const Eigen::VectorXd& x,
                                           double threshold);

struct ExhaustivenessEntry {
  int solution_index = 0;
  std::string family_id;  // empty when unmatched
  double distance = 0.0;
};

struct ExhaustivenessReport {
  std::vector<ExhaustivenessEntry> entries;  // one per solution
  int unmatched_count = 0;
};

// For each solver solution, fit each family's free parameters from the
// solution's coordinates at the free positions, instantiate, and accept a
// match when the instantiated vector is within 1e-6 of the solution.
ExhaustivenessReport exhaustiveness_report(
    const SpaceConfig& config, const SolverResult& result,
    const std::vector<SolutionFamily>& families);

nlohmann::json solver_result_to_json(const QuadraticSystem& system,
                                     const SolverResult& result);

}  // namespace equigeo
