#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "equigeo/engine.hpp"

namespace equigeo {

// A signed product of up to three parameters.
struct Monomial {
  int sign = 1;
  std::vector<std::string> params;
};

// Rational coefficient expression: sum of monomials over a product of up
// to two parameters (empty denominator = 1).
struct FamilyExpression {
  std::vector<Monomial> numerator;
  std::vector<std::string> denominator;
};

// Value of one m-coordinate within a family: identically zero, a free
// parameter (named like the coordinate), or a rational expression in the
// free parameters.
struct Assignment {
  enum class Kind { zero, free_param, expression };
  Kind kind = Kind::zero;
  FamilyExpression expr;  // only for Kind::expression
};

// A curated parametric solution family of an equigeodesic system.
struct SolutionFamily {
  std::string space;  // configuration name, e.g. "stiefel-v2(5)"
  std::string id;     // "space/index"
  std::vector<std::string> free_params;
  std::map<std::string, Assignment> assignments;  // per coordinate name
  std::vector<std::string> constraints;           // parameters kept nonzero
  std::vector<std::vector<std::string>> partition;  // metric classes (labels)
  std::string claim;  // "trivial" or "algebraic"
};

// Directory holding the family data files; overridable through the
// EQUIGEO_DATA_DIR environment variable.
std::string data_dir();

// All curated families for the configuration.  `metric` selects a
// constrained-metric catalog where one exists ("jensen" for
// stiefel-v1k(3,2), "einstein" / "einstein-v2" for stiefel-v2); the empty
// string selects the unconstrained catalog.  NotFoundError when no catalog
// exists for the request.
std::vector<SolutionFamily> list_families(const SpaceConfig& config,
                                          const std::string& metric = "");

// Evaluate a family at concrete parameter values.  Throws
// ConstraintViolationError when a constrained parameter is below 1e-12 in
// magnitude, InvalidInputError on missing parameters.
Eigen::VectorXd instantiate(const SpaceConfig& config,
                            const SolutionFamily& family,
                            const std::map<std::string, double>& params);

struct FamilyVerification {
  std::string id;
  int samples = 0;
  bool residual_ok = false;        // cross-class residuals vanish
  bool metric_ok = false;          // random-metric residuals vanish
  bool classification_ok = false;  // classification matches the claim
  double max_residual = 0.0;
  std::string detail;

  bool pass() const { return residual_ok && metric_ok && classification_ok; }
};

struct VerificationReport {
  std::vector<FamilyVerification> families;
  bool all_pass() const;
};

// Draw `samples` random parameter vectors (uniform in +-[0.1, 2] for
// constrained parameters, [-2, 2] otherwise), instantiate, and check:
// (a) cross-class residuals < tol * |X|^2; (b) for singleton-partition
// families, [X, Lambda X]_m < tol * |X|^2 for 10 random metrics;
// (c) the classification matches the family's claim ("algebraic" accepts
// structural-nontrivial).
FamilyVerification verify_family(const SpaceConfig& config,
                                 const SolutionFamily& family, int samples,
                                 double tol, unsigned long long seed);

VerificationReport verify_all(const SpaceConfig& config,
                              const std::vector<SolutionFamily>& families,
                              int samples, double tol,
                              unsigned long long seed);

struct GeodesicConsistency {
  std::string id;
  bool pass = false;
  double max_violation = 0.0;
};

// Instantiates the family at random parameters and runs the geodesic-vector
// test for `metrics` random metrics constant on the family's partition
// classes (tolerance 1e-10 * |X|^2 per check).
GeodesicConsistency geodesic_consistency(const SpaceConfig& config,
                                         const SolutionFamily& family,
                                         int metrics,
                                         unsigned long long seed);

nlohmann::json family_to_json(const SolutionFamily& family);
SolutionFamily family_from_json(const nlohmann::json& j);

}  // namespace equigeo
