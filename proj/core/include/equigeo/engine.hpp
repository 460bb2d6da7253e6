#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "equigeo/homspace.hpp"

namespace equigeo {

// One bilinear monomial coeff * x_p * x_q (p, q are m-coordinate indices,
// p < q across the source modules).
struct BilinearTerm {
  int p = 0;
  int q = 0;
  long long coeff = 0;

  friend bool operator==(const BilinearTerm&, const BilinearTerm&) = default;
};

// One equation sum coeff * x_p * x_q = 0 obtained by projecting the
// bracket of two metric classes onto a single m-basis target.
struct BilinearEquation {
  std::vector<BilinearTerm> terms;
  std::pair<std::string, std::string> source_pair;  // rendered class labels
  int target = 0;                                   // m-coordinate index
};

// The quadratic equigeodesic system of a configuration under a metric
// class partition, in normalized integer form.
struct QuadraticSystem {
  std::string space;
  std::vector<std::string> variables;  // one short name per m position
  std::vector<std::string> module_of;  // module label per m position
  std::vector<std::vector<std::string>> partition;  // classes of labels
  std::vector<BilinearEquation> equations;
  // Cross-class module pairs whose bilinear map vanishes identically
  // (they contribute no equations).
  std::vector<std::pair<std::string, std::string>> dropped_pairs;

  int num_variables() const { return static_cast<int>(variables.size()); }
  int num_equations() const { return static_cast<int>(equations.size()); }

  Eigen::VectorXd residual(const Eigen::VectorXd& x) const;
  Eigen::MatrixXd jacobian(const Eigen::VectorXd& x) const;

  std::string render_equation(const BilinearEquation& eq) const;
  std::vector<std::string> render() const;

  nlohmann::json to_json() const;
  static QuadraticSystem from_json(const nlohmann::json& j);
};

// m-projected bracket of two coefficient vectors, through the ambient
// structure tensor.
Eigen::VectorXd bracket_m(const SpaceConfig& config, const Eigen::VectorXd& x,
                          const Eigen::VectorXd& y);

// [X, Lambda X]_m where Lambda scales each module block by its lambda.
Eigen::VectorXd equigeodesic_residual(const SpaceConfig& config,
                                      const MetricSpec& metric,
                                      const Eigen::VectorXd& x);

// Per module pair (i < j, keyed by label pair) the m-projection of
// [X_i, X_j].  X is equigeodesic iff all entries vanish.
std::map<std::pair<std::string, std::string>, Eigen::VectorXd> cross_residuals(
    const SpaceConfig& config, const Eigen::VectorXd& x);

// Per class pair (I < J) the m-projection of [X_I, X_J], where X_I is the
// restriction of X to the modules of class I.  These are the residuals
// constrained metrics actually see: within a class the bracket
// contributions merge, so only the summed bracket must vanish.
std::map<std::pair<int, int>, Eigen::VectorXd> class_cross_residuals(
    const SpaceConfig& config, const MetricClassPartition& partition,
    const Eigen::VectorXd& x);

// Emit the normalized quadratic system for the given partition: for every
// pair of distinct classes and every m-basis target, the projected bilinear
// equation, with terms canonically ordered, integer coefficients divided by
// their gcd, positive leading coefficient, duplicates removed.
QuadraticSystem generate_system(const SpaceConfig& config,
                                const MetricClassPartition& partition);

enum class Classification {
  trivial,
  structural_nontrivial,
  algebraic,
  not_equigeodesic
};

std::string to_string(Classification c);

// Classify a coefficient vector relative to a metric class partition
// (singleton partition if omitted).  A module is in the support when its
// restriction norm exceeds support_threshold * |X|.
Classification classify_vector(const SpaceConfig& config,
                               const MetricClassPartition& partition,
                               const Eigen::VectorXd& x,
                               double support_threshold = 1e-9);
Classification classify_vector(const SpaceConfig& config,
                               const Eigen::VectorXd& x,
                               double support_threshold = 1e-9);

struct GeodesicCheck {
  bool pass = false;
  double max_violation = 0.0;
};

// Tests B(Lambda X, [X, Z]_m) = 0 for every m-basis Z, with tolerance
// 1e-10 * |X|^2.
GeodesicCheck geodesic_vector_check(const SpaceConfig& config,
                                    const MetricSpec& metric,
                                    const Eigen::VectorXd& x);

}  // namespace equigeo
