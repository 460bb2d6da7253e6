#pragma once

#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "equigeo/liealg.hpp"

namespace equigeo {

enum class SpaceFamily {
  wallach_so,   // SO(n1+n2+n3)/SO(n1)xSO(n2)xSO(n3)
  stiefel_v2,   // SO(n)/SO(n-2)
  stiefel_v1k,  // SO(1+n2+n3)/SO(n3) with fiber so(n2)
  wallach_u3,   // U(3)/U(1)^3
  wallach_sp3,  // Sp(3)/Sp(1)^3
  sphere_u,     // U(n+1)/U(n)
  sphere_sp     // Sp(n+1)/Sp(n)
};

std::string to_string(SpaceFamily family);
SpaceFamily family_from_string(const std::string& s);

// One invariant summand of the reductive complement, as a labeled list of
// ambient basis positions.
struct IsotropyModule {
  std::string label;
  std::vector<int> positions;
};

// A homogeneous space configuration: ambient algebra basis, isotropy
// subalgebra (as ambient basis positions) and the labeled module
// decomposition of the B-orthogonal complement m.
struct SpaceConfig {
  SpaceFamily family = SpaceFamily::wallach_so;
  std::vector<int> params;
  LieBasis ambient;
  std::vector<int> h_indices;
  std::vector<IsotropyModule> modules;

  // Derived: concatenated module positions (the m-basis order) and the
  // inverse map from ambient position to m position (-1 for h).
  std::vector<int> m_positions;
  std::vector<int> ambient_to_m;

  int dim_m() const { return static_cast<int>(m_positions.size()); }
  int module_count() const { return static_cast<int>(modules.size()); }
  int module_index(const std::string& label) const;  // NotFoundError
  int module_of_position(int m_pos) const;           // module index
  std::string name() const;                          // e.g. "wallach-so(1,3,2)"

  // Short coefficient names, one per m position, used in emitted systems
  // and family data: xi(a,b) -> a<ab>, e -> a, f -> b, g -> c, h -> q.
  std::vector<std::string> var_names() const;
  int var_index(const std::string& var) const;  // NotFoundError
};

// Build and validate one of the supported configurations.
//   wallach-so:  params (n1, n2, n3), each >= 1 (degenerate Stiefel-type
//                parameters allowed; Wallach status is decided by
//                validate_wallach, not the constructor)
//   stiefel-v2:  params (n), n >= 4
//   stiefel-v1k: params (n2, n3), n2 >= 2, n3 >= 2
//   wallach-u3 / wallach-sp3: no params
//   sphere-u / sphere-sp: params (n), n >= 1
SpaceConfig build_space(SpaceFamily family, const std::vector<int>& params);

// Read {"family": ..., "params": [...]} (the space spec file schema).
SpaceConfig build_space_from_json(const nlohmann::json& spec);

struct CheckItem {
  std::string name;
  double residual = 0.0;
  bool pass = false;
};

struct SpaceValidation {
  std::vector<CheckItem> checks;
  bool all_pass() const;
};

// Re-runs the construction invariants: h is a subalgebra, m = h-perp,
// each module is ad(h)-invariant, modules are pairwise B-orthogonal and
// h + m spans g.  build_space already enforces these.
SpaceValidation validate_space(const SpaceConfig& config);

struct WallachReport {
  std::vector<CheckItem> checks;  // bracket relations, residuals
  std::vector<std::pair<std::string, bool>> irreducible;  // per module
  bool relations_hold() const;
  bool all_irreducible() const;
  bool is_generalized_wallach() const;  // relations + irreducibility
};

// For configurations with exactly three modules (treated in order as
// m12, m13, m23): checks [m_ij, m_ij] in h and the cyclic relations
// [m12,m13] in m23, [m12,m23] in m13, [m13,m23] in m12, and tests each
// module for irreducibility under the isotropy action (via the dimension
// of the symmetric commutant of ad(h) on the module).
WallachReport validate_wallach(const SpaceConfig& config);

// Orthogonal projection of an ambient element onto m, in m coordinates.
Eigen::VectorXd project_m(const SpaceConfig& config, const MatrixElement& x);

// A diagonal invariant metric: one positive scalar per module.
struct MetricSpec {
  std::vector<double> lambdas;
  std::string name = "generic";
  // Exact rational values (num, den) when representable, one per module;
  // empty otherwise.
  std::vector<std::pair<long long, long long>> exact;
};

// Grouping of module indices into classes sharing one metric parameter.
struct MetricClassPartition {
  std::vector<std::vector<int>> classes;

  static MetricClassPartition singletons(int module_count);
  int class_of(int module_index) const;  // NotFoundError if uncovered
  bool covers(int module_count) const;
  std::string render(const SpaceConfig& config) const;
};

// Parse "so(3),m12|m13,m23" (classes split by '|', members by ',').
MetricClassPartition parse_partition(const SpaceConfig& config,
                                     const std::string& text);

// Named metrics applicable to the family:
//   stiefel-v2(n):          (1, l, l) with l = (n-1)/(2(n-2))
//   stiefel-v1k with n2=3:  (l2, l2, 1, 1), l2 = (n-2 +/- sqrt(n^2-7n+7))/(n-1)
// Other families admit only the generic metric.
std::vector<MetricSpec> metric_presets(const SpaceConfig& config);

// Partition induced by grouping modules with equal lambda values.
MetricClassPartition partition_for_metric(const SpaceConfig& config,
                                          const MetricSpec& metric);

}  // namespace equigeo
