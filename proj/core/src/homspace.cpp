#include "equigeo/homspace.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace equigeo {

namespace {

constexpr double kTol = 1e-12;

std::string var_for_label(const std::string& label) {
  // "xi(a,b)" / "e(i,j)" / "f(i,j)" / "g(i,j)" / "h(i,j)"
  auto open = label.find('(');
  auto comma = label.find(',');
  auto close = label.find(')');
  std::string kind = label.substr(0, open);
  std::string a = label.substr(open + 1, comma - open - 1);
  std::string b = label.substr(comma + 1, close - comma - 1);
  std::string prefix;
  if (kind == "xi" || kind == "e")
    prefix = "a";
  else if (kind == "f")
    prefix = "b";
  else if (kind == "g")
    prefix = "c";
  else
    prefix = "q";
  if (a.size() == 1 && b.size() == 1) return prefix + a + b;
  return prefix + a + "_" + b;
}

void finalize_config(SpaceConfig& config) {
  config.m_positions.clear();
  for (const IsotropyModule& mod : config.modules) {
    config.m_positions.insert(config.m_positions.end(), mod.positions.begin(),
                              mod.positions.end());
  }
  config.ambient_to_m.assign(config.ambient.dim(), -1);
  for (int i = 0; i < config.dim_m(); ++i) {
    config.ambient_to_m[config.m_positions[i]] = i;
  }
}

void require_params(SpaceFamily family, const std::vector<int>& params,
                    size_t count) {
  if (params.size() != count) {
    std::ostringstream os;
    os << to_string(family) << " expects " << count << " parameter(s), got "
       << params.size();
    throw InvalidParametersError(os.str());
  }
}

}  // namespace

std::string to_string(SpaceFamily family) {
  switch (family) {
    case SpaceFamily::wallach_so:
      return "wallach-so";
    case SpaceFamily::stiefel_v2:
      return "stiefel-v2";
    case SpaceFamily::stiefel_v1k:
      return "stiefel-v1k";
    case SpaceFamily::wallach_u3:
      return "wallach-u3";
    case SpaceFamily::wallach_sp3:
      return "wallach-sp3";
    case SpaceFamily::sphere_u:
      return "sphere-u";
    case SpaceFamily::sphere_sp:
      return "sphere-sp";
  }
  return "?";
}

SpaceFamily family_from_string(const std::string& s) {
  for (SpaceFamily f :
       {SpaceFamily::wallach_so, SpaceFamily::stiefel_v2,
        SpaceFamily::stiefel_v1k, SpaceFamily::wallach_u3,
        SpaceFamily::wallach_sp3, SpaceFamily::sphere_u,
        SpaceFamily::sphere_sp}) {
    if (to_string(f) == s) return f;
  }
  throw InvalidParametersError("unknown space family: " + s);
}

int SpaceConfig::module_index(const std::string& label) const {
  for (int i = 0; i < module_count(); ++i) {
    if (modules[i].label == label) return i;
  }
  throw NotFoundError("no module labeled " + label + " in " + name());
}

int SpaceConfig::module_of_position(int m_pos) const {
  int offset = 0;
  for (int i = 0; i < module_count(); ++i) {
    offset += static_cast<int>(modules[i].positions.size());
    if (m_pos < offset) return i;
  }
  throw InvalidInputError("m position out of range");
}

std::string SpaceConfig::name() const {
  std::ostringstream os;
  os << to_string(family);
  if (!params.empty()) {
    os << "(";
    for (size_t i = 0; i < params.size(); ++i) {
      if (i) os << ",";
      os << params[i];
    }
    os << ")";
  }
  return os.str();
}

std::vector<std::string> SpaceConfig::var_names() const {
  std::vector<std::string> out;
  out.reserve(dim_m());
  for (int pos : m_positions) {
    out.push_back(var_for_label(ambient.labels[pos]));
  }
  return out;
}

int SpaceConfig::var_index(const std::string& var) const {
  std::vector<std::string> names = var_names();
  auto it = std::find(names.begin(), names.end(), var);
  if (it == names.end()) {
    throw NotFoundError("no coefficient named " + var + " in " + name());
  }
  return static_cast<int>(it - names.begin());
}

namespace {

SpaceConfig build_wallach_so(const std::vector<int>& params) {
  if (params.size() != 3 || params[0] < 1 || params[1] < 1 || params[2] < 1) {
    throw InvalidParametersError(
        "wallach-so expects three block sizes >= 1");
  }
  const int n1 = params[0], n2 = params[1], n3 = params[2];
  const int n = n1 + n2 + n3;
  if (n < 2) throw InvalidParametersError("ambient so(n) requires n >= 2");
  SpaceConfig config;
  config.family = SpaceFamily::wallach_so;
  config.params = params;
  config.ambient = build_so_basis(n);
  auto block = [&](int idx) {  // 0-based block of a 1-based row index
    if (idx <= n1) return 0;
    if (idx <= n1 + n2) return 1;
    return 2;
  };
  IsotropyModule m12{"m12", {}}, m13{"m13", {}}, m23{"m23", {}};
  for (int pos = 0, a = 1; a <= n; ++a) {
    for (int b = a + 1; b <= n; ++b, ++pos) {
      int ba = block(a), bb = block(b);
      if (ba == bb)
        config.h_indices.push_back(pos);
      else if (ba == 0 && bb == 1)
        m12.positions.push_back(pos);
      else if (ba == 0 && bb == 2)
        m13.positions.push_back(pos);
      else
        m23.positions.push_back(pos);
    }
  }
  config.modules = {m12, m13, m23};
  return config;
}

SpaceConfig build_stiefel_v2(const std::vector<int>& params) {
  require_params(SpaceFamily::stiefel_v2, params, 1);
  const int n = params[0];
  if (n < 4) throw InvalidParametersError("stiefel-v2 requires n >= 4");
  SpaceConfig config;
  config.family = SpaceFamily::stiefel_v2;
  config.params = params;
  config.ambient = build_so_basis(n);
  IsotropyModule m0{"m0", {}}, m1{"m1", {}}, m2{"m2", {}};
  for (int pos = 0, a = 1; a <= n; ++a) {
    for (int b = a + 1; b <= n; ++b, ++pos) {
      if (a >= 3)
        config.h_indices.push_back(pos);
      else if (a == 1 && b == 2)
        m0.positions.push_back(pos);
      else if (a == 1)
        m1.positions.push_back(pos);
      else
        m2.positions.push_back(pos);
    }
  }
  config.modules = {m0, m1, m2};
  return config;
}

SpaceConfig build_stiefel_v1k(const std::vector<int>& params) {
  require_params(SpaceFamily::stiefel_v1k, params, 2);
  const int n2 = params[0], n3 = params[1];
  if (n2 < 2 || n3 < 2) {
    throw InvalidParametersError("stiefel-v1k requires n2 >= 2 and n3 >= 2");
  }
  const int n = 1 + n2 + n3;
  SpaceConfig config;
  config.family = SpaceFamily::stiefel_v1k;
  config.params = params;
  config.ambient = build_so_basis(n);
  std::ostringstream fiber_label;
  fiber_label << "so(" << n2 << ")";
  IsotropyModule fiber{fiber_label.str(), {}}, m12{"m12", {}}, m13{"m13", {}},
      m23{"m23", {}};
  auto block = [&](int idx) {
    if (idx == 1) return 0;
    if (idx <= 1 + n2) return 1;
    return 2;
  };
  for (int pos = 0, a = 1; a <= n; ++a) {
    for (int b = a + 1; b <= n; ++b, ++pos) {
      int ba = block(a), bb = block(b);
      if (ba == 2 && bb == 2)
        config.h_indices.push_back(pos);
      else if (ba == 1 && bb == 1)
        fiber.positions.push_back(pos);
      else if (ba == 0 && bb == 1)
        m12.positions.push_back(pos);
      else if (ba == 0 && bb == 2)
        m13.positions.push_back(pos);
      else
        m23.positions.push_back(pos);
    }
  }
  config.modules = {fiber, m12, m13, m23};
  return config;
}

SpaceConfig build_wallach_u3(const std::vector<int>& params) {
  if (!params.empty()) require_params(SpaceFamily::wallach_u3, params, 0);
  SpaceConfig config;
  config.family = SpaceFamily::wallach_u3;
  config.ambient = build_u_basis(3);
  for (int a = 1; a <= 3; ++a) {
    std::ostringstream lab;
    lab << "f(" << a << "," << a << ")";
    config.h_indices.push_back(config.ambient.index_of(lab.str()));
  }
  for (int i = 1; i <= 3; ++i) {
    for (int j = i + 1; j <= 3; ++j) {
      std::ostringstream lab, e, f;
      lab << "m" << i << j;
      e << "e(" << i << "," << j << ")";
      f << "f(" << i << "," << j << ")";
      config.modules.push_back(
          {lab.str(),
           {config.ambient.index_of(e.str()), config.ambient.index_of(f.str())}});
    }
  }
  return config;
}

SpaceConfig build_wallach_sp3(const std::vector<int>& params) {
  if (!params.empty()) require_params(SpaceFamily::wallach_sp3, params, 0);
  SpaceConfig config;
  config.family = SpaceFamily::wallach_sp3;
  config.ambient = build_sp_basis(3);
  for (int a = 1; a <= 3; ++a) {
    for (const char* kind : {"f", "g", "h"}) {
      std::ostringstream lab;
      lab << kind << "(" << a << "," << a << ")";
      config.h_indices.push_back(config.ambient.index_of(lab.str()));
    }
  }
  for (int i = 1; i <= 3; ++i) {
    for (int j = i + 1; j <= 3; ++j) {
      std::ostringstream lab;
      lab << "m" << i << j;
      IsotropyModule mod{lab.str(), {}};
      for (const char* kind : {"e", "f", "g", "h"}) {
        std::ostringstream el;
        el << kind << "(" << i << "," << j << ")";
        mod.positions.push_back(config.ambient.index_of(el.str()));
      }
      config.modules.push_back(mod);
    }
  }
  return config;
}

SpaceConfig build_sphere_u(const std::vector<int>& params) {
  require_params(SpaceFamily::sphere_u, params, 1);
  const int n = params[0];
  if (n < 1) throw InvalidParametersError("sphere-u requires n >= 1");
  SpaceConfig config;
  config.family = SpaceFamily::sphere_u;
  config.params = params;
  config.ambient = build_u_basis(n + 1);
  IsotropyModule m1{"m1", {config.ambient.index_of("f(1,1)")}};
  IsotropyModule m2{"m2", {}};
  for (int b = 2; b <= n + 1; ++b) {
    std::ostringstream e, f;
    e << "e(1," << b << ")";
    f << "f(1," << b << ")";
    m2.positions.push_back(config.ambient.index_of(e.str()));
    m2.positions.push_back(config.ambient.index_of(f.str()));
  }
  for (int i = 0; i < config.ambient.dim(); ++i) {
    const std::string& lab = config.ambient.labels[i];
    if (lab != "f(1,1)" && lab.find("(1,") == std::string::npos) {
      config.h_indices.push_back(i);
    }
  }
  config.modules = {m1, m2};
  return config;
}

SpaceConfig build_sphere_sp(const std::vector<int>& params) {
  require_params(SpaceFamily::sphere_sp, params, 1);
  const int n = params[0];
  if (n < 1) throw InvalidParametersError("sphere-sp requires n >= 1");
  SpaceConfig config;
  config.family = SpaceFamily::sphere_sp;
  config.params = params;
  config.ambient = build_sp_basis(n + 1);
  IsotropyModule m1{"m1",
                    {config.ambient.index_of("f(1,1)"),
                     config.ambient.index_of("g(1,1)"),
                     config.ambient.index_of("h(1,1)")}};
  IsotropyModule m2{"m2", {}};
  for (int b = 2; b <= n + 1; ++b) {
    for (const char* kind : {"e", "f", "g", "h"}) {
      std::ostringstream el;
      el << kind << "(1," << b << ")";
      m2.positions.push_back(config.ambient.index_of(el.str()));
    }
  }
  for (int i = 0; i < config.ambient.dim(); ++i) {
    const std::string& lab = config.ambient.labels[i];
    if (lab.find("(1,") == std::string::npos) config.h_indices.push_back(i);
  }
  config.modules = {m1, m2};
  return config;
}

}  // namespace

SpaceConfig build_space(SpaceFamily family, const std::vector<int>& params) {
  SpaceConfig config;
  switch (family) {
    case SpaceFamily::wallach_so:
      config = build_wallach_so(params);
      break;
    case SpaceFamily::stiefel_v2:
      config = build_stiefel_v2(params);
      break;
    case SpaceFamily::stiefel_v1k:
      config = build_stiefel_v1k(params);
      break;
    case SpaceFamily::wallach_u3:
      config = build_wallach_u3(params);
      break;
    case SpaceFamily::wallach_sp3:
      config = build_wallach_sp3(params);
      break;
    case SpaceFamily::sphere_u:
      config = build_sphere_u(params);
      break;
    case SpaceFamily::sphere_sp:
      config = build_sphere_sp(params);
      break;
  }
  finalize_config(config);
  SpaceValidation validation = validate_space(config);
  if (!validation.all_pass()) {
    std::ostringstream os;
    os << "assembled configuration " << config.name()
       << " violates invariants:";
    for (const CheckItem& c : validation.checks) {
      if (!c.pass) os << " [" << c.name << " residual " << c.residual << "]";
    }
    throw InternalConsistencyError(os.str());
  }
  return config;
}

SpaceConfig build_space_from_json(const nlohmann::json& spec) {
  if (!spec.contains("family")) {
    throw InvalidParametersError("space spec requires a \"family\" field");
  }
  SpaceFamily family = family_from_string(spec["family"].get<std::string>());
  std::vector<int> params;
  if (spec.contains("params")) {
    params = spec["params"].get<std::vector<int>>();
  }
  return build_space(family, params);
}

bool SpaceValidation::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckItem& c) { return c.pass; });
}

SpaceValidation validate_space(const SpaceConfig& config) {
  SpaceValidation out;
  const LieBasis& g = config.ambient;
  std::set<int> h_set(config.h_indices.begin(), config.h_indices.end());

  // Span: h and the modules partition the ambient positions.
  {
    std::set<int> all(config.h_indices.begin(), config.h_indices.end());
    size_t count = config.h_indices.size();
    for (const IsotropyModule& mod : config.modules) {
      all.insert(mod.positions.begin(), mod.positions.end());
      count += mod.positions.size();
    }
    bool pass = (count == static_cast<size_t>(g.dim()) &&
                 static_cast<int>(all.size()) == g.dim());
    out.checks.push_back({"h-plus-m-spans-g", pass ? 0.0 : 1.0, pass});
  }

  // h is a subalgebra: [h, h] has no component outside h.
  {
    double res = 0.0;
    for (int i : config.h_indices)
      for (int j : config.h_indices)
        for (const StructTerm& t : g.structure[i][j])
          if (!h_set.count(t.k)) res = std::max(res, std::abs(t.c));
    out.checks.push_back({"h-subalgebra", res, res < kTol});
  }

  // m is B-orthogonal to h and the modules are pairwise B-orthogonal.
  {
    double res = 0.0;
    for (int v : config.m_positions)
      for (int w : config.h_indices)
        res = std::max(res, std::abs(bform(g.elements[v], g.elements[w])));
    out.checks.push_back({"m-perp-h", res, res < kTol});
    double res2 = 0.0;
    for (int i = 0; i < config.module_count(); ++i)
      for (int j = i + 1; j < config.module_count(); ++j)
        for (int v : config.modules[i].positions)
          for (int w : config.modules[j].positions)
            res2 = std::max(res2,
                            std::abs(bform(g.elements[v], g.elements[w])));
    out.checks.push_back({"modules-pairwise-orthogonal", res2, res2 < kTol});
  }

  // Reductivity: [h, m_i] stays in m_i.
  {
    double res = 0.0;
    for (const IsotropyModule& mod : config.modules) {
      std::set<int> mod_set(mod.positions.begin(), mod.positions.end());
      for (int z : config.h_indices)
        for (int v : mod.positions)
          for (const StructTerm& t : g.structure[z][v])
            if (!mod_set.count(t.k)) res = std::max(res, std::abs(t.c));
    }
    out.checks.push_back({"modules-ad(h)-invariant", res, res < kTol});
  }

  return out;
}

namespace {

// Dimension of the space of symmetric matrices commuting with every ad(h)
// action matrix on the module.  1 means irreducible.
int symmetric_commutant_dimension(const SpaceConfig& config,
                                  const IsotropyModule& mod) {
  const LieBasis& g = config.ambient;
  const int d = static_cast<int>(mod.positions.size());
  if (d == 1) return 1;
  std::vector<Eigen::MatrixXd> actions;
  for (int z : config.h_indices) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(d, d);
    for (int s = 0; s < d; ++s) {
      for (const StructTerm& t : g.structure[z][mod.positions[s]]) {
        for (int r = 0; r < d; ++r) {
          if (mod.positions[r] == t.k) a(r, s) = t.c;
        }
      }
    }
    actions.push_back(a);
  }
  // Unknowns: entries s_{uv}, u <= v, of a symmetric matrix S with
  // A S = S A for every action matrix A.
  const int unknowns = d * (d + 1) / 2;
  auto flat = [&](int u, int v) {  // index of s_{min,max}
    int a = std::min(u, v), b = std::max(u, v);
    return a * d - a * (a - 1) / 2 + (b - a);
  };
  std::vector<Eigen::RowVectorXd> rows;
  for (const Eigen::MatrixXd& a : actions) {
    for (int r = 0; r < d; ++r) {
      for (int c = 0; c < d; ++c) {
        Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(unknowns);
        // (A S - S A)_{rc} = sum_k A_{rk} S_{kc} - S_{rk} A_{kc}
        for (int k = 0; k < d; ++k) {
          row(flat(k, c)) += a(r, k);
          row(flat(r, k)) -= a(k, c);
        }
        if (row.cwiseAbs().maxCoeff() > 0) rows.push_back(row);
      }
    }
  }
  if (rows.empty()) return unknowns;  // trivial action
  Eigen::MatrixXd system(static_cast<int>(rows.size()), unknowns);
  for (size_t i = 0; i < rows.size(); ++i) system.row(static_cast<int>(i)) = rows[i];
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(system);
  int rank = 0;
  double thresh = 1e-8 * svd.singularValues()(0);
  for (int i = 0; i < svd.singularValues().size(); ++i) {
    if (svd.singularValues()(i) > thresh) ++rank;
  }
  return unknowns - rank;
}

}  // namespace

bool WallachReport::relations_hold() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckItem& c) { return c.pass; });
}

bool WallachReport::all_irreducible() const {
  return std::all_of(irreducible.begin(), irreducible.end(),
                     [](const auto& p) { return p.second; });
}

bool WallachReport::is_generalized_wallach() const {
  return relations_hold() && all_irreducible();
}

WallachReport validate_wallach(const SpaceConfig& config) {
  if (config.module_count() != 3) {
    throw NotApplicableError(
        "three-module bracket relations require exactly three modules");
  }
  const LieBasis& g = config.ambient;
  std::set<int> h_set(config.h_indices.begin(), config.h_indices.end());
  WallachReport report;

  auto pair_residual = [&](int i, int j, const std::set<int>& allowed) {
    double res = 0.0;
    for (int p : config.modules[i].positions)
      for (int q : config.modules[j].positions)
        for (const StructTerm& t : g.structure[p][q])
          if (!allowed.count(t.k)) res = std::max(res, std::abs(t.c));
    return res;
  };

  for (int i = 0; i < 3; ++i) {
    double res = pair_residual(i, i, h_set);
    report.checks.push_back({"[" + config.modules[i].label + "," +
                                 config.modules[i].label + "] in h",
                             res, res < kTol});
  }
  // Complementary module of each distinct pair: {0,1}->2, {0,2}->1, {1,2}->0.
  for (auto [i, j] : {std::pair{0, 1}, {0, 2}, {1, 2}}) {
    int k = 3 - i - j;
    std::set<int> allowed(config.modules[k].positions.begin(),
                          config.modules[k].positions.end());
    double res = pair_residual(i, j, allowed);
    report.checks.push_back({"[" + config.modules[i].label + "," +
                                 config.modules[j].label + "] in " +
                                 config.modules[k].label,
                             res, res < kTol});
  }
  for (const IsotropyModule& mod : config.modules) {
    int dim = symmetric_commutant_dimension(config, mod);
    report.irreducible.push_back({mod.label, dim == 1});
  }
  return report;
}

Eigen::VectorXd project_m(const SpaceConfig& config, const MatrixElement& x) {
  Eigen::VectorXd ambient = config.ambient.project(x);
  Eigen::VectorXd out(config.dim_m());
  for (int i = 0; i < config.dim_m(); ++i) {
    out[i] = ambient[config.m_positions[i]];
  }
  return out;
}

MetricClassPartition MetricClassPartition::singletons(int module_count) {
  MetricClassPartition p;
  for (int i = 0; i < module_count; ++i) p.classes.push_back({i});
  return p;
}

int MetricClassPartition::class_of(int module_index) const {
  for (size_t c = 0; c < classes.size(); ++c) {
    if (std::find(classes[c].begin(), classes[c].end(), module_index) !=
        classes[c].end()) {
      return static_cast<int>(c);
    }
  }
  throw NotFoundError("module not covered by partition");
}

bool MetricClassPartition::covers(int module_count) const {
  std::set<int> seen;
  size_t total = 0;
  for (const auto& c : classes) {
    if (c.empty()) return false;
    seen.insert(c.begin(), c.end());
    total += c.size();
  }
  if (total != seen.size()) return false;  // overlap
  if (static_cast<int>(seen.size()) != module_count) return false;
  return seen.empty() || (*seen.begin() >= 0 &&
                          *seen.rbegin() < module_count);
}

std::string MetricClassPartition::render(const SpaceConfig& config) const {
  std::ostringstream os;
  for (size_t c = 0; c < classes.size(); ++c) {
    if (c) os << "|";
    for (size_t i = 0; i < classes[c].size(); ++i) {
      if (i) os << ",";
      os << config.modules[classes[c][i]].label;
    }
  }
  return os.str();
}

MetricClassPartition parse_partition(const SpaceConfig& config,
                                     const std::string& text) {
  MetricClassPartition partition;
  std::stringstream ss(text);
  std::string cls;
  while (std::getline(ss, cls, '|')) {
    std::vector<int> members;
    std::stringstream cs(cls);
    std::string label;
    while (std::getline(cs, label, ',')) {
      if (!label.empty()) members.push_back(config.module_index(label));
    }
    if (!members.empty()) partition.classes.push_back(members);
  }
  if (!partition.covers(config.module_count())) {
    throw InvalidParametersError("partition \"" + text +
                                 "\" does not partition the modules of " +
                                 config.name());
  }
  return partition;
}

std::vector<MetricSpec> metric_presets(const SpaceConfig& config) {
  std::vector<MetricSpec> out;
  if (config.family == SpaceFamily::stiefel_v2) {
    const long long n = config.params[0];
    MetricSpec m;
    m.name = "einstein-v2";
    double lambda = static_cast<double>(n - 1) / (2.0 * (n - 2));
    m.lambdas = {1.0, lambda, lambda};
    m.exact = {{1, 1}, {n - 1, 2 * (n - 2)}, {n - 1, 2 * (n - 2)}};
    for (auto& [num, den] : m.exact) {
      long long g = std::gcd(num, den);
      num /= g;
      den /= g;
    }
    out.push_back(m);
  } else if (config.family == SpaceFamily::stiefel_v1k &&
             config.params[0] == 3) {
    const long long n = 1 + config.params[0] + config.params[1];
    const long long disc = n * n - 7 * n + 7;
    const double sq = std::sqrt(static_cast<double>(disc));
    long long isq = std::llround(sq);
    bool perfect = (isq * isq == disc);
    for (int sign : {+1, -1}) {
      MetricSpec m;
      m.name = sign > 0 ? "jensen-plus" : "jensen-minus";
      double l2 = (static_cast<double>(n) - 2 + sign * sq) /
                  (static_cast<double>(n) - 1);
      m.lambdas = {l2, l2, 1.0, 1.0};
      if (perfect) {
        long long num = n - 2 + sign * isq, den = n - 1;
        long long g = std::gcd(num, den);
        m.exact = {{num / g, den / g}, {num / g, den / g}, {1, 1}, {1, 1}};
      }
      out.push_back(m);
    }
  }
  return out;
}

MetricClassPartition partition_for_metric(const SpaceConfig& config,
                                          const MetricSpec& metric) {
  if (static_cast<int>(metric.lambdas.size()) != config.module_count()) {
    throw InvalidMetricError("metric has wrong number of parameters for " +
                             config.name());
  }
  MetricClassPartition partition;
  std::vector<bool> used(metric.lambdas.size(), false);
  for (size_t i = 0; i < metric.lambdas.size(); ++i) {
    if (used[i]) continue;
    std::vector<int> cls = {static_cast<int>(i)};
    used[i] = true;
    for (size_t j = i + 1; j < metric.lambdas.size(); ++j) {
      if (!used[j] &&
          std::abs(metric.lambdas[j] - metric.lambdas[i]) < 1e-12) {
        cls.push_back(static_cast<int>(j));
        used[j] = true;
      }
    }
    partition.classes.push_back(cls);
  }
  return partition;
}

}  // namespace equigeo
