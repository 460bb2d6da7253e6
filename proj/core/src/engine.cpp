#include "equigeo/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace equigeo {

Eigen::VectorXd QuadraticSystem::residual(const Eigen::VectorXd& x) const {
  if (x.size() != num_variables()) {
    throw IncompatibleElementsError("coefficient vector has wrong length");
  }
  Eigen::VectorXd r(num_equations());
  for (int e = 0; e < num_equations(); ++e) {
    double v = 0.0;
    for (const BilinearTerm& t : equations[e].terms) {
      v += static_cast<double>(t.coeff) * x[t.p] * x[t.q];
    }
    r[e] = v;
  }
  return r;
}

Eigen::MatrixXd QuadraticSystem::jacobian(const Eigen::VectorXd& x) const {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(num_equations(), num_variables());
  for (int e = 0; e < num_equations(); ++e) {
    for (const BilinearTerm& t : equations[e].terms) {
      j(e, t.p) += static_cast<double>(t.coeff) * x[t.q];
      j(e, t.q) += static_cast<double>(t.coeff) * x[t.p];
    }
  }
  return j;
}

std::string QuadraticSystem::render_equation(const BilinearEquation& eq) const {
  std::ostringstream os;
  bool first = true;
  for (const BilinearTerm& t : eq.terms) {
    long long c = t.coeff;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    long long a = std::llabs(c);
    if (a != 1) os << a << "*";
    os << variables[t.p] << "*" << variables[t.q];
    first = false;
  }
  os << " = 0";
  return os.str();
}

std::vector<std::string> QuadraticSystem::render() const {
  std::vector<std::string> out;
  out.reserve(equations.size());
  for (const BilinearEquation& eq : equations) out.push_back(render_equation(eq));
  return out;
}

nlohmann::json QuadraticSystem::to_json() const {
  nlohmann::json j;
  j["space"] = space;
  j["variables"] = variables;
  j["modules"] = module_of;
  j["partition"] = partition;
  nlohmann::json eqs = nlohmann::json::array();
  for (const BilinearEquation& eq : equations) {
    nlohmann::json je;
    je["source_pair"] = {eq.source_pair.first, eq.source_pair.second};
    je["target"] = variables[eq.target];
    nlohmann::json terms = nlohmann::json::array();
    for (const BilinearTerm& t : eq.terms) {
      terms.push_back({{"p", variables[t.p]},
                       {"q", variables[t.q]},
                       {"coeff", t.coeff}});
    }
    je["terms"] = terms;
    je["render"] = render_equation(eq);
    eqs.push_back(je);
  }
  j["equations"] = eqs;
  nlohmann::json dropped = nlohmann::json::array();
  for (const auto& [a, b] : dropped_pairs) dropped.push_back({a, b});
  j["dropped_pairs"] = dropped;
  return j;
}

QuadraticSystem QuadraticSystem::from_json(const nlohmann::json& j) {
  QuadraticSystem sys;
  sys.space = j.at("space").get<std::string>();
  sys.variables = j.at("variables").get<std::vector<std::string>>();
  sys.module_of = j.at("modules").get<std::vector<std::string>>();
  sys.partition = j.at("partition").get<std::vector<std::vector<std::string>>>();
  std::map<std::string, int> index;
  for (int i = 0; i < sys.num_variables(); ++i) index[sys.variables[i]] = i;
  auto var = [&](const std::string& name) {
    auto it = index.find(name);
    if (it == index.end()) throw InvalidInputError("unknown variable " + name);
    return it->second;
  };
  for (const nlohmann::json& je : j.at("equations")) {
    BilinearEquation eq;
    eq.source_pair = {je.at("source_pair")[0].get<std::string>(),
                      je.at("source_pair")[1].get<std::string>()};
    eq.target = var(je.at("target").get<std::string>());
    for (const nlohmann::json& jt : je.at("terms")) {
      eq.terms.push_back({var(jt.at("p").get<std::string>()),
                          var(jt.at("q").get<std::string>()),
                          jt.at("coeff").get<long long>()});
    }
    sys.equations.push_back(eq);
  }
  for (const nlohmann::json& jd : j.at("dropped_pairs")) {
    sys.dropped_pairs.push_back(
        {jd[0].get<std::string>(), jd[1].get<std::string>()});
  }
  return sys;
}

Eigen::VectorXd bracket_m(const SpaceConfig& config, const Eigen::VectorXd& x,
                          const Eigen::VectorXd& y) {
  if (x.size() != config.dim_m() || y.size() != config.dim_m()) {
    throw IncompatibleElementsError(
        "coefficient vectors do not match the configuration");
  }
  const LieBasis& g = config.ambient;
  Eigen::VectorXd out = Eigen::VectorXd::Zero(config.dim_m());
  for (int i = 0; i < config.dim_m(); ++i) {
    if (x[i] == 0.0) continue;
    for (int j = 0; j < config.dim_m(); ++j) {
      if (y[j] == 0.0) continue;
      for (const StructTerm& t :
           g.structure[config.m_positions[i]][config.m_positions[j]]) {
        int mk = config.ambient_to_m[t.k];
        if (mk >= 0) out[mk] += t.c * x[i] * y[j];
      }
    }
  }
  return out;
}

Eigen::VectorXd equigeodesic_residual(const SpaceConfig& config,
                                      const MetricSpec& metric,
                                      const Eigen::VectorXd& x) {
  if (static_cast<int>(metric.lambdas.size()) != config.module_count()) {
    throw InvalidMetricError("metric has wrong number of parameters");
  }
  for (double l : metric.lambdas) {
    if (!(l > 0.0)) throw InvalidMetricError("metric parameters must be positive");
  }
  Eigen::VectorXd scaled(x.size());
  for (int i = 0; i < config.dim_m(); ++i) {
    scaled[i] = metric.lambdas[config.module_of_position(i)] * x[i];
  }
  return bracket_m(config, x, scaled);
}

std::map<std::pair<std::string, std::string>, Eigen::VectorXd> cross_residuals(
    const SpaceConfig& config, const Eigen::VectorXd& x) {
  if (x.size() != config.dim_m()) {
    throw IncompatibleElementsError(
        "coefficient vector does not match the configuration");
  }
  std::map<std::pair<std::string, std::string>, Eigen::VectorXd> out;
  for (int i = 0; i < config.module_count(); ++i) {
    for (int j = i + 1; j < config.module_count(); ++j) {
      Eigen::VectorXd xi = Eigen::VectorXd::Zero(x.size());
      Eigen::VectorXd xj = Eigen::VectorXd::Zero(x.size());
      for (int k = 0; k < config.dim_m(); ++k) {
        int mod = config.module_of_position(k);
        if (mod == i) xi[k] = x[k];
        if (mod == j) xj[k] = x[k];
      }
      out[{config.modules[i].label, config.modules[j].label}] =
          bracket_m(config, xi, xj);
    }
  }
  return out;
}

std::map<std::pair<int, int>, Eigen::VectorXd> class_cross_residuals(
    const SpaceConfig& config, const MetricClassPartition& partition,
    const Eigen::VectorXd& x) {
  if (x.size() != config.dim_m()) {
    throw IncompatibleElementsError(
        "coefficient vector does not match the configuration");
  }
  if (!partition.covers(config.module_count())) {
    throw InvalidParametersError("partition does not cover the modules");
  }
  const int nc = static_cast<int>(partition.classes.size());
  std::vector<Eigen::VectorXd> restricted(
      nc, Eigen::VectorXd::Zero(config.dim_m()));
  for (int k = 0; k < config.dim_m(); ++k) {
    restricted[partition.class_of(config.module_of_position(k))][k] = x[k];
  }
  std::map<std::pair<int, int>, Eigen::VectorXd> out;
  for (int i = 0; i < nc; ++i) {
    for (int j = i + 1; j < nc; ++j) {
      out[{i, j}] = bracket_m(config, restricted[i], restricted[j]);
    }
  }
  return out;
}

namespace {

long long projected_constant(const SpaceConfig& config, int p_m, int q_m,
                             int y_m) {
  const LieBasis& g = config.ambient;
  for (const StructTerm& t :
       g.structure[config.m_positions[p_m]][config.m_positions[q_m]]) {
    if (t.k == config.m_positions[y_m]) {
      long long c = std::llround(t.c);
      if (std::abs(t.c - static_cast<double>(c)) > 1e-9) {
        throw InternalConsistencyError("non-integer structure constant");
      }
      return c;
    }
  }
  return 0;
}

// True when the bilinear map of the module pair vanishes identically after
// projection to m.
bool pair_identically_zero(const SpaceConfig& config, int mi, int mj) {
  for (int p : config.modules[mi].positions) {
    for (int q : config.modules[mj].positions) {
      for (const StructTerm& t : config.ambient.structure[p][q]) {
        if (config.ambient_to_m[t.k] >= 0 && std::abs(t.c) > 1e-12) {
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace

QuadraticSystem generate_system(const SpaceConfig& config,
                                const MetricClassPartition& partition) {
  if (!partition.covers(config.module_count())) {
    throw InvalidParametersError("partition does not cover the modules of " +
                                 config.name());
  }
  QuadraticSystem sys;
  sys.space = config.name();
  sys.variables = config.var_names();
  for (int i = 0; i < config.dim_m(); ++i) {
    sys.module_of.push_back(config.modules[config.module_of_position(i)].label);
  }
  for (const std::vector<int>& cls : partition.classes) {
    std::vector<std::string> labels;
    for (int m : cls) labels.push_back(config.modules[m].label);
    sys.partition.push_back(labels);
  }

  auto class_label = [&](const std::vector<int>& cls) {
    std::string out;
    for (size_t i = 0; i < cls.size(); ++i) {
      if (i) out += ",";
      out += config.modules[cls[i]].label;
    }
    return out;
  };
  auto class_positions = [&](const std::vector<int>& cls) {
    std::vector<int> out;  // m-coordinate indices, in m order
    for (int k = 0; k < config.dim_m(); ++k) {
      int mod = config.module_of_position(k);
      if (std::find(cls.begin(), cls.end(), mod) != cls.end()) out.push_back(k);
    }
    return out;
  };

  std::set<std::vector<BilinearTerm>,
           bool (*)(const std::vector<BilinearTerm>&,
                    const std::vector<BilinearTerm>&)>
      seen(+[](const std::vector<BilinearTerm>& a,
               const std::vector<BilinearTerm>& b) {
        auto key = [](const BilinearTerm& t) {
          return std::tuple(t.p, t.q, t.coeff);
        };
        return std::lexicographical_compare(
            a.begin(), a.end(), b.begin(), b.end(),
            [&](const BilinearTerm& x, const BilinearTerm& y) {
              return key(x) < key(y);
            });
      });

  const int nc = static_cast<int>(partition.classes.size());
  for (int ci = 0; ci < nc; ++ci) {
    for (int cj = ci + 1; cj < nc; ++cj) {
      std::vector<int> P = class_positions(partition.classes[ci]);
      std::vector<int> Q = class_positions(partition.classes[cj]);
      for (int y = 0; y < config.dim_m(); ++y) {
        std::map<std::pair<int, int>, long long> acc;
        for (int p : P) {
          for (int q : Q) {
            long long c = projected_constant(config, p, q, y);
            if (!c) continue;
            int a = std::min(p, q), b = std::max(p, q);
            acc[{a, b}] += (a == p) ? c : -c;
          }
        }
        std::vector<BilinearTerm> terms;
        for (const auto& [pq, c] : acc) {
          if (c) terms.push_back({pq.first, pq.second, c});
        }
        if (terms.empty()) continue;
        long long g = 0;
        for (const BilinearTerm& t : terms) g = std::gcd(g, std::llabs(t.coeff));
        for (BilinearTerm& t : terms) t.coeff /= g;
        if (terms.front().coeff < 0) {
          for (BilinearTerm& t : terms) t.coeff = -t.coeff;
        }
        if (!seen.insert(terms).second) continue;
        BilinearEquation eq;
        eq.terms = std::move(terms);
        eq.source_pair = {class_label(partition.classes[ci]),
                          class_label(partition.classes[cj])};
        eq.target = y;
        sys.equations.push_back(std::move(eq));
      }
      // Record cross-class module pairs whose bilinear map vanishes
      // identically and hence contributed nothing.
      for (int mi : partition.classes[ci]) {
        for (int mj : partition.classes[cj]) {
          int a = std::min(mi, mj), b = std::max(mi, mj);
          if (pair_identically_zero(config, a, b)) {
            sys.dropped_pairs.push_back(
                {config.modules[a].label, config.modules[b].label});
          }
        }
      }
    }
  }
  std::sort(sys.dropped_pairs.begin(), sys.dropped_pairs.end());
  return sys;
}

std::string to_string(Classification c) {
  switch (c) {
    case Classification::trivial:
      return "trivial";
    case Classification::structural_nontrivial:
      return "structural-nontrivial";
    case Classification::algebraic:
      return "algebraic";
    case Classification::not_equigeodesic:
      return "not-equigeodesic";
  }
  return "?";
}

Classification classify_vector(const SpaceConfig& config,
                               const MetricClassPartition& partition,
                               const Eigen::VectorXd& x,
                               double support_threshold) {
  if (x.size() != config.dim_m()) {
    throw IncompatibleElementsError(
        "coefficient vector does not match the configuration");
  }
  double norm = x.norm();
  if (norm == 0.0) throw InvalidInputError("cannot classify the zero vector");
  if (!partition.covers(config.module_count())) {
    throw InvalidParametersError("partition does not cover the modules");
  }

  std::vector<bool> supported(config.module_count(), false);
  Eigen::VectorXd module_norm2 = Eigen::VectorXd::Zero(config.module_count());
  for (int k = 0; k < config.dim_m(); ++k) {
    module_norm2[config.module_of_position(k)] += x[k] * x[k];
  }
  int support_count = 0;
  for (int m = 0; m < config.module_count(); ++m) {
    supported[m] = std::sqrt(module_norm2[m]) > support_threshold * norm;
    if (supported[m]) ++support_count;
  }
  if (support_count <= 1) return Classification::trivial;

  bool structural = true;
  for (int i = 0; i < config.module_count() && structural; ++i) {
    for (int j = i + 1; j < config.module_count(); ++j) {
      if (!supported[i] || !supported[j]) continue;
      if (partition.class_of(i) == partition.class_of(j)) continue;
      if (!pair_identically_zero(config, i, j)) {
        structural = false;
        break;
      }
    }
  }
  if (structural) return Classification::structural_nontrivial;
  double residual = 0.0;
  for (const auto& [pair, r] : class_cross_residuals(config, partition, x)) {
    residual = std::max(residual, r.cwiseAbs().maxCoeff());
  }
  if (residual <= 1e-10 * norm * norm) return Classification::algebraic;
  return Classification::not_equigeodesic;
}

Classification classify_vector(const SpaceConfig& config,
                               const Eigen::VectorXd& x,
                               double support_threshold) {
  return classify_vector(config,
                         MetricClassPartition::singletons(config.module_count()),
                         x, support_threshold);
}

GeodesicCheck geodesic_vector_check(const SpaceConfig& config,
                                    const MetricSpec& metric,
                                    const Eigen::VectorXd& x) {
  if (x.size() != config.dim_m()) {
    throw IncompatibleElementsError(
        "coefficient vector does not match the configuration");
  }
  double norm = x.norm();
  if (norm == 0.0) throw InvalidInputError("cannot check the zero vector");
  if (static_cast<int>(metric.lambdas.size()) != config.module_count()) {
    throw InvalidMetricError("metric has wrong number of parameters");
  }
  Eigen::VectorXd scaled(x.size());
  for (int i = 0; i < config.dim_m(); ++i) {
    scaled[i] = metric.lambdas[config.module_of_position(i)] * x[i];
  }
  GeodesicCheck out;
  for (int z = 0; z < config.dim_m(); ++z) {
    Eigen::VectorXd ez = Eigen::VectorXd::Zero(x.size());
    ez[z] = 1.0;
    Eigen::VectorXd w = bracket_m(config, x, ez);
    double v = 0.0;
    for (int k = 0; k < config.dim_m(); ++k) {
      v += scaled[k] * w[k] * config.ambient.gram[config.m_positions[k]];
    }
    out.max_violation = std::max(out.max_violation, std::abs(v));
  }
  out.pass = out.max_violation <= 1e-10 * norm * norm;
  return out;
}

}  // namespace equigeo
