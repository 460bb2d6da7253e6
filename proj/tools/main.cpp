// Command-line interface for the equigeodesic toolkit: space inspection,
// invariant checks, quadratic-system emission, curated-family verification
// and numeric solution search.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "equigeo/catalog.hpp"
#include "equigeo/engine.hpp"
#include "equigeo/homspace.hpp"
#include "equigeo/solver.hpp"

namespace {

using namespace equigeo;

struct SpaceOpts {
  std::string family;
  std::string params_csv;
  int n = -1;
  std::string space_file;
};

void add_space_options(CLI::App* cmd, SpaceOpts& opts, bool positional) {
  if (positional) {
    cmd->add_option("space", opts.family, "space family name");
  } else {
    cmd->add_option("--family", opts.family, "space family name");
  }
  cmd->add_option("--params", opts.params_csv,
                  "comma-separated integer parameters, e.g. 1,3,2");
  cmd->add_option("--n", opts.n, "single integer parameter shorthand");
  cmd->add_option("--space-file", opts.space_file,
                  "JSON space spec file {\"family\":..., \"params\":[...]}");
}

std::vector<int> parse_params(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(std::stoi(tok));
  }
  return out;
}

SpaceConfig resolve_space(const SpaceOpts& opts) {
  if (!opts.space_file.empty()) {
    std::ifstream in(opts.space_file);
    if (!in) throw InvalidInputError("cannot open " + opts.space_file);
    nlohmann::json j;
    in >> j;
    return build_space_from_json(j);
  }
  if (opts.family.empty()) {
    throw InvalidParametersError("no space family given");
  }
  std::vector<int> params;
  if (!opts.params_csv.empty()) {
    params = parse_params(opts.params_csv);
  } else if (opts.n >= 0) {
    params = {opts.n};
  }
  return build_space(family_from_string(opts.family), params);
}

void emit(const std::string& text, const std::string& output) {
  if (output.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
    return;
  }
  std::string path = output;
  if (path.front() != '/') {
    if (const char* dir = std::getenv("EQUIGEO_OUTPUT_DIR")) {
      path = std::string(dir) + "/" + path;
    }
  }
  std::ofstream out(path);
  if (!out) throw InvalidInputError("cannot write " + path);
  out << text;
  if (!text.empty() && text.back() != '\n') out << "\n";
}

std::string metric_catalog_key(const std::string& metric) {
  if (metric == "jensen" || metric == "jensen-plus" || metric == "jensen-minus")
    return "jensen";
  if (metric == "einstein" || metric == "einstein-v2") return "einstein";
  return metric;
}

MetricSpec find_preset(const SpaceConfig& config, const std::string& name) {
  for (const MetricSpec& m : metric_presets(config)) {
    if (m.name == name) return m;
  }
  throw NotFoundError("no metric preset named " + name + " for " +
                      config.name());
}

nlohmann::json space_json(const SpaceConfig& config) {
  nlohmann::json j;
  j["name"] = config.name();
  j["family"] = to_string(config.family);
  j["params"] = config.params;
  j["ambient"] = {{"algebra", to_string(config.ambient.tag)},
                  {"n", config.ambient.n},
                  {"dim", config.ambient.dim()}};
  j["dim_h"] = config.h_indices.size();
  j["dim_m"] = config.dim_m();
  nlohmann::json mods = nlohmann::json::array();
  std::vector<std::string> vars = config.var_names();
  for (const IsotropyModule& mod : config.modules) {
    nlohmann::json jm;
    jm["label"] = mod.label;
    jm["dim"] = mod.positions.size();
    std::vector<std::string> coords;
    for (int pos : mod.positions) {
      coords.push_back(vars[config.ambient_to_m[pos]]);
    }
    jm["coordinates"] = coords;
    mods.push_back(jm);
  }
  j["modules"] = mods;
  return j;
}

int cmd_spaces(const SpaceOpts& opts, const std::string& format,
               const std::string& output) {
  if (opts.family.empty() && opts.space_file.empty()) {
    struct Row {
      const char* name;
      const char* params;
      const char* modules;
    };
    const Row rows[] = {
        {"wallach-so", "n1,n2,n3 (each >= 1)", "m12, m13, m23"},
        {"stiefel-v2", "n (>= 4)", "m0, m1, m2"},
        {"stiefel-v1k", "n2,n3 (each >= 2)", "so(n2), m12, m13, m23"},
        {"wallach-u3", "(none)", "m12, m13, m23"},
        {"wallach-sp3", "(none)", "m12, m13, m23"},
        {"sphere-u", "n (>= 1)", "m1, m2"},
        {"sphere-sp", "n (>= 1)", "m1, m2"},
    };
    std::ostringstream os;
    if (format == "json") {
      nlohmann::json j = nlohmann::json::array();
      for (const Row& r : rows) {
        j.push_back({{"family", r.name},
                     {"params", r.params},
                     {"modules", r.modules}});
      }
      os << j.dump(2);
    } else if (format == "csv") {
      os << "family,params,modules\n";
      for (const Row& r : rows) {
        os << r.name << ",\"" << r.params << "\",\"" << r.modules << "\"\n";
      }
    } else {
      for (const Row& r : rows) {
        os << r.name << "  params: " << r.params << "  modules: " << r.modules
           << "\n";
      }
    }
    emit(os.str(), output);
    return 0;
  }
  SpaceConfig config = resolve_space(opts);
  std::ostringstream os;
  if (format == "json") {
    os << space_json(config).dump(2);
  } else if (format == "csv") {
    os << "module,dim\n";
    for (const IsotropyModule& mod : config.modules) {
      os << mod.label << "," << mod.positions.size() << "\n";
    }
  } else {
    os << config.name() << ": ambient " << to_string(config.ambient.tag) << "("
       << config.ambient.n << ") dim " << config.ambient.dim() << ", dim h = "
       << config.h_indices.size() << ", dim m = " << config.dim_m() << "\n";
    for (const IsotropyModule& mod : config.modules) {
      os << "  " << mod.label << " (dim " << mod.positions.size() << ")\n";
    }
  }
  emit(os.str(), output);
  return 0;
}

int cmd_check(const SpaceOpts& opts, const std::string& format,
              const std::string& output) {
  SpaceConfig config = resolve_space(opts);
  SpaceValidation validation = validate_space(config);
  nlohmann::json j;
  j["space"] = config.name();
  nlohmann::json checks = nlohmann::json::array();
  for (const CheckItem& c : validation.checks) {
    checks.push_back(
        {{"name", c.name}, {"residual", c.residual}, {"pass", c.pass}});
  }
  j["checks"] = checks;
  bool three_module = (config.module_count() == 3);
  if (three_module) {
    WallachReport report = validate_wallach(config);
    nlohmann::json w;
    nlohmann::json rel = nlohmann::json::array();
    for (const CheckItem& c : report.checks) {
      rel.push_back(
          {{"name", c.name}, {"residual", c.residual}, {"pass", c.pass}});
    }
    w["relations"] = rel;
    nlohmann::json irr = nlohmann::json::object();
    for (const auto& [label, ok] : report.irreducible) irr[label] = ok;
    w["irreducible"] = irr;
    w["is_generalized_wallach"] = report.is_generalized_wallach();
    j["wallach"] = w;
  }
  j["pass"] = validation.all_pass();

  std::ostringstream os;
  if (format == "json") {
    os << j.dump(2);
  } else {
    os << config.name() << "\n";
    for (const CheckItem& c : validation.checks) {
      os << "  " << (c.pass ? "PASS" : "FAIL") << "  " << c.name
         << "  (residual " << c.residual << ")\n";
    }
    if (three_module) {
      for (const auto& jc : j["wallach"]["relations"]) {
        os << "  " << (jc["pass"].get<bool>() ? "PASS" : "FAIL") << "  "
           << jc["name"].get<std::string>() << "  (residual "
           << jc["residual"].get<double>() << ")\n";
      }
      for (const auto& [label, ok] : j["wallach"]["irreducible"].items()) {
        os << "  " << label << " irreducible: " << (ok.get<bool>() ? "yes" : "no")
           << "\n";
      }
      os << "  generalized Wallach: "
         << (j["wallach"]["is_generalized_wallach"].get<bool>() ? "yes" : "no")
         << "\n";
    }
    os << (validation.all_pass() ? "pass" : "fail") << "\n";
  }
  emit(os.str(), output);
  return validation.all_pass() ? 0 : 1;
}

MetricClassPartition choose_partition(const SpaceConfig& config,
                                      const std::string& partition_text,
                                      const std::string& metric) {
  if (!partition_text.empty()) return parse_partition(config, partition_text);
  if (!metric.empty() && metric != "generic") {
    return partition_for_metric(config, find_preset(config, metric));
  }
  return MetricClassPartition::singletons(config.module_count());
}

int cmd_gen_system(const SpaceOpts& opts, const std::string& partition_text,
                   const std::string& metric, const std::string& format,
                   const std::string& output) {
  SpaceConfig config = resolve_space(opts);
  MetricClassPartition partition =
      choose_partition(config, partition_text, metric);
  QuadraticSystem system = generate_system(config, partition);
  std::ostringstream os;
  if (format == "json") {
    os << system.to_json().dump(2);
  } else if (format == "csv") {
    os << "index,target,source_pair,equation\n";
    int i = 0;
    for (const BilinearEquation& eq : system.equations) {
      os << i++ << "," << system.variables[eq.target] << ",\""
         << eq.source_pair.first << " x " << eq.source_pair.second << "\",\""
         << system.render_equation(eq) << "\"\n";
    }
  } else {
    os << system.space << "  partition " << partition.render(config) << "  ("
       << system.num_equations() << " equations)\n";
    for (const std::string& line : system.render()) os << "  " << line << "\n";
    for (const auto& [a, b] : system.dropped_pairs) {
      os << "  note: [" << a << ", " << b << "] vanishes identically\n";
    }
  }
  emit(os.str(), output);
  return 0;
}

int cmd_verify(const SpaceOpts& opts, const std::string& metric,
               const std::string& family_filter, int samples, double tol,
               unsigned long long seed, const std::string& format,
               const std::string& output) {
  SpaceConfig config = resolve_space(opts);
  std::vector<SolutionFamily> families =
      list_families(config, metric_catalog_key(metric));
  if (!family_filter.empty()) {
    std::vector<SolutionFamily> kept;
    for (const SolutionFamily& f : families) {
      if (f.id == family_filter ||
          f.id.size() > family_filter.size() + 1 &&
              f.id.compare(f.id.size() - family_filter.size() - 1,
                           std::string::npos, "/" + family_filter) == 0) {
        kept.push_back(f);
      }
    }
    if (kept.empty()) {
      throw NotFoundError("no family matches filter " + family_filter);
    }
    families = kept;
  }
  VerificationReport report =
      verify_all(config, families, samples, tol, seed);
  std::ostringstream os;
  if (format == "json") {
    nlohmann::json j;
    j["space"] = config.name();
    j["samples"] = samples;
    j["tol"] = tol;
    j["seed"] = seed;
    nlohmann::json fams = nlohmann::json::array();
    for (const FamilyVerification& f : report.families) {
      fams.push_back({{"id", f.id},
                      {"residual_ok", f.residual_ok},
                      {"metric_ok", f.metric_ok},
                      {"classification_ok", f.classification_ok},
                      {"max_residual", f.max_residual},
                      {"pass", f.pass()},
                      {"detail", f.detail}});
    }
    j["families"] = fams;
    j["pass"] = report.all_pass();
    os << j.dump(2);
  } else if (format == "csv") {
    os << "id,pass,residual_ok,metric_ok,classification_ok,max_residual\n";
    for (const FamilyVerification& f : report.families) {
      os << f.id << "," << f.pass() << "," << f.residual_ok << ","
         << f.metric_ok << "," << f.classification_ok << "," << f.max_residual
         << "\n";
    }
  } else {
    os << config.name() << "  " << families.size() << " families, " << samples
       << " samples, tol " << tol << ", seed " << seed << "\n";
    for (const FamilyVerification& f : report.families) {
      os << "  " << (f.pass() ? "PASS" : "FAIL") << "  " << f.id
         << "  max residual " << f.max_residual;
      if (!f.detail.empty()) os << "  [" << f.detail << "]";
      os << "\n";
    }
    os << (report.all_pass() ? "pass" : "fail") << "\n";
  }
  emit(os.str(), output);
  return report.all_pass() ? 0 : 1;
}

int cmd_solve(const SpaceOpts& opts, const std::string& partition_text,
              const std::string& metric, int restarts, double tol,
              unsigned long long seed, double threshold,
              const std::string& format, const std::string& output) {
  SpaceConfig config = resolve_space(opts);
  MetricClassPartition partition =
      choose_partition(config, partition_text, metric);
  QuadraticSystem system = generate_system(config, partition);
  SolverResult result = solve(system, restarts, tol, seed, threshold);

  bool have_catalog = true;
  std::vector<SolutionFamily> families;
  try {
    families = list_families(config, metric_catalog_key(metric));
  } catch (const NotFoundError&) {
    have_catalog = false;
  }
  ExhaustivenessReport matches;
  if (have_catalog) {
    matches = exhaustiveness_report(config, result, families);
  }

  std::ostringstream os;
  if (format == "json") {
    nlohmann::json j = solver_result_to_json(system, result);
    j["partition"] = system.partition;
    if (have_catalog) {
      nlohmann::json jm = nlohmann::json::array();
      for (const ExhaustivenessEntry& e : matches.entries) {
        jm.push_back({{"solution", e.solution_index},
                      {"family", e.family_id},
                      {"distance", e.distance}});
      }
      j["family_matches"] = jm;
      j["unmatched_count"] = matches.unmatched_count;
    }
    os << j.dump(2);
  } else if (format == "csv") {
    os << "index,residual,support,family\n";
    for (size_t i = 0; i < result.solutions.size(); ++i) {
      const SolverSolution& s = result.solutions[i];
      std::string sup;
      for (const std::string& lab : s.support) {
        if (!sup.empty()) sup += "+";
        sup += lab;
      }
      std::string fam =
          have_catalog ? matches.entries[i].family_id : std::string();
      os << i << "," << s.residual << "," << sup << "," << fam << "\n";
    }
  } else {
    os << system.space << "  partition " << partition.render(config)
       << "  restarts " << restarts << "  tol " << tol << "  seed " << seed
       << "\n";
    os << "converged " << result.converged_count << " -> "
       << result.solutions.size() << " distinct solutions\n";
    for (size_t i = 0; i < result.solutions.size(); ++i) {
      const SolverSolution& s = result.solutions[i];
      os << "  [" << i << "] residual " << s.residual << "  support {";
      for (size_t k = 0; k < s.support.size(); ++k) {
        if (k) os << ", ";
        os << s.support[k];
      }
      os << "}";
      if (have_catalog) {
        const std::string& fam = matches.entries[i].family_id;
        os << (fam.empty() ? "  UNMATCHED" : "  matches " + fam);
      }
      os << "\n";
    }
    if (have_catalog) os << "unmatched: " << matches.unmatched_count << "\n";
  }
  emit(os.str(), output);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"equigeodesic vectors on homogeneous spaces"};
  app.require_subcommand(1);

  std::string format = "human";
  std::string output;
  // Accepted before or after the subcommand (subcommands fall through).
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"human", "json", "csv"}));
  app.add_option("--output", output,
                 "output file (relative paths resolve under "
                 "EQUIGEO_OUTPUT_DIR when set)");

  SpaceOpts spaces_opts;
  CLI::App* spaces = app.add_subcommand("spaces", "list supported spaces");
  spaces->fallthrough();
  add_space_options(spaces, spaces_opts, /*positional=*/false);

  SpaceOpts check_opts;
  CLI::App* check = app.add_subcommand("check", "validate a configuration");
  check->fallthrough();
  add_space_options(check, check_opts, /*positional=*/true);

  SpaceOpts gen_opts;
  std::string gen_partition, gen_metric;
  CLI::App* gen =
      app.add_subcommand("gen-system", "emit the quadratic system");
  gen->fallthrough();
  add_space_options(gen, gen_opts, /*positional=*/true);
  gen->add_option("--partition", gen_partition,
                  "metric classes, e.g. \"so(3),m12|m13,m23\"");
  gen->add_option("--metric", gen_metric,
                  "named metric whose equality classes set the partition");

  SpaceOpts verify_opts;
  std::string verify_metric, verify_family;
  int verify_samples = 100;
  double verify_tol = 1e-10;
  unsigned long long verify_seed = 0;
  CLI::App* verify =
      app.add_subcommand("verify", "verify the curated solution families");
  verify->fallthrough();
  add_space_options(verify, verify_opts, /*positional=*/true);
  verify->add_option("--metric", verify_metric, "catalog metric selector");
  verify->add_option("--family", verify_family, "only the family with this index/id");
  verify->add_option("--samples", verify_samples, "random samples per family");
  verify->add_option("--tol", verify_tol, "residual tolerance");
  verify->add_option("--seed", verify_seed, "random seed");

  SpaceOpts solve_opts;
  std::string solve_partition, solve_metric;
  int solve_restarts = 1000;
  double solve_tol = 1e-12;
  double solve_threshold = 1e-6;
  unsigned long long solve_seed = 0;
  CLI::App* solve_cmd =
      app.add_subcommand("solve", "random-restart numeric solution search");
  solve_cmd->fallthrough();
  add_space_options(solve_cmd, solve_opts, /*positional=*/true);
  solve_cmd->add_option("--partition", solve_partition, "metric classes");
  solve_cmd->add_option("--metric", solve_metric,
                        "named metric whose equality classes set the partition");
  solve_cmd->add_option("--restarts", solve_restarts, "number of restarts");
  solve_cmd->add_option("--tol", solve_tol, "convergence tolerance");
  solve_cmd->add_option("--threshold", solve_threshold, "support threshold");
  solve_cmd->add_option("--seed", solve_seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (spaces->parsed()) return cmd_spaces(spaces_opts, format, output);
    if (check->parsed()) return cmd_check(check_opts, format, output);
    if (gen->parsed()) {
      return cmd_gen_system(gen_opts, gen_partition, gen_metric, format,
                            output);
    }
    if (verify->parsed()) {
      return cmd_verify(verify_opts, verify_metric, verify_family,
                        verify_samples, verify_tol, verify_seed, format,
                        output);
    }
    if (solve_cmd->parsed()) {
      return cmd_solve(solve_opts, solve_partition, solve_metric,
                       solve_restarts, solve_tol, solve_seed, solve_threshold,
                       format, output);
    }
  } catch (const equigeo::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
