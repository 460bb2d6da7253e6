#include <set>

#include <nlohmann/json.hpp>

#include "doctest.h"
#include "equigeo/solver.hpp"

using namespace equigeo;

TEST_CASE("solver is deterministic in the seed") {
  SpaceConfig u3 = build_space(SpaceFamily::wallach_u3, {});
  QuadraticSystem sys =
      generate_system(u3, MetricClassPartition::singletons(3));
  SolverResult a = solve(sys, 50, 1e-12, 7);
  SolverResult b = solve(sys, 50, 1e-12, 7);
  CHECK(a.converged_count == b.converged_count);
  REQUIRE(a.solutions.size() == b.solutions.size());
  for (size_t i = 0; i < a.solutions.size(); ++i) {
    CHECK(a.solutions[i].x == b.solutions[i].x);  // bitwise identical
    CHECK(a.solutions[i].residual == b.solutions[i].residual);
  }
  CHECK(solver_result_to_json(sys, a).dump() ==
        solver_result_to_json(sys, b).dump());

  SolverResult c = solve(sys, 50, 1e-12, 8);
  CHECK(c.seed == 8);
}

TEST_CASE("solver solutions are sound, unit, sign-canonical") {
  SpaceConfig u3 = build_space(SpaceFamily::wallach_u3, {});
  QuadraticSystem sys =
      generate_system(u3, MetricClassPartition::singletons(3));
  SolverResult r = solve(sys, 200, 1e-12, 7);
  CHECK(r.converged_count > 0);
  CHECK(!r.solutions.empty());
  for (const SolverSolution& s : r.solutions) {
    CHECK(s.x.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sys.residual(s.x).norm() < 1e-11);
    CHECK(s.residual < 1e-11);
    // Sign canonicalization: the largest-magnitude coordinate is positive.
    int imax = 0;
    s.x.cwiseAbs().maxCoeff(&imax);
    CHECK(s.x[imax] > 0.0);
    CHECK(!s.support.empty());
  }
}

TEST_CASE("solutions of the unconstrained W6 system are single-module") {
  SpaceConfig u3 = build_space(SpaceFamily::wallach_u3, {});
  QuadraticSystem sys =
      generate_system(u3, MetricClassPartition::singletons(3));
  SolverResult r = solve(sys, 300, 1e-12, 3);
  CHECK(r.converged_count > 0);
  for (const SolverSolution& s : r.solutions) {
    CHECK(s.support.size() == 1);
  }
}

TEST_CASE("support signatures") {
  SpaceConfig v2 = build_space(SpaceFamily::stiefel_v2, {5});
  Eigen::VectorXd x = Eigen::VectorXd::Zero(v2.dim_m());
  x[v2.var_index("a13")] = 1.0;
  x[v2.var_index("a24")] = 0.5;
  auto sig = support_signature(v2, x, 1e-6);
  CHECK(sig == std::vector<std::string>{"m1", "m2"});
  // A raised threshold (relative to |x|) drops the smaller module.
  CHECK(support_signature(v2, x, 0.6) == std::vector<std::string>{"m1"});
}

TEST_CASE("every converged solution is explained by the catalog") {
  SpaceConfig v2 = build_space(SpaceFamily::stiefel_v2, {4});
  QuadraticSystem sys =
      generate_system(v2, MetricClassPartition::singletons(3));
  SolverResult r = solve(sys, 300, 1e-12, 5);
  CHECK(r.converged_count > 0);
  ExhaustivenessReport rep =
      exhaustiveness_report(v2, r, list_families(v2));
  REQUIRE(rep.entries.size() == r.solutions.size());
  CHECK(rep.unmatched_count == 0);
  for (const ExhaustivenessEntry& e : rep.entries) {
    CHECK(!e.family_id.empty());
    CHECK(e.distance < 1e-6);
  }
}

TEST_CASE("solver result JSON lists coordinates by name") {
  SpaceConfig ssp = build_space(SpaceFamily::sphere_sp, {1});
  QuadraticSystem sys =
      generate_system(ssp, MetricClassPartition::singletons(2));
  SolverResult r = solve(sys, 50, 1e-12, 1);
  nlohmann::json j = solver_result_to_json(sys, r);
  CHECK(j.at("space") == "sphere-sp(1)");
  CHECK(j.at("seed") == 1);
  REQUIRE(j.at("solutions").is_array());
  if (!j.at("solutions").empty()) {
    const auto& sol = j.at("solutions")[0];
    CHECK(sol.contains("coordinates"));
    CHECK(sol.at("coordinates").contains("b11"));
  }
}

TEST_CASE("solver rejects bad arguments") {
  SpaceConfig u3 = build_space(SpaceFamily::wallach_u3, {});
  QuadraticSystem sys =
      generate_system(u3, MetricClassPartition::singletons(3));
  CHECK_THROWS_AS(solve(sys, 0, 1e-12, 1), InvalidParametersError);
  CHECK_THROWS_AS(solve(sys, 10, -1.0, 1), InvalidParametersError);
}
