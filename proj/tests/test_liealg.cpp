#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "equigeo/liealg.hpp"

using namespace equigeo;

namespace {

Eigen::VectorXd random_vector(int dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::VectorXd v(dim);
  for (int i = 0; i < dim; ++i) v[i] = dist(rng);
  return v;
}

std::vector<LieBasis> sample_bases() {
  std::vector<LieBasis> out;
  for (int n = 3; n <= 6; ++n) out.push_back(build_so_basis(n));
  for (int n = 2; n <= 4; ++n) out.push_back(build_u_basis(n));
  for (int n = 1; n <= 3; ++n) out.push_back(build_sp_basis(n));
  return out;
}

}  // namespace

TEST_CASE("basis dimensions and gram diagonals") {
  LieBasis so5 = build_so_basis(5);
  CHECK(so5.dim() == 10);
  for (double g : so5.gram) CHECK(g == doctest::Approx(2.0));

  LieBasis u3 = build_u_basis(3);
  CHECK(u3.dim() == 9);
  for (int k = 0; k < u3.dim(); ++k) {
    bool diag = u3.labels[k].substr(0, 1) == "f" &&
                u3.labels[k][2] == u3.labels[k][4];
    CHECK(u3.gram[k] == doctest::Approx(diag ? 4.0 : 2.0));
  }

  LieBasis sp2 = build_sp_basis(2);
  CHECK(sp2.dim() == 10);  // dim sp(n) = n(2n+1)
  CHECK(sp2.gram[sp2.index_of("f(1,1)")] == doctest::Approx(8.0));
  CHECK(sp2.gram[sp2.index_of("g(2,2)")] == doctest::Approx(8.0));
  CHECK(sp2.gram[sp2.index_of("e(1,2)")] == doctest::Approx(4.0));
  CHECK(sp2.gram[sp2.index_of("h(1,2)")] == doctest::Approx(4.0));
}

TEST_CASE("basis ordering is lexicographic in generator indices") {
  LieBasis so4 = build_so_basis(4);
  CHECK(so4.labels == std::vector<std::string>{"xi(1,2)", "xi(1,3)", "xi(1,4)",
                                               "xi(2,3)", "xi(2,4)",
                                               "xi(3,4)"});
  LieBasis u2 = build_u_basis(2);
  CHECK(u2.labels == std::vector<std::string>{"f(1,1)", "e(1,2)", "f(1,2)",
                                              "f(2,2)"});
  LieBasis sp1 = build_sp_basis(1);
  CHECK(sp1.labels ==
        std::vector<std::string>{"f(1,1)", "g(1,1)", "h(1,1)"});
}

TEST_CASE("bform is symmetric and the bases are B-orthogonal") {
  for (const LieBasis& basis : sample_bases()) {
    for (int i = 0; i < basis.dim(); ++i) {
      for (int j = i; j < basis.dim(); ++j) {
        double bij = bform(basis.elements[i], basis.elements[j]);
        double bji = bform(basis.elements[j], basis.elements[i]);
        CHECK(bij == doctest::Approx(bji).epsilon(1e-14));
        if (i == j) {
          CHECK(bij == doctest::Approx(basis.gram[i]));
          CHECK(bij > 0.0);
        } else {
          CHECK(std::abs(bij) < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("structure constants are small integers and antisymmetric") {
  for (const LieBasis& basis : sample_bases()) {
    // Diagonal symplectic triples reach [f(a,a), g(a,a)] = 4 h(a,a);
    // orthogonal and unitary bases stay within +-2.
    const double bound = basis.tag == AlgebraTag::sp ? 4.0 : 2.0;
    for (int i = 0; i < basis.dim(); ++i) {
      for (int j = 0; j < basis.dim(); ++j) {
        std::vector<double> row(basis.dim(), 0.0);
        for (const StructTerm& t : basis.structure[i][j]) {
          CHECK(t.c == doctest::Approx(std::llround(t.c)).epsilon(1e-12));
          CHECK(std::abs(t.c) <= bound + 1e-12);
          row[t.k] += t.c;
        }
        for (const StructTerm& t : basis.structure[j][i]) {
          row[t.k] += t.c;  // antisymmetry: c_ij^k + c_ji^k = 0
        }
        for (double v : row) CHECK(std::abs(v) < 1e-12);
      }
    }
  }
}

TEST_CASE("structure tensor reproduces matrix commutators") {
  std::mt19937_64 rng(11);
  for (const LieBasis& basis : sample_bases()) {
    for (int rep = 0; rep < 5; ++rep) {
      Eigen::VectorXd x = random_vector(basis.dim(), rng);
      Eigen::VectorXd y = random_vector(basis.dim(), rng);
      MatrixElement direct =
          commutator(basis.realize(x), basis.realize(y));
      MatrixElement via = basis.realize(basis.bracket(x, y));
      CHECK((direct.mat - via.mat).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("Jacobi identity holds in coefficient space") {
  std::mt19937_64 rng(12);
  for (const LieBasis& basis : sample_bases()) {
    for (int rep = 0; rep < 5; ++rep) {
      Eigen::VectorXd x = random_vector(basis.dim(), rng);
      Eigen::VectorXd y = random_vector(basis.dim(), rng);
      Eigen::VectorXd z = random_vector(basis.dim(), rng);
      Eigen::VectorXd j = basis.bracket(x, basis.bracket(y, z)) +
                          basis.bracket(y, basis.bracket(z, x)) +
                          basis.bracket(z, basis.bracket(x, y));
      double scale = x.norm() * y.norm() * z.norm();
      CHECK(j.norm() < 1e-12 * scale * 8.0);
    }
  }
}

TEST_CASE("bform is Ad-invariant") {
  std::mt19937_64 rng(13);
  for (const LieBasis& basis : sample_bases()) {
    for (int rep = 0; rep < 5; ++rep) {
      MatrixElement x = basis.realize(random_vector(basis.dim(), rng));
      MatrixElement y = basis.realize(random_vector(basis.dim(), rng));
      MatrixElement z = basis.realize(random_vector(basis.dim(), rng));
      double v = bform(commutator(x, y), z) + bform(y, commutator(x, z));
      CHECK(std::abs(v) < 1e-10);
    }
  }
}

TEST_CASE("projection inverts realization") {
  std::mt19937_64 rng(14);
  for (const LieBasis& basis : sample_bases()) {
    Eigen::VectorXd x = random_vector(basis.dim(), rng);
    Eigen::VectorXd back = basis.project(basis.realize(x));
    CHECK((x - back).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("specific commutators") {
  LieBasis so4 = build_so_basis(4);
  // [xi(1,2), xi(2,3)] = xi(1,3); disjoint pairs commute.
  Eigen::VectorXd a = Eigen::VectorXd::Zero(6), b = Eigen::VectorXd::Zero(6);
  a[so4.index_of("xi(1,2)")] = 1.0;
  b[so4.index_of("xi(2,3)")] = 1.0;
  Eigen::VectorXd r = so4.bracket(a, b);
  CHECK(r[so4.index_of("xi(1,3)")] == doctest::Approx(1.0));
  CHECK(r.cwiseAbs().sum() == doctest::Approx(1.0));

  b.setZero();
  b[so4.index_of("xi(3,4)")] = 1.0;
  CHECK(so4.bracket(a, b).norm() < 1e-14);

  LieBasis u2 = build_u_basis(2);
  Eigen::VectorXd e = Eigen::VectorXd::Zero(4), f = Eigen::VectorXd::Zero(4);
  e[u2.index_of("e(1,2)")] = 1.0;
  f[u2.index_of("f(1,2)")] = 1.0;
  Eigen::VectorXd ef = u2.bracket(e, f);
  // [e(1,2), f(1,2)] = f(1,1) - f(2,2).
  CHECK(ef[u2.index_of("f(1,1)")] == doctest::Approx(1.0));
  CHECK(ef[u2.index_of("f(2,2)")] == doctest::Approx(-1.0));
  CHECK(ef.cwiseAbs().sum() == doctest::Approx(2.0));
}

TEST_CASE("construction rejects invalid dimensions") {
  CHECK_THROWS_AS(build_so_basis(1), InvalidDimensionError);
  CHECK_THROWS_AS(build_u_basis(0), InvalidDimensionError);
  CHECK_THROWS_AS(build_sp_basis(0), InvalidDimensionError);
}

TEST_CASE("commutator rejects mismatched elements") {
  LieBasis so3 = build_so_basis(3);
  LieBasis so4 = build_so_basis(4);
  CHECK_THROWS_AS(commutator(so3.elements[0], so4.elements[0]),
                  IncompatibleElementsError);
}

TEST_CASE("orthogonal bracket table matches matrix arithmetic") {
  for (int n : {4, 5, 6}) {
    ValidationReport r =
        validate_bracket_lemma(build_so_basis(n), BracketLemma::so_table);
    CHECK(!r.entries.empty());
    CHECK(r.all_match());
  }
}

TEST_CASE("symplectic bracket table matches matrix arithmetic") {
  // The table quantifies over three distinct indices, so it is vacuous
  // below sp(3).
  ValidationReport r =
      validate_bracket_lemma(build_sp_basis(3), BracketLemma::sp_table);
  CHECK(!r.entries.empty());
  CHECK(r.all_match());
}

TEST_CASE("unitary bracket table: discrepancies are confined to "
          "repeated-index mixed-kind pairs") {
  ValidationReport r =
      validate_bracket_lemma(build_u_basis(3), BracketLemma::u_table);
  CHECK(!r.entries.empty());
  CHECK(!r.all_match());
  CHECK(r.mismatch_count() == 16);  // frozen from direct matrix evaluation
  for (const LemmaEntry& e : r.mismatches()) {
    CHECK(e.shares_index);
    // Every failing entry mixes an e-generator with an f-generator.
    bool has_e = e.bracket.find("e(") != std::string::npos;
    bool has_f = e.bracket.find("f(") != std::string::npos;
    CHECK(has_e);
    CHECK(has_f);
  }
}

TEST_CASE("sphere bracket table on sp(n) matches matrix arithmetic") {
  for (int n : {2, 3}) {
    ValidationReport r = validate_bracket_lemma(build_sp_basis(n),
                                                BracketLemma::sphere_sp_table);
    CHECK(!r.entries.empty());
    CHECK(r.all_match());
  }
}
