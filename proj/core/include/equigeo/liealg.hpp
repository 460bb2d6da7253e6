#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

#include "equigeo/errors.hpp"

namespace equigeo {

enum class AlgebraTag { so, u, sp };

std::string to_string(AlgebraTag tag);

// A single element of a matrix Lie algebra.  Complex entries are kept in an
// Eigen complex matrix; so(n) elements simply have vanishing imaginary parts.
struct MatrixElement {
  Eigen::MatrixXcd mat;
  AlgebraTag tag = AlgebraTag::so;

  int dim() const { return static_cast<int>(mat.rows()); }
};

// The Ad-invariant bilinear form B(X, Y) = -Re tr(XY).
double bform(const MatrixElement& x, const MatrixElement& y);

// Matrix commutator XY - YX.  Throws IncompatibleElementsError on
// dimension or tag mismatch.
MatrixElement commutator(const MatrixElement& x, const MatrixElement& y);

// One summand of a commutator expansion: coefficient c on basis element k.
struct StructTerm {
  int k;
  double c;
};

// An ordered B-orthogonal basis of a compact matrix Lie algebra, together
// with its precomputed structure constants [e_i, e_j] = sum_k c_{ij}^k e_k
// (stored sparsely) and the diagonal of the gram matrix B(e_i, e_i).
struct LieBasis {
  AlgebraTag tag = AlgebraTag::so;
  int n = 0;  // algebra parameter: so(n)/u(n) use n x n, sp(n) uses 2n x 2n
  std::vector<MatrixElement> elements;
  std::vector<std::string> labels;
  std::vector<std::vector<std::vector<StructTerm>>> structure;
  std::vector<double> gram;

  int dim() const { return static_cast<int>(elements.size()); }
  int index_of(const std::string& label) const;  // NotFoundError if absent
  bool has_label(const std::string& label) const;

  // Realize a coefficient vector as a matrix.
  MatrixElement realize(const Eigen::VectorXd& coeffs) const;

  // Bracket in coefficient space through the structure tensor.
  Eigen::VectorXd bracket(const Eigen::VectorXd& x,
                          const Eigen::VectorXd& y) const;

  // Orthogonal projection of a matrix onto the basis: B(X, e_k)/B(e_k, e_k).
  Eigen::VectorXd project(const MatrixElement& x) const;

 private:
  mutable std::map<std::string, int> index_;
};

// Constructors.  Bases are ordered lexicographically in the generator
// indices; this ordering is part of the public contract (coefficient
// vectors and emitted systems refer to positions).
//
// so(n): xi(a,b) = E_ab - E_ba for 1 <= a < b <= n.
// u(n):  at (i,i): f(i,i) = 2i E_ii; at (i,j), i < j: e(i,j) = E_ij - E_ji
//        then f(i,j) = i(E_ij + E_ji).
// sp(n): 2n x 2n complex matrices; at (a,a): f(a,a), g(a,a), h(a,a); at
//        (a,b), a < b: e, f, g, h built from the block generators
//        E_ab (+1 at (a,b) and (n+a,n+b)), F_ab (i at (a,b), -i at
//        (n+a,n+b)), G_ab (-1 at (a,n+b), +1 at (n+b,a)), H_ab (i at both).
LieBasis build_so_basis(int n);
LieBasis build_u_basis(int n);
LieBasis build_sp_basis(int n);

// Closed-form bracket tables checked against direct matrix commutators.
enum class BracketLemma { so_table, u_table, sp_table, sphere_sp_table };

BracketLemma lemma_from_string(const std::string& s);
std::string to_string(BracketLemma lemma);

struct LemmaEntry {
  std::string bracket;   // e.g. "[e(1,2), f(1,2)]"
  std::string expected;  // table/formula prediction
  std::string computed;  // direct matrix commutator
  bool shares_index = false;  // the two index pairs share at least one index
  bool match = false;
};

struct ValidationReport {
  std::string lemma;
  std::vector<LemmaEntry> entries;

  bool all_match() const;
  int mismatch_count() const;
  std::vector<LemmaEntry> mismatches() const;
};

// Evaluates every entry of the named bracket table on `basis` and compares
// with the direct matrix commutator.  The matrix arithmetic is authoritative;
// mismatches are reported, never patched.
ValidationReport validate_bracket_lemma(const LieBasis& basis,
                                        BracketLemma lemma);

}  // namespace equigeo
