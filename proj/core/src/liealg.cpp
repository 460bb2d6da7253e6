#include "equigeo/liealg.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

namespace equigeo {

namespace {

constexpr double kTol = 1e-12;

std::string pair_label(const std::string& kind, int a, int b) {
  std::ostringstream os;
  os << kind << "(" << a << "," << b << ")";
  return os.str();
}

// Fill structure constants and gram diagonal from the stored matrices.
void finalize(LieBasis& basis) {
  const int d = basis.dim();
  basis.gram.resize(d);
  for (int i = 0; i < d; ++i) {
    basis.gram[i] = bform(basis.elements[i], basis.elements[i]);
  }
  basis.structure.assign(d, std::vector<std::vector<StructTerm>>(d));
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      MatrixElement c = commutator(basis.elements[i], basis.elements[j]);
      Eigen::MatrixXcd rem = c.mat;
      std::vector<StructTerm> terms;
      for (int k = 0; k < d; ++k) {
        double coeff = bform(c, basis.elements[k]) / basis.gram[k];
        if (std::abs(coeff) > 1e-9) {
          terms.push_back({k, coeff});
          rem -= coeff * basis.elements[k].mat;
        }
      }
      if (rem.cwiseAbs().maxCoeff() > kTol) {
        throw InternalConsistencyError(
            "commutator of basis elements does not close in the span: [" +
            basis.labels[i] + ", " + basis.labels[j] + "]");
      }
      basis.structure[i][j] = terms;
      for (const StructTerm& t : terms) {
        basis.structure[j][i].push_back({t.k, -t.c});
      }
    }
  }
}

}  // namespace

std::string to_string(AlgebraTag tag) {
  switch (tag) {
    case AlgebraTag::so:
      return "so";
    case AlgebraTag::u:
      return "u";
    case AlgebraTag::sp:
      return "sp";
  }
  return "?";
}

double bform(const MatrixElement& x, const MatrixElement& y) {
  return -(x.mat * y.mat).trace().real();
}

MatrixElement commutator(const MatrixElement& x, const MatrixElement& y) {
  if (x.dim() != y.dim() || x.tag != y.tag) {
    throw IncompatibleElementsError(
        "commutator requires equal dimension and algebra tag");
  }
  return {x.mat * y.mat - y.mat * x.mat, x.tag};
}

int LieBasis::index_of(const std::string& label) const {
  if (index_.empty()) {
    for (int i = 0; i < dim(); ++i) index_[labels[i]] = i;
  }
  auto it = index_.find(label);
  if (it == index_.end()) {
    throw NotFoundError("no basis element labeled " + label);
  }
  return it->second;
}

bool LieBasis::has_label(const std::string& label) const {
  if (index_.empty()) {
    for (int i = 0; i < dim(); ++i) index_[labels[i]] = i;
  }
  return index_.count(label) > 0;
}

MatrixElement LieBasis::realize(const Eigen::VectorXd& coeffs) const {
  if (coeffs.size() != dim()) {
    throw IncompatibleElementsError("coefficient vector has wrong length");
  }
  MatrixElement out{Eigen::MatrixXcd::Zero(elements[0].dim(),
                                           elements[0].dim()),
                    tag};
  for (int i = 0; i < dim(); ++i) {
    if (coeffs[i] != 0.0) out.mat += coeffs[i] * elements[i].mat;
  }
  return out;
}

Eigen::VectorXd LieBasis::bracket(const Eigen::VectorXd& x,
                                  const Eigen::VectorXd& y) const {
  if (x.size() != dim() || y.size() != dim()) {
    throw IncompatibleElementsError("coefficient vector has wrong length");
  }
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dim());
  for (int i = 0; i < dim(); ++i) {
    if (x[i] == 0.0) continue;
    for (int j = 0; j < dim(); ++j) {
      if (y[j] == 0.0 || i == j) continue;
      for (const StructTerm& t : structure[i][j]) {
        out[t.k] += x[i] * y[j] * t.c;
      }
    }
  }
  return out;
}

Eigen::VectorXd LieBasis::project(const MatrixElement& x) const {
  if (x.dim() != elements[0].dim()) {
    throw IncompatibleElementsError("element has wrong ambient dimension");
  }
  Eigen::VectorXd out(dim());
  for (int k = 0; k < dim(); ++k) {
    out[k] = bform(x, elements[k]) / gram[k];
  }
  return out;
}

LieBasis build_so_basis(int n) {
  if (n < 2) throw InvalidDimensionError("so(n) requires n >= 2");
  LieBasis basis;
  basis.tag = AlgebraTag::so;
  basis.n = n;
  for (int a = 1; a <= n; ++a) {
    for (int b = a + 1; b <= n; ++b) {
      Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
      m(a - 1, b - 1) = 1.0;
      m(b - 1, a - 1) = -1.0;
      basis.elements.push_back({m, AlgebraTag::so});
      basis.labels.push_back(pair_label("xi", a, b));
    }
  }
  finalize(basis);
  return basis;
}

LieBasis build_u_basis(int n) {
  if (n < 1) throw InvalidDimensionError("u(n) requires n >= 1");
  using namespace std::complex_literals;
  LieBasis basis;
  basis.tag = AlgebraTag::u;
  basis.n = n;
  for (int i = 1; i <= n; ++i) {
    for (int j = i; j <= n; ++j) {
      if (i == j) {
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
        m(i - 1, i - 1) = 2.0i;
        basis.elements.push_back({m, AlgebraTag::u});
        basis.labels.push_back(pair_label("f", i, i));
      } else {
        Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(n, n);
        e(i - 1, j - 1) = 1.0;
        e(j - 1, i - 1) = -1.0;
        basis.elements.push_back({e, AlgebraTag::u});
        basis.labels.push_back(pair_label("e", i, j));
        Eigen::MatrixXcd f = Eigen::MatrixXcd::Zero(n, n);
        f(i - 1, j - 1) = 1.0i;
        f(j - 1, i - 1) = 1.0i;
        basis.elements.push_back({f, AlgebraTag::u});
        basis.labels.push_back(pair_label("f", i, j));
      }
    }
  }
  finalize(basis);
  return basis;
}

namespace {

// Block generators for sp(n) realized in 2n x 2n complex matrices
// satisfying the ((X, -conj(Y)), (Y, conj(X))) pattern.
Eigen::MatrixXcd sp_E(int n, int a, int b) {
  using namespace std::complex_literals;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  m(a - 1, b - 1) += 1.0;
  m(n + a - 1, n + b - 1) += 1.0;
  return m;
}
Eigen::MatrixXcd sp_F(int n, int a, int b) {
  using namespace std::complex_literals;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  m(a - 1, b - 1) += 1.0i;
  m(n + a - 1, n + b - 1) += -1.0i;
  return m;
}
Eigen::MatrixXcd sp_G(int n, int a, int b) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  m(a - 1, n + b - 1) += -1.0;
  m(n + b - 1, a - 1) += 1.0;
  return m;
}
Eigen::MatrixXcd sp_H(int n, int a, int b) {
  using namespace std::complex_literals;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  m(a - 1, n + b - 1) += 1.0i;
  m(n + b - 1, a - 1) += 1.0i;
  return m;
}

}  // namespace

LieBasis build_sp_basis(int n) {
  if (n < 1) throw InvalidDimensionError("sp(n) requires n >= 1");
  LieBasis basis;
  basis.tag = AlgebraTag::sp;
  basis.n = n;
  for (int a = 1; a <= n; ++a) {
    for (int b = a; b <= n; ++b) {
      if (a == b) {
        basis.elements.push_back({2.0 * sp_F(n, a, a), AlgebraTag::sp});
        basis.labels.push_back(pair_label("f", a, a));
        basis.elements.push_back({2.0 * sp_G(n, a, a), AlgebraTag::sp});
        basis.labels.push_back(pair_label("g", a, a));
        basis.elements.push_back({2.0 * sp_H(n, a, a), AlgebraTag::sp});
        basis.labels.push_back(pair_label("h", a, a));
      } else {
        basis.elements.push_back(
            {sp_E(n, a, b) - sp_E(n, b, a), AlgebraTag::sp});
        basis.labels.push_back(pair_label("e", a, b));
        basis.elements.push_back(
            {sp_F(n, a, b) + sp_F(n, b, a), AlgebraTag::sp});
        basis.labels.push_back(pair_label("f", a, b));
        basis.elements.push_back(
            {sp_G(n, a, b) + sp_G(n, b, a), AlgebraTag::sp});
        basis.labels.push_back(pair_label("g", a, b));
        basis.elements.push_back(
            {sp_H(n, a, b) + sp_H(n, b, a), AlgebraTag::sp});
        basis.labels.push_back(pair_label("h", a, b));
      }
    }
  }
  finalize(basis);
  return basis;
}

// ---------------------------------------------------------------------------
// Bracket-table validation
// ---------------------------------------------------------------------------

namespace {

// A linear combination of labeled basis elements, used for both table
// predictions and computed commutators.
using Combo = std::map<std::string, double>;

std::string render(const Combo& c) {
  if (c.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [label, coeff] : c) {
    if (coeff == 0.0) continue;
    if (!first) os << (coeff > 0 ? " + " : " - ");
    else if (coeff < 0)
      os << "-";
    double a = std::abs(coeff);
    if (a != 1.0) os << a << "*";
    os << label;
    first = false;
  }
  if (first) return "0";
  return os.str();
}

Combo project_combo(const LieBasis& basis, const MatrixElement& x) {
  Eigen::VectorXd c = basis.project(x);
  Combo out;
  for (int k = 0; k < basis.dim(); ++k) {
    if (std::abs(c[k]) > 1e-9) out[basis.labels[k]] = c[k];
  }
  return out;
}

bool combos_equal(const Combo& a, const Combo& b) {
  Combo diff = a;
  for (const auto& [k, v] : b) diff[k] -= v;
  for (const auto& [k, v] : diff) {
    (void)k;
    if (std::abs(v) > 1e-9) return false;
  }
  return true;
}

void add_to(Combo& c, const Combo& src, double s) {
  for (const auto& [k, v] : src) {
    c[k] += s * v;
    if (c[k] == 0.0) c.erase(k);
  }
}

// Canonical form of xi_{ij} for arbitrary index order: xi_{ji} = -xi_{ij}.
Combo xi_canon(int i, int j) {
  if (i == j) return {};
  if (i < j) return {{pair_label("xi", i, j), 1.0}};
  return {{pair_label("xi", j, i), -1.0}};
}

// Canonical forms for the u(n) generators: e_{ji} = -e_{ij}, e_{ii} = 0,
// f_{ji} = f_{ij}.
Combo u_canon(char kind, int i, int j) {
  if (kind == 'e') {
    if (i == j) return {};
    if (i < j) return {{pair_label("e", i, j), 1.0}};
    return {{pair_label("e", j, i), -1.0}};
  }
  int a = std::min(i, j), b = std::max(i, j);
  return {{pair_label("f", a, b), 1.0}};
}

// Same symmetry pattern for sp(n): e antisymmetric in its indices, f/g/h
// symmetric (diagonal elements are the basis f(a,a), g(a,a), h(a,a)).
Combo sp_canon(char kind, int i, int j, double coeff = 1.0) {
  if (coeff == 0.0) return {};
  if (kind == 'e') {
    if (i == j) return {};
    if (i < j) return {{pair_label("e", i, j), coeff}};
    return {{pair_label("e", j, i), -coeff}};
  }
  int a = std::min(i, j), b = std::max(i, j);
  return {{pair_label(std::string(1, kind), a, b), coeff}};
}

LemmaEntry make_entry(const LieBasis& basis, const std::string& x_label,
                      const std::string& y_label, const Combo& expected,
                      bool shares_index) {
  MatrixElement c = commutator(basis.elements[basis.index_of(x_label)],
                               basis.elements[basis.index_of(y_label)]);
  Combo computed = project_combo(basis, c);
  LemmaEntry e;
  e.bracket = "[" + x_label + ", " + y_label + "]";
  e.expected = render(expected);
  e.computed = render(computed);
  e.shares_index = shares_index;
  e.match = combos_equal(expected, computed);
  return e;
}

ValidationReport validate_so(const LieBasis& basis) {
  ValidationReport report;
  report.lemma = to_string(BracketLemma::so_table);
  const int n = basis.n;
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b)
      for (int c = 1; c <= n; ++c)
        for (int d = c + 1; d <= n; ++d) {
          // Table rule: disjoint index pairs commute; otherwise
          // [xi_ab, xi_bc] = xi_ac after antisymmetric rewriting.
          Combo expected;
          bool shared = (a == c || a == d || b == c || b == d);
          if ((a == c && b == d) || !shared) {
            // zero
          } else {
            int x, z;
            double sign = 1.0;
            if (b == c || b == d) {
              x = a;
            } else {
              x = b;
              sign = -sign;
            }
            if (c == a || c == b) {
              z = d;
            } else {
              z = c;
              sign = -sign;
            }
            add_to(expected, xi_canon(x, z), sign);
          }
          report.entries.push_back(make_entry(basis, pair_label("xi", a, b),
                                              pair_label("xi", c, d),
                                              expected, shared));
        }
  return report;
}

// The printed u(n) formulas:
//   [e_ij, e_kl] =  d_jk e_il - d_il e_kj - d_ik e_jl - d_jl e_ik
//   [f_ij, f_kl] = -d_jk e_il + d_il e_kj - d_ik e_jl - d_jl e_ik
//   [f_ij, e_kl] =  d_jk f_il - d_il f_kj - d_ik f_jl - d_jl f_ik
// ([e, f] is evaluated as -[f, e].)
Combo u_formula(char k1, int i, int j, char k2, int k, int l) {
  auto d = [](int a, int b) { return a == b ? 1.0 : 0.0; };
  Combo out;
  if (k1 == 'e' && k2 == 'e') {
    add_to(out, u_canon('e', i, l), d(j, k));
    add_to(out, u_canon('e', k, j), -d(i, l));
    add_to(out, u_canon('e', j, l), -d(i, k));
    add_to(out, u_canon('e', i, k), -d(j, l));
  } else if (k1 == 'f' && k2 == 'f') {
    add_to(out, u_canon('e', i, l), -d(j, k));
    add_to(out, u_canon('e', k, j), d(i, l));
    add_to(out, u_canon('e', j, l), -d(i, k));
    add_to(out, u_canon('e', i, k), -d(j, l));
  } else if (k1 == 'f' && k2 == 'e') {
    add_to(out, u_canon('f', i, l), d(j, k));
    add_to(out, u_canon('f', k, j), -d(i, l));
    add_to(out, u_canon('f', j, l), -d(i, k));
    add_to(out, u_canon('f', i, k), -d(j, l));
  } else {  // [e, f] = -[f, e]
    Combo rev = u_formula('f', k, l, 'e', i, j);
    add_to(out, rev, -1.0);
  }
  return out;
}

ValidationReport validate_u(const LieBasis& basis) {
  ValidationReport report;
  report.lemma = to_string(BracketLemma::u_table);
  struct Gen {
    char kind;
    int i, j;
  };
  std::vector<Gen> gens;
  for (int i = 1; i <= basis.n; ++i)
    for (int j = i; j <= basis.n; ++j) {
      if (i < j) gens.push_back({'e', i, j});
      gens.push_back({'f', i, j});
    }
  for (const Gen& x : gens)
    for (const Gen& y : gens) {
      if (x.kind == y.kind && x.i == y.i && x.j == y.j) continue;
      bool shared =
          (x.i == y.i || x.i == y.j || x.j == y.i || x.j == y.j);
      report.entries.push_back(
          make_entry(basis, pair_label(std::string(1, x.kind), x.i, x.j),
                     pair_label(std::string(1, y.kind), y.i, y.j),
                     u_formula(x.kind, x.i, x.j, y.kind, y.i, y.j), shared));
    }
  return report;
}

// The ten sp(n) relations, evaluated on all permutations of distinct
// (a, b, c) using e_ba = -e_ab and f/g/h symmetric in their indices:
//   [e_ab,e_bc]=e_ac  [e_ab,f_bc]=f_ac  [e_ab,g_bc]=g_ac  [e_ab,h_bc]=h_ac
//   [f_ab,f_bc]=-e_ac [f_ab,g_bc]=-h_ac [f_ab,h_bc]=g_ac  [g_ab,g_bc]=-e_ac
//   [g_ab,h_bc]=-f_ac [h_ab,h_bc]=-e_ac
ValidationReport validate_sp(const LieBasis& basis) {
  ValidationReport report;
  report.lemma = to_string(BracketLemma::sp_table);
  struct Rel {
    char x, y, z;
    double sign;
  };
  const std::vector<Rel> rels = {
      {'e', 'e', 'e', 1.0},  {'e', 'f', 'f', 1.0},  {'e', 'g', 'g', 1.0},
      {'e', 'h', 'h', 1.0},  {'f', 'f', 'e', -1.0}, {'f', 'g', 'h', -1.0},
      {'f', 'h', 'g', 1.0},  {'g', 'g', 'e', -1.0}, {'g', 'h', 'f', -1.0},
      {'h', 'h', 'e', -1.0}};
  const int n = basis.n;
  for (const Rel& r : rels)
    for (int a = 1; a <= n; ++a)
      for (int b = 1; b <= n; ++b)
        for (int c = 1; c <= n; ++c) {
          if (a == b || b == c || a == c) continue;
          // Left side [x_ab, y_bc] with arbitrary index order; bring both
          // factors to canonical basis elements.
          Combo xc = sp_canon(r.x, a, b);
          Combo yc = sp_canon(r.y, b, c);
          if (xc.empty() || yc.empty()) continue;
          double sx = xc.begin()->second, sy = yc.begin()->second;
          Combo expected = sp_canon(r.z, a, c, r.sign);
          // Scale the canonical-basis bracket by the rewriting signs.
          Combo scaled;
          add_to(scaled, expected, 1.0 / (sx * sy));
          report.entries.push_back(make_entry(
              basis, xc.begin()->first, yc.begin()->first, scaled, true));
        }
  return report;
}

// Relations among u11 = f(1,1)/2, k = g(1,1)/2, mu = h(1,1)/2 and the
// first-row generators of sp(n):
//   [u,e_1b]=f_1b [u,f_1b]=-e_1b [u,k]=-2mu [u,mu]=2k [u,g_1b]=-h_1b
//   [u,h_1b]=g_1b [e_1b,k]=-g_1b [e_1b,mu]=-h_1b [f_1b,k]=-h_1b
//   [f_1b,mu]=g_1b [g_1b,k]=e_1b [g_1b,mu]=-f_1b [h_1b,k]=f_1b [h_1b,mu]=e_1b
//
// Expressed in the ambient basis (u = f(1,1)/2 etc.) each relation scales by
// the corresponding powers of 2, which make_entry handles through the combo
// coefficients.
ValidationReport validate_sphere_sp(const LieBasis& basis) {
  ValidationReport report;
  report.lemma = to_string(BracketLemma::sphere_sp_table);
  if (basis.n < 2) return report;  // needs at least one off-diagonal column
  const std::string u = pair_label("f", 1, 1);
  const std::string k = pair_label("g", 1, 1);
  const std::string mu = pair_label("h", 1, 1);

  // [u, k] = -2mu and [u, mu] = 2k: in ambient terms
  // [f(1,1), g(1,1)] = 4[u, k] = -8mu = -4 h(1,1).
  auto single = [](const std::string& lab, double c) {
    return Combo{{lab, c}};
  };
  report.entries.push_back(make_entry(basis, u, k, single(mu, -4.0), true));
  report.entries.push_back(make_entry(basis, u, mu, single(k, 4.0), true));

  for (int b = 2; b <= basis.n; ++b) {
    const std::string e1b = pair_label("e", 1, b);
    const std::string f1b = pair_label("f", 1, b);
    const std::string g1b = pair_label("g", 1, b);
    const std::string h1b = pair_label("h", 1, b);
    // [f(1,1), x_1b] = 2 [u, x_1b]
    report.entries.push_back(make_entry(basis, u, e1b, single(f1b, 2.0), true));
    report.entries.push_back(
        make_entry(basis, u, f1b, single(e1b, -2.0), true));
    report.entries.push_back(
        make_entry(basis, u, g1b, single(h1b, -2.0), true));
    report.entries.push_back(make_entry(basis, u, h1b, single(g1b, 2.0), true));
    // [x_1b, g(1,1)] = 2 [x_1b, k]
    report.entries.push_back(
        make_entry(basis, e1b, k, single(g1b, -2.0), true));
    report.entries.push_back(
        make_entry(basis, f1b, k, single(h1b, -2.0), true));
    report.entries.push_back(make_entry(basis, g1b, k, single(e1b, 2.0), true));
    report.entries.push_back(make_entry(basis, h1b, k, single(f1b, 2.0), true));
    // [x_1b, h(1,1)] = 2 [x_1b, mu]
    report.entries.push_back(
        make_entry(basis, e1b, mu, single(h1b, -2.0), true));
    report.entries.push_back(
        make_entry(basis, f1b, mu, single(g1b, 2.0), true));
    report.entries.push_back(
        make_entry(basis, g1b, mu, single(f1b, -2.0), true));
    report.entries.push_back(
        make_entry(basis, h1b, mu, single(e1b, 2.0), true));
  }
  return report;
}

}  // namespace

BracketLemma lemma_from_string(const std::string& s) {
  if (s == "so-table" || s == "so") return BracketLemma::so_table;
  if (s == "u-table" || s == "u") return BracketLemma::u_table;
  if (s == "sp-table" || s == "sp") return BracketLemma::sp_table;
  if (s == "sphere-sp-table" || s == "sphere-sp")
    return BracketLemma::sphere_sp_table;
  throw InvalidInputError("unknown bracket table: " + s);
}

std::string to_string(BracketLemma lemma) {
  switch (lemma) {
    case BracketLemma::so_table:
      return "so-table";
    case BracketLemma::u_table:
      return "u-table";
    case BracketLemma::sp_table:
      return "sp-table";
    case BracketLemma::sphere_sp_table:
      return "sphere-sp-table";
  }
  return "?";
}

bool ValidationReport::all_match() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](const LemmaEntry& e) { return e.match; });
}

int ValidationReport::mismatch_count() const {
  return static_cast<int>(std::count_if(
      entries.begin(), entries.end(),
      [](const LemmaEntry& e) { return !e.match; }));
}

std::vector<LemmaEntry> ValidationReport::mismatches() const {
  std::vector<LemmaEntry> out;
  for (const LemmaEntry& e : entries)
    if (!e.match) out.push_back(e);
  return out;
}

ValidationReport validate_bracket_lemma(const LieBasis& basis,
                                        BracketLemma lemma) {
  switch (lemma) {
    case BracketLemma::so_table:
      if (basis.tag != AlgebraTag::so)
        throw IncompatibleElementsError("so-table requires an so(n) basis");
      return validate_so(basis);
    case BracketLemma::u_table:
      if (basis.tag != AlgebraTag::u)
        throw IncompatibleElementsError("u-table requires a u(n) basis");
      return validate_u(basis);
    case BracketLemma::sp_table:
      if (basis.tag != AlgebraTag::sp)
        throw IncompatibleElementsError("sp-table requires an sp(n) basis");
      return validate_sp(basis);
    case BracketLemma::sphere_sp_table:
      if (basis.tag != AlgebraTag::sp)
        throw IncompatibleElementsError(
            "sphere-sp-table requires an sp(n) basis");
      return validate_sphere_sp(basis);
  }
  throw InvalidInputError("unknown bracket table");
}

}  // namespace equigeo
