#include "covlie/realization.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <sstream>

#include "covlie/errors.hpp"
#include "covlie/parallel.hpp"

namespace covlie {

namespace {

const CycNumber& one() {
  static const CycNumber v = CycNumber::one();
  return v;
}

CycNumber int_cyc(long n) { return CycNumber::from_int(n); }

}  // namespace

GlS build_gl_S(const FinAbGroup& S) {
  const int n = S.size();
  const int dim = n * n;
  std::vector<std::string> labels;
  labels.reserve(dim);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      labels.push_back("E(" + S.element_name(a) + "," + S.element_name(b) + ")");

  auto idx = [n](int a, int b) { return a * n + b; };

  std::map<std::pair<int, int>, SparseVec> upper;
  for (int i = 0; i < dim; ++i) {
    int a = i / n, b = i % n;
    for (int j = i + 1; j < dim; ++j) {
      int c = j / n, d = j % n;
      // [E(a,b), E(c,d)] = delta_{b,c} E(a,d) - delta_{d,a} E(c,b)
      CycVec acc = cyc_vec_zero(dim);
      if (b == c) acc[idx(a, d)] += one();
      if (d == a) acc[idx(c, b)] -= one();
      SparseVec row = sparse_from_dense(acc);
      if (!row.empty()) upper[{i, j}] = std::move(row);
    }
  }

  GlS out;
  out.S = &S;
  out.algebra = std::make_shared<LieAlgebra>(LieAlgebra::from_upper_table(
      std::move(labels), static_cast<unsigned>(n), std::move(upper)));

  out.form.gram = CycMatrix(dim, dim);
  const CycNumber half = CycNumber::from_rational(Rational(1, 2));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) out.form.gram.at(idx(a, b), idx(b, a)) = half;

  out.tau.domain = out.algebra.get();
  out.tau.codomain = out.algebra.get();
  out.tau.matrix = CycMatrix(dim, dim);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) out.tau.matrix.at(idx(b, a), idx(a, b)) = -one();
  return out;
}

SubAlgebraOfGl build_A_S(const GlS& gl) {
  const FinAbGroup& S = *gl.S;
  const int n = S.size();
  std::set<int> doubled;
  for (int a = 0; a < n; ++a) doubled.insert(S.dbl(a));

  SubAlgebraOfGl out;
  std::vector<int> pos(gl.algebra->dim(), -1);
  std::vector<std::string> labels;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (!doubled.count(S.add(a, b))) continue;
      pos[gl.e_index(a, b)] = static_cast<int>(out.gl_indices.size());
      out.gl_indices.push_back(gl.e_index(a, b));
      labels.push_back(gl.algebra->basis_label(gl.e_index(a, b)));
    }
  }

  const int dim = static_cast<int>(out.gl_indices.size());
  std::map<std::pair<int, int>, SparseVec> upper;
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) {
      SparseVec row;
      for (const auto& [k, c] :
           gl.algebra->bracket_basis(out.gl_indices[i], out.gl_indices[j])) {
        if (pos[k] < 0) throw CovlieError("A_S is not closed under the bracket");
        row.emplace_back(pos[k], c);
      }
      if (!row.empty()) upper[{i, j}] = std::move(row);
    }
  }
  out.algebra = std::make_shared<LieAlgebra>(LieAlgebra::from_upper_table(
      std::move(labels), gl.algebra->scalar_order(), std::move(upper)));
  return out;
}

ASTau::Resolved ASTau::resolve(int alpha, int beta) const {
  const int n = S->size();
  int idx = canon_index_[alpha * n + beta];
  if (idx < 0) return {};
  return {idx, canon_sign_[alpha * n + beta]};
}

std::optional<CycVec> ASTau::from_gl_vector(const CycVec& v) const {
  const int dim = static_cast<int>(basis_pairs.size());
  CycVec coords = cyc_vec_zero(dim);
  CycVec residual = v;
  for (int t = 0; t < dim; ++t) {
    // leading support of Gt(a,b) is E(a+b, b-a) with coefficient one
    const auto& [a, b] = basis_pairs[t];
    int lead = S->add(a, b) * S->size() + S->sub(b, a);
    coords[t] = residual[lead];
    if (!coords[t].is_zero())
      cyc_vec_add_scaled(residual, -coords[t], embedding[t]);
  }
  if (!cyc_vec_is_zero(residual)) return std::nullopt;
  return coords;
}

ASTau build_A_S_tau(const GlS& gl) {
  const FinAbGroup& S = *gl.S;
  const int n = S.size();
  std::vector<int> s0 = S.subgroup_s0();
  std::set<int> s0_set(s0.begin(), s0.end());

  ASTau out;
  out.S = &S;
  out.canon_index_.assign(static_cast<size_t>(n) * n, -1);
  out.canon_sign_.assign(static_cast<size_t>(n) * n, 1);

  // orbit of (a,b): plus part (a+g, b+g), minus part (-a+g, b+g), g in S^0
  auto orbit_min = [&](int a, int b) {
    std::pair<int, int> best{n, n};
    int best_sign = 1;
    for (int g : s0) {
      std::pair<int, int> p{S.add(a, g), S.add(b, g)};
      if (p < best) { best = p; best_sign = 1; }
      std::pair<int, int> m{S.add(S.neg(a), g), S.add(b, g)};
      if (m < best) { best = m; best_sign = -1; }
    }
    return std::make_pair(best, best_sign);
  };

  std::vector<std::string> labels;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (s0_set.count(a)) continue;  // Gt(a,b) = 0 when 2a = 0
      auto [best, sign] = orbit_min(a, b);
      if (best == std::make_pair(a, b) && sign == 1) {
        out.basis_pairs.emplace_back(a, b);
        labels.push_back("Gt(" + S.element_name(a) + "," + S.element_name(b) + ")");
      }
    }
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (s0_set.count(a)) continue;
      auto [best, sign] = orbit_min(a, b);
      auto it = std::lower_bound(out.basis_pairs.begin(), out.basis_pairs.end(), best);
      out.canon_index_[a * n + b] = static_cast<int>(it - out.basis_pairs.begin());
      out.canon_sign_[a * n + b] = sign;
    }
  }

  const int dim = static_cast<int>(out.basis_pairs.size());
  // every nonzero orbit has 2 |S^0| members
  assert(dim * 2 * static_cast<int>(s0.size()) ==
         n * (n - static_cast<int>(s0.size())));

  // embeddings, with disjoint supports across the basis
  std::set<int> support_seen;
  for (const auto& [a, b] : out.basis_pairs) {
    CycVec v = cyc_vec_zero(gl.algebra->dim());
    int p = S.add(a, b), q = S.sub(b, a);
    v[gl.e_index(p, q)] += one();
    v[gl.e_index(q, p)] -= one();
    for (int supp : {gl.e_index(p, q), gl.e_index(q, p)}) {
      if (!support_seen.insert(supp).second)
        throw CovlieError("tau fixed basis supports are not disjoint");
    }
    out.embedding.push_back(std::move(v));
  }

  std::map<std::pair<int, int>, SparseVec> upper;
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) {
      CycVec br = gl.algebra->bracket(out.embedding[i], out.embedding[j]);
      auto coords = out.from_gl_vector(br);
      if (!coords) throw CovlieError("bracket of tau fixed elements leaves the span");
      SparseVec row = sparse_from_dense(*coords);
      if (!row.empty()) upper[{i, j}] = std::move(row);
    }
  }
  out.algebra = std::make_shared<LieAlgebra>(LieAlgebra::from_upper_table(
      std::move(labels), gl.algebra->scalar_order(), std::move(upper)));

  // group action sigma_gamma(Gt(a,b)) = Gt(a, b+gamma)
  for (int g = 0; g < n; ++g) {
    LinearMap m;
    m.domain = out.algebra.get();
    m.codomain = out.algebra.get();
    m.matrix = CycMatrix(dim, dim);
    for (int t = 0; t < dim; ++t) {
      const auto& [a, b] = out.basis_pairs[t];
      auto r = out.resolve(a, S.add(b, g));
      if (r.index < 0)
        throw CovlieError("group action maps a basis element to zero");
      m.matrix.at(r.index, t) = int_cyc(r.sign);
    }
    std::string why;
    if (!is_automorphism(m, &why))
      throw CovlieError("sigma_" + S.element_name(g) + " is not an automorphism: " + why);
    out.s_action.push_back(std::move(m));
  }

  out.restricted_form.gram = CycMatrix(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      out.restricted_form.gram.at(i, j) =
          gl.form.eval(out.embedding[i], out.embedding[j]);
  return out;
}

CheckResult check_astau_generator_bracket(const GlS& gl, const ASTau& at) {
  const FinAbGroup& S = *gl.S;
  const int n = S.size();
  const int dim = at.algebra->dim();
  const long long total = static_cast<long long>(n) * n * n * n;

  auto gt_vec = [&](int a, int b) {
    CycVec v = cyc_vec_zero(dim);
    auto r = at.resolve(a, b);
    if (r.index >= 0) v[r.index] = int_cyc(r.sign);
    return v;
  };

  auto probe = [&](long long idx) -> std::optional<std::string> {
    int nu = static_cast<int>(idx % n);
    int mu = static_cast<int>((idx / n) % n);
    int beta = static_cast<int>((idx / (n * n)) % n);
    int alpha = static_cast<int>(idx / (static_cast<long long>(n) * n * n));

    CycVec lhs;
    {
      auto r1 = at.resolve(alpha, beta);
      auto r2 = at.resolve(mu, nu);
      if (r1.index < 0 || r2.index < 0) {
        lhs = cyc_vec_zero(dim);
      } else {
        lhs = dense_from_sparse(at.algebra->bracket_basis(r1.index, r2.index), dim);
        if (r1.sign * r2.sign < 0)
          for (auto& x : lhs) x = -x;
      }
    }

    // closed bracket law on generators
    CycVec rhs = cyc_vec_zero(dim);
    int am = S.add(alpha, mu), amm = S.sub(alpha, mu);
    if (am == S.sub(beta, nu)) {
      CycVec t = gt_vec(am, S.add(nu, alpha));
      for (int u = 0; u < dim; ++u) rhs[u] += t[u];
    }
    if (am == S.sub(nu, beta)) {
      CycVec t = gt_vec(am, S.add(mu, beta));
      for (int u = 0; u < dim; ++u) rhs[u] -= t[u];
    }
    if (amm == S.sub(nu, beta)) {
      CycVec t = gt_vec(amm, S.sub(beta, mu));
      for (int u = 0; u < dim; ++u) rhs[u] += t[u];
    }
    if (amm == S.sub(beta, nu)) {
      CycVec t = gt_vec(amm, S.add(alpha, nu));
      for (int u = 0; u < dim; ++u) rhs[u] -= t[u];
    }

    if (!cyc_vec_eq(lhs, rhs)) {
      std::ostringstream w;
      w << "generator bracket mismatch at (" << S.element_name(alpha) << ","
        << S.element_name(beta) << ")x(" << S.element_name(mu) << ","
        << S.element_name(nu) << ")";
      return w.str();
    }
    return std::nullopt;
  };

  SweepOutcome out = run_sweep(total, probe);
  CheckResult r;
  r.name = "astau_generator_bracket";
  r.tuple_count = total;
  if (!out.ok()) {
    r.status = "fail";
    r.witness = out.witness;
  }
  return r;
}

namespace {

// One term of the four delta product on K.
struct KTerm {
  int a, b;
  int sign;
};

std::vector<KTerm> four_delta_terms(const FinAbGroup& S, int alpha, int beta,
                                    int mu, int nu) {
  std::vector<KTerm> out;
  int am = S.add(alpha, mu), amm = S.sub(alpha, mu);
  if (am == S.sub(nu, beta)) out.push_back({am, S.sub(nu, alpha), +1});
  if (am == S.sub(beta, nu)) out.push_back({am, S.add(alpha, nu), -1});
  if (amm == S.sub(nu, beta)) out.push_back({amm, S.sub(nu, alpha), -1});
  if (amm == S.sub(beta, nu)) out.push_back({amm, S.add(alpha, nu), +1});
  return out;
}

}  // namespace

GS::Resolved GS::resolve(int alpha, int beta) const {
  const int n = S->size();
  int idx = canon_index_[alpha * n + beta];
  if (idx < 0) return {};
  return {idx, canon_sign_[alpha * n + beta]};
}

GS build_g_S(const FinAbGroup& S) {
  const int n = S.size();
  std::vector<int> s0 = S.subgroup_s0();
  std::set<int> s0_set(s0.begin(), s0.end());

  GS out;
  out.S = &S;
  out.construction.suite = "g_S construction";
  out.construction.group = S.to_string();

  // half set: representatives of {a, -a} with 2a != 0
  out.canon_index_.assign(static_cast<size_t>(n) * n, -1);
  out.canon_sign_.assign(static_cast<size_t>(n) * n, 1);
  std::vector<std::string> labels;
  for (int a = 0; a < n; ++a) {
    if (s0_set.count(a) || a > S.neg(a)) continue;
    for (int b = 0; b < n; ++b) {
      out.basis_pairs.emplace_back(a, b);
      labels.push_back("d(" + S.element_name(a) + "," + S.element_name(b) + ")");
    }
  }
  for (int a = 0; a < n; ++a) {
    if (s0_set.count(a)) continue;
    int rep = std::min(a, S.neg(a));
    int sign = (a == rep) ? 1 : -1;
    for (int b = 0; b < n; ++b) {
      auto it = std::lower_bound(out.basis_pairs.begin(), out.basis_pairs.end(),
                                 std::make_pair(rep, b));
      out.canon_index_[a * n + b] = static_cast<int>(it - out.basis_pairs.begin());
      out.canon_sign_[a * n + b] = sign;
    }
  }
  const int dim = static_cast<int>(out.basis_pairs.size());

  // the relation subspace J inside K, spanned by F(-a,b) + F(a,b)
  Subspace J(n * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      CycVec row = cyc_vec_zero(n * n);
      row[S.neg(a) * n + b] += one();
      row[a * n + b] += one();
      J.insert(std::move(row));
    }
  }
  if (J.dim() + dim == n * n)
    out.construction.add_pass("half_set_basis_rank", n * n);
  else
    out.construction.add_fail("half_set_basis_rank", n * n,
                              "rank(J) = " + std::to_string(J.dim()) +
                                  ", labels = " + std::to_string(dim));

  // projection K -> K/J in the half set coordinates
  auto project = [&out](const std::vector<KTerm>& terms) {
    CycVec v = cyc_vec_zero(static_cast<int>(out.basis_pairs.size()));
    for (const auto& t : terms) {
      auto r = out.resolve(t.a, t.b);
      if (r.index >= 0) v[r.index] += int_cyc(t.sign * r.sign);
    }
    return v;
  };

  // J is a two sided ideal of (K, *)
  {
    long long fails = 0;
    std::string witness;
    for (int a = 0; a < n && fails == 0; ++a) {
      for (int b = 0; b < n && fails == 0; ++b) {
        for (int m = 0; m < n && fails == 0; ++m) {
          for (int v = 0; v < n; ++v) {
            auto left = four_delta_terms(S, m, v, S.neg(a), b);
            auto more = four_delta_terms(S, m, v, a, b);
            left.insert(left.end(), more.begin(), more.end());
            auto right = four_delta_terms(S, S.neg(a), b, m, v);
            auto more2 = four_delta_terms(S, a, b, m, v);
            right.insert(right.end(), more2.begin(), more2.end());
            if (!cyc_vec_is_zero(project(left)) || !cyc_vec_is_zero(project(right))) {
              ++fails;
              witness = "relation (" + S.element_name(a) + "," + S.element_name(b) +
                        ") against F(" + S.element_name(m) + "," +
                        S.element_name(v) + ")";
              break;
            }
          }
        }
      }
    }
    long long total = static_cast<long long>(n) * n * n * n;
    if (fails == 0)
      out.construction.add_pass("J_two_sided_ideal", total);
    else
      out.construction.add_fail("J_two_sided_ideal", total, witness);
  }

  // quotient product table on the half set basis
  std::map<std::pair<int, int>, SparseVec> table;
  for (int i = 0; i < dim; ++i) {
    const auto& [a, b] = out.basis_pairs[i];
    for (int j = 0; j < dim; ++j) {
      const auto& [m, v] = out.basis_pairs[j];
      SparseVec row = sparse_from_dense(project(four_delta_terms(S, a, b, m, v)));
      if (!row.empty()) table[{i, j}] = std::move(row);
    }
  }
  out.algebra = std::make_shared<LieAlgebra>(LieAlgebra::from_product_table(
      std::move(labels), static_cast<unsigned>(n), table));
  out.construction.add_pass("antisymmetry", static_cast<long long>(dim) * dim);

  out.construction.checks.push_back(check_jacobi(*out.algebra));

  // bracket of raw generators agrees with resolve-then-bracket
  {
    const long long total = static_cast<long long>(n) * n * n * n;
    auto probe = [&](long long idx) -> std::optional<std::string> {
      int nu = static_cast<int>(idx % n);
      int mu = static_cast<int>((idx / n) % n);
      int beta = static_cast<int>((idx / (n * n)) % n);
      int alpha = static_cast<int>(idx / (static_cast<long long>(n) * n * n));
      CycVec direct = gs_presentation_bracket(out, alpha, beta, mu, nu);
      CycVec via_table = cyc_vec_zero(dim);
      auto r1 = out.resolve(alpha, beta);
      auto r2 = out.resolve(mu, nu);
      if (r1.index >= 0 && r2.index >= 0) {
        via_table =
            dense_from_sparse(out.algebra->bracket_basis(r1.index, r2.index), dim);
        if (r1.sign * r2.sign < 0)
          for (auto& x : via_table) x = -x;
      }
      if (!cyc_vec_eq(direct, via_table))
        return "generator pair (" + S.element_name(alpha) + "," +
               S.element_name(beta) + ")x(" + S.element_name(mu) + "," +
               S.element_name(nu) + ")";
      return std::nullopt;
    };
    SweepOutcome sw = run_sweep(total, probe);
    CheckResult r;
    r.name = "generator_bracket_law";
    r.tuple_count = total;
    if (!sw.ok()) {
      r.status = "fail";
      r.witness = sw.witness;
    }
    out.construction.checks.push_back(r);
  }

  return out;
}

CycVec gs_presentation_bracket(const GS& g, int alpha, int beta, int mu, int nu) {
  const FinAbGroup& S = *g.S;
  CycVec v = cyc_vec_zero(g.algebra->dim());
  for (const auto& t : four_delta_terms(S, alpha, beta, mu, nu)) {
    auto r = g.resolve(t.a, t.b);
    if (r.index >= 0) v[r.index] += int_cyc(t.sign * r.sign);
  }
  return v;
}

namespace {

CycNumber chi_form_raw(const FinAbGroup& S, const Character& chi, int alpha, int beta,
                       int mu, int nu) {
  CycNumber out = CycNumber::zero(chi.order());
  int sum = S.add(alpha, mu);
  int diff = S.sub(alpha, mu);
  if (S.dbl(sum) == 0 && sum == S.sub(beta, nu)) out += chi.value(sum);
  if (S.dbl(diff) == 0 && diff == S.sub(beta, nu)) out -= chi.value(diff);
  return out;
}

}  // namespace

BilinearForm chi_form(const GS& g, const Character& chi) {
  const FinAbGroup& S = *g.S;
  const int dim = g.algebra->dim();
  BilinearForm B;
  B.gram = CycMatrix(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const auto& [a, b] = g.basis_pairs[i];
    for (int j = 0; j < dim; ++j) {
      const auto& [m, v] = g.basis_pairs[j];
      B.gram.at(i, j) = chi_form_raw(S, chi, a, b, m, v);
      // well defined across representative choices
      CycNumber alt = -chi_form_raw(S, chi, S.neg(a), b, m, v);
      CycNumber alt2 = -chi_form_raw(S, chi, a, b, S.neg(m), v);
      if (alt != B.gram.at(i, j) || alt2 != B.gram.at(i, j))
        throw CovlieError("character form is not well defined on representatives");
    }
  }
  return B;
}

std::vector<LinearMap> s_action_on_gS(const GS& g) {
  const FinAbGroup& S = *g.S;
  const int dim = g.algebra->dim();
  std::vector<LinearMap> out;
  for (int gamma = 0; gamma < S.size(); ++gamma) {
    LinearMap m;
    m.domain = g.algebra.get();
    m.codomain = g.algebra.get();
    m.matrix = CycMatrix(dim, dim);
    for (int t = 0; t < dim; ++t) {
      const auto& [a, b] = g.basis_pairs[t];
      auto r = g.resolve(a, S.add(b, gamma));
      m.matrix.at(r.index, t) = int_cyc(r.sign);
    }
    std::string why;
    if (!is_automorphism(m, &why))
      throw CovlieError("translation action is not an automorphism: " + why);
    out.push_back(std::move(m));
  }
  return out;
}

LinearMap pi_hom(const GS& g, const ASTau& at) {
  LinearMap m;
  m.domain = g.algebra.get();
  m.codomain = at.algebra.get();
  m.matrix = CycMatrix(at.algebra->dim(), g.algebra->dim());
  for (int t = 0; t < g.algebra->dim(); ++t) {
    const auto& [a, b] = g.basis_pairs[t];
    auto r = at.resolve(a, b);
    if (r.index >= 0) m.matrix.at(r.index, t) = int_cyc(-r.sign);
  }
  return m;
}

IdealBlocks ideal_I_and_blocks(const GS& g, const ASTau& at) {
  const FinAbGroup& S = *g.S;
  const int n = S.size();
  const int dim = g.algebra->dim();

  IdealBlocks out{Subspace(dim), QuotientResult{}, LinearMap{}, {}};
  std::vector<int> s0 = S.subgroup_s0();
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int gamma : s0) {
        CycVec row = cyc_vec_zero(dim);
        auto r1 = g.resolve(S.add(a, gamma), S.add(b, gamma));
        auto r2 = g.resolve(a, b);
        if (r1.index >= 0) row[r1.index] += int_cyc(r1.sign);
        if (r2.index >= 0) row[r2.index] -= int_cyc(r2.sign);
        if (!cyc_vec_is_zero(row)) out.ideal_I.insert(std::move(row));
      }
    }
  }

  out.quotient = quotient(*g.algebra, out.ideal_I);

  // induced map to A_S^tau: must kill the ideal
  LinearMap pi = pi_hom(g, at);
  for (const auto& row : out.ideal_I.basis_rows()) {
    if (!cyc_vec_is_zero(pi.apply(row)))
      throw CovlieError("pi does not vanish on the ideal");
  }
  out.pi_bar.domain = out.quotient.algebra.get();
  out.pi_bar.codomain = at.algebra.get();
  out.pi_bar.matrix = CycMatrix(at.algebra->dim(), out.quotient.algebra->dim());
  for (int t = 0; t < out.quotient.algebra->dim(); ++t) {
    CycVec e = cyc_vec_zero(dim);
    e[out.quotient.coords[t]] = one();
    CycVec img = pi.apply(e);
    for (int r = 0; r < at.algebra->dim(); ++r) out.pi_bar.matrix.at(r, t) = img[r];
  }

  // block decomposition of A_S^tau by the coset of a+b
  auto cosets = S.coset_decomposition_2s();
  std::vector<int> coset_of(n, -1);
  for (size_t j = 0; j < cosets.parts.size(); ++j)
    for (int e : cosets.parts[j]) coset_of[e] = static_cast<int>(j);

  std::vector<std::vector<int>> members(cosets.parts.size());
  for (int t = 0; t < at.algebra->dim(); ++t) {
    const auto& [a, b] = at.basis_pairs[t];
    members[coset_of[S.add(a, b)]].push_back(t);
  }

  for (size_t j = 0; j < members.size(); ++j) {
    BlockData block;
    block.coset_index = static_cast<int>(j);
    block.astau_indices = members[j];
    const int bdim = static_cast<int>(members[j].size());
    std::vector<int> pos(at.algebra->dim(), -1);
    for (int t = 0; t < bdim; ++t) pos[members[j][t]] = t;

    std::vector<std::string> labels;
    for (int t : members[j]) labels.push_back(at.algebra->basis_label(t));
    std::map<std::pair<int, int>, SparseVec> upper;
    for (int x = 0; x < bdim; ++x) {
      for (int y = x + 1; y < bdim; ++y) {
        SparseVec row;
        for (const auto& [k, c] :
             at.algebra->bracket_basis(members[j][x], members[j][y])) {
          if (pos[k] < 0) throw CovlieError("block is not closed under the bracket");
          row.emplace_back(pos[k], c);
        }
        if (!row.empty()) upper[{x, y}] = std::move(row);
      }
    }
    block.algebra = LieAlgebra::from_upper_table(
        std::move(labels), at.algebra->scalar_order(), std::move(upper));

    // plane rotation Cartan over consecutive pairs of the coset
    const auto& part = cosets.parts[j];
    for (size_t p = 0; p + 1 < part.size(); p += 2) {
      int u = part[p], v = part[p + 1];
      CycVec glv = cyc_vec_zero(n * n);
      glv[u * n + v] += one();
      glv[v * n + u] -= one();
      auto coords = at.from_gl_vector(glv);
      if (!coords) throw CovlieError("plane rotation is not in the tau fixed span");
      CycVec local = cyc_vec_zero(bdim);
      for (int t = 0; t < at.algebra->dim(); ++t) {
        if ((*coords)[t].is_zero()) continue;
        if (pos[t] < 0) throw CovlieError("plane rotation leaves its block");
        local[pos[t]] = (*coords)[t];
      }
      block.cartan.push_back(std::move(local));
    }
    out.blocks.push_back(std::move(block));
  }
  return out;
}

ShiftAlgebra build_shift_algebra(const FinAbGroup& S, const Character* chi) {
  const int n = S.size();
  const int dim = n * n;
  ShiftAlgebra out;
  out.S = &S;

  auto prod = [&](int a, int b, int m, int v) -> std::optional<int> {
    if (v != S.add(S.add(a, b), m)) return std::nullopt;
    return S.add(a, m) * n + S.add(b, m);
  };

  std::vector<std::string> labels;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      labels.push_back("F(" + S.element_name(a) + "," + S.element_name(b) + ")");

  std::map<std::pair<int, int>, SparseVec> upper;
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) {
      CycVec acc = cyc_vec_zero(dim);
      if (auto k = prod(i / n, i % n, j / n, j % n)) acc[*k] += one();
      if (auto k = prod(j / n, j % n, i / n, i % n)) acc[*k] -= one();
      SparseVec row = sparse_from_dense(acc);
      if (!row.empty()) upper[{i, j}] = std::move(row);
    }
  }
  out.algebra = std::make_shared<LieAlgebra>(LieAlgebra::from_upper_table(
      std::move(labels), 1, std::move(upper)));

  out.involution.domain = out.algebra.get();
  out.involution.codomain = out.algebra.get();
  out.involution.matrix = CycMatrix(dim, dim);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      out.involution.matrix.at(out.f_index(S.neg(a), b), out.f_index(a, b)) = -one();

  if (chi) {
    // <F(a,b), F(m,v)> = chi(a+m) [2(a+m) = 0] [a+m = b-v], the trace of the
    // product against the 2-torsion weight
    BilinearForm B;
    B.gram = CycMatrix(dim, dim);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int m = 0; m < n; ++m)
          for (int v = 0; v < n; ++v) {
            int sum = S.add(a, m);
            if (S.dbl(sum) != 0 || sum != S.sub(b, v)) continue;
            B.gram.at(out.f_index(a, b), out.f_index(m, v)) = chi->value(sum);
          }
    out.form = std::move(B);
  }
  return out;
}

CheckResult check_g_equality_classes(const GlS& gl) {
  const FinAbGroup& S = *gl.S;
  const int n = S.size();
  std::vector<int> s0 = S.subgroup_s0();
  std::set<int> s0_set(s0.begin(), s0.end());
  const long long total = static_cast<long long>(n) * n * n * n;

  auto probe = [&](long long idx) -> std::optional<std::string> {
    int b2 = static_cast<int>(idx % n);
    int a2 = static_cast<int>((idx / n) % n);
    int b1 = static_cast<int>((idx / (n * n)) % n);
    int a1 = static_cast<int>(idx / (static_cast<long long>(n) * n * n));
    bool same_e =
        (S.add(a1, b1) == S.add(a2, b2)) && (S.sub(b1, a1) == S.sub(b2, a2));
    int delta = S.sub(a1, a2);
    bool shifted = s0_set.count(delta) && S.sub(b1, b2) == delta;
    if (same_e != shifted)
      return "pairs (" + S.element_name(a1) + "," + S.element_name(b1) + ") and (" +
             S.element_name(a2) + "," + S.element_name(b2) + ")";
    return std::nullopt;
  };

  SweepOutcome sw = run_sweep(total, probe);
  CheckResult r;
  r.name = "g_equality_classes";
  r.tuple_count = total;
  if (!sw.ok()) {
    r.status = "fail";
    r.witness = sw.witness;
  }
  return r;
}

}  // namespace covlie
