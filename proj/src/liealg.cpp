#include "covlie/liealg.hpp"

#include <algorithm>
#include <sstream>

#include "covlie/errors.hpp"
#include "covlie/parallel.hpp"

namespace covlie {

SparseVec sparse_from_dense(const CycVec& v) {
  SparseVec out;
  for (size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) out.emplace_back(static_cast<int>(i), v[i]);
  return out;
}

CycVec dense_from_sparse(const SparseVec& v, int dim) {
  CycVec out = cyc_vec_zero(dim);
  for (const auto& [i, c] : v) out[i] += c;
  return out;
}

namespace {

SparseVec sparse_negate(SparseVec v) {
  for (auto& [i, c] : v) c = -c;
  return v;
}

SparseVec sparse_normalize(const SparseVec& v) {
  SparseVec out = v;
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVec merged;
  for (auto& [i, c] : out) {
    if (!merged.empty() && merged.back().first == i)
      merged.back().second += c;
    else
      merged.emplace_back(i, c);
  }
  SparseVec cleaned;
  for (auto& [i, c] : merged)
    if (!c.is_zero()) cleaned.emplace_back(i, c);
  return cleaned;
}

}  // namespace

std::optional<CycVec> BracketSpace::try_bracket(const CycVec& x, const CycVec& y) const {
  CycVec out = cyc_vec_zero(dim());
  for (int i = 0; i < dim(); ++i) {
    if (x[i].is_zero()) continue;
    for (int j = 0; j < dim(); ++j) {
      if (y[j].is_zero()) continue;
      auto row = try_bracket_basis(i, j);
      if (!row) return std::nullopt;
      CycNumber c = x[i] * y[j];
      for (const auto& [k, v] : *row) out[k] += c * v;
    }
  }
  return out;
}

LieAlgebra LieAlgebra::from_product_table(
    std::vector<std::string> labels, unsigned scalar_order,
    const std::map<std::pair<int, int>, SparseVec>& table) {
  const int n = static_cast<int>(labels.size());
  std::map<std::pair<int, int>, SparseVec> upper;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      SparseVec ij, ji;
      if (auto it = table.find({i, j}); it != table.end()) ij = sparse_normalize(it->second);
      if (auto it = table.find({j, i}); it != table.end()) ji = sparse_normalize(it->second);
      if (i == j) {
        if (!ij.empty())
          throw CovlieError("product table not alternating at (" +
                            labels[i] + ", " + labels[i] + ")");
        continue;
      }
      if (sparse_normalize(ij) != sparse_normalize(sparse_negate(ji)))
        throw CovlieError("product table not antisymmetric at (" + labels[i] +
                          ", " + labels[j] + ")");
      if (!ij.empty()) upper[{i, j}] = std::move(ij);
    }
  }
  return from_upper_table(std::move(labels), scalar_order, std::move(upper));
}

LieAlgebra LieAlgebra::from_upper_table(
    std::vector<std::string> labels, unsigned scalar_order,
    std::map<std::pair<int, int>, SparseVec> upper) {
  LieAlgebra L;
  L.labels_ = std::move(labels);
  L.scalar_order_ = scalar_order;
  for (auto& [key, val] : upper) {
    auto v = sparse_normalize(val);
    if (!v.empty()) L.upper_[key] = std::move(v);
  }
  return L;
}

std::optional<SparseVec> LieAlgebra::try_bracket_basis(int i, int j) const {
  return bracket_basis(i, j);
}

SparseVec LieAlgebra::bracket_basis(int i, int j) const {
  if (i == j) return {};
  bool flip = i > j;
  if (flip) std::swap(i, j);
  auto it = upper_.find({i, j});
  if (it == upper_.end()) return {};
  return flip ? sparse_negate(it->second) : it->second;
}

CycVec LieAlgebra::bracket(const CycVec& x, const CycVec& y) const {
  CycVec out = cyc_vec_zero(dim());
  for (int i = 0; i < dim(); ++i) {
    if (x[i].is_zero()) continue;
    for (int j = 0; j < dim(); ++j) {
      if (y[j].is_zero()) continue;
      CycNumber c = x[i] * y[j];
      for (const auto& [k, v] : bracket_basis(i, j)) out[k] += c * v;
    }
  }
  return out;
}

CycMatrix LieAlgebra::ad_matrix(const CycVec& x) const {
  CycMatrix m(dim(), dim());
  for (int j = 0; j < dim(); ++j) {
    for (int i = 0; i < dim(); ++i) {
      if (x[i].is_zero()) continue;
      for (const auto& [k, v] : bracket_basis(i, j)) m.at(k, j) += x[i] * v;
    }
  }
  return m;
}

CycNumber BilinearForm::eval(const CycVec& x, const CycVec& y) const {
  CycNumber out = CycNumber::zero();
  for (int i = 0; i < gram.rows(); ++i) {
    if (x[i].is_zero()) continue;
    for (int j = 0; j < gram.cols(); ++j) {
      if (y[j].is_zero() || gram.at(i, j).is_zero()) continue;
      out += x[i] * gram.at(i, j) * y[j];
    }
  }
  return out;
}

CycVec LinearMap::apply_basis(int j) const {
  CycVec out = cyc_vec_zero(matrix.rows());
  for (int i = 0; i < matrix.rows(); ++i) out[i] = matrix.at(i, j);
  return out;
}

LinearMap LinearMap::compose(const LinearMap& inner) const {
  LinearMap out;
  out.domain = inner.domain;
  out.codomain = codomain;
  out.matrix = matrix.multiply(inner.matrix);
  return out;
}

CheckResult check_jacobi(const BracketSpace& L, const std::string& name) {
  const int n = L.dim();
  const long long total = static_cast<long long>(n) * n * n;

  auto probe = [&](long long idx) -> std::optional<std::string> {
    int k = static_cast<int>(idx % n);
    int j = static_cast<int>((idx / n) % n);
    int i = static_cast<int>(idx / (static_cast<long long>(n) * n));
    if (!(i < j && j < k)) return std::nullopt;
    auto term = [&](int a, int b, int c) -> std::optional<CycVec> {
      auto ab = L.try_bracket_basis(a, b);
      if (!ab) return std::nullopt;
      CycVec out = cyc_vec_zero(n);
      for (const auto& [t, coef] : *ab) {
        auto tc = L.try_bracket_basis(t, c);
        if (!tc) return std::nullopt;
        for (const auto& [u, w] : *tc) out[u] += coef * w;
      }
      return out;
    };
    auto t1 = term(i, j, k);
    auto t2 = term(j, k, i);
    auto t3 = term(k, i, j);
    if (!t1 || !t2 || !t3) return std::nullopt;  // out of window, skipped
    CycVec sum = *t1;
    for (int u = 0; u < n; ++u) sum[u] += (*t2)[u] + (*t3)[u];
    if (!cyc_vec_is_zero(sum)) {
      std::ostringstream w;
      w << "triple (" << L.basis_label(i) << ", " << L.basis_label(j) << ", "
        << L.basis_label(k) << ") defect " << cyc_vec_to_string(sum);
      return w.str();
    }
    return std::nullopt;
  };

  SweepOutcome out = run_sweep(total, probe);
  CheckResult r;
  r.name = name;
  r.tuple_count = static_cast<long long>(n) * (n - 1) * (n - 2) / 6;
  if (!out.ok()) {
    r.status = "fail";
    r.witness = out.witness;
  }
  return r;
}

CheckResult check_invariant_form(const BracketSpace& L, const BilinearForm& B,
                                 const std::string& name) {
  const int n = L.dim();
  // symmetry first
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (B.gram.at(i, j) != B.gram.at(j, i)) {
        CheckResult r;
        r.name = name;
        r.status = "fail";
        r.witness = "form not symmetric at (" + L.basis_label(i) + ", " +
                    L.basis_label(j) + ")";
        return r;
      }
    }
  }

  const long long total = static_cast<long long>(n) * n * n;
  auto probe = [&](long long idx) -> std::optional<std::string> {
    int k = static_cast<int>(idx % n);
    int j = static_cast<int>((idx / n) % n);
    int i = static_cast<int>(idx / (static_cast<long long>(n) * n));
    auto ij = L.try_bracket_basis(i, j);
    auto jk = L.try_bracket_basis(j, k);
    if (!ij || !jk) return std::nullopt;
    CycNumber lhs = CycNumber::zero();
    for (const auto& [t, c] : *ij) lhs += c * B.eval_basis(t, k);
    CycNumber rhs = CycNumber::zero();
    for (const auto& [t, c] : *jk) rhs += c * B.eval_basis(i, t);
    if (lhs != rhs) {
      std::ostringstream w;
      w << "invariance fails at (" << L.basis_label(i) << ", " << L.basis_label(j)
        << ", " << L.basis_label(k) << "): " << lhs.to_string()
        << " != " << rhs.to_string();
      return w.str();
    }
    return std::nullopt;
  };

  SweepOutcome out = run_sweep(total, probe);
  CheckResult r;
  r.name = name;
  r.tuple_count = total;
  if (!out.ok()) {
    r.status = "fail";
    r.witness = out.witness;
  }
  return r;
}

BilinearForm killing_form(const LieAlgebra& L) {
  const int n = L.dim();
  std::vector<CycMatrix> ads;
  ads.reserve(n);
  for (int i = 0; i < n; ++i) {
    CycVec e = cyc_vec_zero(n);
    e[i] = CycNumber::one();
    ads.push_back(L.ad_matrix(e));
  }
  BilinearForm B;
  B.gram = CycMatrix(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      CycNumber tr = CycNumber::zero();
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          if (ads[i].at(a, b).is_zero() || ads[j].at(b, a).is_zero()) continue;
          tr += ads[i].at(a, b) * ads[j].at(b, a);
        }
      B.gram.at(i, j) = tr;
      B.gram.at(j, i) = tr;
    }
  }
  return B;
}

QuotientResult quotient(const LieAlgebra& L, const Subspace& ideal) {
  const int n = L.dim();
  // ideal property: [L, I] inside I
  for (int i = 0; i < n; ++i) {
    CycVec e = cyc_vec_zero(n);
    e[i] = CycNumber::one();
    for (const auto& row : ideal.basis_rows()) {
      CycVec br = L.bracket(e, row);
      if (!ideal.contains(br))
        throw NotAnIdealError("[" + L.basis_label(i) + ", ideal row] escapes: " +
                              cyc_vec_to_string(br));
    }
  }

  std::vector<int> coords = ideal.complement_coords();
  const int q = static_cast<int>(coords.size());
  std::vector<int> coord_pos(n, -1);
  for (int t = 0; t < q; ++t) coord_pos[coords[t]] = t;

  std::vector<std::string> labels;
  labels.reserve(q);
  for (int c : coords) labels.push_back(L.basis_label(c));

  auto project = [&](const CycVec& v) {
    CycVec red = ideal.reduce(v);
    CycVec out = cyc_vec_zero(q);
    for (int t = 0; t < q; ++t) out[t] = red[coords[t]];
    return out;
  };

  std::map<std::pair<int, int>, SparseVec> upper;
  for (int a = 0; a < q; ++a) {
    for (int b = a + 1; b < q; ++b) {
      CycVec ea = cyc_vec_zero(n), eb = cyc_vec_zero(n);
      ea[coords[a]] = CycNumber::one();
      eb[coords[b]] = CycNumber::one();
      SparseVec row = sparse_from_dense(project(L.bracket(ea, eb)));
      if (!row.empty()) upper[{a, b}] = std::move(row);
    }
  }

  QuotientResult out;
  out.algebra = std::make_shared<LieAlgebra>(LieAlgebra::from_upper_table(
      std::move(labels), L.scalar_order(), std::move(upper)));
  out.coords = coords;
  out.projection.domain = &L;
  out.projection.codomain = out.algebra.get();
  out.projection.matrix = CycMatrix(q, n);
  for (int j = 0; j < n; ++j) {
    CycVec e = cyc_vec_zero(n);
    e[j] = CycNumber::one();
    CycVec p = project(e);
    for (int t = 0; t < q; ++t) out.projection.matrix.at(t, j) = p[t];
  }
  return out;
}

CheckResult is_homomorphism(const LinearMap& f, const std::string& name) {
  const BracketSpace& D = *f.domain;
  const BracketSpace& C = *f.codomain;
  const int n = D.dim();
  std::vector<CycVec> images;
  images.reserve(n);
  for (int j = 0; j < n; ++j) images.push_back(f.apply_basis(j));

  const long long total = static_cast<long long>(n) * n;
  auto probe = [&](long long idx) -> std::optional<std::string> {
    int j = static_cast<int>(idx % n);
    int i = static_cast<int>(idx / n);
    if (i >= j) return std::nullopt;
    auto dij = D.try_bracket_basis(i, j);
    if (!dij) return std::nullopt;
    auto rhs = C.try_bracket(images[i], images[j]);
    if (!rhs) return std::nullopt;
    CycVec lhs = cyc_vec_zero(C.dim());
    for (const auto& [t, c] : *dij) cyc_vec_add_scaled(lhs, c, images[t]);
    if (!cyc_vec_eq(lhs, *rhs)) {
      std::ostringstream w;
      w << "f[a,b] != [fa,fb] at (" << D.basis_label(i) << ", " << D.basis_label(j)
        << ")";
      return w.str();
    }
    return std::nullopt;
  };

  SweepOutcome out = run_sweep(total, probe);
  CheckResult r;
  r.name = name;
  r.tuple_count = static_cast<long long>(n) * (n - 1) / 2;
  if (!out.ok()) {
    r.status = "fail";
    r.witness = out.witness;
  }
  return r;
}

CheckResult is_isomorphism(const LinearMap& f, const std::string& name) {
  CheckResult hom = is_homomorphism(f, name);
  if (!hom.passed()) return hom;
  if (f.domain->dim() != f.codomain->dim()) {
    hom.status = "fail";
    hom.witness = "dimension mismatch: " + std::to_string(f.domain->dim()) +
                  " vs " + std::to_string(f.codomain->dim());
    return hom;
  }
  if (rank_of(f.matrix) != f.domain->dim()) {
    hom.status = "fail";
    hom.witness = "matrix rank " + std::to_string(rank_of(f.matrix)) +
                  " below dimension " + std::to_string(f.domain->dim());
  }
  return hom;
}

bool is_automorphism(const LinearMap& f, std::string* why) {
  if (f.domain != f.codomain) {
    if (why) *why = "domain and codomain differ";
    return false;
  }
  if (rank_of(f.matrix) != f.domain->dim()) {
    if (why) *why = "map is singular";
    return false;
  }
  CheckResult hom = is_homomorphism(f, "automorphism");
  if (!hom.passed()) {
    if (why) *why = hom.witness.value_or("bracket not preserved");
    return false;
  }
  return true;
}

Subspace fixed_subalgebra(const BracketSpace& L, const std::vector<LinearMap>& auts) {
  const int n = L.dim();
  std::string why;
  for (const auto& g : auts)
    if (!is_automorphism(g, &why)) throw NotAutomorphismError(why);

  std::vector<CycVec> stacked;
  for (const auto& g : auts) {
    for (int i = 0; i < n; ++i) {
      CycVec row = g.matrix.row(i);
      row[i] -= CycNumber::one();
      stacked.push_back(std::move(row));
    }
  }
  CycMatrix M = CycMatrix::from_rows(std::move(stacked), n);
  Subspace fixed(n);
  for (const auto& v : kernel_basis(M)) fixed.insert(v);

  // closure under the bracket, where defined
  for (const auto& a : fixed.basis_rows()) {
    for (const auto& b : fixed.basis_rows()) {
      auto br = L.try_bracket(a, b);
      if (br && !fixed.contains(*br))
        throw CovlieError("fixed point space is not closed under the bracket");
    }
  }
  return fixed;
}

}  // namespace covlie
