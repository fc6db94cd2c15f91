#include "covlie/covariant.hpp"

#include <sstream>

#include "covlie/errors.hpp"

namespace covlie {

GroupActionOnLie materialize_action(const BracketSpace& K,
                                    std::vector<LinearMap> generators,
                                    size_t cap) {
  GroupActionOnLie out;
  out.algebra = &K;

  std::string why;
  for (auto& g : generators) {
    if (g.domain != &K || g.codomain != &K)
      throw NotAutomorphismError("generator does not act on the given algebra");
    if (!is_automorphism(g, &why)) throw NotAutomorphismError(why);
  }

  const int n = K.dim();
  LinearMap id;
  id.domain = &K;
  id.codomain = &K;
  id.matrix = CycMatrix::identity(n);
  out.elements.push_back(id);

  // closure under composition, breadth first
  for (size_t next = 0; next < out.elements.size(); ++next) {
    for (const auto& g : generators) {
      CycMatrix prod = g.matrix.multiply(out.elements[next].matrix);
      bool known = false;
      for (const auto& e : out.elements) {
        if (e.matrix == prod) {
          known = true;
          break;
        }
      }
      if (known) continue;
      if (out.elements.size() >= cap)
        throw NotFiniteError("group closure exceeds " + std::to_string(cap) +
                             " elements");
      LinearMap m;
      m.domain = &K;
      m.codomain = &K;
      m.matrix = std::move(prod);
      out.elements.push_back(std::move(m));
    }
  }
  out.generators = std::move(generators);
  return out;
}

std::optional<SparseVec> CovariantAlgebra::try_bracket_basis(int i, int j) const {
  auto it = table_.find({i, j});
  if (it == table_.end())
    throw CovlieError("covariant bracket queried before construction");
  return it->second;
}

CycVec CovariantAlgebra::project(const CycVec& ambient) const {
  CycVec red = ideal_.reduce(ambient);
  CycVec out = cyc_vec_zero(dim());
  for (int t = 0; t < dim(); ++t) out[t] = red[coords_[t]];
  return out;
}

std::optional<CycVec> CovariantAlgebra::covariant_bracket_ambient(const CycVec& a,
                                                                  const CycVec& b) const {
  CycVec acc = cyc_vec_zero(base_->dim());
  for (const auto& g : action_->elements) {
    auto part = base_->try_bracket(g.apply(a), b);
    if (!part) return std::nullopt;
    for (int t = 0; t < base_->dim(); ++t) acc[t] += (*part)[t];
  }
  return project(acc);
}

std::shared_ptr<LieAlgebra> CovariantAlgebra::as_lie_algebra() const {
  std::map<std::pair<int, int>, SparseVec> table;
  for (const auto& [key, row] : table_) {
    if (!row) throw CovlieError("quotient bracket is partial, not a total algebra");
    if (!row->empty()) table[key] = *row;
  }
  return std::make_shared<LieAlgebra>(
      LieAlgebra::from_product_table(labels_, 1, table));
}

std::unique_ptr<CovariantAlgebra> covariant_algebra(const BracketSpace& K,
                                                    const GroupActionOnLie& G,
                                                    const BilinearForm* B) {
  auto out = std::make_unique<CovariantAlgebra>();
  out->base_ = &K;
  out->action_ = &G;
  const int n = K.dim();
  VerificationReport& rep = out->report_;
  rep.suite = "covariant";

  if (B) {
    for (size_t e = 0; e < G.elements.size(); ++e) {
      const auto& g = G.elements[e];
      for (int i = 0; i < n; ++i) {
        CycVec gi = g.apply_basis(i);
        for (int j = 0; j < n; ++j) {
          CycVec gj = g.apply_basis(j);
          if (B->eval(gi, gj) != B->eval_basis(i, j))
            throw FormNotPreservedError(
                "group element " + std::to_string(e) + " moves the form at (" +
                K.basis_label(i) + ", " + K.basis_label(j) + ")");
        }
      }
    }
    rep.add_pass("action_preserves_form",
                 static_cast<long long>(G.elements.size()) * n * n);
  }

  // I_G = span{ e_i - g e_i }
  out->ideal_ = Subspace(n);
  for (const auto& g : G.elements) {
    for (int i = 0; i < n; ++i) {
      CycVec v = cyc_vec_zero(n);
      v[i] = CycNumber::one();
      CycVec gv = g.apply_basis(i);
      for (int t = 0; t < n; ++t) v[t] -= gv[t];
      if (!cyc_vec_is_zero(v)) out->ideal_.insert(std::move(v));
    }
  }
  out->coords_ = out->ideal_.complement_coords();
  for (int c : out->coords_) out->labels_.push_back(K.basis_label(c) + "+I");

  {
    const int q = static_cast<int>(out->coords_.size());
    out->projection_.domain = &K;
    out->projection_.codomain = out.get();
    out->projection_.matrix = CycMatrix(q, n);
    for (int j = 0; j < n; ++j) {
      CycVec e = cyc_vec_zero(n);
      e[j] = CycNumber::one();
      CycVec p = out->project(e);
      for (int t = 0; t < q; ++t) out->projection_.matrix.at(t, j) = p[t];
    }
  }

  // averaged bracket on ambient basis pairs, nullopt when any summand is
  // outside the window
  auto averaged = [&](const CycVec& a, const CycVec& b) -> std::optional<CycVec> {
    CycVec acc = cyc_vec_zero(n);
    for (const auto& g : G.elements) {
      auto part = K.try_bracket(g.apply(a), b);
      if (!part) return std::nullopt;
      for (int t = 0; t < n; ++t) acc[t] += (*part)[t];
    }
    return acc;
  };

  // two sided ideal check for I_G under the averaged product
  {
    long long tuples = 0;
    for (const auto& r : out->ideal_.basis_rows()) {
      for (int i = 0; i < n; ++i) {
        CycVec e = cyc_vec_zero(n);
        e[i] = CycNumber::one();
        auto left = averaged(r, e);
        auto right = averaged(e, r);
        ++tuples;
        if (left && !out->ideal_.contains(*left)) {
          rep.add_fail("ideal_I_G", tuples,
                       "[row, " + K.basis_label(i) + "]_G escapes I_G");
          return out;
        }
        if (right && !out->ideal_.contains(*right)) {
          rep.add_fail("ideal_I_G", tuples,
                       "[" + K.basis_label(i) + ", row]_G escapes I_G");
          return out;
        }
      }
    }
    rep.add_pass("ideal_I_G", tuples);
  }

  // quotient product table, diagonal included; undefined pairs stay undefined
  const int q = static_cast<int>(out->coords_.size());
  long long defined = 0, skipped = 0;
  for (int x = 0; x < q; ++x) {
    CycVec ex = cyc_vec_zero(n);
    ex[out->coords_[x]] = CycNumber::one();
    for (int y = 0; y < q; ++y) {
      CycVec ey = cyc_vec_zero(n);
      ey[out->coords_[y]] = CycNumber::one();
      auto br = averaged(ex, ey);
      if (!br) {
        out->table_[{x, y}] = std::nullopt;
        ++skipped;
        continue;
      }
      ++defined;
      SparseVec row = sparse_from_dense(out->project(*br));
      if (x == y && !row.empty()) {
        rep.add_fail("quotient_alternating", defined,
                     "[x,x]_G nonzero at " + out->labels_[x]);
        return out;
      }
      out->table_[{x, y}] = std::move(row);
    }
  }

  // antisymmetry of the induced product where both orders are defined
  for (int x = 0; x < q; ++x) {
    for (int y = x + 1; y < q; ++y) {
      const auto& xy = out->table_[{x, y}];
      const auto& yx = out->table_[{y, x}];
      if (!xy || !yx) continue;
      CycVec a = dense_from_sparse(*xy, q);
      CycVec b = dense_from_sparse(*yx, q);
      for (int t = 0; t < q; ++t) a[t] += b[t];
      if (!cyc_vec_is_zero(a)) {
        rep.add_fail("quotient_antisymmetric", defined,
                     "at (" + out->labels_[x] + ", " + out->labels_[y] + ")");
        return out;
      }
    }
  }
  rep.add_pass("quotient_antisymmetric", defined);

  // Jacobi on the quotient, skipping windowed triples
  CheckResult jac = check_jacobi(*out, "quotient_jacobi");
  rep.checks.push_back(jac);
  (void)skipped;

  if (B) {
    BilinearForm induced;
    induced.gram = CycMatrix(q, q);
    for (int x = 0; x < q; ++x) {
      CycVec ex = cyc_vec_zero(n);
      ex[out->coords_[x]] = CycNumber::one();
      for (int y = 0; y < q; ++y) {
        CycVec ey = cyc_vec_zero(n);
        ey[out->coords_[y]] = CycNumber::one();
        CycNumber acc = CycNumber::zero();
        for (const auto& g : G.elements) acc += B->eval(g.apply(ex), ey);
        induced.gram.at(x, y) = acc;
      }
    }
    out->form_ = induced;
    rep.checks.push_back(
        check_invariant_form(*out, *out->form_, "induced_form_invariant"));

    // I_G sits inside the radical of the averaged form on K
    bool radical_ok = true;
    for (const auto& r : out->ideal_.basis_rows()) {
      for (int i = 0; i < n && radical_ok; ++i) {
        CycVec e = cyc_vec_zero(n);
        e[i] = CycNumber::one();
        CycNumber acc = CycNumber::zero();
        for (const auto& g : G.elements) acc += B->eval(g.apply(r), e);
        if (!acc.is_zero()) radical_ok = false;
      }
      if (!radical_ok) break;
    }
    if (radical_ok)
      rep.add_pass("ideal_in_form_radical",
                   static_cast<long long>(out->ideal_.dim()) * n);
    else
      rep.add_fail("ideal_in_form_radical",
                   static_cast<long long>(out->ideal_.dim()) * n,
                   "averaged form does not vanish on I_G");
  }
  return out;
}

FixedPointIso phi_fixed_point_iso(const BracketSpace& K, const GroupActionOnLie& G,
                                  const CovariantAlgebra& KG) {
  const int n = K.dim();
  FixedPointIso out;
  out.report.suite = "fixed_point_comparison";

  // fixed subspace of the whole group
  {
    std::vector<CycVec> stacked;
    for (const auto& g : G.elements) {
      for (int i = 0; i < n; ++i) {
        CycVec row = g.matrix.row(i);
        row[i] -= CycNumber::one();
        stacked.push_back(std::move(row));
      }
    }
    CycMatrix M = CycMatrix::from_rows(std::move(stacked), n);
    out.fixed = Subspace(n);
    for (auto& v : kernel_basis(M)) out.fixed.insert(std::move(v));
  }

  const int q = KG.dim();
  out.phi.domain = &KG;
  out.phi.codomain = &K;
  out.phi.matrix = CycMatrix(n, q);
  for (int t = 0; t < q; ++t) {
    CycVec e = cyc_vec_zero(n);
    e[KG.coords()[t]] = CycNumber::one();
    CycVec acc = cyc_vec_zero(n);
    for (const auto& g : G.elements) {
      CycVec ge = g.apply(e);
      for (int u = 0; u < n; ++u) acc[u] += ge[u];
    }
    for (int u = 0; u < n; ++u) out.phi.matrix.at(u, t) = acc[u];
  }

  // (i) the symmetrizer kills I_G
  bool kills = true;
  for (const auto& r : KG.ideal().basis_rows()) {
    CycVec acc = cyc_vec_zero(n);
    for (const auto& g : G.elements) {
      CycVec gr = g.apply(r);
      for (int u = 0; u < n; ++u) acc[u] += gr[u];
    }
    if (!cyc_vec_is_zero(acc)) {
      kills = false;
      break;
    }
  }
  if (kills)
    out.report.add_pass("phi_kills_ideal", KG.ideal().dim());
  else
    out.report.add_fail("phi_kills_ideal", KG.ideal().dim(),
                        "sum over the group does not vanish on I_G");

  // (ii) image inside the fixed subspace
  bool inside = true;
  for (int t = 0; t < q && inside; ++t)
    if (!out.fixed.contains(out.phi.apply_basis(t))) inside = false;
  if (inside)
    out.report.add_pass("phi_lands_in_fixed", q);
  else
    out.report.add_fail("phi_lands_in_fixed", q, "image leaves the fixed subspace");

  // (iii) bijective onto the fixed subspace
  if (rank_of(out.phi.matrix) == q && q == out.fixed.dim())
    out.report.add_pass("phi_bijective", q);
  else
    out.report.add_fail("phi_bijective", q,
                        "rank " + std::to_string(rank_of(out.phi.matrix)) +
                            ", quotient dim " + std::to_string(q) + ", fixed dim " +
                            std::to_string(out.fixed.dim()));

  // (iv) phi([a,b]_G) = [phi a, phi b] where both sides are defined
  long long tuples = 0, skippedc = 0;
  for (int x = 0; x < q; ++x) {
    for (int y = 0; y < q; ++y) {
      auto row = KG.try_bracket_basis(x, y);
      if (!row) {
        ++skippedc;
        continue;
      }
      auto rhs = K.try_bracket(out.phi.apply_basis(x), out.phi.apply_basis(y));
      if (!rhs) {
        ++skippedc;
        continue;
      }
      CycVec lhs = cyc_vec_zero(n);
      for (const auto& [t, c] : *row) cyc_vec_add_scaled(lhs, c, out.phi.apply_basis(t));
      ++tuples;
      if (!cyc_vec_eq(lhs, *rhs)) {
        out.report.add_fail("phi_bracket", tuples,
                            "at (" + KG.basis_label(x) + ", " + KG.basis_label(y) + ")");
        return out;
      }
    }
  }
  out.report.add_pass("phi_bracket", tuples);

  // naturality: phi after projection equals the group symmetrizer on K
  {
    CycMatrix lhs = out.phi.matrix.multiply(KG.projection().matrix);
    CycMatrix rhs(n, n);
    for (const auto& g : G.elements)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) rhs.at(i, j) += g.matrix.at(i, j);
    if (lhs == rhs)
      out.report.add_pass("phi_natural", static_cast<long long>(n) * n);
    else
      out.report.add_fail("phi_natural", static_cast<long long>(n) * n,
                          "phi . projection differs from the symmetrizer");
  }
  (void)skippedc;
  return out;
}

}  // namespace covlie
