#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "covlie/errors.hpp"
#include "covlie/liealg.hpp"

namespace covlie {

namespace {

CycVec promote_vec(const CycVec& v, unsigned order) {
  CycVec out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x.embedded(order));
  return out;
}

struct Part {
  std::vector<long> weight;
  Subspace space;
};

}  // namespace

RootDecomposition root_decomposition(const LieAlgebra& L,
                                     const std::vector<CycVec>& cartan,
                                     unsigned field_order) {
  const int n = L.dim();
  unsigned order = std::lcm(4u, field_order);
  CycNumber i_unit = CycNumber::root_of_unity(4, 1);

  // Cartan elements must commute pairwise.
  for (size_t a = 0; a < cartan.size(); ++a)
    for (size_t b = a + 1; b < cartan.size(); ++b)
      if (!cyc_vec_is_zero(L.bracket(cartan[a], cartan[b])))
        throw NotSimultaneouslyDiagonalizableError(
            "cartan elements " + std::to_string(a) + " and " + std::to_string(b) +
            " do not commute");

  Subspace whole(n);
  for (int i = 0; i < n; ++i) {
    CycVec e = cyc_vec_zero(n);
    e[i] = CycNumber::one();
    whole.insert(std::move(e));
  }
  std::vector<Part> parts;
  parts.push_back(Part{{}, std::move(whole)});

  for (const auto& h : cartan) {
    CycMatrix ad = L.ad_matrix(promote_vec(h, order));
    std::vector<Part> next;
    for (auto& part : parts) {
      const int b = part.space.dim();
      if (b == 0) continue;
      // restrict ad to the part: columns are coordinates of ad * basis row
      CycMatrix restricted(b, b);
      for (int col = 0; col < b; ++col) {
        CycVec image = ad.apply(promote_vec(part.space.basis_rows()[col], order));
        auto c = coordinates_in(part.space, image);
        if (!c)
          throw NotSimultaneouslyDiagonalizableError(
              "ad h does not stabilize a weight space");
        for (int row = 0; row < b; ++row) restricted.at(row, col) = (*c)[row];
      }
      // scan integer eigenvalues m, i.e. ad h eigenvalue i*m
      int found = 0;
      for (int step = 0; step <= 2 * n && found < b; ++step) {
        long m = (step % 2 == 0) ? step / 2 : -(step / 2 + 1);
        CycMatrix shifted = restricted;
        CycNumber lambda = i_unit * CycNumber::from_int(m);
        for (int d = 0; d < b; ++d) shifted.at(d, d) -= lambda;
        std::vector<CycVec> ker = kernel_basis(shifted);
        if (ker.empty()) continue;
        Part fresh{part.weight, Subspace(n)};
        fresh.weight.push_back(m);
        for (const auto& kv : ker) {
          CycVec ambient = cyc_vec_zero(n);
          for (int t = 0; t < b; ++t)
            cyc_vec_add_scaled(ambient, kv[t].embedded(order),
                               promote_vec(part.space.basis_rows()[t], order));
          fresh.space.insert(std::move(ambient));
        }
        found += fresh.space.dim();
        next.push_back(std::move(fresh));
      }
      if (found != b)
        throw NotSimultaneouslyDiagonalizableError(
            "eigenvalues of ad h are not all in i*Z");
    }
    parts = std::move(next);
  }

  RootDecomposition rd;
  rd.algebra_dim = n;
  rd.cartan_dim = static_cast<int>(cartan.size());
  for (auto& part : parts) {
    bool zero_weight =
        std::all_of(part.weight.begin(), part.weight.end(), [](long w) { return w == 0; });
    if (zero_weight) {
      for (const auto& row : part.space.basis_rows()) rd.zero_space.push_back(row);
    } else {
      RootSpace rs;
      rs.root = part.weight;
      rs.basis = part.space.basis_rows();
      rd.roots.push_back(std::move(rs));
    }
  }
  std::sort(rd.roots.begin(), rd.roots.end(),
            [](const RootSpace& a, const RootSpace& b) { return a.root < b.root; });

  // Accounting: root space dims plus the zero weight space fill the algebra.
  int covered = static_cast<int>(rd.zero_space.size());
  for (const auto& rs : rd.roots) covered += static_cast<int>(rs.basis.size());
  if (covered != n)
    throw NotSimultaneouslyDiagonalizableError(
        "weight spaces cover " + std::to_string(covered) + " of " + std::to_string(n));
  return rd;
}

namespace {

long dot(const std::vector<long>& a, const std::vector<long>& b) {
  long s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::vector<long> add_vec(const std::vector<long>& a, const std::vector<long>& b) {
  std::vector<long> out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

std::string matrix_to_string(const std::vector<std::vector<long>>& m) {
  std::ostringstream out;
  out << "[";
  for (size_t i = 0; i < m.size(); ++i) {
    if (i) out << ", ";
    out << "[";
    for (size_t j = 0; j < m[i].size(); ++j) {
      if (j) out << ", ";
      out << m[i][j];
    }
    out << "]";
  }
  out << "]";
  return out.str();
}

// Cartan matrix of simple root vectors in a Euclidean model.
std::vector<std::vector<long>> cartan_of(const std::vector<std::vector<long>>& simples) {
  const size_t l = simples.size();
  std::vector<std::vector<long>> c(l, std::vector<long>(l, 0));
  for (size_t i = 0; i < l; ++i) {
    for (size_t j = 0; j < l; ++j) {
      long num = 2 * dot(simples[i], simples[j]);
      long den = dot(simples[j], simples[j]);
      if (num % den != 0) throw UnrecognizedRootSystemError("[non-integer pairing]");
      c[i][j] = num / den;
    }
  }
  return c;
}

// Euclidean models of the classical simple root systems.
std::vector<std::vector<long>> template_simples(char family, int l) {
  std::vector<std::vector<long>> s;
  auto unit = [&](int i, long v) {
    std::vector<long> e(l + (family == 'A' ? 1 : 0), 0);
    e[i] = v;
    return e;
  };
  switch (family) {
    case 'A':  // e_i - e_(i+1) in R^(l+1)
      for (int i = 0; i < l; ++i) {
        auto e = unit(i, 1);
        e[i + 1] = -1;
        s.push_back(e);
      }
      break;
    case 'B':  // e_i - e_(i+1), e_l
      for (int i = 0; i + 1 < l; ++i) {
        auto e = unit(i, 1);
        e[i + 1] = -1;
        s.push_back(e);
      }
      s.push_back(unit(l - 1, 1));
      break;
    case 'C':  // e_i - e_(i+1), 2 e_l
      for (int i = 0; i + 1 < l; ++i) {
        auto e = unit(i, 1);
        e[i + 1] = -1;
        s.push_back(e);
      }
      s.push_back(unit(l - 1, 2));
      break;
    case 'D':  // e_i - e_(i+1), e_(l-1) + e_l
      for (int i = 0; i + 1 < l; ++i) {
        auto e = unit(i, 1);
        e[i + 1] = -1;
        s.push_back(e);
      }
      {
        auto e = unit(l - 2, 1);
        e[l - 1] = 1;
        s.push_back(e);
      }
      break;
  }
  return s;
}

bool matches_up_to_permutation(const std::vector<std::vector<long>>& a,
                               const std::vector<std::vector<long>>& b) {
  const size_t l = a.size();
  std::vector<int> perm(l);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (size_t i = 0; i < l && ok; ++i)
      for (size_t j = 0; j < l && ok; ++j)
        if (a[perm[i]][perm[j]] != b[i][j]) ok = false;
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace

Classification classify_simple_type(const RootDecomposition& rd) {
  Classification out;
  if (rd.roots.empty()) {
    out.label = "abelian-dim-" + std::to_string(rd.algebra_dim);
    out.rank = 0;
    return out;
  }

  // reduced system sanity: one-dimensional root spaces, closed under negation
  std::set<std::vector<long>> root_set;
  for (const auto& rs : rd.roots) {
    if (rs.basis.size() != 1)
      throw UnrecognizedRootSystemError("[root space of dimension " +
                                        std::to_string(rs.basis.size()) + "]");
    root_set.insert(rs.root);
  }
  for (const auto& r : rd.roots) {
    std::vector<long> neg(r.root.size());
    for (size_t i = 0; i < neg.size(); ++i) neg[i] = -r.root[i];
    if (!root_set.count(neg))
      throw UnrecognizedRootSystemError("[roots not closed under negation]");
  }

  // positive roots by lexicographic sign of the first nonzero entry
  std::vector<std::vector<long>> positive;
  for (const auto& r : root_set) {
    for (long v : r) {
      if (v > 0) {
        positive.push_back(r);
        break;
      }
      if (v < 0) break;
    }
  }
  std::sort(positive.begin(), positive.end());

  // simple roots: positive roots that are not sums of two positive roots
  std::vector<std::vector<long>> simples;
  for (const auto& r : positive) {
    bool decomposable = false;
    for (const auto& p : positive) {
      for (const auto& q : positive) {
        if (add_vec(p, q) == r) {
          decomposable = true;
          break;
        }
      }
      if (decomposable) break;
    }
    if (!decomposable) simples.push_back(r);
  }
  std::sort(simples.begin(), simples.end());

  out.rank = static_cast<int>(simples.size());
  out.cartan_matrix = cartan_of(simples);

  // connected components of the Dynkin diagram
  const int l = out.rank;
  std::vector<int> comp(l, -1);
  int ncomp = 0;
  for (int start = 0; start < l; ++start) {
    if (comp[start] >= 0) continue;
    std::vector<int> stack{start};
    comp[start] = ncomp;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w = 0; w < l; ++w) {
        if (comp[w] < 0 && out.cartan_matrix[v][w] != 0) {
          comp[w] = ncomp;
          stack.push_back(w);
        }
      }
    }
    ++ncomp;
  }

  std::vector<std::string> labels;
  for (int c = 0; c < ncomp; ++c) {
    std::vector<int> members;
    for (int i = 0; i < l; ++i)
      if (comp[i] == c) members.push_back(i);
    const int cl = static_cast<int>(members.size());
    if (cl == 1) {
      // distinguish by root length in the eigenvalue metric
      long norm = dot(simples[members[0]], simples[members[0]]);
      labels.push_back(norm == 2 ? "A1" : "B1");
      continue;
    }
    std::vector<std::vector<long>> sub(cl, std::vector<long>(cl));
    for (int i = 0; i < cl; ++i)
      for (int j = 0; j < cl; ++j)
        sub[i][j] = out.cartan_matrix[members[i]][members[j]];
    std::string label;
    for (char family : {'A', 'B', 'C', 'D'}) {
      if ((family == 'C' && cl < 3) || (family == 'D' && cl < 4)) continue;
      auto templ = cartan_of(template_simples(family, cl));
      if (matches_up_to_permutation(sub, templ)) {
        label = std::string(1, family) + std::to_string(cl);
        break;
      }
    }
    if (label.empty()) throw UnrecognizedRootSystemError(matrix_to_string(sub));
    labels.push_back(label);
  }
  std::sort(labels.begin(), labels.end());
  std::string joined;
  for (size_t i = 0; i < labels.size(); ++i) {
    if (i) joined += "x";
    joined += labels[i];
  }
  out.label = joined;
  return out;
}

}  // namespace covlie
