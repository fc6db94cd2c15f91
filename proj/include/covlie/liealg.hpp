#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "covlie/linalg.hpp"
#include "covlie/report.hpp"

namespace covlie {

/// Sparse vector, sorted by index, nonzero coefficients only.
using SparseVec = std::vector<std::pair<int, CycNumber>>;

SparseVec sparse_from_dense(const CycVec& v);
CycVec dense_from_sparse(const SparseVec& v, int dim);

/// Minimal bracket interface shared by total Lie algebras and degree
/// windowed affine algebras. try_bracket_basis returns nullopt when the
/// bracket of two basis elements is not representable (outside a window).
class BracketSpace {
 public:
  virtual ~BracketSpace() = default;
  virtual int dim() const = 0;
  virtual const std::string& basis_label(int i) const = 0;
  virtual std::optional<SparseVec> try_bracket_basis(int i, int j) const = 0;

  /// Bilinear extension; nullopt if any contributing basis pair is undefined.
  std::optional<CycVec> try_bracket(const CycVec& x, const CycVec& y) const;
};

/// Finite-dimensional Lie algebra presented by a labeled basis and sparse
/// structure constants. Antisymmetry is enforced by construction; the
/// Jacobi identity is a checkable property, not an assumption.
class LieAlgebra final : public BracketSpace {
 public:
  LieAlgebra() = default;

  /// Builds from a full product table; throws if the table is not
  /// antisymmetric (including nonzero diagonal).
  static LieAlgebra from_product_table(
      std::vector<std::string> labels, unsigned scalar_order,
      const std::map<std::pair<int, int>, SparseVec>& table);

  /// Builds from an upper triangular table (i < j); the rest follows by
  /// antisymmetry.
  static LieAlgebra from_upper_table(
      std::vector<std::string> labels, unsigned scalar_order,
      std::map<std::pair<int, int>, SparseVec> upper);

  int dim() const override { return static_cast<int>(labels_.size()); }
  const std::string& basis_label(int i) const override { return labels_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }
  unsigned scalar_order() const { return scalar_order_; }
  const std::map<std::pair<int, int>, SparseVec>& upper_table() const { return upper_; }

  std::optional<SparseVec> try_bracket_basis(int i, int j) const override;
  SparseVec bracket_basis(int i, int j) const;
  CycVec bracket(const CycVec& x, const CycVec& y) const;
  CycVec ad_apply(const CycVec& x, const CycVec& y) const { return bracket(x, y); }
  CycMatrix ad_matrix(const CycVec& x) const;

 private:
  std::vector<std::string> labels_;
  unsigned scalar_order_ = 1;
  std::map<std::pair<int, int>, SparseVec> upper_;  // keys i < j only
};

/// Symmetric bilinear form on a basis; invariance is checkable.
struct BilinearForm {
  CycMatrix gram;
  CycNumber eval(const CycVec& x, const CycVec& y) const;
  CycNumber eval_basis(int i, int j) const { return gram.at(i, j); }
};

/// Linear map between bracket spaces. Non-owning views of its endpoints.
struct LinearMap {
  const BracketSpace* domain = nullptr;
  const BracketSpace* codomain = nullptr;
  CycMatrix matrix;  // codomain dim x domain dim

  CycVec apply(const CycVec& x) const { return matrix.apply(x); }
  CycVec apply_basis(int j) const;
  LinearMap compose(const LinearMap& inner) const;  // this after inner
};

// ---- verification operations ------------------------------------------

/// Exhaustive Jacobi check over basis triples i < j < k.
CheckResult check_jacobi(const BracketSpace& L, const std::string& name = "jacobi");

/// Symmetry plus invariance of the form over all basis triples.
CheckResult check_invariant_form(const BracketSpace& L, const BilinearForm& B,
                                 const std::string& name = "invariant_form");

/// Killing form kappa(a, b) = trace(ad a . ad b).
BilinearForm killing_form(const LieAlgebra& L);

struct QuotientResult {
  std::shared_ptr<LieAlgebra> algebra;  // heap allocated, stable address
  LinearMap projection;                 // ambient -> quotient coordinates
  std::vector<int> coords;              // ambient coordinates kept
};

/// Quotient by a verified ideal; throws NotAnIdealError with a witness pair.
QuotientResult quotient(const LieAlgebra& L, const Subspace& ideal);

CheckResult is_homomorphism(const LinearMap& f, const std::string& name = "homomorphism");
CheckResult is_isomorphism(const LinearMap& f, const std::string& name = "isomorphism");
bool is_automorphism(const LinearMap& f, std::string* why = nullptr);

/// Common fixed points of verified automorphisms; verifies bracket closure.
/// Throws NotAutomorphismError if a generator fails the automorphism check.
Subspace fixed_subalgebra(const BracketSpace& L, const std::vector<LinearMap>& auts);

// ---- root systems ------------------------------------------------------

struct RootSpace {
  std::vector<long> root;  // eigenvalue of ad h_t divided by i
  std::vector<CycVec> basis;
};

struct RootDecomposition {
  std::vector<RootSpace> roots;      // nonzero weights only
  std::vector<CycVec> zero_space;    // weight zero part
  int algebra_dim = 0;
  int cartan_dim = 0;
};

/// Simultaneous eigenspace decomposition for commuting Cartan elements
/// whose ad eigenvalues lie in i*Z. Computations run over
/// Q(zeta_lcm(4, field_order)). Throws NotSimultaneouslyDiagonalizableError.
RootDecomposition root_decomposition(const LieAlgebra& L,
                                     const std::vector<CycVec>& cartan,
                                     unsigned field_order);

struct Classification {
  std::string label;                          // "B2", "A1xA1", "abelian-dim-1", ...
  int rank = 0;
  std::vector<std::vector<long>> cartan_matrix;
};

/// Names the simple type from root data by Cartan matrix matching, up to
/// Dynkin diagram permutation. Rank one components are separated by root
/// length: norm 1 reports B1, norm 2 reports A1. Disconnected diagrams are
/// joined with "x". Throws UnrecognizedRootSystemError.
Classification classify_simple_type(const RootDecomposition& rd);

}  // namespace covlie
