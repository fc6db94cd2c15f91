#pragma once

#include <memory>

#include "covlie/liealg.hpp"

namespace covlie {

/// A finite automorphism group acting on a bracket space, materialized as
/// the closure of its generators under composition.
struct GroupActionOnLie {
  const BracketSpace* algebra = nullptr;
  std::vector<LinearMap> generators;
  std::vector<LinearMap> elements;  // closure, identity first, insertion order
};

/// Closes the generators under composition. Every generator is checked to be
/// an automorphism. Throws NotFiniteError past `cap` elements.
GroupActionOnLie materialize_action(const BracketSpace& K,
                                    std::vector<LinearMap> generators,
                                    size_t cap = 4096);

/// The quotient of K under the averaged bracket [a,b]_G = sum_g [g a, b]
/// by the ideal I_G = span{a - g a}. The induced bracket can be partial when
/// K itself has a partial bracket (degree windows); undefined pairs are
/// reported as skipped, never guessed.
class CovariantAlgebra final : public BracketSpace {
 public:
  int dim() const override { return static_cast<int>(labels_.size()); }
  const std::string& basis_label(int i) const override { return labels_[i]; }
  std::optional<SparseVec> try_bracket_basis(int i, int j) const override;

  const Subspace& ideal() const { return ideal_; }
  const std::vector<int>& coords() const { return coords_; }
  const LinearMap& projection() const { return projection_; }
  const BilinearForm* form() const { return form_ ? &*form_ : nullptr; }
  const VerificationReport& report() const { return report_; }

  /// Covariant bracket of ambient vectors, projected to quotient coordinates.
  std::optional<CycVec> covariant_bracket_ambient(const CycVec& a, const CycVec& b) const;
  CycVec project(const CycVec& ambient) const;

  /// Total quotients convert to a plain Lie algebra.
  std::shared_ptr<LieAlgebra> as_lie_algebra() const;

 private:
  friend std::unique_ptr<CovariantAlgebra> covariant_algebra(
      const BracketSpace& K, const GroupActionOnLie& G, const BilinearForm* B);

  const BracketSpace* base_ = nullptr;
  const GroupActionOnLie* action_ = nullptr;
  std::vector<std::string> labels_;
  Subspace ideal_{0};
  std::vector<int> coords_;
  LinearMap projection_;
  std::optional<BilinearForm> form_;
  std::map<std::pair<int, int>, std::optional<SparseVec>> table_;
  VerificationReport report_;
};

/// Builds the covariant algebra and verifies: each group element preserves
/// the form (when given), I_G is a two sided ideal of the averaged product,
/// the quotient product is antisymmetric and satisfies Jacobi on defined
/// triples, and the induced form is symmetric and invariant with I_G inside
/// its radical. Throws FormNotPreservedError when B is given but moved.
std::unique_ptr<CovariantAlgebra> covariant_algebra(const BracketSpace& K,
                                                    const GroupActionOnLie& G,
                                                    const BilinearForm* B);

struct FixedPointIso {
  Subspace fixed{0};
  LinearMap phi;  // quotient coordinates -> ambient, image inside the fixed part
  VerificationReport report;
};

/// The comparison map K/G -> K^G induced by a -> sum_g g a. Verifies that it
/// kills I_G, lands in the fixed subspace, is bijective onto it, and
/// preserves brackets wherever both sides are defined.
FixedPointIso phi_fixed_point_iso(const BracketSpace& K, const GroupActionOnLie& G,
                                  const CovariantAlgebra& KG);

}  // namespace covlie
