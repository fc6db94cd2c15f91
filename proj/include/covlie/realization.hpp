#pragma once

#include <memory>

#include "covlie/group.hpp"
#include "covlie/liealg.hpp"

namespace covlie {

// Builders hold a pointer to the group and heap allocate the algebras, so
// bundles can be moved while linear maps keep valid endpoint pointers. The
// group object must outlive the bundle.

/// The general linear Lie algebra on basis E(a,b) for a, b in S, with the
/// trace form <E(a,b), E(c,d)> = (1/2) delta_{a,d} delta_{b,c} and the
/// order two automorphism tau(E(a,b)) = -E(b,a).
struct GlS {
  const FinAbGroup* S = nullptr;
  std::shared_ptr<LieAlgebra> algebra;  // dimension |S|^2
  BilinearForm form;
  LinearMap tau;

  int e_index(int a, int b) const { return a * S->size() + b; }
  std::pair<int, int> e_pair(int idx) const {
    return {idx / S->size(), idx % S->size()};
  }
};

GlS build_gl_S(const FinAbGroup& S);

/// The subalgebra spanned by E(m,n) with m + n in 2S, as its own algebra plus
/// the embedding coordinates into gl_S.
struct SubAlgebraOfGl {
  std::shared_ptr<LieAlgebra> algebra;
  std::vector<int> gl_indices;  // basis position -> gl_S basis index
};

SubAlgebraOfGl build_A_S(const GlS& gl);

/// The tau fixed subalgebra of A_S, with canonical basis Gt(a,b). A raw pair
/// (a,b) resolves to +/- a basis element or to zero via the symmetry
/// relations Gt(a+g, b+g) = Gt(a,b) for 2g = 0 and Gt(-a, b) = -Gt(a,b).
struct ASTau {
  const FinAbGroup* S = nullptr;
  std::shared_ptr<LieAlgebra> algebra;
  std::vector<std::pair<int, int>> basis_pairs;   // canonical (alpha, beta)
  std::vector<CycVec> embedding;                   // basis -> gl_S vector
  std::vector<LinearMap> s_action;                 // sigma_gamma per group element
  BilinearForm restricted_form;                    // trace form pulled back

  struct Resolved {
    int index = -1;      // -1 means zero
    int sign = 1;
  };
  Resolved resolve(int alpha, int beta) const;
  /// Expresses a gl_S vector in this basis; nullopt if outside the span.
  std::optional<CycVec> from_gl_vector(const CycVec& v) const;

  std::vector<int> canon_index_;  // |S|^2 table: pair -> basis index
  std::vector<int> canon_sign_;
};

ASTau build_A_S_tau(const GlS& gl);

/// Verifies that the structure constants of A_S^tau match the closed bracket
/// formula on generators, over all generator pairs.
CheckResult check_astau_generator_bracket(const GlS& gl, const ASTau& at);

/// The Lie algebra on generators d(a,b), a, b in S, subject to
/// d(-a,b) = -d(a,b), realized as the quotient of the four delta product
/// algebra K by the ideal J spanned by F(-a,b) + F(a,b).
struct GS {
  const FinAbGroup* S = nullptr;
  std::shared_ptr<LieAlgebra> algebra;
  std::vector<std::pair<int, int>> basis_pairs;  // (alpha in the half set, beta)
  VerificationReport construction;               // ideal, antisymmetry, Jacobi, bracket law

  struct Resolved {
    int index = -1;  // -1 means zero
    int sign = 1;
  };
  Resolved resolve(int alpha, int beta) const;

  std::vector<int> canon_index_;
  std::vector<int> canon_sign_;
};

GS build_g_S(const FinAbGroup& S);

/// Bracket of two generators d(a,b), d(m,n) evaluated directly from the four
/// delta relation, resolved to the canonical basis. Independent of the
/// structure constant table; used to cross check it.
CycVec gs_presentation_bracket(const GS& g, int alpha, int beta, int mu, int nu);

/// The character form <d(a,b), d(m,n)> built from chi on canonical
/// representatives; well-definedness across representatives is verified.
BilinearForm chi_form(const GS& g, const Character& chi);

/// sigma_gamma(d(a,b)) = d(a, b+gamma), one map per group element.
std::vector<LinearMap> s_action_on_gS(const GS& g);

/// d(a,b) -> -Gt(a,b).
LinearMap pi_hom(const GS& g, const ASTau& at);

struct BlockData {
  int coset_index = 0;
  std::vector<int> astau_indices;    // A_S^tau basis positions in the block
  LieAlgebra algebra;
  std::vector<CycVec> cartan;        // plane rotations, block coordinates
};

struct IdealBlocks {
  Subspace ideal_I;          // span of d(a+g, b+g) - d(a,b), 2g = 0
  QuotientResult quotient;   // g_S / I
  LinearMap pi_bar;          // induced map quotient -> A_S^tau
  std::vector<BlockData> blocks;
};

IdealBlocks ideal_I_and_blocks(const GS& g, const ASTau& at);

/// Pairwise equality classes of G(a,b) = E(a+b, b-a): equal exactly when the
/// pairs differ by a diagonal 2-torsion shift.
CheckResult check_g_equality_classes(const GlS& gl);

/// The associative shift operator algebra K on basis F(a,b) with
/// F(a,b) F(m,v) = delta_{v, a+b+m} F(a+m, b+m), viewed as a Lie algebra,
/// together with the order two automorphism -theta, theta(F(a,b)) = F(-a,b).
/// The covariant algebra of K under <-theta> realizes g_S.
struct ShiftAlgebra {
  const FinAbGroup* S = nullptr;
  std::shared_ptr<LieAlgebra> algebra;
  LinearMap involution;
  std::optional<BilinearForm> form;  // f(x y), x in the 2-torsion fiber; needs chi

  int f_index(int a, int b) const { return a * S->size() + b; }
};

ShiftAlgebra build_shift_algebra(const FinAbGroup& S, const Character* chi);

}  // namespace covlie
