#pragma once

#include <map>
#include <memory>

#include "covlie/covariant.hpp"
#include "covlie/realization.hpp"

namespace covlie {

/// Degree window for affine elements. Brackets whose result degree leaves
/// the window are rejected, never truncated.
struct DegreeWindow {
  int w = 1;
  bool contains(long n) const { return n >= -w && n <= w; }
};

/// Finite sum of base elements at integer degrees plus a central coefficient.
struct AffineElement {
  struct Term {
    int base_index;
    long degree;
    CycNumber coeff;
  };
  std::vector<Term> terms;
  CycNumber central = CycNumber::zero();
};

/// The degree windowed affine Lie algebra of a base algebra with a chosen
/// symmetric invariant form: basis b x t^n for |n| <= w plus one central
/// element. Brackets carry the cocycle m delta_{m+n,0} <a,b> k.
class WindowedAffine final : public BracketSpace {
 public:
  WindowedAffine(const LieAlgebra& base, const BilinearForm& form, DegreeWindow w);

  int dim() const override { return total_dim_; }
  const std::string& basis_label(int i) const override { return labels_[i]; }
  std::optional<SparseVec> try_bracket_basis(int i, int j) const override;

  const LieAlgebra& base() const { return *base_; }
  const BilinearForm& form() const { return *form_; }
  DegreeWindow window() const { return window_; }

  int index_of(int base_index, long degree) const;  // throws WindowExceededError
  int central_index() const { return total_dim_ - 1; }
  std::pair<int, long> base_degree(int idx) const;

  CycVec to_vec(const AffineElement& x) const;
  AffineElement from_vec(const CycVec& v) const;

  /// The loop form <a t^m, b t^n> = delta_{m+n,0} <a,b>, central orthogonal.
  BilinearForm loop_form() const;

 private:
  const LieAlgebra* base_;
  const BilinearForm* form_;
  DegreeWindow window_;
  int total_dim_;
  std::vector<std::string> labels_;
};

/// Bracket of affine elements; throws WindowExceededError when a result
/// degree leaves the window.
AffineElement affine_bracket(const WindowedAffine& A, const AffineElement& x,
                             const AffineElement& y);

/// The q-Virasoro type algebra on generators D(a)(n), a in S, n windowed,
/// with central element c. D(-a)(n) = -D(a)(n), so generators live on the
/// half set; D(a)(n) = 0 when 2a = 0.
class DsAlgebra {
 public:
  /// `central_term` exists as an ablation switch for negative controls.
  DsAlgebra(const FinAbGroup& S, const Character& chi, int window,
            bool central_term = true);

  struct Element {
    std::map<std::pair<int, long>, CycNumber> terms;  // (half set pos, degree)
    CycNumber central = CycNumber::zero();
  };

  const FinAbGroup& group() const { return *S_; }
  const Character& chi() const { return *chi_; }
  int window() const { return window_; }
  int half_set_size() const { return static_cast<int>(half_set_.size()); }
  int half_set_element(int pos) const { return half_set_[pos]; }

  /// D(alpha)(n) resolved to the half set, zero when 2 alpha = 0.
  Element d_generator(int alpha, long n) const;
  /// D~(alpha)(n) = D(alpha)(n) + [2 alpha != 0] (chi(a) - chi(-a))^-1 delta_{n,0} c.
  Element d_tilde(int alpha, long n) const;
  /// D(alpha,beta)(n) = chi(beta)^-n D~(alpha)(n).
  Element d_ab(int alpha, int beta, long n) const;

  /// Defining bracket on generators; throws WindowExceededError.
  Element bracket_generators(int alpha, long n, int beta, long m) const;
  Element bracket(const Element& x, const Element& y) const;

  static void add_scaled(Element& dst, const CycNumber& c, const Element& src);
  bool equal(const Element& x, const Element& y) const;
  std::string to_string(const Element& x) const;

 private:
  const FinAbGroup* S_;
  const Character* chi_;
  int window_;
  bool central_term_;
  std::vector<int> half_set_;            // alpha with 2a != 0, alpha < -alpha
  std::vector<int> half_pos_;            // element -> position or -1
  std::vector<int> half_sign_;
  std::vector<std::vector<CycNumber>> qint_;  // [elem][m + window]
};

/// Windowed affine algebra over (g_S, chi form) together with the twisted
/// translation action gamma.(d(a,b) t^n) = chi(gamma)^n d(a,b+gamma) t^n.
struct AffineGS {
  const GS* gs = nullptr;
  const Character* chi = nullptr;
  std::shared_ptr<BilinearForm> form;       // chi form on g_S
  std::shared_ptr<WindowedAffine> affine;
  GroupActionOnLie action;                  // one element per group element
};

AffineGS build_affine_gS_with_S_action(const GS& gs, const Character& chi, int window);

struct RealizationOptions {
  bool central_term = true;  // negative control drops the central cocycle
};

/// Exhaustive agreement between the covariant bracket of the windowed
/// affine algebra and the defining bracket of the q-Virasoro type algebra,
/// transported through d(a,b) t^n -> chi(b)^-n D~(a)(n), central to central.
VerificationReport verify_covariant_realization(const GS& gs, const Character& chi,
                                               int window,
                                               RealizationOptions opts = {});

/// Coefficient extraction identities for the generating function relations:
/// the delta function commutator expansions against the component brackets,
/// for all degrees |m|, |n| <= bound.
VerificationReport verify_delta_identities(const FinAbGroup& S, const Character& chi,
                                           int bound);

struct PsiOutcome {
  VerificationReport report;
  std::vector<long> eigenvalues;  // distinct integer ad h eigenvalues
};

/// Windowed comparison of the twisted realization against the untwisted
/// affine algebra: psi(a x t^(n - r/T)) = a x t^n + (1/T) <h,a> delta_{n,0} k,
/// psi(k) = k, for ad h semisimple with integer eigenvalues.
PsiOutcome psi_twisted_untwisted_iso(const LieAlgebra& L, const BilinearForm& B,
                                     const CycVec& h, int T, int window);

/// Best effort search for h in the span of the given Cartan candidates with
/// exp((2 pi i / T) ad h) equal to sigma. Solves the linear system that pins
/// ad h to an integer scalar on each sigma eigenspace, lifting eigenvalue
/// exponents from [0, T) by at most one period. NotFound is reported as
/// nullopt and is not a refutation.
std::optional<CycVec> find_grading_element(const LieAlgebra& L,
                                           const std::vector<CycVec>& cartan,
                                           const LinearMap& sigma, int T);

/// For odd order groups: a grading element for the translation shift built
/// from the Fourier spectrum of the permutation it induces on the group
/// algebra, with the symmetric integer lift of the exponents. The element is
/// returned in g_S coordinates and is verified downstream, never trusted.
std::optional<CycVec> grading_element_for_shift(const GS& gs, const Character& chi);

/// The full identification chain at window scale: the covariant algebra
/// against the q-Virasoro type algebra, the fixed point comparison, and the
/// twisted to untwisted map composed with the degree reindexing. Records
/// which links were machine checked.
VerificationReport verify_untwisting_chain(const GS& gs, const Character& chi,
                                               int window,
                                               const std::optional<CycVec>& h_override);

}  // namespace covlie
