#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "covlie/affine.hpp"
#include "covlie/covariant.hpp"
#include "covlie/realization.hpp"

using namespace covlie;

namespace {

const CycNumber kOne = CycNumber::one();

}  // namespace

TEST_CASE("trivial group leaves the algebra unchanged") {
  FinAbGroup S = FinAbGroup::parse("Z3");
  GlS gl = build_gl_S(S);
  LinearMap id;
  id.domain = gl.algebra.get();
  id.codomain = gl.algebra.get();
  id.matrix = CycMatrix::identity(9);
  GroupActionOnLie action = materialize_action(*gl.algebra, {id});
  CHECK(action.elements.size() == 1);

  auto cov = covariant_algebra(*gl.algebra, action, &gl.form);
  CHECK(cov->report().passed());
  CHECK(cov->dim() == 9);
  CHECK(cov->ideal().dim() == 0);

  FixedPointIso fp = phi_fixed_point_iso(*gl.algebra, action, *cov);
  CHECK(fp.report.passed());
  CHECK(fp.phi.matrix == CycMatrix::identity(9));
}

TEST_CASE("the covariant algebra of the shift involution is g_S") {
  for (const char* spec : {"Z3", "Z4", "Z5", "Z6", "Z2xZ2"}) {
    FinAbGroup S = FinAbGroup::parse(spec);
    ShiftAlgebra K = build_shift_algebra(S, nullptr);
    CHECK(check_jacobi(*K.algebra).passed());

    GroupActionOnLie action = materialize_action(*K.algebra, {K.involution});
    CHECK(action.elements.size() == 2);

    auto cov = covariant_algebra(*K.algebra, action, nullptr);
    CHECK(cov->report().passed());

    GS g = build_g_S(S);
    CHECK(cov->dim() == g.algebra->dim());

    // the map F(a,b) + I -> d(a,b) intertwines the covariant bracket with
    // the four delta presentation
    const int n = S.size();
    auto to_gs = [&](const CycVec& ambient) {
      CycVec out = cyc_vec_zero(g.algebra->dim());
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
          const CycNumber& c = ambient[K.f_index(a, b)];
          if (c.is_zero()) continue;
          auto r = g.resolve(a, b);
          if (r.index >= 0) out[r.index] += c * CycNumber::from_int(r.sign);
        }
      }
      return out;
    };
    // the transport kills the relation ideal
    for (const auto& row : cov->ideal().basis_rows())
      CHECK(cyc_vec_is_zero(to_gs(row)));
    // and matches brackets on every generator pair
    for (int i = 0; i < n * n; ++i) {
      CycVec ei = cyc_vec_zero(n * n);
      ei[i] = kOne;
      for (int j = 0; j < n * n; ++j) {
        CycVec ej = cyc_vec_zero(n * n);
        ej[j] = kOne;
        auto br = cov->covariant_bracket_ambient(ei, ej);
        REQUIRE(br.has_value());
        // lift the quotient coordinates back to ambient to transport
        CycVec ambient = cyc_vec_zero(n * n);
        for (int t = 0; t < cov->dim(); ++t)
          ambient[cov->coords()[t]] = (*br)[t];
        CycVec lhs = to_gs(ambient);
        CycVec rhs = g.algebra->bracket(to_gs(ei), to_gs(ej));
        CHECK(cyc_vec_eq(lhs, rhs));
      }
    }
  }
}

TEST_CASE("fixed point comparison for the shift involution") {
  FinAbGroup S = FinAbGroup::parse("Z5");
  ShiftAlgebra K = build_shift_algebra(S, nullptr);
  GroupActionOnLie action = materialize_action(*K.algebra, {K.involution});
  auto cov = covariant_algebra(*K.algebra, action, nullptr);
  FixedPointIso fp = phi_fixed_point_iso(*K.algebra, action, *cov);
  CHECK(fp.report.passed());
  CHECK(fp.fixed.dim() == cov->dim());
}

TEST_CASE("fixed point comparison for tau on the general linear algebra") {
  FinAbGroup S = FinAbGroup::parse("Z3");
  GlS gl = build_gl_S(S);
  GroupActionOnLie action = materialize_action(*gl.algebra, {gl.tau});
  CHECK(action.elements.size() == 2);
  auto cov = covariant_algebra(*gl.algebra, action, &gl.form);
  CHECK(cov->report().passed());
  FixedPointIso fp = phi_fixed_point_iso(*gl.algebra, action, *cov);
  CHECK(fp.report.passed());
  // the fixed points are exactly the tau fixed subalgebra
  ASTau at = build_A_S_tau(gl);
  CHECK(fp.fixed.dim() == at.algebra->dim());
  for (const auto& v : at.embedding) CHECK(fp.fixed.contains(v));
}

TEST_CASE("translation action on the windowed affine algebra") {
  FinAbGroup S = FinAbGroup::parse("Z3");
  GS g = build_g_S(S);
  Character chi = Character::make(S, 1);
  AffineGS bundle = build_affine_gS_with_S_action(g, chi, 2);
  CHECK(bundle.action.elements.size() == 3);

  BilinearForm loop = bundle.affine->loop_form();
  auto cov = covariant_algebra(*bundle.affine, bundle.action, &loop);
  CHECK(cov->report().passed());

  FixedPointIso fp = phi_fixed_point_iso(*bundle.affine, bundle.action, *cov);
  CHECK(fp.report.passed());
  CHECK(cov->dim() == fp.fixed.dim());
  // one basis vector per half set representative and degree, plus the center
  CHECK(cov->dim() == 1 * 5 + 1);
}

TEST_CASE("central scaling of the fixed point comparison") {
  FinAbGroup S = FinAbGroup::parse("Z5");
  GS g = build_g_S(S);
  Character chi = Character::make(S, 1);
  AffineGS bundle = build_affine_gS_with_S_action(g, chi, 3);
  auto cov = covariant_algebra(*bundle.affine, bundle.action, nullptr);
  CHECK(cov->report().passed());
  FixedPointIso fp = phi_fixed_point_iso(*bundle.affine, bundle.action, *cov);
  CHECK(fp.report.passed());

  // phi multiplies the central element by the group order
  int kc = bundle.affine->central_index();
  int qc = -1;
  for (int t = 0; t < cov->dim(); ++t)
    if (cov->coords()[t] == kc) qc = t;
  REQUIRE(qc >= 0);
  CycVec img = fp.phi.apply_basis(qc);
  CHECK(img[kc] == CycNumber::from_int(5));
}
