#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "covlie/errors.hpp"
#include "covlie/realization.hpp"

using namespace covlie;

namespace {

const CycNumber kOne = CycNumber::one();

CycVec gt_vec(const ASTau& at, int a, int b) {
  CycVec v = cyc_vec_zero(at.algebra->dim());
  auto r = at.resolve(a, b);
  if (r.index >= 0) v[r.index] = CycNumber::from_int(r.sign);
  return v;
}

CycVec d_vec(const GS& g, int a, int b) {
  CycVec v = cyc_vec_zero(g.algebra->dim());
  auto r = g.resolve(a, b);
  if (r.index >= 0) v[r.index] = CycNumber::from_int(r.sign);
  return v;
}

}  // namespace

TEST_CASE("general linear algebra on Z3") {
  FinAbGroup S = FinAbGroup::parse("Z3");
  GlS gl = build_gl_S(S);
  CHECK(gl.algebra->dim() == 9);
  CHECK(check_jacobi(*gl.algebra).passed());
  CHECK(check_invariant_form(*gl.algebra, gl.form).passed());

  // [E(1,2), E(2,0)] = E(1,0)
  CycVec br = gl.algebra->bracket(
      [&] { CycVec v = cyc_vec_zero(9); v[gl.e_index(1, 2)] = kOne; return v; }(),
      [&] { CycVec v = cyc_vec_zero(9); v[gl.e_index(2, 0)] = kOne; return v; }());
  CycVec expect = cyc_vec_zero(9);
  expect[gl.e_index(1, 0)] = kOne;
  CHECK(cyc_vec_eq(br, expect));

  // self brackets vanish
  for (int i = 0; i < 9; ++i) CHECK(gl.algebra->bracket_basis(i, i).empty());

  // tau is an order two automorphism preserving the form
  CHECK(is_automorphism(gl.tau));
  CHECK(gl.tau.matrix.multiply(gl.tau.matrix) == CycMatrix::identity(9));
  CycVec e12 = cyc_vec_zero(9);
  e12[gl.e_index(1, 2)] = kOne;
  CycVec img = gl.tau.apply(e12);
  CycVec expect_tau = cyc_vec_zero(9);
  expect_tau[gl.e_index(2, 1)] = -kOne;
  CHECK(cyc_vec_eq(img, expect_tau));
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j)
      CHECK(gl.form.eval(gl.tau.apply_basis(i), gl.tau.apply_basis(j)) ==
            gl.form.eval_basis(i, j));
}

TEST_CASE("the even sum subalgebra and its tau fixed points on Z5") {
  FinAbGroup S = FinAbGroup::parse("Z5");
  GlS gl = build_gl_S(S);
  SubAlgebraOfGl as = build_A_S(gl);
  CHECK(as.algebra->dim() == 25);  // odd order: the whole general linear algebra

  ASTau at = build_A_S_tau(gl);
  CHECK(at.algebra->dim() == 10);
  CHECK(check_jacobi(*at.algebra).passed());
  CHECK(check_astau_generator_bracket(gl, at).passed());

  // [Gt(1,0), Gt(2,3)] = -Gt at (3,2)
  auto r1 = at.resolve(1, 0);
  auto r2 = at.resolve(2, 3);
  REQUIRE(r1.index >= 0);
  REQUIRE(r2.index >= 0);
  CHECK(r1.sign == 1);
  CHECK(r2.sign == 1);
  CycVec lhs = dense_from_sparse(at.algebra->bracket_basis(r1.index, r2.index), 10);
  CycVec rhs = gt_vec(at, 3, 2);
  for (auto& x : rhs) x = -x;
  CHECK(cyc_vec_eq(lhs, rhs));

  // symmetry relations on generators
  for (int a = 0; a < 5; ++a) {
    for (int b = 0; b < 5; ++b) {
      CycVec plain = gt_vec(at, a, b);
      CycVec neg = gt_vec(at, S.neg(a), b);
      for (auto& x : neg) x = -x;
      CHECK(cyc_vec_eq(plain, neg));
    }
  }
}

TEST_CASE("tau fixed points computed two ways agree") {
  FinAbGroup S = FinAbGroup::parse("Z3");
  GlS gl = build_gl_S(S);
  ASTau at = build_A_S_tau(gl);
  Subspace fixed = fixed_subalgebra(*gl.algebra, {gl.tau});
  CHECK(fixed.dim() == at.algebra->dim());
  for (const auto& v : at.embedding) CHECK(fixed.contains(v));
}

TEST_CASE("tau fixed dimensions follow the block count law") {
  // dim = r k (k-1) / 2 with k = |2S| and r = |S^0|
  for (const char* spec : {"Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8", "Z9", "Z2xZ2"}) {
    FinAbGroup S = FinAbGroup::parse(spec);
    GlS gl = build_gl_S(S);
    ASTau at = build_A_S_tau(gl);
    auto cs = S.coset_decomposition_2s();
    CHECK(at.algebra->dim() == cs.r * cs.k * (cs.k - 1) / 2);
  }
}

TEST_CASE("g_S construction on Z5") {
  FinAbGroup S = FinAbGroup::parse("Z5");
  GS g = build_g_S(S);
  CHECK(g.algebra->dim() == 10);
  CHECK(g.construction.passed());

  // [d(1,0), d(2,3)] resolves to the pair (3,2)
  CycVec br = gs_presentation_bracket(g, 1, 0, 2, 3);
  CHECK(cyc_vec_eq(br, d_vec(g, 3, 2)));

  // generators with matched arguments square to zero
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b)
      CHECK(cyc_vec_is_zero(gs_presentation_bracket(g, a, b, a, b)));

  // d(0, b) and doubled torsion entries vanish
  for (int b = 0; b < 5; ++b) CHECK(g.resolve(0, b).index < 0);
}

TEST_CASE("g_S dimension law for odd orders") {
  CHECK(build_g_S(FinAbGroup::parse("Z3")).algebra->dim() == 3);
  CHECK(build_g_S(FinAbGroup::parse("Z5")).algebra->dim() == 10);
  CHECK(build_g_S(FinAbGroup::parse("Z7")).algebra->dim() == 21);
  CHECK(build_g_S(FinAbGroup::parse("Z9")).algebra->dim() == 36);
}

TEST_CASE("exponent two groups collapse to zero") {
  FinAbGroup S = FinAbGroup::parse("Z2xZ2");
  GS g = build_g_S(S);
  CHECK(g.algebra->dim() == 0);
  CHECK(g.construction.passed());
}

TEST_CASE("character form values on Z5") {
  FinAbGroup S = FinAbGroup::parse("Z5");
  GS g = build_g_S(S);
  Character chi = Character::make(S, 1);
  BilinearForm B = chi_form(g, chi);

  auto pair_form = [&](int a1, int b1, int a2, int b2) {
    CycVec v1 = d_vec(g, a1, b1), v2 = d_vec(g, a2, b2);
    return B.eval(v1, v2);
  };
  CHECK(pair_form(1, 0, 4, 0) == kOne);
  CHECK(pair_form(1, 0, 1, 0) == CycNumber::from_int(-1));
  CHECK(pair_form(1, 0, 2, 0) == CycNumber::zero());

  CHECK(check_invariant_form(*g.algebra, B).passed());

  // trivial torsion: the form reduces to the sign difference of deltas
  for (int i = 0; i < 10; ++i) {
    const auto& [a1, b1] = g.basis_pairs[i];
    for (int j = 0; j < 10; ++j) {
      const auto& [a2, b2] = g.basis_pairs[j];
      long expect = 0;
      if (b1 == b2) {
        if (a1 == S.neg(a2)) expect += 1;
        if (a1 == a2) expect -= 1;
      }
      CHECK(B.eval_basis(i, j) == CycNumber::from_int(expect));
    }
  }
}

TEST_CASE("translation action on g_S") {
  FinAbGroup S = FinAbGroup::parse("Z5");
  GS g = build_g_S(S);
  Character chi = Character::make(S, 1);
  BilinearForm B = chi_form(g, chi);
  std::vector<LinearMap> action = s_action_on_gS(g);

  CHECK(action[0].matrix == CycMatrix::identity(10));
  CHECK(cyc_vec_eq(action[2].apply(d_vec(g, 1, 0)), d_vec(g, 1, 2)));

  // composition law and form preservation
  for (int a = 0; a < 5; ++a) {
    for (int b = 0; b < 5; ++b) {
      CHECK(action[a].matrix.multiply(action[b].matrix) ==
            action[S.add(a, b)].matrix);
    }
    for (int i = 0; i < 10; ++i)
      for (int j = 0; j < 10; ++j)
        CHECK(B.eval(action[a].apply_basis(i), action[a].apply_basis(j)) ==
              B.eval_basis(i, j));
  }
}

TEST_CASE("pi is an isomorphism and an isometry for odd orders") {
  for (const char* spec : {"Z3", "Z5", "Z7"}) {
    FinAbGroup S = FinAbGroup::parse(spec);
    GlS gl = build_gl_S(S);
    ASTau at = build_A_S_tau(gl);
    GS g = build_g_S(S);
    Character chi = Character::make(S, 1);
    BilinearForm B = chi_form(g, chi);

    LinearMap pi = pi_hom(g, at);
    CHECK(is_isomorphism(pi).passed());

    // isometry against the restricted trace form
    for (int i = 0; i < g.algebra->dim(); ++i)
      for (int j = 0; j < g.algebra->dim(); ++j)
        CHECK(B.eval_basis(i, j) ==
              at.restricted_form.eval(pi.apply_basis(i), pi.apply_basis(j)));

    // equivariance for the two translation actions
    std::vector<LinearMap> on_g = s_action_on_gS(g);
    for (int gamma = 0; gamma < S.size(); ++gamma)
      CHECK(pi.matrix.multiply(on_g[gamma].matrix) ==
            at.s_action[gamma].matrix.multiply(pi.matrix));
  }
}

TEST_CASE("pi on Z4 has the translation ideal as kernel") {
  FinAbGroup S = FinAbGroup::parse("Z4");
  GlS gl = build_gl_S(S);
  ASTau at = build_A_S_tau(gl);
  GS g = build_g_S(S);
  CHECK(g.algebra->dim() == 4);
  CHECK(at.algebra->dim() == 2);

  LinearMap pi = pi_hom(g, at);
  CHECK(is_homomorphism(pi).passed());
  CHECK(rank_of(pi.matrix) == 2);

  IdealBlocks ib = ideal_I_and_blocks(g, at);
  CHECK(ib.ideal_I.dim() == 2);
  for (const auto& row : ib.ideal_I.basis_rows())
    CHECK(cyc_vec_is_zero(pi.apply(row)));
  CHECK(is_isomorphism(ib.pi_bar).passed());
}

TEST_CASE("equality classes of the squeezed generators") {
  for (const char* spec : {"Z4", "Z5", "Z6", "Z8", "Z9", "Z2xZ2"}) {
    FinAbGroup S = FinAbGroup::parse(spec);
    GlS gl = build_gl_S(S);
    CHECK(check_g_equality_classes(gl).passed());
  }
}

TEST_CASE("killing form is nondegenerate on the odd orthogonal realization") {
  FinAbGroup S = FinAbGroup::parse("Z3");
  GlS gl = build_gl_S(S);
  ASTau at = build_A_S_tau(gl);
  CHECK(rank_of(killing_form(*at.algebra).gram) == 3);

  FinAbGroup z4 = FinAbGroup::parse("Z4");
  GS g4 = build_g_S(z4);
  CHECK(rank_of(killing_form(*g4.algebra).gram) < g4.algebra->dim());
}

TEST_CASE("blocks and classification on Z5") {
  FinAbGroup S = FinAbGroup::parse("Z5");
  GlS gl = build_gl_S(S);
  ASTau at = build_A_S_tau(gl);
  GS g = build_g_S(S);

  IdealBlocks ib = ideal_I_and_blocks(g, at);
  CHECK(ib.ideal_I.dim() == 0);
  CHECK(is_isomorphism(ib.pi_bar).passed());
  REQUIRE(ib.blocks.size() == 1);
  const BlockData& block = ib.blocks[0];
  CHECK(block.algebra.dim() == 10);
  REQUIRE(block.cartan.size() == 2);

  RootDecomposition rd = root_decomposition(block.algebra, block.cartan, 20);
  CHECK(rd.roots.size() == 8);
  for (const auto& rs : rd.roots) CHECK(rs.basis.size() == 1);
  CHECK(rd.zero_space.size() == 2);
  // the zero weight space is the cartan span
  Subspace cart(10);
  for (const auto& h : block.cartan) cart.insert(h);
  for (const auto& z : rd.zero_space) CHECK(cart.contains(z));

  Classification c = classify_simple_type(rd);
  CHECK(c.label == "B2");
}

TEST_CASE("blocks and classification on even orders") {
  struct Expect {
    const char* spec;
    size_t blocks;
    int block_dim;
    const char* label;
  };
  for (const Expect& e : {Expect{"Z6", 2, 3, "B1"}, Expect{"Z8", 2, 6, "A1xA1"},
                          Expect{"Z4", 2, 1, "abelian-dim-1"}}) {
    FinAbGroup S = FinAbGroup::parse(e.spec);
    GlS gl = build_gl_S(S);
    ASTau at = build_A_S_tau(gl);
    GS g = build_g_S(S);
    IdealBlocks ib = ideal_I_and_blocks(g, at);
    CHECK(is_isomorphism(ib.pi_bar).passed());
    REQUIRE(ib.blocks.size() == e.blocks);
    for (const auto& block : ib.blocks) {
      CHECK(block.algebra.dim() == e.block_dim);
      RootDecomposition rd =
          root_decomposition(block.algebra, block.cartan, 4 * S.size());
      CHECK(classify_simple_type(rd).label == e.label);
    }
    // blocks commute pairwise inside the tau fixed algebra
    if (ib.blocks.size() == 2) {
      for (int x : ib.blocks[0].astau_indices)
        for (int y : ib.blocks[1].astau_indices)
          CHECK(at.algebra->bracket_basis(x, y).empty());
    }
  }
}
