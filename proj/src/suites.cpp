#include "covlie/suites.hpp"

#include <numeric>
#include <sstream>

#include "covlie/errors.hpp"
#include "covlie/version.hpp"

namespace covlie {

int default_window(const FinAbGroup& S) { return S.size() <= 5 ? 3 : 2; }

namespace {

void add_bool(VerificationReport& rep, const std::string& name, bool ok,
              long long tuples, const std::string& why) {
  if (ok)
    rep.add_pass(name, tuples);
  else
    rep.add_fail(name, tuples, why);
}

std::optional<Character> try_character(const FinAbGroup& S,
                                       std::optional<long> char_index,
                                       VerificationReport& rep) {
  if (!char_index) return std::nullopt;
  if (!S.is_cyclic()) {
    rep.add_skipped("character_checks", "group is not cyclic");
    return std::nullopt;
  }
  return Character::make(S, *char_index);
}

}  // namespace

VerificationReport run_suite_gs(const FinAbGroup& S, std::optional<long> char_index) {
  VerificationReport rep;
  rep.suite = "gs";
  rep.group = S.to_string();
  rep.character = char_index ? static_cast<int>(*char_index) : 0;

  GlS gl = build_gl_S(S);
  ASTau at = build_A_S_tau(gl);
  GS g = build_g_S(S);
  rep.absorb(g.construction, "g_S_");

  // dimension laws
  auto cs = S.coset_decomposition_2s();
  int s0 = static_cast<int>(S.subgroup_s0().size());
  add_bool(rep, "dim_g_S", g.algebra->dim() == S.size() * (S.size() - s0) / 2, 1,
           "dim " + std::to_string(g.algebra->dim()));
  add_bool(rep, "dim_tau_fixed", at.algebra->dim() == cs.r * cs.k * (cs.k - 1) / 2, 1,
           "dim " + std::to_string(at.algebra->dim()));
  if (S.size() % 2 == 1) {
    SubAlgebraOfGl as = build_A_S(gl);
    add_bool(rep, "even_sum_span_is_everything",
             as.algebra->dim() == S.size() * S.size(), 1,
             "dim " + std::to_string(as.algebra->dim()));
  }

  rep.checks.push_back(check_g_equality_classes(gl));
  rep.checks.push_back(check_astau_generator_bracket(gl, at));

  // tau
  {
    std::string why;
    bool auto_ok = is_automorphism(gl.tau, &why);
    bool order2 = gl.tau.matrix.multiply(gl.tau.matrix) ==
                  CycMatrix::identity(gl.algebra->dim());
    add_bool(rep, "tau_order_two_automorphism", auto_ok && order2, 2, why);
    bool form_ok = true;
    for (int i = 0; i < gl.algebra->dim() && form_ok; ++i)
      for (int j = 0; j < gl.algebra->dim(); ++j)
        if (gl.form.eval(gl.tau.apply_basis(i), gl.tau.apply_basis(j)) !=
            gl.form.eval_basis(i, j)) {
          form_ok = false;
          break;
        }
    add_bool(rep, "tau_preserves_form", form_ok,
             static_cast<long long>(gl.algebra->dim()) * gl.algebra->dim(), "");
  }
  rep.checks.push_back(check_invariant_form(*gl.algebra, gl.form, "trace_form_invariant"));

  // pi
  LinearMap pi = pi_hom(g, at);
  rep.checks.push_back(is_homomorphism(pi, "pi_homomorphism"));
  add_bool(rep, "pi_surjective", rank_of(pi.matrix) == at.algebra->dim(), 1,
           "rank " + std::to_string(rank_of(pi.matrix)));
  {
    std::vector<LinearMap> on_g = s_action_on_gS(g);
    bool equi = true;
    for (int gamma = 0; gamma < S.size() && equi; ++gamma)
      if (!(pi.matrix.multiply(on_g[gamma].matrix) ==
            at.s_action[gamma].matrix.multiply(pi.matrix)))
        equi = false;
    add_bool(rep, "pi_equivariant", equi, S.size(), "");
  }
  if (s0 == 1) rep.checks.push_back(is_isomorphism(pi, "pi_isomorphism"));

  // translation ideal and the induced comparison
  IdealBlocks ib = ideal_I_and_blocks(g, at);
  add_bool(rep, "ideal_plus_quotient_dims",
           ib.ideal_I.dim() + ib.quotient.algebra->dim() == g.algebra->dim(), 1, "");
  rep.checks.push_back(is_isomorphism(ib.pi_bar, "pi_bar_isomorphism"));
  {
    int total = 0;
    for (const auto& b : ib.blocks) total += b.algebra.dim();
    add_bool(rep, "blocks_fill_tau_fixed", total == at.algebra->dim(),
             static_cast<long long>(ib.blocks.size()), "");
  }

  // character dependent checks
  if (auto chi = try_character(S, char_index, rep)) {
    BilinearForm B = chi_form(g, *chi);
    rep.checks.push_back(
        check_invariant_form(*g.algebra, B, "character_form_invariant"));
    std::vector<LinearMap> action = s_action_on_gS(g);
    bool comp = true, form_ok = true;
    for (int a = 0; a < S.size(); ++a) {
      for (int b = 0; b < S.size(); ++b)
        if (!(action[a].matrix.multiply(action[b].matrix) ==
              action[S.add(a, b)].matrix))
          comp = false;
      for (int i = 0; i < g.algebra->dim() && form_ok; ++i)
        for (int j = 0; j < g.algebra->dim(); ++j)
          if (B.eval(action[a].apply_basis(i), action[a].apply_basis(j)) !=
              B.eval_basis(i, j)) {
            form_ok = false;
            break;
          }
    }
    add_bool(rep, "translation_action_composition", comp,
             static_cast<long long>(S.size()) * S.size(), "");
    add_bool(rep, "translation_action_preserves_form", form_ok,
             static_cast<long long>(S.size()) * g.algebra->dim() * g.algebra->dim(),
             "");
    if (s0 == 1) {
      bool isometry = true;
      for (int i = 0; i < g.algebra->dim() && isometry; ++i)
        for (int j = 0; j < g.algebra->dim(); ++j)
          if (B.eval_basis(i, j) !=
              at.restricted_form.eval(pi.apply_basis(i), pi.apply_basis(j))) {
            isometry = false;
            break;
          }
      add_bool(rep, "pi_isometry", isometry,
               static_cast<long long>(g.algebra->dim()) * g.algebra->dim(), "");
    }
  }

  if (g.algebra->dim() == 0) rep.add_pass("g_S_is_zero_noted", 0);
  return rep;
}

VerificationReport run_suite_covariant(const FinAbGroup& S,
                                       std::optional<long> char_index, int window) {
  VerificationReport rep;
  rep.suite = "covariant";
  rep.group = S.to_string();
  rep.character = char_index ? static_cast<int>(*char_index) : 0;
  rep.window = window;

  std::optional<Character> chi = try_character(S, char_index, rep);

  // the shift involution realization of g_S
  ShiftAlgebra K = build_shift_algebra(S, chi ? &*chi : nullptr);
  GroupActionOnLie action = materialize_action(*K.algebra, {K.involution});
  add_bool(rep, "involution_closure_order_two", action.elements.size() == 2, 1, "");
  auto cov = covariant_algebra(*K.algebra, action, K.form ? &*K.form : nullptr);
  rep.absorb(cov->report(), "shift_");

  GS g = build_g_S(S);
  add_bool(rep, "shift_quotient_dimension", cov->dim() == g.algebra->dim(), 1,
           std::to_string(cov->dim()) + " vs " + std::to_string(g.algebra->dim()));

  // transport onto the presented algebra
  {
    const int n = S.size();
    auto to_gs = [&](const CycVec& ambient) {
      CycVec out = cyc_vec_zero(g.algebra->dim());
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          const CycNumber& c = ambient[K.f_index(a, b)];
          if (c.is_zero()) continue;
          auto r = g.resolve(a, b);
          if (r.index >= 0) out[r.index] += c * CycNumber::from_int(r.sign);
        }
      return out;
    };
    bool kills = true;
    for (const auto& row : cov->ideal().basis_rows())
      if (!cyc_vec_is_zero(to_gs(row))) kills = false;
    bool matches = true;
    std::string witness;
    for (int i = 0; i < n * n && matches; ++i) {
      CycVec ei = cyc_vec_zero(n * n);
      ei[i] = CycNumber::one();
      for (int j = 0; j < n * n; ++j) {
        CycVec ej = cyc_vec_zero(n * n);
        ej[j] = CycNumber::one();
        auto br = cov->covariant_bracket_ambient(ei, ej);
        if (!br) continue;
        CycVec ambient = cyc_vec_zero(n * n);
        for (int t = 0; t < cov->dim(); ++t) ambient[cov->coords()[t]] = (*br)[t];
        if (!cyc_vec_eq(to_gs(ambient), g.algebra->bracket(to_gs(ei), to_gs(ej)))) {
          matches = false;
          witness = "pair " + K.algebra->basis_label(i) + ", " +
                    K.algebra->basis_label(j);
          break;
        }
      }
    }
    add_bool(rep, "shift_transport_kills_relations", kills, cov->ideal().dim(), "");
    add_bool(rep, "shift_covariant_bracket_matches_g_S", matches,
             static_cast<long long>(n) * n * n * n, witness);
    if (chi && K.form) {
      // the averaged form descends to the character form of g_S
      bool form_match = true;
      BilinearForm B = chi_form(g, *chi);
      for (int i = 0; i < n * n && form_match; ++i) {
        CycVec ei = cyc_vec_zero(n * n);
        ei[i] = CycNumber::one();
        for (int j = 0; j < n * n; ++j) {
          CycVec ej = cyc_vec_zero(n * n);
          ej[j] = CycNumber::one();
          CycNumber avg = CycNumber::zero();
          for (const auto& el : action.elements)
            avg += K.form->eval(el.apply(ei), ej);
          if (avg != B.eval(to_gs(ei), to_gs(ej))) {
            form_match = false;
            break;
          }
        }
      }
      add_bool(rep, "shift_averaged_form_matches_character_form", form_match,
               static_cast<long long>(n) * n * n * n, "");
    }
  }
  {
    FixedPointIso fp = phi_fixed_point_iso(*K.algebra, action, *cov);
    rep.absorb(fp.report, "shift_");
  }

  // the translation action on the windowed affine algebra
  if (chi) {
    AffineGS bundle = build_affine_gS_with_S_action(g, *chi, window);
    add_bool(rep, "affine_action_order",
             bundle.action.elements.size() == static_cast<size_t>(S.size()), 1, "");
    BilinearForm loop = bundle.affine->loop_form();
    auto acov = covariant_algebra(*bundle.affine, bundle.action, &loop);
    rep.absorb(acov->report(), "affine_");
    FixedPointIso fp = phi_fixed_point_iso(*bundle.affine, bundle.action, *acov);
    rep.absorb(fp.report, "affine_");
    add_bool(rep, "affine_quotient_equals_fixed_dim", acov->dim() == fp.fixed.dim(),
             1, "");
  } else {
    rep.add_skipped("affine_covariant", "needs an injective character");
  }
  return rep;
}

VerificationReport run_suite_affine(const FinAbGroup& S, long char_index, int window) {
  Character chi = Character::make(S, char_index);
  GS g = build_g_S(S);
  return verify_covariant_realization(g, chi, window);
}

VerificationReport run_suite_delta(const FinAbGroup& S, long char_index, int bound) {
  Character chi = Character::make(S, char_index);
  return verify_delta_identities(S, chi, bound);
}

VerificationReport run_suite_appendix(const FinAbGroup& S, long char_index, int window,
                                      const std::optional<CycVec>& grading_element) {
  Character chi = Character::make(S, char_index);
  GS g = build_g_S(S);
  VerificationReport rep;
  rep.suite = "appendix";
  rep.group = S.to_string();
  rep.character = static_cast<int>(char_index);
  rep.window = window;

  // trivial grading: the comparison map is the identity on components
  {
    BilinearForm B = chi_form(g, chi);
    CycVec zero = cyc_vec_zero(g.algebra->dim());
    PsiOutcome triv = psi_twisted_untwisted_iso(*g.algebra, B, zero, 1, window);
    rep.absorb(triv.report, "trivial_grading_");
  }

  rep.absorb(verify_untwisting_chain(g, chi, window, grading_element), "");
  return rep;
}

ClassificationRecord classify_group(const FinAbGroup& S) {
  GlS gl = build_gl_S(S);
  ASTau at = build_A_S_tau(gl);
  GS g = build_g_S(S);
  IdealBlocks ib = ideal_I_and_blocks(g, at);

  ClassificationRecord record;
  record.group = S.to_string();
  record.ideal_dim = ib.ideal_I.dim();
  record.quotient_dim = ib.quotient.algebra->dim();
  unsigned field = std::lcm(4, S.size());
  for (const auto& block : ib.blocks) {
    ClassifiedBlock cb;
    cb.index = block.coset_index;
    cb.dimension = block.algebra.dim();
    RootDecomposition rd = root_decomposition(block.algebra, block.cartan, field);
    Classification c = classify_simple_type(rd);
    cb.rank = c.rank;
    cb.cartan_matrix = c.cartan_matrix;
    cb.type_label = c.label;
    record.blocks.push_back(std::move(cb));
  }
  return record;
}

Json classification_to_json(const ClassificationRecord& record) {
  Json j;
  j["group"] = record.group;
  j["ideal_I_dim"] = record.ideal_dim;
  j["quotient_dim"] = record.quotient_dim;
  Json blocks = Json::array();
  for (const auto& b : record.blocks) {
    Json jb;
    jb["block_index"] = b.index;
    jb["dimension"] = b.dimension;
    jb["rank"] = b.rank;
    jb["cartan_matrix"] = b.cartan_matrix;
    jb["type_label"] = b.type_label;
    blocks.push_back(std::move(jb));
  }
  j["blocks"] = std::move(blocks);
  return j;
}

std::string classification_to_markdown(const ClassificationRecord& record) {
  std::ostringstream out;
  out << "# Classification of " << record.group << "\n\n";
  out << "ideal dimension " << record.ideal_dim << ", quotient dimension "
      << record.quotient_dim << "\n\n";
  out << "| block | dimension | rank | type |\n|---|---|---|---|\n";
  for (const auto& b : record.blocks)
    out << "| " << b.index << " | " << b.dimension << " | " << b.rank << " | "
        << b.type_label << " |\n";
  return out.str();
}

Json build_bundle(const FinAbGroup& S, std::optional<long> char_index) {
  GlS gl = build_gl_S(S);
  SubAlgebraOfGl as = build_A_S(gl);
  ASTau at = build_A_S_tau(gl);
  GS g = build_g_S(S);

  Json j;
  j["engine_version"] = kEngineVersion;
  j["group"] = S.to_string();
  if (char_index) j["character"] = *char_index;
  Json dims;
  dims["gl_S"] = gl.algebra->dim();
  dims["A_S"] = as.algebra->dim();
  dims["A_S_tau"] = at.algebra->dim();
  dims["g_S"] = g.algebra->dim();
  j["dimensions"] = std::move(dims);
  j["gl_S"] = lie_algebra_to_json(*gl.algebra);
  j["A_S_tau"] = lie_algebra_to_json(*at.algebra);
  j["g_S"] = lie_algebra_to_json(*g.algebra);
  j["trace_form"] = bilinear_form_to_json(gl.form, 1);

  LinearMap pi = pi_hom(g, at);
  j["pi_matrix"] = matrix_to_json(pi.matrix);

  Json acts = Json::array();
  for (const auto& m : s_action_on_gS(g)) acts.push_back(matrix_to_json(m.matrix));
  j["s_action_on_g_S"] = std::move(acts);

  if (char_index && S.is_cyclic()) {
    Character chi = Character::make(S, *char_index);
    j["character_form"] = bilinear_form_to_json(chi_form(g, chi), chi.order());
  }
  return j;
}

}  // namespace covlie
