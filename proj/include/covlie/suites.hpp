#pragma once

#include <optional>

#include "covlie/affine.hpp"
#include "covlie/serialize.hpp"

namespace covlie {

/// Default sweep window for a group: deep windows for small groups, two for
/// the larger desk scale orders.
int default_window(const FinAbGroup& S);

/// Structural checks on the finite dimensional algebras: construction of
/// g_S, dimension laws, the equality classes of the squeezed generators,
/// tau, the character form, the translation action, pi, and the translation
/// ideal with its induced comparison map.
VerificationReport run_suite_gs(const FinAbGroup& S, std::optional<long> char_index);

/// Covariant algebra checks: the shift involution realization of g_S and the
/// translation action on the windowed affine algebra, with the fixed point
/// comparison for both.
VerificationReport run_suite_covariant(const FinAbGroup& S,
                                       std::optional<long> char_index, int window);

/// The covariant bracket against the defining bracket, exhaustively.
VerificationReport run_suite_affine(const FinAbGroup& S, long char_index, int window);

/// Delta function coefficient extraction against component brackets.
VerificationReport run_suite_delta(const FinAbGroup& S, long char_index, int bound);

/// The twisted against untwisted comparison and the identification chain.
VerificationReport run_suite_appendix(const FinAbGroup& S, long char_index, int window,
                                      const std::optional<CycVec>& grading_element);

struct ClassifiedBlock {
  int index = 0;
  int dimension = 0;
  int rank = 0;
  std::vector<std::vector<long>> cartan_matrix;
  std::string type_label;
};

struct ClassificationRecord {
  std::string group;
  int ideal_dim = 0;
  int quotient_dim = 0;
  std::vector<ClassifiedBlock> blocks;
};

ClassificationRecord classify_group(const FinAbGroup& S);

Json classification_to_json(const ClassificationRecord& record);
std::string classification_to_markdown(const ClassificationRecord& record);

/// The serialized bundle of every constructed algebra, form, and map.
Json build_bundle(const FinAbGroup& S, std::optional<long> char_index);

}  // namespace covlie
