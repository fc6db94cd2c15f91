#pragma once

#include <json.hpp>

#include "covlie/liealg.hpp"
#include "covlie/report.hpp"

namespace covlie {

using Json = nlohmann::ordered_json;

/// Basis labels plus nonzero structure constants as (i, j, k, scalar string).
/// Field ordering and constant ordering are fixed, so output is byte stable.
Json lie_algebra_to_json(const LieAlgebra& L);
Json bilinear_form_to_json(const BilinearForm& B, unsigned order);
Json matrix_to_json(const CycMatrix& m);
Json report_to_json(const VerificationReport& r);
std::string report_to_markdown(const VerificationReport& r);

}  // namespace covlie
