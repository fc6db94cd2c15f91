#include "covlie/serialize.hpp"

#include <sstream>

#include "covlie/version.hpp"

namespace covlie {

Json lie_algebra_to_json(const LieAlgebra& L) {
  Json j;
  j["dimension"] = L.dim();
  j["scalar_order"] = L.scalar_order();
  j["basis"] = L.labels();
  Json constants = Json::array();
  for (const auto& [key, row] : L.upper_table()) {
    for (const auto& [k, c] : row) {
      constants.push_back(Json::array({key.first, key.second, k, c.to_string()}));
    }
  }
  j["structure_constants"] = std::move(constants);
  return j;
}

Json matrix_to_json(const CycMatrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).to_string());
    rows.push_back(std::move(row));
  }
  return rows;
}

Json bilinear_form_to_json(const BilinearForm& B, unsigned order) {
  Json j;
  j["scalar_order"] = order;
  j["gram"] = matrix_to_json(B.gram);
  return j;
}

Json report_to_json(const VerificationReport& r) {
  Json j;
  j["suite"] = r.suite;
  j["group"] = r.group;
  j["character"] = r.character;
  if (r.window) j["window"] = *r.window;
  j["engine_version"] = kEngineVersion;
  j["passed"] = r.passed();
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json jc;
    jc["name"] = c.name;
    jc["status"] = c.status;
    jc["tuple_count"] = c.tuple_count;
    if (c.witness) jc["witness"] = *c.witness;
    checks.push_back(std::move(jc));
  }
  j["checks"] = std::move(checks);
  return j;
}

std::string report_to_markdown(const VerificationReport& r) {
  std::ostringstream out;
  out << "# Suite `" << r.suite << "` on " << r.group << " (character " << r.character;
  if (r.window) out << ", window " << *r.window;
  out << ")\n\n";
  out << "| check | status | tuples |\n|---|---|---|\n";
  for (const auto& c : r.checks) {
    out << "| " << c.name << " | " << c.status << " | " << c.tuple_count << " |\n";
  }
  out << "\n**" << (r.passed() ? "PASS" : "FAIL") << "**\n";
  for (const auto& c : r.checks) {
    if (c.witness) out << "\nwitness (" << c.name << "): " << *c.witness << "\n";
  }
  return out.str();
}

}  // namespace covlie
