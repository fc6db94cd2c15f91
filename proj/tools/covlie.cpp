// covlie: exact arithmetic Lie theory engine for covariant and q-deformed
// Virasoro type algebras over finite cyclic groups.
//
//   covlie build    --group Z5 --char 1              emit the algebra bundle
//   covlie verify   --suite all --group Z5 --char 1  run verification suites
//   covlie classify --group Z6                       simple type of each block
//
// Exit codes: 0 all checks pass, 1 a verification failed, 2 usage error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "covlie/errors.hpp"
#include "covlie/suites.hpp"
#include "covlie/version.hpp"

namespace {

using namespace covlie;

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw CovlieError("cannot write to " + out_path);
  out << text << "\n";
}

std::optional<CycVec> load_grading_element(const std::string& path) {
  if (path.empty()) return std::nullopt;
  std::ifstream in(path);
  if (!in) throw CovlieError("cannot read grading element file " + path);
  Json j = Json::parse(in);
  unsigned order = j.at("order").get<unsigned>();
  CycVec h;
  for (const auto& entry : j.at("coefficients"))
    h.push_back(CycNumber::parse(entry.get<std::string>(), order));
  return h;
}

int run(int argc, char** argv) {
  CLI::App app{"exact covariant Lie algebra engine"};
  app.set_version_flag("--version", kEngineVersion);
  app.require_subcommand(1);

  std::string group_spec = "Z5";
  long char_index = 1;
  bool no_char = false;
  int window = -1;
  std::string format = "json";
  std::string out_path;
  std::string suite = "all";
  std::string grading_path;
  bool search_h = false;

  auto add_common = [&](CLI::App* cmd, bool with_char) {
    cmd->add_option("--group", group_spec, "group spec, e.g. Z5 or Z2xZ2");
    if (with_char) {
      cmd->add_option("--char", char_index, "character index, coprime to the order");
      cmd->add_flag("--no-char", no_char, "build without a character");
    }
    cmd->add_option("--format", format, "json or md")
        ->check(CLI::IsMember({"json", "md"}));
    cmd->add_option("--out", out_path, "output file (default stdout)");
  };

  CLI::App* build = app.add_subcommand("build", "construct and serialize the algebras");
  add_common(build, true);

  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  add_common(verify, true);
  verify->add_option("--suite", suite, "gs, covariant, affine, delta, appendix, all")
      ->check(CLI::IsMember({"gs", "covariant", "affine", "delta", "appendix", "all"}));
  verify->add_option("--window", window, "degree window (default by group size)");
  verify->add_option("--grading-element", grading_path,
                     "JSON file with a grading element for the appendix suite");
  verify->add_flag("--search-h", search_h,
                   "search for a grading element (default for small odd orders)");

  CLI::App* classify = app.add_subcommand("classify", "simple type of each block");
  add_common(classify, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  FinAbGroup S = FinAbGroup::parse(group_spec);
  std::optional<long> chi_index;
  if (!no_char) chi_index = char_index;
  if (window < 0) window = default_window(S);

  if (build->parsed()) {
    if (chi_index && S.is_cyclic()) Character::make(S, *chi_index);  // validate early
    Json bundle = build_bundle(S, chi_index);
    if (format == "md") {
      std::ostringstream md;
      md << "# Algebras over " << S.to_string()
         << "\n\n| algebra | dimension |\n|---|---|\n";
      for (const auto& [key, value] : bundle["dimensions"].items())
        md << "| " << key << " | " << value << " |\n";
      emit(md.str(), out_path);
    } else {
      emit(bundle.dump(2), out_path);
    }
    return 0;
  }

  if (classify->parsed()) {
    ClassificationRecord record = classify_group(S);
    emit(format == "md" ? classification_to_markdown(record)
                        : classification_to_json(record).dump(2),
         out_path);
    return 0;
  }

  // verify
  std::vector<VerificationReport> reports;
  auto need_char = [&]() -> long {
    if (!chi_index || !S.is_cyclic())
      throw NotCyclicError("suite needs an injective character; group " +
                           S.to_string() + " has none");
    return *chi_index;
  };
  std::optional<CycVec> h = load_grading_element(grading_path);
  (void)search_h;  // the appendix suite searches whenever no element is supplied

  if (suite == "gs" || suite == "all") reports.push_back(run_suite_gs(S, chi_index));
  if (suite == "covariant" || suite == "all")
    reports.push_back(run_suite_covariant(S, chi_index, window));
  if (suite == "affine" || suite == "all")
    reports.push_back(run_suite_affine(S, need_char(), window));
  if (suite == "delta" || suite == "all")
    reports.push_back(run_suite_delta(S, need_char(), window));
  if (suite == "appendix" || suite == "all")
    reports.push_back(run_suite_appendix(S, need_char(), window, h));

  bool all_passed = true;
  std::ostringstream text;
  Json jreports = Json::array();
  for (const auto& rep : reports) {
    all_passed = all_passed && rep.passed();
    if (format == "md")
      text << report_to_markdown(rep) << "\n";
    else
      jreports.push_back(report_to_json(rep));
  }
  if (format == "md") {
    emit(text.str(), out_path);
  } else {
    Json j;
    j["engine_version"] = kEngineVersion;
    j["passed"] = all_passed;
    j["reports"] = std::move(jreports);
    emit(j.dump(2), out_path);
  }
  return all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CovlieError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
