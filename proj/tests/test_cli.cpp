#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

std::string binary() {
  const char* env = std::getenv("COVLIE_BIN");
  REQUIRE(env != nullptr);
  return env;
}

int run_cli(const std::string& args, std::string* output = nullptr) {
  std::string path = "/tmp/covlie_cli_out.txt";
  std::string cmd = binary() + " " + args + " > " + path + " 2>/dev/null";
  int status = std::system(cmd.c_str());
  if (output) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    *output = ss.str();
  }
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("build emits the dimension table") {
  std::string out;
  CHECK(run_cli("build --group Z5 --char 1", &out) == 0);
  auto j = nlohmann::json::parse(out);
  CHECK(j["dimensions"]["gl_S"] == 25);
  CHECK(j["dimensions"]["A_S_tau"] == 10);
  CHECK(j["dimensions"]["g_S"] == 10);
  CHECK(j.contains("pi_matrix"));
  CHECK(j.contains("character_form"));

  CHECK(run_cli("build --group Z1 --no-char", &out) == 0);
  j = nlohmann::json::parse(out);
  CHECK(j["dimensions"]["gl_S"] == 1);
  CHECK(j["dimensions"]["g_S"] == 0);
}

TEST_CASE("reports are byte stable across runs") {
  std::string first, second;
  CHECK(run_cli("verify --suite gs --group Z4 --char 1", &first) == 0);
  CHECK(run_cli("verify --suite gs --group Z4 --char 1", &second) == 0);
  CHECK(first == second);
  CHECK(!first.empty());

  std::string b1, b2;
  CHECK(run_cli("build --group Z5 --char 1", &b1) == 0);
  CHECK(run_cli("build --group Z5 --char 1", &b2) == 0);
  CHECK(b1 == b2);
}

TEST_CASE("exit codes distinguish usage errors from failures") {
  CHECK(run_cli("verify --suite affine --group Z3 --char 1 --window 2") == 0);
  // configuration problems exit with 2
  CHECK(run_cli("build --group Z6 --char 2") == 2);
  CHECK(run_cli("build --group Q7") == 2);
  CHECK(run_cli("verify --suite affine --group Z2xZ2 --char 1") == 2);
  CHECK(run_cli("verify --suite nosuch --group Z3") == 2);
}

TEST_CASE("classification labels blocks") {
  std::string out;
  CHECK(run_cli("classify --group Z7", &out) == 0);
  auto j = nlohmann::json::parse(out);
  CHECK(j["blocks"].size() == 1);
  CHECK(j["blocks"][0]["type_label"] == "B3");
  CHECK(j["blocks"][0]["rank"] == 3);

  CHECK(run_cli("classify --group Z8", &out) == 0);
  j = nlohmann::json::parse(out);
  CHECK(j["blocks"].size() == 2);
  for (const auto& b : j["blocks"]) CHECK(b["type_label"] == "A1xA1");

  CHECK(run_cli("classify --group Z6 --format md", &out) == 0);
  CHECK(out.find("| 0 | 3 | 1 | B1 |") != std::string::npos);
}

TEST_CASE("markdown verification summary") {
  std::string out;
  CHECK(run_cli("verify --suite delta --group Z3 --char 1 --window 2 --format md",
                &out) == 0);
  CHECK(out.find("**PASS**") != std::string::npos);
}

TEST_CASE("grading element files feed the twisted comparison") {
  // an element with non integer spectrum is rejected by the checks
  std::ofstream bad("/tmp/covlie_bad_h.json");
  bad << R"({"order": 3, "coefficients": ["1", "0", "0"]})";
  bad.close();
  int code = run_cli(
      "verify --suite appendix --group Z3 --char 1 --window 2 "
      "--grading-element /tmp/covlie_bad_h.json");
  CHECK(code == 1);
}
