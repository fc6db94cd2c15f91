#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "covlie/realization.hpp"
#include "covlie/serialize.hpp"
#include "covlie/suites.hpp"

using namespace covlie;

TEST_CASE("structure constants serialize deterministically") {
  FinAbGroup S = FinAbGroup::parse("Z3");
  GS g1 = build_g_S(S);
  GS g2 = build_g_S(S);
  CHECK(lie_algebra_to_json(*g1.algebra).dump() ==
        lie_algebra_to_json(*g2.algebra).dump());

  Json j = lie_algebra_to_json(*g1.algebra);
  CHECK(j["dimension"] == 3);
  CHECK(j["basis"][0] == "d(1,0)");
  // every entry is (i, j, k, scalar)
  for (const auto& c : j["structure_constants"]) {
    CHECK(c.size() == 4);
    CHECK(c[0].get<int>() < c[1].get<int>());
  }
}

TEST_CASE("golden structure constants of the order three quotient") {
  FinAbGroup S = FinAbGroup::parse("Z3");
  GS g = build_g_S(S);
  Json j = lie_algebra_to_json(*g.algebra);
  // basis d(1,0), d(1,1), d(1,2); hand evaluation of the four delta relation:
  // [d(1,0), d(1,1)] = -F(2,2) -> +d(1,2)
  // [d(1,0), d(1,2)] = +F(2,1) -> -d(1,1)
  // [d(1,1), d(1,2)] = -F(2,0) -> +d(1,0)
  Json expected = Json::array();
  expected.push_back(Json::array({0, 1, 2, "1"}));
  expected.push_back(Json::array({0, 2, 1, "-1"}));
  expected.push_back(Json::array({1, 2, 0, "1"}));
  CHECK(j["structure_constants"] == expected);
}

TEST_CASE("golden cartan matrix convention") {
  // the classification reports the matrix it matched, ordered by the
  // lexicographic positivity of the simple roots
  ClassificationRecord record = classify_group(FinAbGroup::parse("Z5"));
  REQUIRE(record.blocks.size() == 1);
  CHECK(record.blocks[0].cartan_matrix ==
        std::vector<std::vector<long>>{{2, -1}, {-2, 2}});

  ClassificationRecord z7 = classify_group(FinAbGroup::parse("Z7"));
  REQUIRE(z7.blocks.size() == 1);
  CHECK(z7.blocks[0].cartan_matrix ==
        std::vector<std::vector<long>>{{2, -1, 0}, {-2, 2, -1}, {0, -1, 2}});
}

TEST_CASE("scalar strings round trip through reports") {
  VerificationReport rep;
  rep.suite = "demo";
  rep.group = "Z5";
  rep.add_pass("alpha", 10);
  rep.add_fail("beta", 5, "witness text");
  Json j = report_to_json(rep);
  CHECK(j["passed"] == false);
  CHECK(j["checks"][0]["status"] == "pass");
  CHECK(j["checks"][1]["witness"] == "witness text");
  std::string md = report_to_markdown(rep);
  CHECK(md.find("FAIL") != std::string::npos);
  CHECK(md.find("witness text") != std::string::npos);
}
