#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "covlie/errors.hpp"
#include "covlie/group.hpp"

using namespace covlie;

TEST_CASE("group spec parsing") {
  CHECK(FinAbGroup::parse("Z5").to_string() == "Z5");
  CHECK(FinAbGroup::parse("Z2xZ2").to_string() == "Z2xZ2");
  CHECK(FinAbGroup::parse("Z1").to_string() == "Z1");
  CHECK(FinAbGroup::parse("Z1").size() == 1);
  CHECK(FinAbGroup::parse("Z2xZ3").size() == 6);
  CHECK_THROWS_AS(FinAbGroup::parse("Q5"), GroupParseError);
  CHECK_THROWS_AS(FinAbGroup::parse("Z"), GroupParseError);
}

TEST_CASE("two torsion subgroup") {
  CHECK(FinAbGroup::parse("Z5").subgroup_s0() == std::vector<int>{0});
  CHECK(FinAbGroup::parse("Z6").subgroup_s0() == std::vector<int>{0, 3});
  CHECK(FinAbGroup::parse("Z2xZ2").subgroup_s0() == std::vector<int>{0, 1, 2, 3});
  // odd order forces the trivial subgroup
  for (const char* spec : {"Z3", "Z7", "Z9"})
    CHECK(FinAbGroup::parse(spec).subgroup_s0().size() == 1);
}

TEST_CASE("coset decomposition of the doubling subgroup") {
  auto z7 = FinAbGroup::parse("Z7").coset_decomposition_2s();
  CHECK(z7.k == 7);
  CHECK(z7.r == 1);
  CHECK(z7.parts.size() == 1);

  auto z6 = FinAbGroup::parse("Z6").coset_decomposition_2s();
  CHECK(z6.k == 3);
  CHECK(z6.r == 2);
  CHECK(z6.parts[0] == std::vector<int>{0, 2, 4});
  CHECK(z6.parts[1] == std::vector<int>{1, 3, 5});

  auto z8 = FinAbGroup::parse("Z8").coset_decomposition_2s();
  CHECK(z8.k == 4);
  CHECK(z8.r == 2);

  // |2S| |S^0| = |S| on every constructed group
  for (const char* spec : {"Z1", "Z2", "Z4", "Z5", "Z6", "Z8", "Z9", "Z2xZ2", "Z2xZ4"}) {
    FinAbGroup S = FinAbGroup::parse(spec);
    auto cs = S.coset_decomposition_2s();
    CHECK(cs.k * static_cast<int>(S.subgroup_s0().size()) == S.size());
    CHECK(cs.r == static_cast<int>(S.subgroup_s0().size()));
    int covered = 0;
    for (const auto& part : cs.parts) covered += static_cast<int>(part.size());
    CHECK(covered == S.size());
  }
}

TEST_CASE("characters require a cyclic group and a coprime index") {
  FinAbGroup z5 = FinAbGroup::parse("Z5");
  Character chi = Character::make(z5, 1);
  CHECK(chi.value(0) == CycNumber::one());
  CHECK(chi.value(1) == CycNumber::root_of_unity(5, 1));

  FinAbGroup z6 = FinAbGroup::parse("Z6");
  CHECK_THROWS_AS(Character::make(z6, 2), NotInjectiveError);
  CHECK_NOTHROW(Character::make(z6, 1));

  FinAbGroup klein = FinAbGroup::parse("Z2xZ2");
  CHECK_THROWS_AS(Character::make(klein, 1), NotCyclicError);
}

TEST_CASE("characters are multiplicative and injective") {
  for (const char* spec : {"Z5", "Z6", "Z7", "Z2xZ3"}) {
    FinAbGroup S = FinAbGroup::parse(spec);
    Character chi = Character::make(S, 1);
    for (int a = 0; a < S.size(); ++a) {
      for (int b = 0; b < S.size(); ++b)
        CHECK(chi.value(S.add(a, b)) == chi.value(a) * chi.value(b));
      if (a != 0) CHECK(chi.value(a) != CycNumber::one());
    }
  }
  // alternate primitive index
  FinAbGroup z5 = FinAbGroup::parse("Z5");
  Character chi2 = Character::make(z5, 2);
  CHECK(chi2.value(1) == CycNumber::root_of_unity(5, 2));
  CHECK(chi2.value_pow(1, -3) == CycNumber::root_of_unity(5, -6));
}

TEST_CASE("scaling elements by integers") {
  FinAbGroup z6 = FinAbGroup::parse("Z6");
  CHECK(z6.scale(4, 2) == 2);   // 4*2 = 8 = 2 mod 6
  CHECK(z6.scale(-1, 1) == 5);
  CHECK(z6.scale(0, 3) == 0);
}
