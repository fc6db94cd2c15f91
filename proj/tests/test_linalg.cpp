#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "covlie/linalg.hpp"

using namespace covlie;

namespace {

CycVec vec(std::initializer_list<long> xs) {
  CycVec out;
  for (long x : xs) out.push_back(CycNumber::from_int(x));
  return out;
}

}  // namespace

TEST_CASE("subspace insertion gives a canonical echelon basis") {
  Subspace s(3);
  CHECK(s.insert(vec({2, 0, 2})));
  CHECK(s.insert(vec({0, 1, 1})));
  CHECK_FALSE(s.insert(vec({2, 3, 5})));  // dependent
  CHECK(s.dim() == 2);
  CHECK(s.contains(vec({1, 1, 2})));
  CHECK_FALSE(s.contains(vec({1, 0, 0})));
  CHECK(s.complement_coords() == std::vector<int>{2});

  // insertion order does not change the reduced basis
  Subspace t(3);
  t.insert(vec({0, 1, 1}));
  t.insert(vec({2, 3, 5}));
  CHECK(s.same_space(t));
}

TEST_CASE("kernel basis annihilates the matrix") {
  CycMatrix m = CycMatrix::from_rows({vec({1, 2, 3}), vec({2, 4, 6})}, 3);
  auto ker = kernel_basis(m);
  CHECK(ker.size() == 2);
  for (const auto& v : ker) CHECK(cyc_vec_is_zero(m.apply(v)));
  CHECK(rank_of(m) == 1);
}

TEST_CASE("linear solve and inverse") {
  CycMatrix a = CycMatrix::from_rows({vec({1, 1}), vec({0, 2})}, 2);
  auto x = solve_linear(a, vec({3, 4}));
  REQUIRE(x.has_value());
  CHECK(cyc_vec_eq(a.apply(*x), vec({3, 4})));

  auto inv = inverse_of(a);
  REQUIRE(inv.has_value());
  CHECK(a.multiply(*inv) == CycMatrix::identity(2));

  CycMatrix sing = CycMatrix::from_rows({vec({1, 2}), vec({2, 4})}, 2);
  CHECK_FALSE(inverse_of(sing).has_value());
  CHECK_FALSE(solve_linear(sing, vec({1, 0})).has_value());
}

TEST_CASE("coordinates in an echelon basis") {
  Subspace s(3);
  s.insert(vec({1, 0, 1}));
  s.insert(vec({0, 1, 1}));
  auto c = coordinates_in(s, vec({2, 3, 5}));
  REQUIRE(c.has_value());
  CycVec rebuilt = cyc_vec_zero(3);
  for (int r = 0; r < s.dim(); ++r)
    cyc_vec_add_scaled(rebuilt, (*c)[r], s.basis_rows()[r]);
  CHECK(cyc_vec_eq(rebuilt, vec({2, 3, 5})));
  CHECK_FALSE(coordinates_in(s, vec({1, 0, 0})).has_value());
}

TEST_CASE("matrix power") {
  CycMatrix r = CycMatrix::from_rows({vec({0, -1}), vec({1, 0})}, 2);
  CHECK(r.power(4) == CycMatrix::identity(2));
  CHECK(r.power(0) == CycMatrix::identity(2));
}
