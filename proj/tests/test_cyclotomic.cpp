#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "covlie/cyclotomic.hpp"
#include "covlie/errors.hpp"

using namespace covlie;

namespace {

CycNumber zeta(unsigned m, long e = 1) { return CycNumber::root_of_unity(m, e); }

// deterministic random field elements for property sweeps
CycNumber random_element(std::mt19937& rng, unsigned order) {
  unsigned phi = euler_phi(order);
  std::uniform_int_distribution<int> num(-4, 4);
  std::uniform_int_distribution<int> den(1, 3);
  std::vector<Rational> coeffs;
  CycNumber out = CycNumber::zero(order);
  for (unsigned i = 0; i < phi; ++i) {
    Rational c(num(rng), den(rng));
    c.canonicalize();
    out += CycNumber::from_rational(c) * zeta(order, i);
  }
  return out;
}

}  // namespace

TEST_CASE("cyclotomic polynomials at small orders") {
  CHECK(cyclotomic_polynomial(1) == std::vector<BigInt>{-1, 1});
  CHECK(cyclotomic_polynomial(4) == std::vector<BigInt>{1, 0, 1});
  CHECK(cyclotomic_polynomial(5) == std::vector<BigInt>{1, 1, 1, 1, 1});
  // degree equals the totient
  for (unsigned m = 1; m <= 24; ++m)
    CHECK(cyclotomic_polynomial(m).size() == euler_phi(m) + 1);
}

TEST_CASE("roots of unity multiply as exponents add") {
  CHECK(zeta(5, 1) * zeta(5, 4) == CycNumber::one());
  CHECK(zeta(5, 1) + zeta(5, 2) + zeta(5, 3) + zeta(5, 4) == CycNumber::from_int(-1));
  CHECK(zeta(4).inverse() == -zeta(4));
  CHECK(zeta(2) == CycNumber::from_int(-1));
  CHECK(zeta(1) == CycNumber::one());
}

TEST_CASE("field axioms on random samples") {
  std::mt19937 rng(20240811);
  for (unsigned order : {3u, 4u, 6u, 8u, 12u}) {
    for (int trial = 0; trial < 8; ++trial) {
      CycNumber a = random_element(rng, order);
      CycNumber b = random_element(rng, order);
      CycNumber c = random_element(rng, order);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      if (!a.is_zero()) CHECK(a * a.inverse() == CycNumber::one());
    }
  }
}

TEST_CASE("division by zero is rejected") {
  CHECK_THROWS_AS(CycNumber::zero().inverse(), DivisionByZeroError);
  CHECK_THROWS_AS(q_integer(2, CycNumber::zero()), DivisionByZeroError);
}

TEST_CASE("embedding is coherent along divisor chains") {
  std::mt19937 rng(7);
  for (auto [m1, m2, m3] : {std::array<unsigned, 3>{2, 4, 8},
                            std::array<unsigned, 3>{3, 6, 12},
                            std::array<unsigned, 3>{1, 5, 10}}) {
    CycNumber a = random_element(rng, m1);
    CHECK(a.embedded(m2).embedded(m3) == a.embedded(m3));
  }
  // mixed order arithmetic agrees with the lcm field
  CycNumber x = zeta(3), y = zeta(4);
  CHECK((x * y).order() == 12);
  CHECK(x * y == zeta(12, 4) * zeta(12, 3));
  CHECK(x * y == zeta(12, 7));
}

TEST_CASE("q integer closed form for n = 3") {
  for (unsigned m : {5u, 7u, 8u, 12u}) {
    CycNumber q = zeta(m);
    CHECK(q_integer(3, q) == q.pow(2) + CycNumber::one() + q.pow(-2));
  }
}

TEST_CASE("q integer limit conventions at plus and minus one") {
  CycNumber plus = CycNumber::one();
  CycNumber minus = CycNumber::from_int(-1);
  CHECK(q_integer(2, minus) == CycNumber::from_int(-2));
  CHECK(q_integer(3, minus) == CycNumber::from_int(3));
  CHECK(q_integer(-2, minus) == CycNumber::from_int(2));
  for (long n = -6; n <= 6; ++n) {
    CHECK(q_integer(n, plus) == CycNumber::from_int(n));
    long expected = (n - 1) % 2 == 0 ? n : -n;
    CHECK(q_integer(n, minus) == CycNumber::from_int(expected));
  }
  // orders 1 and 2 route into the convention branches without dividing
  CHECK(q_integer(4, zeta(1)) == CycNumber::from_int(4));
  CHECK(q_integer(4, zeta(2)) == CycNumber::from_int(-4));
}

TEST_CASE("q integer identities over small roots of unity") {
  for (unsigned m = 1; m <= 12; ++m) {
    CycNumber q = zeta(m);
    for (long a = -6; a <= 6; ++a) {
      CHECK(q_integer(-a, q) == -q_integer(a, q));
      CHECK(q_integer(a, q.inverse()) == q_integer(a, q));
      for (long b = -6; b <= 6; ++b) {
        // [a]_{q^b} [b]_q = [ab]_q, with the conventions covering q^b = +-1
        CHECK(q_integer(a, q.pow(b)) * q_integer(b, q) == q_integer(a * b, q));
      }
    }
  }
}

TEST_CASE("textual round trip") {
  std::mt19937 rng(99);
  for (unsigned order : {1u, 2u, 5u, 12u}) {
    for (int trial = 0; trial < 10; ++trial) {
      CycNumber a = random_element(rng, order);
      CHECK(CycNumber::parse(a.to_string(), order) == a);
    }
  }
  CHECK(CycNumber::parse("1/2 + 3*z^2", 5) ==
        CycNumber::from_rational(Rational(1, 2)) +
            CycNumber::from_int(3) * zeta(5, 2));
  CHECK(CycNumber::zero(7).to_string() == "0");
  CHECK(CycNumber::parse("0", 7) == CycNumber::zero(7));
}
