#include "covlie/cyclotomic.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

#include "covlie/errors.hpp"

namespace covlie {

unsigned euler_phi(unsigned n) {
  unsigned result = n;
  unsigned m = n;
  for (unsigned p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      result -= result / p;
      while (m % p == 0) m /= p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

namespace {

// Exact division of integer polynomials, divisor monic.
std::vector<BigInt> poly_div_exact(std::vector<BigInt> num, const std::vector<BigInt>& den) {
  const size_t dd = den.size() - 1;
  std::vector<BigInt> quot(num.size() - dd, 0);
  for (size_t k = num.size() - 1; k >= dd; --k) {
    BigInt c = num[k];
    if (c != 0) {
      quot[k - dd] = c;
      for (size_t i = 0; i <= dd; ++i) num[k - dd + i] -= c * den[i];
    }
    if (k == dd) break;  // k is unsigned
  }
  return quot;
}

std::map<unsigned, std::vector<BigInt>>& cyclotomic_cache() {
  static std::map<unsigned, std::vector<BigInt>> cache;
  return cache;
}
std::mutex cyclotomic_mutex;

std::vector<BigInt> cyclotomic_unlocked(unsigned n) {
  auto& cache = cyclotomic_cache();
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  // x^n - 1 divided by Phi_d for every proper divisor d of n
  std::vector<BigInt> f(n + 1, 0);
  f[0] = -1;
  f[n] = 1;
  for (unsigned d = 1; d < n; ++d) {
    if (n % d == 0) f = poly_div_exact(std::move(f), cyclotomic_unlocked(d));
  }
  cache[n] = f;
  return f;
}

// Per-order reduction context.
struct CycContext {
  unsigned order;
  unsigned phi;
  std::vector<Rational> modulus;  // Phi_order as rationals, monic, length phi+1
};

const CycContext& context(unsigned order) {
  static std::map<unsigned, std::unique_ptr<CycContext>> contexts;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = contexts.find(order);
  if (it == contexts.end()) {
    auto ctx = std::make_unique<CycContext>();
    ctx->order = order;
    ctx->phi = euler_phi(order);
    {
      std::lock_guard<std::mutex> lock2(cyclotomic_mutex);
      for (const auto& c : cyclotomic_unlocked(order)) ctx->modulus.emplace_back(c);
    }
    it = contexts.emplace(order, std::move(ctx)).first;
  }
  return *it->second;
}

// Reduces a rational polynomial modulo Phi_order and truncates to phi coefficients.
std::vector<Rational> reduce_mod(std::vector<Rational> poly, const CycContext& ctx) {
  const size_t phi = ctx.phi;
  for (size_t k = poly.size(); k-- > phi;) {
    Rational c = poly[k];
    if (c != 0) {
      for (size_t i = 0; i <= phi; ++i) poly[k - phi + i] -= c * ctx.modulus[i];
    }
  }
  poly.resize(phi, Rational(0));
  return poly;
}

size_t poly_degree(const std::vector<Rational>& p) {
  for (size_t i = p.size(); i-- > 0;)
    if (p[i] != 0) return i;
  return 0;  // zero polynomial reported as degree 0
}

bool poly_is_zero(const std::vector<Rational>& p) {
  for (const auto& c : p)
    if (c != 0) return false;
  return true;
}

}  // namespace

std::vector<BigInt> cyclotomic_polynomial(unsigned n) {
  std::lock_guard<std::mutex> lock(cyclotomic_mutex);
  return cyclotomic_unlocked(n);
}

CycNumber::CycNumber() : order_(1), coeffs_(1, Rational(0)) {}

CycNumber::CycNumber(unsigned order, std::vector<Rational> coeffs)
    : order_(order), coeffs_(std::move(coeffs)) {}

CycNumber CycNumber::from_rational(const Rational& r) {
  return CycNumber(1, {r});
}

CycNumber CycNumber::from_int(long n) { return from_rational(Rational(n)); }

CycNumber CycNumber::zero(unsigned order) {
  return CycNumber(order, std::vector<Rational>(euler_phi(order), Rational(0)));
}

CycNumber CycNumber::one() { return from_rational(Rational(1)); }

CycNumber CycNumber::root_of_unity(unsigned order, long exponent) {
  const auto& ctx = context(order);
  long e = exponent % static_cast<long>(order);
  if (e < 0) e += order;
  std::vector<Rational> poly(static_cast<size_t>(e) + 1, Rational(0));
  poly.back() = 1;
  return CycNumber(order, reduce_mod(std::move(poly), ctx));
}

bool CycNumber::is_zero() const { return poly_is_zero(coeffs_); }

bool CycNumber::is_rational() const {
  for (size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return false;
  return true;
}

Rational CycNumber::rational_value() const {
  if (!is_rational()) throw CovlieError("value is not rational: " + to_string());
  return coeffs_[0];
}

CycNumber CycNumber::embedded(unsigned new_order) const {
  if (new_order == order_) return *this;
  if (new_order % order_ != 0)
    throw CovlieError("cannot embed order " + std::to_string(order_) +
                      " into order " + std::to_string(new_order));
  const auto& ctx = context(new_order);
  const unsigned stride = new_order / order_;
  std::vector<Rational> poly(static_cast<size_t>(coeffs_.size() - 1) * stride + 1,
                             Rational(0));
  for (size_t i = 0; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) poly[i * stride] = coeffs_[i];
  return CycNumber(new_order, reduce_mod(std::move(poly), ctx));
}

namespace {

void align_orders(CycNumber& a, CycNumber& b) {
  if (a.order() == b.order()) return;
  unsigned l = std::lcm(a.order(), b.order());
  a = a.embedded(l);
  b = b.embedded(l);
}

}  // namespace

CycNumber CycNumber::operator-() const {
  std::vector<Rational> c = coeffs_;
  for (auto& x : c) x = -x;
  return CycNumber(order_, std::move(c));
}

CycNumber& CycNumber::operator+=(const CycNumber& rhs) {
  CycNumber b = rhs;
  align_orders(*this, b);
  for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += b.coeffs_[i];
  return *this;
}

CycNumber& CycNumber::operator-=(const CycNumber& rhs) {
  CycNumber b = rhs;
  align_orders(*this, b);
  for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= b.coeffs_[i];
  return *this;
}

CycNumber& CycNumber::operator*=(const CycNumber& rhs) {
  CycNumber b = rhs;
  align_orders(*this, b);
  const auto& ctx = context(order_);
  const size_t n = coeffs_.size();
  std::vector<Rational> prod(2 * n - 1, Rational(0));
  for (size_t i = 0; i < n; ++i) {
    if (coeffs_[i] == 0) continue;
    for (size_t j = 0; j < n; ++j) {
      if (b.coeffs_[j] == 0) continue;
      prod[i + j] += coeffs_[i] * b.coeffs_[j];
    }
  }
  coeffs_ = reduce_mod(std::move(prod), ctx);
  return *this;
}

CycNumber& CycNumber::operator/=(const CycNumber& rhs) {
  return *this *= rhs.inverse();
}

bool CycNumber::operator==(const CycNumber& rhs) const {
  if (order_ == rhs.order_) return coeffs_ == rhs.coeffs_;
  unsigned l = std::lcm(order_, rhs.order_);
  return embedded(l).coeffs_ == rhs.embedded(l).coeffs_;
}

CycNumber CycNumber::inverse() const {
  if (is_zero()) throw DivisionByZeroError();
  const auto& ctx = context(order_);

  // Extended Euclid over Q[x] against Phi_order, which is irreducible,
  // so the gcd is a nonzero constant.
  std::vector<Rational> r0 = ctx.modulus;
  std::vector<Rational> r1 = coeffs_;
  std::vector<Rational> t0(1, Rational(0));
  std::vector<Rational> t1(1, Rational(1));

  auto trim = [](std::vector<Rational>& p) {
    while (p.size() > 1 && p.back() == 0) p.pop_back();
  };
  trim(r1);

  while (poly_degree(r1) > 0) {
    // divide r0 by r1
    std::vector<Rational> rem = r0;
    size_t d1 = poly_degree(r1);
    std::vector<Rational> quot(poly_degree(r0) >= d1 ? poly_degree(r0) - d1 + 1 : 1,
                               Rational(0));
    while (!poly_is_zero(rem) && poly_degree(rem) >= d1) {
      size_t dr = poly_degree(rem);
      Rational c = rem[dr] / r1[d1];
      quot[dr - d1] += c;
      for (size_t i = 0; i <= d1; ++i) rem[dr - d1 + i] -= c * r1[i];
    }
    trim(rem);
    // t2 = t0 - quot * t1
    std::vector<Rational> t2(std::max(t0.size(), quot.size() + t1.size()), Rational(0));
    for (size_t i = 0; i < t0.size(); ++i) t2[i] = t0[i];
    for (size_t i = 0; i < quot.size(); ++i) {
      if (quot[i] == 0) continue;
      for (size_t j = 0; j < t1.size(); ++j) t2[i + j] -= quot[i] * t1[j];
    }
    trim(t2);
    r0 = std::move(r1);
    r1 = std::move(rem);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }

  if (poly_is_zero(r1))
    throw CovlieError("inverse failed: representative shares a factor with the modulus");
  Rational c = r1[0];
  std::vector<Rational> inv = t1;
  for (auto& x : inv) x /= c;
  return CycNumber(order_, reduce_mod(std::move(inv), ctx));
}

CycNumber CycNumber::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  CycNumber result = CycNumber::one().embedded(order_);
  CycNumber base = *this;
  unsigned long k = static_cast<unsigned long>(e);
  while (k) {
    if (k & 1) result *= base;
    base *= base;
    k >>= 1;
  }
  return result;
}

std::string CycNumber::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    const Rational& c = coeffs_[i];
    if (c == 0) continue;
    Rational abs_c = c < 0 ? Rational(-c) : c;
    if (first) {
      if (c < 0) out << "-";
      first = false;
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    bool unit = (abs_c == 1);
    if (i == 0) {
      out << abs_c.get_str();
    } else {
      if (!unit) out << abs_c.get_str() << "*";
      out << "z";
      if (i > 1) out << "^" << i;
    }
  }
  return out.str();
}

CycNumber CycNumber::parse(const std::string& text, unsigned order) {
  const auto& ctx = context(order);
  std::vector<Rational> coeffs(ctx.phi, Rational(0));
  size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip_ws();
  if (pos == text.size()) throw CovlieError("empty cyclotomic literal");
  bool any = false;
  int sign = 1;
  if (text[pos] == '-') { sign = -1; ++pos; }
  else if (text[pos] == '+') ++pos;
  while (true) {
    skip_ws();
    // term: [rational] [* ] [z [^k]]
    std::string num;
    while (pos < text.size() &&
           (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/'))
      num.push_back(text[pos++]);
    skip_ws();
    bool has_z = false;
    size_t power = 0;
    if (pos < text.size() && text[pos] == '*') { ++pos; skip_ws(); }
    if (pos < text.size() && text[pos] == 'z') {
      has_z = true;
      power = 1;
      ++pos;
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        std::string exp;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
          exp.push_back(text[pos++]);
        if (exp.empty()) throw CovlieError("malformed exponent in: " + text);
        power = std::stoul(exp);
      }
    }
    if (num.empty() && !has_z) throw CovlieError("malformed cyclotomic literal: " + text);
    Rational c = num.empty() ? Rational(1) : Rational(num);
    c.canonicalize();
    if (sign < 0) c = -c;
    if (power >= coeffs.size())
      throw CovlieError("power basis exponent out of range in: " + text);
    coeffs[power] += c;
    any = true;
    skip_ws();
    if (pos == text.size()) break;
    if (text[pos] == '+') { sign = 1; ++pos; }
    else if (text[pos] == '-') { sign = -1; ++pos; }
    else throw CovlieError("unexpected character in cyclotomic literal: " + text);
  }
  if (!any) throw CovlieError("empty cyclotomic literal");
  return CycNumber(order, std::move(coeffs));
}

CycNumber q_integer(long n, const CycNumber& q) {
  if (q.is_zero()) throw DivisionByZeroError();
  static const CycNumber kOne = CycNumber::one();
  static const CycNumber kMinusOne = CycNumber::from_int(-1);
  if (q == kOne) return CycNumber::from_int(n);
  if (q == kMinusOne) {
    // n * (-1)^(n-1)
    bool negate = ((n - 1) % 2) != 0;
    return CycNumber::from_int(negate ? -n : n);
  }
  CycNumber qn = q.pow(n);
  CycNumber qmn = q.pow(-n);
  CycNumber denom = q - q.inverse();
  return (qn - qmn) / denom;
}

}  // namespace covlie
