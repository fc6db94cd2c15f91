#include "covlie/group.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "covlie/errors.hpp"

namespace covlie {

FinAbGroup::FinAbGroup(std::vector<int> factors) : factors_(std::move(factors)) {
  for (int f : factors_)
    if (f < 2) throw GroupParseError("cyclic factors must be >= 2");
  size_ = 1;
  for (int f : factors_) size_ *= f;

  const int rank = static_cast<int>(factors_.size());
  elements_.reserve(size_);
  GroupElem cur(rank, 0);
  for (int i = 0; i < size_; ++i) {
    elements_.push_back(cur);
    for (int pos = rank - 1; pos >= 0; --pos) {
      if (++cur[pos] < factors_[pos]) break;
      cur[pos] = 0;
    }
  }

  add_table_.resize(static_cast<size_t>(size_) * size_);
  neg_table_.resize(size_);
  for (int a = 0; a < size_; ++a) {
    GroupElem na(rank);
    for (int t = 0; t < rank; ++t)
      na[t] = (factors_[t] - elements_[a][t]) % factors_[t];
    neg_table_[a] = index_of(na);
    for (int b = 0; b < size_; ++b) {
      GroupElem s(rank);
      for (int t = 0; t < rank; ++t)
        s[t] = (elements_[a][t] + elements_[b][t]) % factors_[t];
      add_table_[a * size_ + b] = index_of(s);
    }
  }
}

FinAbGroup FinAbGroup::parse(const std::string& spec) {
  std::vector<int> factors;
  size_t pos = 0;
  while (pos < spec.size()) {
    if (spec[pos] != 'Z' && spec[pos] != 'z')
      throw GroupParseError("expected 'Z' in group spec: " + spec);
    ++pos;
    size_t start = pos;
    while (pos < spec.size() && std::isdigit(static_cast<unsigned char>(spec[pos]))) ++pos;
    if (start == pos) throw GroupParseError("missing order in group spec: " + spec);
    int n = std::stoi(spec.substr(start, pos - start));
    if (n < 1) throw GroupParseError("group order must be >= 1: " + spec);
    if (n > 1) factors.push_back(n);  // Z1 contributes nothing
    if (pos < spec.size()) {
      if (spec[pos] != 'x' && spec[pos] != 'X')
        throw GroupParseError("expected 'x' between factors: " + spec);
      ++pos;
    }
  }
  return FinAbGroup(std::move(factors));
}

std::string FinAbGroup::to_string() const {
  if (factors_.empty()) return "Z1";
  std::ostringstream out;
  for (size_t i = 0; i < factors_.size(); ++i) {
    if (i) out << "x";
    out << "Z" << factors_[i];
  }
  return out.str();
}

int FinAbGroup::index_of(const GroupElem& e) const {
  int idx = 0;
  for (size_t t = 0; t < factors_.size(); ++t) idx = idx * factors_[t] + e[t];
  return idx;
}

std::string FinAbGroup::element_name(int index) const {
  const GroupElem& e = elements_[index];
  if (factors_.size() == 1) return std::to_string(e[0]);
  if (factors_.empty()) return "0";
  std::ostringstream out;
  out << "(";
  for (size_t t = 0; t < e.size(); ++t) {
    if (t) out << ",";
    out << e[t];
  }
  out << ")";
  return out.str();
}

int FinAbGroup::scale(long n, int a) const {
  long m = n % size_;
  if (m < 0) m += size_;
  int acc = 0;
  for (long i = 0; i < m; ++i) acc = add(acc, a);
  return acc;
}

bool FinAbGroup::is_cyclic() const {
  long l = 1;
  for (int f : factors_) l = std::lcm(l, static_cast<long>(f));
  return l == size_;
}

int FinAbGroup::generator() const {
  for (int a = 0; a < size_; ++a) {
    int x = a;
    int ord = 1;
    while (x != 0) {
      x = add(x, a);
      ++ord;
    }
    if (ord == size_) return a;
  }
  throw NotCyclicError("group " + to_string() + " is not cyclic");
}

std::vector<int> FinAbGroup::subgroup_s0() const {
  std::vector<int> out;
  for (int a = 0; a < size_; ++a)
    if (dbl(a) == 0) out.push_back(a);
  return out;
}

FinAbGroup::Cosets FinAbGroup::coset_decomposition_2s() const {
  std::set<int> doubled;
  for (int a = 0; a < size_; ++a) doubled.insert(dbl(a));
  Cosets out;
  out.k = static_cast<int>(doubled.size());
  out.r = size_ / out.k;
  std::vector<bool> seen(size_, false);
  for (int a = 0; a < size_; ++a) {
    if (seen[a]) continue;
    std::vector<int> part;
    for (int d : doubled) {
      int x = add(a, d);
      part.push_back(x);
      seen[x] = true;
    }
    std::sort(part.begin(), part.end());
    out.parts.push_back(std::move(part));
  }
  return out;
}

Character::Character(const FinAbGroup& S, long k, std::vector<long> log_table)
    : group_(&S),
      n_(static_cast<unsigned>(S.size())),
      k_(k),
      log_(std::move(log_table)) {
  roots_.reserve(n_);
  for (unsigned e = 0; e < n_; ++e)
    roots_.push_back(CycNumber::root_of_unity(n_, static_cast<long>(e)));
}

Character Character::make(const FinAbGroup& S, long k) {
  if (!S.is_cyclic())
    throw NotCyclicError("no injective character: " + S.to_string() + " is not cyclic");
  const long n = S.size();
  long kk = k % n;
  if (kk < 0) kk += n;
  if (std::gcd(kk, n) != 1)
    throw NotInjectiveError("character index " + std::to_string(k) +
                            " is not coprime to " + std::to_string(n));
  // discrete log table with respect to the first generator in element order
  int g = S.generator();
  std::vector<long> log_table(S.size(), -1);
  int x = 0;
  for (long e = 0; e < n; ++e) {
    log_table[x] = e;
    x = S.add(x, g);
  }
  return Character(S, kk, std::move(log_table));
}

long Character::exponent(int elem_index) const {
  long e = (log_[elem_index] * k_) % n_;
  return e;
}

const CycNumber& Character::value(int elem_index) const {
  return roots_[exponent(elem_index)];
}

const CycNumber& Character::value_pow(int elem_index, long p) const {
  long n = static_cast<long>(n_);
  long e = (exponent(elem_index) % n) * (p % n) % n;
  if (e < 0) e += n;
  return roots_[e];
}

}  // namespace covlie
