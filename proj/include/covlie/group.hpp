#pragma once

#include <string>
#include <vector>

#include "covlie/cyclotomic.hpp"

namespace covlie {

using GroupElem = std::vector<int>;  // one coordinate per factor

/// A finite abelian group given as a direct product of cyclic factors.
/// Elements are enumerated in lexicographic coordinate order and addressed
/// by their index in that enumeration.
class FinAbGroup {
 public:
  explicit FinAbGroup(std::vector<int> factors);

  /// Parses "Z5", "Z2xZ2", "Z1", ...
  static FinAbGroup parse(const std::string& spec);

  int size() const { return size_; }
  const std::vector<int>& factors() const { return factors_; }
  std::string to_string() const;

  const GroupElem& element(int index) const { return elements_[index]; }
  int index_of(const GroupElem& e) const;
  std::string element_name(int index) const;

  int zero() const { return 0; }
  int add(int a, int b) const { return add_table_[a * size_ + b]; }
  int neg(int a) const { return neg_table_[a]; }
  int sub(int a, int b) const { return add(a, neg(b)); }
  int dbl(int a) const { return add(a, a); }
  /// n * a for any integer n.
  int scale(long n, int a) const;

  bool is_cyclic() const;
  /// Index of a generator of the full group; requires is_cyclic().
  int generator() const;

  /// All alpha with 2*alpha = 0, sorted by index.
  std::vector<int> subgroup_s0() const;

  struct Cosets {
    int k = 0;                           // |2S|
    int r = 0;                           // |S / 2S| = |S^0|
    std::vector<std::vector<int>> parts; // parts[0] = 2S; sorted indices
  };
  /// Decomposition of S into cosets of the doubling subgroup 2S.
  Cosets coset_decomposition_2s() const;

 private:
  std::vector<int> factors_;
  int size_;
  std::vector<GroupElem> elements_;
  std::vector<int> add_table_;
  std::vector<int> neg_table_;
};

/// An injective character chi of a finite cyclic group, chi(g) = zeta_N^k
/// for a fixed generator g. Values are exact roots of unity.
class Character {
 public:
  /// Throws NotCyclicError / NotInjectiveError.
  static Character make(const FinAbGroup& S, long k);

  const FinAbGroup& group() const { return *group_; }
  unsigned order() const { return n_; }
  long index() const { return k_; }

  /// chi(alpha)
  const CycNumber& value(int elem_index) const;
  /// chi(alpha)^p for any integer p
  const CycNumber& value_pow(int elem_index, long p) const;
  /// exponent e with chi(alpha) = zeta_N^e
  long exponent(int elem_index) const;

 private:
  Character(const FinAbGroup& S, long k, std::vector<long> log_table);

  const FinAbGroup* group_;
  unsigned n_;
  long k_;
  std::vector<long> log_;           // discrete log base the chosen generator
  std::vector<CycNumber> roots_;    // zeta_N^e for e in [0, N)
};

}  // namespace covlie
