#pragma once

#include <optional>
#include <vector>

#include "covlie/cyclotomic.hpp"

namespace covlie {

using CycVec = std::vector<CycNumber>;

CycVec cyc_vec_zero(int n);
bool cyc_vec_is_zero(const CycVec& v);
void cyc_vec_add_scaled(CycVec& dst, const CycNumber& c, const CycVec& src);
CycVec cyc_vec_sub(const CycVec& a, const CycVec& b);
bool cyc_vec_eq(const CycVec& a, const CycVec& b);
std::string cyc_vec_to_string(const CycVec& v);

/// Dense matrix over cyclotomic numbers, row major.
class CycMatrix {
 public:
  CycMatrix() : rows_(0), cols_(0) {}
  CycMatrix(int rows, int cols);

  static CycMatrix identity(int n);
  static CycMatrix from_rows(std::vector<CycVec> rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  CycNumber& at(int i, int j) { return data_[i][j]; }
  const CycNumber& at(int i, int j) const { return data_[i][j]; }
  const CycVec& row(int i) const { return data_[i]; }
  CycVec& row(int i) { return data_[i]; }

  CycVec apply(const CycVec& x) const;         // this * x
  CycMatrix multiply(const CycMatrix& rhs) const;
  CycMatrix power(long e) const;               // square matrices, e >= 0
  bool operator==(const CycMatrix& rhs) const;
  bool operator!=(const CycMatrix& rhs) const { return !(*this == rhs); }

 private:
  int rows_, cols_;
  std::vector<CycVec> data_;
};

/// A subspace of an ambient coordinate space, maintained as a reduced
/// row echelon basis. Insertion order does not affect the final basis.
class Subspace {
 public:
  explicit Subspace(int ambient_dim);

  int ambient_dim() const { return ambient_; }
  int dim() const { return static_cast<int>(rows_.size()); }
  const std::vector<CycVec>& basis_rows() const { return rows_; }
  const std::vector<int>& pivots() const { return pivots_; }

  /// Inserts a vector; returns true if it enlarged the subspace.
  bool insert(CycVec v);
  /// Canonical representative of v modulo the subspace (pivot coordinates
  /// eliminated).
  CycVec reduce(CycVec v) const;
  bool contains(const CycVec& v) const;
  bool same_space(const Subspace& other) const;
  /// Ambient coordinates not used as pivots, in increasing order.
  std::vector<int> complement_coords() const;

 private:
  int ambient_;
  std::vector<CycVec> rows_;   // reduced echelon rows, pivot entries 1
  std::vector<int> pivots_;    // pivot column per row, strictly increasing
};

int rank_of(const CycMatrix& m);
/// Basis of the right kernel { x : M x = 0 }, canonical echelon form.
std::vector<CycVec> kernel_basis(const CycMatrix& m);
std::optional<CycVec> solve_linear(const CycMatrix& a, const CycVec& b);
std::optional<CycMatrix> inverse_of(const CycMatrix& m);
/// Coordinates of v in the echelon basis of the subspace, or nullopt when v
/// is outside of it.
std::optional<CycVec> coordinates_in(const Subspace& space, const CycVec& v);

}  // namespace covlie
