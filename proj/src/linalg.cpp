#include "covlie/linalg.hpp"

#include <algorithm>
#include <sstream>

#include "covlie/errors.hpp"

namespace covlie {

CycVec cyc_vec_zero(int n) { return CycVec(static_cast<size_t>(n)); }

bool cyc_vec_is_zero(const CycVec& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

void cyc_vec_add_scaled(CycVec& dst, const CycNumber& c, const CycVec& src) {
  if (c.is_zero()) return;
  for (size_t i = 0; i < dst.size(); ++i) {
    if (src[i].is_zero()) continue;
    dst[i] += c * src[i];
  }
}

CycVec cyc_vec_sub(const CycVec& a, const CycVec& b) {
  CycVec out = a;
  for (size_t i = 0; i < out.size(); ++i) out[i] -= b[i];
  return out;
}

bool cyc_vec_eq(const CycVec& a, const CycVec& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

std::string cyc_vec_to_string(const CycVec& v) {
  std::ostringstream out;
  out << "[";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out << ", ";
    out << v[i].to_string();
  }
  out << "]";
  return out.str();
}

CycMatrix::CycMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
  data_.assign(rows, cyc_vec_zero(cols));
}

CycMatrix CycMatrix::identity(int n) {
  CycMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = CycNumber::one();
  return m;
}

CycMatrix CycMatrix::from_rows(std::vector<CycVec> rows, int cols) {
  CycMatrix m;
  m.rows_ = static_cast<int>(rows.size());
  m.cols_ = cols;
  m.data_ = std::move(rows);
  return m;
}

CycVec CycMatrix::apply(const CycVec& x) const {
  CycVec out = cyc_vec_zero(rows_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) {
      if (data_[i][j].is_zero() || x[j].is_zero()) continue;
      out[i] += data_[i][j] * x[j];
    }
  }
  return out;
}

CycMatrix CycMatrix::multiply(const CycMatrix& rhs) const {
  CycMatrix out(rows_, rhs.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int k = 0; k < cols_; ++k) {
      if (data_[i][k].is_zero()) continue;
      for (int j = 0; j < rhs.cols_; ++j) {
        if (rhs.data_[k][j].is_zero()) continue;
        out.at(i, j) += data_[i][k] * rhs.data_[k][j];
      }
    }
  }
  return out;
}

CycMatrix CycMatrix::power(long e) const {
  CycMatrix result = identity(rows_);
  CycMatrix base = *this;
  while (e > 0) {
    if (e & 1) result = result.multiply(base);
    base = base.multiply(base);
    e >>= 1;
  }
  return result;
}

bool CycMatrix::operator==(const CycMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) return false;
  for (int i = 0; i < rows_; ++i)
    if (!cyc_vec_eq(data_[i], rhs.data_[i])) return false;
  return true;
}

Subspace::Subspace(int ambient_dim) : ambient_(ambient_dim) {}

bool Subspace::insert(CycVec v) {
  v = reduce(std::move(v));
  int pivot = -1;
  for (int j = 0; j < ambient_; ++j) {
    if (!v[j].is_zero()) {
      pivot = j;
      break;
    }
  }
  if (pivot < 0) return false;
  CycNumber lead = v[pivot];
  for (auto& x : v) {
    if (!x.is_zero()) x /= lead;
  }
  // eliminate the new pivot from existing rows
  for (auto& row : rows_) {
    if (!row[pivot].is_zero()) {
      CycNumber c = row[pivot];
      for (int j = 0; j < ambient_; ++j)
        if (!v[j].is_zero()) row[j] -= c * v[j];
    }
  }
  auto it = std::lower_bound(pivots_.begin(), pivots_.end(), pivot);
  size_t pos = static_cast<size_t>(it - pivots_.begin());
  pivots_.insert(it, pivot);
  rows_.insert(rows_.begin() + pos, std::move(v));
  return true;
}

CycVec Subspace::reduce(CycVec v) const {
  for (size_t r = 0; r < rows_.size(); ++r) {
    const CycNumber& c = v[pivots_[r]];
    if (c.is_zero()) continue;
    CycNumber coeff = c;  // pivot entries are 1
    for (int j = 0; j < ambient_; ++j) {
      if (rows_[r][j].is_zero()) continue;
      v[j] -= coeff * rows_[r][j];
    }
  }
  return v;
}

bool Subspace::contains(const CycVec& v) const { return cyc_vec_is_zero(reduce(v)); }

bool Subspace::same_space(const Subspace& other) const {
  if (ambient_ != other.ambient_ || dim() != other.dim()) return false;
  for (size_t r = 0; r < rows_.size(); ++r)
    if (!cyc_vec_eq(rows_[r], other.rows_[r])) return false;
  return true;
}

std::vector<int> Subspace::complement_coords() const {
  std::vector<int> out;
  size_t r = 0;
  for (int j = 0; j < ambient_; ++j) {
    if (r < pivots_.size() && pivots_[r] == j) {
      ++r;
      continue;
    }
    out.push_back(j);
  }
  return out;
}

int rank_of(const CycMatrix& m) {
  Subspace s(m.cols());
  for (int i = 0; i < m.rows(); ++i) s.insert(m.row(i));
  return s.dim();
}

std::vector<CycVec> kernel_basis(const CycMatrix& m) {
  // Row reduce, then read one kernel vector per free column.
  Subspace s(m.cols());
  for (int i = 0; i < m.rows(); ++i) s.insert(m.row(i));
  const auto& rows = s.basis_rows();
  const auto& pivots = s.pivots();
  std::vector<CycVec> out;
  for (int free_col : s.complement_coords()) {
    CycVec v = cyc_vec_zero(m.cols());
    v[free_col] = CycNumber::one();
    for (size_t r = 0; r < rows.size(); ++r) v[pivots[r]] = -rows[r][free_col];
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<CycVec> solve_linear(const CycMatrix& a, const CycVec& b) {
  // Echelonize the augmented rows [A | b].
  Subspace s(a.cols() + 1);
  for (int i = 0; i < a.rows(); ++i) {
    CycVec row = a.row(i);
    row.push_back(b[i]);
    s.insert(std::move(row));
  }
  // Inconsistent iff some row pivots in the last column.
  for (int p : s.pivots())
    if (p == a.cols()) return std::nullopt;
  CycVec x = cyc_vec_zero(a.cols());
  const auto& rows = s.basis_rows();
  const auto& pivots = s.pivots();
  for (size_t r = 0; r < rows.size(); ++r) x[pivots[r]] = rows[r][a.cols()];
  // Free variables are set to zero; validate the candidate.
  CycVec check = a.apply(x);
  if (!cyc_vec_eq(check, b)) return std::nullopt;
  return x;
}

std::optional<CycVec> coordinates_in(const Subspace& space, const CycVec& v) {
  const auto& rows = space.basis_rows();
  const auto& pivots = space.pivots();
  CycVec c = cyc_vec_zero(space.dim());
  CycVec residual = v;
  for (size_t r = 0; r < rows.size(); ++r) {
    c[r] = residual[pivots[r]];
    if (!c[r].is_zero()) cyc_vec_add_scaled(residual, -c[r], rows[r]);
  }
  if (!cyc_vec_is_zero(residual)) return std::nullopt;
  return c;
}

std::optional<CycMatrix> inverse_of(const CycMatrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const int n = m.rows();
  // Gauss-Jordan on [M | I].
  std::vector<CycVec> aug(n);
  for (int i = 0; i < n; ++i) {
    aug[i] = m.row(i);
    aug[i].resize(2 * n);
    aug[i][n + i] = CycNumber::one();
  }
  for (int col = 0, row = 0; col < n && row < n; ++col) {
    int pivot = -1;
    for (int i = row; i < n; ++i) {
      if (!aug[i][col].is_zero()) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) return std::nullopt;
    std::swap(aug[row], aug[pivot]);
    CycNumber lead = aug[row][col];
    for (int j = 0; j < 2 * n; ++j)
      if (!aug[row][j].is_zero()) aug[row][j] /= lead;
    for (int i = 0; i < n; ++i) {
      if (i == row || aug[i][col].is_zero()) continue;
      CycNumber c = aug[i][col];
      for (int j = 0; j < 2 * n; ++j) {
        if (aug[row][j].is_zero()) continue;
        aug[i][j] -= c * aug[row][j];
      }
    }
    ++row;
  }
  CycMatrix inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv.at(i, j) = aug[i][n + j];
  return inv;
}

}  // namespace covlie
