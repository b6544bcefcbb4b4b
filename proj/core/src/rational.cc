// Copyright 2026 The kahlercone Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "kahlercone/rational.h"

#include <cmath>
#include <sstream>
#include <utility>

namespace kahlercone {

namespace {

bool IsDigits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (ch < '0' || ch > '9') return false;
  }
  return true;
}

void RequireSameLength(const Vec& a, const Vec& b, const char* what) {
  if (a.size() != b.size()) {
    throw DimensionError(std::string(what) + ": length " +
                         std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()));
  }
}

// In-place reduced row echelon form. Returns pivot column per pivot row.
std::vector<std::size_t> ReduceRowEchelon(Matrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.rows() && sgn(m(pivot, col)) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != row) {
      for (std::size_t c = 0; c < m.cols(); ++c) {
        std::swap(m(pivot, c), m(row, c));
      }
    }
    const Rat inv = 1 / m(row, col);
    for (std::size_t c = col; c < m.cols(); ++c) {
      if (sgn(m(row, c)) != 0) m(row, c) *= inv;
    }
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || sgn(m(r, col)) == 0) continue;
      const Rat factor = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) {
        if (sgn(m(row, c)) != 0) m(r, c) -= factor * m(row, c);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

Rat ParseRat(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den =
      slash == std::string_view::npos ? std::string_view{} : body.substr(slash + 1);
  if (!IsDigits(num) || (slash != std::string_view::npos &&
                         (!IsDigits(den) || den.front() == '0'))) {
    throw ParseError("malformed rational \"" + std::string(text) + "\"");
  }
  Rat value;
  value.get_num() = Int(std::string(num));
  value.get_den() = slash == std::string_view::npos ? Int(1) : Int(std::string(den));
  value.canonicalize();
  if (negative) value = -value;
  return value;
}

std::string FormatRat(const Rat& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Rat RationalizeDouble(double value, long max_denominator) {
  if (!std::isfinite(value)) {
    throw std::invalid_argument("cannot rationalize a non-finite value");
  }
  // Convergents h/k of the continued fraction, stopping before k exceeds
  // the cap.
  long double x = value;
  Int h_prev = 1, h = static_cast<long>(std::floor(x));
  Int k_prev = 0, k = 1;
  long double frac = x - std::floor(x);
  for (int iter = 0; iter < 64 && frac > 1e-18L; ++iter) {
    x = 1.0L / frac;
    const long a = static_cast<long>(std::floor(x));
    frac = x - std::floor(x);
    Int h_next = a * h + h_prev;
    Int k_next = a * k + k_prev;
    if (k_next > max_denominator) break;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
  }
  Rat out(h, k);
  out.canonicalize();
  return out;
}

Rat MakeRat(long num, long den) {
  if (den == 0) throw std::domain_error("zero denominator");
  Rat out(num, den);
  out.canonicalize();
  return out;
}

Vec MakeVec(std::initializer_list<long> entries) {
  Vec v;
  v.reserve(entries.size());
  for (long e : entries) v.emplace_back(e);
  return v;
}

Vec ZeroVec(std::size_t n) { return Vec(n, Rat(0)); }

Vec UnitVec(std::size_t n, std::size_t i) {
  Vec v = ZeroVec(n);
  v.at(i) = 1;
  return v;
}

Vec Add(const Vec& a, const Vec& b) {
  RequireSameLength(a, b, "Add");
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Vec Sub(const Vec& a, const Vec& b) {
  RequireSameLength(a, b, "Sub");
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Vec Scale(const Rat& s, const Vec& a) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = s * a[i];
  return out;
}

Vec AddScaled(const Vec& a, const Rat& s, const Vec& b) {
  RequireSameLength(a, b, "AddScaled");
  Vec out = a;
  if (sgn(s) == 0) return out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(b[i]) != 0) out[i] += s * b[i];
  }
  return out;
}

Rat Dot(const Vec& a, const Vec& b) {
  RequireSameLength(a, b, "Dot");
  Rat sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) sum += a[i] * b[i];
  }
  return sum;
}

bool IsZero(const Vec& v) {
  for (const Rat& e : v) {
    if (sgn(e) != 0) return false;
  }
  return true;
}

bool IsIntegral(const Vec& v) {
  for (const Rat& e : v) {
    if (e.get_den() != 1) return false;
  }
  return true;
}

Rat MaxAbs(const Vec& v) {
  Rat best = 0;
  for (const Rat& e : v) {
    const Rat a = abs(e);
    if (a > best) best = a;
  }
  return best;
}

Vec PrimitiveIntegral(const Vec& v) {
  Int denom_lcm = 1;
  for (const Rat& e : v) {
    mpz_lcm(denom_lcm.get_mpz_t(), denom_lcm.get_mpz_t(),
            e.get_den().get_mpz_t());
  }
  Int g = 0;
  std::vector<Int> ints;
  ints.reserve(v.size());
  for (const Rat& e : v) {
    Int n = e.get_num() * (denom_lcm / e.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
    ints.push_back(std::move(n));
  }
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = g == 0 ? Rat(0) : Rat(ints[i] / g);
  }
  return out;
}

std::string FormatVec(const Vec& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += FormatRat(v[i]);
  }
  return out + ")";
}

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Rat(0)) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<long>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw DimensionError("ragged matrix literal");
    for (long e : row) data_.emplace_back(e);
  }
}

Matrix Matrix::Identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::Diagonal(const Vec& diag) {
  Matrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

Matrix Matrix::FromRows(const std::vector<Vec>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw DimensionError("ragged rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Matrix Matrix::FromColumns(const std::vector<Vec>& cols) {
  const std::size_t rows = cols.empty() ? 0 : cols.front().size();
  Matrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != rows) throw DimensionError("ragged columns");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
  }
  return m;
}

Vec Matrix::Row(std::size_t r) const {
  return Vec(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
}

Vec Matrix::Column(std::size_t c) const {
  Vec out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

Matrix Matrix::Transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

bool Matrix::IsSymmetric() const {
  if (!square()) return false;
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = r + 1; c < cols_; ++c) {
      if ((*this)(r, c) != (*this)(c, r)) return false;
    }
  }
  return true;
}

Matrix Matrix::operator*(const Matrix& other) const {
  if (cols_ != other.rows_) {
    throw DimensionError("matrix product: " + std::to_string(cols_) + " vs " +
                         std::to_string(other.rows_));
  }
  Matrix out(rows_, other.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rat& a = (*this)(r, k);
      if (sgn(a) == 0) continue;
      for (std::size_t c = 0; c < other.cols_; ++c) {
        const Rat& b = other(k, c);
        if (sgn(b) != 0) out(r, c) += a * b;
      }
    }
  }
  return out;
}

Vec Matrix::operator*(const Vec& v) const {
  if (cols_ != v.size()) {
    throw DimensionError("matrix-vector product: " + std::to_string(cols_) +
                         " vs " + std::to_string(v.size()));
  }
  Vec out = ZeroVec(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      const Rat& a = (*this)(r, c);
      if (sgn(a) != 0 && sgn(v[c]) != 0) out[r] += a * v[c];
    }
  }
  return out;
}

std::size_t Rank(const Matrix& m) {
  Matrix work = m;
  return ReduceRowEchelon(work).size();
}

Rat Determinant(const Matrix& m) {
  if (!m.square()) throw DimensionError("determinant of non-square matrix");
  Matrix a = m;
  const std::size_t n = a.rows();
  Rat det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && sgn(a(pivot, col)) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(pivot, c), a(col, c));
      det = -det;
    }
    det *= a(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (sgn(a(r, col)) == 0) continue;
      const Rat factor = a(r, col) / a(col, col);
      for (std::size_t c = col; c < n; ++c) {
        if (sgn(a(col, c)) != 0) a(r, c) -= factor * a(col, c);
      }
    }
  }
  return det;
}

std::vector<Vec> NullSpace(const Matrix& m) {
  Matrix work = m;
  const std::vector<std::size_t> pivots = ReduceRowEchelon(work);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t p : pivots) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec v = ZeroVec(m.cols());
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      if (sgn(work(r, free)) != 0) v[pivots[r]] = -work(r, free);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

bool SolveLinear(const Matrix& m, const Vec& b, Vec* x) {
  if (b.size() != m.rows()) throw DimensionError("SolveLinear: rhs length");
  Matrix aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
    aug(r, m.cols()) = b[r];
  }
  const std::vector<std::size_t> pivots = ReduceRowEchelon(aug);
  if (!pivots.empty() && pivots.back() == m.cols()) return false;
  Vec sol = ZeroVec(m.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    sol[pivots[r]] = aug(r, m.cols());
  }
  *x = std::move(sol);
  return true;
}

std::string FormatMatrix(const Matrix& m) {
  std::ostringstream out;
  out << "[";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (r) out << ",";
    out << FormatVec(m.Row(r));
  }
  out << "]";
  return out.str();
}

}  // namespace kahlercone
