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

// Exact rational scalars, vectors and dense matrices.
//
// Everything that feeds a verdict goes through these types; no floating point
// value is ever compared against a threshold on the exact path.

#ifndef KAHLERCONE_RATIONAL_H_
#define KAHLERCONE_RATIONAL_H_

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace kahlercone {

// Arbitrary precision rational, always canonical (lowest terms, positive
// denominator) after every arithmetic operation.
using Rat = mpq_class;
using Int = mpz_class;

// Thrown on dimension mismatches and malformed exact input.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// num/den in lowest terms. Throws std::domain_error if den == 0. Use this
// instead of the two-argument Rat constructor, which does not reduce.
Rat MakeRat(long num, long den);

// Parses "p", "-p" or "p/q" (q >= 1, no leading '+', no whitespace).
// "2/4" is accepted and canonicalised to "1/2".
Rat ParseRat(std::string_view text);

// Inverse of ParseRat: "p" for integers, "p/q" otherwise.
std::string FormatRat(const Rat& value);

// Rational from a double by continued-fraction rounding, denominator capped
// at `max_denominator`. Used only to turn numeric proposals into exact
// candidates that are then re-verified.
Rat RationalizeDouble(double value, long max_denominator);

using Vec = std::vector<Rat>;

Vec MakeVec(std::initializer_list<long> entries);
Vec ZeroVec(std::size_t n);
Vec UnitVec(std::size_t n, std::size_t i);

Vec Add(const Vec& a, const Vec& b);
Vec Sub(const Vec& a, const Vec& b);
Vec Scale(const Rat& s, const Vec& a);
// a + s * b
Vec AddScaled(const Vec& a, const Rat& s, const Vec& b);
Rat Dot(const Vec& a, const Vec& b);
bool IsZero(const Vec& v);
bool IsIntegral(const Vec& v);
// Largest absolute entry; zero for the zero vector.
Rat MaxAbs(const Vec& v);
// Smallest positive integer multiple of v that is integral, divided by the
// gcd of its entries. Zero maps to zero.
Vec PrimitiveIntegral(const Vec& v);

std::string FormatVec(const Vec& v);

// Dense row-major matrix over Rat.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::initializer_list<std::initializer_list<long>> rows);

  static Matrix Identity(std::size_t n);
  static Matrix Diagonal(const Vec& diag);
  static Matrix FromRows(const std::vector<Vec>& rows);
  static Matrix FromColumns(const std::vector<Vec>& cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Rat& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rat& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  Vec Row(std::size_t r) const;
  Vec Column(std::size_t c) const;
  Matrix Transpose() const;
  bool IsSymmetric() const;

  Matrix operator*(const Matrix& other) const;
  Vec operator*(const Vec& v) const;
  bool operator==(const Matrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rat> data_;
};

// Rank by exact Gaussian elimination.
std::size_t Rank(const Matrix& m);
Rat Determinant(const Matrix& m);

// Basis of {v : m * v = 0}, one vector per free column of the reduced row
// echelon form. Empty when m has full column rank.
std::vector<Vec> NullSpace(const Matrix& m);

// Solves m * x = b. Returns false if inconsistent; otherwise writes one
// solution (free variables set to zero).
bool SolveLinear(const Matrix& m, const Vec& b, Vec* x);

std::string FormatMatrix(const Matrix& m);

}  // namespace kahlercone

#endif  // KAHLERCONE_RATIONAL_H_
