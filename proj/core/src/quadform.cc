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

#include "kahlercone/quadform.h"

#include <stdexcept>
#include <utility>

namespace kahlercone {

namespace {

void RequireDim(const QuadraticSpace& space, const Vec& v, const char* what) {
  if (v.size() != space.dim()) {
    throw DimensionError(std::string(what) + ": vector of length " +
                         std::to_string(v.size()) + " in a space of dimension " +
                         std::to_string(space.dim()));
  }
}

// Working state of the symmetric elimination: a holds P^T G P restricted to
// the not-yet-processed block (and the processed diagonal), p holds P.
struct Elimination {
  Matrix a;
  Matrix p;
  std::size_t n;

  explicit Elimination(const Matrix& gram)
      : a(gram), p(Matrix::Identity(gram.rows())), n(gram.rows()) {}

  void SwapBasis(std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < n; ++c) std::swap(a(i, c), a(j, c));
    for (std::size_t r = 0; r < n; ++r) std::swap(a(r, i), a(r, j));
    for (std::size_t r = 0; r < n; ++r) std::swap(p(r, i), p(r, j));
  }

  // v_i <- v_i + s * v_j
  void AddBasis(std::size_t i, std::size_t j, const Rat& s) {
    for (std::size_t c = 0; c < n; ++c) {
      if (sgn(a(j, c)) != 0) a(i, c) += s * a(j, c);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (sgn(a(r, j)) != 0) a(r, i) += s * a(r, j);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (sgn(p(r, j)) != 0) p(r, i) += s * p(r, j);
    }
  }

  // Makes a(k,k) nonzero if the row allows it. Returns false if row k of
  // the active block is entirely zero.
  bool Pivot(std::size_t k) {
    if (sgn(a(k, k)) != 0) return true;
    for (std::size_t j = k + 1; j < n; ++j) {
      if (sgn(a(j, j)) != 0) {
        SwapBasis(k, j);
        return true;
      }
    }
    for (std::size_t j = k + 1; j < n; ++j) {
      if (sgn(a(k, j)) != 0) {
        // All remaining diagonal entries are zero, so the new pivot is
        // 2 * a(k, j).
        AddBasis(k, j, Rat(1));
        return true;
      }
    }
    return false;
  }

  void Eliminate(std::size_t k) {
    const Rat inv = 1 / a(k, k);
    for (std::size_t j = k + 1; j < n; ++j) {
      if (sgn(a(k, j)) == 0) continue;
      const Rat factor = a(k, j) * inv;
      // Column j and row j of a, then column j of p.
      for (std::size_t r = k; r < n; ++r) {
        if (sgn(a(r, k)) != 0) a(r, j) -= factor * a(r, k);
      }
      for (std::size_t c = k; c < n; ++c) {
        if (sgn(a(k, c)) != 0) a(j, c) -= factor * a(k, c);
      }
      for (std::size_t r = 0; r < n; ++r) {
        if (sgn(p(r, k)) != 0) p(r, j) -= factor * p(r, k);
      }
    }
  }
};

}  // namespace

QuadraticSpace::QuadraticSpace(Matrix gram, bool allow_degenerate)
    : gram_(std::move(gram)), allow_degenerate_(allow_degenerate) {
  if (!gram_.square() || gram_.rows() == 0) {
    throw std::invalid_argument("gram matrix must be square and non-empty");
  }
  if (!gram_.IsSymmetric()) {
    throw std::invalid_argument("gram matrix must be symmetric");
  }
  if (!allow_degenerate_ && sgn(Determinant(gram_)) == 0) {
    throw std::invalid_argument("gram matrix is degenerate");
  }
}

std::string FormatSignature(const SignatureTriple& s) {
  return "(" + std::to_string(s.pos) + "," + std::to_string(s.zero) + "," +
         std::to_string(s.neg) + ")";
}

Vec Subspace::Embed(const Vec& coords) const {
  if (coords.size() != basis.size()) {
    throw DimensionError("Subspace::Embed: coordinate count mismatch");
  }
  Vec out = ZeroVec(ambient_dim);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    out = AddScaled(out, coords[i], basis[i]);
  }
  return out;
}

Rat Pairing(const QuadraticSpace& space, const Vec& x, const Vec& y) {
  RequireDim(space, x, "Pairing");
  RequireDim(space, y, "Pairing");
  const Matrix& g = space.gram();
  Rat sum = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (sgn(x[i]) == 0) continue;
    Rat row = 0;
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (sgn(y[j]) != 0 && sgn(g(i, j)) != 0) row += g(i, j) * y[j];
    }
    if (sgn(row) != 0) sum += x[i] * row;
  }
  return sum;
}

Vec Lower(const QuadraticSpace& space, const Vec& x) {
  RequireDim(space, x, "Lower");
  return space.gram() * x;
}

Diagonalization CongruenceDiagonalize(const QuadraticSpace& space) {
  Elimination e(space.gram());
  for (std::size_t k = 0; k < e.n; ++k) {
    if (e.Pivot(k)) e.Eliminate(k);
  }
  Diagonalization out;
  out.diagonal.resize(e.n);
  for (std::size_t k = 0; k < e.n; ++k) out.diagonal[k] = e.a(k, k);
  out.transform = std::move(e.p);
  return out;
}

SignatureTriple SignatureOfGram(const Matrix& gram) {
  return Signature(QuadraticSpace(gram, /*allow_degenerate=*/true));
}

SignatureTriple Signature(const QuadraticSpace& space) {
  const Diagonalization d = CongruenceDiagonalize(space);
  SignatureTriple s;
  for (const Rat& v : d.diagonal) {
    const int sign = sgn(v);
    if (sign > 0) {
      ++s.pos;
    } else if (sign < 0) {
      ++s.neg;
    } else {
      ++s.zero;
    }
  }
  return s;
}

bool IsPositiveSemidefinite(const Matrix& symmetric) {
  if (!symmetric.IsSymmetric()) {
    throw std::invalid_argument("IsPositiveSemidefinite: not symmetric");
  }
  Elimination e(symmetric);
  for (std::size_t k = 0; k < e.n; ++k) {
    const int sign = sgn(e.a(k, k));
    if (sign < 0) return false;
    if (sign == 0) {
      for (std::size_t j = k + 1; j < e.n; ++j) {
        if (sgn(e.a(k, j)) != 0) return false;
      }
      continue;
    }
    e.Eliminate(k);
  }
  return true;
}

Subspace OrthogonalComplement(const QuadraticSpace& space,
                              const std::vector<Vec>& vs) {
  Subspace out;
  out.ambient_dim = space.dim();
  if (vs.empty()) {
    for (std::size_t i = 0; i < space.dim(); ++i) {
      out.basis.push_back(UnitVec(space.dim(), i));
    }
    return out;
  }
  std::vector<Vec> rows;
  rows.reserve(vs.size());
  for (const Vec& v : vs) rows.push_back(Lower(space, v));
  out.basis = NullSpace(Matrix::FromRows(rows));
  return out;
}

QuadraticSpace RestrictForm(const QuadraticSpace& space, const Subspace& sub) {
  if (sub.basis.empty()) {
    throw std::invalid_argument("RestrictForm: empty basis");
  }
  for (const Vec& b : sub.basis) RequireDim(space, b, "RestrictForm");
  if (Rank(Matrix::FromRows(sub.basis)) != sub.basis.size()) {
    throw std::invalid_argument("RestrictForm: basis is linearly dependent");
  }
  const std::size_t k = sub.basis.size();
  std::vector<Vec> lowered;
  lowered.reserve(k);
  for (const Vec& b : sub.basis) lowered.push_back(Lower(space, b));
  Matrix gram(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      gram(i, j) = Dot(sub.basis[i], lowered[j]);
      gram(j, i) = gram(i, j);
    }
  }
  return QuadraticSpace(std::move(gram), /*allow_degenerate=*/true);
}

std::optional<Vec> FindPositiveVector(const QuadraticSpace& space) {
  Elimination e(space.gram());
  for (std::size_t k = 0; k < e.n; ++k) {
    for (std::size_t j = k; j < e.n; ++j) {
      if (sgn(e.a(j, j)) > 0) return e.p.Column(j);
    }
    if (e.Pivot(k)) {
      if (sgn(e.a(k, k)) > 0) return e.p.Column(k);
      e.Eliminate(k);
    }
  }
  return std::nullopt;
}

Rat EuclideanNormSq(const Vec& x) {
  Rat sum = 0;
  for (const Rat& e : x) {
    if (sgn(e) != 0) sum += e * e;
  }
  return sum;
}

std::vector<Rat> CharacteristicPolynomial(const Matrix& m) {
  if (!m.square()) throw DimensionError("characteristic polynomial of non-square");
  const std::size_t n = m.rows();
  std::vector<Rat> c(n + 1, Rat(0));
  c[n] = 1;
  Matrix mk(n, n);  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    Matrix next = m * mk;
    for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
    mk = std::move(next);
    const Matrix am = m * mk;
    Rat trace = 0;
    for (std::size_t i = 0; i < n; ++i) trace += am(i, i);
    c[n - k] = -trace / static_cast<long>(k);
  }
  return c;
}

SignatureTriple InertiaByDescartes(const Matrix& symmetric) {
  if (!symmetric.IsSymmetric()) {
    throw std::invalid_argument("InertiaByDescartes: not symmetric");
  }
  const std::vector<Rat> c = CharacteristicPolynomial(symmetric);
  SignatureTriple s;
  std::size_t low = 0;
  while (low < c.size() && sgn(c[low]) == 0) ++low;
  s.zero = low;
  auto sign_changes = [&](bool negate_odd) {
    std::size_t changes = 0;
    int last = 0;
    for (std::size_t k = low; k < c.size(); ++k) {
      int sign = sgn(c[k]);
      if (sign == 0) continue;
      if (negate_odd && (k % 2 == 1)) sign = -sign;
      if (last != 0 && sign != last) ++changes;
      last = sign;
    }
    return changes;
  };
  s.pos = sign_changes(false);
  s.neg = sign_changes(true);
  return s;
}

}  // namespace kahlercone
