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

// Symmetric bilinear forms over Q: pairings, congruence diagonalization,
// signatures, orthogonal complements and restricted forms.

#ifndef KAHLERCONE_QUADFORM_H_
#define KAHLERCONE_QUADFORM_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "kahlercone/rational.h"

namespace kahlercone {

// A finite dimensional Q-vector space with a symmetric bilinear form given
// by its Gram matrix in a fixed basis. The norm used for margins is the
// Euclidean norm in that same basis.
class QuadraticSpace {
 public:
  // Throws std::invalid_argument if `gram` is not square and symmetric, or
  // if it is singular and `allow_degenerate` is false.
  explicit QuadraticSpace(Matrix gram, bool allow_degenerate = false);

  std::size_t dim() const { return gram_.rows(); }
  const Matrix& gram() const { return gram_; }
  bool allow_degenerate() const { return allow_degenerate_; }

  bool operator==(const QuadraticSpace& other) const = default;

 private:
  Matrix gram_;
  bool allow_degenerate_ = false;
};

struct SignatureTriple {
  std::size_t pos = 0;
  std::size_t zero = 0;
  std::size_t neg = 0;

  std::size_t dim() const { return pos + zero + neg; }
  bool operator==(const SignatureTriple&) const = default;
};

// "(p,z,n)"
std::string FormatSignature(const SignatureTriple& s);

// A subspace given by a linearly independent basis of ambient vectors.
struct Subspace {
  std::size_t ambient_dim = 0;
  std::vector<Vec> basis;

  std::size_t dim() const { return basis.size(); }
  // sum_i coords[i] * basis[i]
  Vec Embed(const Vec& coords) const;
};

struct Diagonalization {
  Vec diagonal;      // D
  Matrix transform;  // P, with P^T * gram * P = diag(D)
};

// x^T * gram * y. Throws DimensionError on length mismatch.
Rat Pairing(const QuadraticSpace& space, const Vec& x, const Vec& y);
inline Rat Square(const QuadraticSpace& space, const Vec& x) {
  return Pairing(space, x, x);
}

// gram * x, the vector whose Euclidean dot with y is (x.y).
Vec Lower(const QuadraticSpace& space, const Vec& x);

// Symmetric Gaussian elimination with pivot search. A zero pivot is first
// replaced by a later nonzero diagonal entry (swap); if all remaining
// diagonal entries vanish but the row does not, the basis move
// v_k <- v_k + v_j produces the pivot 2*(v_k.v_j). Total on degenerate
// forms.
Diagonalization CongruenceDiagonalize(const QuadraticSpace& space);

SignatureTriple Signature(const QuadraticSpace& space);
SignatureTriple SignatureOfGram(const Matrix& gram);

// True iff the symmetric matrix is positive semidefinite (exact LDL^T
// test with early exit).
bool IsPositiveSemidefinite(const Matrix& symmetric);

// Kernel of y -> ((v_i . y))_i. Dependent or repeated inputs are fine; the
// result has dimension n - rank{v_i} when the space is non-degenerate.
Subspace OrthogonalComplement(const QuadraticSpace& space,
                              const std::vector<Vec>& vs);

// Gram matrix of the pairings of `sub.basis`, flagged degenerate-allowed.
// Throws std::invalid_argument if the basis is dependent.
QuadraticSpace RestrictForm(const QuadraticSpace& space, const Subspace& sub);

// A vector of strictly positive square, or nullopt iff signature.pos == 0.
// Prefers a basis vector, then the transform column of the first positive
// pivot met during diagonalization.
std::optional<Vec> FindPositiveVector(const QuadraticSpace& space);

// |x|^2 = sum of squared entries. Margins are compared on squares so the
// comparison stays exact.
Rat EuclideanNormSq(const Vec& x);

// Coefficients c_0..c_n of det(t*I - m) = sum_k c_k t^k (Faddeev-LeVerrier).
std::vector<Rat> CharacteristicPolynomial(const Matrix& m);

// Inertia of a symmetric matrix from the sign pattern of its characteristic
// polynomial (Descartes' rule is exact for real-rooted polynomials). This is
// an elimination-free second route to Signature.
SignatureTriple InertiaByDescartes(const Matrix& symmetric);

}  // namespace kahlercone

#endif  // KAHLERCONE_QUADFORM_H_
