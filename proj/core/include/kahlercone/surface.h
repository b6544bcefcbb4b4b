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

// Lattice-level surface models: the (1,1) space with its intersection form,
// a Kahler-side reference class, the Neron-Severi sublattice and the
// declared smooth rational curves.
//
// The surface kind is an input label. Nothing here checks that a model
// really comes from a K3 surface or a torus; only lattice consistency is
// validated. Curves are declared data, so a model cannot certify that a
// surface has no further curves.

#ifndef KAHLERCONE_SURFACE_H_
#define KAHLERCONE_SURFACE_H_

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kahlercone/cone.h"
#include "kahlercone/quadform.h"
#include "kahlercone/rational.h"

namespace kahlercone {

enum class SurfaceKind { kK3, kTorus, kGeneral };

std::string ToString(SurfaceKind kind);
// Accepts "k3", "torus", "general".
SurfaceKind ParseSurfaceKind(const std::string& text);

struct CurveClass {
  std::string name;
  Vec klass;  // integral, nonzero

  bool operator==(const CurveClass&) const = default;
};

// Candidate inner integral point M and fibre class F of an elliptic
// fibration; F is isotropic and lies in the closed Kahler cone.
struct EllipticData {
  Vec m;
  Vec f;

  bool operator==(const EllipticData&) const = default;
};

struct SurfaceModel {
  SurfaceKind kind = SurfaceKind::kGeneral;
  Matrix gram;
  Vec kappa_ref;
  std::vector<Vec> ns_basis;
  std::vector<CurveClass> curves;
  std::optional<EllipticData> elliptic;

  std::size_t dim() const { return gram.rows(); }
  // Throws if gram is not symmetric. Degenerate grams are allowed here so
  // that ValidateModel can report them.
  QuadraticSpace Space() const;
  // Gram matrix of the pairings of ns_basis.
  Matrix NsGram() const;
  // sum_i coeffs[i] * ns_basis[i]
  Vec EmbedNs(const Vec& coeffs) const;
  const CurveClass* FindCurve(const std::string& name) const;

  bool operator==(const SurfaceModel&) const = default;
};

class InvalidModelError : public std::invalid_argument {
 public:
  explicit InvalidModelError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

// Empty iff the model is consistent for its kind.
std::vector<std::string> ValidateModel(const SurfaceModel& model);

// The cone model of a valid surface model: the forward positive cone cut by
// the curve classes. Tori get no cuts (their Kahler cone is the whole
// positive component). Throws InvalidModelError on invalid input.
ConeModel MakeConeModel(const SurfaceModel& model);

// Negated Cartan matrix of A_m: -2 on the diagonal, 1 next to it.
// Requires 1 <= m <= 19.
Matrix AmGram(int m);

// Rank-20 model of signature (1,19): gram = diag(1,-1) + A_m block +
// diag(-1,...,-1), or diag(1) + A_19 block when m = 19. Curves C1..Cm span the A_m block and form the NS
// lattice. kappa_ref = e_0 + delta/N where (delta.C_i) = 1 and N is the
// smallest positive integer making kappa_ref^2 > 0. Requires 0 <= m <= 19.
SurfaceModel ConstructK3Am(int m);

// forward + delta/N with delta in the span of `curves`, (delta.c_i) = 1,
// and N the smallest positive integer such that the result has positive
// square and pairs positively with every curve. Requires an invertible
// curve Gram matrix when curves are present.
Vec SmallestForwardKappa(const QuadraticSpace& space, const Vec& forward,
                         const std::vector<Vec>& curves);

// Blow-down of a (-1)-curve: source = target (+) <e> with e^2 = -1, e the
// last basis vector.
struct BlowdownMap {
  QuadraticSpace target;

  std::size_t target_dim() const { return target.dim(); }
  std::size_t source_dim() const { return target.dim() + 1; }
  QuadraticSpace SourceSpace() const;
  Vec Exceptional() const;
  // tau^* sigma = (sigma, 0)
  Vec PullBack(const Vec& sigma) const;
};

// y with x = tau^* y + a e, i.e. the first n coordinates of x.
Vec BlowDown(const BlowdownMap& bd, const Vec& x);

// Source cone model of a blow-up: kappa_S = (kappa_T, -1/k) for the
// smallest k >= 2 with kappa_S^2 > 0, cuts = {e} plus pulled-back target
// cuts.
ConeModel BlowUpConeModel(const BlowdownMap& bd, const ConeModel& target);

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct DescentResult {
  Vec y;
  InnerPointVerdict source_verdict;
  InnerPointVerdict target_verdict;
  // Set if the target verdict is an exactly certified NotInner, which the
  // pushforward argument rules out.
  bool contradiction = false;
};

// Throws PreconditionError unless x is integral and certified Inner on the
// source model.
DescentResult DescendInnerPoint(const BlowdownMap& bd, const ConeModel& source,
                                const ConeModel& target, const Vec& x,
                                const SearchConfig& cfg = {});

// Smallest integer n >= 0 with m_sq + 2 n mf > 0. Throws
// std::invalid_argument if mf <= 0.
Int EllipticPositivityBound(const Rat& m_sq, const Rat& mf);

// F != 0, F in the closed cone and (F.kappa) > 0. Isotropy is not required.
bool FiberClassInClosure(const ConeModel& model, const Vec& f);

}  // namespace kahlercone

#endif  // KAHLERCONE_SURFACE_H_
