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

// Positive cones of Lorentzian forms, Kahler-cone models cut out by curve
// half-spaces, and the inner-point test for the dual cone.
//
// A cone model is
//
//   K = { x : (x.x) > 0, (x.kappa) > 0, (x.c_i) > 0 for every cut c_i }.
//
// x is an inner point of the dual cone K* iff (x.eta) > 0 for every nonzero
// eta in closure(K), iff (x.eta) >= r |eta| on closure(K) for some r > 0.
// Verdicts are certified:
//
//  * Inner:    x = y + sum_i a_i c_i with a_i >= 0 and y in the open forward
//              cone. Then (x.eta) >= (y.eta) > 0 on closure(K) \ {0}.
//  * NotInner: a nonzero eta in closure(K) with (x.eta) <= 0.
//
// Both certificates are rational and re-verify with pairing arithmetic.

#ifndef KAHLERCONE_CONE_H_
#define KAHLERCONE_CONE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kahlercone/quadform.h"
#include "kahlercone/rational.h"

namespace kahlercone {

// Forward component of {x : x^2 > 0} in a space of signature (1, n-1),
// marked by a reference vector of positive square.
class PositiveConeComponent {
 public:
  // Throws std::invalid_argument if the signature is not (1,0,n-1) or
  // (kappa.kappa) <= 0.
  PositiveConeComponent(QuadraticSpace space, Vec kappa_ref);

  const QuadraticSpace& space() const { return space_; }
  const Vec& kappa_ref() const { return kappa_ref_; }
  std::size_t dim() const { return space_.dim(); }

 private:
  QuadraticSpace space_;
  Vec kappa_ref_;
};

struct ConeModel {
  PositiveConeComponent component;
  std::vector<Vec> cuts;

  const QuadraticSpace& space() const { return component.space(); }
  const Vec& kappa() const { return component.kappa_ref(); }
};

// Limits for the certificate searches. Exhausting them yields Undetermined,
// never a wrong verdict.
struct SearchConfig {
  long coefficient_bound = 5;
  // Largest cut subset tried by the perp construction.
  std::size_t subset_cap = 12;
  // Total number of cut subsets tried.
  std::size_t max_subsets = 256;
  // Iterations of the floating-point proposal heuristics.
  int numeric_budget = 200;
  std::uint64_t seed = 0;
  bool compute_margin = true;
};

enum class InnerStatus { kInner, kNotInner, kUndetermined };
std::string ToString(InnerStatus status);

struct PositiveCertificate {
  Vec y;
  std::vector<Rat> coefficients;  // one per cut
};

// (x.eta)^2 >= margin_sq * |eta|^2 for every eta with (eta.eta) >= 0. The
// multiplier lambda makes the matrix
//   (1/margin_sq) * (G y)(G y)^T - I - lambda * G
// positive semidefinite, which proves the bound (S-lemma).
struct MarginCertificate {
  Rat margin_sq;
  Rat multiplier;
};

struct InnerPointVerdict {
  InnerStatus status = InnerStatus::kUndetermined;
  std::optional<PositiveCertificate> positive;
  std::optional<Vec> negative;
  std::optional<MarginCertificate> margin;
  // Which route produced the certificate, e.g. "forward-cone", "qp",
  // "perp-subset", "kappa", "isotropic", "numeric".
  std::string method;
};

bool InPositiveComponent(const PositiveConeComponent& pc, const Vec& x);
bool InClosurePositive(const PositiveConeComponent& pc, const Vec& x);

bool KahlerMembership(const ConeModel& model, const Vec& x);
bool ClosureMembership(const ConeModel& model, const Vec& x);

// Non-strict dual membership: (x.eta) >= 0 on closure(K). Exact and total
// when cuts are empty (self-duality of the Lorentz cone) or when the cut
// Gram matrix is negative definite; nullopt when undecided.
std::optional<bool> DualMembership(const ConeModel& model, const Vec& x,
                                   const SearchConfig& cfg = {});

InnerPointVerdict InnerPointTest(const ConeModel& model, const Vec& x,
                                 const SearchConfig& cfg = {});

// Certified lower bound on r^2 for an Inner x; nullopt otherwise.
std::optional<MarginCertificate> UniformMargin(const ConeModel& model,
                                               const Vec& x,
                                               const SearchConfig& cfg = {});

// Margin of a forward vector y of positive square against the closed
// positive cone. Homogeneous: scaling y by s scales margin_sq by s^2.
MarginCertificate CertifyLorentzMargin(const QuadraticSpace& space,
                                       const Vec& y);

bool VerifyPositiveCertificate(const ConeModel& model, const Vec& x,
                               const PositiveCertificate& cert);
bool VerifyNegativeCertificate(const ConeModel& model, const Vec& x,
                               const Vec& eta);
bool VerifyMargin(const QuadraticSpace& space, const Vec& y,
                  const MarginCertificate& cert);
// Checks whichever certificate the verdict carries against its status.
bool VerifyVerdict(const ConeModel& model, const Vec& x,
                   const InnerPointVerdict& verdict);

// Building blocks of the negative-certificate search, exposed for tests.
//
// The perp construction: W = x^perp intersected with c_i^perp over the
// subset; a positive-square vector of W oriented by kappa is returned if
// it also pairs nonnegatively with the remaining cuts.
std::optional<Vec> PerpConstruction(const ConeModel& model, const Vec& x,
                                    const std::vector<std::size_t>& subset);

// Floating-point minimisation of (x.eta) over the slice (eta.kappa) = 1 of
// closure(K); proposals are rationalised and returned only if they verify.
std::optional<Vec> NumericNegativeCandidate(const ConeModel& model,
                                            const Vec& x, int iterations,
                                            std::uint64_t seed);

// Polyhedral cones and the ball/margin equivalence harness.
struct PolyhedralCone {
  QuadraticSpace space;
  std::vector<Vec> generators;
};

struct PolyhedralReport {
  bool p1 = false;  // (x.g_j) > 0 for every generator
  bool p2 = false;  // sampled ball inclusion
  bool p3 = false;  // min_j (x.g_j)/|g_j| > 0
  // sign(r) * r^2 for r = min_j (x.g_j)/|g_j|.
  Rat signed_margin_sq;
  std::size_t samples = 0;
  std::size_t sample_failures = 0;
  // When p1 fails: a point within the probe radius that leaves the dual.
  std::optional<Vec> exit_witness;
  bool agree() const { return p1 == p3 && p1 == p2; }
};

PolyhedralReport PolyhedralInnerEquivalence(const PolyhedralCone& cone,
                                            const Vec& x, int trials,
                                            std::uint64_t seed);

}  // namespace kahlercone

#endif  // KAHLERCONE_CONE_H_
