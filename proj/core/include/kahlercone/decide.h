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

// Projectivity decisions: a surface is projective iff the dual of its
// Kahler cone contains an inner integral point.

#ifndef KAHLERCONE_DECIDE_H_
#define KAHLERCONE_DECIDE_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "kahlercone/cone.h"
#include "kahlercone/surface.h"

namespace kahlercone {

enum class ProjectivityStatus { kProjective, kNotProjective, kUndetermined };
std::string ToString(ProjectivityStatus status);

enum class ObstructionKind {
  kNSNegativeDefinite,
  kNSNegativeSemiDefinite,
  // Every candidate in the enumeration box was certified NotInner. This is
  // bounded evidence: it says nothing about classes outside the box.
  kPerCandidateCertificates,
};
std::string ToString(ObstructionKind kind);

// An NS class given by integer coefficients over ns_basis.
struct IntegralClass {
  Vec coefficients;
  Vec embedded;
};

struct CandidateCertificate {
  IntegralClass candidate;
  Vec eta;
  std::string method;
};

struct Obstruction {
  ObstructionKind kind = ObstructionKind::kNSNegativeDefinite;
  SignatureTriple ns_signature;
  long bound = 0;  // enumeration box, kPerCandidateCertificates only
  std::vector<CandidateCertificate> certificates;
};

struct ProjectivityVerdict {
  ProjectivityStatus status = ProjectivityStatus::kUndetermined;
  std::optional<IntegralClass> witness;
  std::optional<InnerPointVerdict> witness_verdict;
  std::optional<Obstruction> obstruction;
  std::string note;
};

struct SearchReport {
  std::optional<IntegralClass> witness;
  std::optional<InnerPointVerdict> witness_verdict;
  std::size_t candidates = 0;
  std::size_t not_inner = 0;
  std::size_t undetermined = 0;
  bool exhausted = true;  // false if the box exceeded max_candidates
  std::vector<CandidateCertificate> certificates;

  bool all_not_inner() const {
    return exhausted && !witness && undetermined == 0;
  }
};

// Enumerates NS coefficient vectors in [-B, B]^rho in lexicographic order
// (zero skipped) and returns the first certified Inner class. With
// keep_certificates, every NotInner certificate met is recorded.
SearchReport FindInnerIntegralPoint(const SurfaceModel& model,
                                    const SearchConfig& cfg,
                                    bool keep_certificates = false,
                                    std::size_t max_candidates = 2000000);

// Throws InvalidModelError for invalid models.
ProjectivityVerdict DecideProjectivity(const SurfaceModel& model,
                                       const SearchConfig& cfg = {});

enum class PerpCase {
  kInCurveSpan,       // x in the span of the curves: W = cap c_i^perp
  kOutsideCurveSpan,  // W = x^perp cap (cap c_i^perp)
  kIsotropic,         // eta isotropic: +-x itself, or the radical of W
};
std::string ToString(PerpCase c);

struct PerpCertificate {
  Vec eta;
  PerpCase which = PerpCase::kInCurveSpan;
  std::size_t perp_dim = 0;
  SignatureTriple perp_signature;
};

class ObstructionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Builds eta in closure(K) with (x.eta) = 0 for a nonzero class x of a
// model whose NS lattice is negative (semi)definite. Throws
// ObstructionError when the model is outside that hypothesis or the perp
// space carries no positive vector.
PerpCertificate PerpObstruction(const SurfaceModel& model, const Vec& x);

struct CrossValidationReport {
  ProjectivityStatus decided = ProjectivityStatus::kUndetermined;
  bool oracle_projective = false;
  SignatureTriple ns_signature;  // by elimination
  SignatureTriple ns_inertia;    // by characteristic polynomial
  bool agree = false;
  bool certificates_ok = false;
  std::size_t candidates_checked = 0;
  std::string detail;
};

// Compares the decision with the oracle "projective iff NS carries a class
// of positive square" (inertia computed by an elimination-free route), and
// re-checks the certificates: the witness for Projective, and a perp
// certificate for every nonzero NS class with coefficients in [-1,1] for
// NotProjective. Only k3 and torus kinds.
CrossValidationReport CrossValidate(const SurfaceModel& model,
                                    const SearchConfig& cfg = {});

enum class EllipticStatus {
  kVacuous,        // M is not inner, nothing to check
  kConsistent,     // (M.F) > 0 and (M + nF)^2 > 0 exhibited
  kContradiction,  // M claimed inner but (M.F) <= 0
};
std::string ToString(EllipticStatus status);

struct EllipticReport {
  EllipticStatus status = EllipticStatus::kVacuous;
  InnerStatus inner_status = InnerStatus::kUndetermined;
  bool certificate_valid = false;
  Rat m_sq;
  Rat mf;
  std::optional<Int> n;
  std::optional<Vec> improved;  // M + n F
  std::optional<Rat> improved_sq;
  std::string detail;
};

// Runs the inner-point test on M, then checks as below.
EllipticReport EllipticConsistencyCheck(const SurfaceModel& model,
                                        const EllipticData& data,
                                        const SearchConfig& cfg = {});
// Checks a claimed verdict for M without re-deriving it. Throws
// PreconditionError unless F is a nonzero class of the closed cone with
// (F.kappa) > 0 and M is integral.
EllipticReport EllipticConsistencyCheck(const SurfaceModel& model,
                                        const EllipticData& data,
                                        const InnerPointVerdict& claimed);

}  // namespace kahlercone

#endif  // KAHLERCONE_DECIDE_H_
