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

#include "kahlercone/decide.h"

#include <utility>

namespace kahlercone {

namespace {

// Odometer over [-bound, bound]^rho, most significant coordinate first.
class BoxWalker {
 public:
  BoxWalker(std::size_t rho, long bound) : bound_(bound), coords_(rho, -bound) {}

  const std::vector<long>& coords() const { return coords_; }

  bool Advance() {
    for (std::size_t i = coords_.size(); i-- > 0;) {
      if (coords_[i] < bound_) {
        ++coords_[i];
        return true;
      }
      coords_[i] = -bound_;
    }
    return false;
  }

 private:
  long bound_;
  std::vector<long> coords_;
};

Vec ToVec(const std::vector<long>& coords) {
  Vec v(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) v[i] = coords[i];
  return v;
}

bool AllZero(const std::vector<long>& coords) {
  for (long c : coords) {
    if (c != 0) return false;
  }
  return true;
}

std::size_t BoxSize(std::size_t rho, long bound, std::size_t cap) {
  std::size_t size = 1;
  const std::size_t side = static_cast<std::size_t>(2 * bound + 1);
  for (std::size_t i = 0; i < rho; ++i) {
    if (size > cap / side) return cap + 1;
    size *= side;
  }
  return size;
}

void RequireValid(const SurfaceModel& model) {
  std::vector<std::string> violations = ValidateModel(model);
  if (!violations.empty()) throw InvalidModelError(std::move(violations));
}

// Positive-square NS class, primitive over ns_basis and oriented forward.
std::optional<IntegralClass> ForwardPositiveNsClass(const SurfaceModel& model) {
  if (model.ns_basis.empty()) return std::nullopt;
  const std::optional<Vec> coords =
      FindPositiveVector(QuadraticSpace(model.NsGram(), /*allow_degenerate=*/true));
  if (!coords) return std::nullopt;
  IntegralClass cls;
  cls.coefficients = PrimitiveIntegral(*coords);
  cls.embedded = model.EmbedNs(cls.coefficients);
  if (sgn(Pairing(model.Space(), cls.embedded, model.kappa_ref)) < 0) {
    cls.coefficients = Scale(Rat(-1), cls.coefficients);
    cls.embedded = Scale(Rat(-1), cls.embedded);
  }
  return cls;
}

}  // namespace

std::string ToString(ProjectivityStatus status) {
  switch (status) {
    case ProjectivityStatus::kProjective:
      return "Projective";
    case ProjectivityStatus::kNotProjective:
      return "NotProjective";
    case ProjectivityStatus::kUndetermined:
      return "Undetermined";
  }
  return "Undetermined";
}

std::string ToString(ObstructionKind kind) {
  switch (kind) {
    case ObstructionKind::kNSNegativeDefinite:
      return "NSNegativeDefinite";
    case ObstructionKind::kNSNegativeSemiDefinite:
      return "NSNegativeSemiDefinite";
    case ObstructionKind::kPerCandidateCertificates:
      return "PerCandidateCertificates";
  }
  return "PerCandidateCertificates";
}

std::string ToString(PerpCase c) {
  switch (c) {
    case PerpCase::kInCurveSpan:
      return "in-curve-span";
    case PerpCase::kOutsideCurveSpan:
      return "outside-curve-span";
    case PerpCase::kIsotropic:
      return "isotropic";
  }
  return "isotropic";
}

std::string ToString(EllipticStatus status) {
  switch (status) {
    case EllipticStatus::kVacuous:
      return "Vacuous";
    case EllipticStatus::kConsistent:
      return "Consistent";
    case EllipticStatus::kContradiction:
      return "Contradiction";
  }
  return "Vacuous";
}

SearchReport FindInnerIntegralPoint(const SurfaceModel& model,
                                    const SearchConfig& cfg,
                                    bool keep_certificates,
                                    std::size_t max_candidates) {
  if (cfg.coefficient_bound < 1) {
    throw std::invalid_argument("coefficient bound must be >= 1");
  }
  const ConeModel cone = MakeConeModel(model);
  SearchReport report;
  const std::size_t rho = model.ns_basis.size();
  if (rho == 0) return report;
  if (BoxSize(rho, cfg.coefficient_bound, max_candidates) > max_candidates) {
    report.exhausted = false;
    return report;
  }
  SearchConfig quiet = cfg;
  quiet.compute_margin = false;
  BoxWalker walker(rho, cfg.coefficient_bound);
  do {
    if (AllZero(walker.coords())) continue;
    IntegralClass cls;
    cls.coefficients = ToVec(walker.coords());
    cls.embedded = model.EmbedNs(cls.coefficients);
    ++report.candidates;
    InnerPointVerdict v = InnerPointTest(cone, cls.embedded, quiet);
    switch (v.status) {
      case InnerStatus::kInner:
        if (cfg.compute_margin) {
          v.margin = CertifyLorentzMargin(cone.space(), v.positive->y);
        }
        report.witness = std::move(cls);
        report.witness_verdict = std::move(v);
        return report;
      case InnerStatus::kNotInner:
        ++report.not_inner;
        if (keep_certificates) {
          report.certificates.push_back(
              CandidateCertificate{std::move(cls), *v.negative, v.method});
        }
        break;
      case InnerStatus::kUndetermined:
        ++report.undetermined;
        break;
    }
  } while (walker.Advance());
  return report;
}

ProjectivityVerdict DecideProjectivity(const SurfaceModel& model,
                                       const SearchConfig& cfg) {
  RequireValid(model);
  const ConeModel cone = MakeConeModel(model);
  ProjectivityVerdict verdict;
  const SignatureTriple ns_sig =
      model.ns_basis.empty() ? SignatureTriple{} : SignatureOfGram(model.NsGram());

  if (model.kind != SurfaceKind::kGeneral) {
    if (ns_sig.pos == 0) {
      // Every nonzero NS class then has a perp construction refuting it.
      verdict.status = ProjectivityStatus::kNotProjective;
      Obstruction o;
      o.kind = ns_sig.zero == 0 ? ObstructionKind::kNSNegativeDefinite
                                : ObstructionKind::kNSNegativeSemiDefinite;
      o.ns_signature = ns_sig;
      verdict.obstruction = std::move(o);
      verdict.note = "NS signature " + FormatSignature(ns_sig) +
                     " has no positive part";
      return verdict;
    }
    // A forward class of positive square lies in the open positive cone,
    // hence in the interior of the dual cone regardless of the cuts.
    if (std::optional<IntegralClass> cls = ForwardPositiveNsClass(model)) {
      InnerPointVerdict v = InnerPointTest(cone, cls->embedded, cfg);
      if (v.status == InnerStatus::kInner) {
        verdict.status = ProjectivityStatus::kProjective;
        verdict.witness = std::move(*cls);
        verdict.witness_verdict = std::move(v);
        verdict.note = "positive-square NS class";
        return verdict;
      }
    }
  }

  SearchReport search = FindInnerIntegralPoint(model, cfg, /*keep_certificates=*/true);
  if (search.witness) {
    verdict.status = ProjectivityStatus::kProjective;
    verdict.witness = std::move(search.witness);
    verdict.witness_verdict = std::move(search.witness_verdict);
    verdict.note = "enumeration witness";
    return verdict;
  }
  if (search.all_not_inner()) {
    verdict.status = ProjectivityStatus::kNotProjective;
    Obstruction o;
    o.kind = ObstructionKind::kPerCandidateCertificates;
    o.ns_signature = ns_sig;
    o.bound = cfg.coefficient_bound;
    o.certificates = std::move(search.certificates);
    verdict.obstruction = std::move(o);
    verdict.note = "every NS class with coefficients in [-" +
                   std::to_string(cfg.coefficient_bound) + "," +
                   std::to_string(cfg.coefficient_bound) +
                   "] is certified not inner; classes outside the box are not covered";
    return verdict;
  }
  verdict.status = ProjectivityStatus::kUndetermined;
  verdict.note = search.exhausted
                     ? std::to_string(search.undetermined) +
                           " candidates undetermined within the search budget"
                     : "enumeration box exceeds the candidate cap";
  return verdict;
}

PerpCertificate PerpObstruction(const SurfaceModel& model, const Vec& x) {
  RequireValid(model);
  const ConeModel cone = MakeConeModel(model);
  const QuadraticSpace& space = cone.space();
  if (x.size() != space.dim()) throw DimensionError("PerpObstruction");
  if (IsZero(x) || !IsIntegral(x)) {
    throw ObstructionError("x must be a nonzero integral class");
  }
  if (!model.ns_basis.empty() && SignatureOfGram(model.NsGram()).pos != 0) {
    throw ObstructionError("NS is not negative semidefinite");
  }
  const Rat x_sq = Square(space, x);
  PerpCertificate cert;
  if (sgn(x_sq) > 0) {
    throw ObstructionError("x has positive square");
  }
  if (sgn(x_sq) == 0) {
    // x itself sits on the boundary of the positive cone.
    cert.which = PerpCase::kIsotropic;
    cert.eta = x;
    if (sgn(Pairing(space, x, cone.kappa())) < 0) cert.eta = Scale(Rat(-1), x);
    const Subspace w = OrthogonalComplement(space, {x});
    cert.perp_dim = w.dim();
    cert.perp_signature = Signature(RestrictForm(space, w));
  } else {
    std::vector<Vec> vs = cone.cuts;
    bool in_span = false;
    if (!vs.empty()) {
      std::vector<Vec> with_x = vs;
      with_x.push_back(x);
      in_span = Rank(Matrix::FromRows(vs)) == Rank(Matrix::FromRows(with_x));
    }
    if (!in_span) vs.push_back(x);
    cert.which = in_span ? PerpCase::kInCurveSpan : PerpCase::kOutsideCurveSpan;
    const Subspace w = OrthogonalComplement(space, vs);
    cert.perp_dim = w.dim();
    if (w.dim() == 0) throw ObstructionError("perp space is zero");
    const QuadraticSpace restricted = RestrictForm(space, w);
    cert.perp_signature = Signature(restricted);
    if (const std::optional<Vec> coords = FindPositiveVector(restricted)) {
      cert.eta = PrimitiveIntegral(w.Embed(*coords));
    } else if (cert.perp_signature.zero > 0) {
      // Semidefinite NS: the radical of W is an isotropic line orthogonal
      // to x and to every curve.
      const std::vector<Vec> radical = NullSpace(restricted.gram());
      cert.which = PerpCase::kIsotropic;
      cert.eta = PrimitiveIntegral(w.Embed(radical.front()));
    } else {
      throw ObstructionError("perp space has signature " +
                             FormatSignature(cert.perp_signature) +
                             " and no positive vector");
    }
    if (sgn(Pairing(space, cert.eta, cone.kappa())) < 0) {
      cert.eta = Scale(Rat(-1), cert.eta);
    }
  }
  if (!VerifyNegativeCertificate(cone, x, cert.eta) ||
      sgn(Pairing(space, x, cert.eta)) != 0) {
    throw ObstructionError("constructed eta does not verify");
  }
  return cert;
}

CrossValidationReport CrossValidate(const SurfaceModel& model,
                                    const SearchConfig& cfg) {
  if (model.kind == SurfaceKind::kGeneral) {
    throw std::invalid_argument("cross validation needs a k3 or torus model");
  }
  CrossValidationReport r;
  const Matrix ns = model.NsGram();
  if (!model.ns_basis.empty()) {
    r.ns_signature = SignatureOfGram(ns);
    r.ns_inertia = InertiaByDescartes(ns);
  }
  r.oracle_projective = r.ns_inertia.pos >= 1;
  const ProjectivityVerdict v = DecideProjectivity(model, cfg);
  r.decided = v.status;
  r.agree = v.status != ProjectivityStatus::kUndetermined &&
            (v.status == ProjectivityStatus::kProjective) == r.oracle_projective &&
            r.ns_signature == r.ns_inertia;

  const ConeModel cone = MakeConeModel(model);
  if (v.status == ProjectivityStatus::kProjective) {
    r.candidates_checked = 1;
    r.certificates_ok = v.witness && v.witness_verdict &&
                        IsIntegral(v.witness->coefficients) &&
                        model.EmbedNs(v.witness->coefficients) == v.witness->embedded &&
                        VerifyVerdict(cone, v.witness->embedded, *v.witness_verdict);
  } else if (v.status == ProjectivityStatus::kNotProjective) {
    r.certificates_ok = true;
    const std::size_t rho = model.ns_basis.size();
    if (rho > 0) {
      BoxWalker walker(rho, 1);
      do {
        if (AllZero(walker.coords())) continue;
        const Vec x = model.EmbedNs(ToVec(walker.coords()));
        ++r.candidates_checked;
        try {
          const PerpCertificate c = PerpObstruction(model, x);
          if (!VerifyNegativeCertificate(cone, x, c.eta)) r.certificates_ok = false;
        } catch (const ObstructionError& e) {
          r.certificates_ok = false;
          r.detail = e.what();
        }
      } while (walker.Advance());
    }
  }
  if (r.detail.empty()) {
    r.detail = "decided " + ToString(v.status) + ", NS inertia " +
               FormatSignature(r.ns_inertia);
  }
  return r;
}

EllipticReport EllipticConsistencyCheck(const SurfaceModel& model,
                                        const EllipticData& data,
                                        const SearchConfig& cfg) {
  const ConeModel cone = MakeConeModel(model);
  if (data.m.size() != cone.component.dim()) throw DimensionError("elliptic M");
  return EllipticConsistencyCheck(model, data, InnerPointTest(cone, data.m, cfg));
}

EllipticReport EllipticConsistencyCheck(const SurfaceModel& model,
                                        const EllipticData& data,
                                        const InnerPointVerdict& claimed) {
  const ConeModel cone = MakeConeModel(model);
  const QuadraticSpace& space = cone.space();
  if (data.m.size() != space.dim() || data.f.size() != space.dim()) {
    throw DimensionError("elliptic data length");
  }
  if (!IsIntegral(data.m)) throw PreconditionError("M must be integral");
  if (!FiberClassInClosure(cone, data.f)) {
    throw PreconditionError("F must be a nonzero class of the closed cone");
  }
  EllipticReport r;
  r.inner_status = claimed.status;
  r.certificate_valid = VerifyVerdict(cone, data.m, claimed);
  r.m_sq = Square(space, data.m);
  r.mf = Pairing(space, data.m, data.f);
  if (claimed.status != InnerStatus::kInner) {
    r.status = EllipticStatus::kVacuous;
    r.detail = "M is " + ToString(claimed.status) + "; no positivity claim to check";
    return r;
  }
  if (sgn(r.mf) <= 0) {
    r.status = EllipticStatus::kContradiction;
    r.detail = "(M.F) = " + FormatRat(r.mf) +
               " <= 0 although F is a nonzero class of the closed cone and M "
               "is claimed inner";
    return r;
  }
  r.n = EllipticPositivityBound(r.m_sq, r.mf);
  r.improved = AddScaled(data.m, Rat(*r.n), data.f);
  r.improved_sq = Square(space, *r.improved);
  if (sgn(*r.improved_sq) > 0) {
    r.status = EllipticStatus::kConsistent;
    r.detail = "M + " + r.n->get_str() + " F has square " + FormatRat(*r.improved_sq);
  } else {
    r.status = EllipticStatus::kContradiction;
    r.detail = "M + nF has non-positive square; F is not isotropic";
  }
  return r;
}

}  // namespace kahlercone
