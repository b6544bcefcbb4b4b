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

#include <gtest/gtest.h>

#include "kahlercone/fuzz.h"
#include "kahlercone/random.h"
#include "oracle/oracle.h"

namespace kahlercone {
namespace {

// k3 kind, gram diag(2,-1,...,-1), NS = <h> with h = e0, h^2 = 2.
SurfaceModel K3Degree2() {
  Vec d(20, Rat(-1));
  d[0] = 2;
  SurfaceModel m;
  m.kind = SurfaceKind::kK3;
  m.gram = Matrix::Diagonal(d);
  m.kappa_ref = UnitVec(20, 0);
  m.ns_basis = {UnitVec(20, 0)};
  return m;
}

SurfaceModel Torus(std::vector<Vec> ns) {
  SurfaceModel m;
  m.kind = SurfaceKind::kTorus;
  m.gram = Matrix::Diagonal(MakeVec({1, -1, -1, -1}));
  m.kappa_ref = UnitVec(4, 0);
  m.ns_basis = std::move(ns);
  return m;
}

TEST(FindInnerIntegralPointTest, DegreeTwoK3FindsH) {
  SearchConfig cfg;
  cfg.coefficient_bound = 1;
  const SurfaceModel m = K3Degree2();
  const SearchReport r = FindInnerIntegralPoint(m, cfg);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(r.witness->coefficients, MakeVec({1}));
  EXPECT_EQ(r.witness->embedded, UnitVec(20, 0));
  // -h comes first in lexicographic order and is refuted.
  EXPECT_EQ(r.candidates, 2u);
  EXPECT_EQ(r.not_inner, 1u);
  EXPECT_TRUE(VerifyVerdict(MakeConeModel(m), r.witness->embedded, *r.witness_verdict));
}

TEST(FindInnerIntegralPointTest, A2AllNotInner) {
  SearchConfig cfg;
  cfg.coefficient_bound = 3;
  const SurfaceModel m = ConstructK3Am(2);
  const SearchReport r = FindInnerIntegralPoint(m, cfg, /*keep_certificates=*/true);
  EXPECT_FALSE(r.witness.has_value());
  EXPECT_TRUE(r.all_not_inner());
  EXPECT_EQ(r.candidates, 48u);
  ASSERT_EQ(r.certificates.size(), 48u);
  const ConeModel cone = MakeConeModel(m);
  for (const CandidateCertificate& c : r.certificates) {
    EXPECT_TRUE(oracle::IsNegativeWitness(m.gram, m.kappa_ref, cone.cuts, c.candidate.embedded,
                                          c.eta));
  }
}

TEST(FindInnerIntegralPointTest, TorusNegativeLineHasNone) {
  SearchConfig cfg;
  cfg.coefficient_bound = 2;
  const SearchReport r = FindInnerIntegralPoint(Torus({UnitVec(4, 1)}), cfg);
  EXPECT_FALSE(r.witness.has_value());
  EXPECT_TRUE(r.all_not_inner());
}

TEST(FindInnerIntegralPointTest, CandidateCapReportsNotExhausted) {
  SearchConfig cfg;
  cfg.coefficient_bound = 5;
  const SearchReport r = FindInnerIntegralPoint(ConstructK3Am(10), cfg, false, 1000);
  EXPECT_FALSE(r.exhausted);
  EXPECT_FALSE(r.all_not_inner());
}

TEST(FindInnerIntegralPointTest, MonotoneInBound) {
  Rng rng(6);
  for (int t = 0; t < 12; ++t) {
    const SurfaceModel m = RandomTorusModel(rng);
    SearchConfig cfg;
    for (long b = 1; b <= 3; ++b) {
      cfg.coefficient_bound = b;
      const bool found = FindInnerIntegralPoint(m, cfg).witness.has_value();
      if (b > 1 && found) continue;
      cfg.coefficient_bound = b + 1;
      if (found) {
        EXPECT_TRUE(FindInnerIntegralPoint(m, cfg).witness.has_value());
      }
    }
  }
}

TEST(DecideProjectivityTest, MinimalModelsAreNotProjective) {
  for (int mm = 0; mm <= 19; ++mm) {
    const ProjectivityVerdict v = DecideProjectivity(ConstructK3Am(mm));
    EXPECT_EQ(v.status, ProjectivityStatus::kNotProjective);
    ASSERT_TRUE(v.obstruction.has_value());
    EXPECT_EQ(v.obstruction->kind, ObstructionKind::kNSNegativeDefinite);
    EXPECT_EQ(v.obstruction->ns_signature.pos, 0u);
  }
}

TEST(DecideProjectivityTest, TorusWithIsotropicNs) {
  const ProjectivityVerdict v = DecideProjectivity(Torus({MakeVec({1, 1, 0, 0})}));
  EXPECT_EQ(v.status, ProjectivityStatus::kNotProjective);
  ASSERT_TRUE(v.obstruction.has_value());
  EXPECT_EQ(v.obstruction->kind, ObstructionKind::kNSNegativeSemiDefinite);
}

TEST(DecideProjectivityTest, DegreeTwoK3IsProjective) {
  const ProjectivityVerdict v = DecideProjectivity(K3Degree2());
  EXPECT_EQ(v.status, ProjectivityStatus::kProjective);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_EQ(v.witness->embedded, UnitVec(20, 0));
}

TEST(DecideProjectivityTest, TorusWithPositiveClass) {
  const SurfaceModel m = Torus({MakeVec({2, 1, 0, 0}), MakeVec({0, 0, 1, 1})});
  const ProjectivityVerdict v = DecideProjectivity(m);
  EXPECT_EQ(v.status, ProjectivityStatus::kProjective);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_TRUE(IsIntegral(v.witness->coefficients));
  EXPECT_GT(oracle::Pair(m.gram, v.witness->embedded, v.witness->embedded), 0);
  EXPECT_GT(oracle::Pair(m.gram, v.witness->embedded, m.kappa_ref), 0);
}

TEST(DecideProjectivityTest, InvalidModelRejected) {
  SurfaceModel bad = K3Degree2();
  bad.gram(1, 1) = 0;
  EXPECT_THROW(DecideProjectivity(bad), InvalidModelError);
}

TEST(DecideProjectivityTest, GeneralKindUsesEnumeration) {
  // (1,2) space, one (-2) cut, NS spanned by the cut and a positive class.
  SurfaceModel m;
  m.kind = SurfaceKind::kGeneral;
  m.gram = Matrix::Diagonal(MakeVec({1, -1, -1}));
  m.kappa_ref = MakeVec({3, -1, 0});
  m.ns_basis = {MakeVec({0, 1, 1}), MakeVec({1, 0, 0})};
  m.curves = {CurveClass{"C", MakeVec({0, 1, 1})}};
  SearchConfig cfg;
  cfg.coefficient_bound = 2;
  const ProjectivityVerdict v = DecideProjectivity(m, cfg);
  EXPECT_EQ(v.status, ProjectivityStatus::kProjective);
  ASSERT_TRUE(v.witness_verdict.has_value());
  EXPECT_TRUE(VerifyVerdict(MakeConeModel(m), v.witness->embedded, *v.witness_verdict));

  SurfaceModel neg = m;
  neg.ns_basis = {MakeVec({0, 1, 1})};
  const ProjectivityVerdict w = DecideProjectivity(neg, cfg);
  EXPECT_EQ(w.status, ProjectivityStatus::kNotProjective);
  ASSERT_TRUE(w.obstruction.has_value());
  EXPECT_EQ(w.obstruction->kind, ObstructionKind::kPerCandidateCertificates);
  EXPECT_EQ(w.obstruction->certificates.size(), 4u);
}

TEST(DecideProjectivityTest, Deterministic) {
  Rng rng(9);
  const SurfaceModel m = RandomK3Model(rng);
  const ProjectivityVerdict a = DecideProjectivity(m);
  const ProjectivityVerdict b = DecideProjectivity(m);
  EXPECT_EQ(a.status, b.status);
  EXPECT_EQ(a.note, b.note);
  if (a.witness) {
    EXPECT_EQ(a.witness->embedded, b.witness->embedded);
  }
}

TEST(PerpObstructionTest, InCurveSpan) {
  const SurfaceModel m = ConstructK3Am(1);
  const PerpCertificate c = PerpObstruction(m, m.curves[0].klass);
  EXPECT_EQ(c.which, PerpCase::kInCurveSpan);
  EXPECT_EQ(c.perp_signature, (SignatureTriple{1, 0, 18}));
  const QuadraticSpace q = m.Space();
  EXPECT_EQ(Pairing(q, m.curves[0].klass, c.eta), 0);
  EXPECT_TRUE(ClosureMembership(MakeConeModel(m), c.eta));
  EXPECT_FALSE(IsZero(c.eta));
}

TEST(PerpObstructionTest, OutsideCurveSpan) {
  SurfaceModel m = ConstructK3Am(2);
  // Enlarge NS by a third negative class orthogonal to the curves.
  m.ns_basis.push_back(UnitVec(20, 5));
  ASSERT_TRUE(ValidateModel(m).empty());
  const Vec x = Add(UnitVec(20, 5), m.curves[0].klass);
  const PerpCertificate c = PerpObstruction(m, x);
  EXPECT_EQ(c.which, PerpCase::kOutsideCurveSpan);
  EXPECT_EQ(c.perp_signature, (SignatureTriple{1, 0, 16}));
  EXPECT_EQ(Pairing(m.Space(), x, c.eta), 0);
  EXPECT_TRUE(ClosureMembership(MakeConeModel(m), c.eta));
}

TEST(PerpObstructionTest, TorusNegativeClass) {
  const SurfaceModel m = Torus({UnitVec(4, 1)});
  const PerpCertificate c = PerpObstruction(m, UnitVec(4, 1));
  EXPECT_GT(Square(m.Space(), c.eta), 0);
  EXPECT_EQ(Pairing(m.Space(), UnitVec(4, 1), c.eta), 0);
  EXPECT_EQ(c.perp_signature, (SignatureTriple{1, 0, 2}));
}

TEST(PerpObstructionTest, TorusIsotropicClass) {
  const SurfaceModel m = Torus({MakeVec({1, 1, 0, 0})});
  const PerpCertificate c = PerpObstruction(m, MakeVec({-1, -1, 0, 0}));
  EXPECT_EQ(c.which, PerpCase::kIsotropic);
  EXPECT_EQ(c.eta, MakeVec({1, 1, 0, 0}));
}

TEST(PerpObstructionTest, DegeneratePerpUsesRadical) {
  // k3 kind with NS = <f, c>: f = e0 + e1 isotropic, c = e2 + e3 a curve.
  // For x = f + c the perp of {x, c} is f^perp cap c^perp, which is
  // negative semidefinite with radical f.
  Vec d(20, Rat(-1));
  d[0] = 1;
  SurfaceModel m;
  m.kind = SurfaceKind::kK3;
  m.gram = Matrix::Diagonal(d);
  Vec f = UnitVec(20, 0);
  f[1] = 1;
  Vec c = UnitVec(20, 2);
  c[3] = 1;
  m.ns_basis = {f, c};
  m.curves = {CurveClass{"C", c}};
  m.kappa_ref = SmallestForwardKappa(m.Space(), UnitVec(20, 0), {c});
  ASSERT_TRUE(ValidateModel(m).empty());
  const ConeModel cone = MakeConeModel(m);

  const PerpCertificate cert = PerpObstruction(m, Add(f, c));
  EXPECT_EQ(cert.which, PerpCase::kIsotropic);
  EXPECT_EQ(cert.perp_signature.pos, 0u);
  EXPECT_EQ(cert.eta, f);
  for (const Vec& coeffs : oracle::Box(2, 2)) {
    if (IsZero(coeffs)) continue;
    const Vec x = m.EmbedNs(coeffs);
    const PerpCertificate e = PerpObstruction(m, x);
    EXPECT_TRUE(oracle::IsNegativeWitness(m.gram, m.kappa_ref, cone.cuts, x, e.eta));
    EXPECT_EQ(oracle::Pair(m.gram, x, e.eta), 0);
  }
  EXPECT_EQ(DecideProjectivity(m).obstruction->kind, ObstructionKind::kNSNegativeSemiDefinite);
}

TEST(PerpObstructionTest, Errors) {
  EXPECT_THROW(PerpObstruction(K3Degree2(), UnitVec(20, 0)), ObstructionError);
  const SurfaceModel m = ConstructK3Am(2);
  EXPECT_THROW(PerpObstruction(m, ZeroVec(20)), ObstructionError);
  EXPECT_THROW(PerpObstruction(m, Vec(20, Rat(1, 2))), ObstructionError);
}

TEST(PerpObstructionTest, A5BoxOfThree) {
  const SurfaceModel m = ConstructK3Am(5);
  const ConeModel cone = MakeConeModel(m);
  std::size_t checked = 0;
  for (const Vec& coeffs : oracle::Box(5, 1)) {
    if (IsZero(coeffs)) continue;
    const Vec x = m.EmbedNs(coeffs);
    const PerpCertificate c = PerpObstruction(m, x);
    EXPECT_TRUE(oracle::IsNegativeWitness(m.gram, m.kappa_ref, cone.cuts, x, c.eta));
    EXPECT_EQ(oracle::Pair(m.gram, x, c.eta), 0);
    ++checked;
  }
  EXPECT_EQ(checked, 242u);
}

TEST(CrossValidateTest, Examples) {
  const CrossValidationReport a5 = CrossValidate(ConstructK3Am(5));
  EXPECT_TRUE(a5.agree);
  EXPECT_TRUE(a5.certificates_ok);
  EXPECT_FALSE(a5.oracle_projective);
  EXPECT_EQ(a5.decided, ProjectivityStatus::kNotProjective);

  const CrossValidationReport h = CrossValidate(K3Degree2());
  EXPECT_TRUE(h.agree);
  EXPECT_TRUE(h.oracle_projective);
  EXPECT_TRUE(h.certificates_ok);

  SurfaceModel general = K3Degree2();
  general.kind = SurfaceKind::kGeneral;
  EXPECT_THROW(CrossValidate(general), std::invalid_argument);
}

TEST(CrossValidateTest, RandomModels) {
  Rng rng(2718);
  for (int t = 0; t < 40; ++t) {
    const SurfaceModel m = t % 2 ? RandomTorusModel(rng) : RandomK3Model(rng);
    const CrossValidationReport r = CrossValidate(m);
    EXPECT_TRUE(r.agree) << r.detail;
    EXPECT_TRUE(r.certificates_ok) << r.detail;
    EXPECT_EQ(r.oracle_projective, oracle::Signature(m.NsGram()).pos >= 1);
  }
}

SurfaceModel EllipticTorus(const Vec& m_class) {
  SurfaceModel m = Torus({MakeVec({1, 1, 0, 0}), UnitVec(4, 2), UnitVec(4, 3), UnitVec(4, 0)});
  m.elliptic = EllipticData{m_class, MakeVec({1, 1, 0, 0})};
  return m;
}

TEST(EllipticConsistencyTest, Examples) {
  // M = 3 e0 + e1 + 2 e2: M^2 = 9 - 1 - 4 = 4 > 0, inner, n = 0.
  const SurfaceModel a = EllipticTorus(MakeVec({3, 1, 2, 0}));
  const EllipticReport ra = EllipticConsistencyCheck(a, *a.elliptic);
  EXPECT_EQ(ra.status, EllipticStatus::kConsistent);
  EXPECT_EQ(*ra.n, 0);

  // Non-inner M: vacuous.
  const SurfaceModel b = EllipticTorus(MakeVec({0, 0, 1, 0}));
  EXPECT_EQ(EllipticConsistencyCheck(b, *b.elliptic).status, EllipticStatus::kVacuous);
}

TEST(EllipticConsistencyTest, ClaimedInnerWithZeroPairingIsContradiction) {
  const SurfaceModel m = EllipticTorus(MakeVec({0, 0, 1, 0}));
  InnerPointVerdict claimed;
  claimed.status = InnerStatus::kInner;
  const EllipticReport r = EllipticConsistencyCheck(m, *m.elliptic, claimed);
  EXPECT_EQ(r.mf, 0);
  EXPECT_EQ(r.status, EllipticStatus::kContradiction);
  EXPECT_FALSE(r.certificate_valid);
}

TEST(EllipticConsistencyTest, NegativeSquareNeedsThreeFibres) {
  // F = e0 + e1 and M = (1, 0, 2, 1): (M.F) = 1, M^2 = 1 - 4 - 1 = -4.
  const Vec mv = MakeVec({1, 0, 2, 1});
  const SurfaceModel m = EllipticTorus(mv);
  InnerPointVerdict claimed;
  claimed.status = InnerStatus::kInner;
  const EllipticReport r = EllipticConsistencyCheck(m, *m.elliptic, claimed);
  EXPECT_EQ(r.m_sq, -4);
  EXPECT_EQ(r.mf, 1);
  EXPECT_EQ(*r.n, 3);
  EXPECT_EQ(*r.improved_sq, 2);
  EXPECT_EQ(r.status, EllipticStatus::kConsistent);
}

TEST(EllipticConsistencyTest, Preconditions) {
  SurfaceModel m = EllipticTorus(MakeVec({1, 0, 0, 0}));
  EXPECT_THROW(EllipticConsistencyCheck(m, EllipticData{Vec(4, Rat(1, 2)), m.elliptic->f}),
               PreconditionError);
  EXPECT_THROW(EllipticConsistencyCheck(m, EllipticData{m.elliptic->m, MakeVec({0, 1, 0, 0})}),
               PreconditionError);
}

}  // namespace
}  // namespace kahlercone
