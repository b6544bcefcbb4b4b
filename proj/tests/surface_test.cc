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


#include "kahlercone/surface.h"

#include <gtest/gtest.h>

#include <algorithm>

#include "kahlercone/fuzz.h"
#include "kahlercone/random.h"
#include "oracle/oracle.h"

namespace kahlercone {
namespace {

bool HasViolation(const SurfaceModel& m, const std::string& needle) {
  for (const std::string& v : ValidateModel(m)) {
    if (v.find(needle) != std::string::npos) return true;
  }
  return false;
}

SurfaceModel TorusModel() {
  SurfaceModel m;
  m.kind = SurfaceKind::kTorus;
  m.gram = Matrix::Diagonal(MakeVec({1, -1, -1, -1}));
  m.kappa_ref = UnitVec(4, 0);
  return m;
}

TEST(SurfaceKindTest, ParseAndFormat) {
  for (SurfaceKind k : {SurfaceKind::kK3, SurfaceKind::kTorus, SurfaceKind::kGeneral}) {
    EXPECT_EQ(ParseSurfaceKind(ToString(k)), k);
  }
  EXPECT_THROW(ParseSurfaceKind("enriques"), std::invalid_argument);
}

TEST(AmGramTest, Examples) {
  EXPECT_EQ(AmGram(1), (Matrix{{-2}}));
  EXPECT_EQ(AmGram(2), (Matrix{{-2, 1}, {1, -2}}));
  EXPECT_EQ(SignatureOfGram(AmGram(3)), (SignatureTriple{0, 0, 3}));
  EXPECT_THROW(AmGram(0), std::invalid_argument);
  EXPECT_THROW(AmGram(20), std::invalid_argument);
}

TEST(AmGramTest, NegativeDefiniteForAllM) {
  for (int m = 1; m <= 19; ++m) {
    const Matrix g = AmGram(m);
    EXPECT_EQ(SignatureOfGram(g), (SignatureTriple{0, 0, static_cast<std::size_t>(m)}));
    EXPECT_EQ(oracle::Signature(g), (SignatureTriple{0, 0, static_cast<std::size_t>(m)}));
    // det of the negated Cartan matrix is (-1)^m (m + 1).
    EXPECT_EQ(Determinant(g), Rat((m % 2 ? -1 : 1) * (m + 1)));
  }
}

TEST(ConstructK3AmTest, ValidWithExpectedSignatures) {
  for (int m = 0; m <= 19; ++m) {
    const SurfaceModel s = ConstructK3Am(m);
    EXPECT_TRUE(ValidateModel(s).empty()) << m;
    EXPECT_EQ(s.dim(), 20u);
    EXPECT_EQ(s.ns_basis.size(), static_cast<std::size_t>(m));
    EXPECT_EQ(Signature(s.Space()), (SignatureTriple{1, 0, 19}));
    std::vector<Vec> curves;
    for (const CurveClass& c : s.curves) curves.push_back(c.klass);
    const Subspace w = OrthogonalComplement(s.Space(), curves);
    const SignatureTriple perp = Signature(RestrictForm(s.Space(), w));
    EXPECT_EQ(perp, (SignatureTriple{1, 0, static_cast<std::size_t>(19 - m)}));
    EXPECT_EQ(oracle::Signature(RestrictForm(s.Space(), w).gram()), perp);
  }
  EXPECT_THROW(ConstructK3Am(-1), std::invalid_argument);
  EXPECT_THROW(ConstructK3Am(20), std::invalid_argument);
}

TEST(ConstructK3AmTest, KappaIsSmallestCorrection) {
  const SurfaceModel s = ConstructK3Am(3);
  const QuadraticSpace q = s.Space();
  EXPECT_GT(Square(q, s.kappa_ref), 0);
  for (const CurveClass& c : s.curves) EXPECT_GT(Pairing(q, s.kappa_ref, c.klass), 0);
  EXPECT_EQ(s.curves[0].name, "C1");
  EXPECT_EQ(ConstructK3Am(3), s);
}

TEST(ValidateModelTest, CurveSquareMustBeMinusTwo) {
  SurfaceModel s = ConstructK3Am(1);
  // A class of square 0 in the NS span: e0 + e1 (pairs 1 with kappa).
  Vec iso = UnitVec(20, 0);
  iso[1] = 1;
  s.ns_basis.push_back(iso);
  s.curves.push_back(CurveClass{"F", iso});
  EXPECT_TRUE(HasViolation(s, "curve square must be -2"));
}

TEST(ValidateModelTest, SignatureContradictionFor20Curves) {
  SurfaceModel s = ConstructK3Am(19);
  // A twentieth independent (-2)-class declared as a curve: 4 - 6 = -2.
  Vec extra = UnitVec(20, 0);
  extra[0] = 2;
  for (std::size_t i : {1, 3, 5}) extra[i] = 1;
  s.ns_basis.push_back(extra);
  s.curves.push_back(CurveClass{"C20", extra});
  EXPECT_TRUE(HasViolation(s, "signature contradiction"));
}

TEST(ValidateModelTest, StructuralViolations) {
  SurfaceModel bad = TorusModel();
  bad.gram(0, 1) = 1;
  EXPECT_FALSE(ValidateModel(bad).empty());

  SurfaceModel degenerate = TorusModel();
  degenerate.gram(3, 3) = 0;
  EXPECT_FALSE(ValidateModel(degenerate).empty());

  SurfaceModel wrong_dim = TorusModel();
  wrong_dim.kind = SurfaceKind::kK3;
  EXPECT_FALSE(ValidateModel(wrong_dim).empty());

  SurfaceModel back = TorusModel();
  back.kappa_ref = Scale(Rat(-1), back.kappa_ref);
  EXPECT_TRUE(ValidateModel(back).empty());  // either component may be chosen

  SurfaceModel null_kappa = TorusModel();
  null_kappa.kappa_ref = MakeVec({1, 1, 0, 0});
  EXPECT_FALSE(ValidateModel(null_kappa).empty());

  SurfaceModel nonint = TorusModel();
  nonint.ns_basis.push_back(Vec{Rat(1, 2), 0, 0, 0});
  EXPECT_FALSE(ValidateModel(nonint).empty());

  SurfaceModel outside = ConstructK3Am(2);
  outside.curves.push_back(CurveClass{"X", UnitVec(20, 5)});
  EXPECT_TRUE(HasViolation(outside, "span"));

  SurfaceModel dup = ConstructK3Am(2);
  dup.curves[1].name = "C1";
  EXPECT_FALSE(ValidateModel(dup).empty());

  SurfaceModel negative_area = ConstructK3Am(1);
  negative_area.curves[0].klass = Scale(Rat(-1), negative_area.curves[0].klass);
  negative_area.ns_basis[0] = negative_area.curves[0].klass;
  EXPECT_FALSE(ValidateModel(negative_area).empty());
}

TEST(ValidateModelTest, DependentCurvesOnNegativeDefiniteK3) {
  SurfaceModel s = ConstructK3Am(2);
  s.curves.push_back(CurveClass{"C1b", s.curves[0].klass});
  EXPECT_FALSE(ValidateModel(s).empty());
}

TEST(ValidateModelTest, EllipticBlock) {
  SurfaceModel s = TorusModel();
  s.ns_basis = {MakeVec({1, 1, 0, 0}), MakeVec({0, 0, 1, 0})};
  s.elliptic = EllipticData{MakeVec({0, 0, 1, 0}), MakeVec({1, 1, 0, 0})};
  EXPECT_TRUE(ValidateModel(s).empty());
  s.elliptic->f = MakeVec({1, 0, 0, 0});  // not isotropic
  EXPECT_FALSE(ValidateModel(s).empty());
  s.elliptic->f = MakeVec({-1, -1, 0, 0});  // backward
  EXPECT_FALSE(ValidateModel(s).empty());
}

TEST(MakeConeModelTest, TorusHasNoCutsK3UsesCurves) {
  EXPECT_TRUE(MakeConeModel(TorusModel()).cuts.empty());
  EXPECT_EQ(MakeConeModel(ConstructK3Am(4)).cuts.size(), 4u);
  SurfaceModel bad = TorusModel();
  bad.gram(3, 3) = 0;
  EXPECT_THROW(MakeConeModel(bad), InvalidModelError);
}

TEST(BlowdownTest, CoordinateProjection) {
  const BlowdownMap bd{QuadraticSpace(Matrix::Diagonal(MakeVec({1, -1, -1})))};
  EXPECT_EQ(BlowDown(bd, MakeVec({3, 1, 2, 5})), MakeVec({3, 1, 2}));
  EXPECT_EQ(BlowDown(bd, bd.PullBack(MakeVec({4, 0, 1}))), MakeVec({4, 0, 1}));
  EXPECT_THROW(BlowDown(bd, MakeVec({1, 2, 3})), DimensionError);
  EXPECT_EQ(Square(bd.SourceSpace(), bd.Exceptional()), -1);
}

TEST(BlowdownTest, PairingCompatibility) {
  Rng rng(13);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = rng.UniformInt(2, 6);
    const BlowdownMap bd{RandomLorentzianSpace(rng, n, nullptr)};
    Vec x(n + 1), sigma(n);
    for (Rat& e : x) e = rng.UniformInt(-5, 5);
    for (Rat& e : sigma) e = MakeRat(rng.UniformInt(-5, 5), rng.UniformInt(1, 3));
    EXPECT_EQ(oracle::Pair(bd.SourceSpace().gram(), x, bd.PullBack(sigma)),
              oracle::Pair(bd.target.gram(), BlowDown(bd, x), sigma));
  }
}

TEST(DescendInnerPointTest, Examples) {
  const QuadraticSpace target_space(Matrix::Diagonal(MakeVec({1, -1, -1})));
  const ConeModel target{PositiveConeComponent(target_space, MakeVec({1, 0, 0})), {}};
  const BlowdownMap bd{target_space};
  const ConeModel source = BlowUpConeModel(bd, target);
  EXPECT_EQ(source.cuts.size(), 1u);
  EXPECT_GT(Square(source.space(), source.kappa()), 0);

  // x = tau^* y + e with y = 3 e0.
  const DescentResult d1 = DescendInnerPoint(bd, source, target, MakeVec({3, 0, 0, 1}));
  EXPECT_EQ(d1.y, MakeVec({3, 0, 0}));
  EXPECT_EQ(d1.target_verdict.status, InnerStatus::kInner);
  EXPECT_FALSE(d1.contradiction);

  // x = tau^* kappa_T.
  const DescentResult d2 = DescendInnerPoint(bd, source, target, MakeVec({1, 0, 0, 0}));
  EXPECT_EQ(d2.target_verdict.status, InnerStatus::kInner);

  EXPECT_THROW(DescendInnerPoint(bd, source, target, MakeVec({0, 1, 0, 0})), PreconditionError);
  EXPECT_THROW(DescendInnerPoint(bd, source, target, Vec{Rat(1, 2), 0, 0, 0}),
               PreconditionError);
}

TEST(EllipticBoundTest, Examples) {
  EXPECT_EQ(EllipticPositivityBound(-4, 1), 3);
  EXPECT_EQ(EllipticPositivityBound(2, 5), 0);
  EXPECT_EQ(EllipticPositivityBound(0, 1), 1);
  EXPECT_THROW(EllipticPositivityBound(1, 0), std::invalid_argument);
  EXPECT_THROW(EllipticPositivityBound(1, -1), std::invalid_argument);
}

TEST(EllipticBoundTest, AgreesWithScan) {
  Rng rng(404);
  for (int t = 0; t < 300; ++t) {
    const Rat m_sq = MakeRat(rng.UniformInt(-500, 500), rng.UniformInt(1, 9));
    const Rat mf = MakeRat(rng.UniformInt(1, 300), rng.UniformInt(1, 9));
    EXPECT_EQ(EllipticPositivityBound(m_sq, mf), oracle::ScanEllipticBound(m_sq, mf, 1000000));
  }
}

TEST(FiberClassTest, Examples) {
  const ConeModel plane{
      PositiveConeComponent(QuadraticSpace(Matrix::Diagonal(MakeVec({1, -1}))), MakeVec({1, 0})),
      {}};
  EXPECT_TRUE(FiberClassInClosure(plane, MakeVec({1, 1})));
  EXPECT_FALSE(FiberClassInClosure(plane, MakeVec({0, 0})));
  EXPECT_FALSE(FiberClassInClosure(plane, MakeVec({0, 1})));
}

TEST(RandomModelsTest, GeneratorsProduceValidModels) {
  Rng rng(1);
  for (int t = 0; t < 40; ++t) {
    EXPECT_TRUE(ValidateModel(RandomK3Model(rng)).empty());
    EXPECT_TRUE(ValidateModel(RandomTorusModel(rng)).empty());
  }
}

}  // namespace
}  // namespace kahlercone
