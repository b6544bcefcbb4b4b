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

#include <set>
#include <utility>

namespace kahlercone {

namespace {

std::string Join(const std::vector<std::string>& parts) {
  std::string out;
  for (const std::string& p : parts) {
    if (!out.empty()) out += "; ";
    out += p;
  }
  return out;
}

// True iff v is an integer combination of `basis` (assumed independent).
bool InIntegerSpan(const std::vector<Vec>& basis, const Vec& v) {
  if (basis.empty()) return IsZero(v);
  Vec coeffs;
  if (!SolveLinear(Matrix::FromColumns(basis), v, &coeffs)) return false;
  return IsIntegral(coeffs);
}

std::size_t ExpectedDim(SurfaceKind kind) {
  switch (kind) {
    case SurfaceKind::kK3:
      return 20;
    case SurfaceKind::kTorus:
      return 4;
    case SurfaceKind::kGeneral:
      return 0;
  }
  return 0;
}

}  // namespace

std::string ToString(SurfaceKind kind) {
  switch (kind) {
    case SurfaceKind::kK3:
      return "k3";
    case SurfaceKind::kTorus:
      return "torus";
    case SurfaceKind::kGeneral:
      return "general";
  }
  return "general";
}

SurfaceKind ParseSurfaceKind(const std::string& text) {
  if (text == "k3") return SurfaceKind::kK3;
  if (text == "torus") return SurfaceKind::kTorus;
  if (text == "general") return SurfaceKind::kGeneral;
  throw std::invalid_argument("unknown surface kind \"" + text + "\"");
}

QuadraticSpace SurfaceModel::Space() const {
  return QuadraticSpace(gram, /*allow_degenerate=*/true);
}

Matrix SurfaceModel::NsGram() const {
  const QuadraticSpace space = Space();
  const std::size_t r = ns_basis.size();
  Matrix g(r, r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = i; j < r; ++j) {
      g(i, j) = Pairing(space, ns_basis[i], ns_basis[j]);
      g(j, i) = g(i, j);
    }
  }
  return g;
}

Vec SurfaceModel::EmbedNs(const Vec& coeffs) const {
  if (coeffs.size() != ns_basis.size()) {
    throw DimensionError("EmbedNs: expected " + std::to_string(ns_basis.size()) +
                         " coefficients, got " + std::to_string(coeffs.size()));
  }
  Vec out = ZeroVec(dim());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    out = AddScaled(out, coeffs[i], ns_basis[i]);
  }
  return out;
}

const CurveClass* SurfaceModel::FindCurve(const std::string& name) const {
  for (const CurveClass& c : curves) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

InvalidModelError::InvalidModelError(std::vector<std::string> violations)
    : std::invalid_argument("invalid model: " + Join(violations)),
      violations_(std::move(violations)) {}

std::vector<std::string> ValidateModel(const SurfaceModel& model) {
  std::vector<std::string> v;
  const std::size_t n = model.dim();
  if (!model.gram.square() || n == 0) {
    v.push_back("gram matrix must be square and non-empty");
    return v;
  }
  if (!model.gram.IsSymmetric()) {
    v.push_back("gram matrix is not symmetric");
    return v;
  }
  const std::size_t expected = ExpectedDim(model.kind);
  if (expected != 0 && n != expected) {
    v.push_back(ToString(model.kind) + " model must have dimension " +
                std::to_string(expected) + ", got " + std::to_string(n));
  }
  if (model.kind == SurfaceKind::kGeneral && n < 2) {
    v.push_back("general model must have dimension >= 2");
  }
  const QuadraticSpace space = model.Space();
  const SignatureTriple sig = Signature(space);
  if (sig.zero != 0) {
    v.push_back("gram matrix is degenerate, signature " + FormatSignature(sig));
  } else if (sig.pos != 1) {
    v.push_back("signature must be (1,0," + std::to_string(n - 1) + "), got " +
                FormatSignature(sig));
  }

  bool kappa_ok = false;
  if (model.kappa_ref.size() != n) {
    v.push_back("kappa_ref has length " + std::to_string(model.kappa_ref.size()) +
                ", expected " + std::to_string(n));
  } else if (sgn(Square(space, model.kappa_ref)) <= 0) {
    v.push_back("kappa_ref must have positive square");
  } else {
    kappa_ok = true;
  }

  bool ns_ok = true;
  for (std::size_t i = 0; i < model.ns_basis.size(); ++i) {
    const Vec& b = model.ns_basis[i];
    if (b.size() != n) {
      v.push_back("ns_basis[" + std::to_string(i) + "] has wrong length");
      ns_ok = false;
    } else if (!IsIntegral(b)) {
      v.push_back("ns_basis[" + std::to_string(i) + "] is not integral");
      ns_ok = false;
    }
  }
  if (ns_ok && !model.ns_basis.empty() &&
      Rank(Matrix::FromRows(model.ns_basis)) != model.ns_basis.size()) {
    v.push_back("ns_basis is linearly dependent");
    ns_ok = false;
  }

  std::set<std::string> names;
  std::vector<Vec> curve_classes;
  for (const CurveClass& c : model.curves) {
    const std::string label = "curve \"" + c.name + "\"";
    if (c.name.empty()) v.push_back("curve with empty name");
    if (!names.insert(c.name).second) v.push_back(label + " is declared twice");
    if (c.klass.size() != n) {
      v.push_back(label + " has wrong length");
      continue;
    }
    if (IsZero(c.klass)) {
      v.push_back(label + " is zero");
      continue;
    }
    if (!IsIntegral(c.klass)) {
      v.push_back(label + " is not integral");
      continue;
    }
    curve_classes.push_back(c.klass);
    if (ns_ok && !InIntegerSpan(model.ns_basis, c.klass)) {
      v.push_back(label + " is not in the integer span of ns_basis");
    }
    if (model.kind == SurfaceKind::kK3 && Square(space, c.klass) != -2) {
      v.push_back(label + ": curve square must be -2, got " +
                  FormatRat(Square(space, c.klass)));
    }
    if (kappa_ok && sgn(Pairing(space, model.kappa_ref, c.klass)) <= 0) {
      v.push_back(label + " must pair positively with kappa_ref");
    }
  }

  if (model.kind == SurfaceKind::kK3 && !curve_classes.empty()) {
    const std::size_t rank = Rank(Matrix::FromRows(curve_classes));
    if (rank >= 20) {
      v.push_back(
          "signature contradiction: " + std::to_string(rank) +
          " independent curve classes would span all of H^{1,1}, of signature "
          "(1,19), while a negative definite curve span has dimension <= 19");
    } else if (ns_ok && !model.ns_basis.empty() &&
               SignatureOfGram(model.NsGram()).pos == 0 &&
               rank != curve_classes.size()) {
      v.push_back("curve classes are linearly dependent although NS is negative "
                  "definite");
    }
  }

  if (model.elliptic) {
    const EllipticData& e = *model.elliptic;
    if (e.m.size() != n || e.f.size() != n) {
      v.push_back("elliptic data has wrong length");
    } else {
      if (!IsIntegral(e.m) || !IsIntegral(e.f)) {
        v.push_back("elliptic M and F must be integral");
      }
      if (ns_ok && (!InIntegerSpan(model.ns_basis, e.m) ||
                    !InIntegerSpan(model.ns_basis, e.f))) {
        v.push_back("elliptic M and F must lie in NS");
      }
      if (sgn(Square(space, e.f)) != 0) {
        v.push_back("elliptic fibre class must be isotropic");
      }
      if (IsZero(e.f)) {
        v.push_back("elliptic fibre class is zero");
      } else if (kappa_ok && sig.pos == 1 && sig.zero == 0 &&
                 (sgn(Pairing(space, e.f, model.kappa_ref)) <= 0 ||
                  sgn(Square(space, e.f)) < 0)) {
        v.push_back("elliptic fibre class is not in the closed positive cone");
      }
    }
  }
  return v;
}

ConeModel MakeConeModel(const SurfaceModel& model) {
  std::vector<std::string> violations = ValidateModel(model);
  if (!violations.empty()) throw InvalidModelError(std::move(violations));
  ConeModel cone{PositiveConeComponent(QuadraticSpace(model.gram), model.kappa_ref),
                 {}};
  if (model.kind != SurfaceKind::kTorus) {
    for (const CurveClass& c : model.curves) cone.cuts.push_back(c.klass);
  }
  return cone;
}

Matrix AmGram(int m) {
  if (m < 1 || m > 19) {
    throw std::invalid_argument("A_m block needs 1 <= m <= 19, got " +
                                std::to_string(m));
  }
  Matrix g(m, m);
  for (int i = 0; i < m; ++i) {
    g(i, i) = -2;
    if (i + 1 < m) {
      g(i, i + 1) = 1;
      g(i + 1, i) = 1;
    }
  }
  return g;
}

Vec SmallestForwardKappa(const QuadraticSpace& space, const Vec& forward,
                         const std::vector<Vec>& curves) {
  if (curves.empty()) {
    if (sgn(Square(space, forward)) <= 0) {
      throw std::invalid_argument("forward vector must have positive square");
    }
    return forward;
  }
  const std::size_t m = curves.size();
  Matrix cg(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) cg(i, j) = Pairing(space, curves[i], curves[j]);
  }
  Vec coeffs;
  if (sgn(Determinant(cg)) == 0 || !SolveLinear(cg, Vec(m, Rat(1)), &coeffs)) {
    throw std::invalid_argument("curve Gram matrix is singular");
  }
  Vec delta = ZeroVec(space.dim());
  for (std::size_t i = 0; i < m; ++i) delta = AddScaled(delta, coeffs[i], curves[i]);

  const Rat ff = Square(space, forward);
  const Rat fd = Pairing(space, forward, delta);
  const Rat dd = Square(space, delta);
  std::vector<Rat> fc(m);
  for (std::size_t i = 0; i < m; ++i) fc[i] = Pairing(space, forward, curves[i]);
  for (long big_n = 1; big_n <= (1L << 24); ++big_n) {
    const Rat t(1, big_n);
    if (sgn(ff + 2 * t * fd + t * t * dd) <= 0) continue;
    bool ok = true;
    for (std::size_t i = 0; i < m && ok; ++i) ok = sgn(fc[i] + t) > 0;
    if (ok) return AddScaled(forward, t, delta);
  }
  throw std::invalid_argument("no admissible kappa correction found");
}

SurfaceModel ConstructK3Am(int m) {
  if (m < 0 || m > 19) {
    throw std::invalid_argument("construct_k3_am needs 0 <= m <= 19, got " +
                                std::to_string(m));
  }
  constexpr std::size_t kDim = 20;
  SurfaceModel model;
  model.kind = SurfaceKind::kK3;
  model.gram = Matrix(kDim, kDim);
  model.gram(0, 0) = 1;
  // A_19 fills every slot after e0, so the -1 partner of e0 only exists for
  // m <= 18.
  const std::size_t offset = m <= 18 ? 2 : 1;
  if (offset == 2) model.gram(1, 1) = -1;
  if (m > 0) {
    const Matrix block = AmGram(m);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) model.gram(offset + i, offset + j) = block(i, j);
    }
  }
  for (std::size_t i = offset + m; i < kDim; ++i) model.gram(i, i) = -1;

  std::vector<Vec> classes;
  for (int i = 0; i < m; ++i) {
    Vec c = UnitVec(kDim, offset + i);
    model.ns_basis.push_back(c);
    model.curves.push_back(CurveClass{"C" + std::to_string(i + 1), c});
    classes.push_back(std::move(c));
  }
  model.kappa_ref = SmallestForwardKappa(QuadraticSpace(model.gram),
                                         UnitVec(kDim, 0), classes);
  return model;
}

QuadraticSpace BlowdownMap::SourceSpace() const {
  const std::size_t n = target.dim();
  Matrix g(n + 1, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) g(i, j) = target.gram()(i, j);
  }
  g(n, n) = -1;
  return QuadraticSpace(std::move(g));
}

Vec BlowdownMap::Exceptional() const { return UnitVec(source_dim(), target_dim()); }

Vec BlowdownMap::PullBack(const Vec& sigma) const {
  if (sigma.size() != target_dim()) throw DimensionError("PullBack");
  Vec out = sigma;
  out.emplace_back(0);
  return out;
}

Vec BlowDown(const BlowdownMap& bd, const Vec& x) {
  if (x.size() != bd.source_dim()) {
    throw DimensionError("BlowDown: expected a vector of length " +
                         std::to_string(bd.source_dim()));
  }
  return Vec(x.begin(), x.end() - 1);
}

ConeModel BlowUpConeModel(const BlowdownMap& bd, const ConeModel& target) {
  if (target.space() != bd.target) {
    throw std::invalid_argument("BlowUpConeModel: target space mismatch");
  }
  const Rat kk = Square(target.space(), target.kappa());
  long k = 2;
  while (kk * k * k <= 1) ++k;
  Vec kappa = bd.PullBack(target.kappa());
  kappa.back() = Rat(-1, k);
  ConeModel source{PositiveConeComponent(bd.SourceSpace(), std::move(kappa)),
                   {bd.Exceptional()}};
  for (const Vec& c : target.cuts) source.cuts.push_back(bd.PullBack(c));
  return source;
}

DescentResult DescendInnerPoint(const BlowdownMap& bd, const ConeModel& source,
                                const ConeModel& target, const Vec& x,
                                const SearchConfig& cfg) {
  if (x.size() != bd.source_dim()) throw DimensionError("DescendInnerPoint");
  if (!IsIntegral(x)) throw PreconditionError("x must be integral");
  DescentResult out;
  out.source_verdict = InnerPointTest(source, x, cfg);
  if (out.source_verdict.status != InnerStatus::kInner) {
    throw PreconditionError("x is not certified inner on the source model (" +
                            ToString(out.source_verdict.status) + ")");
  }
  out.y = BlowDown(bd, x);
  out.target_verdict = InnerPointTest(target, out.y, cfg);
  out.contradiction = out.target_verdict.status == InnerStatus::kNotInner &&
                      VerifyVerdict(target, out.y, out.target_verdict);
  return out;
}

Int EllipticPositivityBound(const Rat& m_sq, const Rat& mf) {
  if (sgn(mf) <= 0) {
    throw std::invalid_argument("(M.F) must be positive, got " + FormatRat(mf));
  }
  if (sgn(m_sq) > 0) return 0;
  // floor(-m_sq / (2 mf)) + 1
  const Rat q = -m_sq / (2 * mf);
  Int fl;
  mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return fl + 1;
}

bool FiberClassInClosure(const ConeModel& model, const Vec& f) {
  if (f.size() != model.component.dim()) throw DimensionError("FiberClassInClosure");
  return !IsZero(f) && ClosureMembership(model, f) &&
         sgn(Pairing(model.space(), f, model.kappa())) > 0;
}

}  // namespace kahlercone
