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


// Acceptance run: one PASS/FAIL line per criterion, each with its time limit.
// Exit status is nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "kahlercone/cone.h"
#include "kahlercone/decide.h"
#include "kahlercone/fuzz.h"
#include "kahlercone/quadform.h"
#include "kahlercone/surface.h"
#include "oracle/oracle.h"

namespace kc = kahlercone;

namespace {

using kc::Matrix;
using kc::Rat;
using kc::Vec;

struct Outcome {
  bool ok = true;
  std::string detail;

  void Fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

bool SameSignature(const kc::SignatureTriple& a, std::size_t pos, std::size_t zero,
                   std::size_t neg) {
  return a.pos == pos && a.zero == zero && a.neg == neg;
}

Outcome Signatures() {
  Outcome out;
  for (int m = 1; m <= 19; ++m) {
    const Matrix am = kc::AmGram(m);
    if (!SameSignature(kc::SignatureOfGram(am), 0, 0, m) ||
        !SameSignature(oracle::Signature(am), 0, 0, m)) {
      out.Fail("A_" + std::to_string(m) + " signature");
    }
    const kc::SurfaceModel s = kc::ConstructK3Am(m);
    if (!SameSignature(kc::SignatureOfGram(s.gram), 1, 0, 19) ||
        !SameSignature(oracle::Signature(s.gram), 1, 0, 19)) {
      out.Fail("ambient signature for m=" + std::to_string(m));
    }
    std::vector<Vec> classes;
    for (const kc::CurveClass& c : s.curves) classes.push_back(c.klass);
    const kc::QuadraticSpace space = s.Space();
    const kc::Subspace perp = kc::OrthogonalComplement(space, classes);
    const Matrix restricted = kc::RestrictForm(space, perp).gram();
    const std::size_t rest = 19 - m;
    if (!SameSignature(kc::SignatureOfGram(restricted), 1, 0, rest) ||
        !SameSignature(oracle::Signature(restricted), 1, 0, rest)) {
      out.Fail("perp signature for m=" + std::to_string(m));
    }
  }
  return out;
}

Outcome NonProjective() {
  Outcome out;
  for (int m = 0; m <= 19; ++m) {
    const kc::SurfaceModel s = kc::ConstructK3Am(m);
    const kc::ProjectivityVerdict v = kc::DecideProjectivity(s);
    if (v.status != kc::ProjectivityStatus::kNotProjective || !v.obstruction ||
        v.obstruction->kind != kc::ObstructionKind::kNSNegativeDefinite) {
      out.Fail("decide m=" + std::to_string(m) + " gave " + kc::ToString(v.status));
    }
  }
  std::size_t checked = 0;
  for (int m = 1; m <= 5; ++m) {
    const kc::SurfaceModel s = kc::ConstructK3Am(m);
    const kc::ConeModel cone = kc::MakeConeModel(s);
    std::vector<Vec> cuts;
    for (const kc::CurveClass& c : s.curves) cuts.push_back(c.klass);
    for (const Vec& coeffs : oracle::Box(s.ns_basis.size(), 3)) {
      if (kc::IsZero(coeffs)) continue;
      const Vec x = s.EmbedNs(coeffs);
      try {
        const kc::PerpCertificate cert = kc::PerpObstruction(s, x);
        const bool good = oracle::Pair(s.gram, x, cert.eta) == 0 &&
                          kc::ClosureMembership(cone, cert.eta) &&
                          oracle::IsNegativeWitness(s.gram, s.kappa_ref, cuts, x, cert.eta);
        if (!good) out.Fail("bad eta for m=" + std::to_string(m));
      } catch (const std::exception& e) {
        out.Fail(std::string("no eta: ") + e.what());
      }
      ++checked;
    }
  }
  if (out.ok) out.detail = std::to_string(checked) + " classes certified";
  return out;
}

Outcome Projective() {
  Outcome out;
  // k3: ambient diag(2, -1 x 19), NS = <e0>.
  Vec d(20, Rat(-1));
  d[0] = 2;
  kc::SurfaceModel k3;
  k3.kind = kc::SurfaceKind::kK3;
  k3.gram = Matrix::Diagonal(d);
  k3.kappa_ref = kc::UnitVec(20, 0);
  k3.ns_basis = {kc::UnitVec(20, 0)};
  kc::SearchConfig cfg;
  cfg.coefficient_bound = 1;
  const kc::ProjectivityVerdict v = kc::DecideProjectivity(k3, cfg);
  if (v.status != kc::ProjectivityStatus::kProjective || !v.witness) {
    out.Fail("k3 <h> not projective");
  }
  const kc::SearchReport search = kc::FindInnerIntegralPoint(k3, cfg);
  if (!search.witness) out.Fail("no witness at bound 1");

  kc::SurfaceModel torus;
  torus.kind = kc::SurfaceKind::kTorus;
  torus.gram = Matrix::Diagonal(kc::MakeVec({1, -1, -1, -1}));
  torus.kappa_ref = kc::UnitVec(4, 0);
  torus.ns_basis = {kc::MakeVec({2, 1, 0, 0}), kc::UnitVec(4, 2)};
  const kc::ProjectivityVerdict tv = kc::DecideProjectivity(torus, cfg);
  if (tv.status != kc::ProjectivityStatus::kProjective) out.Fail("torus not projective");

  for (const kc::SurfaceModel* s : {&k3, &torus}) {
    const kc::CrossValidationReport r = kc::CrossValidate(*s, cfg);
    const bool oracle_pos = oracle::Signature(s->NsGram()).pos > 0;
    if (!r.agree || !r.certificates_ok || !oracle_pos) out.Fail("cross-validation");
  }
  return out;
}

Outcome TorusDichotomy() {
  Outcome out;
  const Matrix gram = Matrix::Diagonal(kc::MakeVec({1, -1, -1, -1}));
  const Vec kappa = kc::UnitVec(4, 0);
  const kc::ConeModel model{kc::PositiveConeComponent(kc::QuadraticSpace(gram), kappa), {}};
  kc::SearchConfig cfg;
  cfg.compute_margin = false;
  std::size_t inner = 0, not_inner = 0, skipped = 0;
  for (const Vec& x : oracle::Box(4, 3)) {
    if (kc::IsZero(x)) continue;
    const Rat sq = oracle::Pair(gram, x, x);
    const Rat xk = oracle::Pair(gram, x, kappa);
    const kc::InnerPointVerdict v = kc::InnerPointTest(model, x, cfg);
    if (sgn(sq) > 0 && sgn(xk) > 0) {
      const bool ok = v.status == kc::InnerStatus::kInner && v.positive &&
                      oracle::IsPositiveDecomposition(gram, kappa, {}, x, v.positive->y,
                                                      v.positive->coefficients);
      if (!ok) out.Fail("forward class not certified Inner");
      ++inner;
    } else if (sgn(sq) <= 0) {
      const bool ok = v.status == kc::InnerStatus::kNotInner && v.negative &&
                      oracle::IsNegativeWitness(gram, kappa, {}, x, *v.negative);
      if (!ok) out.Fail("non-positive class not certified NotInner");
      ++not_inner;
    } else {
      // Backward cone: not inner either.
      if (v.status != kc::InnerStatus::kNotInner || !v.negative ||
          !oracle::IsNegativeWitness(gram, kappa, {}, x, *v.negative)) {
        out.Fail("backward class not certified NotInner");
      }
      ++skipped;
    }
  }
  if (inner + not_inner + skipped != 2400) out.Fail("candidate count");
  if (out.ok) {
    out.detail = std::to_string(inner) + " inner, " + std::to_string(not_inner) +
                 " not inner, " + std::to_string(skipped) + " backward";
  }
  return out;
}

Outcome FromSuite(const kc::SuiteSummary& s) {
  Outcome out;
  if (!s.ok()) {
    out.Fail(s.failures.empty() ? "suite failed" : s.failures.front());
  } else {
    out.detail = std::to_string(s.passed) + "/" + std::to_string(s.trials);
  }
  return out;
}

Outcome EllipticBound() {
  Outcome out = FromSuite(kc::RunEllipticSuite(1000, 7));
  kc::Rng rng(77);
  for (int t = 0; t < 1000; ++t) {
    const Rat m_sq = kc::MakeRat(rng.UniformInt(-500, 500), rng.UniformInt(1, 12));
    const Rat mf = kc::MakeRat(rng.UniformInt(1, 300), rng.UniformInt(1, 12));
    const kc::Int n = kc::EllipticPositivityBound(m_sq, mf);
    if (n != oracle::ScanEllipticBound(m_sq, mf, 1000000)) out.Fail("bound vs scan");
    if (sgn(m_sq + 2 * Rat(n) * mf) <= 0) out.Fail("M + nF not positive");
  }
  return out;
}

Outcome OracleAgreement() {
  Outcome out;
  kc::Rng rng(2026);
  kc::SearchConfig cfg;
  cfg.coefficient_bound = 1;
  std::size_t undetermined = 0;
  for (int t = 0; t < 500; ++t) {
    const kc::SurfaceModel model = t % 2 == 0 ? kc::RandomK3Model(rng) : kc::RandomTorusModel(rng);
    const kc::CrossValidationReport r = kc::CrossValidate(model, cfg);
    if (r.decided == kc::ProjectivityStatus::kUndetermined) ++undetermined;
    const bool oracle_projective = oracle::Signature(model.NsGram()).pos > 0;
    const bool decided_projective = r.decided == kc::ProjectivityStatus::kProjective;
    if (!r.agree || !r.certificates_ok || decided_projective != oracle_projective) {
      out.Fail("model " + std::to_string(t) + ": " + r.detail);
    }
  }
  if (undetermined > 0) out.Fail(std::to_string(undetermined) + " undetermined");
  if (out.ok) out.detail = "500/500";
  return out;
}

Outcome Determinism() {
  Outcome out;
  for (const std::string& name : kc::SuiteNames()) {
    const std::string a = kc::RunSuite(name, 60, 314).Format();
    const std::string b = kc::RunSuite(name, 60, 314).Format();
    if (a != b) out.Fail(name + " differs between runs");
  }
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"signature engine", 1, Signatures},
      {"non-projective minimal models", 30, NonProjective},
      {"projective models", 1, Projective},
      {"torus dichotomy", 10, TorusDichotomy},
      {"polyhedral margin harness", 30, [] { return FromSuite(kc::RunPolyhedralSuite(1000, 15)); }},
      {"blow-down pushforward", 10, [] { return FromSuite(kc::RunBlowdownSuite(100, 32)); }},
      {"elliptic bound", 5, EllipticBound},
      {"oracle agreement", 60, OracleAgreement},
      {"determinism", 300, Determinism},
  };
  int failures = 0;
  int index = 0;
  for (const Criterion& c : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.Fail(std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.limit_s) o.Fail("over time limit");
    if (!o.ok) ++failures;
    std::printf("criterion %d %-32s %s  %.3fs (limit %.0fs)  %s\n", index, c.name,
                o.ok ? "PASS" : "FAIL", secs, c.limit_s, o.detail.c_str());
  }
  std::printf("%s: %d/%zu criteria passed\n", failures ? "FAIL" : "PASS",
              static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures ? 1 : 0;
}
