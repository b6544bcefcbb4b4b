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


// Seeded randomized property suites and the model generators they use.
// Every suite is a pure function of (trials, seed): the same arguments give
// byte-identical summaries.

#ifndef KAHLERCONE_FUZZ_H_
#define KAHLERCONE_FUZZ_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "kahlercone/cone.h"
#include "kahlercone/quadform.h"
#include "kahlercone/random.h"
#include "kahlercone/rational.h"
#include "kahlercone/surface.h"

namespace kahlercone {

// A random integral change of basis: u * u_inv = I, both integral.
struct Unimodular {
  Matrix u;
  Matrix u_inv;
};
Unimodular RandomUnimodular(Rng& rng, std::size_t n, int steps);

// The model expressed in the basis given by the columns of t.u: gram
// becomes u^T G u and every class v becomes u_inv v.
SurfaceModel ChangeBasis(const SurfaceModel& model, const Unimodular& t);

// Integral Lorentzian space of dimension n >= 2 in a random frame, with an
// integral forward vector of positive square.
QuadraticSpace RandomLorentzianSpace(Rng& rng, std::size_t n, Vec* forward);

// Random valid models. Roughly a third each have NS of signature with a
// positive part, negative definite NS, and degenerate semidefinite NS.
SurfaceModel RandomK3Model(Rng& rng);
SurfaceModel RandomTorusModel(Rng& rng);

PolyhedralCone RandomPolyhedralCone(Rng& rng, std::size_t dim);

// Rational point on the forward light cone of the standard form
// diag(1,-1,...,-1) in dimension n, via inverse stereographic projection.
Vec RandomIsotropicRay(Rng& rng, std::size_t n);

struct SuiteSummary {
  std::string suite;
  std::uint64_t seed = 0;
  long trials = 0;
  long passed = 0;
  long failed = 0;
  // Extra counters in insertion order.
  std::vector<std::pair<std::string, long>> stats;
  // The first few failure descriptions.
  std::vector<std::string> failures;

  bool ok() const { return failed == 0; }
  void Count(const std::string& key, long delta = 1);
  std::string Format() const;
};

// Ball/margin equivalence on random polyhedral cones in dimensions 2..6.
SuiteSummary RunPolyhedralSuite(long trials, std::uint64_t seed);
// Self-duality of the closed positive cone: sampled isotropic and interior
// rays versus the exact membership test.
SuiteSummary RunSelfDualSuite(long trials, std::uint64_t seed);
// Pushforward of inner points along a blow-down.
SuiteSummary RunBlowdownSuite(long trials, std::uint64_t seed);
// Decision versus NS-positivity oracle on random k3 and torus models.
SuiteSummary RunOracleSuite(long trials, std::uint64_t seed);
// Positivity bound versus brute-force scan, and M + nF on lattice data.
SuiteSummary RunEllipticSuite(long trials, std::uint64_t seed);

// Dispatches by name: lemma15, selfdual, blowdown, oracle, elliptic.
// Throws std::invalid_argument for unknown names or negative trials.
SuiteSummary RunSuite(const std::string& name, long trials, std::uint64_t seed);
const std::vector<std::string>& SuiteNames();

}  // namespace kahlercone

#endif  // KAHLERCONE_FUZZ_H_
