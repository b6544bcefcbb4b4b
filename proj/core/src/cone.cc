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

#include "kahlercone/cone.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "kahlercone/random.h"

namespace kahlercone {

namespace {

constexpr long kMaxDenominator = 1000000;

void RequireDim(const ConeModel& model, const Vec& x, const char* what) {
  if (x.size() != model.component.dim()) {
    throw DimensionError(std::string(what) + ": vector of length " +
                         std::to_string(x.size()) + " in a model of dimension " +
                         std::to_string(model.component.dim()));
  }
}

bool AllCutsNonnegative(const ConeModel& model, const Vec& eta) {
  for (const Vec& c : model.cuts) {
    if (sgn(Pairing(model.space(), eta, c)) < 0) return false;
  }
  return true;
}

// Negated Gram matrix of the cuts, H_ij = -(c_i.c_j).
Matrix NegatedCutGram(const ConeModel& model) {
  const std::size_t m = model.cuts.size();
  Matrix h(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) {
      h(i, j) = -Pairing(model.space(), model.cuts[i], model.cuts[j]);
      h(j, i) = h(i, j);
    }
  }
  return h;
}

bool IsPositiveDefinite(const Matrix& h) {
  if (h.rows() == 0) return true;
  return SignatureOfGram(h).pos == h.rows();
}

Vec Residual(const ConeModel& model, const Vec& x, const std::vector<Rat>& a) {
  Vec y = x;
  for (std::size_t i = 0; i < a.size(); ++i) {
    y = AddScaled(y, -a[i], model.cuts[i]);
  }
  return y;
}

// Exact maximiser of q(a) = (x - sum a_i c_i)^2 over a >= 0 when the cut
// Gram matrix is negative definite, i.e. the minimiser of
// a^T H a + 2 d^T a with H = -(c_i.c_j) positive definite, d_i = (c_i.x).
// Lawson-Hanson active-set iteration in exact arithmetic.
struct QpSolution {
  std::vector<Rat> a;
  Vec y;
};

std::optional<QpSolution> MaximizeResidualSquare(const ConeModel& model,
                                                 const Matrix& h,
                                                 const Vec& x) {
  const std::size_t m = model.cuts.size();
  Vec d(m);
  for (std::size_t i = 0; i < m; ++i) {
    d[i] = Pairing(model.space(), model.cuts[i], x);
  }
  std::vector<Rat> a(m, Rat(0));
  std::vector<bool> passive(m, false);

  auto solve_passive = [&](std::vector<Rat>* z) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < m; ++i) {
      if (passive[i]) idx.push_back(i);
    }
    Matrix sub(idx.size(), idx.size());
    Vec rhs(idx.size());
    for (std::size_t r = 0; r < idx.size(); ++r) {
      for (std::size_t c = 0; c < idx.size(); ++c) sub(r, c) = h(idx[r], idx[c]);
      rhs[r] = -d[idx[r]];
    }
    Vec sol;
    if (!SolveLinear(sub, rhs, &sol)) return false;
    z->assign(m, Rat(0));
    for (std::size_t r = 0; r < idx.size(); ++r) (*z)[idx[r]] = sol[r];
    return true;
  };

  const std::size_t max_outer = 8 * m + 32;
  for (std::size_t outer = 0; outer < max_outer; ++outer) {
    // w = -(H a + d); a coordinate with w_j > 0 can still decrease f.
    std::optional<std::size_t> enter;
    Rat best_w = 0;
    for (std::size_t j = 0; j < m; ++j) {
      if (passive[j]) continue;
      Rat w = -d[j];
      for (std::size_t k = 0; k < m; ++k) {
        if (sgn(a[k]) != 0) w -= h(j, k) * a[k];
      }
      if (w > best_w) {
        best_w = w;
        enter = j;
      }
    }
    if (!enter) {
      return QpSolution{a, Residual(model, x, a)};
    }
    passive[*enter] = true;
    for (std::size_t inner = 0; inner <= m + 1; ++inner) {
      std::vector<Rat> z;
      if (!solve_passive(&z)) return std::nullopt;
      bool all_positive = true;
      for (std::size_t i = 0; i < m; ++i) {
        if (passive[i] && sgn(z[i]) <= 0) all_positive = false;
      }
      if (all_positive) {
        a = std::move(z);
        break;
      }
      std::optional<Rat> alpha;
      for (std::size_t i = 0; i < m; ++i) {
        if (!passive[i] || sgn(z[i]) > 0) continue;
        const Rat step = a[i] / (a[i] - z[i]);
        if (!alpha || step < *alpha) alpha = step;
      }
      for (std::size_t i = 0; i < m; ++i) {
        if (passive[i]) a[i] += *alpha * (z[i] - a[i]);
        if (passive[i] && sgn(a[i]) <= 0) {
          a[i] = 0;
          passive[i] = false;
        }
      }
    }
  }
  return std::nullopt;
}

std::vector<double> ToDouble(const Vec& v) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].get_d();
  return out;
}

double DotD(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Vec RationalizeVec(const std::vector<double>& v) {
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = RationalizeDouble(v[i], kMaxDenominator);
  }
  return out;
}

// Projected gradient ascent on q(x - C a) over a >= 0; the rounded result
// is returned only if it certifies exactly.
std::optional<PositiveCertificate> NumericPositiveCandidate(
    const ConeModel& model, const Vec& x, int iterations) {
  const std::size_t m = model.cuts.size();
  const std::size_t n = model.component.dim();
  if (m == 0 || iterations <= 0) return std::nullopt;
  std::vector<std::vector<double>> gc(m);
  for (std::size_t i = 0; i < m; ++i) {
    gc[i] = ToDouble(Lower(model.space(), model.cuts[i]));
  }
  std::vector<std::vector<double>> cd(m);
  for (std::size_t i = 0; i < m; ++i) cd[i] = ToDouble(model.cuts[i]);
  const std::vector<double> xd = ToDouble(x);
  double scale = 1;
  for (double e : xd) scale = std::max(scale, std::abs(e));

  std::vector<double> a(m, 0.0);
  auto residual = [&]() {
    std::vector<double> y = xd;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t k = 0; k < n; ++k) y[k] -= a[i] * cd[i][k];
    }
    return y;
  };
  std::optional<PositiveCertificate> found;
  auto try_exact = [&]() {
    std::vector<Rat> ar(m);
    for (std::size_t i = 0; i < m; ++i) {
      ar[i] = a[i] <= 0 ? Rat(0) : RationalizeDouble(a[i], kMaxDenominator);
    }
    PositiveCertificate cert{Residual(model, x, ar), ar};
    if (VerifyPositiveCertificate(model, x, cert)) found = std::move(cert);
  };
  for (int it = 0; it < iterations && !found; ++it) {
    const std::vector<double> y = residual();
    // d q / d a_i = -2 (y.c_i)
    const double step = 0.5 * scale / (1.0 + it);
    double norm = 0;
    std::vector<double> grad(m);
    for (std::size_t i = 0; i < m; ++i) {
      grad[i] = -DotD(y, gc[i]);
      norm += grad[i] * grad[i];
    }
    if (norm == 0) {
      try_exact();
      break;
    }
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < m; ++i) {
      a[i] = std::max(0.0, a[i] + step * grad[i] / norm);
    }
    if (it % 8 == 7 || it + 1 == iterations) try_exact();
  }
  return found;
}

// Restores (eta.kappa) = 1 and pulls eta toward kappa/kappa^2 until its
// square is nonnegative.
void RepairSlice(std::vector<double>& eta, const std::vector<double>& gk,
                 const std::vector<double>& khat,
                 const std::vector<std::vector<double>>& gram) {
  auto square = [&](const std::vector<double>& v) {
    double s = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      for (std::size_t j = 0; j < v.size(); ++j) s += v[i] * gram[i][j] * v[j];
    }
    return s;
  };
  const double slice = DotD(eta, gk);
  if (slice > 1e-12) {
    for (double& e : eta) e /= slice;
  } else {
    eta = khat;
    return;
  }
  if (square(eta) >= 0) return;
  double lo = 0, hi = 1;
  for (int k = 0; k < 60; ++k) {
    const double mid = 0.5 * (lo + hi);
    std::vector<double> t(eta.size());
    for (std::size_t i = 0; i < eta.size(); ++i) {
      t[i] = (1 - mid) * eta[i] + mid * khat[i];
    }
    if (square(t) >= 0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  for (std::size_t i = 0; i < eta.size(); ++i) {
    eta[i] = (1 - hi) * eta[i] + hi * khat[i];
  }
}

std::optional<Vec> ExactNegativeFromDouble(const ConeModel& model,
                                           const Vec& x,
                                           const std::vector<double>& eta) {
  Vec candidate = RationalizeVec(eta);
  if (VerifyNegativeCertificate(model, x, candidate)) return candidate;
  // Nudge into the interior along kappa; the objective has slack when the
  // float minimum is strictly negative.
  for (long denom : {1000000L, 10000L, 100L}) {
    Vec nudged = AddScaled(candidate, Rat(1, denom), model.kappa());
    if (VerifyNegativeCertificate(model, x, nudged)) return nudged;
  }
  return std::nullopt;
}

// Lexicographic k-subsets of {0..m-1}, in increasing k.
class SubsetWalker {
 public:
  SubsetWalker(std::size_t m, std::size_t cap) : m_(m), cap_(std::min(cap, m)) {}

  // Fills *out with the next subset of size 1..cap; false when exhausted.
  bool Next(std::vector<std::size_t>* out) {
    if (k_ == 0) {
      k_ = 1;
      Reset();
    } else if (!Advance()) {
      ++k_;
      if (k_ > cap_) return false;
      Reset();
    }
    if (k_ > cap_) return false;
    *out = current_;
    return true;
  }

 private:
  void Reset() {
    current_.resize(k_);
    for (std::size_t i = 0; i < k_; ++i) current_[i] = i;
  }
  bool Advance() {
    for (std::size_t i = k_; i-- > 0;) {
      if (current_[i] < m_ - k_ + i) {
        ++current_[i];
        for (std::size_t j = i + 1; j < k_; ++j) current_[j] = current_[j - 1] + 1;
        return true;
      }
    }
    return false;
  }

  std::size_t m_;
  std::size_t cap_;
  std::size_t k_ = 0;
  std::vector<std::size_t> current_;
};

// Certificates that need no search: kappa itself, x itself, and the
// empty-cut constructions. Returns the certificate and its method label.
std::optional<std::pair<Vec, std::string>> DirectNegative(const ConeModel& model,
                                                          const Vec& x) {
  const QuadraticSpace& space = model.space();
  if (sgn(Pairing(space, x, model.kappa())) <= 0) {
    return std::make_pair(model.kappa(), std::string("kappa"));
  }
  const Rat x_sq = Square(space, x);
  if (sgn(x_sq) == 0 && ClosureMembership(model, x) && !IsZero(x)) {
    return std::make_pair(x, std::string("isotropic"));
  }
  return std::nullopt;
}

InnerPointVerdict MakeInner(const ConeModel& model, PositiveCertificate cert,
                            std::string method, const SearchConfig& cfg) {
  InnerPointVerdict v;
  v.status = InnerStatus::kInner;
  if (cfg.compute_margin) {
    v.margin = CertifyLorentzMargin(model.space(), cert.y);
  }
  v.positive = std::move(cert);
  v.method = std::move(method);
  return v;
}

InnerPointVerdict MakeNotInner(Vec eta, std::string method) {
  InnerPointVerdict v;
  v.status = InnerStatus::kNotInner;
  v.negative = std::move(eta);
  v.method = std::move(method);
  return v;
}

}  // namespace

PositiveConeComponent::PositiveConeComponent(QuadraticSpace space, Vec kappa_ref)
    : space_(std::move(space)), kappa_ref_(std::move(kappa_ref)) {
  if (kappa_ref_.size() != space_.dim()) {
    throw DimensionError("kappa_ref length does not match the space");
  }
  const SignatureTriple s = Signature(space_);
  if (s.pos != 1 || s.zero != 0) {
    throw std::invalid_argument("positive cone needs signature (1,0,n-1), got " +
                                FormatSignature(s));
  }
  if (sgn(Square(space_, kappa_ref_)) <= 0) {
    throw std::invalid_argument("kappa_ref must have positive square");
  }
}

std::string ToString(InnerStatus status) {
  switch (status) {
    case InnerStatus::kInner:
      return "Inner";
    case InnerStatus::kNotInner:
      return "NotInner";
    case InnerStatus::kUndetermined:
      return "Undetermined";
  }
  return "Undetermined";
}

bool InPositiveComponent(const PositiveConeComponent& pc, const Vec& x) {
  if (x.size() != pc.dim()) throw DimensionError("InPositiveComponent");
  return sgn(Square(pc.space(), x)) > 0 &&
         sgn(Pairing(pc.space(), x, pc.kappa_ref())) > 0;
}

bool InClosurePositive(const PositiveConeComponent& pc, const Vec& x) {
  if (x.size() != pc.dim()) throw DimensionError("InClosurePositive");
  return sgn(Square(pc.space(), x)) >= 0 &&
         sgn(Pairing(pc.space(), x, pc.kappa_ref())) >= 0;
}

bool KahlerMembership(const ConeModel& model, const Vec& x) {
  RequireDim(model, x, "KahlerMembership");
  if (!InPositiveComponent(model.component, x)) return false;
  for (const Vec& c : model.cuts) {
    if (sgn(Pairing(model.space(), x, c)) <= 0) return false;
  }
  return true;
}

bool ClosureMembership(const ConeModel& model, const Vec& x) {
  RequireDim(model, x, "ClosureMembership");
  return InClosurePositive(model.component, x) && AllCutsNonnegative(model, x);
}

bool VerifyPositiveCertificate(const ConeModel& model, const Vec& x,
                               const PositiveCertificate& cert) {
  if (x.size() != model.component.dim() || cert.y.size() != x.size() ||
      cert.coefficients.size() != model.cuts.size()) {
    return false;
  }
  Vec sum = cert.y;
  for (std::size_t i = 0; i < model.cuts.size(); ++i) {
    if (sgn(cert.coefficients[i]) < 0) return false;
    sum = AddScaled(sum, cert.coefficients[i], model.cuts[i]);
  }
  return sum == x && InPositiveComponent(model.component, cert.y);
}

bool VerifyNegativeCertificate(const ConeModel& model, const Vec& x,
                               const Vec& eta) {
  if (x.size() != model.component.dim() || eta.size() != x.size()) return false;
  return !IsZero(eta) && ClosureMembership(model, eta) &&
         sgn(Pairing(model.space(), x, eta)) <= 0;
}

bool VerifyMargin(const QuadraticSpace& space, const Vec& y,
                  const MarginCertificate& cert) {
  if (y.size() != space.dim() || sgn(cert.margin_sq) <= 0 ||
      sgn(cert.multiplier) < 0 || sgn(Square(space, y)) <= 0) {
    return false;
  }
  const std::size_t n = space.dim();
  const Vec gy = Lower(space, y);
  const Rat inv = 1 / cert.margin_sq;
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      m(i, j) = inv * gy[i] * gy[j] - cert.multiplier * space.gram()(i, j);
      if (i == j) m(i, j) -= 1;
    }
  }
  return IsPositiveSemidefinite(m);
}

bool VerifyVerdict(const ConeModel& model, const Vec& x,
                   const InnerPointVerdict& verdict) {
  switch (verdict.status) {
    case InnerStatus::kInner:
      if (!verdict.positive ||
          !VerifyPositiveCertificate(model, x, *verdict.positive)) {
        return false;
      }
      return !verdict.margin ||
             VerifyMargin(model.space(), verdict.positive->y, *verdict.margin);
    case InnerStatus::kNotInner:
      return verdict.negative &&
             VerifyNegativeCertificate(model, x, *verdict.negative);
    case InnerStatus::kUndetermined:
      return !verdict.positive && !verdict.negative;
  }
  return false;
}

MarginCertificate CertifyLorentzMargin(const QuadraticSpace& space,
                                       const Vec& y) {
  if (y.size() != space.dim()) throw DimensionError("CertifyLorentzMargin");
  if (sgn(Square(space, y)) <= 0) {
    throw std::invalid_argument("CertifyLorentzMargin: y must have positive square");
  }
  const std::size_t n = space.dim();
  // Work with the scale-free representative y / max|y_i| so that the
  // dyadic search lands on the same numbers for every positive multiple.
  const Rat s = MaxAbs(y);
  const Vec yh = Scale(1 / s, y);
  const Vec g = Lower(space, yh);
  const Matrix& gram = space.gram();

  // lambda is admissible iff lambda * (-G) - I is PSD on yh^perp.
  const Subspace perp = OrthogonalComplement(space, {yh});
  const std::size_t k = perp.dim();
  Matrix eucl(k, k), form(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    const Vec gb = Lower(space, perp.basis[i]);
    for (std::size_t j = 0; j < k; ++j) {
      eucl(i, j) = Dot(perp.basis[i], perp.basis[j]);
      form(i, j) = -Dot(gb, perp.basis[j]);
    }
  }
  auto lambda_ok = [&](const Rat& lambda) {
    Matrix m(k, k);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) m(i, j) = lambda * form(i, j) - eucl(i, j);
    }
    return IsPositiveSemidefinite(m);
  };
  auto c_ok = [&](const Rat& c, const Rat& lambda) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) = c * g[i] * g[j] - lambda * gram(i, j);
        if (i == j) m(i, j) -= 1;
      }
    }
    return IsPositiveSemidefinite(m);
  };
  constexpr int kBisect = 20;

  Rat lam_hi = 1;
  Rat lam_lo = 0;
  if (k > 0) {
    while (!lambda_ok(lam_hi)) {
      lam_lo = lam_hi;
      lam_hi *= 2;
    }
    for (int it = 0; it < kBisect; ++it) {
      const Rat mid = (lam_lo + lam_hi) / 2;
      if (lambda_ok(mid)) {
        lam_hi = mid;
      } else {
        lam_lo = mid;
      }
    }
  }

  std::optional<Rat> best_c;
  Rat best_lambda = lam_hi;
  for (const Rat& factor : {Rat(1), Rat(5, 4), Rat(3, 2), Rat(2), Rat(4)}) {
    const Rat lambda = lam_hi * factor;
    Rat hi = 1, lo = 0;
    if (c_ok(hi, lambda)) {
      int halvings = 0;
      while (halvings < 60 && c_ok(hi / 2, lambda)) {
        hi /= 2;
        ++halvings;
      }
      lo = hi / 2;
    } else {
      int doublings = 0;
      while (doublings < 48 && !c_ok(hi, lambda)) {
        hi *= 2;
        ++doublings;
      }
      if (!c_ok(hi, lambda)) continue;
      lo = hi / 2;
    }
    for (int it = 0; it < kBisect; ++it) {
      const Rat mid = (lo + hi) / 2;
      if (c_ok(mid, lambda)) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    if (!best_c || hi < *best_c) {
      best_c = hi;
      best_lambda = lambda;
    }
  }
  if (!best_c) {
    // Unreachable for a form of signature (1, n-1): some lambda above the
    // threshold always admits a finite c.
    throw std::logic_error("CertifyLorentzMargin: no admissible multiplier");
  }
  return MarginCertificate{s * s / *best_c, best_lambda};
}

std::optional<Vec> PerpConstruction(const ConeModel& model, const Vec& x,
                                    const std::vector<std::size_t>& subset) {
  RequireDim(model, x, "PerpConstruction");
  std::vector<Vec> vs{x};
  for (std::size_t i : subset) vs.push_back(model.cuts.at(i));
  const Subspace w = OrthogonalComplement(model.space(), vs);
  if (w.dim() == 0) return std::nullopt;
  const std::optional<Vec> coords = FindPositiveVector(RestrictForm(model.space(), w));
  if (!coords) return std::nullopt;
  Vec eta = PrimitiveIntegral(w.Embed(*coords));
  if (sgn(Pairing(model.space(), eta, model.kappa())) < 0) eta = Scale(Rat(-1), eta);
  if (!AllCutsNonnegative(model, eta)) return std::nullopt;
  return eta;
}

std::optional<Vec> NumericNegativeCandidate(const ConeModel& model,
                                            const Vec& x, int iterations,
                                            std::uint64_t seed) {
  RequireDim(model, x, "NumericNegativeCandidate");
  if (iterations <= 0) return std::nullopt;
  const std::size_t n = model.component.dim();
  std::vector<std::vector<double>> gram(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) gram[i][j] = model.space().gram()(i, j).get_d();
  }
  const std::vector<double> gx = ToDouble(Lower(model.space(), x));
  const std::vector<double> gk = ToDouble(Lower(model.space(), model.kappa()));
  const double kk = Square(model.space(), model.kappa()).get_d();
  std::vector<double> khat = ToDouble(model.kappa());
  for (double& e : khat) e /= kk;
  std::vector<std::vector<double>> gc;
  for (const Vec& c : model.cuts) gc.push_back(ToDouble(Lower(model.space(), c)));

  // Objective gradient projected onto the slice's tangent space.
  std::vector<double> dir = gx;
  const double gkgk = DotD(gk, gk);
  const double along = DotD(gx, gk) / gkgk;
  for (std::size_t i = 0; i < n; ++i) dir[i] -= along * gk[i];
  const double dir_norm = std::sqrt(DotD(dir, dir));
  if (dir_norm == 0) return std::nullopt;

  Rng rng(seed);
  std::vector<double> eta = khat;
  for (double& e : eta) e += 1e-3 * (rng.UniformReal() - 0.5);
  double scale = std::sqrt(DotD(khat, khat));
  for (int it = 0; it < iterations; ++it) {
    const double step = scale / (1.0 + 0.25 * it);
    for (std::size_t i = 0; i < n; ++i) eta[i] -= step * dir[i] / dir_norm;
    for (int round = 0; round < 4; ++round) {
      for (const auto& c : gc) {
        const double s = DotD(c, eta);
        if (s < 0) {
          const double cc = DotD(c, c);
          for (std::size_t i = 0; i < n; ++i) eta[i] -= s / cc * c[i];
        }
      }
      RepairSlice(eta, gk, khat, gram);
    }
    if (DotD(gx, eta) <= 0 && (it % 4 == 3 || it + 1 == iterations)) {
      if (auto exact = ExactNegativeFromDouble(model, x, eta)) return exact;
    }
  }
  return ExactNegativeFromDouble(model, x, eta);
}

InnerPointVerdict InnerPointTest(const ConeModel& model, const Vec& x,
                                 const SearchConfig& cfg) {
  RequireDim(model, x, "InnerPointTest");
  const QuadraticSpace& space = model.space();

  if (model.cuts.empty()) {
    // Self-dual case: Inner iff x lies in the open forward cone.
    if (InPositiveComponent(model.component, x)) {
      return MakeInner(model, PositiveCertificate{x, {}}, "forward-cone", cfg);
    }
    if (auto direct = DirectNegative(model, x)) {
      return MakeNotInner(std::move(direct->first), direct->second);
    }
    // (x.kappa) > 0 and x^2 < 0: x^perp has signature (1, n-2).
    if (auto eta = PerpConstruction(model, x, {})) {
      return MakeNotInner(std::move(*eta), "perp-subset");
    }
    throw std::logic_error("InnerPointTest: empty-cut case fell through");
  }

  // Positive side.
  if (InPositiveComponent(model.component, x)) {
    return MakeInner(model,
                     PositiveCertificate{x, std::vector<Rat>(model.cuts.size(), Rat(0))},
                     "forward-cone", cfg);
  }
  const Matrix h = NegatedCutGram(model);
  std::optional<QpSolution> qp;
  if (IsPositiveDefinite(h)) {
    qp = MaximizeResidualSquare(model, h, x);
    if (qp && InPositiveComponent(model.component, qp->y)) {
      return MakeInner(model, PositiveCertificate{qp->y, qp->a}, "qp", cfg);
    }
  } else if (auto cert = NumericPositiveCandidate(model, x, cfg.numeric_budget)) {
    return MakeInner(model, std::move(*cert), "numeric", cfg);
  }

  // Negative side.
  if (auto direct = DirectNegative(model, x)) {
    return MakeNotInner(std::move(direct->first), direct->second);
  }
  std::size_t tried = 0;
  std::vector<std::size_t> all(model.cuts.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  if (auto eta = PerpConstruction(model, x, all)) {
    return MakeNotInner(std::move(*eta), "perp-subset");
  }
  ++tried;
  if (auto eta = PerpConstruction(model, x, {})) {
    return MakeNotInner(std::move(*eta), "perp-subset");
  }
  ++tried;
  if (qp) {
    // The maximiser y* satisfies (y*.c_i) >= 0 with equality on the active
    // cuts, so y* (if isotropic and forward) or a positive vector of
    // y*^perp cut by the active constraints is a natural candidate; then
    // (x.eta) = (y*.eta) + sum a_i (c_i.eta) = 0.
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < qp->a.size(); ++i) {
      if (sgn(qp->a[i]) > 0) active.push_back(i);
    }
    const Rat y_sq = Square(space, qp->y);
    if (sgn(y_sq) == 0 && !IsZero(qp->y)) {
      Vec eta = qp->y;
      if (sgn(Pairing(space, eta, model.kappa())) < 0) eta = Scale(Rat(-1), eta);
      if (VerifyNegativeCertificate(model, x, eta)) {
        return MakeNotInner(std::move(eta), "qp-isotropic");
      }
    }
    std::vector<Vec> vs{qp->y};
    for (std::size_t i : active) vs.push_back(model.cuts[i]);
    const Subspace w = OrthogonalComplement(space, vs);
    if (w.dim() > 0) {
      if (auto coords = FindPositiveVector(RestrictForm(space, w))) {
        Vec eta = PrimitiveIntegral(w.Embed(*coords));
        if (sgn(Pairing(space, eta, model.kappa())) < 0) eta = Scale(Rat(-1), eta);
        if (VerifyNegativeCertificate(model, x, eta)) {
          return MakeNotInner(std::move(eta), "qp-perp");
        }
      }
    }
  }
  SubsetWalker walker(model.cuts.size(), cfg.subset_cap);
  std::vector<std::size_t> subset;
  while (tried < cfg.max_subsets && walker.Next(&subset)) {
    if (subset.size() == model.cuts.size()) continue;
    ++tried;
    if (auto eta = PerpConstruction(model, x, subset)) {
      return MakeNotInner(std::move(*eta), "perp-subset");
    }
  }
  if (auto eta = NumericNegativeCandidate(model, x, cfg.numeric_budget, cfg.seed)) {
    return MakeNotInner(std::move(*eta), "numeric");
  }
  InnerPointVerdict undetermined;
  undetermined.method = "budget-exhausted";
  return undetermined;
}

std::optional<bool> DualMembership(const ConeModel& model, const Vec& x,
                                   const SearchConfig& cfg) {
  RequireDim(model, x, "DualMembership");
  if (model.cuts.empty()) return InClosurePositive(model.component, x);
  if (InClosurePositive(model.component, x)) return true;
  const QuadraticSpace& space = model.space();
  const Matrix h = NegatedCutGram(model);
  if (IsPositiveDefinite(h)) {
    const std::optional<QpSolution> qp = MaximizeResidualSquare(model, h, x);
    if (qp) {
      const Rat y_sq = Square(space, qp->y);
      if (sgn(y_sq) < 0) return false;
      if (sgn(Pairing(space, qp->y, model.kappa())) >= 0) return true;
      // {a >= 0 : (x - Ca)^2 >= 0} is convex and y* is backward, so a
      // forward residual exists only through y = 0, i.e. x in cone{c_i}.
      Vec a;
      if (SolveLinear(Matrix::FromColumns(model.cuts), x, &a)) {
        return std::all_of(a.begin(), a.end(),
                           [](const Rat& v) { return sgn(v) >= 0; });
      }
      return false;
    }
  }
  if (sgn(Pairing(space, x, model.kappa())) < 0) return false;
  const InnerPointVerdict v = InnerPointTest(model, x, cfg);
  if (v.status == InnerStatus::kInner) return true;
  if (auto eta = NumericNegativeCandidate(model, x, cfg.numeric_budget, cfg.seed)) {
    if (sgn(Pairing(space, x, *eta)) < 0) return false;
  }
  return std::nullopt;
}

std::optional<MarginCertificate> UniformMargin(const ConeModel& model,
                                               const Vec& x,
                                               const SearchConfig& cfg) {
  SearchConfig with_margin = cfg;
  with_margin.compute_margin = true;
  const InnerPointVerdict v = InnerPointTest(model, x, with_margin);
  if (v.status != InnerStatus::kInner) return std::nullopt;
  return v.margin;
}

PolyhedralReport PolyhedralInnerEquivalence(const PolyhedralCone& cone,
                                            const Vec& x, int trials,
                                            std::uint64_t seed) {
  const QuadraticSpace& space = cone.space;
  if (cone.generators.empty()) {
    throw std::invalid_argument("polyhedral cone needs at least one generator");
  }
  for (const Vec& g : cone.generators) {
    if (g.size() != space.dim()) throw DimensionError("generator length");
    if (IsZero(g)) throw std::invalid_argument("zero generator");
  }
  if (x.size() != space.dim()) throw DimensionError("point length");

  PolyhedralReport report;
  report.p1 = true;
  std::optional<Rat> margin;
  std::optional<std::size_t> worst;
  for (std::size_t j = 0; j < cone.generators.size(); ++j) {
    const Vec& g = cone.generators[j];
    const Rat xg = Pairing(space, x, g);
    if (sgn(xg) <= 0) report.p1 = false;
    Rat signed_sq = xg * xg / EuclideanNormSq(g);
    if (sgn(xg) < 0) signed_sq = -signed_sq;
    if (!margin || signed_sq < *margin) {
      margin = signed_sq;
      worst = j;
    }
  }
  report.signed_margin_sq = *margin;
  report.p3 = sgn(*margin) > 0;

  Rng rng(seed);
  const std::size_t n = space.dim();
  if (report.p1) {
    // eps^2 = 1/4 min_j (x.g_j)^2 / |G g_j|^2 guarantees
    // (x'.g_j) >= (x.g_j)/2 on the ball.
    std::optional<Rat> eps_sq;
    for (const Vec& g : cone.generators) {
      const Rat xg = Pairing(space, x, g);
      const Rat e = xg * xg / (4 * EuclideanNormSq(Lower(space, g)));
      if (!eps_sq || e < *eps_sq) eps_sq = e;
    }
    for (int t = 0; t < trials; ++t) {
      Vec d(n);
      do {
        for (std::size_t i = 0; i < n; ++i) d[i] = rng.UniformInt(-1000, 1000);
      } while (IsZero(d));
      const Rat d_sq = EuclideanNormSq(d);
      Rat s = RationalizeDouble(std::sqrt(Rat(*eps_sq / d_sq).get_d()), kMaxDenominator);
      while (sgn(s) > 0 && s * s * d_sq > *eps_sq) s = s * 999 / 1000;
      // Random radius within the ball.
      s *= MakeRat(rng.UniformInt(1, 1000), 1000);
      const Vec xp = AddScaled(x, s, d);
      ++report.samples;
      for (const Vec& g : cone.generators) {
        if (sgn(Pairing(space, xp, g)) <= 0) {
          ++report.sample_failures;
          break;
        }
      }
    }
    report.p2 = report.sample_failures == 0;
  } else {
    // x' = x - t G g_j leaves the dual for every t > 0 when (x.g_j) <= 0;
    // t is chosen so |x' - x| <= 1/1000.
    const Vec& g = cone.generators[*worst];
    const Vec dir = Lower(space, g);
    const Rat dir_sq = EuclideanNormSq(dir);
    Rat t(1, 1000);
    while (t * t * dir_sq > Rat(1, 1000000)) t /= 2;
    const Vec xp = AddScaled(x, -t, dir);
    if (sgn(Pairing(space, xp, g)) <= 0) report.exit_witness = xp;
    report.p2 = !report.exit_witness.has_value();
  }
  return report;
}

}  // namespace kahlercone
