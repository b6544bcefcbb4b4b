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


// kahlercone: command-line front end.
//
// Exit codes: 0 success / Projective / Inner, 1 NotProjective / NotInner /
// failed suite, 2 parse, validation or usage errors, 3 Undetermined.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kahlercone/cone.h"
#include "kahlercone/decide.h"
#include "kahlercone/fuzz.h"
#include "kahlercone/model_io.h"
#include "kahlercone/quadform.h"
#include "kahlercone/rational.h"
#include "kahlercone/surface.h"

namespace kc = kahlercone;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitInput = 2;
constexpr int kExitUndetermined = 3;

// Input problems that map to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string path;
  long bound = 5;
  std::uint64_t seed = 0;
  long trials = 100;
  std::string out;
  std::string classes;
  std::string point;
  std::string kind = "k3-am";
  int m = 0;
  std::string suite;
  std::string m_sq;
  std::string mf;
  bool timing = false;
};

std::vector<std::string> SplitCommas(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    parts.push_back(b == std::string::npos ? "" : item.substr(b, e - b + 1));
  }
  return parts;
}

kc::Vec ParsePoint(const std::string& text, std::size_t dim) {
  kc::Vec v;
  for (const std::string& part : SplitCommas(text)) v.push_back(kc::ParseRat(part));
  if (v.size() != dim) {
    throw UsageError("--point has " + std::to_string(v.size()) +
                     " coordinates, model dimension is " + std::to_string(dim));
  }
  return v;
}

kc::SurfaceModel LoadValidModel(const std::string& path) {
  kc::SurfaceModel model = kc::ParseModel(kc::ReadTextFile(path));
  std::vector<std::string> violations = kc::ValidateModel(model);
  if (!violations.empty()) throw kc::InvalidModelError(std::move(violations));
  return model;
}

void Emit(const Options& opt, const std::string& text) {
  if (opt.out.empty()) {
    std::cout << text;
  } else {
    kc::WriteTextFile(opt.out, text);
  }
}

std::string Dump(const kc::Json& j) { return kc::FormatJson(j); }

kc::SearchConfig ConfigFrom(const Options& opt) {
  if (opt.bound < 1) throw UsageError("--bound must be >= 1");
  kc::SearchConfig cfg;
  cfg.coefficient_bound = opt.bound;
  cfg.seed = opt.seed;
  return cfg;
}

kc::Json ConfigToJson(const kc::SearchConfig& cfg) {
  kc::Json j;
  j["bound"] = cfg.coefficient_bound;
  j["subset_cap"] = cfg.subset_cap;
  j["max_subsets"] = cfg.max_subsets;
  j["numeric_budget"] = cfg.numeric_budget;
  return j;
}

int InnerExit(kc::InnerStatus s) {
  switch (s) {
    case kc::InnerStatus::kInner:
      return kExitOk;
    case kc::InnerStatus::kNotInner:
      return kExitNegative;
    case kc::InnerStatus::kUndetermined:
      return kExitUndetermined;
  }
  return kExitUndetermined;
}

int CmdSignature(const Options& opt) {
  const kc::SurfaceModel model = LoadValidModel(opt.path);
  std::cout << kc::FormatSignature(kc::Signature(model.Space())) << "\n";
  return kExitOk;
}

int CmdPerp(const Options& opt) {
  const kc::SurfaceModel model = LoadValidModel(opt.path);
  const kc::QuadraticSpace space = model.Space();
  std::vector<kc::Vec> classes;
  for (const std::string& name : SplitCommas(opt.classes)) {
    if (name.empty()) continue;
    const kc::CurveClass* c = model.FindCurve(name);
    if (c == nullptr) throw UsageError("unknown class name: " + name);
    classes.push_back(c->klass);
  }
  const kc::Subspace w = kc::OrthogonalComplement(space, classes);
  std::cout << "dim: " << w.dim() << "\n";
  for (const kc::Vec& b : w.basis) std::cout << "basis: " << kc::FormatVec(b) << "\n";
  const kc::SignatureTriple sig =
      w.dim() == 0 ? kc::SignatureTriple{} : kc::Signature(kc::RestrictForm(space, w));
  std::cout << "signature: " << kc::FormatSignature(sig) << "\n";
  return kExitOk;
}

int CmdKahlerTest(const Options& opt) {
  const kc::SurfaceModel model = LoadValidModel(opt.path);
  const kc::ConeModel cone = kc::MakeConeModel(model);
  const kc::Vec x = ParsePoint(opt.point, model.dim());
  const bool kahler = kc::KahlerMembership(cone, x);
  std::cout << "kahler: " << (kahler ? "true" : "false") << "\n"
            << "closure: " << (kc::ClosureMembership(cone, x) ? "true" : "false") << "\n";
  return kahler ? kExitOk : kExitNegative;
}

int CmdDualInnerTest(const Options& opt) {
  const kc::SurfaceModel model = LoadValidModel(opt.path);
  const kc::ConeModel cone = kc::MakeConeModel(model);
  const kc::Vec x = ParsePoint(opt.point, model.dim());
  const kc::SearchConfig cfg = ConfigFrom(opt);
  const kc::InnerPointVerdict v = kc::InnerPointTest(cone, x, cfg);
  kc::Json report = kc::ReportHeader("dual-inner-test", opt.seed);
  report["input"] = kc::ModelToJson(model);
  report["point"] = kc::VecToJson(x);
  report["config"] = ConfigToJson(cfg);
  report["verdict"] = kc::InnerVerdictToJson(v);
  Emit(opt, Dump(report));
  if (!opt.out.empty()) std::cout << "status: " << kc::ToString(v.status) << "\n";
  return InnerExit(v.status);
}

int CmdDecide(const Options& opt) {
  const auto start = std::chrono::steady_clock::now();
  const kc::SurfaceModel model = LoadValidModel(opt.path);
  const kc::SearchConfig cfg = ConfigFrom(opt);
  const kc::ProjectivityVerdict v = kc::DecideProjectivity(model, cfg);
  kc::Json report = kc::ReportHeader("decide", opt.seed);
  report["input"] = kc::ModelToJson(model);
  report["config"] = ConfigToJson(cfg);
  report["verdict"] = kc::ProjectivityVerdictToJson(v);
  if (opt.timing) {
    const auto elapsed = std::chrono::steady_clock::now() - start;
    report["timing_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
  }
  Emit(opt, Dump(report));
  if (!opt.out.empty()) std::cout << "status: " << kc::ToString(v.status) << "\n";
  switch (v.status) {
    case kc::ProjectivityStatus::kProjective:
      return kExitOk;
    case kc::ProjectivityStatus::kNotProjective:
      return kExitNegative;
    case kc::ProjectivityStatus::kUndetermined:
      return kExitUndetermined;
  }
  return kExitUndetermined;
}

int CmdConstruct(const Options& opt) {
  if (opt.kind != "k3-am") throw UsageError("unknown --kind: " + opt.kind);
  if (opt.m < 0 || opt.m > 19) {
    throw UsageError("--m must be in 0..19 (a (1,19) lattice holds at most 19 "
                     "independent negative definite curve classes), got " +
                     std::to_string(opt.m));
  }
  Emit(opt, kc::SerializeModel(kc::ConstructK3Am(opt.m)));
  return kExitOk;
}

// The source model must be target (+) <e> with e^2 = -1 in the last slot.
kc::SurfaceModel TargetOfBlowup(const kc::SurfaceModel& source) {
  const std::size_t n = source.dim() - 1;
  if (source.dim() < 3) throw UsageError("blow-down needs a source of dimension >= 3");
  for (std::size_t i = 0; i < n; ++i) {
    if (source.gram(i, n) != 0) {
      throw UsageError("gram is not block diagonal with the exceptional class last");
    }
  }
  if (source.gram(n, n) != -1) throw UsageError("exceptional class must have square -1");
  auto project = [n](const kc::Vec& v) { return kc::Vec(v.begin(), v.begin() + n); };
  kc::SurfaceModel target;
  target.kind = kc::SurfaceKind::kGeneral;
  target.gram = kc::Matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) target.gram(i, j) = source.gram(i, j);
  }
  target.kappa_ref = project(source.kappa_ref);
  for (const kc::Vec& b : source.ns_basis) {
    target.ns_basis.push_back(project(b));
    if (kc::IsZero(target.ns_basis.back()) ||
        kc::Rank(kc::Matrix::FromRows(target.ns_basis)) != target.ns_basis.size()) {
      target.ns_basis.pop_back();
    }
  }
  for (const kc::CurveClass& c : source.curves) {
    kc::Vec image = project(c.klass);
    if (kc::IsZero(image)) continue;  // the exceptional curve itself
    target.curves.push_back(kc::CurveClass{c.name, std::move(image)});
  }
  std::vector<std::string> violations = kc::ValidateModel(target);
  if (!violations.empty()) throw kc::InvalidModelError(std::move(violations));
  return target;
}

int CmdBlowdown(const Options& opt) {
  const kc::SurfaceModel source = LoadValidModel(opt.path);
  const kc::SurfaceModel target = TargetOfBlowup(source);
  const kc::Vec x = ParsePoint(opt.point, source.dim());
  const kc::SearchConfig cfg = ConfigFrom(opt);
  const kc::BlowdownMap bd{target.Space()};
  const kc::DescentResult d = kc::DescendInnerPoint(
      bd, kc::MakeConeModel(source), kc::MakeConeModel(target), x, cfg);
  kc::Json report = kc::ReportHeader("blowdown", opt.seed);
  report["input"] = kc::ModelToJson(source);
  report["source_point"] = kc::VecToJson(x);
  report["source_verdict"] = kc::InnerVerdictToJson(d.source_verdict);
  report["target_model"] = kc::ModelToJson(target);
  report["point"] = kc::VecToJson(d.y);
  report["verdict"] = kc::InnerVerdictToJson(d.target_verdict);
  report["contradiction"] = d.contradiction;
  Emit(opt, Dump(report));
  if (!opt.out.empty()) std::cout << "status: " << kc::ToString(d.target_verdict.status) << "\n";
  return InnerExit(d.target_verdict.status);
}

int CmdEllipticBound(const Options& opt) {
  if (opt.path.empty()) {
    if (opt.m_sq.empty() || opt.mf.empty()) {
      throw UsageError("elliptic-bound needs a model path or both --msq and --mf");
    }
    const kc::Rat m_sq = kc::ParseRat(opt.m_sq);
    const kc::Rat mf = kc::ParseRat(opt.mf);
    if (sgn(mf) <= 0) throw UsageError("--mf must be positive");
    const kc::Int n = kc::EllipticPositivityBound(m_sq, mf);
    std::cout << "n: " << n.get_str() << "\n"
              << "square: " << kc::FormatRat(m_sq + 2 * kc::Rat(n) * mf) << "\n";
    return kExitOk;
  }
  const kc::SurfaceModel model = LoadValidModel(opt.path);
  if (!model.elliptic) throw UsageError("model has no elliptic block");
  const kc::EllipticReport r =
      kc::EllipticConsistencyCheck(model, *model.elliptic, ConfigFrom(opt));
  kc::Json report = kc::ReportHeader("elliptic-bound", opt.seed);
  report["input"] = kc::ModelToJson(model);
  report["verdict"] = kc::EllipticReportToJson(r);
  Emit(opt, Dump(report));
  if (!opt.out.empty()) std::cout << "status: " << kc::ToString(r.status) << "\n";
  return r.status == kc::EllipticStatus::kContradiction ? kExitNegative : kExitOk;
}

int CmdFuzz(const Options& opt) {
  const kc::SuiteSummary s = kc::RunSuite(opt.suite, opt.trials, opt.seed);
  Emit(opt, s.Format());
  if (!opt.out.empty()) std::cout << "result: " << (s.ok() ? "PASS" : "FAIL") << "\n";
  return s.ok() ? kExitOk : kExitNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Projectivity of Kahler surfaces from lattice data"};
  app.require_subcommand(1);
  Options opt;

  auto with_model = [&](CLI::App* cmd) {
    cmd->add_option("path", opt.path, "Model file")->required();
  };
  auto with_search = [&](CLI::App* cmd) {
    cmd->add_option("--bound", opt.bound, "Coefficient bound B");
    cmd->add_option("--seed", opt.seed, "Seed for the randomized heuristics");
  };
  auto with_out = [&](CLI::App* cmd) {
    cmd->add_option("--out", opt.out, "Write the document here instead of stdout");
  };

  CLI::App* signature = app.add_subcommand("signature", "Print the signature (pos,zero,neg)");
  with_model(signature);

  CLI::App* perp = app.add_subcommand("perp", "Orthogonal complement of named curve classes");
  with_model(perp);
  perp->add_option("--classes", opt.classes, "Comma-separated curve names");

  CLI::App* kahler = app.add_subcommand("kahler-test", "Kahler cone membership of a point");
  with_model(kahler);
  kahler->add_option("--point", opt.point, "Comma-separated rational coordinates")->required();

  CLI::App* dual = app.add_subcommand("dual-inner-test", "Inner-point test for the dual cone");
  with_model(dual);
  dual->add_option("--point", opt.point, "Comma-separated rational coordinates")->required();
  with_search(dual);
  with_out(dual);

  CLI::App* decide = app.add_subcommand("decide", "Decide projectivity and write a report");
  with_model(decide);
  with_search(decide);
  with_out(decide);
  decide->add_flag("--timing", opt.timing, "Record wall-clock time in the report");

  CLI::App* construct = app.add_subcommand("construct", "Generate a model file");
  construct->add_option("--kind", opt.kind, "Model family (k3-am)");
  construct->add_option("--m", opt.m, "Number of curves in the A_m chain")->required();
  with_out(construct);

  CLI::App* blowdown = app.add_subcommand("blowdown", "Push an inner point down a blow-up");
  with_model(blowdown);
  blowdown->add_option("--point", opt.point, "Comma-separated integral coordinates")->required();
  with_search(blowdown);
  with_out(blowdown);

  CLI::App* elliptic = app.add_subcommand("elliptic-bound", "Elliptic positivity bound");
  elliptic->add_option("path", opt.path, "Model file with an elliptic block");
  elliptic->add_option("--msq", opt.m_sq, "M^2 as a rational");
  elliptic->add_option("--mf", opt.mf, "(M.F) as a rational");
  with_search(elliptic);
  with_out(elliptic);

  CLI::App* fuzz = app.add_subcommand("fuzz", "Run a seeded property suite");
  fuzz->add_option("--suite", opt.suite, "lemma15|selfdual|blowdown|oracle|elliptic")->required();
  fuzz->add_option("--trials", opt.trials, "Number of trials");
  fuzz->add_option("--seed", opt.seed, "Seed");
  with_out(fuzz);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*signature) return CmdSignature(opt);
    if (*perp) return CmdPerp(opt);
    if (*kahler) return CmdKahlerTest(opt);
    if (*dual) return CmdDualInnerTest(opt);
    if (*decide) return CmdDecide(opt);
    if (*construct) return CmdConstruct(opt);
    if (*blowdown) return CmdBlowdown(opt);
    if (*elliptic) return CmdEllipticBound(opt);
    if (*fuzz) return CmdFuzz(opt);
  } catch (const kc::InvalidModelError& e) {
    std::cerr << "error: invalid model\n";
    for (const std::string& v : e.violations()) std::cerr << "violation: " << v << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
