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


#include "kahlercone/model_io.h"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "kahlercone/version.h"

namespace kahlercone {

namespace {

[[noreturn]] void Fail(std::string_view what, std::string_view why) {
  throw ParseError(std::string(what) + ": " + std::string(why));
}

const Json& Field(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) Fail(key, "missing field");
  return *it;
}

Json IntToJson(const Int& value) {
  if (value.fits_slong_p()) return Json(value.get_si());
  return Json(value.get_str());
}

bool IsFlat(const Json& j) {
  for (const Json& e : j) {
    if (e.is_structured()) return false;
  }
  return true;
}

void FormatInto(const Json& j, int indent, std::string* out) {
  const std::string pad(indent + 2, ' ');
  if (j.is_object() && !j.empty()) {
    *out += "{\n";
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!first) *out += ",\n";
      first = false;
      *out += pad + Json(it.key()).dump() + ": ";
      FormatInto(it.value(), indent + 2, out);
    }
    *out += "\n" + std::string(indent, ' ') + "}";
  } else if (j.is_array() && !IsFlat(j)) {
    *out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i > 0) *out += ",\n";
      *out += pad;
      FormatInto(j[i], indent + 2, out);
    }
    *out += "\n" + std::string(indent, ' ') + "]";
  } else if (j.is_array()) {
    *out += "[";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i > 0) *out += ", ";
      *out += j[i].dump();
    }
    *out += "]";
  } else {
    *out += j.dump();
  }
}

}  // namespace

std::string FormatJson(const Json& j) {
  std::string out;
  FormatInto(j, 0, &out);
  return out + "\n";
}

Json RatToJson(const Rat& value) { return Json(FormatRat(value)); }

Json VecToJson(const Vec& v) {
  Json out = Json::array();
  for (const Rat& r : v) out.push_back(RatToJson(r));
  return out;
}

Json IntVecToJson(const Vec& v) {
  Json out = Json::array();
  for (const Rat& r : v) {
    if (r.get_den() != 1) throw std::invalid_argument("IntVecToJson: non-integral entry");
    out.push_back(IntToJson(r.get_num()));
  }
  return out;
}

Json MatrixToJson(const Matrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(VecToJson(m.Row(r)));
  return out;
}

Json SignatureToJson(const SignatureTriple& s) {
  return Json::array({s.pos, s.zero, s.neg});
}

Rat RatFromJson(const Json& j, std::string_view what) {
  if (j.is_string()) {
    try {
      return ParseRat(j.get<std::string>());
    } catch (const ParseError& e) {
      Fail(what, e.what());
    }
  }
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Rat(Int(std::to_string(j.get<std::uint64_t>())));
    return Rat(Int(std::to_string(j.get<std::int64_t>())));
  }
  Fail(what, "expected a rational string or an integer");
}

Vec VecFromJson(const Json& j, std::string_view what) {
  if (!j.is_array()) Fail(what, "expected an array");
  Vec v;
  v.reserve(j.size());
  for (const Json& e : j) v.push_back(RatFromJson(e, what));
  return v;
}

Vec IntVecFromJson(const Json& j, std::string_view what) {
  Vec v = VecFromJson(j, what);
  if (!IsIntegral(v)) Fail(what, "expected integer entries");
  return v;
}

Matrix MatrixFromJson(const Json& j, std::string_view what) {
  if (!j.is_array()) Fail(what, "expected an array of rows");
  std::vector<Vec> rows;
  for (const Json& row : j) rows.push_back(VecFromJson(row, what));
  if (rows.empty()) return Matrix();
  for (const Vec& row : rows) {
    if (row.size() != rows.front().size()) Fail(what, "ragged rows");
  }
  return Matrix::FromRows(rows);
}

Json ModelToJson(const SurfaceModel& model) {
  Json j;
  j["version"] = kModelFormatVersion;
  j["kind"] = ToString(model.kind);
  j["dim"] = model.dim();
  j["gram"] = MatrixToJson(model.gram);
  j["kappa_ref"] = VecToJson(model.kappa_ref);
  Json ns = Json::array();
  for (const Vec& b : model.ns_basis) ns.push_back(IntVecToJson(b));
  j["ns_basis"] = std::move(ns);
  Json curves = Json::array();
  for (const CurveClass& c : model.curves) {
    Json cj;
    cj["name"] = c.name;
    cj["class"] = IntVecToJson(c.klass);
    curves.push_back(std::move(cj));
  }
  j["curves"] = std::move(curves);
  if (model.elliptic) {
    Json e;
    e["M"] = IntVecToJson(model.elliptic->m);
    e["F"] = IntVecToJson(model.elliptic->f);
    j["elliptic"] = std::move(e);
  }
  return j;
}

SurfaceModel ModelFromJson(const Json& j) {
  if (!j.is_object()) Fail("model", "expected an object");
  const Json& version = Field(j, "version");
  if (!version.is_number_integer() || version.get<long>() != kModelFormatVersion) {
    Fail("version", "unsupported model format version");
  }
  SurfaceModel model;
  const Json& kind = Field(j, "kind");
  if (!kind.is_string()) Fail("kind", "expected a string");
  try {
    model.kind = ParseSurfaceKind(kind.get<std::string>());
  } catch (const std::invalid_argument& e) {
    Fail("kind", e.what());
  }
  const Json& dim = Field(j, "dim");
  if (!dim.is_number_integer() || dim.get<long>() < 1) Fail("dim", "expected a positive integer");
  const std::size_t n = dim.get<std::size_t>();
  model.gram = MatrixFromJson(Field(j, "gram"), "gram");
  if (model.gram.rows() != n || model.gram.cols() != n) {
    Fail("gram", "expected a dim x dim matrix");
  }
  model.kappa_ref = VecFromJson(Field(j, "kappa_ref"), "kappa_ref");
  if (model.kappa_ref.size() != n) Fail("kappa_ref", "length differs from dim");
  const Json& ns = Field(j, "ns_basis");
  if (!ns.is_array()) Fail("ns_basis", "expected an array");
  for (const Json& b : ns) {
    model.ns_basis.push_back(IntVecFromJson(b, "ns_basis"));
    if (model.ns_basis.back().size() != n) Fail("ns_basis", "length differs from dim");
  }
  const Json& curves = Field(j, "curves");
  if (!curves.is_array()) Fail("curves", "expected an array");
  for (const Json& c : curves) {
    if (!c.is_object()) Fail("curves", "expected objects");
    const Json& name = Field(c, "name");
    if (!name.is_string()) Fail("curves", "name must be a string");
    CurveClass curve{name.get<std::string>(), IntVecFromJson(Field(c, "class"), "curves")};
    if (curve.klass.size() != n) Fail("curves", "length differs from dim");
    model.curves.push_back(std::move(curve));
  }
  if (auto it = j.find("elliptic"); it != j.end()) {
    EllipticData e{IntVecFromJson(Field(*it, "M"), "elliptic.M"),
                   IntVecFromJson(Field(*it, "F"), "elliptic.F")};
    if (e.m.size() != n || e.f.size() != n) Fail("elliptic", "length differs from dim");
    model.elliptic = std::move(e);
  }
  return model;
}

std::string SerializeModel(const SurfaceModel& model) {
  return FormatJson(ModelToJson(model));
}

SurfaceModel ParseModel(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("model: ") + e.what());
  }
  return ModelFromJson(j);
}

std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteTextFile(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

Json InnerVerdictToJson(const InnerPointVerdict& v) {
  Json j;
  j["status"] = ToString(v.status);
  j["method"] = v.method;
  if (v.positive) {
    Json p;
    p["y"] = VecToJson(v.positive->y);
    p["coefficients"] = VecToJson(v.positive->coefficients);
    j["positive"] = std::move(p);
  }
  if (v.negative) j["negative"] = VecToJson(*v.negative);
  if (v.margin) {
    Json m;
    m["margin_sq"] = RatToJson(v.margin->margin_sq);
    m["multiplier"] = RatToJson(v.margin->multiplier);
    j["margin"] = std::move(m);
  }
  return j;
}

Json IntegralClassToJson(const IntegralClass& c) {
  Json j;
  j["coefficients"] = IntVecToJson(c.coefficients);
  j["class"] = IntVecToJson(c.embedded);
  return j;
}

Json ProjectivityVerdictToJson(const ProjectivityVerdict& v) {
  Json j;
  j["status"] = ToString(v.status);
  if (v.witness) {
    Json w = IntegralClassToJson(*v.witness);
    if (v.witness_verdict) w["inner"] = InnerVerdictToJson(*v.witness_verdict);
    j["witness"] = std::move(w);
  }
  if (v.obstruction) {
    const Obstruction& o = *v.obstruction;
    Json oj;
    oj["kind"] = ToString(o.kind);
    oj["ns_signature"] = SignatureToJson(o.ns_signature);
    if (o.kind == ObstructionKind::kPerCandidateCertificates) {
      oj["bound"] = o.bound;
      Json certs = Json::array();
      for (const CandidateCertificate& c : o.certificates) {
        Json cj = IntegralClassToJson(c.candidate);
        cj["eta"] = VecToJson(c.eta);
        cj["method"] = c.method;
        certs.push_back(std::move(cj));
      }
      oj["certificates"] = std::move(certs);
    }
    j["obstruction"] = std::move(oj);
  }
  j["note"] = v.note;
  return j;
}

Json EllipticReportToJson(const EllipticReport& r) {
  Json j;
  j["status"] = ToString(r.status);
  j["inner_status"] = ToString(r.inner_status);
  j["certificate_valid"] = r.certificate_valid;
  j["M_sq"] = RatToJson(r.m_sq);
  j["MF"] = RatToJson(r.mf);
  if (r.n) j["n"] = IntToJson(*r.n);
  if (r.improved) j["improved"] = VecToJson(*r.improved);
  if (r.improved_sq) j["improved_sq"] = RatToJson(*r.improved_sq);
  j["detail"] = r.detail;
  return j;
}

Json PerpCertificateToJson(const PerpCertificate& c) {
  Json j;
  j["case"] = ToString(c.which);
  j["eta"] = VecToJson(c.eta);
  j["perp_dim"] = c.perp_dim;
  j["perp_signature"] = SignatureToJson(c.perp_signature);
  return j;
}

Json ReportHeader(std::string_view command, std::uint64_t seed) {
  Json j;
  j["format"] = "kahlercone-report";
  j["version"] = kReportFormatVersion;
  j["library_version"] = kVersion;
  j["command"] = std::string(command);
  j["seed"] = seed;
  return j;
}

}  // namespace kahlercone
