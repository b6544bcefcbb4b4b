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


// Model files and reports as JSON documents. Rationals are written as
// strings "p" or "p/q" so that a round trip is exact; integer vectors are
// plain JSON integers while they fit in 64 bits and decimal strings beyond.

#ifndef KAHLERCONE_MODEL_IO_H_
#define KAHLERCONE_MODEL_IO_H_

#include <cstdint>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "kahlercone/cone.h"
#include "kahlercone/decide.h"
#include "kahlercone/quadform.h"
#include "kahlercone/rational.h"
#include "kahlercone/surface.h"

namespace kahlercone {

using Json = nlohmann::ordered_json;

inline constexpr int kModelFormatVersion = 1;
inline constexpr int kReportFormatVersion = 1;

Json RatToJson(const Rat& value);
Json VecToJson(const Vec& v);
Json IntVecToJson(const Vec& v);  // requires integral entries
Json MatrixToJson(const Matrix& m);
Json SignatureToJson(const SignatureTriple& s);

// Each throws ParseError naming `what` on malformed input.
Rat RatFromJson(const Json& j, std::string_view what);
Vec VecFromJson(const Json& j, std::string_view what);
Vec IntVecFromJson(const Json& j, std::string_view what);
Matrix MatrixFromJson(const Json& j, std::string_view what);

Json ModelToJson(const SurfaceModel& model);
// Structural parse only; run ValidateModel for the lattice checks.
SurfaceModel ModelFromJson(const Json& j);

// Two-space indentation with arrays of scalars kept on one line; ends in a
// newline.
std::string FormatJson(const Json& j);

std::string SerializeModel(const SurfaceModel& model);
SurfaceModel ParseModel(std::string_view text);

// File helpers; both throw std::runtime_error on I/O failure.
std::string ReadTextFile(const std::string& path);
void WriteTextFile(const std::string& path, std::string_view text);

Json InnerVerdictToJson(const InnerPointVerdict& v);
Json IntegralClassToJson(const IntegralClass& c);
Json ProjectivityVerdictToJson(const ProjectivityVerdict& v);
Json EllipticReportToJson(const EllipticReport& r);
Json PerpCertificateToJson(const PerpCertificate& c);

// Common report fields: format tag, version, command, library version and
// the seed.
Json ReportHeader(std::string_view command, std::uint64_t seed);

}  // namespace kahlercone

#endif  // KAHLERCONE_MODEL_IO_H_
