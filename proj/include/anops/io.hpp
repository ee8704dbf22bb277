/*
   Copyright 2026 The anops Authors.

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "json.hpp"

#include "anops/classify.hpp"
#include "anops/decomposition.hpp"
#include "anops/operator.hpp"
#include "anops/summary.hpp"

namespace anops {

using Json = nlohmann::json;

struct SpecParams {
    std::optional<std::size_t> trunc;
    std::optional<double> tol;
    std::optional<int> samples;
    std::optional<int> resolution;

    friend bool operator==(const SpecParams&, const SpecParams&) = default;
};

struct OperatorSpec {
    std::string name;
    StructuredOperator op;
    SpecParams params;
};

/// Parses an operator spec document.  Syntax errors and schema violations
/// raise ParseError with the 1-based line and the offending field path;
/// non-canonical or non-finite data raise ValidationError.
OperatorSpec parse_spec_text(const std::string& text);
OperatorSpec parse_spec(const std::string& path);
/// Canonical spec document; parse_spec_text(dump) reproduces the operator.
Json spec_to_json(const OperatorSpec& spec);

struct Provenance {
    std::string tool_version;
    std::string command;
    Json parameters = Json::object();
    std::string started;
    std::string finished;
};

struct DecompositionReport {
    BlockDecomposition blocks;
    VerificationRecord verification;
    BlockNormalityRecord normality;
    InclusionRecord inclusion;
};

struct ReportBundle {
    ClassificationReport classification;
    SpectralSummary spectral;
    std::optional<DecompositionReport> decomposition;
    Provenance provenance;
};

Json to_json(const ReportBundle& r);
ReportBundle report_from_json(const Json& j);

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

/// Human-readable report.
void render_text(std::ostream& os, const ReportBundle& r);
void render_spectrum_text(std::ostream& os, const SpectralSummary& s);

/// "theta,re,im" with 12 decimals.
void write_curve_csv(std::ostream& os, const std::vector<double>& theta, const std::vector<Complex>& points);

}  // namespace anops
