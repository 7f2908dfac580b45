/*
   Copyright 2026 The cembed Authors

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

// JSON and CSV interchange. Doubles are written in shortest round-trip form,
// so reading back any emitted file reproduces every value bit for bit.

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "cembed/diagonal.hpp"
#include "cembed/equilateral.hpp"
#include "cembed/fixed_point.hpp"
#include "cembed/frechet.hpp"
#include "cembed/metric_space.hpp"
#include "cembed/norms.hpp"

namespace cembed::io {

using nlohmann::json;

/// {"labels": [...], "dist": [[...], ...]}; "labels" is optional on input.
json to_json(const FiniteMetricSpace& space);
FiniteMetricSpace space_from_json(const json& j);

/// N x N numeric grid, optionally preceded by a header row of labels.
FiniteMetricSpace space_from_csv(std::istream& in);

/// Dispatches on the extension (.csv, otherwise JSON). Throws StructuralError.
FiniteMetricSpace read_space(const std::filesystem::path& path);

/// {"kind", "dimension", "weights", "beta", "rescale", "p"}; the custom kind
/// is the scaled l_p family and requires "p".
json to_json(const NormSpec& norm);
NormSpec norm_from_json(const json& j);
NormSpec read_norm(const std::filesystem::path& path);

json to_json(const ValidationReport& report);
/// "gap" is null (with "gap_is_infinite": true) below three points.
json to_json(const ConcavityReport& report);
json to_json(const Embedding& embedding);
Matrix points_from_json(const json& j);
json to_json(const IterationDiagnostics& diagnostics);
json to_json(const PerturbationState& state);
json to_json(const ExtractionResult& result);

std::string dump(const json& j);

}  // namespace cembed::io
