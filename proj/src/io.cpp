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

#include "cembed/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "cembed/errors.hpp"

namespace cembed::io {
namespace {

[[noreturn]] void bad_field(const std::string& field, const std::string& why) {
    throw StructuralError("field '" + field + "': " + why);
}

const json& require(const json& j, const std::string& field) {
    if (!j.is_object()) throw StructuralError("expected a JSON object");
    auto it = j.find(field);
    if (it == j.end()) bad_field(field, "missing");
    return *it;
}

double number_at(const json& j, const std::string& field) {
    if (!j.is_number()) bad_field(field, "expected a number, got " + std::string(j.type_name()));
    return j.get<double>();
}

std::vector<double> numbers(const json& j, const std::string& field) {
    if (!j.is_array()) bad_field(field, "expected an array");
    std::vector<double> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(number_at(j[i], field + "[" + std::to_string(i) + "]"));
    return out;
}

Matrix matrix_at(const json& j, const std::string& field) {
    if (!j.is_array()) bad_field(field, "expected an array of rows");
    std::vector<std::vector<double>> rows;
    rows.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        rows.push_back(numbers(j[i], field + "[" + std::to_string(i) + "]"));
    try {
        return Matrix::from_rows(rows);
    } catch (const StructuralError& e) {
        bad_field(field, e.what());
    }
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw StructuralError("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

json parse(const std::string& text, const std::filesystem::path& path) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw StructuralError("'" + path.string() + "' is not valid JSON: " + e.what());
    }
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) {
        const auto b = cell.find_first_not_of(" \t\r");
        const auto e = cell.find_last_not_of(" \t\r");
        cells.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    std::istringstream in(s);
    in >> out;
    return in && in.peek() == std::char_traits<char>::eof();
}

}  // namespace

json to_json(const FiniteMetricSpace& space) {
    return {{"labels", space.labels()}, {"dist", space.dist().to_rows()}};
}

FiniteMetricSpace space_from_json(const json& j) {
    Matrix dist = matrix_at(require(j, "dist"), "dist");
    std::vector<std::string> labels;
    if (auto it = j.find("labels"); it != j.end()) {
        if (!it->is_array()) bad_field("labels", "expected an array of strings");
        for (std::size_t i = 0; i < it->size(); ++i) {
            if (!(*it)[i].is_string()) bad_field("labels[" + std::to_string(i) + "]", "expected a string");
            labels.push_back((*it)[i].get<std::string>());
        }
    }
    return FiniteMetricSpace(std::move(dist), std::move(labels));
}

FiniteMetricSpace space_from_csv(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::vector<std::string> labels;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto cells = split_csv_line(line);
        std::vector<double> row;
        row.reserve(cells.size());
        bool numeric = true;
        for (const auto& c : cells) {
            double v;
            if (!parse_double(c, v)) {
                numeric = false;
                break;
            }
            row.push_back(v);
        }
        if (!numeric) {
            if (rows.empty() && labels.empty()) {
                labels = cells;
                continue;
            }
            throw StructuralError("CSV line " + std::to_string(line_no) + ": non-numeric entry");
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw StructuralError("CSV contains no numeric rows");
    return FiniteMetricSpace(Matrix::from_rows(rows), std::move(labels));
}

FiniteMetricSpace read_space(const std::filesystem::path& path) {
    if (path.extension() == ".csv") {
        std::ifstream in(path);
        if (!in) throw StructuralError("cannot open '" + path.string() + "'");
        return space_from_csv(in);
    }
    return space_from_json(parse(read_file(path), path));
}

json to_json(const NormSpec& norm) {
    json j{{"kind", to_string(norm.kind())}, {"dimension", norm.dimension()}};
    switch (norm.kind()) {
        case NormKind::sup: break;
        case NormKind::weighted_sup: j["weights"] = norm.weights(); break;
        case NormKind::sup_plus_l1:
            j["beta"] = norm.beta();
            j["rescale"] = norm.rescaled();
            break;
        case NormKind::custom:
            if (norm.lp_exponent()) j["p"] = *norm.lp_exponent();
            j["description"] = norm.description();
            break;
    }
    return j;
}

NormSpec norm_from_json(const json& j) {
    const json& kind_field = require(j, "kind");
    if (!kind_field.is_string()) bad_field("kind", "expected a string");
    const auto kind = kind_field.get<std::string>();

    std::optional<std::size_t> dimension;
    if (auto it = j.find("dimension"); it != j.end()) {
        if (!it->is_number_integer() || it->get<long long>() < 1)
            bad_field("dimension", "expected a positive integer");
        dimension = it->get<std::size_t>();
    }
    auto need_dimension = [&]() -> std::size_t {
        if (!dimension) bad_field("dimension", "missing");
        return *dimension;
    };

    try {
        if (kind == "sup") return NormSpec::sup(need_dimension());
        if (kind == "weighted_sup") {
            auto w = numbers(require(j, "weights"), "weights");
            if (dimension && *dimension != w.size())
                bad_field("weights", "has " + std::to_string(w.size()) + " entries, dimension is " +
                                         std::to_string(*dimension));
            return NormSpec::weighted_sup(std::move(w));
        }
        if (kind == "sup_plus_l1") {
            bool rescale = true;
            if (auto it = j.find("rescale"); it != j.end()) {
                if (!it->is_boolean()) bad_field("rescale", "expected a boolean");
                rescale = it->get<bool>();
            }
            return NormSpec::sup_plus_l1(need_dimension(), number_at(require(j, "beta"), "beta"),
                                         rescale);
        }
        if (kind == "custom")
            return NormSpec::lp_scaled(need_dimension(), number_at(require(j, "p"), "p"));
    } catch (const ArgumentError& e) {
        throw StructuralError(std::string("norm spec: ") + e.what());
    }
    bad_field("kind", "unknown norm kind '" + kind + "'");
}

NormSpec read_norm(const std::filesystem::path& path) {
    return norm_from_json(parse(read_file(path), path));
}

json to_json(const ValidationReport& report) {
    json violations = json::array();
    for (const auto& v : report.violations)
        violations.push_back({{"kind", to_string(v.kind)},
                              {"indices", {v.i, v.j, v.k}},
                              {"excess", v.excess}});
    return {{"ok", report.ok()}, {"violations", violations}};
}

json to_json(const ConcavityReport& report) {
    json j{{"gap", number_or_null(report.gap)},
           {"gap_is_infinite", report.gap_is_infinite()},
           {"separation", number_or_null(report.separation)},
           {"diameter", report.diameter}};
    j["witness_triple"] = report.witness
                              ? json{report.witness->x, report.witness->y, report.witness->z}
                              : json(nullptr);
    return j;
}

json to_json(const Embedding& embedding) {
    return {{"points", embedding.points.to_rows()},
            {"norm", to_json(embedding.norm)},
            {"max_residual", embedding.max_residual}};
}

Matrix points_from_json(const json& j) { return matrix_at(require(j, "points"), "points"); }

json to_json(const IterationDiagnostics& d) {
    return {{"iterations", d.iterations},
            {"final_residual", d.final_residual},
            {"converged", d.converged},
            {"residual_history", d.residual_history},
            {"bound_violations", d.bound_violations},
            {"damping", d.damping},
            {"delta", d.delta},
            {"eta", d.eta},
            {"tolerance", d.tolerance},
            {"pair_slack", d.pair_slack}};
}

json to_json(const PerturbationState& state) {
    json pairs = json::array();
    for (std::size_t m = 1; m < state.points(); ++m)
        for (std::size_t n = 0; n < m; ++n) pairs.push_back({m, n, state(m, n)});
    return {{"eta", state.eta()}, {"eps", pairs}};
}

json to_json(const ExtractionResult& r) {
    return {{"indices", r.indices},
            {"limits_estimate", r.limits_estimate},
            {"tail_oscillation", r.tail_oscillation},
            {"requested", r.requested},
            {"tail_size", r.tail_size},
            {"shortfall", r.shortfall}};
}

std::string dump(const json& j) { return j.dump(2); }

}  // namespace cembed::io
