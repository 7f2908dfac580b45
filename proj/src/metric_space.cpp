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

#include "cembed/metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cembed/errors.hpp"
#include "cembed/kernels.hpp"
#include "cembed/random.hpp"

namespace cembed {

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> init)
    : rows_(init.size()), cols_(init.size() ? init.begin()->size() : 0) {
    data_.reserve(rows_ * cols_);
    for (const auto& r : init) {
        if (r.size() != cols_) throw StructuralError("ragged matrix initializer");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

std::vector<std::vector<double>> Matrix::to_rows() const {
    std::vector<std::vector<double>> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i].assign(row(i).begin(), row(i).end());
    return out;
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) {
            std::ostringstream msg;
            msg << "row " << i << " has " << rows[i].size() << " entries, expected " << cols;
            throw StructuralError(msg.str());
        }
        std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
    }
    return m;
}

FiniteMetricSpace::FiniteMetricSpace(Matrix dist, std::vector<std::string> labels)
    : dist_(std::move(dist)), labels_(std::move(labels)) {
    if (!dist_.square()) {
        std::ostringstream msg;
        msg << "distance matrix is " << dist_.rows() << "x" << dist_.cols() << ", not square";
        throw StructuralError(msg.str());
    }
    if (dist_.rows() == 0) throw StructuralError("distance matrix is empty");
    if (labels_.empty()) {
        labels_.reserve(dist_.rows());
        for (std::size_t i = 0; i < dist_.rows(); ++i) labels_.push_back(std::to_string(i));
    } else if (labels_.size() != dist_.rows()) {
        std::ostringstream msg;
        msg << "labels has " << labels_.size() << " entries for a " << dist_.rows()
            << "-point matrix";
        throw StructuralError(msg.str());
    }
    for (std::size_t i = 0; i < dist_.rows(); ++i) {
        for (std::size_t j = 0; j < dist_.cols(); ++j) {
            const double v = dist_(i, j);
            if (!std::isfinite(v) || v < 0.0) {
                std::ostringstream msg;
                msg << "dist[" << i << "][" << j << "] = " << v
                    << " is not a finite nonnegative number";
                throw StructuralError(msg.str());
            }
        }
    }
}

double FiniteMetricSpace::diameter() const noexcept {
    double d = 0.0;
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = 0; j < size(); ++j)
            if (i != j) d = std::max(d, dist_(i, j));
    return d;
}

FiniteMetricSpace FiniteMetricSpace::restrict_to(const std::vector<std::size_t>& indices) const {
    Matrix sub(indices.size(), indices.size());
    std::vector<std::string> labels;
    labels.reserve(indices.size());
    for (std::size_t a = 0; a < indices.size(); ++a) {
        if (indices[a] >= size()) throw ArgumentError("restrict_to: index out of range");
        labels.push_back(labels_[indices[a]]);
        for (std::size_t b = 0; b < indices.size(); ++b)
            sub(a, b) = dist_(indices[a], indices[b]);
    }
    return FiniteMetricSpace(std::move(sub), std::move(labels));
}

std::string to_string(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::nonzero_diagonal: return "nonzero_diagonal";
        case ViolationKind::asymmetry: return "asymmetry";
        case ViolationKind::zero_distance: return "zero_distance";
        case ViolationKind::triangle: return "triangle";
    }
    return "unknown";
}

double default_validation_tolerance(const FiniteMetricSpace& space) noexcept {
    return 1e-12 * space.diameter();
}

ValidationReport validate(const FiniteMetricSpace& space, double tol, Execution exec) {
    if (!(tol >= 0.0)) throw ArgumentError("validation tolerance must be >= 0");
    const std::size_t n = space.size();
    ValidationReport report;
    auto& out = report.violations;
    for (std::size_t i = 0; i < n; ++i) {
        if (space(i, i) > tol)
            out.push_back({ViolationKind::nonzero_diagonal, i, i, i, space(i, i)});
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double asym = std::fabs(space(i, j) - space(j, i));
            if (asym > tol) out.push_back({ViolationKind::asymmetry, i, j, j, asym});
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (space(i, j) <= tol || space(j, i) <= tol)
                out.push_back({ViolationKind::zero_distance, i, j, j,
                               tol - std::min(space(i, j), space(j, i))});
        }
    }
    auto triangles = exec == Execution::serial
                         ? kernels::serial::triangle_violations(space.dist(), tol)
                         : kernels::parallel::triangle_violations(space.dist(), tol);
    out.insert(out.end(), triangles.begin(), triangles.end());
    return report;
}

ValidationReport validate(const FiniteMetricSpace& space) {
    return validate(space, default_validation_tolerance(space));
}

ConcavityReport concavity_report(const FiniteMetricSpace& space, Execution exec) {
    ConcavityReport report;
    const std::size_t n = space.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            report.separation = std::min(report.separation, space(i, j));
            report.diameter = std::max(report.diameter, space(i, j));
        }
    }
    const auto gap = exec == Execution::serial ? kernels::serial::concavity_gap(space.dist())
                                               : kernels::parallel::concavity_gap(space.dist());
    report.gap = gap.gap;
    report.witness = gap.witness;
    return report;
}

bool is_strongly_concave(const FiniteMetricSpace& space, double c) {
    if (!(c > 0.0)) throw ArgumentError("concavity constant c must be > 0");
    return concavity_report(space).gap >= c;
}

FiniteMetricSpace snowflake(const FiniteMetricSpace& space, double p) {
    if (!(p > 0.0 && p < 1.0)) throw ArgumentError("snowflake exponent must lie in (0, 1)");
    Matrix d = space.dist();
    for (std::size_t i = 0; i < d.rows(); ++i)
        for (std::size_t j = 0; j < d.cols(); ++j) d(i, j) = i == j ? 0.0 : std::pow(d(i, j), p);
    return FiniteMetricSpace(std::move(d), space.labels());
}

FiniteMetricSpace make_discrete(std::size_t n) { return make_equilateral(n, 1.0); }

FiniteMetricSpace make_equilateral(std::size_t n, double lambda) {
    if (n < 1) throw ArgumentError("space needs at least one point");
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw ArgumentError("equilateral distance must be a positive number");
    Matrix d(n, n, lambda);
    for (std::size_t i = 0; i < n; ++i) d(i, i) = 0.0;
    return FiniteMetricSpace(std::move(d));
}

FiniteMetricSpace make_random_strongly_concave(std::size_t n, double c, std::uint64_t seed) {
    if (n < 1) throw ArgumentError("space needs at least one point");
    if (!(c > 0.0) || !std::isfinite(c)) throw ArgumentError("concavity constant must be > 0");
    const double c_margin = c * (1.0 + 1e-6);
    Rng rng(seed);
    for (;;) {
        const double s = rng.uniform(1.5 * c_margin, 3.0 * c_margin);
        const double hi = 2.0 * s - c_margin;
        Matrix d(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) d(i, j) = d(j, i) = rng.uniform(s, hi);
        FiniteMetricSpace space(std::move(d));
        if (n < 3 || concavity_report(space).gap >= c) return space;
    }
}

}  // namespace cembed
