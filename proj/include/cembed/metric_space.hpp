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

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "cembed/execution.hpp"
#include "cembed/matrix.hpp"

namespace cembed {

/// A finite metric space: labelled points and their distance matrix.
///
/// Construction only enforces structure (square, one label per row, finite
/// nonnegative entries). Metric axioms are checked by validate(), so a file
/// carrying an asymmetric matrix can still be loaded and reported on.
class FiniteMetricSpace {
public:
    FiniteMetricSpace() = default;
    /// Labels default to "0", "1", ... when `labels` is empty.
    explicit FiniteMetricSpace(Matrix dist, std::vector<std::string> labels = {});

    std::size_t size() const noexcept { return dist_.rows(); }
    double operator()(std::size_t i, std::size_t j) const noexcept { return dist_(i, j); }
    const Matrix& dist() const noexcept { return dist_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }

    /// Largest off-diagonal entry; 0 for a single point.
    double diameter() const noexcept;

    /// The subspace on `indices`, in the given order.
    FiniteMetricSpace restrict_to(const std::vector<std::size_t>& indices) const;

private:
    Matrix dist_;
    std::vector<std::string> labels_;
};

enum class ViolationKind { nonzero_diagonal, asymmetry, zero_distance, triangle };

std::string to_string(ViolationKind kind);

/// One failed axiom. For triangle violations dist(i,k) > dist(i,j) + dist(j,k);
/// other kinds leave k (and for the diagonal also j) equal to i.
struct Violation {
    ViolationKind kind;
    std::size_t i, j, k;
    double excess;  ///< amount by which the axiom is exceeded

    bool operator==(const Violation&) const = default;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const noexcept { return violations.empty(); }
};

/// Default additive tolerance: 1e-12 * diameter.
double default_validation_tolerance(const FiniteMetricSpace& space) noexcept;

/// Every axiom violation exceeding `tol`, sorted by (kind, i, j, k).
ValidationReport validate(const FiniteMetricSpace& space, double tol,
                          Execution exec = Execution::parallel);
ValidationReport validate(const FiniteMetricSpace& space);

/// A pairwise-distinct ordered triple (x, y, z) read as d(x,y)+d(y,z)-d(x,z).
struct Triple {
    std::size_t x, y, z;
    bool operator==(const Triple&) const = default;
};

struct ConcavityReport {
    /// min over pairwise-distinct triples of d(x,y)+d(y,z)-d(x,z).
    /// +infinity when the space has fewer than three points.
    double gap = std::numeric_limits<double>::infinity();
    std::optional<Triple> witness;
    /// min off-diagonal distance; +infinity for a single point.
    double separation = std::numeric_limits<double>::infinity();
    double diameter = 0.0;

    bool gap_is_infinite() const noexcept { return !witness.has_value(); }
};

ConcavityReport concavity_report(const FiniteMetricSpace& space,
                                 Execution exec = Execution::parallel);

/// True iff the concavity gap is at least c. Throws ArgumentError for c <= 0.
bool is_strongly_concave(const FiniteMetricSpace& space, double c);

/// Distances raised to the power p in (0,1).
FiniteMetricSpace snowflake(const FiniteMetricSpace& space, double p);

FiniteMetricSpace make_discrete(std::size_t n);
FiniteMetricSpace make_equilateral(std::size_t n, double lambda);

/// Random space with concavity gap >= c.
///
/// A base scale s is drawn from [1.5c', 3c'] with c' = c(1 + 1e-6); every
/// off-diagonal distance is then drawn from [s, 2s - c']. Any two such
/// distances sum to at least 2s while a third is at most 2s - c', so the gap
/// is at least c' up to rounding; draws are re-sampled until the computed
/// gap is >= c.
FiniteMetricSpace make_random_strongly_concave(std::size_t n, double c, std::uint64_t seed);

}  // namespace cembed
