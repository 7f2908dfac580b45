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
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "cembed/fixed_point.hpp"
#include "cembed/metric_space.hpp"
#include "cembed/norms.hpp"

namespace cembed {

/// A countable bounded metric space x_1, x_2, ... given by a distance oracle.
/// Indices start at 1. distance() may be called concurrently.
class LazyMetric {
public:
    virtual ~LazyMetric() = default;
    virtual double distance(std::size_t i, std::size_t j) const = 0;
    /// Uniform bound on all distances.
    virtual double bound() const = 0;
    virtual std::string name() const = 0;
    virtual std::string point_label(std::size_t i) const { return "x" + std::to_string(i); }
};

/// Adapts a callable; the callable is trusted to be symmetric with zero diagonal.
class FunctionMetric final : public LazyMetric {
public:
    using Distance = std::function<double(std::size_t, std::size_t)>;
    FunctionMetric(Distance distance, double bound, std::string name = "function")
        : distance_(std::move(distance)), bound_(bound), name_(std::move(name)) {}

    double distance(std::size_t i, std::size_t j) const override {
        return i == j ? 0.0 : distance_(i, j);
    }
    double bound() const override { return bound_; }
    std::string name() const override { return name_; }

private:
    Distance distance_;
    double bound_;
    std::string name_;
};

/// lambda between any two distinct points.
std::unique_ptr<LazyMetric> make_lazy_equilateral(double lambda);
std::unique_ptr<LazyMetric> make_lazy_discrete();
/// d(x_i, x_j) = |1/i - 1/j| + 1; row i converges to 1 + 1/i.
std::unique_ptr<LazyMetric> make_lazy_harmonic();
/// Odd indices form cluster A, even ones cluster B; distance `within` inside a
/// cluster and `across` between clusters. Requires 0 < within, across <= 2 within.
std::unique_ptr<LazyMetric> make_lazy_two_cluster(double within = 1.0, double across = 1.5);

/// Builtin family by name: equilateral, discrete, harmonic, two-cluster.
/// `a` is lambda (equilateral) or the within-cluster distance; `b` is the
/// cross-cluster distance.
std::unique_ptr<LazyMetric> make_lazy_family(const std::string& family, double a = 1.0,
                                             double b = 1.5);

/// The finite subspace on `indices` (1-based), labelled by point_label().
FiniteMetricSpace truncate(const LazyMetric& metric, const std::vector<std::size_t>& indices);

struct ExtractionResult {
    std::vector<std::size_t> indices;       ///< n_1 < n_2 < ..., 1-based
    std::vector<double> limits_estimate;    ///< row value at the end of the surviving tail
    std::vector<double> tail_oscillation;   ///< max |d(x_{n_k}, x_n) - alpha_k| over the tail
    std::size_t requested = 0;
    std::size_t tail_size = 0;              ///< surviving candidate pool after the last stage
    bool shortfall = false;                 ///< horizon exhausted before `requested` indices
};

/// Finite diagonal argument over x_1..x_horizon.
///
/// Starts from n_1 = 1. At stage k the row d(x_{n_k}, .) is bucketed over the
/// current candidate pool in cells [b*tol, (b+1)*tol); the most populated cell
/// (lowest on ties) becomes the new pool, and its smallest index is n_{k+1}.
/// Every returned row therefore oscillates by less than tol over the final pool.
ExtractionResult extract_convergent_subset(const LazyMetric& metric, std::size_t count, double tol,
                                           std::size_t horizon);

struct ViaCResult {
    ExtractionResult extraction;
    FiniteMetricSpace subspace;
    EmbedResult embedded;
};

/// Extract, restrict, check strong concavity, then embed. Throws
/// NotStronglyConcaveError naming the violating triple (in subspace indices).
ViaCResult embed_via_c(const LazyMetric& metric, std::size_t count, const NormSpec& norm,
                       double tol, std::size_t horizon, const SolverConfig& config = {});

}  // namespace cembed
