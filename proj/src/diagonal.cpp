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

#include "cembed/diagonal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <sstream>

#include "cembed/errors.hpp"

namespace cembed {
namespace {

class EquilateralMetric final : public LazyMetric {
public:
    EquilateralMetric(double lambda, std::string name) : lambda_(lambda), name_(std::move(name)) {}
    double distance(std::size_t i, std::size_t j) const override { return i == j ? 0.0 : lambda_; }
    double bound() const override { return lambda_; }
    std::string name() const override { return name_; }

private:
    double lambda_;
    std::string name_;
};

class HarmonicMetric final : public LazyMetric {
public:
    double distance(std::size_t i, std::size_t j) const override {
        if (i == j) return 0.0;
        return std::fabs(1.0 / static_cast<double>(i) - 1.0 / static_cast<double>(j)) + 1.0;
    }
    double bound() const override { return 2.0; }
    std::string name() const override { return "harmonic"; }
};

class TwoClusterMetric final : public LazyMetric {
public:
    TwoClusterMetric(double within, double across) : within_(within), across_(across) {}
    double distance(std::size_t i, std::size_t j) const override {
        if (i == j) return 0.0;
        return (i % 2) == (j % 2) ? within_ : across_;
    }
    double bound() const override { return std::max(within_, across_); }
    std::string name() const override { return "two-cluster"; }
    std::string point_label(std::size_t i) const override {
        return (i % 2 ? "a" : "b") + std::to_string(i);
    }

private:
    double within_, across_;
};

/// Spot check of the axioms and the bound on x_1..x_n.
void spot_check(const LazyMetric& metric, std::size_t n) {
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i + 1;
    const auto space = truncate(metric, idx);
    const auto report = validate(space, 1e-12 * std::max(metric.bound(), 1.0));
    if (!report.ok()) {
        const auto& v = report.violations.front();
        std::ostringstream msg;
        msg << metric.name() << ": " << to_string(v.kind) << " violation among x" << v.i + 1
            << ", x" << v.j + 1 << ", x" << v.k + 1;
        throw InvalidMetricError(msg.str());
    }
    if (space.diameter() > metric.bound() * (1.0 + 1e-12))
        throw InvalidMetricError(metric.name() + ": a distance exceeds the declared bound");
}

}  // namespace

std::unique_ptr<LazyMetric> make_lazy_equilateral(double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ArgumentError("lambda must be > 0");
    return std::make_unique<EquilateralMetric>(lambda, "equilateral");
}

std::unique_ptr<LazyMetric> make_lazy_discrete() {
    return std::make_unique<EquilateralMetric>(1.0, "discrete");
}

std::unique_ptr<LazyMetric> make_lazy_harmonic() { return std::make_unique<HarmonicMetric>(); }

std::unique_ptr<LazyMetric> make_lazy_two_cluster(double within, double across) {
    if (!(within > 0.0) || !(across > 0.0) || across > 2.0 * within)
        throw ArgumentError("two-cluster needs 0 < within and 0 < across <= 2 * within");
    return std::make_unique<TwoClusterMetric>(within, across);
}

std::unique_ptr<LazyMetric> make_lazy_family(const std::string& family, double a, double b) {
    if (family == "equilateral") return make_lazy_equilateral(a);
    if (family == "discrete") return make_lazy_discrete();
    if (family == "harmonic") return make_lazy_harmonic();
    if (family == "two-cluster") return make_lazy_two_cluster(a, b);
    throw ArgumentError("unknown family '" + family +
                        "' (expected equilateral, discrete, harmonic or two-cluster)");
}

FiniteMetricSpace truncate(const LazyMetric& metric, const std::vector<std::size_t>& indices) {
    Matrix d(indices.size(), indices.size());
    std::vector<std::string> labels;
    labels.reserve(indices.size());
    for (std::size_t a = 0; a < indices.size(); ++a) {
        if (indices[a] < 1) throw ArgumentError("lazy metric indices start at 1");
        labels.push_back(metric.point_label(indices[a]));
        for (std::size_t b = 0; b < indices.size(); ++b)
            d(a, b) = metric.distance(indices[a], indices[b]);
    }
    return FiniteMetricSpace(std::move(d), std::move(labels));
}

ExtractionResult extract_convergent_subset(const LazyMetric& metric, std::size_t count, double tol,
                                           std::size_t horizon) {
    if (count < 1) throw ArgumentError("count must be >= 1");
    if (!(tol > 0.0) || !std::isfinite(tol)) throw ArgumentError("tol must be > 0");
    if (horizon < 2) throw ArgumentError("horizon must be >= 2 for a single stage");
    if (!(metric.bound() > 0.0)) throw ArgumentError("lazy metric needs a positive bound");
    spot_check(metric, std::min<std::size_t>(horizon, 24));

    ExtractionResult result;
    result.requested = count;
    result.indices.push_back(1);

    std::vector<std::size_t> pool(horizon - 1);
    for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i + 2;

    for (std::size_t stage = 0; stage < count; ++stage) {
        const std::size_t current = result.indices.back();
        // Bolzano-Weierstrass at desk scale: keep the fullest tol-wide cell.
        std::map<std::int64_t, std::vector<std::size_t>> cells;
        for (std::size_t n : pool) {
            const double v = metric.distance(current, n);
            if (v > metric.bound() * (1.0 + 1e-12))
                throw InvalidMetricError(metric.name() + ": distance exceeds the declared bound");
            cells[static_cast<std::int64_t>(std::floor(v / tol))].push_back(n);
        }
        std::vector<std::size_t>* fullest = nullptr;
        for (auto& [cell, members] : cells)
            if (!fullest || members.size() > fullest->size()) fullest = &members;
        pool = fullest ? std::move(*fullest) : std::vector<std::size_t>{};

        if (stage + 1 == count) break;
        // The next index must leave a nonempty tail behind it.
        if (pool.size() < 2) {
            result.shortfall = true;
            break;
        }
        result.indices.push_back(pool.front());
        pool.erase(pool.begin());
    }
    if (pool.empty()) {
        // The last row has no tail to converge on.
        result.indices.pop_back();
        result.shortfall = true;
    }
    result.tail_size = pool.size();

    for (std::size_t nk : result.indices) {
        double alpha = 0.0, osc = 0.0;
        if (!pool.empty()) {
            alpha = metric.distance(nk, pool.back());
            for (std::size_t n : pool) osc = std::max(osc, std::fabs(metric.distance(nk, n) - alpha));
        }
        result.limits_estimate.push_back(alpha);
        result.tail_oscillation.push_back(osc);
    }
    return result;
}

ViaCResult embed_via_c(const LazyMetric& metric, std::size_t count, const NormSpec& norm,
                       double tol, std::size_t horizon, const SolverConfig& config) {
    auto extraction = extract_convergent_subset(metric, count, tol, horizon);
    if (extraction.indices.empty())
        throw ArgumentError("extraction produced no indices within the horizon");
    auto subspace = truncate(metric, extraction.indices);
    if (subspace.size() >= 3) {
        const auto report = concavity_report(subspace, config.execution);
        if (report.gap <= default_validation_tolerance(subspace)) {
            const Triple t = *report.witness;
            std::ostringstream msg;
            msg << "extracted subset is not strongly concave: gap " << report.gap << " at ("
                << subspace.labels()[t.x] << ", " << subspace.labels()[t.y] << ", "
                << subspace.labels()[t.z] << ")";
            throw NotStronglyConcaveError(msg.str(), t.x, t.y, t.z);
        }
    }
    auto embedded = embed(subspace, norm, config);
    return {std::move(extraction), std::move(subspace), std::move(embedded)};
}

}  // namespace cembed
