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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cembed {

enum class NormKind { sup, weighted_sup, sup_plus_l1, custom };

std::string to_string(NormKind kind);

/// A concrete norm on n-dimensional coordinate space.
///
/// Parametric kinds follow the convention ||x|| <= ||x||_inf <= (1+delta)||x||:
/// weighted_sup weights are divided by their maximum, and sup_plus_l1 is
/// divided by 1 + beta*n unless constructed with rescale = false.
class NormSpec {
public:
    using Evaluator = std::function<double(std::span<const double>)>;

    static NormSpec sup(std::size_t dimension);
    static NormSpec weighted_sup(std::vector<double> weights);
    static NormSpec sup_plus_l1(std::size_t dimension, double beta, bool rescale = true);
    /// Arbitrary evaluator. It must be safe to call concurrently.
    static NormSpec custom(std::size_t dimension, Evaluator evaluator,
                           std::string description = "custom");
    /// The custom family reachable from JSON: ||x||_p / n^(1/p), p >= 1.
    static NormSpec lp_scaled(std::size_t dimension, double p);

    NormKind kind() const noexcept { return kind_; }
    std::size_t dimension() const noexcept { return dimension_; }
    const std::vector<double>& weights() const noexcept { return weights_; }
    double beta() const noexcept { return beta_; }
    bool rescaled() const noexcept { return rescaled_; }
    std::optional<double> lp_exponent() const noexcept { return lp_exponent_; }
    const std::string& description() const noexcept { return description_; }

    /// No dimension check; see eval_norm().
    double operator()(std::span<const double> v) const;

private:
    NormKind kind_ = NormKind::sup;
    std::size_t dimension_ = 0;
    std::vector<double> weights_;
    double beta_ = 0.0;
    double scale_ = 1.0;
    bool rescaled_ = true;
    std::optional<double> lp_exponent_;
    std::string description_;
    Evaluator evaluator_;
};

/// ||v|| under `spec`; throws ArgumentError on a dimension mismatch.
double eval_norm(const NormSpec& spec, std::span<const double> v);

inline double sup_norm(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

/// Frames a, b with a||x||_inf <= ||x|| <= b||x||_inf and delta = b/a - 1.
struct DistortionCertificate {
    double delta = 0.0;
    double lower_frame = 1.0;
    double upper_frame = 1.0;
    /// Analytic for parametric kinds; custom norms get a sampled estimate
    /// (delta is then only a lower bound) and certified = false.
    bool certified = true;
};

/// Throws NormAxiomError when a custom evaluator fails a norm axiom on a sample.
DistortionCertificate certify_distortion(const NormSpec& spec, std::size_t samples = 10000,
                                         std::uint64_t seed = 1);

/// Weighted sup norm with distortion exactly `delta`: weights drawn from
/// [1/(1+delta), 1] with one weight at each end (sup norm when dimension is 1).
NormSpec weighted_sup_with_delta(std::size_t dimension, double delta, std::uint64_t seed);

/// Rescaled sup_plus_l1 whose certified distortion is `delta`.
/// Requires delta < dimension - 1.
NormSpec sup_plus_l1_with_delta(std::size_t dimension, double delta);

/// Sufficient condition for phi to map the cube [0,eta]^I into itself:
/// delta/(1+delta) * (diameter + eta) <= eta.
bool delta_admissible(double delta, double eta, double diameter);

/// The largest delta accepted by delta_admissible(), i.e. eta / diameter.
double max_admissible_delta(double eta, double diameter);

}  // namespace cembed
