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

#include "cembed/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cembed/errors.hpp"
#include "cembed/random.hpp"

namespace cembed {

std::string to_string(NormKind kind) {
    switch (kind) {
        case NormKind::sup: return "sup";
        case NormKind::weighted_sup: return "weighted_sup";
        case NormKind::sup_plus_l1: return "sup_plus_l1";
        case NormKind::custom: return "custom";
    }
    return "unknown";
}

NormSpec NormSpec::sup(std::size_t dimension) {
    if (dimension < 1) throw ArgumentError("norm dimension must be >= 1");
    NormSpec s;
    s.kind_ = NormKind::sup;
    s.dimension_ = dimension;
    s.description_ = "sup";
    return s;
}

NormSpec NormSpec::weighted_sup(std::vector<double> weights) {
    if (weights.empty()) throw ArgumentError("weighted_sup needs at least one weight");
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (!(weights[i] > 0.0) || !std::isfinite(weights[i])) {
            std::ostringstream msg;
            msg << "weights[" << i << "] = " << weights[i] << " is not a positive number";
            throw ArgumentError(msg.str());
        }
    }
    const double top = *std::max_element(weights.begin(), weights.end());
    for (double& w : weights) w /= top;
    NormSpec s;
    s.kind_ = NormKind::weighted_sup;
    s.dimension_ = weights.size();
    s.weights_ = std::move(weights);
    s.description_ = "weighted_sup";
    return s;
}

NormSpec NormSpec::sup_plus_l1(std::size_t dimension, double beta, bool rescale) {
    if (dimension < 1) throw ArgumentError("norm dimension must be >= 1");
    if (!(beta >= 0.0) || !std::isfinite(beta)) throw ArgumentError("beta must be >= 0");
    NormSpec s;
    s.kind_ = NormKind::sup_plus_l1;
    s.dimension_ = dimension;
    s.beta_ = beta;
    s.rescaled_ = rescale;
    s.scale_ = rescale ? 1.0 / (1.0 + beta * static_cast<double>(dimension)) : 1.0;
    s.description_ = "sup_plus_l1";
    return s;
}

NormSpec NormSpec::custom(std::size_t dimension, Evaluator evaluator, std::string description) {
    if (dimension < 1) throw ArgumentError("norm dimension must be >= 1");
    if (!evaluator) throw ArgumentError("custom norm needs an evaluator");
    NormSpec s;
    s.kind_ = NormKind::custom;
    s.dimension_ = dimension;
    s.evaluator_ = std::move(evaluator);
    s.description_ = std::move(description);
    return s;
}

NormSpec NormSpec::lp_scaled(std::size_t dimension, double p) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw ArgumentError("l_p exponent must be >= 1");
    const double scale = std::pow(static_cast<double>(dimension), -1.0 / p);
    auto s = custom(
        dimension,
        [p, scale](std::span<const double> v) {
            // Factor out the largest entry so large p cannot overflow.
            const double top = sup_norm(v);
            if (top == 0.0) return 0.0;
            double sum = 0.0;
            for (double x : v) sum += std::pow(std::fabs(x) / top, p);
            return scale * top * std::pow(sum, 1.0 / p);
        },
        "lp_scaled");
    s.lp_exponent_ = p;
    return s;
}

double NormSpec::operator()(std::span<const double> v) const {
    switch (kind_) {
        case NormKind::sup: return sup_norm(v);
        case NormKind::weighted_sup: {
            double m = 0.0;
            for (std::size_t i = 0; i < v.size(); ++i) m = std::max(m, weights_[i] * std::fabs(v[i]));
            return m;
        }
        case NormKind::sup_plus_l1: {
            double m = 0.0, l1 = 0.0;
            for (double x : v) {
                const double a = std::fabs(x);
                m = std::max(m, a);
                l1 += a;
            }
            return scale_ * (m + beta_ * l1);
        }
        case NormKind::custom: return evaluator_(v);
    }
    return 0.0;
}

double eval_norm(const NormSpec& spec, std::span<const double> v) {
    if (v.size() != spec.dimension()) {
        std::ostringstream msg;
        msg << "vector of length " << v.size() << " for a norm of dimension " << spec.dimension();
        throw ArgumentError(msg.str());
    }
    return spec(v);
}

namespace {

std::string format_vector(std::span<const double> v) {
    std::ostringstream out;
    out.precision(17);
    out << "(";
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << v[i];
    out << ")";
    return out.str();
}

[[noreturn]] void axiom_failure(const std::string& axiom, std::span<const double> v) {
    throw NormAxiomError("custom norm fails " + axiom + " at v = " + format_vector(v));
}

DistortionCertificate sample_certificate(const NormSpec& spec, std::size_t samples,
                                         std::uint64_t seed) {
    const std::size_t n = spec.dimension();
    Rng rng(seed);
    std::vector<double> v(n), w(n), sum(n), scaled(n);
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;

    auto draw = [&](std::vector<double>& x, std::size_t round) {
        // Mix dense directions, coordinate axes and sign vectors.
        switch (round % 4) {
            case 0:
            case 1:
                for (double& c : x) c = rng.uniform(-1.0, 1.0);
                break;
            case 2:
                std::fill(x.begin(), x.end(), 0.0);
                x[rng.index(n)] = rng.uniform(0.5, 2.0) * (rng.unit() < 0.5 ? -1.0 : 1.0);
                break;
            default:
                for (double& c : x) c = rng.unit() < 0.5 ? -1.0 : 1.0;
        }
    };

    const std::size_t rounds = std::max<std::size_t>(samples, 1);
    for (std::size_t r = 0; r < rounds; ++r) {
        draw(v, r);
        draw(w, r + 1);
        const double nv = spec(v);
        const double nw = spec(w);
        if (!(nv > 0.0) || !std::isfinite(nv)) axiom_failure("positivity", v);

        const double t = rng.uniform(-3.0, 3.0);
        for (std::size_t i = 0; i < n; ++i) scaled[i] = t * v[i];
        if (std::fabs(spec(scaled) - std::fabs(t) * nv) > 1e-9 * std::fabs(t) * nv)
            axiom_failure("homogeneity (t = " + std::to_string(t) + ")", v);

        for (std::size_t i = 0; i < n; ++i) sum[i] = v[i] + w[i];
        if (spec(sum) > (nv + nw) * (1.0 + 1e-12)) axiom_failure("the triangle inequality", sum);

        const double ratio = nv / sup_norm(v);
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    return {hi / lo - 1.0, lo, hi, false};
}

}  // namespace

DistortionCertificate certify_distortion(const NormSpec& spec, std::size_t samples,
                                         std::uint64_t seed) {
    switch (spec.kind()) {
        case NormKind::sup: return {0.0, 1.0, 1.0, true};
        case NormKind::weighted_sup: {
            const auto& w = spec.weights();
            const double lo = *std::min_element(w.begin(), w.end());
            const double hi = *std::max_element(w.begin(), w.end());
            return {hi / lo - 1.0, lo, hi, true};
        }
        case NormKind::sup_plus_l1: {
            // (1 + beta) ||x||_inf <= max + beta*l1 <= (1 + beta*n) ||x||_inf:
            // axis vectors attain the lower end, the all-ones vector the upper.
            const double beta = spec.beta();
            const double n = static_cast<double>(spec.dimension());
            const double lo = 1.0 + beta;
            const double hi = 1.0 + beta * n;
            const double delta = beta * (n - 1.0) / (1.0 + beta);
            if (spec.rescaled()) return {delta, lo / hi, 1.0, true};
            return {delta, lo, hi, true};
        }
        case NormKind::custom: return sample_certificate(spec, samples, seed);
    }
    return {};
}

NormSpec weighted_sup_with_delta(std::size_t dimension, double delta, std::uint64_t seed) {
    if (!(delta >= 0.0) || !std::isfinite(delta)) throw ArgumentError("delta must be >= 0");
    if (dimension < 2 || delta == 0.0) return NormSpec::sup(dimension);
    const double low = 1.0 / (1.0 + delta);
    Rng rng(seed);
    std::vector<double> w(dimension);
    for (double& x : w) x = rng.uniform(low, 1.0);
    const std::size_t top = rng.index(dimension);
    const std::size_t bottom = (top + 1 + rng.index(dimension - 1)) % dimension;
    w[top] = 1.0;
    w[bottom] = low;
    return NormSpec::weighted_sup(std::move(w));
}

NormSpec sup_plus_l1_with_delta(std::size_t dimension, double delta) {
    if (!(delta >= 0.0) || !std::isfinite(delta)) throw ArgumentError("delta must be >= 0");
    const double n = static_cast<double>(dimension);
    if (!(delta < n - 1.0) && delta > 0.0)
        throw ArgumentError("sup_plus_l1 in dimension " + std::to_string(dimension) +
                            " cannot reach delta = " + std::to_string(delta));
    // delta = beta (n - 1) / (1 + beta)  <=>  beta = delta / (n - 1 - delta)
    const double beta = delta == 0.0 ? 0.0 : delta / (n - 1.0 - delta);
    return NormSpec::sup_plus_l1(dimension, beta);
}

bool delta_admissible(double delta, double eta, double diameter) {
    if (!(eta > 0.0)) throw ArgumentError("eta must be > 0");
    if (!(diameter > 0.0)) throw ArgumentError("diameter must be > 0");
    if (!(delta >= 0.0)) throw ArgumentError("delta must be >= 0");
    return delta / (1.0 + delta) * (diameter + eta) <= eta;
}

double max_admissible_delta(double eta, double diameter) {
    if (!(eta > 0.0)) throw ArgumentError("eta must be > 0");
    if (!(diameter > 0.0)) throw ArgumentError("diameter must be > 0");
    return eta / diameter;
}

}  // namespace cembed
