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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cembed/errors.hpp"
#include "cembed/norms.hpp"
#include "support/oracles.hpp"

using namespace cembed;
using cembed::testing::sample_frames;

namespace {

cembed::testing::Norm as_oracle(const NormSpec& spec) {
    return [spec](const std::vector<double>& v) { return spec(v); };
}

std::vector<NormSpec> norm_zoo(std::size_t n) {
    return {NormSpec::sup(n),
            weighted_sup_with_delta(n, 0.2, 4),
            NormSpec::sup_plus_l1(n, 0.05),
            NormSpec::sup_plus_l1(n, 0.05, false),
            NormSpec::lp_scaled(n, 8.0)};
}

}  // namespace

TEST_CASE("eval_norm") {
    const std::vector<double> v{1, -3, 2};
    CHECK(eval_norm(NormSpec::sup(3), v) == 3.0);
    CHECK(eval_norm(NormSpec::weighted_sup({1, 0.5}), std::vector<double>{1, 4}) == 2.0);
    CHECK(eval_norm(NormSpec::sup_plus_l1(2, 0.1, false), std::vector<double>{1, 1}) ==
          doctest::Approx(1.2).epsilon(1e-15));
    CHECK(eval_norm(NormSpec::sup_plus_l1(2, 0.1), std::vector<double>{1, 1}) ==
          doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(eval_norm(NormSpec::sup(2), v), ArgumentError);
}

TEST_CASE("weighted_sup weights are normalized to a unit maximum") {
    const auto w = NormSpec::weighted_sup({2.0, 1.0});
    CHECK(w.weights() == std::vector<double>{1.0, 0.5});
    CHECK_THROWS_AS(NormSpec::weighted_sup({1.0, 0.0}), ArgumentError);
    CHECK_THROWS_AS(NormSpec::weighted_sup({}), ArgumentError);
    CHECK_THROWS_AS(NormSpec::sup_plus_l1(3, -0.1), ArgumentError);
    CHECK_THROWS_AS(NormSpec::lp_scaled(3, 0.5), ArgumentError);
}

TEST_CASE("certify_distortion") {
    SUBCASE("sup norm has delta 0") {
        for (std::size_t n : {1u, 5u, 40u}) {
            const auto c = certify_distortion(NormSpec::sup(n));
            CHECK(c.delta == 0.0);
            CHECK(c.certified);
        }
    }
    SUBCASE("weighted_sup (1, 1, 0.9)") {
        const auto spec = NormSpec::weighted_sup({1, 1, 0.9});
        const auto c = certify_distortion(spec);
        CHECK(c.delta == doctest::Approx(1.0 / 0.9 - 1.0).epsilon(1e-15));
        CHECK(c.lower_frame == 0.9);
        CHECK(c.upper_frame == 1.0);
        const auto f = sample_frames(3, as_oracle(spec), 20000, 1);
        CHECK(f.lower == doctest::Approx(0.9).epsilon(1e-15));
        CHECK(f.upper == doctest::Approx(1.0).epsilon(1e-15));
    }
    SUBCASE("rescaled sup_plus_l1, beta = 0.01, n = 10") {
        const auto spec = NormSpec::sup_plus_l1(10, 0.01);
        const auto c = certify_distortion(spec);
        // Frames: axis vectors give 1.01/1.1, the all-ones vector gives 1.
        CHECK(c.upper_frame == 1.0);
        CHECK(c.lower_frame == doctest::Approx(1.01 / 1.1).epsilon(1e-15));
        CHECK(c.delta == doctest::Approx(0.09 / 1.01).epsilon(1e-14));
        CHECK(c.delta <= 0.1);  // never looser than the beta * n bound
        const auto f = sample_frames(10, as_oracle(spec), 20000, 2);
        CHECK(f.upper / f.lower - 1.0 == doctest::Approx(c.delta).epsilon(1e-12));
    }
    SUBCASE("custom norms are sampled and uncertified") {
        const auto spec = NormSpec::lp_scaled(4, 6.0);
        const auto c = certify_distortion(spec, 5000, 3);
        CHECK_FALSE(c.certified);
        // Exact frames for ||x||_p / n^(1/p): n^(-1/p) on axes, 1 on the diagonal.
        CHECK(c.upper_frame == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(c.lower_frame == doctest::Approx(std::pow(4.0, -1.0 / 6.0)).epsilon(1e-12));
        CHECK(c.delta <= std::pow(4.0, 1.0 / 6.0) - 1.0 + 1e-12);
    }
    SUBCASE("a custom evaluator breaking the triangle inequality is rejected") {
        auto bad = NormSpec::custom(3, [](std::span<const double> v) {
            double s = 0.0;
            for (double x : v) s += std::sqrt(std::fabs(x));
            return s * s;
        });
        CHECK_THROWS_AS(certify_distortion(bad, 2000), NormAxiomError);
    }
    SUBCASE("a custom evaluator that is not homogeneous is rejected") {
        auto bad = NormSpec::custom(2, [](std::span<const double> v) { return sup_norm(v) + 1.0; });
        CHECK_THROWS_AS(certify_distortion(bad, 100), NormAxiomError);
    }
}

TEST_CASE("norm_with_delta helpers hit their target") {
    for (double delta : {0.0, 0.01, 0.05, 0.3}) {
        CHECK(certify_distortion(weighted_sup_with_delta(12, delta, 5)).delta ==
              doctest::Approx(delta).epsilon(1e-14));
        CHECK(certify_distortion(sup_plus_l1_with_delta(12, delta)).delta ==
              doctest::Approx(delta).epsilon(1e-14));
    }
    CHECK_THROWS_AS(sup_plus_l1_with_delta(3, 2.5), ArgumentError);
}

TEST_CASE("delta_admissible") {
    CHECK(delta_admissible(0.0, 0.3, 5.0));
    CHECK(delta_admissible(1.0, 1.0, 1.0));   // 1/2 * 2 = 1 <= 1
    CHECK_FALSE(delta_admissible(1.5, 1.0, 1.0));  // 0.6 * 2 = 1.2 > 1
    CHECK(max_admissible_delta(1.0, 1.0) == 1.0);
    CHECK_THROWS_AS(delta_admissible(0.1, 0.0, 1.0), ArgumentError);
    CHECK_THROWS_AS(delta_admissible(0.1, 1.0, 0.0), ArgumentError);
    CHECK_THROWS_AS(delta_admissible(-0.1, 1.0, 1.0), ArgumentError);
}

TEST_CASE("property: frame soundness on 10^4 random vectors") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (const auto& spec : norm_zoo(7)) {
        const auto c = certify_distortion(spec);
        CHECK(c.upper_frame / c.lower_frame <= (1.0 + c.delta) * (1.0 + 1e-14));
        std::vector<double> v(7);
        for (int i = 0; i < 10000; ++i) {
            for (double& x : v) x = u(rng);
            const double s = sup_norm(v);
            const double value = spec(v);
            CHECK(c.lower_frame * s <= value * (1.0 + 1e-12));
            CHECK(value <= c.upper_frame * s * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("property: norm axioms on random vectors") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (const auto& spec : norm_zoo(6)) {
        std::vector<double> v(6), w(6), sum(6), scaled(6);
        for (int i = 0; i < 2000; ++i) {
            for (double& x : v) x = u(rng);
            for (double& x : w) x = u(rng);
            const double t = u(rng);
            for (std::size_t k = 0; k < 6; ++k) {
                sum[k] = v[k] + w[k];
                scaled[k] = t * v[k];
            }
            CHECK(spec(sum) <= (spec(v) + spec(w)) * (1.0 + 1e-12));
            CHECK(spec(scaled) == doctest::Approx(std::fabs(t) * spec(v)).epsilon(1e-12));
            CHECK(spec(v) > 0.0);
        }
    }
}
