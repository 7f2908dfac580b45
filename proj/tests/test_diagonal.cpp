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

#include <algorithm>
#include <cmath>

#include "cembed/diagonal.hpp"
#include "cembed/errors.hpp"

using namespace cembed;

namespace {

// Recomputes the oscillation of each extracted row over the indices that come
// after it, straight from the distance oracle.
double observed_oscillation(const LazyMetric& m, const ExtractionResult& r, std::size_t k) {
    double lo = INFINITY, hi = -INFINITY;
    for (std::size_t l = k + 1; l < r.indices.size(); ++l) {
        const double v = m.distance(r.indices[k], r.indices[l]);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return lo > hi ? 0.0 : hi - lo;
}

}  // namespace

TEST_CASE("lazy families") {
    const auto h = make_lazy_harmonic();
    CHECK(h->distance(3, 3) == 0.0);
    CHECK(h->distance(1, 2) == 1.5);
    CHECK(h->distance(2, 4) == h->distance(4, 2));
    CHECK(h->bound() == 2.0);
    const auto t = make_lazy_two_cluster();
    CHECK(t->distance(1, 3) == 1.0);
    CHECK(t->distance(2, 4) == 1.0);
    CHECK(t->distance(1, 2) == 1.5);
    CHECK(t->point_label(3) == "a3");
    CHECK(t->point_label(4) == "b4");
    CHECK(make_lazy_equilateral(2.0)->distance(5, 9) == 2.0);
    CHECK(make_lazy_discrete()->distance(5, 9) == 1.0);
    CHECK_THROWS_AS(make_lazy_family("nope"), ArgumentError);
    CHECK_THROWS_AS(make_lazy_two_cluster(1.0, 2.5), ArgumentError);
    CHECK_THROWS_AS(make_lazy_equilateral(0.0), ArgumentError);
}

TEST_CASE("truncate") {
    const auto s = truncate(*make_lazy_harmonic(), {1, 2, 4});
    CHECK(s.size() == 3);
    CHECK(s(0, 1) == 1.5);
    CHECK(s(1, 2) == 1.25);
    CHECK(s(0, 2) == 1.75);
    CHECK(s.labels()[2] == "x4");
}

TEST_CASE("extraction on an equilateral family takes consecutive indices") {
    const auto m = make_lazy_equilateral(1.0);
    const auto r = extract_convergent_subset(*m, 5, 1e-3, 100);
    CHECK(r.indices == std::vector<std::size_t>{1, 2, 3, 4, 5});
    for (double a : r.limits_estimate) CHECK(a == 1.0);
    CHECK_FALSE(r.shortfall);
}

TEST_CASE("extraction on the harmonic family") {
    const auto m = make_lazy_harmonic();
    const auto r = extract_convergent_subset(*m, 10, 1e-3, 10000);
    REQUIRE(r.indices.size() == 10);
    CHECK(r.indices.front() == 1);
    CHECK(std::is_sorted(r.indices.begin(), r.indices.end()));
    CHECK(std::adjacent_find(r.indices.begin(), r.indices.end()) == r.indices.end());
    for (std::size_t k = 0; k < 10; ++k) {
        CHECK(std::fabs(r.limits_estimate[k] - (1.0 + 1.0 / double(r.indices[k]))) <= 1e-3);
        CHECK(r.tail_oscillation[k] < 1e-3);
        CHECK(observed_oscillation(*m, r, k) < 1e-3);
    }
}

TEST_CASE("extraction on two clusters keeps a single-type tail") {
    const auto m = make_lazy_two_cluster();
    const auto r = extract_convergent_subset(*m, 6, 1e-3, 1000);
    REQUIRE(r.indices.size() == 6);
    CHECK(r.indices.front() == 1);
    for (std::size_t k = 1; k < r.indices.size(); ++k) CHECK(r.indices[k] % 2 == 0);
    CHECK(r.limits_estimate[0] == 1.5);
    for (std::size_t k = 1; k < r.indices.size(); ++k) CHECK(r.limits_estimate[k] == 1.0);
}

TEST_CASE("extraction reports a shortfall") {
    const auto r = extract_convergent_subset(*make_lazy_discrete(), 10, 1e-3, 5);
    // Index 5 would have no tail left behind it, so only four survive.
    CHECK(r.shortfall);
    CHECK(r.indices.size() == 4);
    CHECK(r.requested == 10);
}

TEST_CASE("extraction arguments") {
    const auto m = make_lazy_discrete();
    CHECK_THROWS_AS(extract_convergent_subset(*m, 0, 1e-3, 10), ArgumentError);
    CHECK_THROWS_AS(extract_convergent_subset(*m, 3, 0.0, 10), ArgumentError);
    CHECK_THROWS_AS(extract_convergent_subset(*m, 3, 1e-3, 1), ArgumentError);
}

TEST_CASE("embed_via_c") {
    SUBCASE("harmonic family under a weighted sup norm") {
        const auto norm = weighted_sup_with_delta(10, 0.05, 7);
        const auto r = embed_via_c(*make_lazy_harmonic(), 10, norm, 1e-3, 10000);
        CHECK(r.subspace.size() == 10);
        REQUIRE(r.embedded.diagnostics.converged);
        CHECK(r.embedded.embedding.max_residual <= 1e-9);
    }
    SUBCASE("two clusters") {
        const auto r = embed_via_c(*make_lazy_two_cluster(), 6, NormSpec::sup(6), 1e-3, 1000);
        CHECK(r.embedded.embedding.max_residual == 0.0);
    }
    SUBCASE("a collinear family is rejected") {
        FunctionMetric line([](std::size_t i, std::size_t j) { return std::fabs(double(i) - double(j)); },
                            1e9, "line");
        CHECK_THROWS_AS(embed_via_c(line, 4, NormSpec::sup(4), 100.0, 50), NotStronglyConcaveError);
    }
}
