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

#include <sstream>
#include <string>

#include "cembed/errors.hpp"
#include "cembed/io.hpp"
#include "support/fuzz.hpp"

using namespace cembed;
using cembed::io::json;

namespace {

std::string structural_message(const json& j) {
    try {
        io::norm_from_json(j);
    } catch (const StructuralError& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_CASE("space JSON round trip is exact") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto s = testing::fuzz_metric(2 + seed, seed);
        const auto back = io::space_from_json(json::parse(io::dump(io::to_json(s))));
        CHECK(back.dist() == s.dist());
        CHECK(back.labels() == s.labels());
    }
}

TEST_CASE("space JSON without labels") {
    const auto s = io::space_from_json(json::parse(R"({"dist": [[0, 2], [2, 0]]})"));
    CHECK(s.labels() == std::vector<std::string>{"0", "1"});
    CHECK(s(0, 1) == 2.0);
}

TEST_CASE("malformed space JSON") {
    CHECK_THROWS_AS(io::space_from_json(json::parse(R"({"d": []})")), StructuralError);
    CHECK_THROWS_AS(io::space_from_json(json::parse(R"({"dist": [[0, "x"], [1, 0]]})")), StructuralError);
    CHECK_THROWS_AS(io::space_from_json(json::parse(R"({"dist": [[0, 1, 2], [1, 0]]})")), StructuralError);
    CHECK_THROWS_AS(io::space_from_json(json::parse(R"({"dist": [[0, -1], [-1, 0]]})")), StructuralError);
}

TEST_CASE("CSV input") {
    SUBCASE("with a header row") {
        std::istringstream in("a,b,c\n0,1,1\n1,0,1\n1,1,0\n");
        const auto s = io::space_from_csv(in);
        CHECK(s.labels() == std::vector<std::string>{"a", "b", "c"});
        CHECK(s.dist() == make_discrete(3).dist());
    }
    SUBCASE("without a header") {
        std::istringstream in("0,2.5\n2.5,0\n");
        CHECK(io::space_from_csv(in)(1, 0) == 2.5);
    }
    SUBCASE("a non-numeric body row") {
        std::istringstream in("0,1\nx,0\n");
        CHECK_THROWS_AS(io::space_from_csv(in), StructuralError);
    }
    SUBCASE("empty") {
        std::istringstream in("");
        CHECK_THROWS_AS(io::space_from_csv(in), StructuralError);
    }
}

TEST_CASE("norm JSON round trip") {
    const std::vector<NormSpec> norms{NormSpec::sup(3), NormSpec::weighted_sup({0.5, 1, 0.75}),
                                      NormSpec::sup_plus_l1(4, 0.01),
                                      NormSpec::sup_plus_l1(4, 0.01, false),
                                      NormSpec::lp_scaled(5, 8.0)};
    for (const auto& n : norms) {
        const auto back = io::norm_from_json(json::parse(io::dump(io::to_json(n))));
        CHECK(back.kind() == n.kind());
        CHECK(back.dimension() == n.dimension());
        const std::vector<double> v{0.3, -1.2, 0.7, 2.0, -0.1};
        const std::span<const double> x(v.data(), n.dimension());
        CHECK(back(x) == n(x));
    }
}

TEST_CASE("norm JSON errors name the field") {
    CHECK(structural_message(json::parse(R"({"dimension": 3})")).find("'kind'") != std::string::npos);
    CHECK(structural_message(json::parse(R"({"kind": "sup"})")).find("'dimension'") != std::string::npos);
    CHECK(structural_message(json::parse(R"({"kind": "weighted_sup", "dimension": 2, "weights": [1, 1, 1]})"))
              .find("'weights'") != std::string::npos);
    CHECK(structural_message(json::parse(R"({"kind": "sup_plus_l1", "dimension": 2})"))
              .find("'beta'") != std::string::npos);
    CHECK(structural_message(json::parse(R"({"kind": "custom", "dimension": 2})")).find("'p'") !=
          std::string::npos);
    CHECK(structural_message(json::parse(R"({"kind": "sup", "dimension": 0})")).find("'dimension'") !=
          std::string::npos);
    CHECK_FALSE(structural_message(json::parse(R"({"kind": "l2", "dimension": 2})")).empty());
    CHECK_FALSE(structural_message(json::parse(R"({"kind": "weighted_sup", "weights": [1, -1]})")).empty());
}

TEST_CASE("report serialization") {
    const auto two = io::to_json(concavity_report(make_discrete(2)));
    CHECK(two["gap"].is_null());
    CHECK(two["gap_is_infinite"] == true);
    CHECK(two["witness_triple"].is_null());
    const auto three = io::to_json(concavity_report(make_discrete(3)));
    CHECK(three["gap"] == 1.0);
    CHECK(three["separation"] == 1.0);
    CHECK(three["witness_triple"].size() == 3);

    FiniteMetricSpace bad(Matrix{{0, 1, 3}, {1, 0, 1}, {3, 1, 0}});
    const auto v = io::to_json(validate(bad));
    CHECK(v["ok"] == false);
    CHECK(v["violations"][0]["kind"] == "triangle");
    CHECK(v["violations"][0]["excess"] == 1.0);
}

TEST_CASE("embedding round trip preserves max_residual") {
    const auto s = make_random_strongly_concave(8, 0.5, 1);
    const auto norm = weighted_sup_with_delta(8, 0.05, 1);
    const auto r = embed(s, norm);
    const auto j = json::parse(io::dump(io::to_json(r.embedding)));
    const auto points = io::points_from_json(j);
    CHECK(points == r.embedding.points);
    const auto back_norm = io::norm_from_json(j["norm"]);
    CHECK(max_pair_residual(points, s, back_norm) == r.embedding.max_residual);
    CHECK(j["max_residual"] == r.embedding.max_residual);
}

TEST_CASE("state and diagnostics serialization") {
    PerturbationState st(3, 0.5);
    st.set(2, 1, 0.25);
    const auto j = io::to_json(st);
    CHECK(j["eta"] == 0.5);
    CHECK(j["eps"].size() == 3);
    CHECK(j["eps"][2] == json{2, 1, 0.25});
    const auto d = io::to_json(solve_fixed_point(make_discrete(3), NormSpec::sup(3)).diagnostics);
    CHECK(d["iterations"] == 1);
    CHECK(d["converged"] == true);
}
