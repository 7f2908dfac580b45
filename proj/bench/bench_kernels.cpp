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

// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <vector>

#include "cembed/kernels.hpp"
#include "cembed/metric_space.hpp"
#include "cembed/norms.hpp"
#include "cembed/perturbation.hpp"

namespace {

using namespace cembed;

const FiniteMetricSpace& space_of(std::size_t n) {
    static std::vector<std::pair<std::size_t, FiniteMetricSpace>> cache;
    for (const auto& [size, space] : cache)
        if (size == n) return space;
    cache.emplace_back(n, make_random_strongly_concave(n, 0.5, 42));
    return cache.back().second;
}

template <bool Parallel>
void BM_ConcavityGap(benchmark::State& state) {
    const auto& space = space_of(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto r = Parallel ? kernels::parallel::concavity_gap(space.dist())
                          : kernels::serial::concavity_gap(space.dist());
        benchmark::DoNotOptimize(r);
    }
}

template <bool Parallel>
void BM_TriangleViolations(benchmark::State& state) {
    const auto& space = space_of(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto r = Parallel ? kernels::parallel::triangle_violations(space.dist(), 0.0)
                          : kernels::serial::triangle_violations(space.dist(), 0.0);
        benchmark::DoNotOptimize(r);
    }
}

template <bool Parallel>
void BM_Phi(benchmark::State& state) {
    const auto& space = space_of(static_cast<std::size_t>(state.range(0)));
    const auto norm = weighted_sup_with_delta(space.size(), 0.05, 7);
    PerturbationState eps(space.size(), concavity_report(space).gap);
    std::vector<kernels::PhiPair> out(eps.pair_count());
    for (auto _ : state) {
        auto f = Parallel ? kernels::parallel::evaluate_phi(space.dist(), norm, eps, out, 1e-9)
                          : kernels::serial::evaluate_phi(space.dist(), norm, eps, out, 1e-9);
        benchmark::DoNotOptimize(f);
        benchmark::DoNotOptimize(out.data());
    }
}

}  // namespace

BENCHMARK(BM_ConcavityGap<false>)->Arg(64)->Arg(256)->Arg(512);
BENCHMARK(BM_ConcavityGap<true>)->Arg(64)->Arg(256)->Arg(512);
BENCHMARK(BM_TriangleViolations<false>)->Arg(64)->Arg(256)->Arg(512);
BENCHMARK(BM_TriangleViolations<true>)->Arg(64)->Arg(256)->Arg(512);
BENCHMARK(BM_Phi<false>)->Arg(32)->Arg(128)->Arg(256);
BENCHMARK(BM_Phi<true>)->Arg(32)->Arg(128)->Arg(256);

BENCHMARK_MAIN();
