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

// Hot loops over triples and pairs. Every kernel has a serial reference
// version and an OpenMP version; the public module functions dispatch on
// Execution, and tests check that both paths agree.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "cembed/matrix.hpp"
#include "cembed/metric_space.hpp"
#include "cembed/norms.hpp"
#include "cembed/perturbation.hpp"

namespace cembed::kernels {

struct GapResult {
    double gap;                    ///< +infinity when there is no triple
    std::optional<Triple> witness; ///< first minimizer in (x, y, z) lexicographic order
};

/// Per-pair output of a phi evaluation.
struct PhiPair {
    double phi;        ///< d + eps_(m,n) - ||p_n - p_m||
    double sup;        ///< ||p_n - p_m||_inf
    double predicted;  ///< d + eps_(m,n)
};

/// Identity failure found during a phi evaluation.
struct IdentityFailure {
    std::size_t n, m, coordinate;
    double value, predicted;
};

namespace serial {
GapResult concavity_gap(const Matrix& dist);
std::vector<Violation> triangle_violations(const Matrix& dist, double tol);
double max_pair_residual(const Matrix& points, const Matrix& dist, const NormSpec& norm);
std::optional<IdentityFailure> evaluate_phi(const Matrix& dist, const NormSpec& norm,
                                            const PerturbationState& state,
                                            std::span<PhiPair> out, double identity_tol);
}  // namespace serial

namespace parallel {
GapResult concavity_gap(const Matrix& dist);
std::vector<Violation> triangle_violations(const Matrix& dist, double tol);
double max_pair_residual(const Matrix& points, const Matrix& dist, const NormSpec& norm);
std::optional<IdentityFailure> evaluate_phi(const Matrix& dist, const NormSpec& norm,
                                            const PerturbationState& state,
                                            std::span<PhiPair> out, double identity_tol);
}  // namespace parallel

/// Below this many points the parallel kernels run on one thread.
inline constexpr std::size_t parallel_threshold = 24;

}  // namespace cembed::kernels
