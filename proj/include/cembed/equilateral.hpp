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
#include <vector>

#include "cembed/fixed_point.hpp"
#include "cembed/matrix.hpp"
#include "cembed/norms.hpp"

namespace cembed {

/// n points pairwise at distance `lambda` under `norm`, built by embedding the
/// discrete n-point space (eta = 1) and scaling by lambda.
EmbedResult equilateral_set(std::size_t n, const NormSpec& norm, const SolverConfig& config = {},
                            double lambda = 1.0);

struct PairDeviation {
    std::size_t i, j;
    double distance;
};

struct EquilateralVerdict {
    std::vector<PairDeviation> offending;
    double max_deviation = 0.0;
    bool ok() const noexcept { return offending.empty(); }
};

EquilateralVerdict verify_equilateral(const Matrix& points, const NormSpec& norm, double lambda,
                                      double tol);

}  // namespace cembed
