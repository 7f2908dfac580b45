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

#include "cembed/execution.hpp"
#include "cembed/matrix.hpp"
#include "cembed/metric_space.hpp"
#include "cembed/norms.hpp"

namespace cembed {

/// Points in coordinate space together with the norm they are measured in.
struct Embedding {
    Matrix points;  ///< one row per point
    NormSpec norm;
    /// max over unordered pairs of | ||p_i - p_j|| - d(x_i, x_j) |
    double max_residual = 0.0;

    bool isometric(double tol) const noexcept { return max_residual <= tol; }
};

/// max over unordered pairs of | ||p_i - p_j|| - d(x_i, x_j) | under `norm`.
double max_pair_residual(const Matrix& points, const FiniteMetricSpace& space,
                         const NormSpec& norm, Execution exec = Execution::parallel);

/// x_i -> (d(x_i, x_1), ..., d(x_i, x_N)) under the sup norm. For a bounded
/// space this is already isometric; the sup over k is attained at k = j.
Embedding frechet_sigma(const FiniteMetricSpace& space, Execution exec = Execution::parallel);

/// frechet_sigma shifted so the first point sits at the origin.
Embedding frechet_translated(const FiniteMetricSpace& space,
                             Execution exec = Execution::parallel);

}  // namespace cembed
