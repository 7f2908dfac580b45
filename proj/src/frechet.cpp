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

#include "cembed/frechet.hpp"

#include "cembed/errors.hpp"
#include "cembed/kernels.hpp"

namespace cembed {

double max_pair_residual(const Matrix& points, const FiniteMetricSpace& space,
                         const NormSpec& norm, Execution exec) {
    if (points.rows() != space.size())
        throw ArgumentError("embedding has a different number of points than the space");
    if (points.cols() != norm.dimension())
        throw ArgumentError("embedding dimension does not match the norm dimension");
    return exec == Execution::serial
               ? kernels::serial::max_pair_residual(points, space.dist(), norm)
               : kernels::parallel::max_pair_residual(points, space.dist(), norm);
}

Embedding frechet_sigma(const FiniteMetricSpace& space, Execution exec) {
    Embedding e{space.dist(), NormSpec::sup(space.size()), 0.0};
    e.max_residual = max_pair_residual(e.points, space, e.norm, exec);
    return e;
}

Embedding frechet_translated(const FiniteMetricSpace& space, Execution exec) {
    const std::size_t n = space.size();
    Matrix points(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) points(i, k) = space(i, k) - space(0, k);
    Embedding e{std::move(points), NormSpec::sup(n), 0.0};
    e.max_residual = max_pair_residual(e.points, space, e.norm, exec);
    return e;
}

}  // namespace cembed
