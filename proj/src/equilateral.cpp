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

#include "cembed/equilateral.hpp"

#include <cmath>
#include <vector>

#include "cembed/errors.hpp"
#include "cembed/metric_space.hpp"

namespace cembed {

EmbedResult equilateral_set(std::size_t n, const NormSpec& norm, const SolverConfig& config,
                            double lambda) {
    if (n < 2) throw ArgumentError("an equilateral set needs at least two points");
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ArgumentError("lambda must be > 0");
    auto result = embed(make_discrete(n), norm, config);
    if (lambda != 1.0) {
        Matrix& p = result.embedding.points;
        for (std::size_t i = 0; i < p.rows(); ++i)
            for (double& x : p.row(i)) x *= lambda;
        result.embedding.max_residual *= lambda;
    }
    return result;
}

EquilateralVerdict verify_equilateral(const Matrix& points, const NormSpec& norm, double lambda,
                                      double tol) {
    if (points.rows() < 2) throw ArgumentError("verify_equilateral needs at least two points");
    if (points.cols() != norm.dimension())
        throw ArgumentError("point dimension does not match the norm dimension");
    EquilateralVerdict verdict;
    std::vector<double> diff(points.cols());
    for (std::size_t i = 0; i < points.rows(); ++i)
        for (std::size_t j = i + 1; j < points.rows(); ++j) {
            for (std::size_t k = 0; k < diff.size(); ++k) diff[k] = points(i, k) - points(j, k);
            const double d = norm(diff);
            const double dev = std::fabs(d - lambda);
            verdict.max_deviation = std::max(verdict.max_deviation, dev);
            if (dev > tol) verdict.offending.push_back({i, j, d});
        }
    return verdict;
}

}  // namespace cembed
