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

#include "cembed/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <tuple>

#include <omp.h>

namespace cembed::kernels {
namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

bool triple_less(const Triple& a, const Triple& b) {
    return std::tie(a.x, a.y, a.z) < std::tie(b.x, b.y, b.z);
}

/// Keeps the smaller gap; on equal gaps keeps the lexicographically smaller triple.
void merge_gap(GapResult& best, double value, const Triple& t) {
    if (value < best.gap || (value == best.gap && best.witness && triple_less(t, *best.witness)) ||
        (value == best.gap && !best.witness)) {
        best.gap = value;
        best.witness = t;
    }
}

void sort_violations(std::vector<Violation>& v) {
    std::sort(v.begin(), v.end(), [](const Violation& a, const Violation& b) {
        return std::tie(a.i, a.j, a.k) < std::tie(b.i, b.j, b.k);
    });
}

/// Worst orientation of the triangle inequality through j for the pair i < k.
double triangle_excess(const Matrix& d, std::size_t i, std::size_t j, std::size_t k) {
    return std::max(d(i, k) - (d(i, j) + d(j, k)), d(k, i) - (d(k, j) + d(j, i)));
}

/// Fills diff with p_n(eps) - p_m(eps). The -d(x_1, x_k) translation cancels.
void pair_difference(const Matrix& d, const PerturbationState& eps, std::size_t n,
                     std::size_t m, std::span<double> diff) {
    const std::size_t size = d.rows();
    for (std::size_t k = 0; k < size; ++k) diff[k] = (d(n, k) - d(m, k)) + (eps(n, k) - eps(m, k));
}

PhiPair phi_for_pair(const Matrix& d, const NormSpec& norm, const PerturbationState& eps,
                     std::size_t m, std::size_t n, std::span<double> diff, double identity_tol,
                     std::optional<IdentityFailure>& failure) {
    pair_difference(d, eps, n, m, diff);
    double sup = 0.0;
    std::size_t argmax = 0;
    for (std::size_t k = 0; k < diff.size(); ++k) {
        const double a = std::fabs(diff[k]);
        if (a > sup) {
            sup = a;
            argmax = k;
        }
    }
    const double predicted = d(n, m) + eps(m, n);
    if (!failure && std::fabs(sup - predicted) > identity_tol)
        failure = IdentityFailure{n, m, sup > predicted ? argmax : n, sup, predicted};
    return {predicted - norm(diff), sup, predicted};
}

}  // namespace

namespace serial {

GapResult concavity_gap(const Matrix& d) {
    GapResult best{inf, std::nullopt};
    const std::size_t n = d.rows();
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z) {
                if (x == y || y == z || x == z) continue;
                const double value = d(x, y) + d(y, z) - d(x, z);
                if (value < best.gap) {
                    best.gap = value;
                    best.witness = Triple{x, y, z};
                }
            }
    return best;
}

std::vector<Violation> triangle_violations(const Matrix& d, double tol) {
    std::vector<Violation> out;
    const std::size_t n = d.rows();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = i + 1; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i || j == k) continue;
                const double excess = triangle_excess(d, i, j, k);
                if (excess > tol) out.push_back({ViolationKind::triangle, i, j, k, excess});
            }
    sort_violations(out);
    return out;
}

double max_pair_residual(const Matrix& points, const Matrix& d, const NormSpec& norm) {
    const std::size_t n = points.rows();
    std::vector<double> diff(points.cols());
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            for (std::size_t k = 0; k < diff.size(); ++k) diff[k] = points(i, k) - points(j, k);
            worst = std::max(worst, std::fabs(norm(diff) - d(i, j)));
        }
    return worst;
}

std::optional<IdentityFailure> evaluate_phi(const Matrix& d, const NormSpec& norm,
                                            const PerturbationState& state,
                                            std::span<PhiPair> out, double identity_tol) {
    std::optional<IdentityFailure> failure;
    std::vector<double> diff(d.rows());
    for (std::size_t m = 1; m < d.rows(); ++m)
        for (std::size_t n = 0; n < m; ++n)
            out[PerturbationState::pair_index(m, n)] =
                phi_for_pair(d, norm, state, m, n, diff, identity_tol, failure);
    return failure;
}

}  // namespace serial

namespace parallel {

GapResult concavity_gap(const Matrix& d) {
    GapResult best{inf, std::nullopt};
    const std::size_t n = d.rows();
    // The expression is symmetric in x and z, so unordered {x, z} suffice;
    // the smaller ordered representative of a minimizer always has x < z.
#pragma omp parallel if (n >= parallel_threshold)
    {
        GapResult local{inf, std::nullopt};
#pragma omp for schedule(dynamic) nowait
        for (std::size_t x = 0; x < n; ++x) {
            for (std::size_t y = 0; y < n; ++y) {
                if (y == x) continue;
                const double dxy = d(x, y);
                for (std::size_t z = x + 1; z < n; ++z) {
                    if (z == y) continue;
                    const double value = dxy + d(y, z) - d(x, z);
                    if (value < local.gap) {
                        local.gap = value;
                        local.witness = Triple{x, y, z};
                    }
                }
            }
        }
#pragma omp critical(cembed_gap_merge)
        if (local.witness) merge_gap(best, local.gap, *local.witness);
    }
    return best;
}

std::vector<Violation> triangle_violations(const Matrix& d, double tol) {
    std::vector<Violation> out;
    const std::size_t n = d.rows();
#pragma omp parallel if (n >= parallel_threshold)
    {
        std::vector<Violation> local;
#pragma omp for schedule(dynamic) nowait
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = i + 1; k < n; ++k)
                for (std::size_t j = 0; j < n; ++j) {
                    if (j == i || j == k) continue;
                    const double excess = triangle_excess(d, i, j, k);
                    if (excess > tol) local.push_back({ViolationKind::triangle, i, j, k, excess});
                }
#pragma omp critical(cembed_triangle_merge)
        out.insert(out.end(), local.begin(), local.end());
    }
    sort_violations(out);
    return out;
}

double max_pair_residual(const Matrix& points, const Matrix& d, const NormSpec& norm) {
    const std::size_t n = points.rows();
    double worst = 0.0;
    std::exception_ptr error;
#pragma omp parallel if (n >= parallel_threshold) reduction(max : worst)
    {
        std::vector<double> diff(points.cols());
#pragma omp for schedule(dynamic)
        for (std::size_t i = 0; i < n; ++i) {
            try {
                for (std::size_t j = i + 1; j < n; ++j) {
                    for (std::size_t k = 0; k < diff.size(); ++k)
                        diff[k] = points(i, k) - points(j, k);
                    worst = std::max(worst, std::fabs(norm(diff) - d(i, j)));
                }
            } catch (...) {
#pragma omp critical(cembed_residual_error)
                if (!error) error = std::current_exception();
            }
        }
    }
    if (error) std::rethrow_exception(error);
    return worst;
}

std::optional<IdentityFailure> evaluate_phi(const Matrix& d, const NormSpec& norm,
                                            const PerturbationState& state,
                                            std::span<PhiPair> out, double identity_tol) {
    const std::size_t size = d.rows();
    std::optional<IdentityFailure> first;
    std::exception_ptr error;
#pragma omp parallel if (size >= parallel_threshold)
    {
        std::vector<double> diff(size);
        std::optional<IdentityFailure> local;
#pragma omp for schedule(dynamic)
        for (std::size_t m = 1; m < size; ++m) {
            try {
                for (std::size_t n = 0; n < m; ++n) {
                    std::optional<IdentityFailure> pair_failure;
                    out[PerturbationState::pair_index(m, n)] =
                        phi_for_pair(d, norm, state, m, n, diff, identity_tol, pair_failure);
                    if (pair_failure &&
                        (!local || std::tie(pair_failure->m, pair_failure->n) <
                                       std::tie(local->m, local->n)))
                        local = pair_failure;
                }
            } catch (...) {
#pragma omp critical(cembed_phi_error)
                if (!error) error = std::current_exception();
            }
        }
#pragma omp critical(cembed_phi_merge)
        if (local && (!first || std::tie(local->m, local->n) < std::tie(first->m, first->n)))
            first = local;
    }
    if (error) std::rethrow_exception(error);
    return first;
}

}  // namespace parallel
}  // namespace cembed::kernels
