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

// Independent reference computations. None of these call into the kernels or
// the solver; they recompute from the definitions with plain loops.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "cembed/matrix.hpp"

namespace cembed::testing {

/// min over ordered pairwise-distinct triples of d(x,y)+d(y,z)-d(x,z).
inline double brute_force_gap(const Matrix& d) {
    double best = std::numeric_limits<double>::infinity();
    const std::size_t n = d.rows();
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z)
                if (x != y && y != z && x != z) best = std::min(best, d(x, y) + d(y, z) - d(x, z));
    return best;
}

inline double chebyshev(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::fabs(a[k] - b[k]));
    return m;
}

/// Perturbed point p_n(eps) straight from its definition; eps is a callable
/// (m, n) -> eps_(m,n) for n < m.
inline std::vector<double> oracle_point(const Matrix& d, std::size_t n,
                                        const std::function<double(std::size_t, std::size_t)>& eps) {
    std::vector<double> p(d.rows());
    for (std::size_t k = 0; k < d.rows(); ++k)
        p[k] = d(n, k) - d(0, k) + (k < n ? eps(n, k) : 0.0);
    return p;
}

using Norm = std::function<double(const std::vector<double>&)>;

/// phi for a three-point space with eps = (e10, e20, e21).
inline std::array<double, 3> oracle_phi3(const Matrix& d, const Norm& norm,
                                         const std::array<double, 3>& e) {
    auto eps = [&](std::size_t m, std::size_t n) {
        if (m == 1 && n == 0) return e[0];
        if (m == 2 && n == 0) return e[1];
        return e[2];
    };
    const auto p0 = oracle_point(d, 0, eps);
    const auto p1 = oracle_point(d, 1, eps);
    const auto p2 = oracle_point(d, 2, eps);
    auto diff = [](const std::vector<double>& a, const std::vector<double>& b) {
        std::vector<double> r(a.size());
        for (std::size_t k = 0; k < a.size(); ++k) r[k] = a[k] - b[k];
        return r;
    };
    return {d(0, 1) + e[0] - norm(diff(p0, p1)), d(0, 2) + e[1] - norm(diff(p0, p2)),
            d(1, 2) + e[2] - norm(diff(p1, p2))};
}

/// Grid-refinement search for a fixed point of phi on [0, eta]^3.
///
/// Each level evaluates an 11^3 grid on the current box, keeps the point of
/// least residual max |phi(e) - e| (ties: smallest sup norm, then
/// lexicographic, so among a continuum of fixed points the one nearest the
/// origin wins) and shrinks the box around it.
inline std::array<double, 3> grid_fixed_point(const Matrix& d, const Norm& norm, double eta,
                                              double final_width = 1e-10) {
    std::array<double, 3> lo{0.0, 0.0, 0.0}, hi{eta, eta, eta};
    std::array<double, 3> best{0.0, 0.0, 0.0};
    constexpr int steps = 10;
    while (hi[0] - lo[0] > final_width || hi[1] - lo[1] > final_width ||
           hi[2] - lo[2] > final_width) {
        double best_r = std::numeric_limits<double>::infinity();
        double best_size = std::numeric_limits<double>::infinity();
        std::array<double, 3> h;
        for (int c = 0; c < 3; ++c) h[c] = (hi[c] - lo[c]) / steps;
        for (int i = 0; i <= steps; ++i)
            for (int j = 0; j <= steps; ++j)
                for (int k = 0; k <= steps; ++k) {
                    const std::array<double, 3> e{lo[0] + i * h[0], lo[1] + j * h[1],
                                                  lo[2] + k * h[2]};
                    const auto phi = oracle_phi3(d, norm, e);
                    double r = 0.0;
                    for (int c = 0; c < 3; ++c) r = std::max(r, std::fabs(phi[c] - e[c]));
                    const double size = std::max({e[0], e[1], e[2]});
                    // Residuals within rounding count as ties.
                    if (r < best_r - 1e-15 || (std::fabs(r - best_r) <= 1e-15 && size < best_size)) {
                        best_r = r;
                        best_size = size;
                        best = e;
                    }
                }
        for (int c = 0; c < 3; ++c) {
            lo[c] = std::max(0.0, best[c] - 2.0 * h[c]);
            hi[c] = std::min(eta, best[c] + 2.0 * h[c]);
        }
    }
    return best;
}

/// Largest and smallest ||v|| / ||v||_inf over random dense and axis vectors.
struct SampledFrames {
    double lower = std::numeric_limits<double>::infinity();
    double upper = 0.0;
};

inline SampledFrames sample_frames(std::size_t dim, const Norm& norm, std::size_t samples,
                                   std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    SampledFrames f;
    std::vector<double> v(dim);
    auto record = [&]() {
        double s = 0.0;
        for (double x : v) s = std::max(s, std::fabs(x));
        if (s == 0.0) return;
        const double r = norm(v) / s;
        f.lower = std::min(f.lower, r);
        f.upper = std::max(f.upper, r);
    };
    for (std::size_t i = 0; i < samples; ++i) {
        for (double& x : v) x = u(rng);
        record();
    }
    for (std::size_t k = 0; k < dim; ++k) {
        std::fill(v.begin(), v.end(), 0.0);
        v[k] = 1.0;
        record();
    }
    std::fill(v.begin(), v.end(), 1.0);
    record();
    return f;
}

}  // namespace cembed::testing
