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
#include <span>
#include <vector>

namespace cembed {

/// A point eps of the cube K = [0, eta]^I, I = {(m, n) : n < m}.
///
/// Indices are 0-based. Only pairs with n < m are stored, packed row by row
/// in the order (1,0), (2,0), (2,1), (3,0), ...; reading (k, l) with l >= k
/// yields 0.
class PerturbationState {
public:
    PerturbationState() = default;
    /// The origin of the cube for `points` points. Throws ArgumentError for eta <= 0.
    PerturbationState(std::size_t points, double eta);

    std::size_t points() const noexcept { return points_; }
    double eta() const noexcept { return eta_; }
    std::size_t pair_count() const noexcept { return values_.size(); }

    static constexpr std::size_t pair_index(std::size_t m, std::size_t n) noexcept {
        return m * (m - 1) / 2 + n;
    }
    static constexpr std::size_t pair_count_for(std::size_t points) noexcept {
        return points * (points - (points > 0 ? 1 : 0)) / 2;
    }

    /// eps_(k,l), or 0 when l >= k. Throws ArgumentError for indices >= points().
    double at(std::size_t k, std::size_t l) const;
    /// Unchecked read with the same convention.
    double operator()(std::size_t k, std::size_t l) const noexcept {
        return l < k ? values_[pair_index(k, l)] : 0.0;
    }

    /// Throws ArgumentError unless n < m < points() and 0 <= value <= eta.
    void set(std::size_t m, std::size_t n, double value);

    std::span<const double> values() const noexcept { return values_; }
    /// Replaces all values; each must lie in [0, eta].
    void assign(std::span<const double> values);

    /// max |eps - other| over the stored pairs.
    double distance_to(const PerturbationState& other) const;

    bool operator==(const PerturbationState&) const = default;

private:
    std::size_t points_ = 0;
    double eta_ = 1.0;
    std::vector<double> values_;
};

}  // namespace cembed
