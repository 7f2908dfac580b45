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
#include <stdexcept>
#include <string>

namespace cembed {

/// Bad arguments: out-of-range parameters, dimension mismatches, etc.
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Input that cannot be interpreted as a distance matrix at all
/// (non-square, NaN, negative entries, malformed files).
class StructuralError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A space that fails the metric axioms where an operation requires a metric.
class InvalidMetricError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The space is not strongly concave (gap too small) for the requested eta.
class NotStronglyConcaveError : public std::runtime_error {
public:
    NotStronglyConcaveError(const std::string& what, std::size_t x, std::size_t y,
                            std::size_t z)
        : std::runtime_error(what), x_(x), y_(y), z_(z) {}

    std::size_t x() const noexcept { return x_; }
    std::size_t y() const noexcept { return y_; }
    std::size_t z() const noexcept { return z_; }

private:
    std::size_t x_, y_, z_;
};

/// The supremum identity ||p_n - p_m||_inf = d(x_n,x_m) + eps_(m,n) failed.
/// `coordinate()` is the coordinate whose gap exceeds the predicted supremum.
class InvariantError : public std::logic_error {
public:
    InvariantError(const std::string& what, std::size_t n, std::size_t m,
                   std::size_t coordinate)
        : std::logic_error(what), n_(n), m_(m), coordinate_(coordinate) {}

    std::size_t n() const noexcept { return n_; }
    std::size_t m() const noexcept { return m_; }
    std::size_t coordinate() const noexcept { return coordinate_; }

private:
    std::size_t n_, m_, coordinate_;
};

/// A phi coordinate left the cube [0, eta].
class KInvarianceError : public std::runtime_error {
public:
    KInvarianceError(const std::string& what, std::size_t m, std::size_t n, double value)
        : std::runtime_error(what), m_(m), n_(n), value_(value) {}

    std::size_t m() const noexcept { return m_; }
    std::size_t n() const noexcept { return n_; }
    double value() const noexcept { return value_; }

private:
    std::size_t m_, n_;
    double value_;
};

/// A user-supplied norm evaluator violated a norm axiom on a sample vector.
class NormAxiomError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace cembed
