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

#include "cembed/fixed_point.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cembed/errors.hpp"
#include "cembed/kernels.hpp"

namespace cembed {

PerturbationState::PerturbationState(std::size_t points, double eta)
    : points_(points), eta_(eta), values_(pair_count_for(points), 0.0) {
    if (!(eta > 0.0) || !std::isfinite(eta)) throw ArgumentError("eta must be a positive number");
}

double PerturbationState::at(std::size_t k, std::size_t l) const {
    if (k >= points_ || l >= points_) {
        std::ostringstream msg;
        msg << "perturbation index (" << k << ", " << l << ") out of range for " << points_
            << " points";
        throw ArgumentError(msg.str());
    }
    return (*this)(k, l);
}

void PerturbationState::set(std::size_t m, std::size_t n, double value) {
    if (!(n < m && m < points_)) {
        std::ostringstream msg;
        msg << "perturbation pair (" << m << ", " << n << ") needs n < m < " << points_;
        throw ArgumentError(msg.str());
    }
    if (!(value >= 0.0 && value <= eta_)) {
        std::ostringstream msg;
        msg << "eps(" << m << ", " << n << ") = " << value << " leaves the cube [0, " << eta_
            << "]";
        throw ArgumentError(msg.str());
    }
    values_[pair_index(m, n)] = value;
}

void PerturbationState::assign(std::span<const double> values) {
    if (values.size() != values_.size()) throw ArgumentError("perturbation size mismatch");
    for (double v : values)
        if (!(v >= 0.0 && v <= eta_)) throw ArgumentError("perturbation value leaves the cube");
    std::copy(values.begin(), values.end(), values_.begin());
}

double PerturbationState::distance_to(const PerturbationState& other) const {
    if (other.values_.size() != values_.size()) throw ArgumentError("perturbation size mismatch");
    double d = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i)
        d = std::max(d, std::fabs(values_[i] - other.values_[i]));
    return d;
}

namespace {

void require_matching(const FiniteMetricSpace& space, const PerturbationState& state) {
    if (state.points() != space.size()) {
        std::ostringstream msg;
        msg << "perturbation state has " << state.points() << " points, space has "
            << space.size();
        throw ArgumentError(msg.str());
    }
}

void require_norm_dimension(const FiniteMetricSpace& space, const NormSpec& norm) {
    if (norm.dimension() != space.size()) {
        std::ostringstream msg;
        msg << "norm dimension " << norm.dimension() << " does not match the " << space.size()
            << " coordinates of the embedding";
        throw ArgumentError(msg.str());
    }
}

std::optional<kernels::IdentityFailure> run_phi(const FiniteMetricSpace& space,
                                                const NormSpec& norm,
                                                const PerturbationState& state,
                                                std::span<kernels::PhiPair> out, double tol,
                                                Execution exec) {
    return exec == Execution::serial
               ? kernels::serial::evaluate_phi(space.dist(), norm, state, out, tol)
               : kernels::parallel::evaluate_phi(space.dist(), norm, state, out, tol);
}

[[noreturn]] void throw_identity(const kernels::IdentityFailure& f) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "supremum identity fails for pair (" << f.n << ", " << f.m << "): coordinate "
        << f.coordinate << " gives " << f.value << ", expected d + eps = " << f.predicted
        << " (space not strongly concave for this eta, or eps outside the cube)";
    throw InvariantError(msg.str(), f.n, f.m, f.coordinate);
}

[[noreturn]] void throw_k_invariance(std::size_t m, std::size_t n, double value, double eta) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "phi(" << m << ", " << n << ") = " << value << " leaves the cube [0, " << eta << "]";
    throw KInvarianceError(msg.str(), m, n, value);
}

/// Absolute rounding allowance for the phi range checks.
double bound_tolerance(double diameter, double eta) {
    return 1e-12 * std::max(1.0, diameter + eta);
}

/// Resolves eta from the concavity gap, the override and, for two points, delta.
double resolve_eta(const FiniteMetricSpace& space, const ConcavityReport& report, double delta,
                   const std::optional<double>& eta_override) {
    const std::size_t n = space.size();
    if (n >= 3) {
        if (report.gap <= default_validation_tolerance(space)) {
            const Triple t = *report.witness;
            std::ostringstream msg;
            msg << "space is not strongly concave: gap " << report.gap << " at triple (" << t.x
                << ", " << t.y << ", " << t.z << ")";
            throw NotStronglyConcaveError(msg.str(), t.x, t.y, t.z);
        }
        if (!eta_override) return report.gap;
        if (!(*eta_override > 0.0) || *eta_override > report.gap) {
            std::ostringstream msg;
            msg << "eta override " << *eta_override << " must lie in (0, gap = " << report.gap
                << "]";
            throw ArgumentError(msg.str());
        }
        return *eta_override;
    }
    if (eta_override) {
        if (!(*eta_override > 0.0) || !std::isfinite(*eta_override))
            throw ArgumentError("eta override must be a positive number");
        return *eta_override;
    }
    // No triples: any eta works for the identity. Admissibility asks for
    // eta >= delta * diameter; (1 + delta) * diameter clears it with room to spare.
    const double diameter = report.diameter > 0.0 ? report.diameter : 1.0;
    return (1.0 + delta) * diameter;
}

}  // namespace

Matrix perturbed_points(const FiniteMetricSpace& space, const PerturbationState& state) {
    require_matching(space, state);
    const std::size_t n = space.size();
    Matrix p(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) p(i, k) = space(i, k) - space(0, k) + state(i, k);
    return p;
}

double identity_tolerance(double diameter, double eta) noexcept {
    return 4.0 * std::numeric_limits<double>::epsilon() * 2.0 * (diameter + eta);
}

double sup_distance_identity(const FiniteMetricSpace& space, const PerturbationState& state,
                             std::size_t n, std::size_t m, std::optional<double> tol) {
    require_matching(space, state);
    if (!(n < m && m < space.size())) throw ArgumentError("sup_distance_identity needs n < m < N");
    const double allowed = tol.value_or(identity_tolerance(space.diameter(), state.eta()));
    const std::size_t size = space.size();
    double sup = 0.0;
    std::size_t argmax = 0;
    for (std::size_t k = 0; k < size; ++k) {
        const double a =
            std::fabs((space(n, k) - space(m, k)) + (state(n, k) - state(m, k)));
        if (a > sup) {
            sup = a;
            argmax = k;
        }
    }
    const double predicted = space(n, m) + state(m, n);
    if (std::fabs(sup - predicted) > allowed)
        throw_identity({n, m, sup > predicted ? argmax : n, sup, predicted});
    return sup;
}

PerturbationState phi_map(const FiniteMetricSpace& space, const NormSpec& norm,
                          const PerturbationState& state, Execution exec) {
    require_matching(space, state);
    require_norm_dimension(space, norm);
    std::vector<kernels::PhiPair> pairs(state.pair_count());
    run_phi(space, norm, state, pairs, std::numeric_limits<double>::infinity(), exec);
    const double eta = state.eta();
    const double tol = bound_tolerance(space.diameter(), eta);
    PerturbationState out(space.size(), eta);
    std::vector<double> values(pairs.size());
    for (std::size_t m = 1; m < space.size(); ++m)
        for (std::size_t n = 0; n < m; ++n) {
            const double v = pairs[PerturbationState::pair_index(m, n)].phi;
            if (v < -tol || v > eta + tol) throw_k_invariance(m, n, v, eta);
            values[PerturbationState::pair_index(m, n)] = std::clamp(v, 0.0, eta);
        }
    out.assign(values);
    return out;
}

FixedPointSolution solve_fixed_point(const FiniteMetricSpace& space, const NormSpec& norm,
                                     const SolverConfig& config) {
    require_norm_dimension(space, norm);
    if (!(config.damping > 0.0 && config.damping <= 1.0))
        throw ArgumentError("damping must lie in (0, 1]");
    if (config.max_iterations < 1) throw ArgumentError("max_iterations must be >= 1");

    const auto report = concavity_report(space, config.execution);
    const auto certificate = certify_distortion(norm, config.certify_samples);
    if (!certificate.certified && !config.allow_uncertified_norm)
        throw ArgumentError("norm '" + norm.description() +
                            "' has only a sampled distortion estimate; set "
                            "allow_uncertified_norm to use it");
    if (certificate.upper_frame > 1.0 + 1e-12)
        throw ArgumentError("norm must satisfy ||x|| <= ||x||_inf (upper frame " +
                            std::to_string(certificate.upper_frame) + " > 1)");

    const double delta = certificate.delta;
    const double eta = resolve_eta(space, report, delta, config.eta_override);
    const double diameter = space.diameter();
    if (config.enforce_admissibility && diameter > 0.0 && !delta_admissible(delta, eta, diameter)) {
        std::ostringstream msg;
        msg << "delta = " << delta << " is not admissible for eta = " << eta
            << " and diameter = " << diameter << " (needs delta <= "
            << max_admissible_delta(eta, diameter) << ")";
        throw ArgumentError(msg.str());
    }

    const double tolerance = config.tolerance.value_or(1e-12 * (diameter + eta));
    if (!(tolerance > 0.0)) throw ArgumentError("solver tolerance must be > 0");
    const double identity_tol = config.check_identity ? identity_tolerance(diameter, eta)
                                                      : std::numeric_limits<double>::infinity();
    const double range_tol = bound_tolerance(diameter, eta);
    const double shrink = delta / (1.0 + delta);

    FixedPointSolution result{PerturbationState(space.size(), eta), {}};
    auto& diag = result.diagnostics;
    diag.delta = delta;
    diag.eta = eta;
    diag.tolerance = tolerance;
    diag.damping = config.damping;

    auto& state = result.state;
    const std::size_t pairs = state.pair_count();
    std::vector<kernels::PhiPair> phi_pairs(pairs);
    std::vector<double> phi(pairs), next(pairs);

    for (std::size_t it = 1; it <= config.max_iterations; ++it) {
        if (auto failure = run_phi(space, norm, state, phi_pairs, identity_tol, config.execution))
            throw_identity(*failure);

        double residual = 0.0;
        bool out_of_bound = false;
        for (std::size_t m = 1; m < space.size(); ++m)
            for (std::size_t n = 0; n < m; ++n) {
                const std::size_t p = PerturbationState::pair_index(m, n);
                const double v = phi_pairs[p].phi;
                phi[p] = v;
                if (v < -range_tol || v > eta + range_tol) throw_k_invariance(m, n, v, eta);
                if (v < -range_tol || v > shrink * phi_pairs[p].predicted + range_tol)
                    out_of_bound = true;
                residual = std::max(residual, std::fabs(v - state(m, n)));
            }
        if (out_of_bound) ++diag.bound_violations;
        diag.iterations = it;
        diag.residual_history.push_back(residual);
        diag.final_residual = residual;
        if (config.observer) config.observer({it, state, phi, residual, delta});

        if (residual <= tolerance) {
            diag.converged = true;
            break;
        }
        // Oscillation fallback: damp once the residual starts growing.
        if (it > 1 && residual > diag.residual_history[it - 2] && diag.damping > 0.5)
            diag.damping = 0.5;

        const double gamma = diag.damping;
        const auto current = state.values();
        for (std::size_t p = 0; p < pairs; ++p)
            next[p] = std::clamp((1.0 - gamma) * current[p] + gamma * phi[p], 0.0, eta);
        state.assign(next);
    }

    diag.pair_slack.resize(pairs);
    for (std::size_t m = 1; m < space.size(); ++m)
        for (std::size_t n = 0; n < m; ++n)
            diag.pair_slack[PerturbationState::pair_index(m, n)] =
                eta - shrink * (space(n, m) + state(m, n));
    return result;
}

EmbedResult embed(const FiniteMetricSpace& space, const NormSpec& norm,
                  const SolverConfig& config) {
    const auto validation = validate(space, default_validation_tolerance(space), config.execution);
    if (!validation.ok()) {
        const auto& v = validation.violations.front();
        std::ostringstream msg;
        msg << "input is not a metric: " << to_string(v.kind) << " violation at (" << v.i << ", "
            << v.j << ", " << v.k << ")";
        throw InvalidMetricError(msg.str());
    }
    auto solution = solve_fixed_point(space, norm, config);
    Matrix points = perturbed_points(space, solution.state);
    const double residual = max_pair_residual(points, space, norm, config.execution);
    return {Embedding{std::move(points), norm, residual}, std::move(solution.state),
            std::move(solution.diagnostics)};
}

}  // namespace cembed
