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
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "cembed/execution.hpp"
#include "cembed/frechet.hpp"
#include "cembed/matrix.hpp"
#include "cembed/metric_space.hpp"
#include "cembed/norms.hpp"
#include "cembed/perturbation.hpp"

namespace cembed {

/// Row n holds p_n(eps): coordinate k is d(x_n,x_k) - d(x_1,x_k) + eps_(n,k).
/// At eps = 0 this is the translated Frechet embedding.
Matrix perturbed_points(const FiniteMetricSpace& space, const PerturbationState& state);

/// Rounding allowance for the supremum identity: 4 ulp of the coordinate
/// magnitude bound 2 * (diameter + eta).
double identity_tolerance(double diameter, double eta) noexcept;

/// ||p_n(eps) - p_m(eps)||_inf for n < m, checked against d(x_n,x_m) + eps_(m,n).
///
/// The identity holds whenever the space is eta-strongly concave and eps lies
/// in K, since every other coordinate k differs by at most
/// d(x_n,x_m) - eta + eps_(n,k) - eps_(m,k) <= d(x_n,x_m). A failure throws
/// InvariantError naming the coordinate k that exceeds the prediction.
double sup_distance_identity(const FiniteMetricSpace& space, const PerturbationState& state,
                             std::size_t n, std::size_t m,
                             std::optional<double> tol = std::nullopt);

/// One iterate as seen by SolverConfig::observer.
struct SolverStep {
    std::size_t iteration;            ///< 1-based
    const PerturbationState& state;   ///< eps_k
    std::span<const double> phi;      ///< raw phi(eps_k), packed like the state
    double residual;                  ///< max |phi(eps_k) - eps_k|
    double delta;                     ///< certified (or estimated) distortion
};

struct SolverConfig {
    std::size_t max_iterations = 10000;
    /// Stopping tolerance on max |phi(eps) - eps|; default 1e-12 * (diameter + eta).
    std::optional<double> tolerance;
    /// Initial damping gamma in (0, 1]; drops to 0.5 once the residual grows.
    double damping = 1.0;
    /// Cube edge; must satisfy 0 < eta <= gap. Defaults to the gap.
    std::optional<double> eta_override;
    /// Permit custom norms whose distortion is only a sampled estimate.
    bool allow_uncertified_norm = false;
    /// Reject norms whose delta fails delta_admissible(). Sweeps turn this off
    /// to map what happens past the sufficient condition.
    bool enforce_admissibility = true;
    /// Assert the supremum identity for every pair at every step.
    bool check_identity = true;
    std::size_t certify_samples = 10000;
    Execution execution = Execution::parallel;
    std::function<void(const SolverStep&)> observer;
};

struct IterationDiagnostics {
    std::size_t iterations = 0;
    std::vector<double> residual_history;
    double final_residual = 0.0;
    bool converged = false;
    /// Steps where some phi coordinate left [0, delta/(1+delta) * (d + eps)].
    std::size_t bound_violations = 0;
    double damping = 1.0;  ///< damping in effect at the end
    double delta = 0.0;
    double eta = 0.0;
    double tolerance = 0.0;
    /// Per pair, eta - delta/(1+delta) * (d + eps) at the returned state.
    std::vector<double> pair_slack;
};

/// phi(eps)_(m,n) = d(x_n,x_m) + eps_(m,n) - ||p_n(eps) - p_m(eps)||.
///
/// Coordinates within rounding of [0, eta] are clamped into the cube; anything
/// further out throws KInvarianceError. Admissibility is not checked here.
PerturbationState phi_map(const FiniteMetricSpace& space, const NormSpec& norm,
                          const PerturbationState& state,
                          Execution exec = Execution::parallel);

struct FixedPointSolution {
    PerturbationState state;
    IterationDiagnostics diagnostics;
};

/// Damped Picard iteration eps <- (1-gamma) eps + gamma phi(eps) from eps = 0.
///
/// Non-convergence is reported through diagnostics.converged rather than
/// thrown. Throws NotStronglyConcaveError, ArgumentError for an inadmissible
/// or uncertified norm, and KInvarianceError if phi leaves the cube.
FixedPointSolution solve_fixed_point(const FiniteMetricSpace& space, const NormSpec& norm,
                                     const SolverConfig& config = {});

struct EmbedResult {
    Embedding embedding;
    PerturbationState state;
    IterationDiagnostics diagnostics;
};

/// Isometric embedding of a strongly concave space into (R^N, norm).
EmbedResult embed(const FiniteMetricSpace& space, const NormSpec& norm,
                  const SolverConfig& config = {});

}  // namespace cembed
