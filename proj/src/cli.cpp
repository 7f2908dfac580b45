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

#include "cembed/cli.hpp"

#include <algorithm>
#include <exception>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "cembed/diagonal.hpp"
#include "cembed/equilateral.hpp"
#include "cembed/errors.hpp"
#include "cembed/fixed_point.hpp"
#include "cembed/io.hpp"
#include "cembed/metric_space.hpp"
#include "cembed/norms.hpp"

namespace cembed::cli {
namespace {

using io::json;

struct SolverFlags {
    std::size_t max_iterations = 10000;
    std::optional<double> tolerance;
    double damping = 1.0;
    std::optional<double> eta;
    bool allow_uncertified = false;
    bool allow_inadmissible = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--max-iterations", max_iterations, "Picard iteration cap");
        cmd->add_option("--tolerance", tolerance, "Stopping tolerance on max |phi(eps) - eps|");
        cmd->add_option("--damping", damping, "Initial damping in (0, 1]");
        cmd->add_option("--eta", eta, "Cube edge eta, 0 < eta <= concavity gap");
        cmd->add_flag("--allow-uncertified-norm", allow_uncertified,
                      "Accept custom norms with a sampled distortion estimate");
        cmd->add_flag("--allow-inadmissible", allow_inadmissible,
                      "Run even when delta fails the admissibility condition");
    }

    SolverConfig config(Execution exec) const {
        SolverConfig c;
        c.max_iterations = max_iterations;
        c.tolerance = tolerance;
        c.damping = damping;
        c.eta_override = eta;
        c.allow_uncertified_norm = allow_uncertified;
        c.enforce_admissibility = !allow_inadmissible;
        c.execution = exec;
        return c;
    }
};

void emit(const json& j, const std::string& output, std::ostream& out) {
    if (output.empty()) {
        out << io::dump(j) << "\n";
        return;
    }
    std::ofstream file(output);
    if (!file) throw StructuralError("cannot write '" + output + "'");
    file << io::dump(j) << "\n";
}

NormSpec norm_or_sup(const std::string& path, std::size_t dimension) {
    return path.empty() ? NormSpec::sup(dimension) : io::read_norm(path);
}

std::vector<double> parse_delta_list(const std::string& text) {
    std::vector<double> out;
    std::istringstream in(text);
    std::string cell;
    while (std::getline(in, cell, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(cell, &used));
            if (used != cell.size()) throw std::invalid_argument(cell);
        } catch (const std::exception&) {
            throw ArgumentError("--deltas: '" + cell + "' is not a number");
        }
    }
    if (out.empty()) throw ArgumentError("--deltas is empty");
    return out;
}

struct SweepRow {
    double delta = 0.0;
    bool admissible = false;
    std::size_t iterations = 0;
    double final_residual = std::numeric_limits<double>::quiet_NaN();
    bool converged = false;
    double max_residual = std::numeric_limits<double>::quiet_NaN();
    std::size_t bound_violations = 0;
    std::string status = "ok";
};

std::string shortest(double v) {
    // json's serializer gives the shortest round-trip form.
    return std::isfinite(v) ? json(v).dump() : "nan";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Isometric embeddings of strongly concave metric spaces into near-sup norms",
                 args.empty() ? "cembed" : args.front()};
    app.require_subcommand(1);
    bool serial = false;
    app.add_flag("--serial", serial, "Use the serial reference kernels");

    std::string input, output, norm_path;
    double tol = -1.0;
    SolverFlags solver;

    auto* validate_cmd = app.add_subcommand("validate", "Check the metric axioms");
    validate_cmd->add_option("input", input, "Distance matrix (.json or .csv)")->required();
    validate_cmd->add_option("--tol", tol, "Additive tolerance (default 1e-12 * diameter)");
    validate_cmd->add_option("-o,--output", output, "Write JSON here instead of stdout");

    auto* report_cmd = app.add_subcommand("report", "Concavity gap, separation and diameter");
    report_cmd->add_option("input", input, "Distance matrix (.json or .csv)")->required();
    report_cmd->add_option("-o,--output", output, "Write JSON here instead of stdout");

    auto* embed_cmd = app.add_subcommand("embed", "Embed a strongly concave space isometrically");
    embed_cmd->add_option("input", input, "Distance matrix (.json or .csv)")->required();
    embed_cmd->add_option("--norm,--norm-spec", norm_path, "NormSpec JSON (default: sup norm)");
    embed_cmd->add_option("-o,--output", output, "Write JSON here instead of stdout");
    solver.attach(embed_cmd);

    std::size_t points = 0;
    double lambda = 1.0;
    auto* eq_cmd = app.add_subcommand("equilateral", "Equilateral set in a near-sup norm");
    eq_cmd->add_option("--n", points, "Number of points")->required();
    eq_cmd->add_option("--norm-spec,--norm", norm_path, "NormSpec JSON (default: sup norm)");
    eq_cmd->add_option("--lambda", lambda, "Common distance");
    eq_cmd->add_option("-o,--output", output, "Write JSON here instead of stdout");
    solver.attach(eq_cmd);

    std::string family;
    double param_a = 1.0, param_b = 1.5, extract_tol = 1e-3;
    std::size_t count = 10, horizon = 10000;
    bool also_embed = false;
    auto* extract_cmd =
        app.add_subcommand("extract", "Extract a subset whose Frechet rows converge");
    extract_cmd->add_option("--family", family, "equilateral | discrete | harmonic | two-cluster")
        ->required();
    extract_cmd->add_option("--a", param_a, "lambda, or the within-cluster distance");
    extract_cmd->add_option("--b", param_b, "cross-cluster distance");
    extract_cmd->add_option("--count", count, "Indices to extract");
    extract_cmd->add_option("--tol", extract_tol, "Oscillation tolerance");
    extract_cmd->add_option("--horizon", horizon, "Largest index scanned");
    extract_cmd->add_flag("--embed", also_embed, "Also embed the extracted subset");
    extract_cmd->add_option("--norm-spec,--norm", norm_path, "NormSpec JSON for --embed");
    extract_cmd->add_option("-o,--output", output, "Write JSON here instead of stdout");
    solver.attach(extract_cmd);

    std::string generator = "discrete", deltas_text = "0,0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1.0";
    std::string norm_family = "weighted_sup";
    double gen_c = 0.5;
    std::uint64_t seed = 0;
    bool have_seed = false;
    std::size_t gen_n = 10;
    auto* sweep_cmd = app.add_subcommand("sweep", "Solver behaviour across a delta grid (CSV)");
    sweep_cmd->add_option("--input", input, "Distance matrix instead of a generator");
    sweep_cmd->add_option("--generator", generator, "discrete | equilateral | random");
    sweep_cmd->add_option("--n", gen_n, "Points for the generator");
    sweep_cmd->add_option("--lambda", lambda, "Distance for the equilateral generator");
    sweep_cmd->add_option("--c", gen_c, "Concavity constant for the random generator");
    auto* seed_opt = sweep_cmd->add_option("--seed", seed, "Seed for random spaces and weights");
    sweep_cmd->add_option("--deltas", deltas_text, "Comma-separated delta grid");
    sweep_cmd->add_option("--norm-family", norm_family, "weighted_sup | sup_plus_l1");
    sweep_cmd->add_option("-o,--output", output, "CSV path (default stdout)");
    solver.attach(sweep_cmd);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }
    have_seed = seed_opt->count() > 0;
    const Execution exec = serial ? Execution::serial : Execution::parallel;

    try {
        if (validate_cmd->parsed()) {
            const auto space = io::read_space(input);
            const double t = tol >= 0.0 ? tol : default_validation_tolerance(space);
            const auto report = validate(space, t, exec);
            emit(io::to_json(report), output, out);
            return report.ok() ? exit_ok : exit_failure;
        }
        if (report_cmd->parsed()) {
            const auto space = io::read_space(input);
            emit(io::to_json(concavity_report(space, exec)), output, out);
            return exit_ok;
        }
        if (embed_cmd->parsed()) {
            const auto space = io::read_space(input);
            const auto norm = norm_or_sup(norm_path, space.size());
            const auto result = embed(space, norm, solver.config(exec));
            emit({{"embedding", io::to_json(result.embedding)},
                  {"diagnostics", io::to_json(result.diagnostics)},
                  {"state", io::to_json(result.state)}},
                 output, out);
            return result.diagnostics.converged ? exit_ok : exit_failure;
        }
        if (eq_cmd->parsed()) {
            const auto norm = norm_or_sup(norm_path, points);
            const auto result = equilateral_set(points, norm, solver.config(exec), lambda);
            emit({{"embedding", io::to_json(result.embedding)},
                  {"diagnostics", io::to_json(result.diagnostics)},
                  {"lambda", lambda}},
                 output, out);
            return result.diagnostics.converged ? exit_ok : exit_failure;
        }
        if (extract_cmd->parsed()) {
            const auto metric = make_lazy_family(family, param_a, param_b);
            json j;
            bool ok = true;
            if (also_embed) {
                const auto extraction = extract_convergent_subset(*metric, count, extract_tol, horizon);
                const auto norm = norm_or_sup(norm_path, extraction.indices.size());
                const auto via = embed_via_c(*metric, count, norm, extract_tol, horizon,
                                             solver.config(exec));
                j = {{"extraction", io::to_json(via.extraction)},
                     {"embedding", io::to_json(via.embedded.embedding)},
                     {"diagnostics", io::to_json(via.embedded.diagnostics)}};
                ok = !via.extraction.shortfall && via.embedded.diagnostics.converged;
            } else {
                const auto extraction = extract_convergent_subset(*metric, count, extract_tol, horizon);
                j = io::to_json(extraction);
                ok = !extraction.shortfall;
            }
            emit(j, output, out);
            return ok ? exit_ok : exit_failure;
        }
        if (sweep_cmd->parsed()) {
            FiniteMetricSpace space;
            if (!input.empty()) {
                space = io::read_space(input);
            } else if (generator == "discrete") {
                space = make_discrete(gen_n);
            } else if (generator == "equilateral") {
                space = make_equilateral(gen_n, lambda);
            } else if (generator == "random") {
                if (!have_seed) throw ArgumentError("--seed is required for the random generator");
                space = make_random_strongly_concave(gen_n, gen_c, seed);
            } else {
                throw ArgumentError("unknown generator '" + generator + "'");
            }
            if (norm_family != "weighted_sup" && norm_family != "sup_plus_l1")
                throw ArgumentError("unknown norm family '" + norm_family + "'");

            const auto deltas = parse_delta_list(deltas_text);
            const auto report = concavity_report(space, exec);
            const double diameter = space.diameter();
            auto base = solver.config(Execution::serial);
            base.enforce_admissibility = false;

            std::vector<SweepRow> rows(deltas.size());
            std::exception_ptr fatal;
#pragma omp parallel for schedule(dynamic)
            for (std::size_t g = 0; g < deltas.size(); ++g) {
                SweepRow& row = rows[g];
                row.delta = deltas[g];
                try {
                    const NormSpec norm =
                        norm_family == "weighted_sup"
                            ? weighted_sup_with_delta(space.size(), row.delta, seed + g)
                            : sup_plus_l1_with_delta(space.size(), row.delta);
                    const double eta = solver.eta.value_or(
                        report.gap_is_infinite() ? (1.0 + row.delta) * diameter : report.gap);
                    row.admissible = diameter <= 0.0 || delta_admissible(row.delta, eta, diameter);
                    const auto result = embed(space, norm, base);
                    row.iterations = result.diagnostics.iterations;
                    row.final_residual = result.diagnostics.final_residual;
                    row.converged = result.diagnostics.converged;
                    row.max_residual = result.embedding.max_residual;
                    row.bound_violations = result.diagnostics.bound_violations;
                    if (!row.converged) row.status = "not_converged";
                } catch (const KInvarianceError&) {
                    row.status = "left_cube";
                } catch (const InvariantError&) {
                    row.status = "identity_failure";
                } catch (...) {
#pragma omp critical(cembed_sweep_fatal)
                    if (!fatal) fatal = std::current_exception();
                }
            }
            if (fatal) std::rethrow_exception(fatal);

            std::ostringstream csv;
            csv << "delta,iterations,final_residual,converged,admissible,max_residual,"
                   "bound_violations,status\n";
            bool all_admissible_converged = true;
            for (const auto& r : rows) {
                csv << shortest(r.delta) << "," << r.iterations << "," << shortest(r.final_residual)
                    << "," << (r.converged ? "true" : "false") << ","
                    << (r.admissible ? "true" : "false") << "," << shortest(r.max_residual) << ","
                    << r.bound_violations << "," << r.status << "\n";
                if (r.admissible && !r.converged) all_admissible_converged = false;
            }
            if (output.empty()) {
                out << csv.str();
            } else {
                std::ofstream file(output);
                if (!file) throw StructuralError("cannot write '" + output + "'");
                file << csv.str();
            }
            return all_admissible_converged ? exit_ok : exit_failure;
        }
    } catch (const StructuralError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const ArgumentError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_failure;
    }
    return exit_usage;
}

}  // namespace cembed::cli
