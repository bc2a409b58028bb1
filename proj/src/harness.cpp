#include "mpdec/harness.hpp"

#include "mpdec/baselines.hpp"
#include "mpdec/errors.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace mpdec {

SchemeSpec SchemeSpec::mpdec_order(std::size_t order) {
    SchemeSpec s;
    s.kind = Kind::MPDeC;
    s.dec = MPDeCConfig::for_order(order);
    return s;
}

SchemeSpec SchemeSpec::mpdec_mk(std::size_t subintervals, std::size_t corrections) {
    SchemeSpec s;
    s.kind = Kind::MPDeC;
    s.dec.subintervals = subintervals;
    s.dec.corrections = corrections;
    s.dec.validate();
    return s;
}

std::size_t SchemeSpec::nominal_order() const {
    switch (kind) {
    case Kind::MPDeC:
    case Kind::ClassicalDeC: return dec.order();
    case Kind::SSPRK104: return 4;
    case Kind::ModifiedPatankarEuler:
    case Kind::PatankarEuler:
    case Kind::ExplicitEuler: return 1;
    }
    return 0;
}

std::string SchemeSpec::label() const {
    const std::string mk =
        "(M=" + std::to_string(dec.subintervals) + ",K=" + std::to_string(dec.corrections) + ")";
    switch (kind) {
    case Kind::MPDeC: return "mPDeC" + mk;
    case Kind::ClassicalDeC: return "DeC" + mk;
    case Kind::SSPRK104: return "SSPRK(10,4)";
    case Kind::ModifiedPatankarEuler: return "modified Patankar Euler";
    case Kind::PatankarEuler: return "Patankar Euler";
    case Kind::ExplicitEuler: return "explicit Euler";
    }
    return "unknown";
}

Trajectory run_scheme(const SchemeSpec& scheme, const ProductionDestructionSystem& system,
                      std::span<const double> c0, const StepSchedule& schedule) {
    using K = SchemeSpec::Kind;
    switch (scheme.kind) {
    case K::MPDeC: return integrate(system, c0, schedule, scheme.dec);
    case K::ClassicalDeC:
        return march(c0, schedule, [&](std::span<const double> c, double dt) {
            return classical_dec_step(system, c, dt, scheme.dec.subintervals,
                                      scheme.dec.corrections);
        });
    case K::SSPRK104:
        return march(c0, schedule, [&](std::span<const double> c, double dt) {
            return ssprk104_step(system, c, dt);
        });
    case K::ModifiedPatankarEuler:
        return march(floor_state(c0, kPositivityFloor), schedule,
                     [&](std::span<const double> c, double dt) {
                         return modified_patankar_euler_step(system, c, dt);
                     });
    case K::PatankarEuler:
        return march(floor_state(c0, kPositivityFloor), schedule,
                     [&](std::span<const double> c, double dt) {
                         return patankar_euler_step(system, c, dt);
                     });
    case K::ExplicitEuler:
        return march(c0, schedule, [&](std::span<const double> c, double dt) {
            return explicit_euler_step(system, c, dt);
        });
    }
    throw ValidationError("run_scheme: unknown scheme");
}

namespace {

double rms_difference(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(a.size()));
}

} // namespace

double discrete_l2_error(const Trajectory& trajectory, const ExactSolution& exact) {
    if (trajectory.size() == 0) throw ValidationError("discrete_l2_error: empty trajectory");
    const std::size_t steps = trajectory.size() - 1;
    if (steps == 0) return 0.0;
    double total = 0.0;
    for (std::size_t n = 1; n <= steps; ++n) {
        const StateVector ref = exact(trajectory.times[n]);
        if (ref.size() != trajectory.states[n].size()) {
            throw ValidationError("discrete_l2_error: exact solution has the wrong dimension");
        }
        total += rms_difference(ref, trajectory.states[n]);
    }
    return total / static_cast<double>(steps);
}

double successive_refinement_error(const Trajectory& coarse, const Trajectory& fine) {
    if (coarse.size() == 0) throw ValidationError("successive_refinement_error: empty trajectory");
    const std::size_t steps = coarse.size() - 1;
    if (fine.size() != 2 * steps + 1) {
        throw ValidationError("successive_refinement_error: fine run must have twice the steps (" +
                              std::to_string(2 * steps) + "), got " +
                              std::to_string(fine.size() - 1));
    }
    for (std::size_t n = 0; n <= steps; ++n) {
        const double tc = coarse.times[n];
        const double tf = fine.times[2 * n];
        if (std::abs(tc - tf) > 1e-12 * std::max(1.0, std::abs(tc))) {
            throw ValidationError("successive_refinement_error: time levels do not align at n=" +
                                  std::to_string(n));
        }
    }
    if (steps == 0) return 0.0;
    double total = 0.0;
    for (std::size_t n = 1; n <= steps; ++n) {
        total += rms_difference(coarse.states[n], fine.states[2 * n]);
    }
    return total / static_cast<double>(steps);
}

double final_time_max_error(const Trajectory& trajectory, const ExactSolution& exact) {
    if (trajectory.size() == 0) throw ValidationError("final_time_max_error: empty trajectory");
    const StateVector ref = exact(trajectory.times.back());
    double worst = 0.0;
    for (std::size_t i = 0; i < ref.size(); ++i) {
        worst = std::max(worst, std::abs(ref[i] - trajectory.back()[i]));
    }
    return worst;
}

std::optional<double> ErrorReport::terminal_slope() const {
    for (std::size_t k = rows.size(); k-- > 1;) {
        if (rows[k - 1].saturated || rows[k].saturated) continue;
        if (rows[k].slope) return rows[k].slope;
    }
    return std::nullopt;
}

std::vector<double> halving_refinements(double dt0, std::size_t levels) {
    std::vector<double> dts;
    dts.reserve(levels);
    double dt = dt0;
    for (std::size_t j = 0; j < levels; ++j) {
        dts.push_back(dt);
        dt *= 0.5;
    }
    return dts;
}

ErrorReport convergence_study(const BenchmarkProblem& problem, const SchemeSpec& scheme,
                              std::span<const double> step_sizes) {
    for (std::size_t k = 1; k < step_sizes.size(); ++k) {
        if (!(step_sizes[k] < step_sizes[k - 1])) {
            throw ValidationError("convergence_study: step sizes must strictly decrease");
        }
    }
    ErrorReport report;
    report.problem = problem.system.name;
    report.scheme = scheme.label();
    report.nominal_order = scheme.nominal_order();
    const auto& exact = problem.system.analytic_solution;
    report.successive = !static_cast<bool>(exact);
    report.rows.resize(step_sizes.size());

    const long levels = static_cast<long>(step_sizes.size());
    std::vector<std::exception_ptr> failures(step_sizes.size());

#pragma omp parallel for schedule(dynamic)
    for (long k = 0; k < levels; ++k) {
        try {
            const double dt = step_sizes[k];
            const auto schedule = StepSchedule::fixed(problem.t0, problem.t_end, dt);
            const Trajectory run = run_scheme(scheme, problem.system, problem.c0, schedule);
            ErrorRow& row = report.rows[k];
            row.dt = dt;
            row.steps = schedule.size();
            if (exact) {
                row.error = discrete_l2_error(run, exact);
            } else {
                const auto half = StepSchedule::fixed_steps(problem.t0, 0.5 * dt, 2 * schedule.size());
                if (std::abs(half.t_final() - schedule.t_final()) >
                    1e-12 * std::max(1.0, std::abs(schedule.t_final()))) {
                    throw ValidationError(
                        "convergence_study: successive refinement needs dt dividing the span");
                }
                const Trajectory fine = run_scheme(scheme, problem.system, problem.c0, half);
                row.error = successive_refinement_error(run, fine);
            }
            row.saturated = row.error < kPrecisionFloor;
        } catch (...) {
            failures[k] = std::current_exception();
        }
    }
    for (const auto& f : failures) {
        if (f) std::rethrow_exception(f);
    }

    for (std::size_t k = 1; k < report.rows.size(); ++k) {
        const ErrorRow& prev = report.rows[k - 1];
        ErrorRow& row = report.rows[k];
        if (prev.error > 0.0 && row.error > 0.0) {
            row.slope = std::log(prev.error / row.error) / std::log(prev.dt / row.dt);
        }
    }
    return report;
}

Trajectory reference_solution(const BenchmarkProblem& problem) {
    if (!problem.reference) {
        throw ValidationError("reference_solution: problem '" + problem.system.name +
                              "' has no reference recipe");
    }
    const ReferenceRecipe& recipe = *problem.reference;
    if (recipe.scheme == ReferenceRecipe::Scheme::SSPRK104) {
        const auto schedule = StepSchedule::fixed(problem.t0, problem.t_end, recipe.resolution);
        return march(problem.c0, schedule, [&](std::span<const double> c, double dt) {
            return ssprk104_step(problem.system, c, dt);
        });
    }
    const auto config = MPDeCConfig::for_order(recipe.order);
    const auto substeps = static_cast<std::size_t>(recipe.resolution);
    const StateVector start = floor_state(problem.c0, config.positivity_floor);
    return march(start, problem.default_schedule(), [&](std::span<const double> c, double dt) {
        StateVector state(c.begin(), c.end());
        const double h = dt / static_cast<double>(substeps);
        for (std::size_t s = 0; s < substeps; ++s) state = mpdec_step(problem.system, state, h, config);
        return state;
    });
}

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void emit_csv(const Trajectory& trajectory, std::ostream& out) {
    const std::size_t dim = trajectory.states.empty() ? 0 : trajectory.states.front().size();
    out << 't';
    for (std::size_t i = 1; i <= dim; ++i) out << ",c_" << i;
    out << ",sum\n";
    for (std::size_t n = 0; n < trajectory.size(); ++n) {
        out << format_real(trajectory.times[n]);
        for (double v : trajectory.states[n]) out << ',' << format_real(v);
        out << ',' << format_real(sum(trajectory.states[n])) << '\n';
    }
}

void emit_csv(const ErrorReport& report, std::ostream& out) {
    out << "dt,error,slope\n";
    for (const ErrorRow& row : report.rows) {
        out << format_real(row.dt) << ',' << format_real(row.error) << ',';
        if (row.slope) out << format_real(*row.slope);
        out << '\n';
    }
}

namespace {

template <typename T>
void emit_to_file(const T& value, const std::filesystem::path& path) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    emit_csv(value, file);
    file.flush();
    if (!file) throw std::runtime_error("failed writing '" + path.string() + "'");
}

std::vector<std::string> split_commas(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

} // namespace

void emit_csv(const Trajectory& trajectory, const std::filesystem::path& path) {
    emit_to_file(trajectory, path);
}

void emit_csv(const ErrorReport& report, const std::filesystem::path& path) {
    emit_to_file(report, path);
}

Trajectory parse_trajectory_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("trajectory csv: missing header");
    const auto header = split_commas(line);
    if (header.size() < 2 || header.front() != "t" || header.back() != "sum") {
        throw ValidationError("trajectory csv: header must be t,c_1,...,c_I,sum");
    }
    const std::size_t dim = header.size() - 2;
    for (std::size_t i = 0; i < dim; ++i) {
        if (header[i + 1] != "c_" + std::to_string(i + 1)) {
            throw ValidationError("trajectory csv: unexpected column '" + header[i + 1] + "'");
        }
    }
    Trajectory traj;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto fields = split_commas(line);
        if (fields.size() != dim + 2) {
            throw ValidationError("trajectory csv: wrong field count on line " +
                                  std::to_string(lineno));
        }
        auto number = [&](const std::string& text) {
            double v = 0.0;
            const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
            if (ec != std::errc() || end != text.data() + text.size()) {
                throw ValidationError("trajectory csv: bad number '" + text + "' on line " +
                                      std::to_string(lineno));
            }
            return v;
        };
        traj.times.push_back(number(fields[0]));
        StateVector c(dim);
        for (std::size_t i = 0; i < dim; ++i) c[i] = number(fields[i + 1]);
        traj.states.push_back(std::move(c));
    }
    return traj;
}

} // namespace mpdec
