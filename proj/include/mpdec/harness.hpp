#pragma once

#include "mpdec/mpdec.hpp"
#include "mpdec/problems.hpp"
#include "mpdec/trajectory.hpp"

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mpdec {

/// Errors below this are treated as round-off; a refinement pair with either
/// error under it is excluded from slope checks.
inline constexpr double kPrecisionFloor = 1e-13;

/// Which integrator a harness run uses.
struct SchemeSpec {
    enum class Kind {
        MPDeC,
        ClassicalDeC,
        SSPRK104,
        ModifiedPatankarEuler,
        PatankarEuler,
        ExplicitEuler,
    };
    Kind kind = Kind::MPDeC;
    /// M and K for the deferred-correction kinds.
    MPDeCConfig dec;

    static SchemeSpec mpdec_order(std::size_t order);
    static SchemeSpec mpdec_mk(std::size_t subintervals, std::size_t corrections);

    [[nodiscard]] std::size_t nominal_order() const;
    [[nodiscard]] std::string label() const;
};

[[nodiscard]] Trajectory run_scheme(const SchemeSpec& scheme,
                                    const ProductionDestructionSystem& system,
                                    std::span<const double> c0, const StepSchedule& schedule);

using ExactSolution = std::function<StateVector(double)>;

/// (1/N) sum_{n=1..N} sqrt((1/I) sum_i (c_i(t^n) - c_i^n)^2); the initial level
/// is skipped.
[[nodiscard]] double discrete_l2_error(const Trajectory& trajectory, const ExactSolution& exact);

/// Same metric with the 2N-step run sampled at every other level as the
/// reference. Both runs must start at the same time and align level by level.
[[nodiscard]] double successive_refinement_error(const Trajectory& coarse, const Trajectory& fine);

/// max_i |c_i(t_N) - c_i^N|.
[[nodiscard]] double final_time_max_error(const Trajectory& trajectory, const ExactSolution& exact);

struct ErrorRow {
    double dt = 0.0;
    std::size_t steps = 0;
    double error = 0.0;
    /// log(E_{k-1}/E_k) / log(dt_{k-1}/dt_k); empty on the first row or when
    /// either error is zero.
    std::optional<double> slope;
    /// error < kPrecisionFloor
    bool saturated = false;
};

struct ErrorReport {
    std::string problem;
    std::string scheme;
    std::size_t nominal_order = 0;
    /// true when errors come from successive refinement instead of a closed form.
    bool successive = false;
    std::vector<ErrorRow> rows;

    /// Slope of the last refinement pair with both errors above kPrecisionFloor.
    [[nodiscard]] std::optional<double> terminal_slope() const;
};

/// dt0, dt0/2, ..., dt0/2^(levels-1).
[[nodiscard]] std::vector<double> halving_refinements(double dt0, std::size_t levels);

/// Runs the scheme at each step size on a fixed schedule over the problem's
/// span. Uses the analytic solution when the system carries one, otherwise
/// successive refinement against a run with half the step. Refinement levels
/// run concurrently; the report does not depend on the thread count.
[[nodiscard]] ErrorReport convergence_study(const BenchmarkProblem& problem,
                                            const SchemeSpec& scheme,
                                            std::span<const double> step_sizes);

/// Reference run for problems without a closed form, per their recipe.
[[nodiscard]] Trajectory reference_solution(const BenchmarkProblem& problem);

// CSV ------------------------------------------------------------------------

/// Header `t,c_1,...,c_I,sum`, 17 significant digits, LF line endings.
void emit_csv(const Trajectory& trajectory, std::ostream& out);
/// Header `dt,error,slope`; slope left empty when undefined.
void emit_csv(const ErrorReport& report, std::ostream& out);
void emit_csv(const Trajectory& trajectory, const std::filesystem::path& path);
void emit_csv(const ErrorReport& report, const std::filesystem::path& path);

/// Reads back the trajectory format; the sum column is checked for presence
/// and otherwise ignored.
[[nodiscard]] Trajectory parse_trajectory_csv(std::istream& in);

[[nodiscard]] std::string format_real(double v);

} // namespace mpdec
