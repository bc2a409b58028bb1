#pragma once

#include "mpdec/pds.hpp"
#include "mpdec/trajectory.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mpdec {

/// How to produce a reference solution when no closed form exists.
struct ReferenceRecipe {
    enum class Scheme { SSPRK104, FineMPDeC };
    Scheme scheme = Scheme::SSPRK104;
    std::size_t order = 4;
    /// SSPRK104: the fixed step. FineMPDeC: each schedule step is split into
    /// this many equal substeps.
    double resolution = 0.0;
};

struct BenchmarkProblem {
    ProductionDestructionSystem system;
    StateVector c0;
    double t0 = 0.0;
    double t_end = 0.0;
    /// Default step for fixed schedules, or the first step for geometric ones.
    double default_dt = 0.0;
    StepSchedule::Kind schedule_kind = StepSchedule::Kind::Fixed;
    std::string description;
    std::optional<ReferenceRecipe> reference;

    [[nodiscard]] StepSchedule default_schedule() const;
    [[nodiscard]] double conserved_total() const;
};

/// c1' = c2 - 5 c1, c2' = 5 c1 - c2 on [0, 1.75], c0 = (0.9, 0.1).
[[nodiscard]] BenchmarkProblem linear_problem();

/// Nutrients -> phytoplankton -> detritus on [0, 30], c0 = (9.98, 0.01, 0.01).
[[nodiscard]] BenchmarkProblem nonlinear_problem();

/// Robertson kinetics on [1e-6, 1e10] with c0 = (1 - 2 eps, eps, eps) and
/// geometric steps dt_n = 2^{n-1} 1e-6.
[[nodiscard]] BenchmarkProblem robertson_problem();

/// Looks up `linear`, `algal` or `robertson`.
[[nodiscard]] std::optional<BenchmarkProblem> find_problem(std::string_view name);
[[nodiscard]] std::vector<std::string> problem_names();

/// Closed form of the linear problem for an arbitrary initial state:
/// c1(t) = 1/6 (c1+c2) + (c1(0) - 1/6 (c1+c2)) exp(-6 t).
[[nodiscard]] StateVector linear_exact(double t, double c1_0, double c2_0);

} // namespace mpdec
