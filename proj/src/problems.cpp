#include "mpdec/problems.hpp"

#include "mpdec/mpdec.hpp"

#include <cmath>
#include <numeric>

namespace mpdec {

StepSchedule BenchmarkProblem::default_schedule() const {
    if (schedule_kind == StepSchedule::Kind::Geometric) {
        return StepSchedule::geometric(t0, default_dt, t_end);
    }
    return StepSchedule::fixed(t0, t_end, default_dt);
}

double BenchmarkProblem::conserved_total() const {
    return sum(floor_state(c0, kPositivityFloor));
}

StateVector linear_exact(double t, double c1_0, double c2_0) {
    const double total = c1_0 + c2_0;
    const double c1 = total / 6.0 + (c1_0 - total / 6.0) * std::exp(-6.0 * t);
    return {c1, total - c1};
}

BenchmarkProblem linear_problem() {
    BenchmarkProblem p;
    p.system.name = "linear";
    p.system.dimension = 2;
    p.system.conservation = Conservation::FullyConservative;
    p.system.rates = [](std::span<const double> c, RateMatrices& r) {
        r.production(0, 1) = c[1];
        r.destruction(1, 0) = c[1];
        r.production(1, 0) = 5.0 * c[0];
        r.destruction(0, 1) = 5.0 * c[0];
    };
    p.system.analytic_solution = [](double t) { return linear_exact(t, 0.9, 0.1); };
    p.c0 = {0.9, 0.1};
    p.t0 = 0.0;
    p.t_end = 1.75;
    p.default_dt = 0.25;
    p.description = "linear two-constituent exchange, analytic solution";
    return p;
}

BenchmarkProblem nonlinear_problem() {
    BenchmarkProblem p;
    p.system.name = "algal";
    p.system.dimension = 3;
    p.system.conservation = Conservation::FullyConservative;
    p.system.rates = [](std::span<const double> c, RateMatrices& r) {
        const double uptake = c[0] * c[1] / (c[0] + 1.0);
        r.production(1, 0) = uptake;
        r.destruction(0, 1) = uptake;
        r.production(2, 1) = 0.3 * c[1];
        r.destruction(1, 2) = 0.3 * c[1];
    };
    p.c0 = {9.98, 0.01, 0.01};
    p.t0 = 0.0;
    p.t_end = 30.0;
    p.default_dt = 0.5;
    p.description = "nonlinear algal bloom (nutrients, phytoplankton, detritus)";
    p.reference = ReferenceRecipe{ReferenceRecipe::Scheme::SSPRK104, 4, 1e-3};
    return p;
}

BenchmarkProblem robertson_problem() {
    BenchmarkProblem p;
    p.system.name = "robertson";
    p.system.dimension = 3;
    p.system.conservation = Conservation::FullyConservative;
    p.system.rates = [](std::span<const double> c, RateMatrices& r) {
        const double back = 1e4 * c[1] * c[2];
        const double forward = 0.04 * c[0];
        const double dimer = 3e7 * c[1] * c[1];
        r.production(0, 1) = back;
        r.destruction(1, 0) = back;
        r.production(1, 0) = forward;
        r.destruction(0, 1) = forward;
        r.production(2, 1) = dimer;
        r.destruction(1, 2) = dimer;
    };
    p.c0 = {1.0 - 2.0 * kPositivityFloor, kPositivityFloor, kPositivityFloor};
    p.t0 = 1e-6;
    p.t_end = 1e10;
    p.default_dt = 1e-6;
    p.schedule_kind = StepSchedule::Kind::Geometric;
    p.description = "stiff Robertson kinetics, geometric steps";
    p.reference = ReferenceRecipe{ReferenceRecipe::Scheme::FineMPDeC, 5, 32.0};
    return p;
}

std::optional<BenchmarkProblem> find_problem(std::string_view name) {
    if (name == "linear") return linear_problem();
    if (name == "algal") return nonlinear_problem();
    if (name == "robertson") return robertson_problem();
    return std::nullopt;
}

std::vector<std::string> problem_names() { return {"linear", "algal", "robertson"}; }

} // namespace mpdec
