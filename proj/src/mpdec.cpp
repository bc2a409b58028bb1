#include "mpdec/mpdec.hpp"

#include "mpdec/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <string>

namespace mpdec {

MPDeCConfig MPDeCConfig::for_order(std::size_t order) {
    if (order < 2) throw ValidationError("mPDeC order must be at least 2");
    MPDeCConfig c;
    c.subintervals = order - 1;
    c.corrections = order;
    return c;
}

std::size_t MPDeCConfig::order() const noexcept {
    return std::min(subintervals + 1, corrections);
}

void MPDeCConfig::validate() const {
    if (subintervals < 1 || subintervals > kMaxSubintervals) {
        throw ValidationError("mPDeC: M must lie in [1, " + std::to_string(kMaxSubintervals) + "]");
    }
    if (corrections < 1) throw ValidationError("mPDeC: K must be at least 1");
    if (!(positivity_floor > 0.0)) throw ValidationError("mPDeC: positivity floor must be > 0");
}

CorrectionGrid initial_grid(const ProductionDestructionSystem& system,
                            std::span<const double> c0, std::size_t subintervals) {
    CorrectionGrid grid;
    const RateMatrices r0 = evaluate_rates(system, c0);
    grid.states.assign(subintervals + 1, StateVector(c0.begin(), c0.end()));
    grid.rates.assign(subintervals + 1, r0);
    return grid;
}

DenseMatrix assemble_mass_matrix(const CorrectionGrid& previous, const DecTables& tables,
                                 std::size_t m, double dt) {
    const std::size_t nodes = tables.node_count();
    if (previous.node_count() != nodes || m >= nodes) {
        throw ValidationError("assemble_mass_matrix: grid does not match the tables");
    }
    const StateVector& denom = previous.states[m];
    const std::size_t n = denom.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (!(denom[i] > 0.0)) {
            throw NumericalError("assemble_mass_matrix: non-positive state at subtimestep " +
                                 std::to_string(m) + ", constituent " + std::to_string(i));
        }
    }

    DenseMatrix mass = DenseMatrix::identity(n);
    for (std::size_t r = 0; r < nodes; ++r) {
        const double theta = tables.theta(m, r);
        if (theta == 0.0) continue;
        const double w = dt * theta;
        const RateMatrices& rates = previous.rates[r];
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                // p_ij weighted by c_{gamma(j,i)}, d_ij by c_{gamma(i,j)}
                const std::size_t pc = *gamma(j, i, theta);
                const std::size_t dc = *gamma(i, j, theta);
                mass(i, pc) -= w * rates.production(i, j) / denom[pc];
                mass(i, dc) += w * rates.destruction(i, j) / denom[dc];
            }
        }
    }
    return mass;
}

namespace {

StateVector solve_subtimestep(const CorrectionGrid& previous, const DecTables& tables,
                              std::size_t m, double dt) {
    const DenseMatrix mass = assemble_mass_matrix(previous, tables, m, dt);
    StateVector next = solve(mass, previous.states.front());
    for (std::size_t i = 0; i < next.size(); ++i) {
        if (!(next[i] > 0.0) || !std::isfinite(next[i])) {
            throw NumericalError("mPDeC correction produced a non-positive state at subtimestep " +
                                 std::to_string(m) + ", constituent " + std::to_string(i));
        }
    }
    return next;
}

CorrectionGrid start_next(const CorrectionGrid& previous) {
    CorrectionGrid next;
    next.states.resize(previous.node_count());
    next.rates.resize(previous.node_count());
    next.states.front() = previous.states.front();
    next.rates.front() = previous.rates.front();
    return next;
}

} // namespace

CorrectionGrid correction_sweep(const ProductionDestructionSystem& system,
                                const CorrectionGrid& previous, const DecTables& tables,
                                double dt) {
    CorrectionGrid next = start_next(previous);
    for (std::size_t m = 1; m < previous.node_count(); ++m) {
        next.states[m] = solve_subtimestep(previous, tables, m, dt);
        evaluate_rates_into(system, next.states[m], next.rates[m]);
    }
    return next;
}

CorrectionGrid correction_sweep_parallel(const ProductionDestructionSystem& system,
                                         const CorrectionGrid& previous, const DecTables& tables,
                                         double dt) {
    CorrectionGrid next = start_next(previous);
    const long nodes = static_cast<long>(previous.node_count());
    std::vector<std::exception_ptr> failures(previous.node_count());

#pragma omp parallel for schedule(static)
    for (long m = 1; m < nodes; ++m) {
        try {
            next.states[m] = solve_subtimestep(previous, tables, static_cast<std::size_t>(m), dt);
            evaluate_rates_into(system, next.states[m], next.rates[m]);
        } catch (...) {
            failures[m] = std::current_exception();
        }
    }

    for (const auto& f : failures) {
        if (f) std::rethrow_exception(f);
    }
    return next;
}

const DecTables& tables_for(std::size_t subintervals) {
    static const std::array<DecTables, kMaxSubintervals + 1> all = [] {
        std::array<DecTables, kMaxSubintervals + 1> t;
        for (std::size_t m = 1; m <= kMaxSubintervals; ++m) t[m] = build_tables(m);
        return t;
    }();
    if (subintervals < 1 || subintervals > kMaxSubintervals) {
        throw ValidationError("tables_for: M must lie in [1, " + std::to_string(kMaxSubintervals) +
                              "]");
    }
    return all[subintervals];
}

StateVector mpdec_step(const ProductionDestructionSystem& system, std::span<const double> c_n,
                       double dt, const MPDeCConfig& config) {
    config.validate();
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ValidationError("mpdec_step: dt must be > 0");
    if (c_n.size() != system.dimension) {
        throw ValidationError("mpdec_step: state length does not match system dimension");
    }
    for (double v : c_n) {
        if (!(v > 0.0)) {
            throw ValidationError("mpdec_step: state must be strictly positive");
        }
    }
    const DecTables& tables = tables_for(config.subintervals);
    CorrectionGrid grid = initial_grid(system, c_n, config.subintervals);
    for (std::size_t k = 1; k <= config.corrections; ++k) {
        grid = config.policy == SweepPolicy::Parallel
                   ? correction_sweep_parallel(system, grid, tables, dt)
                   : correction_sweep(system, grid, tables, dt);
    }
    return std::move(grid.states.back());
}

StateVector floor_state(std::span<const double> c, double floor) {
    StateVector out(c.begin(), c.end());
    for (double& v : out) {
        if (!std::isfinite(v)) throw ValidationError("initial state has a non-finite entry");
        if (v < floor) v = floor;
    }
    return out;
}

Trajectory integrate(const ProductionDestructionSystem& system, std::span<const double> c0,
                     const StepSchedule& schedule, const MPDeCConfig& config) {
    config.validate();
    const StateVector start = floor_state(c0, config.positivity_floor);
    return march(start, schedule, [&](std::span<const double> c, double dt) {
        return mpdec_step(system, c, dt, config);
    });
}

} // namespace mpdec
