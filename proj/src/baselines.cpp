#include "mpdec/baselines.hpp"

#include "mpdec/dec_tables.hpp"
#include "mpdec/dense.hpp"
#include "mpdec/errors.hpp"
#include "mpdec/mpdec.hpp"

#include <string>
#include <vector>

namespace mpdec {

namespace {

void require_positive(std::span<const double> c, const char* who) {
    for (double v : c) {
        if (!(v > 0.0)) throw ValidationError(std::string(who) + ": state must be strictly positive");
    }
}

// y += a * E(c)
void add_scaled_exchange(const ProductionDestructionSystem& system, std::span<const double> c,
                         double a, std::span<double> y) {
    const auto e = total_exchange(system, c);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * e[i];
}

} // namespace

StateVector explicit_euler_step(const ProductionDestructionSystem& system,
                                std::span<const double> c, double dt) {
    StateVector next(c.begin(), c.end());
    add_scaled_exchange(system, c, dt, next);
    return next;
}

StateVector patankar_euler_step(const ProductionDestructionSystem& system,
                                std::span<const double> c, double dt) {
    require_positive(c, "patankar_euler_step");
    const RateMatrices rates = evaluate_rates(system, c);
    const std::size_t n = c.size();
    StateVector next(n);
    for (std::size_t i = 0; i < n; ++i) {
        double production = 0.0;
        double destruction = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            production += rates.production(i, j);
            destruction += rates.destruction(i, j);
        }
        next[i] = (c[i] + dt * production) / (1.0 + dt * destruction / c[i]);
    }
    return next;
}

StateVector modified_patankar_euler_step(const ProductionDestructionSystem& system,
                                         std::span<const double> c, double dt) {
    require_positive(c, "modified_patankar_euler_step");
    const RateMatrices rates = evaluate_rates(system, c);
    const std::size_t n = c.size();
    DenseMatrix mass(n);
    for (std::size_t i = 0; i < n; ++i) {
        double destruction = 0.0;
        for (std::size_t k = 0; k < n; ++k) destruction += rates.destruction(i, k);
        mass(i, i) = 1.0 + dt * destruction / c[i];
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) mass(i, j) = -dt * rates.production(i, j) / c[j];
        }
    }
    return solve(mass, c);
}

StateVector classical_dec_step(const ProductionDestructionSystem& system,
                               std::span<const double> c, double dt, std::size_t subintervals,
                               std::size_t corrections) {
    if (corrections < 1) throw ValidationError("classical_dec_step: K must be at least 1");
    const DecTables& tables = tables_for(subintervals);
    const std::size_t nodes = tables.node_count();

    std::vector<StateVector> states(nodes, StateVector(c.begin(), c.end()));
    std::vector<std::vector<double>> exchange(nodes, total_exchange(system, c));
    for (std::size_t k = 1; k <= corrections; ++k) {
        std::vector<StateVector> next(nodes, StateVector(c.begin(), c.end()));
        for (std::size_t m = 1; m < nodes; ++m) {
            for (std::size_t r = 0; r < nodes; ++r) {
                const double w = dt * tables.theta(m, r);
                for (std::size_t i = 0; i < c.size(); ++i) next[m][i] += w * exchange[r][i];
            }
        }
        states = std::move(next);
        for (std::size_t m = 1; m < nodes; ++m) exchange[m] = total_exchange(system, states[m]);
    }
    return states.back();
}

StateVector ssprk104_step(const ProductionDestructionSystem& system, std::span<const double> c,
                          double dt) {
    const std::size_t n = c.size();
    StateVector q1(c.begin(), c.end());
    StateVector q2(c.begin(), c.end());
    for (int stage = 0; stage < 5; ++stage) add_scaled_exchange(system, q1, dt / 6.0, q1);
    for (std::size_t i = 0; i < n; ++i) {
        q2[i] = q2[i] / 25.0 + 9.0 * q1[i] / 25.0;
        q1[i] = 15.0 * q2[i] - 5.0 * q1[i];
    }
    for (int stage = 0; stage < 4; ++stage) add_scaled_exchange(system, q1, dt / 6.0, q1);
    const auto e = total_exchange(system, q1);
    StateVector next(n);
    for (std::size_t i = 0; i < n; ++i) next[i] = q2[i] + 0.6 * q1[i] + 0.1 * dt * e[i];
    return next;
}

Trajectory ssprk104_integrate(const ProductionDestructionSystem& system,
                              std::span<const double> c0, double t0, double dt,
                              std::size_t steps) {
    const auto schedule = StepSchedule::fixed_steps(t0, dt, steps);
    return march(c0, schedule, [&](std::span<const double> c, double h) {
        return ssprk104_step(system, c, h);
    });
}

} // namespace mpdec
