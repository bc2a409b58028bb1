#include "mpdec/pds.hpp"

#include "mpdec/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mpdec {

namespace {

void check_state(const ProductionDestructionSystem& system, std::span<const double> c) {
    if (c.size() != system.dimension) {
        throw ValidationError("system '" + system.name + "' has dimension " +
                              std::to_string(system.dimension) + ", got a state of length " +
                              std::to_string(c.size()));
    }
    for (double v : c) {
        if (!std::isfinite(v)) {
            throw ValidationError("system '" + system.name + "': non-finite state entry");
        }
    }
}

// Signs are only enforced on the nonnegative orthant; explicit baselines may
// evaluate rates at states that have already gone negative.
void check_table(const ProductionDestructionSystem& system, const DenseMatrix& m,
                 const char* which, bool enforce_sign) {
    const std::size_t n = m.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double v = m(i, j);
            if (!std::isfinite(v)) {
                throw NumericalError("system '" + system.name + "': non-finite " + which +
                                     " rate at (" + std::to_string(i) + "," + std::to_string(j) +
                                     ")");
            }
            if (enforce_sign && v < 0.0) {
                throw NumericalError("system '" + system.name + "': negative " + which +
                                     " rate at (" + std::to_string(i) + "," + std::to_string(j) +
                                     ")");
            }
        }
    }
}

} // namespace

void evaluate_rates_into(const ProductionDestructionSystem& system, std::span<const double> c,
                         RateMatrices& out) {
    check_state(system, c);
    if (out.production.size() != system.dimension) out = RateMatrices(system.dimension);
    out.production.fill(0.0);
    out.destruction.fill(0.0);
    system.rates(c, out);
    const bool nonnegative = std::all_of(c.begin(), c.end(), [](double v) { return v >= 0.0; });
    check_table(system, out.production, "production", nonnegative);
    check_table(system, out.destruction, "destruction", nonnegative);
}

RateMatrices evaluate_rates(const ProductionDestructionSystem& system, std::span<const double> c) {
    RateMatrices out(system.dimension);
    evaluate_rates_into(system, c, out);
    return out;
}

std::vector<double> total_exchange(const RateMatrices& rates) {
    const std::size_t n = rates.production.size();
    std::vector<double> e(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) acc += rates.production(i, j) - rates.destruction(i, j);
        e[i] = acc;
    }
    return e;
}

std::vector<double> total_exchange(const ProductionDestructionSystem& system,
                                   std::span<const double> c) {
    return total_exchange(evaluate_rates(system, c));
}

ConservationReport check_conservative_structure(const ProductionDestructionSystem& system,
                                                std::span<const StateVector> samples, double tol) {
    ConservationReport report;
    const bool check_diagonal = system.conservation == Conservation::FullyConservative;
    RateMatrices rates(system.dimension);

    auto record = [&](std::size_t i, std::size_t j, std::size_t s, double mismatch) {
        if (!report.worst || mismatch > report.worst_mismatch) {
            report.worst_mismatch = mismatch;
            report.worst = ConservationViolation{i, j, s, samples[s], mismatch};
        }
        if (mismatch > tol) {
            report.passed = false;
            report.violations.push_back({i, j, s, samples[s], mismatch});
        }
    };

    for (std::size_t s = 0; s < samples.size(); ++s) {
        for (double v : samples[s]) {
            if (!(v > 0.0)) throw ValidationError("check_conservative_structure: sample " +
                                                  std::to_string(s) + " is not strictly positive");
        }
        evaluate_rates_into(system, samples[s], rates);
        const std::size_t n = system.dimension;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j) {
                    if (check_diagonal) {
                        record(i, i, s,
                               std::max(rates.production(i, i), rates.destruction(i, i)));
                    }
                    continue;
                }
                record(i, j, s, std::abs(rates.production(i, j) - rates.destruction(j, i)));
            }
        }
    }
    return report;
}

double sum(std::span<const double> c) noexcept {
    return std::accumulate(c.begin(), c.end(), 0.0);
}

} // namespace mpdec
