#pragma once

#include "mpdec/dec_tables.hpp"
#include "mpdec/dense.hpp"
#include "mpdec/pds.hpp"
#include "mpdec/trajectory.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace mpdec {

/// Smallest concentration admitted at integration entry.
inline constexpr double kPositivityFloor = 2.22e-16;

enum class SweepPolicy {
    Serial,   ///< subtimesteps solved in order; the reference path
    Parallel, ///< subtimesteps solved concurrently with OpenMP
};

struct MPDeCConfig {
    std::size_t subintervals = 1; ///< M
    std::size_t corrections = 2;  ///< K
    double positivity_floor = kPositivityFloor;
    SweepPolicy policy = SweepPolicy::Serial;

    /// Order p scheme: M = p - 1 subintervals, K = p corrections.
    static MPDeCConfig for_order(std::size_t order);

    /// Formal order min(M + 1, K).
    [[nodiscard]] std::size_t order() const noexcept;
    void validate() const;
};

/// States and frozen rate tables at every subtimestep of one correction.
/// states[0] is the initial state of the step for every correction.
struct CorrectionGrid {
    std::vector<StateVector> states;
    std::vector<RateMatrices> rates;

    [[nodiscard]] std::size_t node_count() const noexcept { return states.size(); }
};

/// Correction zero: every subtimestep holds c0.
[[nodiscard]] CorrectionGrid initial_grid(const ProductionDestructionSystem& system,
                                          std::span<const double> c0, std::size_t subintervals);

/// Patankar weight placement: a for positive weights, b for negative ones.
/// A zero weight contributes nothing, so no index is returned.
[[nodiscard]] constexpr std::optional<std::size_t> gamma(std::size_t a, std::size_t b,
                                                         double theta) noexcept {
    if (theta > 0.0) return a;
    if (theta < 0.0) return b;
    return std::nullopt;
}

/// Mass matrix of the linear system for subtimestep m built from correction
/// k-1. Diagonal entries are positive, off-diagonal ones nonpositive, and for
/// conservative systems the matrix is strictly column diagonally dominant.
[[nodiscard]] DenseMatrix assemble_mass_matrix(const CorrectionGrid& previous,
                                               const DecTables& tables, std::size_t m, double dt);

/// One correction: solves M(c^{m,(k-1)}) c^{m,(k)} = c^0 for m = 1..M in order
/// and evaluates the rates at the new states.
[[nodiscard]] CorrectionGrid correction_sweep(const ProductionDestructionSystem& system,
                                              const CorrectionGrid& previous,
                                              const DecTables& tables, double dt);

/// Same result as correction_sweep, bit for bit; the M subtimestep solves
/// run in an OpenMP parallel loop.
[[nodiscard]] CorrectionGrid correction_sweep_parallel(const ProductionDestructionSystem& system,
                                                       const CorrectionGrid& previous,
                                                       const DecTables& tables, double dt);

/// Process-wide tables for M subintervals, built on first use.
[[nodiscard]] const DecTables& tables_for(std::size_t subintervals);

/// Advances c_n by dt: K correction sweeps from the constant grid, returning
/// c^{M,(K)}. c_n must be strictly positive; it is not floored here.
[[nodiscard]] StateVector mpdec_step(const ProductionDestructionSystem& system,
                                     std::span<const double> c_n, double dt,
                                     const MPDeCConfig& config);

/// Floors c0 at config.positivity_floor, then marches mpdec_step along the
/// schedule.
[[nodiscard]] Trajectory integrate(const ProductionDestructionSystem& system,
                                   std::span<const double> c0, const StepSchedule& schedule,
                                   const MPDeCConfig& config);

[[nodiscard]] StateVector floor_state(std::span<const double> c, double floor);

} // namespace mpdec
