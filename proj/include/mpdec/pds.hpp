#pragma once

#include "mpdec/dense.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mpdec {

/// Concentrations of the I constituents at one (sub)timestep.
using StateVector = std::vector<double>;

/// Production and destruction tables at one state. production(i, j) is the
/// rate at which constituent j turns into i; destruction(i, j) the rate at
/// which i turns into j.
struct RateMatrices {
    DenseMatrix production;
    DenseMatrix destruction;

    RateMatrices() = default;
    explicit RateMatrices(std::size_t n) : production(n), destruction(n) {}
};

enum class Conservation {
    None,
    Conservative,      ///< p(i,j) == d(j,i)
    FullyConservative, ///< additionally p(i,i) == d(i,i) == 0
};

/// Fills `out` (pre-sized, zeroed by the caller) with the rate tables at `c`.
using RateFunction = std::function<void(std::span<const double> c, RateMatrices& out)>;

struct ProductionDestructionSystem {
    std::string name;
    std::size_t dimension = 0;
    RateFunction rates;
    Conservation conservation = Conservation::None;
    /// Closed-form solution, when one is known.
    std::function<StateVector(double)> analytic_solution;
};

/// Evaluates the rate tables, rejecting dimension mismatches (ValidationError)
/// and non-finite or negative entries (NumericalError).
[[nodiscard]] RateMatrices evaluate_rates(const ProductionDestructionSystem& system,
                                          std::span<const double> c);

/// Same as above but reuses `out`; used on hot paths.
void evaluate_rates_into(const ProductionDestructionSystem& system,
                         std::span<const double> c, RateMatrices& out);

/// E_i = P_i - D_i, i.e. the row sums of (production - destruction).
[[nodiscard]] std::vector<double> total_exchange(const RateMatrices& rates);
[[nodiscard]] std::vector<double> total_exchange(const ProductionDestructionSystem& system,
                                                 std::span<const double> c);

struct ConservationViolation {
    std::size_t i = 0;
    std::size_t j = 0;
    std::size_t sample = 0;
    StateVector state;
    double mismatch = 0.0;
};

struct ConservationReport {
    bool passed = true;
    /// Largest |p(i,j) - d(j,i)| seen over all samples.
    double worst_mismatch = 0.0;
    std::optional<ConservationViolation> worst;
    /// Every entry that exceeded the tolerance.
    std::vector<ConservationViolation> violations;
};

/// Samples the declared conservation structure. Diagonal entries are only
/// checked for fully conservative systems; a system flagged Conservation::None
/// is still checked for p(i,j) == d(j,i) off the diagonal.
[[nodiscard]] ConservationReport check_conservative_structure(
    const ProductionDestructionSystem& system, std::span<const StateVector> samples, double tol);

[[nodiscard]] double sum(std::span<const double> c) noexcept;

} // namespace mpdec
