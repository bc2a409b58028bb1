#pragma once

#include "mpdec/pds.hpp"
#include "mpdec/trajectory.hpp"

#include <cstddef>
#include <span>

namespace mpdec {

/// c + dt E(c). Conservative, not positivity preserving.
[[nodiscard]] StateVector explicit_euler_step(const ProductionDestructionSystem& system,
                                              std::span<const double> c, double dt);

/// Destruction weighted by c_i^{n+1}/c_i^n, so each row decouples:
/// c_i^{n+1} = (c_i + dt P_i) / (1 + dt D_i / c_i). Positive, not conservative.
[[nodiscard]] StateVector patankar_euler_step(const ProductionDestructionSystem& system,
                                              std::span<const double> c, double dt);

/// Production and destruction both weighted by new/old ratios; one linear
/// solve per step. Positive and conservative, first order.
[[nodiscard]] StateVector modified_patankar_euler_step(const ProductionDestructionSystem& system,
                                                       std::span<const double> c, double dt);

/// Explicit deferred correction with the equispaced tables:
/// c^{m,(k)} = c^0 + dt sum_r theta(m,r) E(c^{r,(k-1)}). Negative weights
/// can destroy positivity.
[[nodiscard]] StateVector classical_dec_step(const ProductionDestructionSystem& system,
                                             std::span<const double> c, double dt,
                                             std::size_t subintervals, std::size_t corrections);

/// Ketcheson's ten-stage, fourth-order SSP Runge-Kutta method in its
/// two-register low-storage form.
[[nodiscard]] StateVector ssprk104_step(const ProductionDestructionSystem& system,
                                        std::span<const double> c, double dt);

[[nodiscard]] Trajectory ssprk104_integrate(const ProductionDestructionSystem& system,
                                            std::span<const double> c0, double t0, double dt,
                                            std::size_t steps);

} // namespace mpdec
