#pragma once

#include "mpdec/dense.hpp"

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace mpdec {

inline constexpr std::size_t kMaxSubintervals = 15;

/// Subtimestep layout and quadrature weights on the unit interval for M
/// equispaced subintervals. All entries are independent of the step size;
/// callers scale by dt.
struct DecTables {
    std::size_t subintervals = 0;   ///< M
    std::vector<double> nodes;      ///< M+1 points, nodes[m] = m/M
    DenseMatrix theta;              ///< theta(m, r) = integral over [0, nodes[m]] of phi_r
    std::vector<double> beta;       ///< beta[m] = nodes[m] (left-Riemann weights)

    [[nodiscard]] std::size_t node_count() const noexcept { return subintervals + 1; }
};

/// Builds the tables for 1 <= M <= kMaxSubintervals. The weights are
/// integrated exactly in rational arithmetic and rounded once to double.
[[nodiscard]] DecTables build_tables(std::size_t subintervals);

/// Value of the r-th Lagrange basis polynomial on `nodes` at s.
[[nodiscard]] double lagrange_basis_value(std::span<const double> nodes, std::size_t r, double s);

/// Debug dump: header `m,node,beta,theta_0,...,theta_M`.
void write_tables_csv(const DecTables& tables, std::ostream& out);

} // namespace mpdec
