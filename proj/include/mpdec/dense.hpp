#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace mpdec {

/// Square row-major matrix. Sized for the handful of constituents a
/// production-destruction system carries; no sparsity support.
class DenseMatrix {
public:
    DenseMatrix() = default;
    explicit DenseMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

    static DenseMatrix identity(std::size_t n);

    [[nodiscard]] std::size_t size() const noexcept { return n_; }

    double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * n_ + j]; }

    [[nodiscard]] std::span<const double> row(std::size_t i) const noexcept {
        return {data_.data() + i * n_, n_};
    }
    [[nodiscard]] std::span<const double> values() const noexcept { return data_; }

    void fill(double v);

    bool operator==(const DenseMatrix&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

/// Gaussian elimination with partial pivoting. Throws NumericalError when a
/// pivot vanishes (a singular mass matrix means a zero or negative state got
/// through upstream).
[[nodiscard]] std::vector<double> solve(const DenseMatrix& a, std::span<const double> b);

/// Strict column diagonal dominance: a(i,i) > sum_{j != i} |a(j,i)| for every
/// column i.
[[nodiscard]] bool is_column_diagonally_dominant(const DenseMatrix& a);

/// Jacobi iteration Z <- (I - D^{-1} A) Z + D^{-1}, Z0 = I, which converges to
/// A^{-1} for column-dominant A. Every iterate of an M-matrix stays entrywise
/// nonnegative, so this witnesses inverse positivity in tests. Not used on the
/// production solve path.
[[nodiscard]] DenseMatrix jacobi_inverse_iteration(const DenseMatrix& a, std::size_t iterations);

[[nodiscard]] std::vector<double> multiply(const DenseMatrix& a, std::span<const double> x);

} // namespace mpdec
