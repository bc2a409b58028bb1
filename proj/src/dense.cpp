#include "mpdec/dense.hpp"

#include "mpdec/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace mpdec {

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix id(n);
    for (std::size_t i = 0; i < n; ++i) id(i, i) = 1.0;
    return id;
}

void DenseMatrix::fill(double v) { std::fill(data_.begin(), data_.end(), v); }

std::vector<double> solve(const DenseMatrix& a, std::span<const double> b) {
    const std::size_t n = a.size();
    if (b.size() != n) {
        throw ValidationError("solve: right-hand side has length " + std::to_string(b.size()) +
                              ", matrix is " + std::to_string(n) + "x" + std::to_string(n));
    }
    DenseMatrix lu = a;
    std::vector<double> x(b.begin(), b.end());

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        double best = std::abs(lu(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(lu(r, col)) > best) {
                best = std::abs(lu(r, col));
                pivot = r;
            }
        }
        if (!(best > 0.0) || !std::isfinite(best)) {
            throw NumericalError("solve: singular matrix (zero pivot in column " +
                                 std::to_string(col) + ")");
        }
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu(col, j), lu(pivot, j));
            std::swap(x[col], x[pivot]);
        }
        const double inv = 1.0 / lu(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = lu(r, col) * inv;
            if (f == 0.0) continue;
            lu(r, col) = 0.0;
            for (std::size_t j = col + 1; j < n; ++j) lu(r, j) -= f * lu(col, j);
            x[r] -= f * x[col];
        }
    }
    for (std::size_t i = n; i-- > 0;) {
        double acc = x[i];
        for (std::size_t j = i + 1; j < n; ++j) acc -= lu(i, j) * x[j];
        x[i] = acc / lu(i, i);
    }
    return x;
}

bool is_column_diagonally_dominant(const DenseMatrix& a) {
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i) {
        double off = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) off += std::abs(a(j, i));
        }
        if (!(a(i, i) > off)) return false;
    }
    return true;
}

DenseMatrix jacobi_inverse_iteration(const DenseMatrix& a, std::size_t iterations) {
    const std::size_t n = a.size();
    if (!is_column_diagonally_dominant(a)) {
        throw ValidationError("jacobi_inverse_iteration: matrix is not column diagonally dominant");
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && a(i, j) > 0.0) {
                throw ValidationError("jacobi_inverse_iteration: positive off-diagonal entry");
            }
        }
    }

    // B = I - D^{-1} A, zero diagonal, nonnegative off-diagonal.
    DenseMatrix b(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j) b(i, j) = -a(i, j) / a(i, i);
        }
    }

    DenseMatrix z = DenseMatrix::identity(n);
    DenseMatrix next(n);
    for (std::size_t s = 0; s < iterations; ++s) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                double acc = (i == j) ? 1.0 / a(i, i) : 0.0;
                for (std::size_t l = 0; l < n; ++l) acc += b(i, l) * z(l, j);
                next(i, j) = acc;
            }
        }
        std::swap(z, next);
    }
    return z;
}

std::vector<double> multiply(const DenseMatrix& a, std::span<const double> x) {
    const std::size_t n = a.size();
    std::vector<double> y(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) acc += a(i, j) * x[j];
        y[i] = acc;
    }
    return y;
}

} // namespace mpdec
