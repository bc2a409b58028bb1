#include "mpdec/dec_tables.hpp"

#include "mpdec/errors.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdio>
#include <ostream>
#include <string>

namespace mpdec {

namespace {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

// Coefficients (lowest degree first) of prod_{q != r} (u - q) over q = 0..M,
// with u = M s the node index coordinate.
std::vector<Integer> numerator_polynomial(std::size_t subintervals, std::size_t r) {
    std::vector<Integer> poly{1};
    for (std::size_t q = 0; q <= subintervals; ++q) {
        if (q == r) continue;
        std::vector<Integer> next(poly.size() + 1, 0);
        for (std::size_t k = 0; k < poly.size(); ++k) {
            next[k + 1] += poly[k];
            next[k] -= poly[k] * static_cast<long long>(q);
        }
        poly = std::move(next);
    }
    return poly;
}

// integral_0^{m/M} phi_r(s) ds = (1/M) integral_0^m prod_{q != r} (u - q)/(r - q) du
Rational exact_theta(std::size_t subintervals, std::size_t m, std::size_t r,
                     const std::vector<Integer>& poly) {
    Integer denom = 1;
    for (std::size_t q = 0; q <= subintervals; ++q) {
        if (q != r) denom *= static_cast<long long>(r) - static_cast<long long>(q);
    }
    Rational integral = 0;
    Integer upper_power = static_cast<long long>(m);
    for (std::size_t k = 0; k < poly.size(); ++k) {
        integral += Rational(poly[k] * upper_power, Integer(static_cast<long long>(k + 1)));
        upper_power *= static_cast<long long>(m);
    }
    return integral / Rational(denom * static_cast<long long>(subintervals));
}

} // namespace

DecTables build_tables(std::size_t subintervals) {
    if (subintervals < 1 || subintervals > kMaxSubintervals) {
        throw ValidationError("build_tables: M must lie in [1, " +
                              std::to_string(kMaxSubintervals) + "], got " +
                              std::to_string(subintervals));
    }
    DecTables t;
    t.subintervals = subintervals;
    const std::size_t n = subintervals + 1;
    t.nodes.resize(n);
    t.beta.resize(n);
    t.theta = DenseMatrix(n);
    for (std::size_t m = 0; m < n; ++m) {
        const Rational node(static_cast<long long>(m), static_cast<long long>(subintervals));
        t.nodes[m] = node.convert_to<double>();
        t.beta[m] = t.nodes[m];
    }
    for (std::size_t r = 0; r < n; ++r) {
        const auto poly = numerator_polynomial(subintervals, r);
        for (std::size_t m = 1; m < n; ++m) {
            t.theta(m, r) = exact_theta(subintervals, m, r, poly).convert_to<double>();
        }
    }
    return t;
}

double lagrange_basis_value(std::span<const double> nodes, std::size_t r, double s) {
    if (r >= nodes.size()) throw ValidationError("lagrange_basis_value: basis index out of range");
    double value = 1.0;
    for (std::size_t q = 0; q < nodes.size(); ++q) {
        if (q == r) continue;
        const double gap = nodes[r] - nodes[q];
        if (gap == 0.0) throw ValidationError("lagrange_basis_value: repeated nodes");
        value *= (s - nodes[q]) / gap;
    }
    return value;
}

void write_tables_csv(const DecTables& tables, std::ostream& out) {
    const std::size_t n = tables.node_count();
    out << "m,node,beta";
    for (std::size_t r = 0; r < n; ++r) out << ",theta_" << r;
    out << '\n';
    char buf[40];
    auto put = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out << buf;
    };
    for (std::size_t m = 0; m < n; ++m) {
        out << m << ',';
        put(tables.nodes[m]);
        out << ',';
        put(tables.beta[m]);
        for (std::size_t r = 0; r < n; ++r) {
            out << ',';
            put(tables.theta(m, r));
        }
        out << '\n';
    }
}

} // namespace mpdec
