#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace dl {

struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ToleranceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConsistencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Eigenvalues of a dense symmetric matrix (row-major, n x n), ascending.
/// Householder tridiagonalization followed by implicit-shift QL.
std::vector<double> symmetric_eigenvalues(std::vector<double> a, int n);

/// Adaptive Simpson quadrature; throws ToleranceError when the recursion
/// depth is exhausted before reaching tol.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth = 40);

/// Bisection on a bracketing interval [lo, hi] with f(lo) f(hi) <= 0, down to
/// a relative interval width of about 1e-15, followed by one Newton polish
/// using a central-difference slope.
double bisect_root(const std::function<double(double)>& f, double lo, double hi);

struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        double y = x - carry;
        double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

/// xoshiro256** with splitmix64 seeding: seedable, documented, bit-exact
/// across platforms.
struct Xoshiro256 {
    std::array<std::uint64_t, 4> state;

    explicit Xoshiro256(std::uint64_t seed);
    std::uint64_t next();
    double uniform01();                          // 53-bit mantissa in [0,1)
    std::uint64_t below(std::uint64_t bound);    // unbiased via rejection
};

}  // namespace dl
