#pragma once

#include <cmath>
#include <limits>

namespace dl {

/// Saddle data of Phi_k(x) = x log q + (k pi)^2 / x^2: the minimizer xi_k,
/// the minimum B_k, and the curvature C_k there. q_eff is the base of the
/// geometric decay feeding the Laplace sum; for mixed branching it is the
/// smaller of the two branching numbers.
struct AsymptoticConstants {
    int k = 1;
    double q_eff = 2.0;
    double xi = 0.0;
    double B = 0.0;
    double C = 0.0;
};

AsymptoticConstants asymptotic_constants(int k, double q_eff);

/// Number carried in log space; exact zero has log = -inf.
struct LogValue {
    double log_value = -std::numeric_limits<double>::infinity();

    double value() const { return std::exp(log_value); }
    double log10() const { return log_value / std::log(10.0); }
};

/// Ratio a/b evaluated without underflow.
double log_ratio(const LogValue& a, const LogValue& b);

/// Direct high-precision evaluation of
/// Sigma(N; k, gamma) = sum_{n >= 2k+1}^{n_cap} n^gamma q^{-n} cos^{2N}(k pi/n),
/// in log space with compensated summation. Throws ToleranceError when the
/// crude tail bound at n_cap exceeds rel_tol times the sum.
LogValue sigma_direct(long N, int k, double gamma, double q, long n_cap,
                      double rel_tol = 1e-9);

/// First-order closed form
/// xi_k^gamma sqrt(2 pi / C_k) exp(-B_k N^{1/3}) N^{(1+2 gamma)/6}.
LogValue sigma_asymptotic(long N, int k, double gamma, double q);

/// Leading-order 2N-step return probability. With alpha given, the drifted
/// variant replaces rho^{2N} by (4 alpha (1-alpha))^N.
LogValue return_asymptotic(long N, int q, int r);
LogValue return_asymptotic_drifted(long N, int q, int r, double alpha);

/// log p^{(2N)}(o,o) from the spectral atoms with n <= n_max, summed in log
/// space so the rho^{2N} decay never underflows.
LogValue spectral_return_logsum(int q, int r, long N, int n_max);

}  // namespace dl
