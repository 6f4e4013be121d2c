#include "dl/asymptotics.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "dl/eigenbasis.hpp"
#include "dl/numerics.hpp"
#include "dl/spectral_measures.hpp"

namespace dl {

namespace {
constexpr double kPi = std::numbers::pi;

LogValue log_sum_exp(const std::vector<double>& logs) {
    LogValue out;
    if (logs.empty()) return out;
    double mx = *std::max_element(logs.begin(), logs.end());
    if (!std::isfinite(mx)) return out;
    KahanSum s;
    for (double l : logs) s.add(std::exp(l - mx));
    out.log_value = mx + std::log(s.value());
    return out;
}

}  // namespace

AsymptoticConstants asymptotic_constants(int k, double q_eff) {
    if (k < 1 || q_eff <= 1.0) throw std::invalid_argument("asymptotic_constants: k >= 1, q > 1");
    AsymptoticConstants c;
    c.k = k;
    c.q_eff = q_eff;
    double lq = std::log(q_eff);
    double kpi = k * kPi;
    c.xi = std::cbrt(2.0 * kpi * kpi / lq);
    c.B = 3.0 * std::pow(kpi * lq / 2.0, 2.0 / 3.0);
    c.C = 6.0 * std::pow(lq * lq / (4.0 * kpi), 2.0 / 3.0);
    return c;
}

double log_ratio(const LogValue& a, const LogValue& b) {
    return std::exp(a.log_value - b.log_value);
}

LogValue sigma_direct(long N, int k, double gamma, double q, long n_cap, double rel_tol) {
    if (N < 0 || k < 1 || q <= 1.0) throw std::invalid_argument("sigma_direct: bad arguments");
    long n_lo = 2L * k + 1;
    if (n_cap < n_lo + 8) throw std::invalid_argument("sigma_direct: n_cap too small");
    double lq = std::log(q);
    std::vector<double> logs;
    logs.reserve(std::size_t(n_cap - n_lo + 1));
    for (long n = n_lo; n <= n_cap; ++n) {
        double c = std::cos(kPi * k / double(n));  // positive for n > 2k
        logs.push_back(gamma * std::log(double(n)) - n * lq + 2.0 * N * std::log(c));
    }
    LogValue sum = log_sum_exp(logs);

    // Crude tail bound ignoring the cosine decay: the summand is below
    // n^gamma q^{-n}, whose ratio between consecutive terms is at most
    // e^{gamma/n}/q <= 0.83 once n >= max(2 gamma, 8) for q >= 2.
    double t1 = gamma * std::log(double(n_cap + 1)) - (n_cap + 1) * lq;
    double tail_log = t1 + std::log(6.0);
    if (tail_log > sum.log_value + std::log(rel_tol))
        throw ToleranceError("sigma_direct: n_cap too small for requested tolerance");
    return sum;
}

LogValue sigma_asymptotic(long N, int k, double gamma, double q) {
    if (N < 1) throw std::invalid_argument("sigma_asymptotic: N >= 1");
    auto c = asymptotic_constants(k, q);
    LogValue out;
    out.log_value = gamma * std::log(c.xi) + 0.5 * std::log(2.0 * kPi / c.C) -
                    c.B * std::cbrt(double(N)) + (1.0 + 2.0 * gamma) / 6.0 * std::log(double(N));
    return out;
}

namespace {

LogValue return_asymptotic_impl(long N, int q, int r, double log_decay_per_step) {
    if (N < 1) throw std::invalid_argument("return_asymptotic: N >= 1");
    int qe = std::min(q, r);
    auto c = asymptotic_constants(1, double(qe));
    LogValue out;
    if (q == r) {
        double a1 = 2.0 * double(q - 1) * (q - 1) * std::sqrt(2.0 * kPi / c.C);
        out.log_value = std::log(a1) + double(N) * log_decay_per_step -
                        c.B * std::cbrt(double(N)) + std::log(double(N)) / 6.0;
    } else {
        double hi = std::max(q, r), lo = qe;
        double a1 = 4.0 * kPi * kPi / (c.xi * c.xi * c.xi) * std::sqrt(2.0 * kPi / c.C) * q * r *
                    (q + r) * (q - 1) * (r - 1) / std::pow(hi - lo, 3);
        out.log_value = std::log(a1) + double(N) * log_decay_per_step -
                        c.B * std::cbrt(double(N)) - 5.0 / 6.0 * std::log(double(N));
    }
    return out;
}

}  // namespace

LogValue return_asymptotic(long N, int q, int r) {
    // rho^{2N} decay; for q = r, rho = 1.
    double lr2 = 2.0 * std::log(2.0 * std::sqrt(double(q) * r) / (q + r));
    return return_asymptotic_impl(N, q, r, q == r ? 0.0 : lr2);
}

LogValue return_asymptotic_drifted(long N, int q, int r, double alpha) {
    if (alpha <= 0.0 || alpha >= 1.0) throw std::invalid_argument("alpha in (0,1)");
    return return_asymptotic_impl(N, q, r, std::log(4.0 * alpha * (1.0 - alpha)));
}

LogValue spectral_return_logsum(int q, int r, long N, int n_max) {
    if (n_max < 2 || n_max > 900)
        throw std::invalid_argument("spectral_return_logsum: n_max in [2, 900]");
    double log_rho = std::log(spectral_radius(q, r));
    std::vector<double> logs;
    for (auto [m, n] : coprime_pairs(n_max)) {
        double c = std::abs(std::cos(kPi * m / double(n)));
        if (c == 0.0) continue;
        double mass = plancherel_mass(m, n, q, r);
        logs.push_back(std::log(mass) + 2.0 * N * (std::log(c) + log_rho));
    }
    return log_sum_exp(logs);
}

}  // namespace dl
