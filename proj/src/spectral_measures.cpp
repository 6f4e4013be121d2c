#include "dl/spectral_measures.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "dl/eigenbasis.hpp"
#include "dl/numerics.hpp"

namespace dl {

double DiscreteMeasure::total_mass() const {
    double t = 0.0;
    for (const auto& a : atoms) t += a.mass;
    return t;
}

std::vector<std::pair<int, int>> coprime_pairs(int n_max) {
    std::vector<std::pair<int, int>> out;
    for (int n = 2; n <= n_max; ++n)
        for (int m = 1; m < n; ++m)
            if (std::gcd(m, n) == 1) out.emplace_back(m, n);
    return out;
}

namespace {

void check_coprime(int m, int n) {
    if (n < 2 || m < 1 || m >= n || std::gcd(m, n) != 1)
        throw std::invalid_argument("spectral atom requires coprime (m,n), 1 <= m < n");
}

// Sum_{n > M} n x^n for 0 < x < 1.
double poly_geom_tail(int M, double x) {
    return std::pow(x, M + 1) * ((M + 1) * (1.0 - x) + x) / ((1.0 - x) * (1.0 - x));
}

}  // namespace

double plancherel_mass(int m, int n, int q, int r) {
    check_coprime(m, n);
    if (q == r) return to_double(plancherel_mass_exact(m, n, q));
    double s2 = std::pow(std::sin(std::numbers::pi * m / n), 2);
    double lfactor =
        (std::log1p(-std::pow(double(r), -n)) - std::log1p(-std::pow(double(q), -n))) /
        (n * double(r - q));
    double num = 2.0 * q * r * (q + r) * double(q - 1) * double(r - 1) * s2;
    double den = double(r - q) * double(r - q) + 4.0 * q * r * s2;
    return lfactor * num / den;
}

Rational plancherel_mass_exact(int m, int n, int q) {
    check_coprime(m, n);
    BigInt num = (q - 1) * (q - 1);
    BigInt den = int_pow(q, n) - 1;
    Rational out(num, den);
    out.canonicalize();
    return out;
}

DiscreteMeasure plancherel_measure(int q, int r, int n_max) {
    if (n_max < 2) throw std::invalid_argument("plancherel_measure: n_max >= 2");
    DiscreteMeasure mu;
    mu.truncation_n_max = n_max;
    for (auto [m, n] : coprime_pairs(n_max)) {
        SpectralAtom a;
        a.m = m;
        a.n = n;
        a.lambda = eigenvalue(m, n, q, r);
        a.mass = plancherel_mass(m, n, q, r);
        mu.atoms.push_back(a);
    }
    if (q == r) {
        mu.tail_bound = 2.0 * (q - 1) * (q - 1) * poly_geom_tail(n_max, 1.0 / q);
    } else {
        int c = std::min(q, r);
        double per_n = double(q + r) * (q - 1) * (r - 1) / std::abs(double(r) - q);
        mu.tail_bound = per_n * std::pow(double(c), -n_max) / (c - 1);
    }
    return mu;
}

TruncatedValue mu_ox_mass(const DLVertex& x, int m, int n, int q, int r, int ell_max) {
    check_coprime(m, n);
    RelativePosition rp = relative_position(x);
    int nn = rp.common_height();
    int ell_min = std::max(1, (nn + n - 1) / n);
    if (ell_max < ell_min) throw std::invalid_argument("mu_ox_mass: ell_max too small");

    double d1 = rp.up1 + rp.dn1;
    double roq = double(r) / q;
    double theta = std::numbers::pi * m / n;
    double cmax = double(q - 1) * (r - 1);

    double value = 0.0;
    for (int ell = ell_min; ell <= ell_max; ++ell) {
        long L = long(ell) * n;
        KahanSum inner;
        for (long k = 0; k <= L - nn; ++k) {
            long k1 = k, k2 = L - nn - k;
            double C;
            if (k1 > 0 && k2 > 0) C = cmax;
            else if (k1 == 0 && k2 > 0) C = -double(r - 1);
            else if (k1 > 0 && k2 == 0) C = -double(q - 1);
            else C = 1.0;
            inner.add(C * std::pow(roq, k + d1 / 2.0) * std::sin((k + rp.up1) * theta) *
                      std::sin((k + rp.dn1) * theta));
        }
        value += 2.0 * std::pow(double(r), -double(L)) / double(L) * inner.value();
    }

    // |term(ell)| <= 3 (q-1)(r-1) (r/q)^{d1/2} max(1, (q/r)^{nn}) c^{-ell n}
    // with c = min(q,r): the largest inner summand sits at k = L-nn when
    // r >= q and at k = 0 otherwise, and both r^{-L} and q^{-L} are at most
    // c^{-L}. The geometric tail with ratio c^{-n} <= 1/2 doubles the first
    // omitted term.
    TruncatedValue out;
    out.value = value;
    int c = std::min(q, r);
    double lead = 3.0 * cmax * std::pow(roq, d1 / 2.0) * std::max(1.0, std::pow(1.0 / roq, nn));
    out.tail_bound = 2.0 * lead * std::pow(double(c), -double(ell_max + 1) * n);
    return out;
}

DiscreteMeasure mu_ox_measure(const DLVertex& x, int q, int r, int n_max, int ell_max) {
    DiscreteMeasure mu;
    mu.truncation_n_max = n_max;
    double tail = 0.0;
    for (auto [m, n] : coprime_pairs(n_max)) {
        auto tv = mu_ox_mass(x, m, n, q, r, ell_max);
        SpectralAtom a;
        a.m = m;
        a.n = n;
        a.lambda = eigenvalue(m, n, q, r);
        a.mass = tv.value;
        mu.atoms.push_back(a);
        tail += tv.tail_bound;
    }
    // Frequencies beyond n_max: each |mass(m,n)| is at most
    // 6 (q-1)(r-1) (r/q)^{d1/2} max(1, (q/r)^{nn}) c^{-max(n,nn)}, summed
    // over at most n values of m per n.
    RelativePosition rp = relative_position(x);
    int nn = rp.common_height();
    int c = std::min(q, r);
    double roq = double(r) / q;
    double lead = 6.0 * double(q - 1) * (r - 1) *
                  std::pow(roq, (rp.up1 + rp.dn1) / 2.0) *
                  std::max(1.0, std::pow(1.0 / roq, nn));
    double freq_tail = 0.0;
    for (int n = n_max + 1; n <= nn; ++n) freq_tail += n * std::pow(double(c), -nn);
    freq_tail += poly_geom_tail(std::max(n_max, nn), 1.0 / c);
    mu.tail_bound = tail + lead * freq_tail;
    return mu;
}

TruncatedValue spectral_moment(const DiscreteMeasure& mu, int N, int q, int r) {
    if (N < 0) throw std::invalid_argument("spectral_moment: N >= 0");
    KahanSum sum;
    for (const auto& a : mu.atoms) sum.add(std::pow(a.lambda, N) * a.mass);
    TruncatedValue out;
    out.value = sum.value();
    out.tail_bound = mu.tail_bound * std::pow(spectral_radius(q, r), N);
    return out;
}

}  // namespace dl
