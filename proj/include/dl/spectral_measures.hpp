#pragma once

#include <vector>

#include "dl/sparse.hpp"

namespace dl {

/// Point mass of a spectral measure at lambda_{m,n} = rho(P) cos(m pi / n),
/// (m,n) coprime, 1 <= m < n.
struct SpectralAtom {
    int m = 0;
    int n = 0;
    double lambda = 0.0;
    double mass = 0.0;
};

/// Truncated atomic measure with a rigorous bound on the total omitted mass.
struct DiscreteMeasure {
    std::vector<SpectralAtom> atoms;  // n ascending, then m ascending
    int truncation_n_max = 0;
    double tail_bound = 0.0;

    double total_mass() const;
};

/// Mass of the Plancherel measure mu_{o,o} at lambda_{m,n}.
double plancherel_mass(int m, int n, int q, int r);

/// Exact value (q-1)^2/(q^n - 1) in the q = r case.
Rational plancherel_mass_exact(int m, int n, int q);

/// All atoms with n <= n_max plus a geometric tail bound. The bound uses
/// log(1+u) <= u and (1 - q^{-n}) >= 1/2, giving per-n mass at most
/// (q+r)(q-1)(r-1) q^{-n}/(r-q) when r > q and 2 n (q-1)^2 q^{-n} when r = q.
DiscreteMeasure plancherel_measure(int q, int r, int n_max);

/// Value with truncation tail for the alternating double series giving
/// mu_{o,x}(lambda_{m,n}).
struct TruncatedValue {
    double value = 0.0;
    double tail_bound = 0.0;
};

TruncatedValue mu_ox_mass(const DLVertex& x, int m, int n, int q, int r, int ell_max);

/// Off-diagonal measure mu_{o,x} truncated to n <= n_max; each atom evaluated
/// with the given outer cutoff. Total reported tail adds the per-atom tails
/// and the omitted-frequency bound.
DiscreteMeasure mu_ox_measure(const DLVertex& x, int q, int r, int n_max, int ell_max);

/// sum lambda^N mass over atoms; the error bound is tail_bound * rho(P)^N.
TruncatedValue spectral_moment(const DiscreteMeasure& mu, int N, int q, int r);

/// Coprime pairs (m,n), n from 2 to n_max, m ascending.
std::vector<std::pair<int, int>> coprime_pairs(int n_max);

}  // namespace dl
