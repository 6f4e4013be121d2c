#pragma once

#include <vector>

#include "dl/sparse.hpp"

namespace dl {

/// One of the b-1 mean-zero unit vectors on Z_b used to separate siblings:
/// phi_i is supported on {i-1, ..., b-1}, positive at i-1, constant negative
/// after. The family phi_1, ..., phi_{b-1} is orthonormal.
struct PhiVector {
    std::vector<double> values;  // length b
    int index = 0;               // i in 1..b-1
};

PhiVector phi(int i, int b);

/// Integer-valued multiple of phi_i: phi = scaled / sqrt((b-i)(b+1-i)).
std::vector<long> phi_scaled(int i, int b);

double spectral_radius(int q, int r);

/// lambda_{m,n} = rho(P) cos(m pi / n), n >= 2, 1 <= m <= n-1.
double eigenvalue(int m, int n, int q, int r);

/// Entry psi_{m,n}(k) = sqrt(2/n) sin(k m pi / n) of the sine eigenvector of
/// the (n-1)x(n-1) free tridiagonal matrix.
double sine_eigenvector_entry(int m, int n, int k);

/// Level function f_k^{[S,i,j]} on S, 0 <= i <= q-1, 0 <= j <= r-1 (index 0
/// meaning the constant direction on that side). For i,j >= 1 it is supported
/// in level k and vanishes identically when k is 0 or n.
SparseD f_function(const Tetrahedron& S, int k, int i, int j, int q, int r);

/// Same function with the common irrational factor pulled out:
/// f = values * sqrt(scale_sq), values rational. Exact-arithmetic checks
/// (norms, horizontality, the P-recurrence) operate on this form.
struct ScaledSparse {
    SparseQ values;
    Rational scale_sq;
};

ScaledSparse f_function_scaled(const Tetrahedron& S, int k, int i, int j, int q, int r);

/// Finitely supported eigenfunction P g = lambda g with its provenance.
struct Eigenfunction {
    SparseD base;
    Tetrahedron S;
    int m = 0;  // mode index 1..n-1
    int i = 0;  // phi index on the T_q side
    int j = 0;  // phi index on the T_r side
    double lambda = 0.0;
};

/// g_m^{[S,i,j]} = sum_k psi_{m,n}(k) f_k^{[S,i,j]}, unit norm, horizontal,
/// P g = lambda_{m,n} g. Requires n(S) >= 2, 1 <= m <= n-1, i,j >= 1.
Eigenfunction g_eigenfunction(const Tetrahedron& S, int m, int i, int j, int q, int r);

/// Orthonormal basis of the horizontal functions on S: all g_m^{[S~,i,j]} over
/// sub-tetrahedra S~ of height >= 2, ordered by (height, a1, a2, m, i, j).
std::vector<Eigenfunction> basis_for_tetrahedron(const Tetrahedron& S, int q, int r);

/// Number of basis members supported in level L_k, by enumeration; equals
/// (q^k - 1)(r^{n-k} - 1).
long basis_level_count(const Tetrahedron& S, int k, int q, int r);
long basis_level_count_closed_form(int n, int k, int q, int r);

/// Horizontal approximation f_n to the point mass at the origin with
/// ||f_n - delta_o||^2 = 1/(q^n r^n) + 1/q^n + 1/r^n exactly.
SparseQ delta_approximation(int n, int q, int r);

}  // namespace dl
