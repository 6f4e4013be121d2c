#pragma once

#include <cstddef>
#include <vector>

#include "dl/sparse.hpp"

namespace dl {

enum class TetraMode { renormalized, truncated };

enum class SpectrumCase { horizontal, constant, lower, upper };

const char* to_string(SpectrumCase c);
const char* to_string(TetraMode m);

/// One eigenvalue of the finite tetrahedron operator with its multiplicity
/// and provenance: which of the four eigenfunction families produced it, the
/// height N of the hosting sub-tetrahedron family, and the mode index m.
struct EigenSolution {
    double lambda = 0.0;
    long multiplicity = 1;
    SpectrumCase case_tag = SpectrumCase::horizontal;
    int family_height = 0;
    int m = 0;
};

/// SRW on the finite tetrahedron S: either the stochastic operator P_S
/// (boundary rows renormalized to 1/r resp. 1/q, reversible w.r.t. m_S) or
/// the substochastic restriction of P to S.
struct TetraOperator {
    Tetrahedron S;
    TetraMode mode = TetraMode::renormalized;
    int q = 2;
    int r = 2;
};

/// Weight m_S: 1 in the interior, r/(r+q) on the lower boundary (level n),
/// q/(r+q) on the upper boundary (level 0).
Rational vertex_weight(const TetraOperator& op, int level);

struct BoundaryParts {
    std::vector<DLVertex> lower;  // level n, second coordinate pinned at a2
    std::vector<DLVertex> upper;  // level 0
    std::vector<DLVertex> interior;
};

BoundaryParts boundary_parts(const Tetrahedron& S, int q, int r);

struct DenseOperator {
    std::vector<DLVertex> order;  // level-major vertex order
    std::vector<double> sym;      // symmetrized matrix, row-major
};

/// Symmetrization D^{1/2} P_S D^{-1/2} in renormalized mode (D = diag m_S),
/// plain symmetric restriction in truncated mode. Row sums of the underlying
/// stochastic operator are verified exactly.
DenseOperator dense_operator_matrix(const TetraOperator& op, std::size_t dim_budget = 4096);

/// Eigenvalues of the dense operator, ascending, one entry per multiplicity.
std::vector<double> dense_spectrum(const TetraOperator& op, std::size_t dim_budget = 4096);

/// Verification matrices for the boundary families: the action of P_S on the
/// constant-direction level functions (indices 0..n), and on the two
/// one-sided families (n x n). Row-major.
std::vector<double> matrix_constant_case(int n, int q, int r);
std::vector<double> matrix_lower_case(int n, int q, int r);
std::vector<double> matrix_upper_case(int n, int q, int r);

/// Eigenvalues of the end-anomalous tridiagonal family matrix of size N whose
/// defect entry is (b+o)/b next to the closed end: N values, either all of
/// the form rho cos(angle) with cot(N a) = ((o-b)/(o+b)) cot a, or, when
/// N(o-b) > o+b, N-2 such roots plus the pair +-rho cosh(alpha0).
struct FamilySolutions {
    std::vector<double> angles;  // ascending in (0, pi); includes 0 and pi in
                                 // the degenerate N(o-b) = o+b case
    bool has_cosh_pair = false;
    double alpha0 = 0.0;
};

FamilySolutions end_anomalous_solutions(int N, int b, int o);

/// rho cosh(alpha_{0,N}) for the escaping eigenvalue pair (requires
/// N (r-q) > r+q, r > q).
double cosh_eigenvalue(int N, int q, int r);

std::vector<EigenSolution> horizontal_spectrum(const Tetrahedron& S, int q, int r);
std::vector<EigenSolution> constant_case_spectrum(const Tetrahedron& S, int q, int r);
/// Per family member; assembly scales multiplicities by the member count.
std::vector<EigenSolution> lower_case_spectrum(int N, int q, int r);
std::vector<EigenSolution> upper_case_spectrum(int N, int q, int r);

/// Complete spectrum of P_S with multiplicities summing to |S|.
std::vector<EigenSolution> full_closed_form_spectrum(const Tetrahedron& S, int q, int r);

/// Normalized eigenvalue-counting measure.
struct CumulativeMeasure {
    std::vector<std::pair<double, double>> atoms;  // (lambda, mass), lambda ascending
    double tail_bound = 0.0;

    double total_mass() const;
    double moment(int N) const;
};

CumulativeMeasure cumulative_measure(int q, int r, int n, TetraMode mode,
                                     std::size_t dim_budget = 4096);

/// N-th moment of the truncated cumulative measure, computed as the averaged
/// diagonal of the N-step substochastic kernel using one representative per
/// level (levels are orbits of the tetrahedron's automorphisms).
double truncated_moment(int q, int r, int n, int N);

/// Same moment by summing over every vertex; test oracle for small n.
double truncated_moment_full_trace(int q, int r, int n, int N);

/// |{x in S_n : d(x, boundary) <= N/2}| with ambient breadth-first distances.
long boundary_neighborhood_size(int q, int r, int n, int N);

/// Weak limit of the renormalized cumulative measures for r > q, truncated at
/// family height N_max: the bulk part supported in [-rho, rho] and the
/// escaping part supported in (rho, 1] union [-1, -rho).
struct LimitMeasure {
    std::vector<std::pair<double, double>> bulk_atoms;
    std::vector<std::pair<double, double>> escaping_atoms;
    double tail_bound = 0.0;

    double total_mass() const;
};

LimitMeasure limit_cumulative_measure(int q, int r, int N_max);

enum class FolnerClass { folner, expanding };

struct FolnerReport {
    FolnerClass cls = FolnerClass::folner;
    std::vector<std::pair<int, double>> ratios;  // (n, |boundary|/|S_n|)
};

FolnerReport folner_classify(int q, int r, int n_lo = 1, int n_hi = 12);

}  // namespace dl
