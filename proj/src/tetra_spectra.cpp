#include "dl/tetra_spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unordered_set>

#include "dl/eigenbasis.hpp"
#include "dl/numerics.hpp"

namespace dl {

namespace {
constexpr double kPi = std::numbers::pi;
}

const char* to_string(SpectrumCase c) {
    switch (c) {
        case SpectrumCase::horizontal: return "horizontal";
        case SpectrumCase::constant: return "constant";
        case SpectrumCase::lower: return "lower";
        case SpectrumCase::upper: return "upper";
    }
    return "?";
}

const char* to_string(TetraMode m) {
    return m == TetraMode::renormalized ? "renormalized" : "truncated";
}

Rational vertex_weight(const TetraOperator& op, int level) {
    int n = op.S.height();
    if (op.mode == TetraMode::truncated) return Rational(1);
    if (level == n) return ratio(op.r, op.r + op.q);
    if (level == 0) return ratio(op.q, op.r + op.q);
    return Rational(1);
}

BoundaryParts boundary_parts(const Tetrahedron& S, int q, int r) {
    if (S.height() < 1) throw std::invalid_argument("boundary_parts: height >= 1 required");
    BoundaryParts out;
    int n = S.height();
    out.upper = tetra_level(S, 0, q, r);
    out.lower = tetra_level(S, n, q, r);
    for (int k = 1; k <= n - 1; ++k) {
        auto level = tetra_level(S, k, q, r);
        out.interior.insert(out.interior.end(), level.begin(), level.end());
    }
    return out;
}

DenseOperator dense_operator_matrix(const TetraOperator& op, std::size_t dim_budget) {
    const int q = op.q, r = op.r, n = op.S.height();
    DenseOperator out;
    out.order = tetra_vertices(op.S, q, r);
    std::size_t dim = out.order.size();
    if (dim > dim_budget) throw BudgetError("dense_operator_matrix: dimension budget exceeded");

    std::unordered_map<DLVertex, int, DLHash> index;
    index.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i) index.emplace(out.order[i], int(i));

    auto level_of = [&](const DLVertex& x) { return x.x1.hor - op.S.a1.hor; };

    out.sym.assign(dim * dim, 0.0);
    std::vector<double> wroot(dim);
    for (std::size_t i = 0; i < dim; ++i)
        wroot[i] = std::sqrt(to_double(vertex_weight(op, level_of(out.order[i]))));

    for (std::size_t i = 0; i < dim; ++i) {
        const DLVertex& x = out.order[i];
        int lv = level_of(x);
        Rational prob;  // uniform transition probability out of x
        if (op.mode == TetraMode::truncated) prob = ratio(1, q + r);
        else if (lv == 0) prob = ratio(1, q);
        else if (lv == n) prob = ratio(1, r);
        else prob = ratio(1, q + r);

        Rational row_sum(0);
        Rational weight = vertex_weight(op, lv);
        for (const auto& y : dl_neighbors(x, q, r)) {
            auto it = index.find(y);
            if (it == index.end()) continue;
            row_sum += prob;
            // Conjugated entry m(x) p(x,y) / sqrt(m(x) m(y)); the numerator is
            // symmetric by reversibility, checked below.
            double c = to_double(weight * prob);
            out.sym[i * dim + it->second] = c / (wroot[i] * wroot[it->second]);
        }
        if (op.mode == TetraMode::renormalized && row_sum != 1)
            throw ConsistencyError("dense_operator_matrix: stochastic row sum violated");
    }

    // Exact reversibility check m(x) p(x,y) = m(y) p(y,x) via the symmetrized
    // double entries (built from the same product both ways).
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i + 1; j < dim; ++j)
            if (out.sym[i * dim + j] != out.sym[j * dim + i])
                throw ConsistencyError("dense_operator_matrix: symmetry violated");
    return out;
}

std::vector<double> dense_spectrum(const TetraOperator& op, std::size_t dim_budget) {
    DenseOperator d = dense_operator_matrix(op, dim_budget);
    return symmetric_eigenvalues(std::move(d.sym), int(d.order.size()));
}

namespace {

// Tridiagonal action matrix shared by the three boundary families: standard
// rho/2 off-diagonals with one anomalous entry.
std::vector<double> tridiag_with_anomaly(int size, int q, int r, int arow, int acol,
                                         double aval) {
    double half_rho = std::sqrt(double(q) * r) / (q + r);
    std::vector<double> m(std::size_t(size) * size, 0.0);
    for (int i = 0; i < size; ++i) {
        if (i > 0) m[std::size_t(i) * size + i - 1] = half_rho;
        if (i < size - 1) m[std::size_t(i) * size + i + 1] = half_rho;
    }
    m[std::size_t(arow) * size + acol] = half_rho * aval;
    return m;
}

}  // namespace

std::vector<double> matrix_constant_case(int n, int q, int r) {
    auto m = tridiag_with_anomaly(n + 1, q, r, 1, 0, double(q + r) / q);
    double half_rho = std::sqrt(double(q) * r) / (q + r);
    m[std::size_t(n - 1) * (n + 1) + n] = half_rho * double(q + r) / r;
    return m;
}

std::vector<double> matrix_lower_case(int n, int q, int r) {
    if (n == 1) return {0.0};
    return tridiag_with_anomaly(n, q, r, 1, 0, double(q + r) / q);
}

std::vector<double> matrix_upper_case(int n, int q, int r) {
    if (n == 1) return {0.0};
    // Indices k = 1..n; the anomaly couples the next-to-last row to the open
    // lower end.
    return tridiag_with_anomaly(n, q, r, n - 2, n - 1, double(q + r) / r);
}

FamilySolutions end_anomalous_solutions(int N, int b, int o) {
    if (N < 1) throw std::invalid_argument("end_anomalous_solutions: N >= 1");
    FamilySolutions out;

    if (b == o) {
        // cot(N a) = 0.
        for (int m = 0; m < N; ++m) out.angles.push_back((2.0 * m + 1.0) * kPi / (2.0 * N));
        return out;
    }

    double c = double(o - b) / double(o + b);
    bool degenerate = false;
    int lo_interval = 0, hi_interval = N - 1;
    if (o > b) {
        long lhs = long(N) * (o - b);
        if (lhs == o + b) {
            // Eigenvalue pair at +-rho with linear profiles; endpoints stand
            // in for the lost bracket roots.
            degenerate = true;
            lo_interval = 1;
            hi_interval = N - 2;
        } else if (lhs > o + b) {
            out.has_cosh_pair = true;
            lo_interval = 1;
            hi_interval = N - 2;
        }
    }

    if (degenerate) out.angles.push_back(0.0);
    for (int k = lo_interval; k <= hi_interval; ++k) {
        double a = k * kPi / N, bnd = (k + 1) * kPi / N;
        double eps = (bnd - a) * 1e-12;
        auto F = [&](double x) { return 1.0 / std::tan(N * x) - c / std::tan(x); };
        out.angles.push_back(bisect_root(F, a + eps, bnd - eps));
    }
    if (degenerate) out.angles.push_back(kPi);

    if (out.has_cosh_pair) {
        // b sinh((N+1)a) = o sinh((N-1)a), unique positive root below
        // log(o/b)/2.
        auto H = [&](double a) {
            return b * std::sinh((N + 1) * a) - o * std::sinh((N - 1) * a);
        };
        double hi = 0.5 * std::log(double(o) / b);
        double lo = hi * 1e-9;
        while (H(lo) >= 0.0 && lo < hi) lo *= 2.0;  // H < 0 just right of zero
        out.alpha0 = bisect_root(H, lo, hi);
    }
    return out;
}

double cosh_eigenvalue(int N, int q, int r) {
    if (r <= q || long(N) * (r - q) <= q + r)
        throw std::invalid_argument("cosh_eigenvalue: requires N (r-q) > r+q");
    auto sol = end_anomalous_solutions(N, q, r);
    return spectral_radius(q, r) * std::cosh(sol.alpha0);
}

std::vector<EigenSolution> horizontal_spectrum(const Tetrahedron& S, int q, int r) {
    int n = S.height();
    if (n < 2) throw std::invalid_argument("horizontal_spectrum: height >= 2 required");
    std::vector<EigenSolution> out;
    for (int h = 2; h <= n; ++h) {
        long count = 0;  // sub-tetrahedra of height h
        long pq = 1;
        for (int kappa = 0; kappa + h <= n; ++kappa) {
            long pr = 1;
            for (int t = 0; t < n - h - kappa; ++t) pr *= r;
            count += pq * pr;
            pq *= q;
        }
        for (int m = 1; m <= h - 1; ++m) {
            EigenSolution e;
            e.lambda = eigenvalue(m, h, q, r);
            e.multiplicity = count * (q - 1) * (r - 1);
            e.case_tag = SpectrumCase::horizontal;
            e.family_height = h;
            e.m = m;
            out.push_back(e);
        }
    }
    return out;
}

std::vector<EigenSolution> constant_case_spectrum(const Tetrahedron& S, int q, int r) {
    int n = S.height();
    if (n < 2) throw std::invalid_argument("constant_case_spectrum: height >= 2 required");
    std::vector<EigenSolution> out;
    out.push_back({1.0, 1, SpectrumCase::constant, n, 0});
    for (int m = 1; m <= n - 1; ++m)
        out.push_back({eigenvalue(m, n, q, r), 1, SpectrumCase::constant, n, m});
    out.push_back({-1.0, 1, SpectrumCase::constant, n, n});
    return out;
}

namespace {

std::vector<EigenSolution> family_spectrum(int N, int q, int r, int b, int o, SpectrumCase tag,
                                           int m_base) {
    auto sol = end_anomalous_solutions(N, b, o);
    double rho = spectral_radius(q, r);
    std::vector<EigenSolution> out;
    int m = m_base;
    if (sol.has_cosh_pair)
        out.push_back({rho * std::cosh(sol.alpha0), 1, tag, N, m++});
    for (double a : sol.angles) out.push_back({rho * std::cos(a), 1, tag, N, m++});
    if (sol.has_cosh_pair)
        out.push_back({-rho * std::cosh(sol.alpha0), 1, tag, N, m});
    return out;
}

}  // namespace

std::vector<EigenSolution> lower_case_spectrum(int N, int q, int r) {
    return family_spectrum(N, q, r, q, r, SpectrumCase::lower, 0);
}

std::vector<EigenSolution> upper_case_spectrum(int N, int q, int r) {
    return family_spectrum(N, q, r, r, q, SpectrumCase::upper, 1);
}

std::vector<EigenSolution> full_closed_form_spectrum(const Tetrahedron& S, int q, int r) {
    int n = S.height();
    if (n < 2) throw std::invalid_argument("full_closed_form_spectrum: height >= 2 required");
    std::vector<EigenSolution> out = horizontal_spectrum(S, q, r);
    auto cc = constant_case_spectrum(S, q, r);
    out.insert(out.end(), cc.begin(), cc.end());

    long lower_members = 1;  // r^{n-N} choices of the varying corner
    long upper_members = 1;
    std::vector<long> rpow(n + 1, 1), qpow(n + 1, 1);
    for (int t = 1; t <= n; ++t) {
        rpow[t] = rpow[t - 1] * r;
        qpow[t] = qpow[t - 1] * q;
    }
    (void)lower_members;
    (void)upper_members;
    for (int N = 1; N <= n; ++N) {
        long lmult = (r - 1) * rpow[n - N];
        for (auto e : lower_case_spectrum(N, q, r)) {
            e.multiplicity = lmult;
            out.push_back(e);
        }
        long umult = (q - 1) * qpow[n - N];
        for (auto e : upper_case_spectrum(N, q, r)) {
            e.multiplicity = umult;
            out.push_back(e);
        }
    }
    return out;
}

double CumulativeMeasure::total_mass() const {
    double t = 0.0;
    for (const auto& [l, m] : atoms) t += m;
    return t;
}

double CumulativeMeasure::moment(int N) const {
    KahanSum s;
    for (const auto& [l, m] : atoms) s.add(std::pow(l, N) * m);
    return s.value();
}

namespace {

CumulativeMeasure aggregate_atoms(std::vector<std::pair<double, double>> raw) {
    std::sort(raw.begin(), raw.end());
    CumulativeMeasure out;
    for (const auto& [l, m] : raw) {
        if (!out.atoms.empty() && std::abs(out.atoms.back().first - l) < 1e-9)
            out.atoms.back().second += m;
        else
            out.atoms.emplace_back(l, m);
    }
    return out;
}

}  // namespace

CumulativeMeasure cumulative_measure(int q, int r, int n, TetraMode mode,
                                     std::size_t dim_budget) {
    Tetrahedron S = canonical_tetrahedron(n);
    double size = double(tetra_size(S, q, r));
    std::vector<std::pair<double, double>> raw;
    if (mode == TetraMode::renormalized) {
        for (const auto& e : full_closed_form_spectrum(S, q, r))
            raw.emplace_back(e.lambda, double(e.multiplicity) / size);
    } else {
        for (double l : dense_spectrum(TetraOperator{S, mode, q, r}, dim_budget))
            raw.emplace_back(l, 1.0 / size);
    }
    return aggregate_atoms(std::move(raw));
}

namespace {

// N-step diagonal of the substochastic restriction, from one start vertex.
double truncated_return(const Tetrahedron& S, int q, int r, const DLVertex& start, int N) {
    std::unordered_map<DLVertex, double, DLHash> d{{start, 1.0}};
    double w = 1.0 / (q + r);
    for (int step = 0; step < N; ++step) {
        std::unordered_map<DLVertex, double, DLHash> next;
        next.reserve(d.size() * 2);
        for (const auto& [x, v] : d) {
            double spread = v * w;
            for (const auto& y : dl_neighbors(x, q, r))
                if (tetra_contains(S, y)) next[y] += spread;
        }
        d = std::move(next);
    }
    auto it = d.find(start);
    return it == d.end() ? 0.0 : it->second;
}

DLVertex level_representative(const Tetrahedron& S, int k) {
    DLVertex x;
    x.x1 = S.a1;
    x.x1.hor += k;
    x.x2 = S.a2;
    x.x2.hor += S.height() - k;
    return x;
}

}  // namespace

double truncated_moment(int q, int r, int n, int N) {
    Tetrahedron S = canonical_tetrahedron(n);
    double total = 0.0, size = 0.0;
    for (int k = 0; k <= n; ++k) {
        double lk = std::pow(double(q), k) * std::pow(double(r), n - k);
        total += lk * truncated_return(S, q, r, level_representative(S, k), N);
        size += lk;
    }
    return total / size;
}

double truncated_moment_full_trace(int q, int r, int n, int N) {
    Tetrahedron S = canonical_tetrahedron(n);
    auto verts = tetra_vertices(S, q, r);
    KahanSum total;
    for (const auto& x : verts) total.add(truncated_return(S, q, r, x, N));
    return total.value() / double(verts.size());
}

long boundary_neighborhood_size(int q, int r, int n, int N) {
    Tetrahedron S = canonical_tetrahedron(n);
    std::unordered_set<DLVertex, DLHash> seen;
    std::vector<DLVertex> frontier;
    for (const auto& x : tetra_level(S, 0, q, r)) {
        seen.insert(x);
        frontier.push_back(x);
    }
    for (const auto& x : tetra_level(S, n, q, r)) {
        if (seen.insert(x).second) frontier.push_back(x);
    }
    // Ambient breadth-first sweep: distances in the full graph never exceed
    // distances inside S, so the count is the honest one.
    for (int depth = 1; depth <= N / 2; ++depth) {
        std::vector<DLVertex> next;
        for (const auto& x : frontier)
            for (auto& y : dl_neighbors(x, q, r))
                if (seen.insert(y).second) next.push_back(std::move(y));
        frontier = std::move(next);
    }
    long count = 0;
    for (const auto& x : seen)
        if (tetra_contains(S, x)) ++count;
    return count;
}

double LimitMeasure::total_mass() const {
    double t = 0.0;
    for (const auto& [l, m] : bulk_atoms) t += m;
    for (const auto& [l, m] : escaping_atoms) t += m;
    return t;
}

LimitMeasure limit_cumulative_measure(int q, int r, int N_max) {
    if (r <= q) throw std::invalid_argument("limit_cumulative_measure: requires r > q");
    if (N_max < 2) throw std::invalid_argument("limit_cumulative_measure: N_max >= 2");
    LimitMeasure out;
    double rho = spectral_radius(q, r);
    std::vector<std::pair<double, double>> bulk;

    for (int N = 2; N <= N_max; ++N) {
        double w = double(q - 1) * (r - 1) * std::pow(double(r), -N);
        for (int m = 1; m <= N - 1; ++m)
            bulk.emplace_back(rho * std::cos(kPi * m / N), w);
    }
    for (int N = 1; N <= N_max; ++N) {
        double w = double(r - q) * (r - 1) * std::pow(double(r), -N - 1);
        auto sol = end_anomalous_solutions(N, q, r);
        for (double a : sol.angles) bulk.emplace_back(rho * std::cos(a), w);
        if (sol.has_cosh_pair) {
            double l = rho * std::cosh(sol.alpha0);
            out.escaping_atoms.emplace_back(l, w);
            out.escaping_atoms.emplace_back(-l, w);
        }
    }
    CumulativeMeasure agg = aggregate_atoms(std::move(bulk));
    out.bulk_atoms = std::move(agg.atoms);
    std::sort(out.escaping_atoms.begin(), out.escaping_atoms.end());

    // Omitted heights: (N-1)(q-1)(r-1) r^{-N} + N (r-q)(r-1) r^{-N-1} per N.
    double x = 1.0 / r;
    auto poly_tail = [&](int M) {
        return std::pow(x, M + 1) * ((M + 1) * (1.0 - x) + x) / ((1.0 - x) * (1.0 - x));
    };
    double geo_tail = std::pow(x, N_max + 1) / (1.0 - x);
    out.tail_bound = double(q - 1) * (r - 1) * (poly_tail(N_max) - geo_tail) +
                     double(r - q) * (r - 1) / r * poly_tail(N_max);
    return out;
}

FolnerReport folner_classify(int q, int r, int n_lo, int n_hi) {
    FolnerReport out;
    out.cls = (q == r) ? FolnerClass::folner : FolnerClass::expanding;
    for (int n = n_lo; n <= n_hi; ++n) {
        double boundary = std::pow(double(q), n) + std::pow(double(r), n);
        double size = double(tetra_size(canonical_tetrahedron(n), q, r));
        out.ratios.emplace_back(n, boundary / size);
    }
    return out;
}

}  // namespace dl
