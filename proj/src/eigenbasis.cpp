#include "dl/eigenbasis.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dl {

double eigen_defect(const SparseD& f, double lambda, int q, int r) {
    SparseD pf = apply_P(f, q, r);
    double worst = 0.0;
    auto check = [&](const DLVertex& x) {
        worst = std::max(worst, std::abs(pf.at(x) - lambda * f.at(x)));
    };
    for (const auto& [x, v] : pf.values) check(x);
    for (const auto& [x, v] : f.values) check(x);
    return worst;
}

namespace {

template <typename Scalar>
double fiber_defect(const SparseFunction<Scalar>& f) {
    std::unordered_map<TreeVertex, Scalar, TreeHash> by1, by2;
    for (const auto& [x, v] : f.values) {
        by1[x.x1] += v;
        by2[x.x2] += v;
    }
    double worst = 0.0;
    for (const auto& [t, s] : by1) worst = std::max(worst, std::abs(double(s)));
    for (const auto& [t, s] : by2) worst = std::max(worst, std::abs(double(s)));
    return worst;
}

}  // namespace

double horizontality_defect(const SparseD& f) { return fiber_defect(f); }

bool is_horizontal_exact(const SparseQ& f) {
    std::unordered_map<TreeVertex, Rational, TreeHash> by1, by2;
    for (const auto& [x, v] : f.values) {
        by1[x.x1] += v;
        by2[x.x2] += v;
    }
    for (const auto& [t, s] : by1)
        if (s != 0) return false;
    for (const auto& [t, s] : by2)
        if (s != 0) return false;
    return true;
}

std::vector<long> phi_scaled(int i, int b) {
    if (i < 1 || i >= b) throw std::invalid_argument("phi: index out of range");
    std::vector<long> v(b, 0);
    v[i - 1] = b - i;
    for (int s = i; s < b; ++s) v[s] = -1;
    return v;
}

PhiVector phi(int i, int b) {
    auto scaled = phi_scaled(i, b);
    double norm = std::sqrt(double(b - i) * double(b + 1 - i));
    PhiVector out;
    out.index = i;
    out.values.resize(b);
    for (int s = 0; s < b; ++s) out.values[s] = scaled[s] / norm;
    return out;
}

double spectral_radius(int q, int r) { return 2.0 * std::sqrt(double(q) * r) / (q + r); }

double eigenvalue(int m, int n, int q, int r) {
    if (n < 2 || m < 1 || m > n - 1) throw std::invalid_argument("eigenvalue: bad (m,n)");
    // Evaluate on the closed half so that lambda_{n-m,n} = -lambda_{m,n}
    // holds exactly in floating point.
    if (2 * m == n) return 0.0;
    if (2 * m > n) return -eigenvalue(n - m, n, q, r);
    return spectral_radius(q, r) * std::cos(std::numbers::pi * m / n);
}

double sine_eigenvector_entry(int m, int n, int k) {
    return std::sqrt(2.0 / n) * std::sin(std::numbers::pi * k * m / n);
}

namespace {

void check_f_indices(const Tetrahedron& S, int k, int i, int j, int q, int r) {
    int n = S.height();
    if (k < 0 || k > n) throw std::out_of_range("f_function: k out of range");
    if (i < 0 || i > q - 1) throw std::out_of_range("f_function: i out of range");
    if (j < 0 || j > r - 1) throw std::out_of_range("f_function: j out of range");
}

}  // namespace

SparseD f_function(const Tetrahedron& S, int k, int i, int j, int q, int r) {
    check_f_indices(S, k, i, j, q, r);
    int n = S.height();
    SparseD out;

    // Side factors: phi_i branch value (or constant 1 when i = 0) and the
    // depth normalization q^{(1-k)/2} (or q^{-k/2} in the constant direction).
    bool zero1 = (i >= 1 && k == 0);
    bool zero2 = (j >= 1 && k == n);
    if (zero1 || zero2) return out;

    std::vector<double> side1(q, 1.0), side2(r, 1.0);
    double amp1, amp2;
    if (i >= 1) {
        side1 = phi(i, q).values;
        amp1 = std::pow(double(q), 0.5 * (1 - k));
    } else {
        amp1 = std::pow(double(q), -0.5 * k);
    }
    if (j >= 1) {
        side2 = phi(j, r).values;
        amp2 = std::pow(double(r), 0.5 * (1 - (n - k)));
    } else {
        amp2 = std::pow(double(r), -0.5 * (n - k));
    }

    for (const auto& x : tetra_level(S, k, q, r)) {
        double v1 = (i >= 1) ? side1[first_step_label(S.a1, x.x1)] : 1.0;
        double v2 = (j >= 1) ? side2[first_step_label(S.a2, x.x2)] : 1.0;
        out.set(x, v1 * amp1 * v2 * amp2);
    }
    return out;
}

ScaledSparse f_function_scaled(const Tetrahedron& S, int k, int i, int j, int q, int r) {
    check_f_indices(S, k, i, j, q, r);
    int n = S.height();
    ScaledSparse out;
    out.scale_sq = 1;

    bool zero1 = (i >= 1 && k == 0);
    bool zero2 = (j >= 1 && k == n);
    if (zero1 || zero2) {
        out.scale_sq = 0;
        return out;
    }

    std::vector<long> side1(q, 1), side2(r, 1);
    // scale_sq collects q^{1-k} / ((q-i)(q+1-i)) from the first side (or
    // q^{-k} when i = 0), and the mirror factor from the second side. The
    // zero cases above guarantee k >= 1 when i >= 1 and n-k >= 1 when j >= 1.
    if (i >= 1) {
        side1 = phi_scaled(i, q);
        out.scale_sq *= Rational(BigInt(1), int_pow(q, k - 1));
        out.scale_sq /= (q - i) * (q + 1 - i);
    } else {
        out.scale_sq *= Rational(BigInt(1), int_pow(q, k));
    }
    if (j >= 1) {
        side2 = phi_scaled(j, r);
        out.scale_sq *= Rational(BigInt(1), int_pow(r, n - k - 1));
        out.scale_sq /= (r - j) * (r + 1 - j);
    } else {
        out.scale_sq *= Rational(BigInt(1), int_pow(r, n - k));
    }
    out.scale_sq.canonicalize();

    for (const auto& x : tetra_level(S, k, q, r)) {
        long v1 = (i >= 1) ? side1[first_step_label(S.a1, x.x1)] : 1;
        long v2 = (j >= 1) ? side2[first_step_label(S.a2, x.x2)] : 1;
        out.values.set(x, Rational(v1 * v2));
    }
    return out;
}

Eigenfunction g_eigenfunction(const Tetrahedron& S, int m, int i, int j, int q, int r) {
    int n = S.height();
    if (n < 2) throw std::invalid_argument("g_eigenfunction: height >= 2 required");
    if (m < 1 || m > n - 1) throw std::out_of_range("g_eigenfunction: m out of range");
    if (i < 1 || i > q - 1 || j < 1 || j > r - 1)
        throw std::out_of_range("g_eigenfunction: phi index out of range");

    Eigenfunction g;
    g.S = S;
    g.m = m;
    g.i = i;
    g.j = j;
    g.lambda = eigenvalue(m, n, q, r);
    for (int k = 1; k <= n - 1; ++k) {
        double w = sine_eigenvector_entry(m, n, k);
        SparseD fk = f_function(S, k, i, j, q, r);
        for (const auto& [x, v] : fk.values) g.base.add(x, w * v);
    }
    return g;
}

std::vector<Eigenfunction> basis_for_tetrahedron(const Tetrahedron& S, int q, int r) {
    if (S.height() < 2) throw std::invalid_argument("basis_for_tetrahedron: height >= 2 required");
    std::vector<Eigenfunction> out;
    for (const auto& sub : sub_tetrahedra(S, 2, q, r)) {
        int nn = sub.height();
        for (int m = 1; m <= nn - 1; ++m)
            for (int i = 1; i <= q - 1; ++i)
                for (int j = 1; j <= r - 1; ++j) out.push_back(g_eigenfunction(sub, m, i, j, q, r));
    }
    return out;
}

long basis_level_count(const Tetrahedron& S, int k, int q, int r) {
    long count = 0;
    for (const auto& sub : sub_tetrahedra(S, 2, q, r)) {
        int depth1 = sub.a1.hor - S.a1.hor;
        int level_in_sub = k - depth1;
        if (level_in_sub >= 1 && level_in_sub <= sub.height() - 1) count += long(q - 1) * (r - 1);
    }
    return count;
}

long basis_level_count_closed_form(int n, int k, int q, int r) {
    long qk = 1, rnk = 1;
    for (int t = 0; t < k; ++t) qk *= q;
    for (int t = 0; t < n - k; ++t) rnk *= r;
    return (qk - 1) * (rnk - 1);
}

SparseQ delta_approximation(int n, int q, int r) {
    if (n < 1) throw std::invalid_argument("delta_approximation: n >= 1 required");
    // One-coordinate factor: 1 at the root, -b^{-n} on the horocycle-zero
    // descendants of the witness vertex b1 (at horocycle -n, one step off the
    // root's geodesic).
    auto side = [&](int b) {
        TreeVertex w;
        w.hor = -n;
        w.labels = {{-n, 1}};
        std::vector<std::pair<TreeVertex, Rational>> vals;
        vals.emplace_back(tree_root(), Rational(1));
        Rational neg = -Rational(BigInt(1), int_pow(b, n));
        neg.canonicalize();
        for (const auto& d : descendants(w, n, b)) vals.emplace_back(d, neg);
        return vals;
    };
    auto side1 = side(q);
    auto side2 = side(r);
    SparseQ out;
    for (const auto& [x1, v1] : side1)
        for (const auto& [x2, v2] : side2) out.set(DLVertex{x1, x2}, v1 * v2);
    return out;
}

}  // namespace dl
