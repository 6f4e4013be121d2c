#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dl/eigenbasis.hpp"
#include "dl/numerics.hpp"
#include "dl/tetra_spectra.hpp"

using namespace dl;

namespace {

// Mid-anchored tetrahedron of height n containing the origin in an interior
// level.
Tetrahedron mid_tetrahedron(int n) {
    Tetrahedron S;
    S.a1 = tree_root();
    S.a1.hor = -(n + 1) / 2;
    S.a2 = tree_root();
    S.a2.hor = -(n - (n + 1) / 2);
    return S;
}

SparseQ scale_by(const SparseQ& f, const Rational& c) {
    SparseQ out;
    for (const auto& [x, v] : f.values) out.set(x, v * c);
    return out;
}

bool equal_sparse(const SparseQ& a, const SparseQ& b) {
    if (a.values.size() != b.values.size()) return false;
    for (const auto& [x, v] : a.values)
        if (b.at(x) != v) return false;
    return true;
}

}  // namespace

TEST_SUITE_BEGIN("eigenbasis");

TEST_CASE("phi entries and orthogonality") {
    auto p12 = phi(1, 2);
    CHECK(p12.values[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(p12.values[1] == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-15));

    // Mean zero and unit norm, exactly on the scaled integer form.
    for (int b = 2; b <= 6; ++b) {
        for (int i = 1; i < b; ++i) {
            auto scaled = phi_scaled(i, b);
            long sum = 0, sq = 0;
            for (long v : scaled) {
                sum += v;
                sq += v * v;
            }
            CHECK(sum == 0);
            CHECK(sq == long(b - i) * (b + 1 - i));  // norm 1 after scaling
        }
        for (int i = 1; i < b; ++i)
            for (int j = i + 1; j < b; ++j) {
                auto a = phi_scaled(i, b);
                auto c = phi_scaled(j, b);
                long dot = 0;
                for (int s = 0; s < b; ++s) dot += a[s] * c[s];
                CHECK(dot == 0);
            }
    }
    CHECK_THROWS_AS(phi(0, 2), std::invalid_argument);
    CHECK_THROWS_AS(phi(2, 2), std::invalid_argument);
}

TEST_CASE("eigenvalue closed form") {
    CHECK(eigenvalue(1, 2, 2, 2) == 0.0);
    CHECK(eigenvalue(1, 2, 3, 5) == 0.0);
    CHECK(eigenvalue(1, 3, 2, 2) == doctest::Approx(0.5).epsilon(1e-15));
    for (int n = 2; n <= 9; ++n)
        for (int m = 1; m < n; ++m) {
            CHECK(eigenvalue(n - m, n, 2, 3) == -eigenvalue(m, n, 2, 3));
            CHECK(std::abs(eigenvalue(m, n, 2, 3)) <= spectral_radius(2, 3));
        }
    CHECK_THROWS_AS(eigenvalue(0, 3, 2, 2), std::invalid_argument);
    CHECK_THROWS_AS(eigenvalue(3, 3, 2, 2), std::invalid_argument);
}

TEST_CASE("f functions: norms, support, zero conventions") {
    Tetrahedron S = canonical_tetrahedron(4);
    const int q = 2, r = 2;
    for (int k = 1; k <= 3; ++k) {
        auto fs = f_function_scaled(S, k, 1, 1, q, r);
        CHECK(norm2(fs.values) * fs.scale_sq == 1);  // exact unit norm
        for (const auto& [x, v] : fs.values.values) CHECK(x.x1.hor - S.a1.hor == k);
    }
    CHECK(f_function(S, 0, 1, 1, q, r).support_size() == 0);
    CHECK(f_function(S, 4, 1, 1, q, r).support_size() == 0);
    CHECK_THROWS_AS(f_function(S, 5, 1, 1, q, r), std::out_of_range);
    CHECK_THROWS_AS(f_function(S, 1, 2, 1, q, r), std::out_of_range);
}

TEST_CASE("constant-direction f functions and boundary norms") {
    const int q = 2, r = 3;
    Tetrahedron S = canonical_tetrahedron(3);
    for (int k = 1; k <= 2; ++k)
        for (int i = 0; i <= q - 1; ++i)
            for (int j = 0; j <= r - 1; ++j) {
                auto fs = f_function_scaled(S, k, i, j, q, r);
                CHECK(norm2(fs.values) * fs.scale_sq == 1);
            }
    // Weighted boundary norms q/(r+q) resp. r/(r+q).
    TetraOperator op{S, TetraMode::renormalized, q, r};
    for (int j = 1; j <= r - 1; ++j) {
        auto f0 = f_function_scaled(S, 0, 0, j, q, r);
        CHECK(vertex_weight(op, 0) * norm2(f0.values) * f0.scale_sq == ratio(q, r + q));
    }
    for (int i = 1; i <= q - 1; ++i) {
        auto fn = f_function_scaled(S, 3, i, 0, q, r);
        CHECK(vertex_weight(op, 3) * norm2(fn.values) * fn.scale_sq == ratio(r, r + q));
    }
    // Distinct index pairs are orthogonal, exactly.
    for (int k = 1; k <= 2; ++k)
        for (int i = 0; i <= q - 1; ++i)
            for (int j = 0; j <= r - 1; ++j)
                for (int i2 = 0; i2 <= q - 1; ++i2)
                    for (int j2 = 0; j2 <= r - 1; ++j2) {
                        if (i == i2 && j == j2) continue;
                        auto a = f_function_scaled(S, k, i, j, q, r);
                        auto b = f_function_scaled(S, k, i2, j2, q, r);
                        CHECK(inner(a.values, b.values) == 0);
                    }
}

TEST_CASE("exact P recurrence on scaled level functions") {
    // P v_k = (q v_{k-1} + r v_{k+1})/(q+r) on the integer-scaled forms.
    for (auto [q, r] : {std::pair{2, 2}, {2, 3}, {3, 4}}) {
        Tetrahedron S = canonical_tetrahedron(4);
        for (int i = 1; i <= q - 1; ++i)
            for (int j = 1; j <= r - 1; ++j)
                for (int k = 1; k <= 3; ++k) {
                    auto vk = f_function_scaled(S, k, i, j, q, r).values;
                    auto vm = f_function_scaled(S, k - 1, i, j, q, r).values;
                    auto vp = f_function_scaled(S, k + 1, i, j, q, r).values;
                    SparseQ rhs;
                    for (const auto& [x, v] : vm.values) rhs.add(x, v * q);
                    for (const auto& [x, v] : vp.values) rhs.add(x, v * r);
                    CHECK(equal_sparse(apply_P(vk, q, r), scale_by(rhs, ratio(1, q + r))));
                }
    }
}

TEST_CASE("horizontality, exact") {
    const int q = 2, r = 3;
    Tetrahedron S = canonical_tetrahedron(3);
    for (int k = 1; k <= 2; ++k)
        for (int i = 1; i <= q - 1; ++i)
            for (int j = 1; j <= r - 1; ++j)
                CHECK(is_horizontal_exact(f_function_scaled(S, k, i, j, q, r).values));
    CHECK(!is_horizontal_exact(f_function_scaled(S, 1, 0, 0, q, r).values));
}

TEST_CASE("apply_P basics") {
    SparseD delta;
    delta.set(dl_origin(), 1.0);
    auto pd = apply_P(delta, 2, 3);
    CHECK(pd.support_size() == 5);
    for (const auto& y : dl_neighbors(dl_origin(), 2, 3))
        CHECK(pd.at(y) == doctest::Approx(0.2).epsilon(1e-15));

    Xoshiro256 rng(41);
    for (int trial = 0; trial < 10; ++trial) {
        SparseD f, g;
        DLVertex x = dl_origin();
        for (int i = 0; i < 12; ++i) {
            auto nb = dl_neighbors(x, 2, 3);
            x = nb[rng.below(nb.size())];
            f.add(x, rng.uniform01() - 0.5);
            if (i % 2) g.add(x, rng.uniform01() - 0.5);
        }
        g.add(dl_origin(), 1.0);
        CHECK(inner(apply_P(f, 2, 3), g) ==
              doctest::Approx(inner(f, apply_P(g, 2, 3))).epsilon(1e-12));
    }
}

TEST_CASE("eigenfunction identity, norm, horizontality") {
    for (auto [q, r] : {std::pair{2, 2}, {2, 3}}) {
        for (int n = 2; n <= 4; ++n) {
            Tetrahedron S = mid_tetrahedron(n);
            for (int m = 1; m <= n - 1; ++m)
                for (int i = 1; i <= q - 1; ++i)
                    for (int j = 1; j <= r - 1; ++j) {
                        auto g = g_eigenfunction(S, m, i, j, q, r);
                        CHECK(eigen_defect(g.base, g.lambda, q, r) < 1e-12);
                        CHECK(norm2(g.base) == doctest::Approx(1.0).epsilon(1e-12));
                        CHECK(horizontality_defect(g.base) < 1e-12);
                    }
        }
    }
}

TEST_CASE("eigen identity at random anchors") {
    // The construction must not depend on absolute coordinates: anchor the
    // tetrahedron at random tree vertices and re-check P g = lambda g.
    Xoshiro256 rng(59);
    const int q = 2, r = 3;
    for (int n = 2; n <= 4; ++n) {
        for (int trial = 0; trial < 3; ++trial) {
            TreeVertex a1 = tree_root();
            int shift = int(rng.below(5)) - 2;
            a1.hor = shift;
            for (int p = a1.hor - 3; p <= a1.hor; ++p) {
                int lab = int(rng.below(q));
                if (lab != 0) a1.labels.emplace_back(p, lab);
            }
            TreeVertex a2 = tree_root();
            a2.hor = -shift - n;
            for (int p = a2.hor - 2; p <= a2.hor; ++p) {
                int lab = int(rng.below(r));
                if (lab != 0) a2.labels.emplace_back(p, lab);
            }
            Tetrahedron S{a1, a2};
            REQUIRE(S.height() == n);
            for (int m = 1; m <= n - 1; ++m) {
                auto g = g_eigenfunction(S, m, 1, int(rng.below(r - 1)) + 1, q, r);
                CHECK(eigen_defect(g.base, g.lambda, q, r) < 1e-12);
                CHECK(norm2(g.base) == doctest::Approx(1.0).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("gram matrix of a basis is the identity") {
    const int q = 2, r = 3;
    Tetrahedron S = canonical_tetrahedron(3);
    auto basis = basis_for_tetrahedron(S, q, r);
    REQUIRE(basis.size() == 14);  // level dimensions 8 + 6
    for (std::size_t a = 0; a < basis.size(); ++a)
        for (std::size_t b = a; b < basis.size(); ++b) {
            double expected = a == b ? 1.0 : 0.0;
            CHECK(std::abs(inner(basis[a].base, basis[b].base) - expected) < 1e-12);
        }
}

TEST_CASE("basis level counts") {
    for (auto [q, r] : {std::pair{2, 2}, {2, 3}, {3, 4}}) {
        for (int n = 2; n <= 4; ++n) {
            Tetrahedron S = canonical_tetrahedron(n);
            long total = 0;
            for (int k = 0; k <= n; ++k) {
                long counted = basis_level_count(S, k, q, r);
                CHECK(counted == basis_level_count_closed_form(n, k, q, r));
                total += counted;
            }
            CHECK(total == long(basis_for_tetrahedron(S, q, r).size()));
        }
    }
}

TEST_CASE("height-2 basis has a single member") {
    Tetrahedron S = canonical_tetrahedron(2);
    auto basis = basis_for_tetrahedron(S, 2, 2);
    REQUIRE(basis.size() == 1);
    CHECK(basis[0].lambda == 0.0);
}

TEST_CASE("delta approximation") {
    auto f1 = delta_approximation(1, 2, 2);
    CHECK(is_horizontal_exact(f1));
    SparseQ diff = f1;
    diff.add(dl_origin(), Rational(-1));
    CHECK(norm2(diff) == ratio(5, 4));  // 1/4 + 1/2 + 1/2

    Rational prev(2);
    for (int n = 1; n <= 4; ++n) {
        auto fn = delta_approximation(n, 2, 3);
        CHECK(is_horizontal_exact(fn));
        SparseQ d = fn;
        d.add(dl_origin(), Rational(-1));
        Rational err = norm2(d);
        BigInt qn = int_pow(2, n), rn = int_pow(3, n);
        Rational expected = Rational(BigInt(1), qn * rn) + Rational(BigInt(1), qn) +
                            Rational(BigInt(1), rn);
        expected.canonicalize();
        CHECK(err == expected);
        CHECK(err < prev);
        prev = err;
    }
}

TEST_CASE("parseval partial sums at the origin grow toward one") {
    // Monitored convergence: the basis of a growing tetrahedron around o
    // captures more and more of the point mass.
    double prev = 0.0;
    for (int n : {2, 4, 6}) {
        Tetrahedron S = mid_tetrahedron(n);
        REQUIRE(tetra_contains(S, dl_origin()));
        double sum = 0.0;
        for (const auto& g : basis_for_tetrahedron(S, 2, 2)) {
            double v = g.base.at(dl_origin());
            sum += v * v;
        }
        CHECK(sum > prev);
        CHECK(sum < 1.0 + 1e-12);
        prev = sum;
    }
    CHECK(prev > 0.5);
}

TEST_SUITE_END();
