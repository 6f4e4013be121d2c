#include "dl/dl_graph.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace dl {

std::size_t hash_value(const DLVertex& x) {
    std::size_t h1 = hash_value(x.x1);
    std::size_t h2 = hash_value(x.x2);
    return h1 ^ (h2 + 0x9e3779b97f4a7c15ull + (h1 << 6) + (h1 >> 2));
}

DLVertex dl_origin() { return DLVertex{tree_root(), tree_root()}; }

std::vector<DLVertex> dl_neighbors(const DLVertex& x, int q, int r) {
    std::vector<DLVertex> out;
    out.reserve(q + r);
    TreeVertex p1 = predecessor(x.x1);
    TreeVertex p2 = predecessor(x.x2);
    for (int s = 0; s < q; ++s) out.push_back(DLVertex{successor(x.x1, s, q), p2});
    for (int t = 0; t < r; ++t) out.push_back(DLVertex{p1, successor(x.x2, t, r)});
    return out;
}

RelativePosition relative_position(const DLVertex& x) {
    RelativePosition rp;
    rp.c1 = confluent(x.x1, tree_root());
    rp.c2 = confluent(x.x2, tree_root());
    rp.up1 = -rp.c1.hor;
    rp.dn1 = x.x1.hor - rp.c1.hor;
    rp.up2 = -rp.c2.hor;
    rp.dn2 = x.x2.hor - rp.c2.hor;
    return rp;
}

Tetrahedron canonical_tetrahedron(int n) {
    assert(n >= 0);
    Tetrahedron S;
    S.a1 = tree_root();
    S.a1.hor = -n;
    S.a2 = tree_root();
    return S;
}

bool tetra_contains(const Tetrahedron& S, const DLVertex& x) {
    int n = S.height();
    int k = x.x1.hor - S.a1.hor;
    if (k < 0 || k > n) return false;
    return is_ancestor(S.a1, x.x1) && is_ancestor(S.a2, x.x2);
}

std::vector<DLVertex> tetra_level(const Tetrahedron& S, int k, int q, int r) {
    int n = S.height();
    if (k < 0 || k > n) throw std::out_of_range("tetra_level: k out of range");
    std::vector<DLVertex> out;
    auto d1 = descendants(S.a1, k, q);
    auto d2 = descendants(S.a2, n - k, r);
    out.reserve(d1.size() * d2.size());
    for (const auto& v1 : d1)
        for (const auto& v2 : d2) out.push_back(DLVertex{v1, v2});
    return out;
}

std::vector<DLVertex> tetra_vertices(const Tetrahedron& S, int q, int r) {
    std::vector<DLVertex> out;
    for (int k = 0; k <= S.height(); ++k) {
        auto level = tetra_level(S, k, q, r);
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

long tetra_size(const Tetrahedron& S, int q, int r) {
    long total = 0;
    long pk = 1;
    int n = S.height();
    long pr = 1;
    for (int k = 0; k < n; ++k) pr *= r;
    for (int k = 0; k <= n; ++k) {
        total += pk * pr;
        pk *= q;
        if (k < n) pr /= r;
    }
    return total;
}

std::vector<Tetrahedron> sub_tetrahedra(const Tetrahedron& S, int min_height, int q, int r) {
    int n = S.height();
    std::vector<Tetrahedron> out;
    for (int h = min_height; h <= n; ++h) {
        // a1 at depth kappa below S.a1, a2 at depth n-h-kappa below S.a2.
        for (int kappa = 0; kappa + h <= n; ++kappa) {
            int nu = n - h - kappa;
            for (const auto& a1 : descendants(S.a1, kappa, q))
                for (const auto& a2 : descendants(S.a2, nu, r)) out.push_back(Tetrahedron{a1, a2});
        }
    }
    std::sort(out.begin(), out.end(), [](const Tetrahedron& A, const Tetrahedron& B) {
        if (A.height() != B.height()) return A.height() < B.height();
        if (A.a1 != B.a1) return A.a1 < B.a1;
        return A.a2 < B.a2;
    });
    return out;
}

LampState lamp_mul(const LampState& a, const LampState& b, int q) {
    std::unordered_map<int, int> sum;
    for (const auto& [p, v] : a.eta) sum[p] = v;
    for (const auto& [p, v] : b.eta) sum[p + a.pos] = (sum[p + a.pos] + v) % q;
    LampState out;
    out.pos = a.pos + b.pos;
    for (const auto& [p, v] : sum)
        if (v % q != 0) out.eta.emplace_back(p, v % q);
    std::sort(out.eta.begin(), out.eta.end());
    return out;
}

DLVertex lamplighter_encode(const LampState& g, int q) {
    if (q < 2) throw std::invalid_argument("lamplighter_encode: q >= 2 required");
    DLVertex x;
    x.x1.hor = g.pos;
    x.x2.hor = -g.pos;
    // Lamps at positions <= pos go to the first coordinate verbatim; lamps at
    // positions p >= pos+1 appear in the second coordinate at 1-p.
    for (const auto& [p, v] : g.eta) {
        if (p <= g.pos) x.x1.labels.emplace_back(p, v);
        else x.x2.labels.emplace_back(1 - p, v);
    }
    std::sort(x.x2.labels.begin(), x.x2.labels.end());
    return x;
}

LampState lamplighter_decode(const DLVertex& x, int q) {
    if (q < 2) throw std::invalid_argument("lamplighter_decode: q >= 2 required");
    if (!x.valid()) throw std::invalid_argument("lamplighter_decode: invalid vertex");
    LampState g;
    g.pos = x.x1.hor;
    for (const auto& [p, v] : x.x1.labels) g.eta.emplace_back(p, v);
    for (const auto& [p, v] : x.x2.labels) g.eta.emplace_back(1 - p, v);
    std::sort(g.eta.begin(), g.eta.end());
    return g;
}

std::string to_string(const DLVertex& x) { return to_string(x.x1) + "|" + to_string(x.x2); }

std::optional<int> graph_distance(const DLVertex& x, const DLVertex& y, int q, int r,
                                  int max_radius) {
    if (x == y) return 0;
    std::unordered_set<DLVertex, DLHash> seen{x};
    std::vector<DLVertex> frontier{x};
    for (int d = 1; d <= max_radius; ++d) {
        std::vector<DLVertex> next;
        for (const auto& v : frontier) {
            for (auto& w : dl_neighbors(v, q, r)) {
                if (w == y) return d;
                if (seen.insert(w).second) next.push_back(std::move(w));
            }
        }
        frontier = std::move(next);
        if (frontier.empty()) break;
    }
    return std::nullopt;
}

}  // namespace dl
