#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "dl/dl_graph.hpp"
#include "dl/numerics.hpp"

using namespace dl;

namespace {

DLVertex random_vertex(Xoshiro256& rng, int q, int r, int walk_len) {
    DLVertex x = dl_origin();
    for (int i = 0; i < walk_len; ++i) {
        auto nbrs = dl_neighbors(x, q, r);
        x = nbrs[rng.below(nbrs.size())];
    }
    return x;
}

}  // namespace

TEST_SUITE_BEGIN("dl_graph");

TEST_CASE("tree neighbors at the root") {
    auto nbrs = tree_neighbors(tree_root(), 2);
    REQUIRE(nbrs.size() == 3);
    CHECK(nbrs[0].hor == -1);
    CHECK(nbrs[0].labels.empty());
    CHECK(nbrs[1].hor == 1);
    CHECK(nbrs[1].labels.empty());  // label 0 never stored
    CHECK(nbrs[2].hor == 1);
    CHECK(nbrs[2].labels == std::vector<std::pair<int, int>>{{1, 1}});
}

TEST_CASE("predecessor of successor round trip") {
    Xoshiro256 rng(7);
    for (int b : {2, 3, 5}) {
        TreeVertex v = tree_root();
        for (int i = 0; i < 30; ++i) {
            int s = int(rng.below(b));
            CHECK(predecessor(successor(v, s, b)) == v);
            v = (rng.below(3) == 0) ? predecessor(v) : successor(v, s, b);
            CHECK(v.canonical(b));
        }
    }
}

TEST_CASE("predecessor drops the top label") {
    TreeVertex v;
    v.hor = 2;
    v.labels = {{1, 2}, {2, 1}};
    REQUIRE(v.canonical(3));
    TreeVertex p = predecessor(v);
    CHECK(p.hor == 1);
    CHECK(p.labels == std::vector<std::pair<int, int>>{{1, 2}});
}

TEST_CASE("confluent and distances") {
    // Two siblings below the root: confluent at the root, distance 2.
    TreeVertex a = successor(tree_root(), 0, 2);
    TreeVertex b = successor(tree_root(), 1, 2);
    CHECK(confluent(a, b) == tree_root());
    CHECK(tree_distance(a, b) == 2);
    CHECK(tree_distance(a, a) == 0);
    CHECK(is_ancestor(tree_root(), a));
    CHECK(!is_ancestor(a, b));
}

TEST_CASE("dl_neighbors degree and split") {
    CHECK(dl_neighbors(dl_origin(), 2, 2).size() == 4);
    auto n23 = dl_neighbors(dl_origin(), 2, 3);
    REQUIRE(n23.size() == 5);
    int down = 0, up = 0;
    for (const auto& y : n23) {
        REQUIRE(y.valid());
        (y.x1.hor == 1 ? down : up)++;
    }
    CHECK(down == 2);
    CHECK(up == 3);
}

TEST_CASE("dl_neighbors symmetry") {
    Xoshiro256 rng(11);
    for (int i = 0; i < 100; ++i) {
        DLVertex x = random_vertex(rng, 2, 3, 8);
        for (const auto& y : dl_neighbors(x, 2, 3)) {
            auto back = dl_neighbors(y, 2, 3);
            CHECK(std::count(back.begin(), back.end(), x) == 1);
        }
    }
}

TEST_CASE("bipartite parity of hor(x1)") {
    Xoshiro256 rng(13);
    DLVertex x = random_vertex(rng, 3, 2, 5);
    for (const auto& y : dl_neighbors(x, 3, 2))
        CHECK((y.x1.hor - x.x1.hor) * (y.x1.hor - x.x1.hor) == 1);
}

TEST_CASE("relative position") {
    auto rp = relative_position(dl_origin());
    CHECK(rp.up1 == 0);
    CHECK(rp.dn1 == 0);
    CHECK(rp.up2 == 0);
    CHECK(rp.dn2 == 0);
    CHECK(rp.c1 == tree_root());

    // One down move: first coordinate descends, second ascends.
    auto nbrs = dl_neighbors(dl_origin(), 2, 3);
    for (int s = 0; s < 2; ++s) {
        auto rps = relative_position(nbrs[s]);
        CHECK(rps.up1 == 0);
        CHECK(rps.dn1 == 1);
        CHECK(rps.up2 == 1);
        CHECK(rps.dn2 == 0);
    }

    Xoshiro256 rng(17);
    for (int i = 0; i < 50; ++i) {
        auto rpr = relative_position(random_vertex(rng, 2, 3, 10));
        CHECK(rpr.up1 + rpr.up2 == rpr.dn1 + rpr.dn2);
        CHECK(rpr.common_height() >= 0);
    }
}

TEST_CASE("tetra levels and size") {
    Tetrahedron S = canonical_tetrahedron(3);
    CHECK(S.height() == 3);
    CHECK(tetra_level(S, 0, 2, 3).size() == 27);
    CHECK(tetra_level(S, 3, 2, 3).size() == 8);
    CHECK(tetra_level(S, 1, 2, 3).size() == 2 * 9);
    CHECK(tetra_vertices(S, 2, 3).size() == 65);
    CHECK(tetra_size(S, 2, 3) == 65);  // (3^4 - 2^4)/(3 - 2)
    CHECK_THROWS_AS(tetra_level(S, 4, 2, 3), std::out_of_range);

    // Levels partition S.
    std::set<DLVertex> seen;
    for (int k = 0; k <= 3; ++k)
        for (const auto& x : tetra_level(S, k, 2, 3)) {
            CHECK(tetra_contains(S, x));
            CHECK(seen.insert(x).second);
        }
    CHECK(seen.size() == 65);
}

TEST_CASE("sub tetrahedra counts") {
    Tetrahedron S2 = canonical_tetrahedron(2);
    auto subs2 = sub_tetrahedra(S2, 2, 2, 2);
    REQUIRE(subs2.size() == 1);
    CHECK(subs2[0] == S2);

    Tetrahedron S = canonical_tetrahedron(3);
    auto subs = sub_tetrahedra(S, 2, 2, 3);
    // Level-1 support: a1 fixed at depth 0, a2 at depth <= 1.
    long touching_level1 = 0;
    for (const auto& sub : subs) {
        int depth1 = sub.a1.hor - S.a1.hor;
        int level_in_sub = 1 - depth1;
        if (level_in_sub >= 1 && level_in_sub <= sub.height() - 1) ++touching_level1;
    }
    CHECK(touching_level1 == 4);  // (2^1-1)(3^2-1)/((2-1)(3-1))

    long h2 = 0, h3 = 0;
    for (const auto& sub : subs) (sub.height() == 2 ? h2 : h3)++;
    CHECK(h2 == 5);  // q + r choices of the cut corner
    CHECK(h3 == 1);
}

TEST_CASE("sub tetrahedra brute force cross-check") {
    Tetrahedron S = canonical_tetrahedron(4);
    auto subs = sub_tetrahedra(S, 2, 2, 2);
    std::set<Tetrahedron> unique(subs.begin(), subs.end());
    CHECK(unique.size() == subs.size());
    long expected = 0;
    for (int h = 2; h <= 4; ++h)
        for (int kappa = 0; kappa + h <= 4; ++kappa)
            expected += (1L << kappa) * (1L << (4 - h - kappa));
    CHECK(long(subs.size()) == expected);
    for (const auto& sub : subs) {
        CHECK(is_ancestor(S.a1, sub.a1));
        CHECK(is_ancestor(S.a2, sub.a2));
        CHECK(sub.height() >= 2);
    }
}

TEST_CASE("lamplighter encoding") {
    LampState id;
    CHECK(lamplighter_encode(id, 2) == dl_origin());
    CHECK(lamplighter_decode(dl_origin(), 2) == id);

    Xoshiro256 rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        LampState g;
        g.pos = int(rng.below(9)) - 4;
        for (int p = -4; p <= 4; ++p) {
            int v = int(rng.below(3));
            if (v != 0) g.eta.emplace_back(p, v);
        }
        auto x = lamplighter_encode(g, 3);
        CHECK(x.valid());
        CHECK(lamplighter_decode(x, 3) == g);
    }
}

TEST_CASE("lamplighter generators move to neighbors") {
    Xoshiro256 rng(29);
    for (int q : {2, 3}) {
    for (int trial = 0; trial < 25; ++trial) {
        LampState g;
        g.pos = int(rng.below(7)) - 3;
        for (int p = -3; p <= 3; ++p)
            if (rng.below(2)) g.eta.emplace_back(p, 1);
        DLVertex x = lamplighter_encode(g, q);
        auto nbrs = dl_neighbors(x, q, q);
        for (int ell = 0; ell < q; ++ell) {
            LampState down{{{1, ell}}, 1};
            if (ell == 0) down.eta.clear();
            DLVertex y = lamplighter_encode(lamp_mul(g, down, q), q);
            CHECK(std::count(nbrs.begin(), nbrs.end(), y) == 1);
            LampState up{{{0, ell}}, -1};
            if (ell == 0) up.eta.clear();
            DLVertex z = lamplighter_encode(lamp_mul(g, up, q), q);
            CHECK(std::count(nbrs.begin(), nbrs.end(), z) == 1);
        }
    }
    }
}

TEST_CASE("left translations preserve edges") {
    Xoshiro256 rng(31);
    const int q = 2;
    LampState g{{{-2, 1}, {1, 1}}, 2};
    for (int trial = 0; trial < 20; ++trial) {
        DLVertex x = random_vertex(rng, q, q, 6);
        auto nbrs = dl_neighbors(x, q, q);
        DLVertex gx = lamplighter_encode(lamp_mul(g, lamplighter_decode(x, q), q), q);
        for (const auto& y : nbrs) {
            DLVertex gy = lamplighter_encode(lamp_mul(g, lamplighter_decode(y, q), q), q);
            auto gnbrs = dl_neighbors(gx, q, q);
            CHECK(std::count(gnbrs.begin(), gnbrs.end(), gy) == 1);
        }
    }
}

TEST_CASE("graph distance") {
    CHECK(graph_distance(dl_origin(), dl_origin(), 2, 3, 0) == 0);
    for (const auto& y : dl_neighbors(dl_origin(), 2, 3))
        CHECK(graph_distance(dl_origin(), y, 2, 3, 4) == 1);
    CHECK(!graph_distance(dl_origin(), dl_neighbors(dl_origin(), 2, 3)[0], 2, 3, 0).has_value());

    Xoshiro256 rng(37);
    for (int i = 0; i < 50; ++i) {
        DLVertex a = random_vertex(rng, 2, 2, 4);
        DLVertex b = random_vertex(rng, 2, 2, 4);
        auto dab = graph_distance(a, b, 2, 2, 8);
        auto dba = graph_distance(b, a, 2, 2, 8);
        REQUIRE(dab.has_value());
        CHECK(dab == dba);
    }
}

TEST_SUITE_END();
