#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dl/tree.hpp"

namespace dl {

/// Vertex of the Diestel-Leader graph DL(q,r): a pair of tree vertices whose
/// horocycle indices sum to zero.
struct DLVertex {
    TreeVertex x1;  // in T_q
    TreeVertex x2;  // in T_r

    bool operator==(const DLVertex&) const = default;
    auto operator<=>(const DLVertex&) const = default;

    bool valid() const { return x1.hor + x2.hor == 0; }
};

std::size_t hash_value(const DLVertex& x);

struct DLHash {
    std::size_t operator()(const DLVertex& x) const { return hash_value(x); }
};

/// Reference vertex o = o1o2.
DLVertex dl_origin();

/// The q "down" neighbors (x1 to a successor, x2 to its predecessor) followed
/// by the r "up" neighbors; DL(q,r) is (q+r)-regular.
std::vector<DLVertex> dl_neighbors(const DLVertex& x, int q, int r);

/// Position of x relative to the origin: distances above/below the confluents
/// of each coordinate with the respective root.
struct RelativePosition {
    int up1 = 0, dn1 = 0, up2 = 0, dn2 = 0;
    TreeVertex c1, c2;

    // up1+up2 = dn1+dn2; the joint confluent pair spans a tetrahedron of this
    // height.
    int common_height() const { return up1 + up2; }
};

RelativePosition relative_position(const DLVertex& x);

/// Finite subgraph spanned by the descendants of a1 and a2 with compatible
/// horocycles; height n = -hor(a2) - hor(a1) >= 0.
struct Tetrahedron {
    TreeVertex a1;
    TreeVertex a2;

    bool operator==(const Tetrahedron&) const = default;
    auto operator<=>(const Tetrahedron&) const = default;

    int height() const { return -a2.hor - a1.hor; }
    bool valid() const { return height() >= 0; }
};

/// S(a1,a2) with a1 the all-zero vertex at horocycle -n and a2 the root of
/// T_r; contains the origin in its bottom level.
Tetrahedron canonical_tetrahedron(int n);

bool tetra_contains(const Tetrahedron& S, const DLVertex& x);

/// Level L_k of S: vertices with hor(x1) = hor(a1)+k; has q^k r^(n-k) elements.
std::vector<DLVertex> tetra_level(const Tetrahedron& S, int k, int q, int r);

/// All vertices of S in level-major order.
std::vector<DLVertex> tetra_vertices(const Tetrahedron& S, int q, int r);

long tetra_size(const Tetrahedron& S, int q, int r);

/// Every tetrahedron contained in S with height >= min_height, ordered by
/// (height, a1, a2).
std::vector<Tetrahedron> sub_tetrahedra(const Tetrahedron& S, int min_height, int q, int r);

/// Finitely supported lamp configuration Z -> Z_q: sorted (position, state)
/// entries with nonzero state.
using LampConfig = std::vector<std::pair<int, int>>;

/// Lamplighter group element (eta, k), the walker at k.
struct LampState {
    LampConfig eta;
    int pos = 0;

    bool operator==(const LampState&) const = default;
};

/// Group operation of Z_q wr Z.
LampState lamp_mul(const LampState& a, const LampState& b, int q);

/// Identification of Z_q wr Z with DL(q,q): splits the configuration at the
/// walker position across the two tree coordinates. Rejects q != r callers by
/// construction (the encoding only exists for DL(q,q)).
DLVertex lamplighter_encode(const LampState& g, int q);
LampState lamplighter_decode(const DLVertex& x, int q);

/// Textual form "<x1>|<x2>".
std::string to_string(const DLVertex& x);

/// Breadth-first graph distance; nullopt when it exceeds max_radius.
std::optional<int> graph_distance(const DLVertex& x, const DLVertex& y, int q, int r,
                                  int max_radius);

}  // namespace dl
