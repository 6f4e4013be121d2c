#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace dl {

/// Vertex of the homogeneous tree T_b (degree b+1) in horocyclic coordinates.
///
/// A vertex is identified by the finitely supported sequence of edge labels
/// along its geodesic toward the reference end, keyed by the horocycle index
/// each edge leads into, together with the vertex's own horocycle index.
/// Zero labels are never stored, so equality is structural and every vertex
/// has exactly one representation.
struct TreeVertex {
    std::vector<std::pair<int, int>> labels;  // (position, label), sorted by position,
                                              // label in 1..b-1, position <= hor
    int hor = 0;

    bool operator==(const TreeVertex&) const = default;
    auto operator<=>(const TreeVertex&) const = default;

    int label_at(int pos) const;
    bool canonical(int b) const;
};

/// The all-zero sequence at horocycle 0.
TreeVertex tree_root();

/// Unique neighbor one horocycle up (toward the reference end).
TreeVertex predecessor(const TreeVertex& v);

/// Successor one horocycle down along the edge with the given label.
TreeVertex successor(const TreeVertex& v, int label, int b);

/// Predecessor first, then the b successors with labels 0..b-1.
std::vector<TreeVertex> tree_neighbors(const TreeVertex& v, int b);

/// Ancestor of v at the given horocycle (hor <= v.hor).
TreeVertex ancestor_at(const TreeVertex& v, int hor);

/// True when a lies on the geodesic from v to the reference end.
bool is_ancestor(const TreeVertex& a, const TreeVertex& v);

/// Confluent x ⋏ y with respect to the reference end: the common ancestor
/// closest to the two vertices.
TreeVertex confluent(const TreeVertex& x, const TreeVertex& y);

int tree_distance(const TreeVertex& x, const TreeVertex& y);

/// All b^depth descendants at the given depth below a, in label-lexicographic
/// order.
std::vector<TreeVertex> descendants(const TreeVertex& a, int depth, int b);

/// Label of the first edge on the geodesic from ancestor a down to x
/// (requires a to be a strict ancestor of x).
int first_step_label(const TreeVertex& a, const TreeVertex& x);

std::size_t hash_value(const TreeVertex& v);

/// Compact textual form "h<hor>" or "h<hor>;p1:l1,p2:l2".
std::string to_string(const TreeVertex& v);

}  // namespace dl
