#include "dl/tree.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <string>

namespace dl {

int TreeVertex::label_at(int pos) const {
    auto it = std::lower_bound(labels.begin(), labels.end(), pos,
                               [](const auto& e, int p) { return e.first < p; });
    if (it != labels.end() && it->first == pos) return it->second;
    return 0;
}

bool TreeVertex::canonical(int b) const {
    int prev = hor;
    bool first = true;
    for (auto it = labels.rbegin(); it != labels.rend(); ++it) {
        auto [pos, label] = *it;
        if (label <= 0 || label >= b) return false;
        if (pos > hor) return false;
        if (!first && pos >= prev) return false;
        prev = pos;
        first = false;
    }
    return true;
}

TreeVertex tree_root() { return TreeVertex{}; }

TreeVertex predecessor(const TreeVertex& v) {
    TreeVertex out = v;
    if (!out.labels.empty() && out.labels.back().first == out.hor) out.labels.pop_back();
    out.hor -= 1;
    return out;
}

TreeVertex successor(const TreeVertex& v, int label, int b) {
    if (label < 0 || label >= b) throw std::invalid_argument("successor: label out of range");
    TreeVertex out = v;
    out.hor += 1;
    if (label != 0) out.labels.emplace_back(out.hor, label);
    return out;
}

std::vector<TreeVertex> tree_neighbors(const TreeVertex& v, int b) {
    std::vector<TreeVertex> out;
    out.reserve(b + 1);
    out.push_back(predecessor(v));
    for (int s = 0; s < b; ++s) out.push_back(successor(v, s, b));
    return out;
}

TreeVertex ancestor_at(const TreeVertex& v, int hor) {
    assert(hor <= v.hor);
    TreeVertex out;
    out.hor = hor;
    for (const auto& e : v.labels) {
        if (e.first > hor) break;
        out.labels.push_back(e);
    }
    return out;
}

bool is_ancestor(const TreeVertex& a, const TreeVertex& v) {
    if (a.hor > v.hor) return false;
    return ancestor_at(v, a.hor) == a;
}

TreeVertex confluent(const TreeVertex& x, const TreeVertex& y) {
    // Highest horocycle h <= min(hor) where the label sequences agree on all
    // positions <= h; below the common support they agree trivially.
    int h = std::min(x.hor, y.hor);
    int lowest_diff = h + 1;
    auto scan = [&](const TreeVertex& a, const TreeVertex& b) {
        for (const auto& [pos, label] : a.labels) {
            if (pos > h) break;
            if (b.label_at(pos) != label) lowest_diff = std::min(lowest_diff, pos);
        }
    };
    scan(x, y);
    scan(y, x);
    return ancestor_at(x.hor <= y.hor ? x : y, std::min(h, lowest_diff - 1));
}

int tree_distance(const TreeVertex& x, const TreeVertex& y) {
    TreeVertex c = confluent(x, y);
    return (x.hor - c.hor) + (y.hor - c.hor);
}

std::vector<TreeVertex> descendants(const TreeVertex& a, int depth, int b) {
    std::vector<TreeVertex> out{a};
    for (int d = 0; d < depth; ++d) {
        std::vector<TreeVertex> next;
        next.reserve(out.size() * b);
        for (const auto& v : out)
            for (int s = 0; s < b; ++s) next.push_back(successor(v, s, b));
        out = std::move(next);
    }
    return out;
}

int first_step_label(const TreeVertex& a, const TreeVertex& x) {
    assert(a.hor < x.hor && is_ancestor(a, x));
    return x.label_at(a.hor + 1);
}

std::size_t hash_value(const TreeVertex& v) {
    // FNV-1a over (hor, label entries); deterministic across runs.
    std::size_t h = 1469598103934665603ull;
    auto mix = [&h](std::size_t x) {
        h ^= x;
        h *= 1099511628211ull;
    };
    mix(static_cast<std::size_t>(static_cast<unsigned>(v.hor)));
    for (const auto& [pos, label] : v.labels) {
        mix(static_cast<std::size_t>(static_cast<unsigned>(pos)));
        mix(static_cast<std::size_t>(static_cast<unsigned>(label)));
    }
    return h;
}

std::string to_string(const TreeVertex& v) {
    std::string out = "h" + std::to_string(v.hor);
    bool first = true;
    for (const auto& [pos, label] : v.labels) {
        out += first ? ";" : ",";
        out += std::to_string(pos) + ":" + std::to_string(label);
        first = false;
    }
    return out;
}

}  // namespace dl
