#pragma once

#include <cmath>
#include <unordered_map>
#include <vector>

#include "dl/dl_graph.hpp"
#include "dl/rational.hpp"

namespace dl {

struct TreeHash {
    std::size_t operator()(const TreeVertex& v) const { return hash_value(v); }
};

/// Finitely supported function DL(q,r) -> Scalar. Stored entries are nonzero;
/// exact zeros produced by rational accumulation are dropped.
template <typename Scalar>
struct SparseFunction {
    std::unordered_map<DLVertex, Scalar, DLHash> values;

    Scalar at(const DLVertex& x) const {
        auto it = values.find(x);
        return it == values.end() ? Scalar(0) : it->second;
    }

    void add(const DLVertex& x, const Scalar& v) {
        if (v == Scalar(0)) return;
        auto [it, inserted] = values.try_emplace(x, v);
        if (!inserted) {
            it->second += v;
            if (it->second == Scalar(0)) values.erase(it);
        }
    }

    void set(const DLVertex& x, const Scalar& v) {
        if (v == Scalar(0)) values.erase(x);
        else values[x] = v;
    }

    std::size_t support_size() const { return values.size(); }

    /// Support in deterministic (sorted) order.
    std::vector<DLVertex> sorted_support() const {
        std::vector<DLVertex> out;
        out.reserve(values.size());
        for (const auto& [x, v] : values) out.push_back(x);
        std::sort(out.begin(), out.end());
        return out;
    }
};

using SparseD = SparseFunction<double>;
using SparseQ = SparseFunction<Rational>;

template <typename Scalar>
Scalar inner(const SparseFunction<Scalar>& f, const SparseFunction<Scalar>& g) {
    const auto& small = f.values.size() <= g.values.size() ? f : g;
    const auto& big = f.values.size() <= g.values.size() ? g : f;
    Scalar acc(0);
    for (const auto& [x, v] : small.values) {
        auto it = big.values.find(x);
        if (it != big.values.end()) acc += v * it->second;
    }
    return acc;
}

template <typename Scalar>
Scalar norm2(const SparseFunction<Scalar>& f) {
    Scalar acc(0);
    for (const auto& [x, v] : f.values) acc += v * v;
    return acc;
}

/// One application of the SRW operator P with p(x,y) = 1/(q+r) on edges.
/// The support grows by at most one neighborhood.
template <typename Scalar>
SparseFunction<Scalar> apply_P(const SparseFunction<Scalar>& f, int q, int r) {
    Scalar w;
    if constexpr (std::is_same_v<Scalar, Rational>) w = ratio(1, q + r);
    else w = Scalar(1) / Scalar(q + r);
    SparseFunction<Scalar> out;
    out.values.reserve(f.values.size() * (q + r));
    for (const auto& [x, v] : f.values) {
        Scalar spread = v * w;
        for (const auto& y : dl_neighbors(x, q, r)) out.add(y, spread);
    }
    return out;
}

/// Max |(Pf)(x) - lambda f(x)| over support(f) and its neighbors.
double eigen_defect(const SparseD& f, double lambda, int q, int r);

/// Max absolute horizontal fiber sum (both fiber families).
double horizontality_defect(const SparseD& f);

/// Both fiber-sum families vanish exactly.
bool is_horizontal_exact(const SparseQ& f);

}  // namespace dl
