#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dl/numerics.hpp"
#include "dl/sparse.hpp"

namespace dl {

/// Drifted walk P_alpha on DL(q,r): move down (first coordinate to a
/// successor) with probability alpha, up otherwise, uniformly among the
/// branches. SRW is alpha = q/(q+r).
struct WalkParams {
    int q = 2;
    int r = 2;
    Rational alpha = ratio(1, 2);

    bool valid() const { return q >= 2 && r >= 2 && alpha > 0 && alpha < 1; }
};

WalkParams srw_params(int q, int r);

std::vector<std::pair<DLVertex, Rational>> step_kernel(const DLVertex& x, const WalkParams& p);

/// Exact distribution over vertices; entries sum to 1.
struct ExactDist {
    std::unordered_map<DLVertex, Rational, DLHash> entries;

    Rational total() const;
    Rational at(const DLVertex& x) const;
};

ExactDist point_mass(const DLVertex& x);

/// One exact step of P_alpha; throws BudgetError when the support would
/// exceed state_budget.
ExactDist walk_step(const ExactDist& d, const WalkParams& p, std::size_t state_budget);

ExactDist walk_distribution(int N, const WalkParams& p, std::size_t state_budget = 10'000'000);

Rational exact_return_prob(int N, const WalkParams& p, std::size_t state_budget = 10'000'000);

/// Reversing weight m_alpha(x) = (alpha r / ((1-alpha) q))^{hor(x1)}.
Rational reversing_weight(const DLVertex& x, const WalkParams& p);

/// t_alpha^2 = 4 alpha (1-alpha) / rho(P)^2, rational for rational alpha;
/// p_alpha^{(2N)}(o,o) = t_alpha^{2N} p^{(2N)}(o,o).
Rational t_alpha_sq(const WalkParams& p);
double conjugation_factor(const WalkParams& p);

/// Marginals under the coordinate projections and the horocycle projection.
std::unordered_map<TreeVertex, Rational, TreeHash> project_tree_dist(const ExactDist& d,
                                                                     int which);
std::map<int, Rational> project_z_dist(const ExactDist& d);

/// One step of the projected kernels: on T_q the walk steps to each successor
/// with probability alpha/q and to the predecessor with probability 1-alpha;
/// on Z it is the (alpha, 1-alpha) birth-death walk.
std::unordered_map<TreeVertex, Rational, TreeHash> tree_step(
    const std::unordered_map<TreeVertex, Rational, TreeHash>& d, const Rational& alpha, int q);
std::map<int, Rational> z_step(const std::map<int, Rational>& d, const Rational& alpha);

Rational tree_return_prob(int N, const Rational& alpha, int q);
Rational z_return_prob(int N, const Rational& alpha);

/// N-th moment of the projected walk's spectral density, by adaptive
/// quadrature after the substitution lambda = sqrt(4 alpha (1-alpha)) sin t
/// that removes the endpoint singularity. tree_mode selects the T_q density;
/// otherwise the Z arcsine-type density.
double projection_plancherel_moment(int N, double alpha, int q, bool tree_mode,
                                    double tol = 1e-10);

/// Escape statistics of simulated P_alpha paths. The distance column is exact
/// BFS distance when steps <= bfs_radius_cap, else the horocycle displacement
/// |hor(x1)|, which lower-bounds the graph distance; `metric` records which
/// one was used.
struct EscapeStats {
    int trials = 0;
    int steps = 0;
    std::string metric;  // "bfs" or "hor"
    double mean_rate = 0.0;
    double mean_normalized = 0.0;
    std::vector<double> normalized_samples;
};

EscapeStats simulate_escape(const WalkParams& p, int steps, int trials, std::uint64_t seed,
                            int bfs_radius_cap = 12);

}  // namespace dl
