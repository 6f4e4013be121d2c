#include "dl/walk_engine.hpp"

#include <cassert>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dl {

WalkParams srw_params(int q, int r) { return WalkParams{q, r, ratio(q, q + r)}; }

std::vector<std::pair<DLVertex, Rational>> step_kernel(const DLVertex& x, const WalkParams& p) {
    if (!p.valid()) throw std::invalid_argument("step_kernel: bad parameters");
    Rational down = p.alpha / p.q;
    Rational up = (1 - p.alpha) / p.r;
    std::vector<std::pair<DLVertex, Rational>> out;
    out.reserve(p.q + p.r);
    auto nbrs = dl_neighbors(x, p.q, p.r);
    for (int s = 0; s < p.q; ++s) out.emplace_back(nbrs[s], down);
    for (int t = 0; t < p.r; ++t) out.emplace_back(nbrs[p.q + t], up);
    return out;
}

Rational ExactDist::total() const {
    Rational t(0);
    for (const auto& [x, v] : entries) t += v;
    return t;
}

Rational ExactDist::at(const DLVertex& x) const {
    auto it = entries.find(x);
    return it == entries.end() ? Rational(0) : it->second;
}

ExactDist point_mass(const DLVertex& x) {
    ExactDist d;
    d.entries.emplace(x, Rational(1));
    return d;
}

ExactDist walk_step(const ExactDist& d, const WalkParams& p, std::size_t state_budget) {
    ExactDist out;
    out.entries.reserve(d.entries.size() * 2);
    Rational down = p.alpha / p.q;
    Rational up = (1 - p.alpha) / p.r;
    for (const auto& [x, mass] : d.entries) {
        Rational mdown = mass * down;
        Rational mup = mass * up;
        auto nbrs = dl_neighbors(x, p.q, p.r);
        for (int s = 0; s < p.q; ++s) out.entries[nbrs[s]] += mdown;
        for (int t = 0; t < p.r; ++t) out.entries[nbrs[p.q + t]] += mup;
        if (out.entries.size() > state_budget)
            throw BudgetError("walk_step: state budget exceeded");
    }
    return out;
}

ExactDist walk_distribution(int N, const WalkParams& p, std::size_t state_budget) {
    ExactDist d = point_mass(dl_origin());
    for (int step = 0; step < N; ++step) d = walk_step(d, p, state_budget);
    assert(d.total() == 1);
    return d;
}

Rational exact_return_prob(int N, const WalkParams& p, std::size_t state_budget) {
    return walk_distribution(N, p, state_budget).at(dl_origin());
}

Rational reversing_weight(const DLVertex& x, const WalkParams& p) {
    Rational base = (p.alpha * p.r) / ((1 - p.alpha) * p.q);
    int h = x.x1.hor;
    if (h >= 0) return rat_pow(base, static_cast<unsigned long>(h));
    return rat_pow(1 / base, static_cast<unsigned long>(-h));
}

Rational t_alpha_sq(const WalkParams& p) {
    // 4a(1-a) / rho^2 with rho^2 = 4qr/(q+r)^2.
    return p.alpha * (1 - p.alpha) * (p.q + p.r) * (p.q + p.r) / (p.q * p.r);
}

double conjugation_factor(const WalkParams& p) { return std::sqrt(to_double(t_alpha_sq(p))); }

std::unordered_map<TreeVertex, Rational, TreeHash> project_tree_dist(const ExactDist& d,
                                                                     int which) {
    if (which != 1 && which != 2) throw std::invalid_argument("project_tree_dist: which in {1,2}");
    std::unordered_map<TreeVertex, Rational, TreeHash> out;
    for (const auto& [x, v] : d.entries) out[which == 1 ? x.x1 : x.x2] += v;
    return out;
}

std::map<int, Rational> project_z_dist(const ExactDist& d) {
    std::map<int, Rational> out;
    for (const auto& [x, v] : d.entries) out[x.x1.hor] += v;
    return out;
}

std::unordered_map<TreeVertex, Rational, TreeHash> tree_step(
    const std::unordered_map<TreeVertex, Rational, TreeHash>& d, const Rational& alpha, int q) {
    std::unordered_map<TreeVertex, Rational, TreeHash> out;
    Rational down = alpha / q;
    Rational up = 1 - alpha;
    for (const auto& [x, mass] : d) {
        Rational mdown = mass * down;
        for (int s = 0; s < q; ++s) out[successor(x, s, q)] += mdown;
        out[predecessor(x)] += mass * up;
    }
    return out;
}

std::map<int, Rational> z_step(const std::map<int, Rational>& d, const Rational& alpha) {
    std::map<int, Rational> out;
    for (const auto& [k, mass] : d) {
        out[k + 1] += mass * alpha;
        out[k - 1] += mass * (1 - alpha);
    }
    return out;
}

Rational tree_return_prob(int N, const Rational& alpha, int q) {
    std::unordered_map<TreeVertex, Rational, TreeHash> d{{tree_root(), Rational(1)}};
    for (int step = 0; step < N; ++step) d = tree_step(d, alpha, q);
    auto it = d.find(tree_root());
    return it == d.end() ? Rational(0) : it->second;
}

Rational z_return_prob(int N, const Rational& alpha) {
    if (N % 2 == 1) return Rational(0);
    // Binomial walk: C(N, N/2) alpha^{N/2} (1-alpha)^{N/2}.
    unsigned long half = static_cast<unsigned long>(N / 2);
    Rational out = binomial(static_cast<unsigned long>(N), half);
    out *= rat_pow(alpha, half);
    out *= rat_pow(1 - alpha, half);
    return out;
}

double projection_plancherel_moment(int N, double alpha, int q, bool tree_mode, double tol) {
    double s = std::sqrt(4.0 * alpha * (1.0 - alpha));
    const double pi = std::numbers::pi;
    std::function<double(double)> integrand;
    if (tree_mode) {
        // Density (q+1)/(2 pi) sqrt(s^2 - l^2) / (tau^2 - l^2); after
        // l = s sin t the integrand is smooth since tau > s for q >= 2.
        double tau = s * (q + 1) / (2.0 * std::sqrt(double(q)));
        integrand = [=](double t) {
            double lambda = s * std::sin(t);
            double c = s * std::cos(t);
            return (q + 1) / (2.0 * pi) * std::pow(lambda, N) * c * c /
                   (tau * tau - lambda * lambda);
        };
    } else {
        // Arcsine-type density 1/(pi sqrt(s^2 - l^2)); the substitution
        // cancels the singular factor entirely.
        integrand = [=](double t) { return std::pow(s * std::sin(t), N) / pi; };
    }
    return adaptive_simpson(integrand, -pi / 2.0, pi / 2.0, tol);
}

EscapeStats simulate_escape(const WalkParams& p, int steps, int trials, std::uint64_t seed,
                            int bfs_radius_cap) {
    if (steps < 1 || trials < 1) throw std::invalid_argument("simulate_escape: steps, trials >= 1");
    EscapeStats stats;
    stats.trials = trials;
    stats.steps = steps;
    bool use_bfs = steps <= bfs_radius_cap;
    stats.metric = use_bfs ? "bfs" : "hor";

    Xoshiro256 rng(seed);
    double alpha = to_double(p.alpha);
    double drift = std::abs(2.0 * alpha - 1.0);
    double sigma = std::sqrt(4.0 * alpha * (1.0 - alpha));
    KahanSum rate_sum, norm_sum;
    // Head with probability alpha = a_num/a_den, decided by an integer draw.
    if (!mpz_fits_ulong_p(mpq_numref(p.alpha.get_mpq_t())) ||
        !mpz_fits_ulong_p(mpq_denref(p.alpha.get_mpq_t())))
        throw std::invalid_argument("simulate_escape: alpha terms too large to sample");
    unsigned long a_num = mpz_get_ui(mpq_numref(p.alpha.get_mpq_t()));
    unsigned long a_den = mpz_get_ui(mpq_denref(p.alpha.get_mpq_t()));

    for (int t = 0; t < trials; ++t) {
        DLVertex z = dl_origin();
        for (int n = 0; n < steps; ++n) {
            bool head = rng.below(a_den) < a_num;
            if (head) {
                int s = static_cast<int>(rng.below(static_cast<std::uint64_t>(p.q)));
                z = DLVertex{successor(z.x1, s, p.q), predecessor(z.x2)};
            } else {
                int s = static_cast<int>(rng.below(static_cast<std::uint64_t>(p.r)));
                z = DLVertex{predecessor(z.x1), successor(z.x2, s, p.r)};
            }
        }
        double dist;
        if (use_bfs) {
            auto d = graph_distance(dl_origin(), z, p.q, p.r, steps);
            dist = double(d.value());
        } else {
            dist = std::abs(double(z.x1.hor));
        }
        rate_sum.add(dist / steps);
        double normalized = (alpha == 0.5)
                                ? dist / std::sqrt(double(steps))
                                : (dist - drift * steps) / (sigma * std::sqrt(double(steps)));
        stats.normalized_samples.push_back(normalized);
        norm_sum.add(normalized);
    }
    stats.mean_rate = rate_sum.value() / trials;
    stats.mean_normalized = norm_sum.value() / trials;
    return stats;
}

}  // namespace dl
