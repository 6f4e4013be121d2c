#include "dl/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "dl/asymptotics.hpp"
#include "dl/eigenbasis.hpp"
#include "dl/spectral_measures.hpp"
#include "dl/table.hpp"
#include "dl/tetra_spectra.hpp"
#include "dl/walk_engine.hpp"

namespace dl::cli {

namespace {

Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        Rational r(s, 10);
        r.canonicalize();
        return r;
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) {
        Rational r(s + "/1", 10);
        r.canonicalize();
        return r;
    }
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    std::string den = "1" + std::string(s.size() - dot - 1, '0');
    Rational r(digits + "/" + den, 10);
    r.canonicalize();
    return r;
}

struct CommonFlags {
    int q = 2;
    int r = 2;
    std::string format = "csv";
    std::string out_path;
    int precision = 12;
};

void add_common(CLI::App* cmd, CommonFlags& cf) {
    cmd->add_option("--q", cf.q, "branching of the first tree")->check(CLI::Range(2, 64));
    cmd->add_option("--r", cf.r, "branching of the second tree")->check(CLI::Range(2, 64));
    cmd->add_option("--format", cf.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", cf.out_path, "write output to this file");
    cmd->add_option("--precision", cf.precision, "significant digits for numeric output")
        ->check(CLI::Range(3, 17));
}

void emit(const Table& t, const CommonFlags& cf, std::ostream& out) {
    if (!cf.out_path.empty()) {
        std::ofstream file(cf.out_path);
        if (!file) throw std::runtime_error("cannot open output file " + cf.out_path);
        if (cf.format == "json") write_json(t, file);
        else write_csv(t, file);
        return;
    }
    if (cf.format == "json") write_json(t, out);
    else write_csv(t, out);
}

DLVertex vertex_from_path(const std::string& path, int q, int r) {
    DLVertex x = dl_origin();
    std::stringstream ss(path);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        char dir = tok[0];
        int label = std::stoi(tok.substr(1));
        if (dir == 'd' || dir == 'D') {
            if (label < 0 || label >= q) throw CLI::ValidationError("--x-path", "label out of range");
            x = DLVertex{successor(x.x1, label, q), predecessor(x.x2)};
        } else if (dir == 'u' || dir == 'U') {
            if (label < 0 || label >= r) throw CLI::ValidationError("--x-path", "label out of range");
            x = DLVertex{predecessor(x.x1), successor(x.x2, label, r)};
        } else {
            throw CLI::ValidationError("--x-path", "tokens look like d0 or u1");
        }
    }
    return x;
}

int run_spectrum(const CommonFlags& cf, int n_max, std::ostream& out) {
    Table t;
    t.command = "spectrum";
    t.columns = {"m", "n", "lambda"};
    struct Row {
        double lambda;
        int m, n;
    };
    std::vector<Row> rows;
    for (auto [m, n] : coprime_pairs(n_max)) rows.push_back({eigenvalue(m, n, cf.q, cf.r), m, n});
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        return a.lambda < b.lambda;
    });
    for (const auto& rrow : rows)
        t.rows.push_back({cell(long(rrow.m)), cell(long(rrow.n)), cell(rrow.lambda, cf.precision)});
    t.note("rho", cell(spectral_radius(cf.q, cf.r), cf.precision));
    emit(t, cf, out);
    return 0;
}

int run_plancherel(const CommonFlags& cf, int n_max, std::ostream& out) {
    auto mu = plancherel_measure(cf.q, cf.r, n_max);
    Table t;
    t.command = "plancherel";
    t.columns = {"m", "n", "lambda", "mass"};
    for (const auto& a : mu.atoms)
        t.rows.push_back({cell(long(a.m)), cell(long(a.n)), cell(a.lambda, cf.precision),
                          cell(a.mass, cf.precision)});
    t.note("total_mass", cell(mu.total_mass(), cf.precision));
    t.note("tail_bound", cell(mu.tail_bound, cf.precision));
    if (cf.q == cf.r)
        t.note("mass_1_2_exact", cell(plancherel_mass_exact(1, 2, cf.q)));
    emit(t, cf, out);
    return 0;
}

int run_mu_ox(const CommonFlags& cf, int n_max, int ell_max, const std::string& path,
              std::ostream& out) {
    DLVertex x = vertex_from_path(path, cf.q, cf.r);
    auto mu = mu_ox_measure(x, cf.q, cf.r, n_max, ell_max);
    Table t;
    t.command = "mu-ox";
    t.columns = {"m", "n", "lambda", "mass"};
    for (const auto& a : mu.atoms)
        t.rows.push_back({cell(long(a.m)), cell(long(a.n)), cell(a.lambda, cf.precision),
                          cell(a.mass, cf.precision)});
    t.note("x_path", cell(path.empty() ? std::string("o") : path));
    t.note("total_mass", cell(mu.total_mass(), cf.precision));
    t.note("tail_bound", cell(mu.tail_bound, cf.precision));
    emit(t, cf, out);
    return 0;
}

int run_return_prob(const CommonFlags& cf, int N, const std::string& alpha_str,
                    const std::string& method, int n_max, std::size_t budget,
                    const std::string& dump_dist, std::ostream& out) {
    WalkParams params = srw_params(cf.q, cf.r);
    bool drifted = !alpha_str.empty();
    if (drifted) params.alpha = parse_rational(alpha_str);
    if (!params.valid()) throw CLI::ValidationError("--alpha", "alpha must be in (0,1)");

    if (!dump_dist.empty()) {
        // Full N-step distribution as its own table.
        auto dist = walk_distribution(N, params, budget);
        Table dt;
        dt.command = "return-prob-dist";
        dt.columns = {"x1", "x2", "prob", "prob_decimal"};
        std::vector<DLVertex> order;
        order.reserve(dist.entries.size());
        for (const auto& [x, v] : dist.entries) order.push_back(x);
        std::sort(order.begin(), order.end());
        for (const auto& x : order)
            dt.rows.push_back({cell(to_string(x.x1)), cell(to_string(x.x2)),
                               cell(dist.at(x)), cell(to_double(dist.at(x)), cf.precision)});
        std::ofstream file(dump_dist);
        if (!file) throw std::runtime_error("cannot open " + dump_dist);
        if (cf.format == "json") write_json(dt, file);
        else write_csv(dt, file);
    }

    Table t;
    t.command = "return-prob";
    bool want_dp = method == "dp" || method == "all";
    bool want_spectral = method == "spectral" || method == "all";
    bool want_asym = method == "asymptotic" || method == "all";

    t.columns = {"N"};
    std::vector<Cell> row{cell(long(N))};
    Rational dp;
    if (want_dp) {
        dp = exact_return_prob(N, params, budget);
        t.columns.insert(t.columns.end(), {"dp_fraction", "dp_decimal"});
        row.push_back(cell(dp));
        row.push_back(cell(to_double(dp), cf.precision));
    }
    double spectral = 0.0;
    if (want_spectral) {
        auto mu = plancherel_measure(cf.q, cf.r, n_max);
        auto mom = spectral_moment(mu, N, cf.q, cf.r);
        spectral = mom.value;
        if (drifted) {
            // p_alpha^{(N)} = t_alpha^N p^{(N)} for even N; odd N vanish.
            spectral *= (N % 2 == 0) ? std::pow(to_double(t_alpha_sq(params)), N / 2) : 0.0;
        }
        t.columns.insert(t.columns.end(), {"spectral", "spectral_tail"});
        row.push_back(cell(spectral, cf.precision));
        row.push_back(cell(mom.tail_bound, cf.precision));
    }
    if (want_asym) {
        t.columns.push_back("asymptotic");
        if (N % 2 == 1) {
            row.push_back(cell(0.0, cf.precision));
        } else {
            LogValue lv = drifted
                              ? return_asymptotic_drifted(N / 2, cf.q, cf.r, to_double(params.alpha))
                              : return_asymptotic(N / 2, cf.q, cf.r);
            row.push_back(cell_from_log10(lv.log10(), cf.precision));
        }
    }
    if (want_dp && want_spectral) {
        t.columns.push_back("rel_diff_dp_spectral");
        double dpd = to_double(dp);
        double diff = (dpd == 0.0) ? std::abs(spectral) : std::abs(spectral - dpd) / dpd;
        row.push_back(cell(diff, cf.precision));
    }
    t.rows.push_back(std::move(row));
    emit(t, cf, out);
    return 0;
}

void append_clustered_dense(Table& t, const std::vector<double>& spec, const char* tag,
                            int height, int precision) {
    for (std::size_t i = 0; i < spec.size();) {
        std::size_t j = i;
        while (j < spec.size() && spec[j] - spec[i] < 1e-9) ++j;
        t.rows.push_back({cell(spec[i], precision), cell(long(j - i)), cell(std::string(tag)),
                          cell(long(height)), cell(0L)});
        i = j;
    }
}

int run_tetra(const CommonFlags& cf, int height, const std::string& mode_str,
              const std::string& solver, double tol, std::size_t budget, std::ostream& out,
              std::ostream& err) {
    Tetrahedron S = canonical_tetrahedron(height);
    Table t;
    t.command = "tetra";
    t.columns = {"lambda", "multiplicity", "case_tag", "n", "m"};

    TetraMode mode = mode_str == "truncated" ? TetraMode::truncated : TetraMode::renormalized;
    if (mode == TetraMode::truncated && solver != "dense")
        throw CLI::ValidationError("--solver",
                                   "the truncated operator has no closed form; use --solver dense");

    if (solver == "dense") {
        auto spec = dense_spectrum(TetraOperator{S, mode, cf.q, cf.r}, budget);
        append_clustered_dense(t, spec, mode_str.c_str(), height, cf.precision);
        emit(t, cf, out);
        return 0;
    }

    bool oracle = solver == "both";
    auto closed = full_closed_form_spectrum(S, cf.q, cf.r);
    std::sort(closed.begin(), closed.end(), [](const EigenSolution& a, const EigenSolution& b) {
        if (a.lambda != b.lambda) return a.lambda < b.lambda;
        if (a.case_tag != b.case_tag) return int(a.case_tag) < int(b.case_tag);
        if (a.family_height != b.family_height) return a.family_height < b.family_height;
        return a.m < b.m;
    });
    if (oracle) t.columns.push_back("oracle_diff");

    int code = 0;
    std::vector<double> dense;
    long total = 0;
    for (const auto& e : closed) total += e.multiplicity;
    if (oracle) {
        dense = dense_spectrum(TetraOperator{S, TetraMode::renormalized, cf.q, cf.r}, budget);
        if (long(dense.size()) != total) {
            t.note("oracle", cell(std::string("multiplicity mismatch")));
            code = 2;
            dense.clear();
        }
    }

    double max_diff = 0.0;
    std::size_t flat_pos = 0;
    for (const auto& e : closed) {
        std::vector<Cell> row{cell(e.lambda, cf.precision), cell(e.multiplicity),
                              cell(std::string(to_string(e.case_tag))),
                              cell(long(e.family_height)), cell(long(e.m))};
        if (oracle) {
            // Rows are sorted by lambda, so this row occupies the next
            // `multiplicity` slots of the dense spectrum.
            double row_diff = 0.0;
            if (!dense.empty())
                for (long c = 0; c < e.multiplicity; ++c, ++flat_pos)
                    row_diff = std::max(row_diff, std::abs(e.lambda - dense[flat_pos]));
            max_diff = std::max(max_diff, row_diff);
            row.push_back(cell(row_diff, cf.precision));
        }
        t.rows.push_back(std::move(row));
    }
    t.note("total_multiplicity", cell(total));
    if (oracle && !dense.empty()) {
        t.note("max_oracle_diff", cell(max_diff, cf.precision));
        if (max_diff > tol) code = 2;
    }
    if (oracle) {
        if (code == 2) err << "tetra: oracle comparison failed\n";
    }
    emit(t, cf, out);
    return code;
}

int run_folner(const CommonFlags& cf, int n_lo, int n_hi, int moments_up_to, std::ostream& out) {
    Table t;
    t.command = "folner";
    t.columns = {"n",   "boundary_ratio", "N", "moment_truncated", "moment_plancherel",
                 "gap", "envelope"};
    WalkParams srw = srw_params(cf.q, cf.r);
    std::vector<double> plancherel_moments(moments_up_to + 1, 0.0);
    for (int N = 0; N <= moments_up_to; ++N)
        plancherel_moments[N] = (N % 2 == 1) ? 0.0 : to_double(exact_return_prob(N, srw));
    auto report = folner_classify(cf.q, cf.r, n_lo, n_hi);
    for (int n = n_lo; n <= n_hi; ++n) {
        double ratio_n = 0.0;
        for (auto [nn, rr] : report.ratios)
            if (nn == n) ratio_n = rr;
        long size = tetra_size(canonical_tetrahedron(n), cf.q, cf.r);
        for (int N = 0; N <= moments_up_to; ++N) {
            double mt = truncated_moment(cf.q, cf.r, n, N);
            double mp = plancherel_moments[N];
            double envelope = 2.0 * double(boundary_neighborhood_size(cf.q, cf.r, n, N)) / size;
            t.rows.push_back({cell(long(n)), cell(ratio_n, cf.precision), cell(long(N)),
                              cell(mt, cf.precision), cell(mp, cf.precision),
                              cell(std::abs(mp - mt), cf.precision),
                              cell(envelope, cf.precision)});
        }
    }
    t.note("classification",
           cell(std::string(report.cls == FolnerClass::folner ? "folner" : "expanding")));
    emit(t, cf, out);
    return 0;
}

int run_asymptotics(const CommonFlags& cf, std::vector<long> Ns, const std::string& kind, int k,
                    double gamma, int n_max, std::ostream& out) {
    Table t;
    t.command = "asymptotics";
    t.columns = {"N", "direct", "asymptotic", "ratio"};
    if (Ns.empty()) Ns = {1000, 10000, 100000};
    for (long N : Ns) {
        LogValue direct, asym;
        if (kind == "sigma") {
            auto c = asymptotic_constants(k, double(std::min(cf.q, cf.r)));
            long cap = std::max<long>(600, long(4.0 * c.xi * std::cbrt(double(N))) + 2 * k + 8);
            direct = sigma_direct(N, k, gamma, double(std::min(cf.q, cf.r)), cap);
            asym = sigma_asymptotic(N, k, gamma, double(std::min(cf.q, cf.r)));
        } else {
            direct = spectral_return_logsum(cf.q, cf.r, N, n_max);
            asym = return_asymptotic(N, cf.q, cf.r);
        }
        t.rows.push_back({cell(N), cell_from_log10(direct.log10(), cf.precision),
                          cell_from_log10(asym.log10(), cf.precision),
                          cell(log_ratio(direct, asym), cf.precision)});
    }
    t.note("kind", cell(kind));
    emit(t, cf, out);
    return 0;
}

int run_simulate(const CommonFlags& cf, const std::string& alpha_str, int steps, int trials,
                 std::uint64_t seed, int bfs_cap, std::ostream& out) {
    WalkParams params = srw_params(cf.q, cf.r);
    if (!alpha_str.empty()) params.alpha = parse_rational(alpha_str);
    if (!params.valid()) throw CLI::ValidationError("--alpha", "alpha must be in (0,1)");
    auto stats = simulate_escape(params, steps, trials, seed, bfs_cap);
    double alpha = to_double(params.alpha);
    Table t;
    t.command = "simulate";
    t.columns = {"trials", "steps",     "metric",          "mean_rate",
                 "target", "rate_gap",  "mean_normalized", "seed"};
    double target = std::abs(2.0 * alpha - 1.0);
    t.rows.push_back({cell(long(stats.trials)), cell(long(stats.steps)), cell(stats.metric),
                      cell(stats.mean_rate, cf.precision), cell(target, cf.precision),
                      cell(std::abs(stats.mean_rate - target), cf.precision),
                      cell(stats.mean_normalized, cf.precision), cell(long(seed))});
    t.note("metric_note",
           cell(std::string(stats.metric == "bfs"
                                ? "exact breadth-first distances"
                                : "horocycle displacement |hor(x1)|, a lower bound on distance")));
    emit(t, cf, out);
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"spectral computations for random walks on Diestel-Leader graphs", "dlspectra"};
    app.require_subcommand(1);

    CommonFlags cf;
    int n_max = 30, N = 2, height = 3, ell_max = 12;
    int n_lo = 2, n_hi = 8, moments_up_to = 4;
    int k = 1;
    double gamma = 0.0, tol = 1e-9;
    bool oracle = false;
    std::string alpha_str, method = "all", mode_str = "renormalized", x_path, kind = "return";
    std::string solver = "closed";
    std::string dump_dist;
    std::size_t budget = 4'000'000;
    std::uint64_t seed = 1;
    int steps = 1000, trials = 100, bfs_cap = 12;
    std::vector<long> Ns;

    auto* c_spectrum = app.add_subcommand("spectrum", "eigenvalues lambda_{m,n} up to n-max");
    add_common(c_spectrum, cf);
    c_spectrum->add_option("--n-max", n_max)->check(CLI::Range(2, 10000));

    auto* c_plancherel = app.add_subcommand("plancherel", "Plancherel measure atoms");
    add_common(c_plancherel, cf);
    c_plancherel->add_option("--n-max", n_max)->check(CLI::Range(2, 900));

    auto* c_muox = app.add_subcommand("mu-ox", "off-diagonal spectral measure");
    add_common(c_muox, cf);
    c_muox->add_option("--n-max", n_max)->check(CLI::Range(2, 200));
    c_muox->add_option("--ell-max", ell_max)->check(CLI::Range(1, 64));
    c_muox->add_option("--x-path", x_path, "comma list of moves d<label>/u<label> from o");

    auto* c_return = app.add_subcommand("return-prob", "N-step return probability");
    add_common(c_return, cf);
    c_return->add_option("--N", N)->check(CLI::Range(0, 1 << 20));
    c_return->add_option("--alpha", alpha_str, "drift parameter, e.g. 1/3 or 0.25");
    c_return->add_option("--method", method)->check(CLI::IsMember({"dp", "spectral", "asymptotic", "all"}));
    c_return->add_option("--n-max", n_max)->check(CLI::Range(2, 900));
    c_return->add_option("--budget", budget, "state budget for the exact DP");
    c_return->add_option("--dump-dist", dump_dist,
                         "also write the exact N-step distribution to this file");

    auto* c_tetra = app.add_subcommand("tetra", "finite tetrahedron spectrum");
    add_common(c_tetra, cf);
    c_tetra->add_option("--height", height)->check(CLI::Range(1, 16));
    c_tetra->add_option("--mode", mode_str)->check(CLI::IsMember({"renormalized", "truncated"}));
    c_tetra->add_option("--solver", solver, "closed form, dense eigensolver, or both with diffs")
        ->check(CLI::IsMember({"closed", "dense", "both"}));
    c_tetra->add_flag("--oracle", oracle, "shorthand for --solver both");
    c_tetra->add_option("--tol", tol);
    c_tetra->add_option("--budget", budget, "dense matrix dimension budget");

    auto* c_folner = app.add_subcommand("folner", "cumulative-measure convergence report");
    add_common(c_folner, cf);
    c_folner->add_option("--n-lo", n_lo)->check(CLI::Range(1, 14));
    c_folner->add_option("--n-hi", n_hi)->check(CLI::Range(1, 14));
    c_folner->add_option("--moments-up-to", moments_up_to)->check(CLI::Range(0, 12));

    auto* c_asym = app.add_subcommand("asymptotics", "return-probability asymptotics");
    add_common(c_asym, cf);
    c_asym->add_option("--N", Ns, "step-pair counts (repeatable)");
    c_asym->add_option("--kind", kind)->check(CLI::IsMember({"return", "sigma"}));
    c_asym->add_option("--k", k)->check(CLI::Range(1, 8));
    c_asym->add_option("--gamma", gamma);
    c_asym->add_option("--n-max", n_max)->check(CLI::Range(2, 900));

    auto* c_sim = app.add_subcommand("simulate", "escape-rate simulation");
    add_common(c_sim, cf);
    c_sim->add_option("--alpha", alpha_str);
    c_sim->add_option("--steps", steps)->check(CLI::Range(1, 1 << 22));
    c_sim->add_option("--trials", trials)->check(CLI::Range(1, 1 << 20));
    c_sim->add_option("--seed", seed);
    c_sim->add_option("--bfs-cap", bfs_cap,
                      "use exact breadth-first distances up to this many steps");

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << e.what() << "\n";
        return 1;
    }

    try {
        if (c_spectrum->parsed()) return run_spectrum(cf, n_max, out);
        if (c_plancherel->parsed()) return run_plancherel(cf, n_max, out);
        if (c_muox->parsed()) return run_mu_ox(cf, n_max, ell_max, x_path, out);
        if (c_return->parsed())
            return run_return_prob(cf, N, alpha_str, method, std::max(n_max, 40), budget,
                                   dump_dist, out);
        if (c_tetra->parsed()) {
            if (oracle) solver = "both";
            if (mode_str == "truncated" && solver == "closed" && !oracle) solver = "dense";
            return run_tetra(cf, height, mode_str, solver, tol, budget, out, err);
        }
        if (c_folner->parsed()) return run_folner(cf, n_lo, n_hi, moments_up_to, out);
        if (c_asym->parsed()) return run_asymptotics(cf, Ns, kind, k, gamma, n_max, out);
        if (c_sim->parsed())
            return run_simulate(cf, alpha_str, steps, trials, seed, bfs_cap, out);
    } catch (const CLI::ValidationError& e) {
        err << e.what() << "\n";
        return 1;
    } catch (const BudgetError& e) {
        err << e.what() << "\n";
        return 3;
    } catch (const ConsistencyError& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const ToleranceError& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return 1;
    }
    return 1;
}

}  // namespace dl::cli
