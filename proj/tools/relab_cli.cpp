#include <cmath>
#include <cstdio>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cli_io.hpp"
#include "relab/relab.h"

using namespace relab_cli;

namespace {

constexpr double kLn2 = 0.69314718055994530942;

struct Global {
    std::uint64_t seed = 0;
    std::string format = "json";
    std::string base = "nats";
    bool base_given = false;
};

struct SampleHandle {
    relab_sample* p = nullptr;
    ~SampleHandle() { relab_sample_free(p); }
};

struct DendrogramHandle {
    relab_dendrogram* p = nullptr;
    ~DendrogramHandle() { relab_dendrogram_free(p); }
};

Format format_of(const Global& g) { return g.format == "tsv" ? Format::tsv : Format::json; }

relab_base base_of(const Global& g) {
    if (g.base == "bits") return RELAB_BITS;
    if (g.base == "baseN") return RELAB_BASE_N;
    return RELAB_NATS;
}

// Divisor converting nats to the requested base; N is the sample size that
// defines base-N units, or 0 where no sample size exists.
double divisor(const Global& g, double N) {
    if (g.base == "bits") return kLn2;
    if (g.base == "baseN") {
        if (!(N > 1.0)) throw CliError(2, "--base baseN needs a sample size above 1 for this command");
        return std::log(N);
    }
    return 1.0;
}

void load_sample(const std::vector<std::string>& labels, SampleHandle& h) {
    std::vector<const char*> ptrs;
    ptrs.reserve(labels.size());
    for (const auto& s : labels) ptrs.push_back(s.c_str());
    check(relab_sample_create(ptrs.data(), ptrs.size(), &h.p), "reading labels");
}

// ---- analyze / count --------------------------------------------------------

struct AnalyzeArgs {
    std::string path;
    bool min_mass = false;
};

void run_analyze(const Global& g, const AnalyzeArgs& a) {
    const std::string content = read_file(a.path);
    SampleHandle s;
    load_sample(parse_labels(content), s);
    relab_entropy_summary e{};
    check(relab_sample_summary(s.p, base_of(g), &e), "entropy summary");
    Report r("analyze", g.seed, g.base, digest_of(content));
    r.scalar("N", e.N);
    r.scalar("M", e.M);
    r.scalar("resolution", e.resolution);
    r.scalar("relevance", e.relevance);
    r.scalar("noise", e.noise);

    relab_exponent_fit f{};
    const relab_status fs = relab_sample_fit_exponent(s.p, a.min_mass ? 1 : 0, &f);
    if (fs == RELAB_OK) {
        r.scalar("mu_hat", f.mu);
        r.scalar("intercept", f.intercept);
        r.scalar("stderr_mu", f.stderr_mu);
        r.scalar("fit_points", static_cast<std::int64_t>(f.points_used));
    } else if (fs == RELAB_E_DEGENERATE) {
        r.scalar("mu_hat", nullptr);
        r.scalar("fit_error", std::string(relab_last_error()));
    } else {
        check(fs, "exponent fit");
    }
    if (fs == RELAB_OK) {
        relab_zipf_gap z{};
        check(relab_sample_zipf_gap(s.p, a.min_mass ? 1 : 0, &z), "zipf gap");
        const double d = divisor(g, static_cast<double>(e.N));
        r.scalar("mu_deviation", z.mu_deviation);
        r.scalar("frontier_relevance", z.frontier_relevance / d);
        r.scalar("frontier_deficit", z.frontier_deficit / d);
    }

    std::size_t n = 0;
    relab_sample_degeneracy(s.p, nullptr, nullptr, 0, &n);
    std::vector<std::int64_t> k(n), m(n);
    check(relab_sample_degeneracy(s.p, k.data(), m.data(), n, &n), "degeneracy");
    auto& t = r.table("degeneracy", {"k", "m_k"});
    for (std::size_t i = 0; i < n; ++i) t.rows.push_back({k[i], m[i]});
    r.write(std::cout, format_of(g));
}

void run_count(const Global& g, const std::string& path) {
    const std::string content = read_file(path);
    SampleHandle s;
    load_sample(parse_labels(content), s);
    relab_entropy_summary e{};
    check(relab_sample_summary(s.p, RELAB_NATS, &e), "entropy summary");
    relab_log_counts c{};
    check(relab_sample_log_counts(s.p, &c), "log counts");
    const double d = g.base == "bits" ? kLn2 : 1.0;
    if (g.base == "baseN") throw CliError(2, "count reports log-multiplicities; use nats or bits");
    Report r("count", g.seed, g.base, digest_of(content));
    r.scalar("N", e.N);
    r.scalar("M", e.M);
    r.scalar("log_Ws", c.log_Ws / d);
    r.scalar("log_Wk", c.log_Wk / d);
    r.scalar("log_Ws_given_k", c.log_Ws_given_k / d);
    r.scalar("log_Wm", c.log_Wm / d);
    r.write(std::cout, format_of(g));
}

// ---- partitions -------------------------------------------------------------

struct PartitionStream {
    std::ostream* os;
    Format format;
    double div;
    bool first = true;
};

void partition_row(void* ctx, const relab_partition_point* p) {
    auto* st = static_cast<PartitionStream*>(ctx);
    std::string profile;
    for (std::size_t i = 0; i < p->size; ++i) {
        if (i) profile += ',';
        profile += std::to_string(p->parts[i]) + "x" + std::to_string(p->mult[i]);
    }
    const std::string res = format_number(round12(p->resolution / st->div));
    const std::string rel = format_number(round12(p->relevance / st->div));
    const std::string lw = format_number(round12(p->log_Wm));
    if (st->format == Format::tsv) {
        *st->os << res << '\t' << rel << '\t' << lw << '\t' << profile << '\n';
    } else {
        *st->os << (st->first ? "\n      " : ",\n      ") << '[' << res << ", " << rel << ", " << lw << ", \""
                << profile << "\"]";
    }
    st->first = false;
}

void run_partitions(const Global& g, std::int64_t N, std::int64_t n_max) {
    const double div = divisor(g, static_cast<double>(N));
    const std::string digest = hex64(digest_of(""));
    PartitionStream st{&std::cout, format_of(g), div};
    const char* cols = "resolution\trelevance\tlog_Wm\tprofile";
    if (st.format == Format::tsv) {
        std::cout << "#tool\trelab\n#version\t" << relab_version() << "\n#command\tpartitions\n#seed\t" << g.seed
                  << "\n#base\t" << g.base << "\n#input_digest\t" << digest << "\n\n#table\tpartitions\n"
                  << cols << '\n';
    } else {
        std::cout << "{\n  \"tool\": \"relab\",\n  \"version\": \"" << relab_version()
                  << "\",\n  \"command\": \"partitions\",\n  \"seed\": " << g.seed << ",\n  \"base\": \"" << g.base
                  << "\",\n  \"input_digest\": \"" << digest << "\",\n  \"N\": " << N
                  << ",\n  \"partitions\": {\n    \"columns\": [\"resolution\", \"relevance\", \"log_Wm\", "
                     "\"profile\"],\n    \"rows\": [";
    }
    std::uint64_t count = 0;
    check(relab_partitions(N, n_max, partition_row, &st, &count), "partitions");
    if (st.format == Format::tsv) {
        std::cout << "\n#table\tresults\nkey\tvalue\nN\t" << N << "\ncount\t" << count << '\n';
    } else {
        std::cout << "\n    ]\n  },\n  \"count\": " << count << "\n}\n";
    }
}

// ---- frontier ---------------------------------------------------------------

struct FrontierArgs {
    std::int64_t N = 0;
    std::vector<double> mu;
    std::vector<std::int64_t> baseline;
    int replicas = 100;
};

void run_frontier(const Global& g, FrontierArgs a) {
    if (a.mu.empty()) {
        std::size_t n = 0;
        relab_default_mu_grid(nullptr, 0, &n);
        a.mu.resize(n);
        check(relab_default_mu_grid(a.mu.data(), n, &n), "mu grid");
    }
    const double d = divisor(g, static_cast<double>(a.N));
    std::vector<relab_frontier_point> pts(a.mu.size());
    check(relab_frontier(a.N, a.mu.data(), a.mu.size(), pts.data()), "frontier");
    Report r("frontier", g.seed, g.base, digest_of(""));
    r.scalar("N", a.N);
    std::size_t best = 0;
    for (std::size_t i = 1; i < pts.size(); ++i)
        if (pts[i].resolution + pts[i].relevance > pts[best].resolution + pts[best].relevance) best = i;
    r.scalar("mu_at_max_total", pts[best].mu);
    r.scalar("max_total", (pts[best].resolution + pts[best].relevance) / d);
    auto& t = r.table("frontier", {"mu", "resolution", "relevance", "amplitude"});
    for (const auto& p : pts) {
        t.rows.push_back({p.mu, p.resolution / d, p.relevance / d, p.amplitude});
        r.curve_point("frontier", p.resolution / d, p.relevance / d);
    }
    if (!a.baseline.empty()) {
        std::vector<relab_baseline_point> b(a.baseline.size());
        check(relab_random_baseline(a.N, a.baseline.data(), a.baseline.size(), a.replicas, g.seed, b.data()),
              "baseline");
        auto& bt = r.table("baseline", {"alphabet", "resolution", "relevance", "resolution_se", "relevance_se"});
        for (const auto& p : b) {
            bt.rows.push_back({p.alphabet, p.resolution / d, p.relevance / d, p.resolution_se / d, p.relevance_se / d});
            r.curve_point("baseline", p.resolution / d, p.relevance / d);
        }
    }
    r.write(std::cout, format_of(g));
}

// ---- msr --------------------------------------------------------------------

struct MsrArgs {
    std::string path;
    double t_max = 0.0;
    std::vector<double> grid;
    int phases = 1;
};

void run_msr(const Global& g, const MsrArgs& a) {
    if (g.base_given && g.base != "baseN") throw CliError(2, "msr curves are defined in base-N units");
    const std::string content = read_file(a.path);
    Spikes s = parse_spikes(content);
    if (a.t_max > 0.0) s.T = a.t_max;
    std::size_t n = 0;
    relab_msr_summary sum{};
    relab_status st = relab_msr(s.times.data(), s.times.size(), s.T, a.grid.data(), a.grid.size(), a.phases, nullptr,
                                0, &n, &sum);
    if (st != RELAB_E_BUFFER) check(st, "msr");
    std::vector<relab_msr_point> curve(n);
    check(relab_msr(s.times.data(), s.times.size(), s.T, a.grid.data(), a.grid.size(), a.phases, curve.data(), n, &n,
                    &sum),
          "msr");
    Report r("msr", g.seed, "baseN", digest_of(content));
    r.scalar("spikes", static_cast<std::int64_t>(s.times.size()));
    r.scalar("T", s.T);
    r.scalar("msr", sum.msr);
    r.scalar("optimal_dt", sum.optimal_dt);
    r.scalar("max_total", sum.max_total);
    auto& t = r.table("msr_curve", {"dt", "resolution", "relevance"});
    for (const auto& p : curve) {
        t.rows.push_back({p.dt, p.resolution, p.relevance});
        r.curve_point("msr", p.resolution, p.relevance);
    }
    r.write(std::cout, format_of(g));
}

// ---- cluster ----------------------------------------------------------------

struct ClusterArgs {
    std::string path;
    std::vector<std::string> algos{"s", "c", "a"};
    std::string metric = "l2";
    std::string truth;
    std::vector<std::string> labels;
    std::string criterion = "relemax";
    std::int64_t K = 0;
};

struct AlgoRun {
    std::string name;
    std::vector<relab_trajectory_point> traj;
    std::vector<std::string> labels_at_kstar;
    std::int64_t k_star = 0;
};

std::vector<std::string> as_strings(const std::vector<std::int64_t>& v) {
    std::vector<std::string> out;
    out.reserve(v.size());
    for (auto x : v) out.push_back(std::to_string(x));
    return out;
}

std::vector<const char*> c_strs(const std::vector<std::string>& v) {
    std::vector<const char*> out;
    for (const auto& s : v) out.push_back(s.c_str());
    return out;
}

void run_cluster(const Global& g, const ClusterArgs& a) {
    std::string all = read_file(a.path);
    std::uint64_t digest = digest_of(all);
    const Csv csv = parse_csv(all);
    if (csv.cells.empty()) throw CliError(2, "csv has no data rows");
    const std::size_t width = csv.cells.front().size();
    for (const auto& row : csv.cells)
        if (row.size() != width) throw CliError(2, "csv rows have differing field counts");
    if (!csv.header.empty() && csv.header.size() != width) throw CliError(2, "csv header width differs from rows");

    long truth_col = -1;
    if (!a.truth.empty()) {
        for (std::size_t j = 0; j < csv.header.size(); ++j)
            if (csv.header[j] == a.truth) truth_col = static_cast<long>(j);
        if (truth_col < 0) {
            char* end = nullptr;
            const long v = std::strtol(a.truth.c_str(), &end, 10);
            if (*end != '\0' || v < 0 || static_cast<std::size_t>(v) >= width)
                throw CliError(2, "unknown truth column '" + a.truth + "'");
            truth_col = v;
        }
    }
    const std::size_t rows = csv.cells.size();
    const std::size_t cols = width - (truth_col >= 0 ? 1 : 0);
    if (cols == 0) throw CliError(2, "csv has no feature columns");
    std::vector<double> data;
    std::vector<std::string> truth;
    data.reserve(rows * cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < width; ++j) {
            const std::string& f = csv.cells[i][j];
            if (static_cast<long>(j) == truth_col) {
                truth.push_back(f);
                continue;
            }
            char* end = nullptr;
            const double v = std::strtod(f.c_str(), &end);
            if (f.empty() || *end != '\0')
                throw CliError(2, "non-numeric feature at row " + std::to_string(i + 1) + ": '" + f + "'");
            data.push_back(v);
        }
    }

    relab_metric metric;
    if (a.metric == "l1") metric = RELAB_L1;
    else if (a.metric == "l2") metric = RELAB_L2;
    else throw CliError(2, "--metric must be l1 or l2");
    const std::string msuffix = a.metric == "l1" ? "-L1" : "-L2";
    const double d = divisor(g, static_cast<double>(rows));

    std::vector<AlgoRun> runs;
    std::set<std::string> seen;
    for (const auto& algo : a.algos) {
        if (!seen.insert(algo).second) continue;
        relab_linkage l;
        std::string name;
        if (algo == "s") l = RELAB_SINGLE, name = "single";
        else if (algo == "c") l = RELAB_COMPLETE, name = "complete";
        else if (algo == "a") l = RELAB_AVERAGE, name = "average";
        else throw CliError(2, "--algo takes s, c or a");
        DendrogramHandle dh;
        check(relab_agglomerate(data.data(), rows, cols, l, metric, &dh.p), "clustering");
        AlgoRun run;
        run.name = name + msuffix;
        std::size_t n = 0;
        relab_dendrogram_trajectory(dh.p, nullptr, 0, &n);
        run.traj.resize(n);
        check(relab_dendrogram_trajectory(dh.p, run.traj.data(), n, &n), "trajectory");
        check(relab_k_star(run.traj.data(), n, &run.k_star), "K*");
        std::vector<std::int64_t> lab(rows);
        check(relab_dendrogram_cut(dh.p, run.k_star, lab.data(), rows), "cut");
        run.labels_at_kstar = as_strings(lab);
        runs.push_back(std::move(run));
    }
    for (const auto& path : a.labels) {
        const std::string content = read_file(path);
        digest = relab_fnv1a64(content.data(), content.size(), digest);
        auto lab = parse_labels(content);
        if (lab.size() != rows) throw CliError(2, path + ": expected " + std::to_string(rows) + " labels");
        SampleHandle s;
        load_sample(lab, s);
        relab_entropy_summary e{};
        check(relab_sample_summary(s.p, RELAB_NATS, &e), "labels summary");
        AlgoRun run;
        run.name = path;
        run.traj.push_back({e.M, e.resolution, e.relevance});
        run.k_star = e.M;
        run.labels_at_kstar = std::move(lab);
        runs.push_back(std::move(run));
    }

    Report r("cluster", g.seed, g.base, digest);
    r.scalar("N", static_cast<std::int64_t>(rows));
    r.scalar("features", static_cast<std::int64_t>(cols));
    auto& tt = r.table("trajectories", {"series", "K", "resolution", "relevance"});
    for (const auto& run : runs) {
        for (const auto& p : run.traj) {
            tt.rows.push_back({run.name, p.K, p.resolution / d, p.relevance / d});
            r.curve_point(run.name, p.resolution / d, p.relevance / d);
        }
    }

    std::vector<relab_trajectory> ts;
    for (const auto& run : runs) ts.push_back({run.name.c_str(), run.traj.data(), run.traj.size()});
    relab_criterion crit;
    if (a.criterion == "infomax") crit = RELAB_INFOMAX;
    else if (a.criterion == "relemax") crit = RELAB_RELEMAX;
    else throw CliError(2, "--criterion must be infomax or relemax");
    std::vector<relab_ranking_entry> rank(ts.size());
    check(relab_rank_algorithms(ts.data(), ts.size(), crit, a.K, rank.data()), "ranking");
    r.scalar("criterion", a.criterion);
    auto& rt = r.table("ranking", {"rank", "series", "K", "K_star", "value"});
    for (std::size_t i = 0; i < rank.size(); ++i)
        rt.rows.push_back({static_cast<std::int64_t>(i + 1), runs[rank[i].index].name, rank[i].K, rank[i].K_star,
                           rank[i].value / d});

    if (!truth.empty()) {
        auto& mt = r.table("truth_metrics", {"series", "K", "mutual_information", "nmi", "ari", "purity"});
        const auto tc = c_strs(truth);
        for (const auto& run : runs) {
            const auto lc = c_strs(run.labels_at_kstar);
            relab_truth_metrics m{};
            check(relab_truth_metrics_of(lc.data(), tc.data(), rows, &m), "truth metrics");
            mt.rows.push_back({run.name, run.k_star, m.mutual_information / d, m.nmi, m.ari, m.purity});
        }
    }
    r.write(std::cout, format_of(g));
}

// ---- ldt --------------------------------------------------------------------

struct LdtArgs {
    std::string path;
    std::vector<double> betas;
    double a = 0.0;
    std::int64_t M = 0;
    std::int64_t N_prime = 0;
    std::int64_t sweeps = 0;
    std::int64_t burnin = -1;
    std::int64_t thin = 0;
};

void run_ldt(const Global& g, const LdtArgs& a) {
    const std::string content = read_file(a.path);
    SampleHandle s;
    load_sample(parse_labels(content), s);
    relab_ldt_config c;
    relab_ldt_config_default(&c);
    c.a = a.a;
    c.M = a.M;
    c.N_prime = a.N_prime;
    if (a.sweeps > 0) c.sweeps = a.sweeps;
    if (a.burnin >= 0) c.burnin = a.burnin;
    if (a.thin > 0) c.thin = a.thin;
    c.seed = g.seed;
    std::vector<relab_sweep_record> rec(a.betas.size());
    relab_ldt_config res{};
    check(relab_ldt_sweep(s.p, &c, a.betas.data(), a.betas.size(), rec.data(), &res), "ldt sweep");
    const double d = divisor(g, static_cast<double>(res.N_prime));
    Report r("ldt", g.seed, g.base, digest_of(content));
    r.scalar("a", res.a);
    r.scalar("M", res.M);
    r.scalar("N_prime", res.N_prime);
    r.scalar("sweeps", res.sweeps);
    r.scalar("burnin", res.burnin);
    r.scalar("thin", res.thin);
    if (rec.size() >= 5) {
        relab_transition t{};
        check(relab_ldt_detect(rec.data(), rec.size(), res.N_prime, &t), "transition detection");
        static const char* kinds[] = {"none", "continuous", "discontinuous"};
        r.scalar("transition", std::string(kinds[t.kind]));
        if (t.kind == RELAB_TRANSITION_NONE) r.scalar("beta_c", nullptr);
        else r.scalar("beta_c", t.beta_c);
    } else {
        r.scalar("transition", nullptr);
    }
    auto& t = r.table("sweep", {"beta", "Hq_s", "Hq_k", "Hq_s_se", "Hq_k_se", "acceptance", "emitted"});
    for (const auto& x : rec) {
        t.rows.push_back({x.beta, x.Hq_s / d, x.Hq_k / d, x.Hq_s_se / d, x.Hq_k_se / d, x.acceptance, x.emitted});
        r.curve_point("Hq_s", x.beta, x.Hq_s / d);
        r.curve_point("Hq_k", x.beta, x.Hq_k / d);
    }
    r.write(std::cout, format_of(g));
}

// ---- olm --------------------------------------------------------------------

struct OlmArgs {
    std::vector<double> classes;
    int pow2 = 0;
    std::vector<double> mu;
    std::vector<double> curve_mu;
    std::vector<double> beta_ratios;
};

std::vector<double> grid_or_default(const std::vector<double>& given, double lo, double hi, int per_decade) {
    if (!given.empty()) return given;
    std::size_t n = 0;
    relab_log_grid(lo, hi, per_decade, nullptr, 0, &n);
    std::vector<double> out(n);
    check(relab_log_grid(lo, hi, per_decade, out.data(), n, &n), "grid");
    return out;
}

void run_olm(const Global& g, const OlmArgs& a) {
    if (g.base == "baseN") throw CliError(2, "olm has no sample size; use nats or bits");
    const double d = divisor(g, 0.0);
    std::vector<double> W = a.classes;
    if (a.pow2 > 0) {
        if (!W.empty()) throw CliError(2, "give either --classes or --pow2");
        for (int c = 0; c < a.pow2; ++c) W.push_back(std::ldexp(1.0, c));
    }
    if (W.empty()) throw CliError(2, "olm needs --classes or --pow2");
    if (a.mu.empty()) throw CliError(2, "olm needs --mu");
    Report r("olm", g.seed, g.base, digest_of(""));
    auto& st = r.table("solutions", {"mu", "E0", "resolution", "noise", "relevance"});
    auto& et = r.table("class_energies", {"mu", "class", "W", "E"});
    for (double mu : a.mu) {
        relab_olm_solution s{};
        std::vector<double> E(W.size());
        check(relab_olm_solve(W.data(), W.size(), mu, &s, E.data()), "olm");
        st.rows.push_back({s.mu, s.E0, s.resolution / d, s.noise / d, s.relevance / d});
        for (std::size_t c = 0; c < W.size(); ++c) et.rows.push_back({mu, static_cast<std::int64_t>(c), W[c], E[c]});
    }
    if (a.mu.size() == 1) {
        relab_olm_solution s{};
        check(relab_olm_solve(W.data(), W.size(), a.mu[0], &s, nullptr), "olm");
        r.scalar("mu", s.mu);
        r.scalar("E0", s.E0);
        r.scalar("resolution", s.resolution / d);
        r.scalar("noise", s.noise / d);
        r.scalar("relevance", s.relevance / d);
    }

    const auto cmu = grid_or_default(a.curve_mu, 0.1, 10.0, 25);
    std::vector<relab_entropy_energy_point> ee(cmu.size());
    check(relab_olm_entropy_energy(W.data(), W.size(), cmu.data(), cmu.size(), ee.data()), "entropy-energy");
    auto& eet = r.table("entropy_energy", {"mu", "resolution", "noise"});
    for (const auto& p : ee) {
        eet.rows.push_back({p.mu, p.resolution / d, p.noise / d});
        r.curve_point("entropy_energy", p.resolution / d, p.noise / d);
    }

    const auto br = grid_or_default(a.beta_ratios, 0.1, 10.0, 25);
    auto& ht = r.table("specific_heat", {"mu", "beta_ratio", "C"});
    for (double mu : a.mu) {
        std::vector<relab_heat_point> h(br.size());
        check(relab_olm_specific_heat(W.data(), W.size(), mu, br.data(), br.size(), h.data()), "specific heat");
        char series[64];
        std::snprintf(series, sizeof series, "C_mu=%s", format_number(mu).c_str());
        for (const auto& p : h) {
            ht.rows.push_back({mu, p.beta_ratio, p.C});
            r.curve_point(series, p.beta_ratio, p.C);
        }
    }
    r.write(std::cout, format_of(g));
}

// ---- rem --------------------------------------------------------------------

struct RemArgs {
    relab_rem_config c{};
    std::string mode = "evt";
    bool emit_q = false;
    bool phase = false;
    double gamma = 2.0;
    std::vector<double> ratios;
    std::vector<double> nus;
};

void run_rem(const Global& g, RemArgs a) {
    if (a.mode == "evt") a.c.mode = RELAB_REM_EVT;
    else if (a.mode == "empirical") a.c.mode = RELAB_REM_EMPIRICAL;
    else throw CliError(2, "--mode must be evt or empirical");
    a.c.seed = g.seed;
    // base-N here means logarithms base 2^n_s, the number of states.
    const double d = g.base == "baseN" ? a.c.n_s * kLn2 : divisor(g, 0.0);
    Report r("rem", g.seed, g.base, digest_of(""));
    r.scalar("n_s", static_cast<std::int64_t>(a.c.n_s));
    r.scalar("mode", a.mode);
    if (a.phase) {
        if (a.ratios.empty() || a.nus.empty()) throw CliError(2, "phase diagram needs --ratios and --nus");
        std::vector<double> H(a.ratios.size() * a.nus.size()), se(H.size()), ns(a.ratios.size());
        check(relab_rem_phase_diagram(a.gamma, a.ratios.data(), a.ratios.size(), a.nus.data(), a.nus.size(), &a.c,
                                      H.data(), se.data(), ns.data()),
              "phase diagram");
        r.scalar("gamma", a.gamma);
        auto& t = r.table("phase_diagram", {"ratio", "nu", "nu_star", "H_normalized", "H_normalized_se"});
        for (std::size_t i = 0; i < a.ratios.size(); ++i)
            for (std::size_t j = 0; j < a.nus.size(); ++j) {
                const std::size_t k = i * a.nus.size() + j;
                t.rows.push_back({a.ratios[i], a.nus[j], ns[i], H[k], se[k]});
                r.curve_point("ratio=" + format_number(a.ratios[i]), a.nus[j], H[k]);
            }
        r.write(std::cout, format_of(g));
        return;
    }
    relab_rem_result res{};
    std::size_t n = 0;
    std::vector<double> q;
    if (a.emit_q) {
        const relab_status st = relab_rem_simulate(&a.c, &res, nullptr, 0, &n);
        if (st != RELAB_E_BUFFER) check(st, "rem");
        q.resize(n);
        check(relab_rem_simulate(&a.c, &res, q.data(), n, &n), "rem");
    } else {
        check(relab_rem_simulate(&a.c, &res, nullptr, 0, nullptr), "rem");
    }
    r.scalar("n_t", a.c.n_t);
    r.scalar("beta", res.beta);
    r.scalar("beta_effective", res.beta_effective);
    r.scalar("H_s_star", res.H_s_star / d);
    r.scalar("H_s_star_se", res.H_s_star_se / d);
    r.scalar("H_u", res.H_u / d);
    r.scalar("normalized", res.normalized);
    r.scalar("ties", res.ties);
    r.scalar("enumerated", static_cast<std::int64_t>(res.enumerated));
    if (a.emit_q) {
        auto& t = r.table("q_hat", {"state", "q"});
        for (std::size_t i = 0; i < q.size(); ++i) t.rows.push_back({static_cast<std::int64_t>(i), q[i]});
    }
    r.write(std::cout, format_of(g));
}

// ---- bound / evidence -------------------------------------------------------

void run_bound(const Global& g, std::int64_t N, double hk) {
    relab_bound b{};
    check(relab_param_bound(N, hk, &b), "bound");
    Report r("bound", g.seed, g.base, digest_of(""));
    r.scalar("N", N);
    r.scalar("relevance_nats", hk);
    r.scalar("raw", b.raw);
    r.scalar("r_max", b.r_max);
    r.scalar("note", std::string("approximate upper bound"));
    r.write(std::cout, format_of(g));
}

void run_evidence(const Global& g, const relab_posterior_summary& s) {
    if (g.base == "baseN") throw CliError(2, "evidence has no base-N form; use nats or bits");
    const double d = divisor(g, 0.0);
    relab_evidence e{};
    check(relab_log_evidence(&s, &e), "evidence");
    Report r("evidence", g.seed, g.base, digest_of(""));
    r.scalar("kl", e.kl / d);
    r.scalar("log_evidence_bms", e.bms / d);
    r.scalar("log_evidence_laplace", e.laplace / d);
    r.write(std::cout, format_of(g));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"relab: relevance and resolution analysis of samples"};
    app.require_subcommand(1);
    app.fallthrough();
    Global g;
    app.add_option("--seed", g.seed, "master seed");
    app.add_option("--format", g.format, "json or tsv")->check(CLI::IsMember({"json", "tsv"}));
    auto* base_opt =
        app.add_option("--base", g.base, "nats, bits or baseN")->check(CLI::IsMember({"nats", "bits", "baseN"}));
    app.set_version_flag("--version", std::string(relab_version()));

    AnalyzeArgs an;
    auto* analyze = app.add_subcommand("analyze", "entropy summary, exponent fit and Zipf gap");
    analyze->add_option("labels", an.path)->required();
    analyze->add_flag("--min-mass", an.min_mass, "drop classes with k*m_k < 2 from the fit");

    std::string count_path;
    auto* count = app.add_subcommand("count", "log multiplicities W_s, W_k, W_s|k, W_m");
    count->add_option("labels", count_path)->required();

    std::int64_t pn = 0, pmax = 120;
    auto* parts = app.add_subcommand("partitions", "stream every partition of N with its resolution and relevance");
    parts->add_option("--n", pn)->required();
    parts->add_option("--n-max", pmax, "enumeration limit");

    FrontierArgs fa;
    auto* frontier = app.add_subcommand("frontier", "maximum-relevance frontier and random baseline");
    frontier->add_option("--n", fa.N)->required();
    frontier->add_option("--mu-grid", fa.mu)->delimiter(',');
    frontier->add_option("--baseline", fa.baseline, "alphabet sizes")->delimiter(',');
    frontier->add_option("--replicas", fa.replicas);

    MsrArgs ma;
    auto* msr = app.add_subcommand("msr", "multi-scale relevance of a spike train");
    msr->add_option("spikes", ma.path)->required();
    msr->add_option("--t-max", ma.t_max);
    msr->add_option("--grid", ma.grid)->delimiter(',');
    msr->add_option("--phases", ma.phases);

    ClusterArgs ca;
    auto* cluster = app.add_subcommand("cluster", "agglomerative clustering trajectories and ranking");
    cluster->add_option("csv", ca.path)->required();
    cluster->add_option("--algo", ca.algos, "s, c, a")->delimiter(',');
    cluster->add_option("--metric", ca.metric, "l1 or l2");
    cluster->add_option("--truth", ca.truth, "truth column name or 0-based index");
    cluster->add_option("--labels", ca.labels, "external label files");
    cluster->add_option("--criterion", ca.criterion, "infomax or relemax");
    cluster->add_option("--k", ca.K, "cut for the ranking; 0 reads each at its K*");

    LdtArgs la;
    auto* ldt = app.add_subcommand("ldt", "tilted Dirichlet-posterior sweep over beta");
    ldt->add_option("labels", la.path)->required();
    ldt->add_option("--betas", la.betas)->delimiter(',')->required();
    ldt->add_option("--a", la.a, "Dirichlet concentration (default 1/M)");
    ldt->add_option("--m", la.M);
    ldt->add_option("--n-prime", la.N_prime);
    ldt->add_option("--sweeps", la.sweeps);
    ldt->add_option("--burnin", la.burnin);
    ldt->add_option("--thin", la.thin);

    OlmArgs oa;
    auto* olm = app.add_subcommand("olm", "optimal learning machine with an exponential density of states");
    olm->add_option("--classes", oa.classes, "class sizes W_c")->delimiter(',');
    olm->add_option("--pow2", oa.pow2, "W_c = 2^c for c < C");
    olm->add_option("--mu", oa.mu)->delimiter(',');
    olm->add_option("--curve-mu", oa.curve_mu)->delimiter(',');
    olm->add_option("--beta-ratios", oa.beta_ratios)->delimiter(',');

    RemArgs ra;
    relab_rem_config_default(&ra.c);
    auto* rem = app.add_subcommand("rem", "stretched-exponential random energy model");
    rem->add_option("--ns", ra.c.n_s);
    rem->add_option("--nt", ra.c.n_t);
    rem->add_option("--gamma-s", ra.c.gamma_s);
    rem->add_option("--gamma-t", ra.c.gamma_t);
    rem->add_option("--ds", ra.c.delta_s);
    rem->add_option("--dt", ra.c.delta_t);
    rem->add_option("--mode", ra.mode, "evt or empirical");
    rem->add_option("--replicas", ra.c.replicas);
    rem->add_option("--realizations", ra.c.realizations);
    rem->add_option("--h-delta", ra.c.h_delta);
    rem->add_flag("--emit-q", ra.emit_q, "print the clamped distribution");
    rem->add_flag("--phase", ra.phase, "phase-diagram grid instead of a single point");
    rem->add_option("--gamma", ra.gamma);
    rem->add_option("--ratios", ra.ratios)->delimiter(',');
    rem->add_option("--nus", ra.nus)->delimiter(',');

    std::int64_t bn = 0;
    double bhk = 0.0;
    auto* bound = app.add_subcommand("bound", "approximate upper bound on the number of parameters");
    bound->add_option("--n", bn)->required();
    bound->add_option("--hk", bhk)->required();

    relab_posterior_summary ps{0, 1.0, 0.0, 0.0, 0.0};
    auto* evidence = app.add_subcommand("evidence", "posterior-prior divergence and Laplace evidence");
    evidence->add_option("--r", ps.r)->required();
    evidence->add_option("--n", ps.N)->required();
    evidence->add_option("--logdet", ps.logdet_L);
    evidence->add_option("--logprior", ps.log_prior_at_mle);
    evidence->add_option("--loglik", ps.loglik_max);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    g.base_given = base_opt->count() > 0;

    try {
        if (*analyze) run_analyze(g, an);
        else if (*count) run_count(g, count_path);
        else if (*parts) run_partitions(g, pn, pmax);
        else if (*frontier) run_frontier(g, fa);
        else if (*msr) run_msr(g, ma);
        else if (*cluster) run_cluster(g, ca);
        else if (*ldt) run_ldt(g, la);
        else if (*olm) run_olm(g, oa);
        else if (*rem) run_rem(g, ra);
        else if (*bound) run_bound(g, bn, bhk);
        else if (*evidence) run_evidence(g, ps);
    } catch (const CliError& e) {
        std::cout.flush();
        std::cerr << "relab: " << e.what() << '\n';
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "relab: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
