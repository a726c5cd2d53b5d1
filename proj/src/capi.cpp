#include "relab/relab.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <exception>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "relab/cluster.hpp"
#include "relab/combinatorics.hpp"
#include "relab/error.hpp"
#include "relab/frontier.hpp"
#include "relab/inference.hpp"
#include "relab/large_dev.hpp"
#include "relab/msr.hpp"
#include "relab/olm.hpp"
#include "relab/random.hpp"
#include "relab/rem.hpp"
#include "relab/sample.hpp"

#ifndef RELAB_VERSION
#define RELAB_VERSION "0.0.0"
#endif

struct relab_sample {
    relab::FrequencyProfile freq;
    relab::DegeneracyProfile deg;
};

struct relab_dendrogram {
    relab::Dendrogram d;
};

namespace {

thread_local std::string g_last_error;

relab_status to_status(relab::Errc c) { return static_cast<relab_status>(static_cast<int>(c)); }

struct BufferTooSmall {};

template <class F>
relab_status guard(F&& body) {
    try {
        body();
        g_last_error.clear();
        return RELAB_OK;
    } catch (const BufferTooSmall&) {
        g_last_error = "output buffer too small";
        return RELAB_E_BUFFER;
    } catch (const relab::Error& e) {
        g_last_error = e.what();
        return to_status(e.code());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return RELAB_E_TOO_LARGE;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return RELAB_E_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return RELAB_E_INTERNAL;
    }
}

void need(const void* p, const char* what) {
    if (!p) relab::fail(relab::Errc::BadArgument, std::string("null pointer: ") + what);
}

// Copies src into a caller buffer, or raises the buffer status after storing the length.
template <class T, class U, class Conv>
void copy_out(const std::vector<U>& src, T* out, std::size_t cap, std::size_t* len, Conv conv) {
    need(len, "len");
    *len = src.size();
    if (cap < src.size() || (!out && !src.empty())) throw BufferTooSmall{};
    for (std::size_t i = 0; i < src.size(); ++i) out[i] = conv(src[i]);
}

relab::Base to_base(relab_base b) {
    switch (b) {
        case RELAB_NATS: return relab::Base::nats;
        case RELAB_BITS: return relab::Base::bits;
        case RELAB_BASE_N: return relab::Base::baseN;
    }
    relab::fail(relab::Errc::BadArgument, "unknown base");
}

std::vector<std::string> strings(const char* const* p, std::size_t n, const char* what) {
    if (n) need(p, what);
    std::vector<std::string> v;
    v.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        need(p[i], what);
        v.emplace_back(p[i]);
    }
    return v;
}

template <class T>
std::vector<T> array(const T* p, std::size_t n, const char* what) {
    if (n) need(p, what);
    return std::vector<T>(p, p + n);
}

relab::OLMSpec olm_spec(const double* sizes, std::size_t n) {
    relab::OLMSpec s;
    s.class_sizes = array(sizes, n, "class_sizes");
    return s;
}

relab::REMConfig rem_config(const relab_rem_config* c) {
    need(c, "config");
    relab::REMConfig r;
    r.n_s = c->n_s;
    r.n_t = c->n_t;
    r.gamma_s = c->gamma_s;
    r.gamma_t = c->gamma_t;
    r.delta_s = c->delta_s;
    r.delta_t = c->delta_t;
    r.replicas = c->replicas;
    r.realizations = c->realizations;
    r.seed = c->seed;
    if (c->mode != RELAB_REM_EMPIRICAL && c->mode != RELAB_REM_EVT) relab::fail(relab::Errc::BadArgument, "unknown mode");
    r.mode = c->mode == RELAB_REM_EMPIRICAL ? relab::REMMode::empirical : relab::REMMode::evt;
    r.h_delta = c->h_delta;
    return r;
}

relab::TrajectoryPoint from_c(const relab_trajectory_point& p) { return {p.K, p.resolution, p.relevance}; }

relab_sweep_record to_c(const relab::SweepRecord& r) {
    return {r.beta, r.Hq_s, r.Hq_k, r.Hq_s_se, r.Hq_k_se, r.acceptance, r.emitted};
}

}  // namespace

extern "C" {

const char* relab_version(void) { return RELAB_VERSION; }

const char* relab_last_error(void) { return g_last_error.c_str(); }

const char* relab_status_name(relab_status status) {
    if (status == RELAB_OK) return "Ok";
    if (status == RELAB_E_BUFFER) return "BufferTooSmall";
    if (status >= RELAB_E_EMPTY_INPUT && status <= RELAB_E_INTERNAL)
        return relab::errc_name(static_cast<relab::Errc>(static_cast<int>(status)));
    return "Unknown";
}

uint64_t relab_fnv1a64_init(void) { return 0xcbf29ce484222325ULL; }

uint64_t relab_fnv1a64(const void* bytes, size_t n, uint64_t h) {
    if (!bytes || !n) return h;
    return relab::fnv1a64(std::string_view(static_cast<const char*>(bytes), n), h);
}

relab_status relab_sample_create(const char* const* labels, size_t n, relab_sample** out) {
    return guard([&] {
        need(out, "out");
        *out = nullptr;
        const auto sample = strings(labels, n, "labels");
        auto s = std::make_unique<relab_sample>();
        s->freq = relab::build_frequency(sample);
        s->deg = relab::build_degeneracy(s->freq);
        *out = s.release();
    });
}

void relab_sample_free(relab_sample* sample) { delete sample; }

relab_status relab_sample_summary(const relab_sample* sample, relab_base base, relab_entropy_summary* out) {
    return guard([&] {
        need(sample, "sample");
        need(out, "out");
        const auto e = relab::entropy_summary(sample->deg, to_base(base));
        *out = {e.N, e.M, e.resolution, e.relevance, e.noise, base};
    });
}

relab_status relab_sample_log_counts(const relab_sample* sample, relab_log_counts* out) {
    return guard([&] {
        need(sample, "sample");
        need(out, "out");
        const auto c = relab::log_counts(sample->deg);
        *out = {c.log_Ws, c.log_Wk, c.log_Ws_given_k, c.log_Wm};
    });
}

relab_status relab_sample_degeneracy(const relab_sample* sample, int64_t* k, int64_t* m, size_t cap, size_t* len) {
    return guard([&] {
        need(sample, "sample");
        need(len, "len");
        *len = sample->deg.m.size();
        if (cap < *len || ((!k || !m) && *len)) throw BufferTooSmall{};
        std::size_t i = 0;
        for (const auto& [kk, mm] : sample->deg.m) {
            k[i] = kk;
            m[i] = mm;
            ++i;
        }
    });
}

relab_status relab_sample_fit_exponent(const relab_sample* sample, int min_mass, relab_exponent_fit* out) {
    return guard([&] {
        need(sample, "sample");
        need(out, "out");
        const auto f = relab::fit_exponent(sample->deg, relab::FitOptions{min_mass != 0});
        *out = {f.mu, f.intercept, f.stderr_mu, f.points_used};
    });
}

relab_status relab_sample_zipf_gap(const relab_sample* sample, int min_mass, relab_zipf_gap* out) {
    return guard([&] {
        need(sample, "sample");
        need(out, "out");
        const auto z = relab::zipf_gap(sample->deg, relab::FitOptions{min_mass != 0});
        *out = {z.mu_hat, z.mu_deviation, z.resolution, z.relevance, z.frontier_relevance, z.frontier_deficit};
    });
}

relab_status relab_partitions(int64_t N, int64_t n_max, relab_partition_cb cb, void* ctx, uint64_t* count) {
    return guard([&] {
        if (!cb) relab::fail(relab::Errc::BadArgument, "null callback");
        std::optional<relab::PartitionScorer> scorer;
        const auto n = relab::enumerate_partitions(
            N,
            [&](const relab::PartitionView& v) {
                if (!scorer) scorer.emplace(N);
                relab_partition_point p{v.N, v.parts, v.mult, v.size, scorer->resolution(v), scorer->relevance(v),
                                        scorer->log_Wm(v)};
                cb(ctx, &p);
            },
            n_max > 0 ? n_max : relab::kDefaultPartitionMax);
        if (count) *count = n;
    });
}

relab_status relab_default_mu_grid(double* out, size_t cap, size_t* len) {
    return guard([&] { copy_out(relab::default_mu_grid(), out, cap, len, [](double x) { return x; }); });
}

relab_status relab_frontier(int64_t N, const double* mu, size_t n_mu, relab_frontier_point* out) {
    return guard([&] {
        need(out, "out");
        const auto curve = relab::max_relevance_frontier(N, array(mu, n_mu, "mu"));
        for (std::size_t i = 0; i < curve.points.size(); ++i) {
            const auto& p = curve.points[i];
            out[i] = {p.mu, p.resolution, p.relevance, p.amplitude};
        }
    });
}

relab_status relab_random_baseline(int64_t N, const int64_t* alphabet_sizes, size_t n, int replicas, uint64_t seed,
                                   relab_baseline_point* out) {
    return guard([&] {
        need(out, "out");
        const auto b = relab::random_baseline(N, array(alphabet_sizes, n, "alphabet_sizes"), replicas, seed);
        for (std::size_t i = 0; i < b.points.size(); ++i) {
            const auto& p = b.points[i];
            out[i] = {p.alphabet, p.resolution, p.relevance, p.resolution_se, p.relevance_se};
        }
    });
}

relab_status relab_msr(const double* times, size_t n_times, double T, const double* grid, size_t n_grid, int phases,
                       relab_msr_point* curve, size_t cap, size_t* len, relab_msr_summary* summary) {
    return guard([&] {
        relab::SpikeTrain train{array(times, n_times, "times"), T};
        relab::validate(train);
        const auto g = n_grid ? array(grid, n_grid, "grid") : relab::default_dt_grid(train);
        const auto r = relab::msr_analyze(train, g, phases);
        if (summary) *summary = {r.msr, r.optimal_dt, r.max_total};
        copy_out(r.curve, curve, cap, len,
                 [](const relab::MSRPoint& p) { return relab_msr_point{p.dt, p.resolution, p.relevance}; });
    });
}

relab_status relab_agglomerate(const double* data, size_t rows, size_t cols, relab_linkage linkage,
                               relab_metric metric, relab_dendrogram** out) {
    return guard([&] {
        need(out, "out");
        *out = nullptr;
        if (rows && cols) need(data, "data");
        relab::DataMatrix m(rows, std::vector<double>(cols));
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) m[i][j] = data[i * cols + j];
        relab::Linkage l;
        switch (linkage) {
            case RELAB_SINGLE: l = relab::Linkage::single; break;
            case RELAB_COMPLETE: l = relab::Linkage::complete; break;
            case RELAB_AVERAGE: l = relab::Linkage::average; break;
            default: relab::fail(relab::Errc::BadArgument, "unknown linkage");
        }
        if (metric != RELAB_L1 && metric != RELAB_L2) relab::fail(relab::Errc::BadArgument, "unknown metric");
        auto d = std::make_unique<relab_dendrogram>();
        d->d = relab::agglomerate(m, l, metric == RELAB_L1 ? relab::Metric::L1 : relab::Metric::L2);
        *out = d.release();
    });
}

void relab_dendrogram_free(relab_dendrogram* d) { delete d; }

relab_status relab_dendrogram_merges(const relab_dendrogram* d, relab_merge* out, size_t cap, size_t* len) {
    return guard([&] {
        need(d, "dendrogram");
        copy_out(d->d.merges, out, cap, len,
                 [](const relab::Merge& m) { return relab_merge{m.left, m.right, m.distance, m.size}; });
    });
}

relab_status relab_dendrogram_cut(const relab_dendrogram* d, int64_t K, int64_t* labels, size_t cap) {
    return guard([&] {
        need(d, "dendrogram");
        const auto cut = relab::cut_at_k(d->d, K);
        if (cap < cut.size() || !labels) throw BufferTooSmall{};
        for (std::size_t i = 0; i < cut.size(); ++i) labels[i] = std::stoll(cut[i]);
    });
}

relab_status relab_dendrogram_trajectory(const relab_dendrogram* d, relab_trajectory_point* out, size_t cap,
                                         size_t* len) {
    return guard([&] {
        need(d, "dendrogram");
        copy_out(relab::rr_trajectory(d->d), out, cap, len, [](const relab::TrajectoryPoint& p) {
            return relab_trajectory_point{p.K, p.resolution, p.relevance};
        });
    });
}

relab_status relab_k_star(const relab_trajectory_point* points, size_t n, int64_t* out) {
    return guard([&] {
        need(out, "out");
        std::vector<relab::TrajectoryPoint> t;
        for (const auto& p : array(points, n, "points")) t.push_back(from_c(p));
        *out = relab::k_star(t);
    });
}

relab_status relab_rank_algorithms(const relab_trajectory* trajectories, size_t n, relab_criterion criterion,
                                   int64_t K, relab_ranking_entry* out) {
    return guard([&] {
        need(out, "out");
        std::vector<relab::NamedTrajectory> ts;
        for (const auto& t : array(trajectories, n, "trajectories")) {
            need(t.name, "name");
            relab::NamedTrajectory nt{t.name, {}};
            for (const auto& p : array(t.points, t.n, "points")) nt.points.push_back(from_c(p));
            ts.push_back(std::move(nt));
        }
        if (criterion != RELAB_INFOMAX && criterion != RELAB_RELEMAX)
            relab::fail(relab::Errc::BadArgument, "unknown criterion");
        const auto rep = relab::rank_algorithms(
            ts, criterion == RELAB_INFOMAX ? relab::RankCriterion::INFOMAX : relab::RankCriterion::RELEMAX, K);
        for (std::size_t i = 0; i < rep.ranking.size(); ++i) {
            const auto& e = rep.ranking[i];
            std::size_t idx = 0;
            while (idx < ts.size() && ts[idx].name != e.name) ++idx;
            out[i] = {idx, e.K, e.K_star, e.value};
        }
    });
}

relab_status relab_truth_metrics_of(const char* const* labels, const char* const* truth, size_t n,
                                    relab_truth_metrics* out) {
    return guard([&] {
        need(out, "out");
        const auto t = relab::truth_metrics(strings(labels, n, "labels"), strings(truth, n, "truth"));
        *out = {t.mutual_information, t.nmi, t.ari, t.purity};
    });
}

relab_status relab_kendall_tau(const char* const* rank_a, const char* const* rank_b, size_t n, double* out) {
    return guard([&] {
        need(out, "out");
        *out = relab::kendall_tau(strings(rank_a, n, "rank_a"), strings(rank_b, n, "rank_b"));
    });
}

void relab_ldt_config_default(relab_ldt_config* config) {
    if (!config) return;
    const relab::LDTConfig d;
    *config = {d.a, d.M, d.N_prime, d.sweeps, d.burnin, d.thin, d.seed};
}

relab_status relab_ldt_sweep(const relab_sample* sample, const relab_ldt_config* config, const double* betas,
                             size_t n, relab_sweep_record* out, relab_ldt_config* resolved) {
    return guard([&] {
        need(sample, "sample");
        need(config, "config");
        need(out, "out");
        relab::LDTConfig c;
        c.a = config->a;
        c.M = config->M;
        c.N_prime = config->N_prime;
        c.sweeps = config->sweeps;
        c.burnin = config->burnin;
        c.thin = config->thin;
        c.seed = config->seed;
        const auto r = relab::resolve(sample->freq, c);
        const auto sweep = relab::beta_sweep(sample->freq, r, array(betas, n, "betas"));
        for (std::size_t i = 0; i < sweep.records.size(); ++i) out[i] = to_c(sweep.records[i]);
        if (resolved) *resolved = {r.a, r.M, r.N_prime, r.sweeps, r.burnin, r.thin, r.seed};
    });
}

relab_status relab_ldt_detect(const relab_sweep_record* records, size_t n, int64_t N_prime, relab_transition* out) {
    return guard([&] {
        need(out, "out");
        relab::SweepResult s;
        s.N_prime = N_prime;
        for (const auto& r : array(records, n, "records"))
            s.records.push_back({r.beta, r.Hq_s, r.Hq_k, r.Hq_s_se, r.Hq_k_se, r.acceptance, r.emitted});
        const auto t = relab::detect_transition(s);
        out->beta_c = t.beta_c;
        out->kind = static_cast<relab_transition_kind>(static_cast<int>(t.kind));
    });
}

relab_status relab_olm_solve(const double* class_sizes, size_t n, double mu, relab_olm_solution* out,
                             double* energies) {
    return guard([&] {
        need(out, "out");
        const auto s = relab::olm_optimal_costs(olm_spec(class_sizes, n), mu);
        *out = {s.E0, s.mu, s.resolution, s.noise, s.relevance};
        if (energies) std::copy(s.E.begin(), s.E.end(), energies);
    });
}

relab_status relab_olm_entropy_energy(const double* class_sizes, size_t n, const double* mu, size_t n_mu,
                                      relab_entropy_energy_point* out) {
    return guard([&] {
        need(out, "out");
        const auto c = relab::olm_entropy_energy_curve(olm_spec(class_sizes, n), array(mu, n_mu, "mu"));
        for (std::size_t i = 0; i < c.size(); ++i) out[i] = {c[i].mu, c[i].resolution, c[i].noise};
    });
}

relab_status relab_olm_specific_heat(const double* class_sizes, size_t n, double mu, const double* beta_ratios,
                                     size_t n_ratios, relab_heat_point* out) {
    return guard([&] {
        need(out, "out");
        const auto c =
            relab::specific_heat_curve(olm_spec(class_sizes, n), mu, array(beta_ratios, n_ratios, "beta_ratios"));
        for (std::size_t i = 0; i < c.size(); ++i) out[i] = {c[i].beta_ratio, c[i].C};
    });
}

relab_status relab_log_grid(double lo, double hi, int per_decade, double* out, size_t cap, size_t* len) {
    return guard([&] { copy_out(relab::log_grid(lo, hi, per_decade), out, cap, len, [](double x) { return x; }); });
}

relab_status relab_model_relevance(const double* energies, size_t n, double delta, relab_model_rr* out) {
    return guard([&] {
        need(out, "out");
        const auto r = relab::model_relevance(array(energies, n, "energies"), delta);
        *out = {r.H_s, r.H_E, r.delta, r.mean_log_degeneracy};
    });
}

relab_status relab_spin_energies(int n_spins, relab_spin_pattern pattern, double J, int star_l, double* out,
                                 size_t cap, size_t* len) {
    return guard([&] {
        relab::SpinPattern p;
        switch (pattern) {
            case RELAB_FERRO: p = relab::SpinPattern::ferro; break;
            case RELAB_STAR: p = relab::SpinPattern::star; break;
            case RELAB_NESTED: p = relab::SpinPattern::nested; break;
            default: relab::fail(relab::Errc::BadArgument, "unknown spin pattern");
        }
        copy_out(relab::spin_energies(n_spins, p, J, star_l), out, cap, len, [](double x) { return x; });
    });
}

void relab_rem_config_default(relab_rem_config* config) {
    if (!config) return;
    const relab::REMConfig d;
    *config = {d.n_s,      d.n_t,          d.gamma_s, d.gamma_t,
               d.delta_s,  d.delta_t,      d.replicas, d.realizations,
               d.seed,     RELAB_REM_EVT, d.h_delta};
}

relab_status relab_rem_critical(double n_t, double gamma_t, double delta_t, double* delta_t_star, double* beta) {
    return guard([&] {
        const auto c = relab::rem_critical_params(n_t, gamma_t, delta_t);
        if (delta_t_star) *delta_t_star = c.delta_t_star;
        if (beta) *beta = c.beta;
    });
}

relab_status relab_rem_nu_star(double gamma, double ratio, double* out) {
    return guard([&] {
        need(out, "out");
        *out = relab::rem_nu_star(gamma, ratio);
    });
}

relab_status relab_rem_simulate(const relab_rem_config* config, relab_rem_result* out, double* q_hat, size_t cap,
                                size_t* len) {
    return guard([&] {
        need(out, "out");
        const auto r = relab::rem_simulate(rem_config(config));
        *out = {r.H_s_star, r.H_s_star_se, r.H_u, r.normalized, r.beta, r.beta_effective, r.ties, r.enumerated ? 1 : 0};
        if (q_hat || len) copy_out(r.q_hat, q_hat, cap, len, [](double x) { return x; });
    });
}

relab_status relab_rem_phase_diagram(double gamma, const double* ratios, size_t n_ratios, const double* nus,
                                     size_t n_nus, const relab_rem_config* config, double* H, double* H_se,
                                     double* nu_star) {
    return guard([&] {
        need(H, "H");
        const auto d =
            relab::rem_phase_diagram(gamma, array(ratios, n_ratios, "ratios"), array(nus, n_nus, "nus"), rem_config(config));
        std::copy(d.H.begin(), d.H.end(), H);
        if (H_se) std::copy(d.H_se.begin(), d.H_se.end(), H_se);
        if (nu_star) std::copy(d.nu_star.begin(), d.nu_star.end(), nu_star);
    });
}

relab_status relab_log_evidence(const relab_posterior_summary* summary, relab_evidence* out) {
    return guard([&] {
        need(summary, "summary");
        need(out, "out");
        const relab::GaussianPosteriorSummary s{summary->r, summary->N, summary->logdet_L, summary->log_prior_at_mle,
                                                summary->loglik_max};
        const auto e = relab::log_evidence(s);
        *out = {e.kl, e.bms, e.laplace};
    });
}

relab_status relab_param_bound(int64_t N, double relevance, relab_bound* out) {
    return guard([&] {
        need(out, "out");
        const auto b = relab::param_bound(N, relevance);
        *out = {b.r_max, b.raw};
    });
}

}  // extern "C"
