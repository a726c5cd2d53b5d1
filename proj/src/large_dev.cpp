#include "relab/large_dev.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "relab/error.hpp"
#include "relab/parallel.hpp"

namespace relab {

namespace {

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

// Prefix sums over state weights for O(log M) categorical draws.
class Fenwick {
public:
    explicit Fenwick(std::size_t n) : tree_(n + 1, 0.0) {}
    void add(std::size_t i, double v) {
        for (++i; i < tree_.size(); i += i & (~i + 1)) tree_[i] += v;
    }
    // Smallest index whose inclusive prefix sum exceeds target.
    std::size_t find(double target) const {
        std::size_t pos = 0;
        std::size_t step = 1;
        while (step * 2 < tree_.size()) step *= 2;
        for (; step; step /= 2) {
            if (pos + step < tree_.size() && tree_[pos + step] <= target) {
                pos += step;
                target -= tree_[pos];
            }
        }
        return std::min(pos, tree_.size() - 2);
    }

private:
    std::vector<double> tree_;
};

struct BatchMeans {
    std::vector<double> xs;
    double mean() const {
        double s = 0.0;
        for (double x : xs) s += x;
        return xs.empty() ? 0.0 : s / static_cast<double>(xs.size());
    }
    // Standard error from 20 contiguous batches, which absorbs the
    // autocorrelation left after thinning.
    double stderr_of_mean() const {
        const std::size_t B = 20;
        if (xs.size() < 2 * B) {
            if (xs.size() < 2) return 0.0;
            const double m = mean();
            double v = 0.0;
            for (double x : xs) v += (x - m) * (x - m);
            return std::sqrt(v / static_cast<double>(xs.size() - 1) / static_cast<double>(xs.size()));
        }
        const std::size_t per = xs.size() / B;
        std::vector<double> bm(B, 0.0);
        for (std::size_t b = 0; b < B; ++b) {
            for (std::size_t i = 0; i < per; ++i) bm[b] += xs[b * per + i];
            bm[b] /= static_cast<double>(per);
        }
        double m = 0.0;
        for (double x : bm) m += x;
        m /= static_cast<double>(B);
        double v = 0.0;
        for (double x : bm) v += (x - m) * (x - m);
        return std::sqrt(v / static_cast<double>(B - 1) / static_cast<double>(B));
    }
};

}  // namespace

LDTConfig resolve(const FrequencyProfile& freq, const LDTConfig& config) {
    if (freq.N < 1 || freq.counts.empty()) fail(Errc::EmptyInput, "empty frequency profile");
    LDTConfig c = config;
    if (c.M == 0) c.M = 2 * freq.N;
    if (c.N_prime == 0) c.N_prime = freq.N;
    if (c.a == 0.0 && c.M > 0) c.a = 1.0 / static_cast<double>(c.M);
    if (!(c.a > 0.0) || !std::isfinite(c.a)) fail(Errc::BadArgument, "Dirichlet concentration a must be positive");
    if (c.M < static_cast<std::int64_t>(freq.counts.size()))
        fail(Errc::BadArgument, "M is smaller than the number of observed states");
    if (c.N_prime < 1) fail(Errc::BadArgument, "N' must be positive");
    if (!std::isfinite(c.beta)) fail(Errc::BadArgument, "beta must be finite");
    if (c.burnin < 0 || c.thin < 1 || c.sweeps <= c.burnin)
        fail(Errc::BadArgument, "need sweeps > burnin >= 0 and thin >= 1");
    return c;
}

std::vector<std::int64_t> pooled_counts(const FrequencyProfile& freq, std::int64_t M) {
    std::vector<std::int64_t> k;
    k.reserve(static_cast<std::size_t>(M));
    for (const auto& [_, c] : freq.counts) k.push_back(c);
    k.resize(static_cast<std::size_t>(M), 0);
    return k;
}

std::vector<std::int64_t> polya_urn_counts(const std::vector<std::int64_t>& k, double a, std::int64_t n_prime,
                                           Rng& rng) {
    Fenwick tree(k.size());
    double total = 0.0;
    for (std::size_t s = 0; s < k.size(); ++s) {
        const double w = static_cast<double>(k[s]) + a;
        tree.add(s, w);
        total += w;
    }
    std::vector<std::int64_t> q(k.size(), 0);
    for (std::int64_t n = 0; n < n_prime; ++n) {
        const std::size_t s = tree.find(uniform01(rng) * total);
        ++q[s];
        tree.add(s, 1.0);
        total += 1.0;
    }
    return q;
}

Sample posterior_predictive_sample(const FrequencyProfile& freq, const LDTConfig& config) {
    const LDTConfig c = resolve(freq, config);
    Rng rng(c.seed);
    const auto q = polya_urn_counts(pooled_counts(freq, c.M), c.a, c.N_prime, rng);
    std::vector<std::string> names;
    for (const auto& [label, _] : freq.counts) names.push_back(label);
    for (std::int64_t s = static_cast<std::int64_t>(names.size()); s < c.M; ++s)
        names.push_back(std::string(1, kColumnSeparator) + "unseen" + std::to_string(s));
    Sample out;
    out.reserve(static_cast<std::size_t>(c.N_prime));
    for (std::size_t s = 0; s < q.size(); ++s)
        for (std::int64_t j = 0; j < q[s]; ++j) out.push_back(names[s]);
    return out;
}

double log_tilted_weight(const std::vector<std::int64_t>& k, const std::vector<std::int64_t>& q, double a,
                         double beta) {
    double lw = 0.0, S = 0.0;
    std::int64_t n = 0;
    for (std::size_t s = 0; s < k.size(); ++s) {
        const double ks = static_cast<double>(k[s]) + a;
        lw += std::lgamma(ks + static_cast<double>(q[s])) - std::lgamma(ks);
        S += xlogx(static_cast<double>(q[s]));
        n += q[s];
    }
    const double nd = static_cast<double>(n);
    return lw + beta * (xlogx(nd) - S);
}

double log_move_ratio(const std::vector<std::int64_t>& k, const std::vector<std::int64_t>& q, double a,
                      double beta, std::size_t s, std::size_t t) {
    if (s == t) return 0.0;
    const double qs = static_cast<double>(q[s]), qt = static_cast<double>(q[t]);
    const double dS = xlogx(qs - 1.0) - xlogx(qs) + xlogx(qt + 1.0) - xlogx(qt);
    return std::log(static_cast<double>(k[t]) + qt + a) - std::log(static_cast<double>(k[s]) + qs - 1.0 + a) -
           beta * dS;
}

ChainStats mcmc_tilted_chain(const FrequencyProfile& freq, const LDTConfig& config,
                             const std::function<void(const ChainSample&)>& emit) {
    const LDTConfig c = resolve(freq, config);
    const auto k = pooled_counts(freq, c.M);
    const std::int64_t Np = c.N_prime;
    const double Nd = static_cast<double>(Np);
    const double lnN = std::log(Nd);
    Rng rng(c.seed);

    std::vector<double> xlx(static_cast<std::size_t>(Np) + 2, 0.0);
    for (std::size_t j = 1; j < xlx.size(); ++j) xlx[j] = xlogx(static_cast<double>(j));

    std::vector<std::int64_t> q = polya_urn_counts(k, c.a, Np, rng);
    std::vector<std::uint32_t> assign;
    assign.reserve(static_cast<std::size_t>(Np));
    for (std::size_t s = 0; s < q.size(); ++s)
        for (std::int64_t j = 0; j < q[s]; ++j) assign.push_back(static_cast<std::uint32_t>(s));

    // tally[j] = number of states occupied exactly j times.
    std::vector<std::int64_t> tally(static_cast<std::size_t>(Np) + 1, 0);
    double S = 0.0;
    for (auto x : q) {
        ++tally[static_cast<std::size_t>(x)];
        S += xlx[static_cast<std::size_t>(x)];
    }

    ChainStats stats;
    const auto M = static_cast<std::uint64_t>(c.M);
    const auto Nu = static_cast<std::uint64_t>(Np);
    for (std::int64_t sweep = 1; sweep <= c.sweeps; ++sweep) {
        for (std::int64_t step = 0; step < Np; ++step) {
            const std::size_t i = uniform_index(rng, Nu);
            const std::size_t t = uniform_index(rng, M);
            const std::size_t s = assign[i];
            ++stats.proposals;
            if (s == t) {
                ++stats.accepted;
                continue;
            }
            const auto qs = static_cast<std::size_t>(q[s]), qt = static_cast<std::size_t>(q[t]);
            const double dS = xlx[qs - 1] - xlx[qs] + xlx[qt + 1] - xlx[qt];
            const double log_ratio = std::log(static_cast<double>(k[t] + q[t]) + c.a) -
                                     std::log(static_cast<double>(k[s] + q[s] - 1) + c.a) - c.beta * dS;
            if (log_ratio < 0.0 && std::log(uniform01(rng)) >= log_ratio) continue;
            ++stats.accepted;
            --tally[qs];
            ++tally[qs - 1];
            --tally[qt];
            ++tally[qt + 1];
            --q[s];
            ++q[t];
            S += dS;
            assign[i] = static_cast<std::uint32_t>(t);
        }
        if (sweep > c.burnin && (sweep - c.burnin) % c.thin == 0) {
            double acc = 0.0;
            for (std::size_t j = 1; j < tally.size(); ++j)
                if (tally[j]) acc += xlogx(static_cast<double>(j) * static_cast<double>(tally[j]));
            ChainSample cs;
            cs.q = &q;
            cs.Hq_s = std::max(0.0, lnN - S / Nd);
            cs.Hq_k = std::max(0.0, lnN - acc / Nd);
            cs.sweep = sweep;
            ++stats.emitted;
            emit(cs);
        }
    }
    return stats;
}

SweepResult beta_sweep(const FrequencyProfile& freq, const LDTConfig& config, const std::vector<double>& betas) {
    const LDTConfig base = resolve(freq, config);
    if (betas.empty()) fail(Errc::BadArgument, "empty beta grid");
    for (double b : betas)
        if (!std::isfinite(b)) fail(Errc::BadArgument, "beta values must be finite");
    SweepResult out;
    out.N_prime = base.N_prime;
    out.M = base.M;
    out.records.resize(betas.size());
    parallel_for(betas.size(), [&](std::size_t i) {
        LDTConfig c = base;
        c.beta = betas[i];
        c.seed = derive_seed(base.seed, i);
        BatchMeans hs, hk;
        const ChainStats st = mcmc_tilted_chain(freq, c, [&](const ChainSample& cs) {
            hs.xs.push_back(cs.Hq_s);
            hk.xs.push_back(cs.Hq_k);
        });
        SweepRecord r;
        r.beta = betas[i];
        r.Hq_s = hs.mean();
        r.Hq_k = hk.mean();
        r.Hq_s_se = hs.stderr_of_mean();
        r.Hq_k_se = hk.stderr_of_mean();
        r.acceptance = st.proposals ? static_cast<double>(st.accepted) / static_cast<double>(st.proposals) : 0.0;
        r.emitted = st.emitted;
        out.records[i] = r;
    });
    return out;
}

Transition detect_transition(const SweepResult& sweep) {
    if (sweep.records.size() < 5) fail(Errc::BadArgument, "transition detection needs at least 5 beta points");
    std::vector<SweepRecord> r = sweep.records;
    std::stable_sort(r.begin(), r.end(), [](const SweepRecord& x, const SweepRecord& y) { return x.beta < y.beta; });

    const double min_jump = 0.2 * std::log(static_cast<double>(std::max<std::int64_t>(sweep.N_prime, 2)));
    Transition out;
    double largest = 0.0;
    for (std::size_t i = 0; i + 1 < r.size(); ++i) {
        const double jump = std::fabs(r[i + 1].Hq_s - r[i].Hq_s);
        const double se = std::sqrt(r[i].Hq_s_se * r[i].Hq_s_se + r[i + 1].Hq_s_se * r[i + 1].Hq_s_se);
        if (jump > 5.0 * se && jump > min_jump && jump > largest) {
            largest = jump;
            out.kind = TransitionKind::discontinuous;
            out.beta_c = 0.5 * (r[i].beta + r[i + 1].beta);
        }
    }
    if (out.kind == TransitionKind::discontinuous) return out;

    std::size_t best = 0;
    for (std::size_t i = 1; i < r.size(); ++i)
        if (r[i].Hq_k > r[best].Hq_k) best = i;
    if (best > 0 && best + 1 < r.size()) {
        out.kind = TransitionKind::continuous;
        out.beta_c = r[best].beta;
    }
    return out;
}

}  // namespace relab
