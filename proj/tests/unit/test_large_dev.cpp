#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "doctest.h"
#include "oracles.hpp"
#include "relab/error.hpp"
#include "relab/large_dev.hpp"
#include "relab/random.hpp"
#include "relab/sample.hpp"

using namespace relab;

namespace {

FrequencyProfile freq_of(const std::vector<std::pair<std::string, std::int64_t>>& counts) {
    FrequencyProfile f;
    for (const auto& [l, c] : counts) {
        f.counts[l] = c;
        f.N += c;
    }
    return f;
}

FrequencyProfile zipf_like(std::int64_t states) {
    FrequencyProfile f;
    for (std::int64_t s = 1; s <= states; ++s) {
        const std::int64_t c = std::max<std::int64_t>(1, 60 / s);
        f.counts["z" + std::to_string(s)] = c;
        f.N += c;
    }
    return f;
}

// Exact law of the occupation vector: multinomial coefficient times the
// Dirichlet-multinomial sequence weight times the entropy tilt.
double exact_log_composition_weight(const std::vector<std::int64_t>& k, const std::vector<std::int64_t>& q,
                                    double a, double beta) {
    std::int64_t n = 0;
    double lw = 0.0, ent = 0.0;
    for (std::size_t s = 0; s < k.size(); ++s) {
        n += q[s];
        lw -= std::lgamma(q[s] + 1.0);
        for (std::int64_t j = 0; j < q[s]; ++j) lw += std::log(k[s] + a + j);
        if (q[s] > 0) ent -= q[s] * std::log(double(q[s]));
    }
    lw += std::lgamma(n + 1.0);
    ent += n * std::log(double(n));
    return lw + beta * ent;
}

double tv_vs_exact(const std::vector<std::int64_t>& k, double a, double beta, std::int64_t Np,
                   const std::map<std::vector<std::int64_t>, double>& empirical) {
    std::map<std::vector<std::int64_t>, double> exact;
    double Z = 0.0;
    for (std::int64_t x = 0; x <= Np; ++x)
        for (std::int64_t y = 0; x + y <= Np; ++y) {
            const std::vector<std::int64_t> q = {x, y, Np - x - y};
            const double w = std::exp(exact_log_composition_weight(k, q, a, beta));
            exact[q] = w;
            Z += w;
        }
    CHECK(exact.size() == static_cast<std::size_t>((Np + 1) * (Np + 2) / 2));
    double tv = 0.0;
    for (const auto& [q, w] : exact) {
        const auto it = empirical.find(q);
        tv += std::abs(w / Z - (it == empirical.end() ? 0.0 : it->second));
    }
    return 0.5 * tv;
}

// Linear-scan urn, kept separate from the library sampler.
std::vector<std::int64_t> simple_urn(const std::vector<std::int64_t>& k, double a, std::int64_t n, Rng& rng) {
    std::vector<double> w(k.size());
    double total = 0.0;
    for (std::size_t s = 0; s < k.size(); ++s) total += (w[s] = k[s] + a);
    std::vector<std::int64_t> q(k.size(), 0);
    for (std::int64_t i = 0; i < n; ++i) {
        double u = uniform01(rng) * total;
        std::size_t s = 0;
        while (s + 1 < w.size() && u >= w[s]) u -= w[s++];
        ++q[s];
        w[s] += 1.0;
        total += 1.0;
    }
    return q;
}

}  // namespace

TEST_SUITE("large_dev") {

TEST_CASE("config resolution") {
    const auto f = freq_of({{"a", 3}, {"b", 2}});
    const auto c = resolve(f, LDTConfig{});
    CHECK(c.M == 10);
    CHECK(c.N_prime == 5);
    CHECK(c.a == doctest::Approx(0.1));
    LDTConfig bad;
    bad.M = 1;
    CHECK_THROWS_AS(resolve(f, bad), Error);
    bad = LDTConfig{};
    bad.a = -1.0;
    CHECK_THROWS_AS(resolve(f, bad), Error);
    bad = LDTConfig{};
    bad.sweeps = 10;
    bad.burnin = 10;
    CHECK_THROWS_AS(resolve(f, bad), Error);
    try {
        resolve(FrequencyProfile{}, LDTConfig{});
        FAIL("expected EmptyInput");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::EmptyInput);
    }
}

TEST_CASE("pooled counts pad with empty states") {
    const auto k = pooled_counts(freq_of({{"a", 3}, {"b", 2}}), 4);
    CHECK(k == std::vector<std::int64_t>{3, 2, 0, 0});
}

TEST_CASE("detailed balance on the three-state toy") {
    const auto f = freq_of({{"x", 2}, {"y", 1}});
    const auto k = pooled_counts(f, 3);
    for (double beta : {0.0, 0.7, -0.8}) {
        LDTConfig c;
        c.M = 3;
        c.N_prime = 4;
        c.a = 0.5;
        c.beta = beta;
        c.burnin = 1000;
        c.sweeps = 1000000 + c.burnin;
        c.thin = 1;
        c.seed = 2024;
        std::map<std::vector<std::int64_t>, double> counts;
        std::int64_t n = 0;
        mcmc_tilted_chain(f, c, [&](const ChainSample& cs) {
            counts[*cs.q] += 1.0;
            ++n;
        });
        REQUIRE(n == 1000000);
        for (auto& [q, w] : counts) w /= double(n);
        INFO("beta = " << beta);
        CHECK(counts.size() == 15);
        CHECK(tv_vs_exact(k, c.a, beta, 4, counts) < 0.02);
    }
}

TEST_CASE("incremental move ratio equals full recomputation") {
    Rng rng(31);
    double worst = 0.0;
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t M = 2 + uniform_index(rng, 20);
        std::vector<std::int64_t> k(M), q(M);
        for (std::size_t s = 0; s < M; ++s) {
            k[s] = static_cast<std::int64_t>(uniform_index(rng, 50));
            q[s] = static_cast<std::int64_t>(uniform_index(rng, 30));
        }
        std::size_t s = uniform_index(rng, M);
        if (q[s] == 0) q[s] = 1;
        const std::size_t t = uniform_index(rng, M);
        const double a = 0.01 + 3.0 * uniform01(rng);
        const double beta = 4.0 * uniform01(rng) - 2.0;
        auto q2 = q;
        --q2[s];
        ++q2[t];
        const double full = log_tilted_weight(k, q2, a, beta) - log_tilted_weight(k, q, a, beta);
        worst = std::max(worst, std::abs(full - log_move_ratio(k, q, a, beta, s, t)));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("tilted weight matches the product definition") {
    const std::vector<std::int64_t> k = {3, 0, 1};
    const std::vector<std::int64_t> q = {2, 1, 0};
    const double a = 0.25, beta = 0.4;
    const double product = std::log((3.25 * 4.25) / 1.0 * 0.25);
    const double ent = 3 * std::log(3.0) - 2 * std::log(2.0);
    CHECK(log_tilted_weight(k, q, a, beta) == doctest::Approx(product + beta * ent).epsilon(1e-12));
}

TEST_CASE("Polya urn limits") {
    SUBCASE("large concentration is uniform") {
        const auto f = freq_of({{"a", 9}, {"b", 1}});
        Rng rng(4);
        const std::int64_t Np = 40000, M = 20;
        const auto q = polya_urn_counts(pooled_counts(f, M), 1e6, Np, rng);
        CHECK(std::accumulate(q.begin(), q.end(), std::int64_t{0}) == Np);
        const double expect = double(Np) / M;
        for (auto x : q) CHECK(std::abs(x - expect) < 6.0 * std::sqrt(expect));
    }
    SUBCASE("tiny concentration concentrates on the single state") {
        const auto f = freq_of({{"only", 50}});
        LDTConfig c;
        c.a = 0.001;
        c.M = 100;
        c.seed = 8;
        const auto s = posterior_predictive_sample(f, c);
        REQUIRE(s.size() == 50);
        const auto hits = std::count(s.begin(), s.end(), std::string("only"));
        CHECK(hits >= 48);
    }
}

TEST_CASE("chain at zero tilt agrees with direct Polya draws") {
    const auto f = zipf_like(30);
    LDTConfig c;
    c.beta = 0.0;
    c.burnin = 200;
    c.sweeps = 20200;
    c.thin = 2;
    c.seed = 55;
    const auto sweep = beta_sweep(f, c, {0.0});
    const auto& rec = sweep.records[0];

    const std::int64_t draws = 20000;
    double mean_s = 0.0, mean_k = 0.0, sq_s = 0.0, sq_k = 0.0;
    const auto cfg = resolve(f, c);
    const auto k = pooled_counts(f, cfg.M);
    for (std::int64_t d = 0; d < draws; ++d) {
        Rng rng(derive_seed(99, static_cast<std::uint64_t>(d)));
        const auto q = simple_urn(k, cfg.a, cfg.N_prime, rng);
        std::vector<double> w(q.begin(), q.end());
        const double hs = oracle::plugin_entropy(w);
        std::map<std::int64_t, double> mass;
        for (auto x : q)
            if (x > 0) mass[x] += double(x);
        std::vector<double> mk;
        for (auto& [_, m] : mass) mk.push_back(m);
        const double hk = oracle::plugin_entropy(mk);
        mean_s += hs;
        mean_k += hk;
        sq_s += hs * hs;
        sq_k += hk * hk;
    }
    mean_s /= draws;
    mean_k /= draws;
    const double se_s = std::sqrt((sq_s / draws - mean_s * mean_s) / draws);
    const double se_k = std::sqrt((sq_k / draws - mean_k * mean_k) / draws);
    CHECK(std::abs(rec.Hq_s - mean_s) < 3.0 * std::hypot(rec.Hq_s_se, se_s));
    CHECK(std::abs(rec.Hq_k - mean_k) < 3.0 * std::hypot(rec.Hq_k_se, se_k));
    CHECK(rec.emitted == 10000);
    CHECK(rec.acceptance >= 0.0);
    CHECK(rec.acceptance <= 1.0);
}

TEST_CASE("strong tilt limits") {
    const auto f = zipf_like(20);
    LDTConfig c;
    c.N_prime = 40;
    c.M = 200;
    c.burnin = 2000;
    c.sweeps = 4000;
    c.thin = 10;
    c.seed = 12;
    const auto r = beta_sweep(f, c, {-10.0, 10.0});
    CHECK(r.records[0].Hq_s < 0.05);
    CHECK(r.records[1].Hq_s > std::log(40.0) - 0.05);
    CHECK(r.records[1].Hq_s <= std::log(40.0) + 1e-12);
}

TEST_CASE("emitted samples respect the invariants") {
    const auto f = zipf_like(10);
    LDTConfig c;
    c.beta = -0.3;
    c.burnin = 10;
    c.sweeps = 110;
    c.thin = 5;
    c.seed = 3;
    const auto cfg = resolve(f, c);
    std::int64_t n = 0;
    mcmc_tilted_chain(f, c, [&](const ChainSample& cs) {
        ++n;
        CHECK(std::accumulate(cs.q->begin(), cs.q->end(), std::int64_t{0}) == cfg.N_prime);
        CHECK(cs.q->size() == static_cast<std::size_t>(cfg.M));
        std::vector<double> w(cs.q->begin(), cs.q->end());
        CHECK(cs.Hq_s == doctest::Approx(oracle::plugin_entropy(w)).epsilon(1e-9));
        CHECK((cs.sweep - c.burnin) % c.thin == 0);
    });
    CHECK(n == 20);
}

TEST_CASE("identical seeds give bit-identical chains") {
    const auto f = zipf_like(15);
    LDTConfig c;
    c.beta = 0.2;
    c.burnin = 50;
    c.sweeps = 550;
    c.thin = 5;
    c.seed = 77;
    std::vector<double> a, b;
    mcmc_tilted_chain(f, c, [&](const ChainSample& cs) { a.push_back(cs.Hq_s); });
    mcmc_tilted_chain(f, c, [&](const ChainSample& cs) { b.push_back(cs.Hq_s); });
    CHECK(a == b);
    c.seed = 78;
    std::vector<double> d;
    mcmc_tilted_chain(f, c, [&](const ChainSample& cs) { d.push_back(cs.Hq_s); });
    CHECK(a != d);

    const auto s1 = beta_sweep(f, c, {-0.2, 0.0, 0.2});
    const auto s2 = beta_sweep(f, c, {-0.2, 0.0, 0.2});
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(s1.records[i].Hq_s == s2.records[i].Hq_s);
        CHECK(s1.records[i].Hq_k_se == s2.records[i].Hq_k_se);
    }
}

TEST_CASE("transition detection") {
    auto make = [](const std::vector<double>& hs, const std::vector<double>& hk) {
        SweepResult r;
        r.N_prime = 1000;
        r.M = 2000;
        for (std::size_t i = 0; i < hs.size(); ++i) {
            SweepRecord x;
            x.beta = -0.5 + 0.25 * static_cast<double>(i);
            x.Hq_s = hs[i];
            x.Hq_k = hk[i];
            x.Hq_s_se = 0.01;
            x.Hq_k_se = 0.01;
            r.records.push_back(x);
        }
        return r;
    };
    SUBCASE("monotone smooth sweep") {
        const auto t = detect_transition(make({5.0, 5.2, 5.4, 5.6, 5.8}, {1.0, 1.1, 1.2, 1.3, 1.4}));
        CHECK(t.kind == TransitionKind::none);
    }
    SUBCASE("interior relevance maximum") {
        const auto t = detect_transition(make({5.0, 5.2, 5.4, 5.6, 5.8}, {1.0, 1.3, 1.5, 1.2, 1.0}));
        CHECK(t.kind == TransitionKind::continuous);
        CHECK(t.beta_c == doctest::Approx(0.0));
    }
    SUBCASE("jump") {
        const auto t = detect_transition(make({0.1, 0.2, 5.4, 5.6, 5.8}, {0.1, 0.2, 1.5, 1.2, 1.0}));
        CHECK(t.kind == TransitionKind::discontinuous);
        CHECK(t.beta_c == doctest::Approx(-0.125));
    }
    SUBCASE("jump below the size threshold") {
        // 0.2 ln 1000 = 1.38
        const auto t = detect_transition(make({5.0, 5.1, 6.2, 6.3, 6.4}, {1.0, 1.1, 1.2, 1.3, 1.4}));
        CHECK(t.kind == TransitionKind::none);
    }
    SUBCASE("record order does not matter") {
        auto r = make({0.1, 0.2, 5.4, 5.6, 5.8}, {0.1, 0.2, 1.5, 1.2, 1.0});
        std::reverse(r.records.begin(), r.records.end());
        CHECK(detect_transition(r).beta_c == doctest::Approx(-0.125));
    }
    SUBCASE("too few points") {
        auto r = make({1, 2, 3, 4}, {1, 2, 3, 4});
        CHECK_THROWS_AS(detect_transition(r), Error);
    }
}

}  // TEST_SUITE
