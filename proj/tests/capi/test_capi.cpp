#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "doctest.h"
#include "relab/relab.h"

namespace {

struct SampleHandle {
    relab_sample* p = nullptr;
    explicit SampleHandle(const std::vector<const char*>& labels) {
        REQUIRE(relab_sample_create(labels.data(), labels.size(), &p) == RELAB_OK);
    }
    ~SampleHandle() { relab_sample_free(p); }
};

struct Collect {
    std::uint64_t calls = 0;
    double best_relevance = 0.0;
};

void on_partition(void* ctx, const relab_partition_point* pt) {
    auto* c = static_cast<Collect*>(ctx);
    ++c->calls;
    c->best_relevance = std::max(c->best_relevance, pt->relevance);
}

}  // namespace

TEST_CASE("version and status names") {
    CHECK(std::string(relab_version()) == "0.1.0");
    CHECK(std::string(relab_status_name(RELAB_OK)) == "Ok");
    CHECK(std::string(relab_status_name(RELAB_E_TOO_LARGE)) == "TooLarge");
    CHECK(std::string(relab_status_name(RELAB_E_BUFFER)) == "BufferTooSmall");
}

TEST_CASE("sample summary") {
    SampleHandle s({"a", "a", "b"});
    relab_entropy_summary e{};
    REQUIRE(relab_sample_summary(s.p, RELAB_NATS, &e) == RELAB_OK);
    CHECK(e.N == 3);
    CHECK(e.M == 2);
    CHECK(e.resolution == doctest::Approx(std::log(3.0) - 2.0 / 3.0 * std::log(2.0)));
    relab_entropy_summary bits{};
    REQUIRE(relab_sample_summary(s.p, RELAB_BITS, &bits) == RELAB_OK);
    CHECK(bits.resolution == doctest::Approx(e.resolution / std::log(2.0)));
}

TEST_CASE("errors set the thread-local message") {
    relab_sample* p = nullptr;
    CHECK(relab_sample_create(nullptr, 0, &p) == RELAB_E_EMPTY_INPUT);
    CHECK(p == nullptr);
    CHECK(std::strlen(relab_last_error()) > 0);
    const char* bad[] = {"ok", ""};
    CHECK(relab_sample_create(bad, 2, &p) == RELAB_E_BAD_LABEL);
    relab_bound b{};
    CHECK(relab_param_bound(1, 1.0, &b) == RELAB_E_BAD_ARGUMENT);
    CHECK(relab_param_bound(100, 1.0, nullptr) == RELAB_E_BAD_ARGUMENT);
    REQUIRE(relab_param_bound(100, 1.0, &b) == RELAB_OK);
    CHECK(b.r_max == 43);
}

TEST_CASE("buffer protocol") {
    SampleHandle s({"a", "a", "b", "c", "c", "c"});
    size_t len = 0;
    CHECK(relab_sample_degeneracy(s.p, nullptr, nullptr, 0, &len) == RELAB_E_BUFFER);
    REQUIRE(len == 3);
    std::vector<int64_t> k(len), m(len);
    REQUIRE(relab_sample_degeneracy(s.p, k.data(), m.data(), len, &len) == RELAB_OK);
    CHECK(k == std::vector<int64_t>{1, 2, 3});
    CHECK(m == std::vector<int64_t>{1, 1, 1});

    REQUIRE(relab_spin_energies(4, RELAB_FERRO, 1.0, 0, nullptr, 0, &len) == RELAB_E_BUFFER);
    CHECK(len == 16);
}

TEST_CASE("partitions stream through the callback") {
    Collect c;
    uint64_t count = 0;
    REQUIRE(relab_partitions(20, 0, on_partition, &c, &count) == RELAB_OK);
    CHECK(count == 627);
    CHECK(c.calls == 627);
    CHECK(relab_partitions(5000, 0, on_partition, &c, &count) == RELAB_E_TOO_LARGE);
}

TEST_CASE("frontier is sorted by mu") {
    size_t len = 0;
    relab_default_mu_grid(nullptr, 0, &len);
    std::vector<double> grid(len);
    REQUIRE(relab_default_mu_grid(grid.data(), len, &len) == RELAB_OK);
    std::vector<relab_frontier_point> pts(len);
    REQUIRE(relab_frontier(200, grid.data(), grid.size(), pts.data()) == RELAB_OK);
    for (size_t i = 1; i < pts.size(); ++i) CHECK(pts[i].mu > pts[i - 1].mu);
}

TEST_CASE("clustering round trip") {
    const std::vector<double> data = {0, 0, 0, 1, 100, 0, 100, 1};
    relab_dendrogram* d = nullptr;
    REQUIRE(relab_agglomerate(data.data(), 4, 2, RELAB_COMPLETE, RELAB_L2, &d) == RELAB_OK);
    size_t len = 0;
    std::vector<relab_merge> merges(3);
    REQUIRE(relab_dendrogram_merges(d, merges.data(), merges.size(), &len) == RELAB_OK);
    CHECK(len == 3);
    CHECK(merges[2].size == 4);
    std::vector<int64_t> labels(4);
    REQUIRE(relab_dendrogram_cut(d, 2, labels.data(), labels.size()) == RELAB_OK);
    CHECK(labels[0] == labels[1]);
    CHECK(labels[2] == labels[3]);
    CHECK(labels[0] != labels[2]);
    CHECK(relab_dendrogram_cut(d, 9, labels.data(), labels.size()) == RELAB_E_BAD_ARGUMENT);
    std::vector<relab_trajectory_point> tr(4);
    REQUIRE(relab_dendrogram_trajectory(d, tr.data(), tr.size(), &len) == RELAB_OK);
    CHECK(tr[3].resolution == doctest::Approx(std::log(4.0)));
    int64_t ks = 0;
    REQUIRE(relab_k_star(tr.data(), tr.size(), &ks) == RELAB_OK);
    CHECK(ks == 3);
    relab_dendrogram_free(d);

    const char* a[] = {"x", "y", "z", "w"};
    const char* b[] = {"x", "z", "y", "w"};
    double tau = 0.0;
    REQUIRE(relab_kendall_tau(a, b, 4, &tau) == RELAB_OK);
    CHECK(tau == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("ranking reports indices") {
    const relab_trajectory_point lo[] = {{1, 0, 0}, {2, 0.3, 0.2}};
    const relab_trajectory_point hi[] = {{1, 0, 0}, {2, 0.6, 0.6}};
    const relab_trajectory t[] = {{"lo", lo, 2}, {"hi", hi, 2}};
    relab_ranking_entry out[2];
    REQUIRE(relab_rank_algorithms(t, 2, RELAB_RELEMAX, 2, out) == RELAB_OK);
    CHECK(out[0].index == 1);
    CHECK(out[0].value == doctest::Approx(1.2));
}

TEST_CASE("large deviations through the C interface") {
    std::vector<std::string> labels;
    for (int s = 1; s <= 10; ++s)
        for (int j = 0; j < 12 / s; ++j) labels.push_back("s" + std::to_string(s));
    std::vector<const char*> ptrs;
    for (auto& l : labels) ptrs.push_back(l.c_str());
    SampleHandle s(ptrs);
    relab_ldt_config c;
    relab_ldt_config_default(&c);
    CHECK(c.sweeps == 1000000);
    CHECK(c.a == 0.0);
    c.sweeps = 300;
    c.burnin = 100;
    c.thin = 2;
    c.seed = 5;
    const double betas[] = {-0.2, 0.0, 0.2};
    relab_sweep_record rec[3];
    relab_ldt_config resolved;
    REQUIRE(relab_ldt_sweep(s.p, &c, betas, 3, rec, &resolved) == RELAB_OK);
    CHECK(resolved.M == 2 * static_cast<int64_t>(labels.size()));
    CHECK(resolved.a == doctest::Approx(1.0 / resolved.M));
    CHECK(rec[1].emitted == 100);
    relab_transition tr;
    CHECK(relab_ldt_detect(rec, 3, resolved.N_prime, &tr) == RELAB_E_BAD_ARGUMENT);
}

TEST_CASE("olm and rem") {
    std::vector<double> W;
    for (int c = 0; c < 20; ++c) W.push_back(std::ldexp(1.0, c));
    relab_olm_solution sol;
    std::vector<double> E(20);
    REQUIRE(relab_olm_solve(W.data(), W.size(), 1.0, &sol, E.data()) == RELAB_OK);
    CHECK(sol.E0 == doctest::Approx(std::log(20.0)));
    CHECK(E[19] == doctest::Approx(std::log(20.0) + 19 * std::log(2.0)));

    double dstar = 0.0, beta = 0.0;
    REQUIRE(relab_rem_critical(100.0, 2.0, 1.0, &dstar, &beta) == RELAB_OK);
    CHECK(dstar == doctest::Approx(16.651).epsilon(1e-4));

    relab_rem_config rc;
    relab_rem_config_default(&rc);
    rc.n_s = 6;
    rc.realizations = 1;
    relab_rem_result rr;
    size_t len = 0;
    CHECK(relab_rem_simulate(&rc, &rr, nullptr, 0, nullptr) == RELAB_OK);
    CHECK(relab_rem_simulate(&rc, &rr, nullptr, 0, &len) == RELAB_E_BUFFER);
    CHECK(len == 64);
    std::vector<double> q(64);
    REQUIRE(relab_rem_simulate(&rc, &rr, q.data(), q.size(), &len) == RELAB_OK);
    CHECK(len == 64);
    double total = 0.0;
    for (double x : q) total += x;
    CHECK(total == doctest::Approx(1.0));
    CHECK(rr.enumerated == 1);
    rc.n_s = 30;
    rc.mode = RELAB_REM_EMPIRICAL;
    CHECK(relab_rem_simulate(&rc, &rr, nullptr, 0, &len) == RELAB_E_TOO_LARGE);
}

TEST_CASE("evidence") {
    relab_posterior_summary s{3, 1000.0, 1.2, -2.0, 0.0};
    relab_evidence e;
    REQUIRE(relab_log_evidence(&s, &e) == RELAB_OK);
    CHECK(e.kl == doctest::Approx(8.70481731886));
    CHECK(e.bms == doctest::Approx(e.laplace));
}
