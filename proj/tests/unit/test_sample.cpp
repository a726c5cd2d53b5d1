#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "relab/error.hpp"
#include "relab/sample.hpp"

using namespace relab;

namespace {

Errc code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return Errc::Internal;
}

Sample random_sample(std::mt19937_64& g, int N, int S) {
    std::uniform_int_distribution<int> d(0, S - 1);
    Sample s;
    for (int i = 0; i < N; ++i) s.push_back("x" + std::to_string(d(g)));
    return s;
}

}  // namespace

TEST_SUITE("sample") {

TEST_CASE("frequency and degeneracy tallies") {
    const auto f = build_frequency({"a", "a", "b"});
    CHECK(f.N == 3);
    CHECK(f.counts.at("a") == 2);
    CHECK(f.counts.at("b") == 1);
    const auto d = build_degeneracy(f);
    CHECK(d.m == std::map<std::int64_t, std::int64_t>{{1, 1}, {2, 1}});
    CHECK(d.M == 2);

    const auto single = build_frequency({"x"});
    CHECK(single.N == 1);
    CHECK(single.counts.size() == 1);

    CHECK(build_degeneracy(build_frequency({"a", "b", "c"})).m == std::map<std::int64_t, std::int64_t>{{1, 3}});
    FrequencyProfile f3;
    f3.counts = {{"a", 5}, {"b", 5}, {"c", 2}};
    f3.N = 12;
    CHECK(build_degeneracy(f3).m == std::map<std::int64_t, std::int64_t>{{2, 1}, {5, 2}});
}

TEST_CASE("seeded uniform draws tally to N") {
    std::mt19937_64 g(7);
    const auto s = random_sample(g, 1000, 4);
    const auto f = build_frequency(s);
    std::int64_t total = 0;
    for (const auto& [label, k] : f.counts) {
        CHECK(k == std::count(s.begin(), s.end(), label));
        total += k;
    }
    CHECK(total == 1000);
}

TEST_CASE("input errors") {
    CHECK(code_of([] { build_frequency({}); }) == Errc::EmptyInput);
    CHECK(code_of([] { build_frequency({"a", ""}); }) == Errc::BadLabel);
}

TEST_CASE("entropy summary examples") {
    auto e = entropy_summary(Sample{"a", "a", "b"});
    const double h = -(2.0 / 3) * std::log(2.0 / 3) - (1.0 / 3) * std::log(1.0 / 3);
    CHECK(e.resolution == doctest::Approx(h).epsilon(1e-14));
    CHECK(e.resolution == doctest::Approx(0.63651).epsilon(1e-5));
    CHECK(e.relevance == doctest::Approx(0.63651).epsilon(1e-5));
    CHECK(e.noise == doctest::Approx(0.0));

    e = entropy_summary(Sample{"a", "b", "c", "d"});
    CHECK(e.resolution == doctest::Approx(std::log(4.0)));
    CHECK(e.relevance == 0.0);
    CHECK(e.noise == doctest::Approx(std::log(4.0)));

    e = entropy_summary(Sample{"a", "a", "b", "b"});
    CHECK(e.resolution == doctest::Approx(std::log(2.0)));
    CHECK(e.relevance == 0.0);
}

TEST_CASE("base conversion") {
    const Sample s{"a", "a", "b", "c", "c", "c"};
    const auto n = entropy_summary(s, Base::nats);
    const auto b = entropy_summary(s, Base::bits);
    const auto u = entropy_summary(s, Base::baseN);
    CHECK(b.resolution == doctest::Approx(n.resolution / std::log(2.0)));
    CHECK(u.resolution == doctest::Approx(n.resolution / std::log(6.0)));
    CHECK(u.relevance == doctest::Approx(n.relevance / std::log(6.0)));
    const auto one = entropy_summary(Sample{"z"}, Base::baseN);
    CHECK(one.resolution == 0.0);
    CHECK(one.relevance == 0.0);
    CHECK(one.noise == 0.0);
}

TEST_CASE("property: bounds, oracle agreement, permutation and relabeling invariance") {
    std::mt19937_64 g(11);
    for (int trial = 0; trial < 300; ++trial) {
        const int N = 1 + static_cast<int>(g() % 300);
        const int S = 1 + static_cast<int>(g() % 200);
        auto s = random_sample(g, N, S);
        const auto e = entropy_summary(s);
        const auto o = oracle::resolution_relevance(s);
        CHECK(e.resolution == doctest::Approx(o.resolution).epsilon(1e-12));
        CHECK(e.relevance == doctest::Approx(o.relevance).epsilon(1e-12));
        CHECK(e.relevance >= -1e-12);
        CHECK(e.relevance <= e.resolution + 1e-12);
        CHECK(e.resolution <= std::log(static_cast<double>(N)) + 1e-12);
        CHECK(std::fabs(e.noise - (e.resolution - e.relevance)) <= 1e-12);

        std::shuffle(s.begin(), s.end(), g);
        for (auto& x : s) x = "renamed-" + x;
        const auto e2 = entropy_summary(s);
        CHECK(e2.resolution == doctest::Approx(e.resolution).epsilon(1e-13));
        CHECK(e2.relevance == doctest::Approx(e.relevance).epsilon(1e-13));
    }
}

TEST_CASE("all counts distinct gives relevance equal to resolution") {
    Sample s;
    for (int k = 1; k <= 12; ++k)
        for (int i = 0; i < k; ++i) s.push_back("s" + std::to_string(k));
    const auto e = entropy_summary(s);
    CHECK(e.relevance == doctest::Approx(e.resolution).epsilon(1e-13));
}

TEST_CASE("relevance depends only on the degeneracy profile") {
    const auto a = entropy_summary(Sample{"a", "a", "b", "c", "c", "d"});
    const auto b = entropy_summary(Sample{"p", "q", "q", "r", "s", "s"});
    CHECK(a.relevance == doctest::Approx(b.relevance).epsilon(1e-14));
    const auto d = degeneracy_from_counts({2, 1, 2, 1});
    CHECK(relevance_of(d) == doctest::Approx(a.relevance).epsilon(1e-14));
}

TEST_CASE("degeneracy validation") {
    DegeneracyProfile d;
    d.m = {{1, 2}};
    d.N = 3;
    d.M = 2;
    CHECK(code_of([&] { validate(d); }) == Errc::BadData);
    CHECK(code_of([] { degeneracy_from_counts({0, 0}); }) == Errc::EmptyInput);
}

TEST_CASE("project_columns") {
    const CategoricalTable t{{"a", "x", "1"}, {"b", "x", "2"}, {"a", "y", "1"}};
    CHECK(project_columns(t, {0}) == Sample{"a", "b", "a"});
    const auto full = project_columns(t, {0, 1, 2});
    CHECK(std::set<Label>(full.begin(), full.end()).size() == 3);

    const CategoricalTable four{{"a", "x", "p"}, {"a", "x", "q"}, {"b", "x", "p"}, {"a", "y", "q"}};
    const auto pr = project_columns(four, {0, 1});
    CHECK(pr.size() == 4);
    CHECK(pr[0] == pr[1]);
    CHECK(pr[0] != pr[2]);
    const auto e = entropy_summary(pr);
    // hand tally: {ax:2, bx:1, ay:1}
    const double h = -0.5 * std::log(0.5) - 2 * 0.25 * std::log(0.25);
    CHECK(e.resolution == doctest::Approx(h));
    CHECK(e.relevance == doctest::Approx(std::log(2.0)));

    CHECK(code_of([&] { project_columns(t, {3}); }) == Errc::BadColumn);
    CHECK(code_of([&] { project_columns(t, {}); }) == Errc::BadArgument);
    const CategoricalTable bad{{std::string("a\x1f") + "b", "c"}};
    CHECK(code_of([&] { project_columns(bad, {0, 1}); }) == Errc::BadLabel);
}

TEST_CASE("rank_sites") {
    CategoricalTable t;
    std::mt19937_64 g(3);
    for (int r = 0; r < 200; ++r) {
        const std::string c = std::to_string(g() % 4);
        t.push_back({std::to_string(g() % 4), "const", c, std::to_string(g() % 4)});
    }
    const auto cons = rank_sites(t, 4, SiteCriterion::conservation);
    CHECK(cons.front() == 1);
    auto perm = cons;
    std::sort(perm.begin(), perm.end());
    CHECK(perm == std::vector<std::size_t>{0, 1, 2, 3});
    const auto r1 = rank_sites(t, 4, SiteCriterion::random, 5);
    const auto r2 = rank_sites(t, 4, SiteCriterion::random, 5);
    CHECK(r1 == r2);
    CHECK(code_of([&] { rank_sites(t, 0, SiteCriterion::random); }) == Errc::BadArgument);
    CHECK(code_of([&] { rank_sites(t, 5, SiteCriterion::random); }) == Errc::BadArgument);
}

TEST_CASE("greedy relevance matches a step-by-step exhaustive search") {
    // Two coupled columns (identical heavy-tailed labels) among independent
    // noise columns.
    std::mt19937_64 g(17);
    CategoricalTable t;
    for (int r = 0; r < 300; ++r) {
        const auto u = std::uniform_real_distribution<double>(0, 1)(g);
        const std::string z = std::to_string(static_cast<int>(std::floor(1.0 / (u + 0.02))));
        std::vector<Label> row;
        for (int c = 0; c < 6; ++c) row.push_back(std::to_string(g() % 3));
        row[1] = z;
        row[4] = z;
        t.push_back(row);
    }
    const auto greedy = rank_sites(t, 2, SiteCriterion::greedy_relevance);
    // Oracle: the best first column, then the best partner, by brute force.
    std::size_t best1 = 0;
    double v1 = -1;
    for (std::size_t c = 0; c < 6; ++c) {
        const double v = entropy_summary(project_columns(t, {c})).relevance;
        if (v > v1) v1 = v, best1 = c;
    }
    std::size_t best2 = 0;
    double v2 = -1;
    for (std::size_t c = 0; c < 6; ++c) {
        if (c == best1) continue;
        const double v = entropy_summary(project_columns(t, {best1, c})).relevance;
        if (v > v2) v2 = v, best2 = c;
    }
    CHECK(greedy == std::vector<std::size_t>{best1, best2});
    // The heavy-tailed column wins the first step; its duplicate adds nothing
    // afterwards, so the partner is a noise column.
    CHECK((best1 == 1 || best1 == 4));
    CHECK(best2 != 1);
    CHECK(best2 != 4);
}

}
