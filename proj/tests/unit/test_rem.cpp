#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "relab/error.hpp"
#include "relab/rem.hpp"

using namespace relab;

namespace {

const double kLn2 = std::log(2.0);

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(double(i) / a.size() - double(j) / b.size()));
    }
    return d;
}

// Exact clamped-state law for gamma = 1: q(s) = integral of the density of
// u_s + max_s times the CDFs of every other state's score.
std::vector<double> exact_clamped(const std::vector<double>& u, double n_t, double delta_t) {
    const double m = std::pow(2.0, n_t);
    auto log_cdf = [&](double y) { return y <= 0.0 ? -INFINITY : m * std::log1p(-std::exp(-y / delta_t)); };
    auto pdf = [&](double y) {
        if (y <= 0.0) return 0.0;
        const double t = std::exp(-y / delta_t);
        return m / delta_t * t * std::exp((m - 1.0) * std::log1p(-t));
    };
    const double top = *std::max_element(u.begin(), u.end());
    const double h = 1e-4;
    std::vector<double> q(u.size(), 0.0);
    for (double x = top + 0.5 * h; x < top + 40.0 * delta_t + n_t; x += h) {
        double total = 0.0;
        for (double us : u) total += log_cdf(x - us);
        for (std::size_t s = 0; s < u.size(); ++s) {
            const double y = x - u[s];
            if (y <= 0.0) continue;
            q[s] += h * pdf(y) * std::exp(total - log_cdf(y));
        }
    }
    return q;
}

double tv(const std::vector<double>& p, const std::vector<double>& q) {
    double d = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) d += std::abs(p[i] - q[i]);
    return 0.5 * d;
}

std::vector<double> gibbs(const std::vector<double>& u, double beta) {
    const double top = *std::max_element(u.begin(), u.end());
    std::vector<double> q(u.size());
    double z = 0.0;
    for (std::size_t s = 0; s < u.size(); ++s) z += (q[s] = std::exp(beta * (u[s] - top)));
    for (auto& x : q) x /= z;
    return q;
}

double entropy(const std::vector<double>& q) {
    double h = 0.0;
    for (double p : q)
        if (p > 0.0) h -= p * std::log(p);
    return h;
}

}  // namespace

TEST_SUITE("rem") {

TEST_CASE("critical parameters") {
    const auto one = rem_critical_params(37.0, 1.0, 2.5);
    CHECK(one.delta_t_star == doctest::Approx(1.0));
    CHECK(one.beta == doctest::Approx(0.4));
    const auto two = rem_critical_params(100.0, 2.0, 1.0);
    CHECK(two.delta_t_star == doctest::Approx(16.651).epsilon(1e-4));
    CHECK(two.delta_t_star == doctest::Approx(2.0 * std::sqrt(100.0 * kLn2)).epsilon(1e-14));
    CHECK(rem_critical_params(100.0, 2.0, two.delta_t_star).beta == doctest::Approx(1.0));
    const auto half = rem_critical_params(20.0, 0.5, 1.0);
    CHECK(half.delta_t_star == doctest::Approx(0.5 / (20.0 * kLn2)).epsilon(1e-14));
    CHECK_THROWS_AS(rem_critical_params(0.0, 1.0, 1.0), Error);
    CHECK_THROWS_AS(rem_critical_params(1.0, -1.0, 1.0), Error);
}

TEST_CASE("critical nu") {
    CHECK(rem_nu_star(2.0, 1.0) == doctest::Approx(1.0));
    CHECK(rem_nu_star(2.0, 0.5) == doctest::Approx(4.0));
    CHECK(rem_nu_star(3.0, 2.0) == doctest::Approx(std::pow(2.0, -1.5)));
    CHECK(rem_nu_star(0.5, 2.0) == doctest::Approx(1.0));
    CHECK(std::isnan(rem_nu_star(1.0, 3.0)));
}

TEST_CASE("survival function and its inverse") {
    for (double n_t : {0.0, 3.0, 20.0, 200.0}) {
        for (double g : {0.5, 1.0, 2.0}) {
            for (double s : {1e-12, 1e-3, 0.2, 0.5, 0.9, 0.999999}) {
                const double x = extreme_survival_inverse(s, n_t, g, 1.5);
                CHECK(extreme_survival(x, n_t, g, 1.5) == doctest::Approx(s).epsilon(1e-6));
            }
        }
    }
    CHECK(extreme_survival(-1.0, 5.0, 1.0, 1.0) == 1.0);
    CHECK(extreme_survival(2.0, 0.0, 1.0, 1.0) == doctest::Approx(std::exp(-2.0)));
}

TEST_CASE("extreme values with a single draw follow the base law") {
    const std::int64_t n = 20000;
    auto xs = sample_extreme_value(0.0, 1.5, 2.0, n, 17);
    std::sort(xs.begin(), xs.end());
    double d = 0.0;
    for (std::int64_t i = 0; i < n; ++i) {
        const double F = 1.0 - std::exp(-std::pow(xs[i] / 2.0, 1.5));
        d = std::max({d, std::abs(F - double(i) / n), std::abs(F - double(i + 1) / n)});
    }
    CHECK(d < 1.63 / std::sqrt(double(n)));
}

TEST_CASE("extreme values match brute-force maxima") {
    const std::int64_t n = 10000;
    const auto xs = sample_extreme_value(10.0, 1.0, 1.0, n, 3);
    std::mt19937_64 gen(12345);
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> brute(n);
    for (auto& b : brute) {
        double m = 0.0;
        for (int j = 0; j < 1024; ++j) m = std::max(m, expo(gen));
        b = m;
    }
    // Two-sample KS critical value at the 1% level.
    CHECK(ks_two_sample(xs, brute) < 1.628 * std::sqrt(2.0 / n));
}

TEST_CASE("Gumbel mean for exponential tails") {
    const std::int64_t n = 40000;
    for (double n_t : {20.0, 60.0}) {
        const auto xs = sample_extreme_value(n_t, 1.0, 1.0, n, 99);
        double m = 0.0;
        for (double x : xs) m += x;
        m /= n;
        const double se = (M_PI / std::sqrt(6.0)) / std::sqrt(double(n));
        CHECK(std::abs(m - (n_t * kLn2 + 0.5772156649)) < 3.0 * se);
    }
}

TEST_CASE("extreme-value sampling is deterministic and validated") {
    CHECK(sample_extreme_value(5.0, 1.0, 1.0, 100, 1) == sample_extreme_value(5.0, 1.0, 1.0, 100, 1));
    CHECK(sample_extreme_value(5.0, 1.0, 1.0, 100, 1) != sample_extreme_value(5.0, 1.0, 1.0, 100, 2));
    CHECK_THROWS_AS(sample_extreme_value(-1.0, 1.0, 1.0, 10, 0), Error);
    CHECK_THROWS_AS(sample_extreme_value(1.0, 1.0, 1.0, -1, 0), Error);
}

TEST_CASE("clamped states follow the Gibbs law deep in the extreme-value limit") {
    REMConfig c;
    c.n_s = 8;
    c.n_t = 30.0;
    c.gamma_s = c.gamma_t = 1.0;
    c.delta_s = 1.0;
    c.delta_t = 1.0;
    c.replicas = 100000;
    c.mode = REMMode::empirical;
    c.seed = 21;
    const auto r = rem_simulate(c);
    REQUIRE(r.q_hat.size() == 256);
    const auto u = rem_quenched_u(c, 0);
    CHECK(r.beta == doctest::Approx(1.0));
    CHECK(tv(r.q_hat, gibbs(u, r.beta)) < 0.02);
    CHECK(r.beta_effective == doctest::Approx(1.0).epsilon(0.1));
    CHECK(r.ties == 0);
}

TEST_CASE("pruned sampler and brute force agree with the exact finite law") {
    REMConfig c;
    c.n_s = 6;
    c.n_t = 2.0;
    c.delta_s = 1.0;
    c.delta_t = 1.0;
    c.replicas = 200000;
    c.mode = REMMode::empirical;
    c.seed = 4;
    const auto u = rem_quenched_u(c, 0);
    const auto exact = exact_clamped(u, c.n_t, c.delta_t);
    double mass = 0.0;
    for (double q : exact) mass += q;
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-3));

    const auto pruned = rem_simulate(c).q_hat;
    const auto counts = rem_bruteforce_counts(c);
    std::vector<double> brute(counts.size());
    for (std::size_t s = 0; s < counts.size(); ++s) brute[s] = double(counts[s]) / c.replicas;
    CHECK(tv(pruned, exact) < 0.015);
    CHECK(tv(brute, exact) < 0.015);
}

TEST_CASE("quenched draws depend on seed and realisation only") {
    REMConfig c;
    c.n_s = 10;
    c.seed = 8;
    const auto a = rem_quenched_u(c, 3);
    c.n_t = 99.0;
    c.delta_t = 7.0;
    CHECK(rem_quenched_u(c, 3) == a);
    CHECK(rem_quenched_u(c, 4) != a);
    for (double x : a) CHECK(x >= 0.0);
}

TEST_CASE("exact mode reproduces the Gibbs entropy") {
    REMConfig c;
    c.n_s = 12;
    c.n_t = 40.0;
    c.gamma_s = c.gamma_t = 2.0;
    c.delta_s = 1.0;
    c.delta_t = 1.0;
    c.seed = 6;
    c.realizations = 1;
    const auto r = rem_simulate(c);
    const auto q = gibbs(rem_quenched_u(c, 0), r.beta);
    CHECK(r.H_s_star == doctest::Approx(entropy(q)).epsilon(1e-10));
    REQUIRE(r.q_hat.size() == q.size());
    CHECK(tv(r.q_hat, q) < 1e-12);
    CHECK(r.enumerated);
}

TEST_CASE("extended and localised phases for exponential tails") {
    REMConfig c;
    c.n_s = 16;
    c.n_t = 16.0;
    c.delta_t = 1.0;
    c.realizations = 20;
    c.seed = 1;
    c.delta_s = 0.1;
    const auto extended = rem_simulate(c);
    CHECK(extended.H_s_star == doctest::Approx(16 * kLn2).epsilon(0.05));
    c.delta_s = 10.0;
    const auto localised = rem_simulate(c);
    CHECK(localised.H_s_star < 0.2);
    CHECK(localised.H_s_star >= 0.0);
    CHECK(extended.H_u > localised.H_u);
}

TEST_CASE("entropy shrinks linearly below the critical nu for gamma = 2") {
    REMConfig c;
    c.n_s = 400;
    c.gamma_s = c.gamma_t = 2.0;
    c.delta_s = c.delta_t = 1.0;
    c.n_t = 0.5 * 400;
    c.realizations = 4;
    c.seed = 2;
    const auto r = rem_simulate(c);
    CHECK_FALSE(r.enumerated);
    CHECK(r.normalized == doctest::Approx(0.5).epsilon(0.1));
    CHECK(std::abs(r.normalized - 0.5) < 0.05);
}

TEST_CASE("gamma = 1 curves do not depend on nu") {
    REMConfig c;
    c.n_s = 14;
    c.realizations = 3;
    c.seed = 5;
    const auto d = rem_phase_diagram(1.0, {0.5, 1.0, 2.0}, {0.5, 1.0, 3.0}, c);
    REQUIRE(d.H.size() == 9);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(std::isnan(d.nu_star[i]));
        for (std::size_t j = 1; j < 3; ++j)
            CHECK(std::abs(d.H[i * 3 + j] - d.H[i * 3]) <= 2.0 * (d.H_se[i * 3] + d.H_se[i * 3 + j]) + 1e-12);
    }
    CHECK(d.H[0] > d.H[3]);
    CHECK(d.H[3] > d.H[6]);
}

TEST_CASE("phase diagram boundary and grid layout") {
    REMConfig c;
    c.n_s = 10;
    c.realizations = 1;
    const auto d = rem_phase_diagram(2.0, {1.0, 0.5}, {0.25, 2.0}, c);
    CHECK(d.nu_star[0] == doctest::Approx(1.0));
    CHECK(d.nu_star[1] == doctest::Approx(4.0));
    CHECK(d.H.size() == 4);
    for (double h : d.H) {
        CHECK(h >= 0.0);
        CHECK(h <= 1.0);
    }
    CHECK_THROWS_AS(rem_phase_diagram(2.0, {}, {1.0}, c), Error);
    CHECK_THROWS_AS(rem_phase_diagram(2.0, {1.0}, {-1.0}, c), Error);
}

TEST_CASE("configuration limits") {
    REMConfig c;
    c.n_s = 23;
    c.mode = REMMode::empirical;
    c.replicas = 10;
    try {
        rem_simulate(c);
        FAIL("expected TooLarge");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::TooLarge);
    }
    c.n_s = 0;
    CHECK_THROWS_AS(rem_simulate(c), Error);
    c.n_s = 4;
    c.replicas = 0;
    CHECK_THROWS_AS(rem_simulate(c), Error);
}

TEST_CASE("results are reproducible") {
    REMConfig c;
    c.n_s = 9;
    c.n_t = 12.0;
    c.mode = REMMode::empirical;
    c.replicas = 5000;
    c.realizations = 3;
    c.seed = 77;
    const auto a = rem_simulate(c);
    const auto b = rem_simulate(c);
    CHECK(a.H_s_star == b.H_s_star);
    CHECK(a.q_hat == b.q_hat);
    CHECK(a.beta_effective == b.beta_effective);
}

}  // TEST_SUITE
