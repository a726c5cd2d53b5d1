#include "relab/inference.hpp"

#include <cmath>

#include "relab/error.hpp"
#include "relab/random.hpp"

namespace relab {

namespace {

constexpr double kTwoPi = 6.28318530717958647693;

double digamma(double x) {
    double acc = 0.0;
    while (x < 6.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    const double f = 1.0 / (x * x);
    return acc + std::log(x) - 0.5 / x -
           f * (1.0 / 12 - f * (1.0 / 120 - f * (1.0 / 252 - f * (1.0 / 240 - f * (1.0 / 132)))));
}

double log_beta_fn(double a, double b) { return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b); }

void check_bernoulli(std::int64_t N, std::int64_t k) {
    if (N < 1) fail(Errc::BadArgument, "N must be >= 1");
    if (k < 0 || k > N) fail(Errc::BadArgument, "k must lie in [0, N]");
}

}  // namespace

void validate(const GaussianPosteriorSummary& s) {
    if (s.r < 0) fail(Errc::BadArgument, "r must be >= 0");
    if (!(s.N >= 1.0) || !std::isfinite(s.N)) fail(Errc::BadArgument, "N must be >= 1");
    if (!std::isfinite(s.logdet_L) || !std::isfinite(s.log_prior_at_mle) || !std::isfinite(s.loglik_max))
        fail(Errc::BadArgument, "summary fields must be finite");
}

double kl_posterior_prior(const GaussianPosteriorSummary& s) {
    validate(s);
    const double r = s.r;
    return 0.5 * r * std::log(s.N / (kTwoPi * std::exp(1.0))) + 0.5 * s.logdet_L - s.log_prior_at_mle;
}

EvidenceForms log_evidence(const GaussianPosteriorSummary& s) {
    EvidenceForms e;
    e.kl = kl_posterior_prior(s);
    const double r = s.r;
    e.bms = s.loglik_max - e.kl - 0.5 * r;
    e.laplace = s.loglik_max + 0.5 * r * std::log(kTwoPi / s.N) - 0.5 * s.logdet_L + s.log_prior_at_mle;
    return e;
}

BoundResult param_bound(std::int64_t N, double relevance) {
    if (N < 2) fail(Errc::BadArgument, "parameter bound needs N >= 2");
    if (!(relevance >= 0.0) || !std::isfinite(relevance)) fail(Errc::BadArgument, "relevance must be finite and >= 0");
    BoundResult b;
    const double n = static_cast<double>(N);
    b.raw = 2.0 * relevance * n / std::log(n);
    b.r_max = static_cast<std::int64_t>(std::floor(b.raw));
    return b;
}

GaussianPosteriorSummary bernoulli_summary(std::int64_t N, std::int64_t k) {
    check_bernoulli(N, k);
    if (k == 0 || k == N) fail(Errc::Degenerate, "MLE on the boundary has no Gaussian approximation");
    const double n = static_cast<double>(N), th = static_cast<double>(k) / n;
    GaussianPosteriorSummary s;
    s.r = 1;
    s.N = n;
    s.logdet_L = -std::log(th * (1.0 - th));
    s.log_prior_at_mle = 0.0;
    s.loglik_max = k * std::log(th) + (N - k) * std::log1p(-th);
    return s;
}

double bernoulli_kl_exact(std::int64_t N, std::int64_t k) {
    check_bernoulli(N, k);
    // KL(Beta(a,b) || U(0,1)) is minus the differential entropy of the Beta.
    const double a = static_cast<double>(k) + 1.0, b = static_cast<double>(N - k) + 1.0;
    const double h = log_beta_fn(a, b) - (a - 1.0) * digamma(a) - (b - 1.0) * digamma(b) +
                     (a + b - 2.0) * digamma(a + b);
    return -h;
}

double bernoulli_kl_monte_carlo(std::int64_t N, std::int64_t k, std::int64_t draws, std::uint64_t seed) {
    check_bernoulli(N, k);
    if (draws < 1) fail(Errc::BadArgument, "draws must be >= 1");
    const std::int64_t a = k + 1, b = N - k + 1;
    const double lb = log_beta_fn(static_cast<double>(a), static_cast<double>(b));
    Rng rng(seed);
    double acc = 0.0;
    for (std::int64_t d = 0; d < draws; ++d) {
        // Integer-shape Beta as a ratio of sums of unit exponentials.
        double ga = 0.0, gb = 0.0;
        for (std::int64_t i = 0; i < a; ++i) ga += exponential1(rng);
        for (std::int64_t i = 0; i < b; ++i) gb += exponential1(rng);
        const double lt = std::log(ga) - std::log(ga + gb);
        const double l1t = std::log(gb) - std::log(ga + gb);
        acc += (a - 1) * lt + (b - 1) * l1t - lb;
    }
    return acc / static_cast<double>(draws);
}

}  // namespace relab
