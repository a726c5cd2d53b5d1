#pragma once

#include <cstdint>

namespace relab {

struct GaussianPosteriorSummary {
    int r = 0;
    double N = 1.0;
    double logdet_L = 0.0;  // ln det of minus the per-sample Hessian at the MLE
    double log_prior_at_mle = 0.0;
    double loglik_max = 0.0;
};

struct EvidenceForms {
    double kl = 0.0;
    double bms = 0.0;      // loglik_max - kl - r/2
    double laplace = 0.0;  // direct Gaussian-integral form
};

struct BoundResult {
    std::int64_t r_max = 0;
    double raw = 0.0;
};

void validate(const GaussianPosteriorSummary& s);
double kl_posterior_prior(const GaussianPosteriorSummary& s);
EvidenceForms log_evidence(const GaussianPosteriorSummary& s);

// Approximate upper bound on the number of parameters: 2 H[k] N / ln N.
BoundResult param_bound(std::int64_t N, double relevance);

// Bernoulli model, uniform prior, k successes out of N.
GaussianPosteriorSummary bernoulli_summary(std::int64_t N, std::int64_t k);
double bernoulli_kl_exact(std::int64_t N, std::int64_t k);
double bernoulli_kl_monte_carlo(std::int64_t N, std::int64_t k, std::int64_t draws, std::uint64_t seed);

}  // namespace relab
