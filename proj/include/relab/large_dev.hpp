#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "relab/random.hpp"
#include "relab/sample.hpp"

namespace relab {

struct LDTConfig {
    double a = 0.0;            // Dirichlet concentration; 0 selects 1/M
    std::int64_t M = 0;        // 0 selects 2N
    std::int64_t N_prime = 0;  // 0 selects N
    double beta = 0.0;
    std::int64_t sweeps = 1000000;
    std::int64_t burnin = 100000;
    std::int64_t thin = 100;
    std::uint64_t seed = 0;
};

struct ChainSample {
    const std::vector<std::int64_t>* q = nullptr;  // occupation of each of the M states
    double Hq_s = 0.0;
    double Hq_k = 0.0;
    std::int64_t sweep = 0;
};

struct ChainStats {
    std::int64_t emitted = 0;
    std::int64_t proposals = 0;
    std::int64_t accepted = 0;
};

struct SweepRecord {
    double beta = 0.0;
    double Hq_s = 0.0;
    double Hq_k = 0.0;
    double Hq_s_se = 0.0;
    double Hq_k_se = 0.0;
    double acceptance = 0.0;
    std::int64_t emitted = 0;
};

struct SweepResult {
    std::int64_t N_prime = 0;
    std::int64_t M = 0;
    std::vector<SweepRecord> records;
};

enum class TransitionKind { none, continuous, discontinuous };

struct Transition {
    double beta_c = 0.0;
    TransitionKind kind = TransitionKind::none;
};

// Resolves the defaults (M = 2N, N' = N) and checks the invariants.
LDTConfig resolve(const FrequencyProfile& freq, const LDTConfig& config);

// Observed counts in label order, padded with zeros up to M states.
std::vector<std::int64_t> pooled_counts(const FrequencyProfile& freq, std::int64_t M);

std::vector<std::int64_t> polya_urn_counts(const std::vector<std::int64_t>& k, double a, std::int64_t n_prime,
                                           Rng& rng);
Sample posterior_predictive_sample(const FrequencyProfile& freq, const LDTConfig& config);

// Log of the unnormalised tilted weight of one generated sequence with
// occupations q, evaluated from scratch.
double log_tilted_weight(const std::vector<std::int64_t>& k, const std::vector<std::int64_t>& q, double a,
                         double beta);
// Log Metropolis ratio for moving one observation from state s to state t,
// touching only the two affected states.
double log_move_ratio(const std::vector<std::int64_t>& k, const std::vector<std::int64_t>& q, double a,
                      double beta, std::size_t s, std::size_t t);

ChainStats mcmc_tilted_chain(const FrequencyProfile& freq, const LDTConfig& config,
                             const std::function<void(const ChainSample&)>& emit);
SweepResult beta_sweep(const FrequencyProfile& freq, const LDTConfig& config, const std::vector<double>& betas);
Transition detect_transition(const SweepResult& sweep);

}  // namespace relab
