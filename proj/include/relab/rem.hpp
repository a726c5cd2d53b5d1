#pragma once

#include <cstdint>
#include <vector>

namespace relab {

enum class REMMode { empirical, evt };

struct REMConfig {
    int n_s = 16;
    double n_t = 16.0;
    double gamma_s = 1.0;
    double gamma_t = 1.0;
    double delta_s = 1.0;
    double delta_t = 1.0;
    std::int64_t replicas = 100000;
    std::int64_t realizations = 1;  // independent quenched draws of u
    std::uint64_t seed = 0;
    REMMode mode = REMMode::evt;
    double h_delta = 0.1;  // discretisation of u for H_u
};

struct REMCritical {
    double delta_t_star = 0.0;
    double beta = 0.0;
};

struct REMResult {
    double H_s_star = 0.0;     // realisation average
    double H_s_star_se = 0.0;  // standard error over realisations
    double H_u = 0.0;
    double normalized = 0.0;  // H_s_star / (n_s ln 2)
    double beta = 0.0;        // beta from the critical parameters
    double beta_effective = 0.0;
    std::int64_t ties = 0;
    bool enumerated = false;
    std::vector<double> q_hat;  // first realisation, when states were enumerated
};

struct PhaseDiagram {
    double gamma = 0.0;
    std::vector<double> ratios;
    std::vector<double> nus;
    std::vector<double> nu_star;  // per ratio
    std::vector<double> H;        // ratios.size() x nus.size(), row-major, normalised
    std::vector<double> H_se;
};

inline constexpr int kMaxEnumeratedSpins = 22;

REMCritical rem_critical_params(double n_t, double gamma_t, double delta_t);
double rem_nu_star(double gamma, double ratio);

// Exact inverse-CDF draws of the maximum of 2^n_t iid stretched exponentials.
std::vector<double> sample_extreme_value(double n_t, double gamma_t, double delta_t, std::int64_t count,
                                         std::uint64_t seed);
// P(max > x) for the same maximum, and its inverse.
double extreme_survival(double x, double n_t, double gamma_t, double delta_t);
double extreme_survival_inverse(double s, double n_t, double gamma_t, double delta_t);

REMResult rem_simulate(const REMConfig& config);

// Brute-force reference for the empirical mode: one explicit extreme-value
// draw per state per replica. Returns clamped-state counts.
std::vector<std::int64_t> rem_bruteforce_counts(const REMConfig& config);
// The quenched u of realisation r, as used by both empirical samplers.
std::vector<double> rem_quenched_u(const REMConfig& config, std::int64_t realization);

PhaseDiagram rem_phase_diagram(double gamma, const std::vector<double>& ratio_grid,
                               const std::vector<double>& nu_grid, const REMConfig& config);

}  // namespace relab
