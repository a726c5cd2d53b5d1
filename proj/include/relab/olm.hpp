#pragma once

#include <cstdint>
#include <vector>

namespace relab {

struct OLMSpec {
    std::vector<double> class_sizes;  // W_c >= 1
};

struct OLMSolution {
    double E0 = 0.0;
    double mu = 0.0;
    std::vector<double> E;  // E_c per class
    double resolution = 0.0;
    double noise = 0.0;
    double relevance = 0.0;
};

struct EntropyEnergyPoint {
    double mu = 0.0;
    double resolution = 0.0;
    double noise = 0.0;
};

struct HeatPoint {
    double beta_ratio = 0.0;
    double C = 0.0;
};

struct ModelRR {
    double H_s = 0.0;
    double H_E = 0.0;
    double delta = 0.0;
    double mean_log_degeneracy = 0.0;  // E[ln W(E)] over the binned levels
};

enum class SpinPattern { ferro, star, nested };

inline constexpr std::int64_t kMaxEnumeratedStates = std::int64_t{1} << 22;
inline constexpr double kDefaultDelta = 0.1;

OLMSpec pow2_spec(int C);
void validate(const OLMSpec& spec);

OLMSolution olm_optimal_costs(const OLMSpec& spec, double mu);
std::vector<EntropyEnergyPoint> olm_entropy_energy_curve(const OLMSpec& spec, const std::vector<double>& mu_grid);

// Log grid with `per_decade` points per factor of ten, spanning [lo, hi].
std::vector<double> log_grid(double lo, double hi, int per_decade);
std::vector<HeatPoint> specific_heat_curve(const OLMSpec& spec, double mu, const std::vector<double>& beta_ratios);

// Energies are coding costs up to an additive constant; the model is
// normalised internally.
ModelRR model_relevance(const std::vector<double>& energy, double delta = kDefaultDelta);

// Unnormalised coding costs -sum_{i<j} J_ij s_i s_j of all 2^n spin states.
std::vector<double> spin_energies(int n, SpinPattern pattern, double J, int star_l = 0);

}  // namespace relab
