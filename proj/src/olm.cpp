#include "relab/olm.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "relab/error.hpp"

namespace relab {

namespace {

double log_sum_exp(const std::vector<double>& x) {
    const double m = *std::max_element(x.begin(), x.end());
    if (!std::isfinite(m)) return m;
    double s = 0.0;
    for (double v : x) s += std::exp(v - m);
    return m + std::log(s);
}

}  // namespace

OLMSpec pow2_spec(int C) {
    if (C < 1 || C > 1000) fail(Errc::BadArgument, "class count must lie in [1, 1000]");
    OLMSpec s;
    for (int c = 0; c < C; ++c) s.class_sizes.push_back(std::ldexp(1.0, c));
    return s;
}

void validate(const OLMSpec& spec) {
    if (spec.class_sizes.empty()) fail(Errc::EmptyInput, "OLM spec has no classes");
    for (double w : spec.class_sizes)
        if (!(w >= 1.0) || !std::isfinite(w)) fail(Errc::BadArgument, "class sizes must be finite and >= 1");
}

OLMSolution olm_optimal_costs(const OLMSpec& spec, double mu) {
    validate(spec);
    if (!(mu > 0.0) || !std::isfinite(mu)) fail(Errc::BadArgument, "mu must be positive and finite");
    const auto& W = spec.class_sizes;
    const std::size_t C = W.size();

    // Normalisation sum_c W_c exp(-E0 - ln W_c / mu) = 1 solves in closed form.
    std::vector<double> terms(C);
    for (std::size_t c = 0; c < C; ++c) terms[c] = (1.0 - 1.0 / mu) * std::log(W[c]);
    OLMSolution s;
    s.mu = mu;
    s.E0 = log_sum_exp(terms);
    if (!std::isfinite(s.E0)) fail(Errc::NumericalFailure, "normalisation constant is not finite");
    s.E.resize(C);
    // Each class is its own level, even when two classes share an energy.
    for (std::size_t c = 0; c < C; ++c) {
        s.E[c] = s.E0 + std::log(W[c]) / mu;
        const double P = std::exp(terms[c] - s.E0);
        s.resolution += P * s.E[c];
        if (P > 0.0) s.relevance -= P * std::log(P);
        s.noise += P * std::log(W[c]);
    }
    return s;
}

std::vector<EntropyEnergyPoint> olm_entropy_energy_curve(const OLMSpec& spec, const std::vector<double>& mu_grid) {
    if (mu_grid.empty()) fail(Errc::BadArgument, "empty mu grid");
    std::vector<EntropyEnergyPoint> out;
    for (double mu : mu_grid) {
        const auto s = olm_optimal_costs(spec, mu);
        out.push_back({mu, s.resolution, s.noise});
    }
    std::stable_sort(out.begin(), out.end(), [](const EntropyEnergyPoint& a, const EntropyEnergyPoint& b) {
        return a.resolution < b.resolution;
    });
    return out;
}

std::vector<double> log_grid(double lo, double hi, int per_decade) {
    if (!(lo > 0.0) || !(hi >= lo) || per_decade < 1) fail(Errc::BadArgument, "invalid log grid");
    std::vector<double> g;
    const int a = static_cast<int>(std::floor(std::log10(lo) * per_decade + 1e-9));
    const int b = static_cast<int>(std::ceil(std::log10(hi) * per_decade - 1e-9));
    for (int i = a; i <= b; ++i) g.push_back(std::pow(10.0, static_cast<double>(i) / per_decade));
    return g;
}

std::vector<HeatPoint> specific_heat_curve(const OLMSpec& spec, double mu, const std::vector<double>& beta_ratios) {
    const OLMSolution sol = olm_optimal_costs(spec, mu);
    const auto& W = spec.class_sizes;
    std::vector<HeatPoint> out;
    std::vector<double> lw(W.size());
    for (double r : beta_ratios) {
        if (!(r > 0.0) || !std::isfinite(r)) fail(Errc::BadArgument, "beta ratios must be positive");
        for (std::size_t c = 0; c < W.size(); ++c) lw[c] = std::log(W[c]) - r * sol.E[c];
        const double lz = log_sum_exp(lw);
        double mean = 0.0;
        for (std::size_t c = 0; c < W.size(); ++c) mean += std::exp(lw[c] - lz) * sol.E[c];
        double var = 0.0;
        for (std::size_t c = 0; c < W.size(); ++c) {
            const double d = sol.E[c] - mean;
            var += std::exp(lw[c] - lz) * d * d;
        }
        out.push_back({r, r * r * var});
    }
    return out;
}

ModelRR model_relevance(const std::vector<double>& energy, double delta) {
    if (energy.empty()) fail(Errc::EmptyInput, "no states");
    if (static_cast<std::int64_t>(energy.size()) > kMaxEnumeratedStates)
        fail(Errc::TooLarge, "more than 2^22 states");
    if (!(delta > 0.0) || !std::isfinite(delta)) fail(Errc::BadArgument, "delta must be positive");
    for (double e : energy)
        if (!std::isfinite(e)) fail(Errc::BadData, "non-finite energy");

    std::vector<double> neg(energy.size());
    for (std::size_t i = 0; i < energy.size(); ++i) neg[i] = -energy[i];
    const double lz = log_sum_exp(neg);

    ModelRR out;
    out.delta = delta;
    std::map<double, std::pair<double, double>> bins;  // bin -> (mass, state count)
    for (double e0 : energy) {
        const double E = e0 + lz;
        const double p = std::exp(-E);
        out.H_s += p * E;
        auto& b = bins[std::floor(E / delta)];
        b.first += p;
        b.second += 1.0;
    }
    for (const auto& [_, b] : bins) {
        if (b.first > 0.0) out.H_E -= b.first * std::log(b.first);
        out.mean_log_degeneracy += b.first * std::log(b.second);
    }
    out.H_s = std::max(0.0, out.H_s);
    out.H_E = std::max(0.0, out.H_E);
    return out;
}

std::vector<double> spin_energies(int n, SpinPattern pattern, double J, int star_l) {
    if (n < 1 || n > 22) fail(Errc::TooLarge, "spin models are enumerated only up to n = 22");
    if (!std::isfinite(J)) fail(Errc::BadArgument, "coupling must be finite");
    if (pattern == SpinPattern::star && (star_l < 0 || star_l > n)) fail(Errc::BadArgument, "star size out of range");
    // 1-based site labels, as in the usual statement of these sign patterns.
    std::vector<double> Jm(static_cast<std::size_t>(n * n), 0.0);
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            double sign = 1.0;
            if (pattern == SpinPattern::star && i == 1 && j <= star_l) sign = -1.0;
            if (pattern == SpinPattern::nested && 2 * (i + j) <= n) sign = -1.0;
            Jm[static_cast<std::size_t>((i - 1) * n + (j - 1))] = sign * J;
        }
    }
    const std::size_t states = std::size_t{1} << n;
    std::vector<double> E(states);
    std::vector<double> s(static_cast<std::size_t>(n));
    for (std::size_t x = 0; x < states; ++x) {
        for (int i = 0; i < n; ++i) s[i] = ((x >> i) & 1U) ? 1.0 : -1.0;
        double acc = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) acc += Jm[static_cast<std::size_t>(i * n + j)] * s[i] * s[j];
        E[x] = -acc;
    }
    return E;
}

}  // namespace relab
