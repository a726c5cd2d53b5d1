#include "relab/rem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "relab/error.hpp"
#include "relab/parallel.hpp"
#include "relab/random.hpp"

namespace relab {

namespace {

constexpr double kLn2 = 0.69314718055994530942;
constexpr std::size_t kTopPoints = 4096;
constexpr double kMaxCells = 16777216.0;

void check_config(const REMConfig& c) {
    if (c.n_s < 1 || c.n_s > 4096) fail(Errc::BadArgument, "n_s must lie in [1, 4096]");
    if (!(c.n_t >= 0.0) || !std::isfinite(c.n_t)) fail(Errc::BadArgument, "n_t must be finite and >= 0");
    for (double v : {c.gamma_s, c.gamma_t, c.delta_s, c.delta_t})
        if (!(v > 0.0) || !std::isfinite(v)) fail(Errc::BadArgument, "gamma and delta parameters must be positive");
    if (c.realizations < 1) fail(Errc::BadArgument, "realizations must be >= 1");
    if (!(c.h_delta > 0.0)) fail(Errc::BadArgument, "H_u discretisation must be positive");
    if (c.mode == REMMode::empirical) {
        if (c.n_s > kMaxEnumeratedSpins)
            fail(Errc::TooLarge, "empirical mode enumerates states and is limited to n_s <= 22");
        if (c.replicas < 1) fail(Errc::BadArgument, "replicas must be >= 1");
    }
}

double stretched_inverse_survival(double log_s, double gamma, double delta) {
    // Survival exp(-(u/delta)^gamma) = exp(log_s).
    return delta * std::pow(std::max(0.0, -log_s), 1.0 / gamma);
}

double log_sum_exp(const std::vector<double>& x) {
    double m = -std::numeric_limits<double>::infinity();
    for (double v : x) m = std::max(m, v);
    double s = 0.0;
    for (double v : x) s += std::exp(v - m);
    return m + std::log(s);
}

// Weighted atoms of the clamped distribution: state energies u with
// multiplicities (exact states have multiplicity 1).
struct Atoms {
    std::vector<double> u;
    std::vector<double> log_mult;
};

struct GibbsSummary {
    double H = 0.0;
    double H_u = 0.0;
};

GibbsSummary gibbs_entropies(const Atoms& a, double beta, double h_delta, std::vector<double>* q_out) {
    std::vector<double> lw(a.u.size());
    for (std::size_t i = 0; i < a.u.size(); ++i) lw[i] = a.log_mult[i] + beta * a.u[i];
    const double lz = log_sum_exp(lw);
    double mean_u = 0.0;
    std::map<double, double> bins;
    if (q_out) q_out->assign(a.u.size(), 0.0);
    for (std::size_t i = 0; i < a.u.size(); ++i) {
        const double p = std::exp(lw[i] - lz);
        mean_u += p * a.u[i];
        bins[std::floor(a.u[i] / h_delta)] += p;
        if (q_out) (*q_out)[i] = p;
    }
    GibbsSummary g;
    // For q proportional to exp(beta u): -sum q ln q = ln Z - beta <u>,
    // counting every state inside a multiplicity atom.
    g.H = lz - beta * mean_u;
    for (const auto& [_, p] : bins)
        if (p > 0.0) g.H_u -= p * std::log(p);
    return g;
}

std::vector<double> draw_states(int n_s, double gamma, double delta, Rng& rng) {
    std::vector<double> u(std::size_t{1} << n_s);
    for (auto& x : u) x = stretched_inverse_survival(std::log(uniform01(rng)), gamma, delta);
    return u;
}

// Energies of 2^n_s iid states without enumerating them: the largest
// kTopPoints come from the exact order statistics of the Poisson point
// process S * survival(u), the rest are Poisson counts in cells of width h.
Atoms sampled_density_of_states(const REMConfig& c, double beta, Rng& rng) {
    const double lnS = c.n_s * kLn2;
    Atoms a;
    double gamma_sum = 0.0;
    for (std::size_t j = 0; j < kTopPoints; ++j) {
        gamma_sum += exponential1(rng);
        const double log_s = std::log(gamma_sum) - lnS;
        if (log_s >= 0.0) break;
        a.u.push_back(stretched_inverse_survival(log_s, c.gamma_s, c.delta_s));
        a.log_mult.push_back(0.0);
    }
    const double u_top = a.u.empty() ? 0.0 : a.u.back();
    const double m = std::max(10.0, std::ceil(beta));
    const double h = c.h_delta / m;
    const double cells = std::ceil(u_top / h);
    if (cells > kMaxCells) fail(Errc::TooLarge, "density-of-states grid exceeds 2^24 cells");
    auto log_tail = [&](double u) { return lnS - std::pow(u / c.delta_s, c.gamma_s); };
    for (double i = 0; i < cells; i += 1.0) {
        const double u1 = i * h;
        const double u2 = std::min(u_top, u1 + h);
        const double L1 = log_tail(u1), L2 = log_tail(u2);
        const double mean = std::exp(L1) * -std::expm1(L2 - L1);
        double count;
        if (mean < 1e12) count = static_cast<double>(poisson(rng, mean));
        else count = std::max(0.0, std::round(mean + std::sqrt(mean) * standard_normal(rng)));
        if (count <= 0.0) continue;
        a.u.push_back(0.5 * (u1 + u2));
        a.log_mult.push_back(std::log(count));
    }
    return a;
}

double geometric_skip(Rng& rng, double p) {
    if (p >= 1.0) return 0.0;
    return std::floor(std::log(uniform01(rng)) / std::log1p(-p));
}

// Moment matching: the beta whose Gibbs average of u equals the observed one.
double moment_matched_beta(const std::vector<double>& u, double target) {
    auto mean_at = [&](double b) {
        double m = -std::numeric_limits<double>::infinity();
        for (double x : u) m = std::max(m, b * x);
        double z = 0.0, s = 0.0;
        for (double x : u) {
            const double w = std::exp(b * x - m);
            z += w;
            s += w * x;
        }
        return s / z;
    };
    double lo = 0.0, hi = 1.0;
    if (mean_at(lo) >= target) return 0.0;
    while (mean_at(hi) < target && hi < 1e6) hi *= 2.0;
    for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        (mean_at(mid) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

struct RealizationOutcome {
    double H = 0.0;
    double H_u = 0.0;
    double beta_eff = 0.0;
    std::int64_t ties = 0;
    std::vector<double> q;
};

RealizationOutcome run_evt(const REMConfig& c, double beta, std::int64_t r, bool keep_q) {
    Rng rng(derive_seed(c.seed, static_cast<std::uint64_t>(2 * r)));
    RealizationOutcome out;
    Atoms a;
    if (c.n_s <= kMaxEnumeratedSpins) {
        a.u = draw_states(c.n_s, c.gamma_s, c.delta_s, rng);
        a.log_mult.assign(a.u.size(), 0.0);
    } else {
        a = sampled_density_of_states(c, beta, rng);
        keep_q = false;
    }
    const GibbsSummary g = gibbs_entropies(a, beta, c.h_delta, keep_q ? &out.q : nullptr);
    out.H = std::clamp(g.H, 0.0, c.n_s * kLn2);
    out.H_u = g.H_u;
    out.beta_eff = beta;
    return out;
}

RealizationOutcome run_empirical(const REMConfig& c, std::int64_t r) {
    const std::vector<double> u = rem_quenched_u(c, r);
    const std::size_t S = u.size();
    std::vector<std::uint32_t> order(S);
    std::iota(order.begin(), order.end(), 0U);
    std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) { return u[a] > u[b]; });

    Rng rng(derive_seed(c.seed, static_cast<std::uint64_t>(2 * r + 1)));
    std::vector<std::int64_t> counts(S, 0);
    RealizationOutcome out;
    for (std::int64_t rep = 0; rep < c.replicas; ++rep) {
        // Visit states in descending u. A later state i wins only if its
        // extreme value exceeds best - u_i, whose probability never grows
        // along the order, so candidates are proposed by geometric skips at
        // the current bound and thinned to the exact probability.
        std::size_t pos = 0;
        std::uint32_t winner = order[0];
        const double x0 = extreme_survival_inverse(uniform01(rng), c.n_t, c.gamma_t, c.delta_t);
        double best = u[winner] + x0;
        pos = 1;
        while (pos < S) {
            const double bound = extreme_survival(best - u[order[pos]], c.n_t, c.gamma_t, c.delta_t);
            if (!(bound > 0.0)) break;
            const double skip = geometric_skip(rng, bound);
            if (skip >= static_cast<double>(S - pos)) break;
            pos += static_cast<std::size_t>(skip);
            const std::uint32_t cand = order[pos];
            const double gap = best - u[cand];
            const double p = extreme_survival(gap, c.n_t, c.gamma_t, c.delta_t);
            if (uniform01(rng) * bound < p) {
                const double x = extreme_survival_inverse(p * uniform01(rng), c.n_t, c.gamma_t, c.delta_t);
                const double value = u[cand] + x;
                if (value > best) {
                    best = value;
                    winner = cand;
                } else if (value == best) {
                    ++out.ties;
                    winner = std::min(winner, cand);
                }
            }
            ++pos;
        }
        ++counts[winner];
    }

    const double R = static_cast<double>(c.replicas);
    out.q.assign(S, 0.0);
    std::map<double, double> bins;
    double mean_u = 0.0;
    for (std::size_t s = 0; s < S; ++s) {
        if (!counts[s]) continue;
        const double p = static_cast<double>(counts[s]) / R;
        out.q[s] = p;
        out.H -= p * std::log(p);
        bins[std::floor(u[s] / c.h_delta)] += p;
        mean_u += p * u[s];
    }
    for (const auto& [_, p] : bins) out.H_u -= p * std::log(p);
    out.beta_eff = moment_matched_beta(u, mean_u);
    return out;
}

}  // namespace

REMCritical rem_critical_params(double n_t, double gamma_t, double delta_t) {
    if (!(n_t > 0.0) || !(gamma_t > 0.0) || !(delta_t > 0.0) || !std::isfinite(n_t) || !std::isfinite(gamma_t) ||
        !std::isfinite(delta_t))
        fail(Errc::BadArgument, "critical parameters need positive finite arguments");
    REMCritical c;
    c.delta_t_star = gamma_t * std::pow(n_t * kLn2, 1.0 - 1.0 / gamma_t);
    c.beta = c.delta_t_star / delta_t;
    return c;
}

double rem_nu_star(double gamma, double ratio) {
    if (!(gamma > 0.0) || !(ratio > 0.0)) fail(Errc::BadArgument, "gamma and ratio must be positive");
    if (gamma == 1.0) return std::numeric_limits<double>::quiet_NaN();
    const double e = gamma / (1.0 - gamma);
    return gamma > 1.0 ? std::pow(ratio, e) : std::pow(gamma * ratio, e);
}

double extreme_survival(double x, double n_t, double gamma_t, double delta_t) {
    if (x <= 0.0) return 1.0;
    const double tail = std::exp(-std::pow(x / delta_t, gamma_t));
    return -std::expm1(std::exp2(n_t) * std::log1p(-tail));
}

double extreme_survival_inverse(double s, double n_t, double gamma_t, double delta_t) {
    if (s >= 1.0) return 0.0;
    const double base_tail = -std::expm1(std::log1p(-s) * std::exp2(-n_t));
    return delta_t * std::pow(std::max(0.0, -std::log(base_tail)), 1.0 / gamma_t);
}

std::vector<double> sample_extreme_value(double n_t, double gamma_t, double delta_t, std::int64_t count,
                                         std::uint64_t seed) {
    if (!(n_t >= 0.0) || !(gamma_t > 0.0) || !(delta_t > 0.0)) fail(Errc::BadArgument, "invalid extreme-value parameters");
    if (count < 0) fail(Errc::BadArgument, "count must be non-negative");
    Rng rng(seed);
    std::vector<double> out(static_cast<std::size_t>(count));
    for (auto& x : out) {
        // u = F^(2^n) with F the base CDF; solved through log/expm1 so that
        // huge n_t keep full precision.
        const double base_tail = -std::expm1(std::log(uniform01(rng)) * std::exp2(-n_t));
        x = delta_t * std::pow(std::max(0.0, -std::log(base_tail)), 1.0 / gamma_t);
    }
    return out;
}

std::vector<double> rem_quenched_u(const REMConfig& config, std::int64_t realization) {
    if (config.n_s > kMaxEnumeratedSpins) fail(Errc::TooLarge, "state enumeration limited to n_s <= 22");
    Rng rng(derive_seed(config.seed, static_cast<std::uint64_t>(2 * realization)));
    return draw_states(config.n_s, config.gamma_s, config.delta_s, rng);
}

std::vector<std::int64_t> rem_bruteforce_counts(const REMConfig& config) {
    REMConfig c = config;
    c.mode = REMMode::empirical;
    check_config(c);
    const auto u = rem_quenched_u(c, 0);
    Rng rng(derive_seed(c.seed, 1));
    std::vector<std::int64_t> counts(u.size(), 0);
    for (std::int64_t rep = 0; rep < c.replicas; ++rep) {
        std::size_t winner = 0;
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t s = 0; s < u.size(); ++s) {
            const double v = u[s] + extreme_survival_inverse(uniform01(rng), c.n_t, c.gamma_t, c.delta_t);
            if (v > best) {
                best = v;
                winner = s;
            }
        }
        ++counts[winner];
    }
    return counts;
}

REMResult rem_simulate(const REMConfig& config) {
    check_config(config);
    const double beta =
        config.n_t > 0.0 ? rem_critical_params(config.n_t, config.gamma_t, config.delta_t).beta : 0.0;
    const auto R = static_cast<std::size_t>(config.realizations);
    std::vector<RealizationOutcome> runs(R);
    parallel_for(R, [&](std::size_t r) {
        runs[r] = config.mode == REMMode::evt ? run_evt(config, beta, static_cast<std::int64_t>(r), r == 0)
                                              : run_empirical(config, static_cast<std::int64_t>(r));
        if (r != 0) runs[r].q.clear();
    });

    REMResult out;
    out.beta = beta;
    out.enumerated = config.n_s <= kMaxEnumeratedSpins;
    double h = 0.0, h2 = 0.0, hu = 0.0, be = 0.0;
    for (const auto& o : runs) {
        h += o.H;
        h2 += o.H * o.H;
        hu += o.H_u;
        be += o.beta_eff;
        out.ties += o.ties;
    }
    const double n = static_cast<double>(R);
    out.H_s_star = h / n;
    out.H_u = hu / n;
    out.beta_effective = be / n;
    if (R > 1) out.H_s_star_se = std::sqrt(std::max(0.0, (h2 / n - out.H_s_star * out.H_s_star) / (n - 1.0)));
    out.normalized = out.H_s_star / (config.n_s * kLn2);
    out.q_hat = std::move(runs.front().q);
    return out;
}

PhaseDiagram rem_phase_diagram(double gamma, const std::vector<double>& ratio_grid, const std::vector<double>& nu_grid,
                               const REMConfig& config) {
    if (ratio_grid.empty() || nu_grid.empty()) fail(Errc::BadArgument, "empty phase-diagram grid");
    for (double v : ratio_grid)
        if (!(v > 0.0)) fail(Errc::BadArgument, "ratios must be positive");
    for (double v : nu_grid)
        if (!(v > 0.0)) fail(Errc::BadArgument, "nu values must be positive");
    PhaseDiagram d;
    d.gamma = gamma;
    d.ratios = ratio_grid;
    d.nus = nu_grid;
    for (double r : ratio_grid) d.nu_star.push_back(rem_nu_star(gamma, r));
    const std::size_t cols = nu_grid.size();
    d.H.assign(ratio_grid.size() * cols, 0.0);
    d.H_se.assign(ratio_grid.size() * cols, 0.0);
    // Every grid point reuses the same seed, so all points share the quenched
    // draws and differences between them are not sampling noise.
    for (std::size_t i = 0; i < ratio_grid.size(); ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            REMConfig c = config;
            c.gamma_s = c.gamma_t = gamma;
            c.delta_t = 1.0;
            c.delta_s = ratio_grid[i];
            c.n_t = nu_grid[j] * c.n_s;
            const REMResult r = rem_simulate(c);
            d.H[i * cols + j] = r.normalized;
            d.H_se[i * cols + j] = r.H_s_star_se / (c.n_s * kLn2);
        }
    }
    return d;
}

}  // namespace relab
