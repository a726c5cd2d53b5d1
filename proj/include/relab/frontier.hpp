#pragma once

#include <cstdint>
#include <vector>

#include "relab/sample.hpp"

namespace relab {

struct FrontierPoint {
    double mu = 0.0;
    double resolution = 0.0;
    double relevance = 0.0;
    double amplitude = 0.0;  // mean number of singletons, m_1
};

struct FrontierCurve {
    std::vector<FrontierPoint> points;  // ascending mu, hence non-decreasing resolution
    std::int64_t N = 0;
};

// Mean degeneracies mbar[k-1] of the optimal Poisson profile at one mu, with
// the Lagrange multiplier nu that enforces sum_k k*mbar_k = N.
struct FrontierSolution {
    std::vector<double> mbar;
    double nu = 0.0;
    double resolution = 0.0;
    double relevance = 0.0;
};

struct BaselinePoint {
    std::int64_t alphabet = 0;
    double resolution = 0.0;
    double relevance = 0.0;
    double resolution_se = 0.0;
    double relevance_se = 0.0;
};

struct BaselineCurve {
    std::vector<BaselinePoint> points;
    std::int64_t N = 0;
};

struct ExponentFit {
    double mu = 0.0;
    double intercept = 0.0;
    double stderr_mu = 0.0;
    int points_used = 0;
};

struct FitOptions {
    bool min_mass = false;  // drop classes with k*m_k < 2
};

struct RRPoint {
    double resolution = 0.0;
    double relevance = 0.0;
};

struct ZipfGap {
    double mu_hat = 0.0;
    double mu_deviation = 0.0;
    double resolution = 0.0;
    double relevance = 0.0;
    double frontier_relevance = 0.0;
    double frontier_deficit = 0.0;
};

std::vector<double> default_mu_grid();

// Expected plug-in entropies of a Poisson profile m_k ~ Poisson(mbar[k-1])
// with the normalising N held fixed.
double expected_resolution(std::int64_t N, const std::vector<double>& mbar);
double expected_relevance(std::int64_t N, const std::vector<double>& mbar);

// mu > -1 is accepted so that callers can extend the curve below the
// resolution reached at small positive mu.
FrontierSolution frontier_solve(std::int64_t N, double mu);
FrontierCurve max_relevance_frontier(std::int64_t N, const std::vector<double>& mu_grid);
double frontier_relevance_at(const FrontierCurve& curve, double resolution);

BaselineCurve random_baseline(std::int64_t N, const std::vector<std::int64_t>& alphabet_sizes,
                              int replicas, std::uint64_t seed);

ExponentFit fit_exponent(const DegeneracyProfile& deg, const FitOptions& opts = {});
double slope_exponent(const std::vector<RRPoint>& curve, double at_resolution);
ZipfGap zipf_gap(const Sample& sample, const FitOptions& opts = {});
ZipfGap zipf_gap(const DegeneracyProfile& deg, const FitOptions& opts = {});

}  // namespace relab
