#include "relab/msr.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "relab/error.hpp"
#include "relab/parallel.hpp"

namespace relab {

void validate(const SpikeTrain& train) {
    if (train.times.empty()) fail(Errc::EmptyInput, "spike train has no events");
    if (!(train.T > 0.0) || !std::isfinite(train.T)) fail(Errc::BadData, "duration T must be positive and finite");
    for (std::size_t i = 0; i < train.times.size(); ++i) {
        const double t = train.times[i];
        if (!std::isfinite(t) || t < 0.0 || t > train.T) fail(Errc::BadData, "event time outside [0, T]");
        if (i && t < train.times[i - 1]) fail(Errc::BadData, "event times must be non-decreasing");
    }
}

std::vector<std::int64_t> bin_counts(const SpikeTrain& train, double dt, double offset) {
    if (!(dt > 0.0) || !std::isfinite(dt)) fail(Errc::BadArgument, "bin width must be positive");
    if (!(offset >= 0.0 && offset < dt)) fail(Errc::BadArgument, "bin offset must lie in [0, dt)");
    validate(train);
    const double nbins = std::max(1.0, std::ceil((train.T + offset) / dt));
    std::vector<std::int64_t> counts;
    double current = -1.0;
    for (double t : train.times) {
        const double idx = std::min(std::floor((t + offset) / dt), nbins - 1.0);
        if (idx != current) {
            counts.push_back(0);
            current = idx;
        }
        ++counts.back();
    }
    return counts;
}

FrequencyProfile bin_spikes(const SpikeTrain& train, double dt) {
    validate(train);
    if (!(dt > 0.0) || !std::isfinite(dt)) fail(Errc::BadArgument, "bin width must be positive");
    FrequencyProfile f;
    const double nbins = std::max(1.0, std::ceil(train.T / dt));
    for (double t : train.times) {
        const auto idx = static_cast<std::int64_t>(std::min(std::floor(t / dt), nbins - 1.0));
        ++f.counts[std::to_string(idx)];
    }
    f.N = static_cast<std::int64_t>(train.times.size());
    return f;
}

std::vector<double> default_dt_grid(const SpikeTrain& train) {
    validate(train);
    const double lo = std::log(train.T / (10.0 * static_cast<double>(train.times.size())));
    const double hi = std::log(train.T);
    std::vector<double> grid(100);
    for (int i = 0; i < 100; ++i) grid[i] = std::exp(lo + (hi - lo) * i / 99.0);
    grid.back() = train.T;
    return grid;
}

std::vector<MSRPoint> msr_curve(const SpikeTrain& train, const std::vector<double>& grid, int phases) {
    validate(train);
    if (grid.empty()) fail(Errc::BadArgument, "empty dt grid");
    if (phases < 1) fail(Errc::BadArgument, "phases must be >= 1");
    for (double dt : grid)
        if (!(dt > 0.0) || !std::isfinite(dt)) fail(Errc::BadArgument, "dt grid values must be positive");

    std::vector<MSRPoint> pts(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
        const double dt = grid[i];
        double hs = 0.0, hk = 0.0;
        for (int j = 0; j < phases; ++j) {
            const auto e = entropy_summary(degeneracy_from_counts(bin_counts(train, dt, dt * j / phases)), Base::baseN);
            hs += e.resolution;
            hk += e.relevance;
        }
        pts[i] = MSRPoint{dt, hs / phases, hk / phases};
    });

    std::stable_sort(pts.begin(), pts.end(), [](const MSRPoint& a, const MSRPoint& b) {
        if (a.resolution != b.resolution) return a.resolution > b.resolution;
        if (a.relevance != b.relevance) return a.relevance > b.relevance;
        return a.dt > b.dt;
    });
    std::vector<MSRPoint> out;
    for (const auto& p : pts)
        if (out.empty() || out.back().resolution != p.resolution) out.push_back(p);
    return out;
}

MSRResult msr_area_and_optimum(const std::vector<MSRPoint>& curve) {
    if (curve.size() < 2) fail(Errc::Degenerate, "MSR needs at least two distinct curve points");
    MSRResult r;
    r.curve = curve;

    std::vector<std::pair<double, double>> pts;
    bool has_top = false, has_bottom = false;
    for (const auto& p : curve) {
        pts.emplace_back(p.resolution, p.relevance);
        has_top |= p.resolution == 1.0;
        has_bottom |= p.resolution == 0.0;
    }
    if (!has_top) pts.emplace_back(1.0, 0.0);
    if (!has_bottom) pts.emplace_back(0.0, 0.0);
    std::stable_sort(pts.begin(), pts.end());
    double area = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i)
        area += 0.5 * (pts[i].first - pts[i - 1].first) * (pts[i].second + pts[i - 1].second);
    r.msr = std::clamp(area, 0.0, 1.0);

    r.max_total = -1.0;
    for (const auto& p : curve) {
        const double total = p.resolution + p.relevance;
        if (total > r.max_total || (total == r.max_total && p.dt > r.optimal_dt)) {
            r.max_total = total;
            r.optimal_dt = p.dt;
        }
    }
    return r;
}

MSRResult msr_analyze(const SpikeTrain& train, const std::vector<double>& grid, int phases) {
    return msr_area_and_optimum(msr_curve(train, grid, phases));
}

}  // namespace relab
