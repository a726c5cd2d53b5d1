#pragma once

#include <cstdint>
#include <vector>

#include "relab/sample.hpp"

namespace relab {

struct SpikeTrain {
    std::vector<double> times;  // non-decreasing, within [0, T]
    double T = 0.0;
};

struct MSRPoint {
    double dt = 0.0;
    double resolution = 0.0;  // base-N units
    double relevance = 0.0;
};

struct MSRResult {
    std::vector<MSRPoint> curve;  // descending resolution
    double msr = 0.0;
    double optimal_dt = 0.0;
    double max_total = 0.0;
};

void validate(const SpikeTrain& train);

// Occupied-bin counts for bins [offset + i dt, offset + (i+1) dt) with the
// origin shifted left by `offset` (0 <= offset < dt). Events at t = T fall
// into the last bin.
std::vector<std::int64_t> bin_counts(const SpikeTrain& train, double dt, double offset = 0.0);
FrequencyProfile bin_spikes(const SpikeTrain& train, double dt);

std::vector<double> default_dt_grid(const SpikeTrain& train);
std::vector<MSRPoint> msr_curve(const SpikeTrain& train, const std::vector<double>& grid, int phases = 1);
MSRResult msr_area_and_optimum(const std::vector<MSRPoint>& curve);
MSRResult msr_analyze(const SpikeTrain& train, const std::vector<double>& grid, int phases = 1);

}  // namespace relab
