#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "relab/sample.hpp"

namespace relab {

inline constexpr std::int64_t kDefaultPartitionMax = 120;

struct LogCounts {
    double log_Ws = 0.0;
    double log_Wk = 0.0;
    double log_Ws_given_k = 0.0;
    double log_Wm = 0.0;
};

LogCounts log_counts(const DegeneracyProfile& deg);

// One integer partition of N in multiplicity form: parts[i] occurs mult[i]
// times, parts strictly decreasing. Only valid during the callback.
struct PartitionView {
    const std::int64_t* parts;
    const std::int64_t* mult;
    std::size_t size;
    std::int64_t N;
};

struct PartitionPoint {
    DegeneracyProfile degeneracy;
    double resolution = 0.0;
    double relevance = 0.0;
    double log_Wm = 0.0;
};

// Streams every partition of N once, in reverse-lexicographic order starting
// from {N}. Returns the number of partitions visited.
std::uint64_t enumerate_partitions(std::int64_t N, const std::function<void(const PartitionView&)>& visit,
                                   std::int64_t n_max = kDefaultPartitionMax);

// Precomputed x ln x and ln m! tables so that per-partition entropies cost
// O(distinct parts) inside a streaming loop.
class PartitionScorer {
public:
    explicit PartitionScorer(std::int64_t N);
    double resolution(const PartitionView& p) const;
    double relevance(const PartitionView& p) const;
    double log_Wm(const PartitionView& p) const;

private:
    std::int64_t N_;
    double lnN_;
    std::vector<double> xlx_;
    std::vector<double> lfact_;
};

DegeneracyProfile to_degeneracy(const PartitionView& p);

std::vector<PartitionPoint> rr_density_map(std::int64_t N, std::int64_t n_max = kDefaultPartitionMax);

}  // namespace relab
