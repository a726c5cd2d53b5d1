#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "relab/sample.hpp"

namespace relab {

using DataMatrix = std::vector<std::vector<double>>;

enum class Linkage { single, complete, average };
enum class Metric { L1, L2 };
enum class RankCriterion { INFOMAX, RELEMAX };

// Node ids follow the usual convention: rows are leaves 0..N-1 and merge i
// creates node N+i.
struct Merge {
    std::int64_t left = 0;
    std::int64_t right = 0;
    double distance = 0.0;
    std::int64_t size = 0;
};

struct Dendrogram {
    std::int64_t N = 0;
    std::vector<Merge> merges;
};

struct TrajectoryPoint {
    std::int64_t K = 0;
    double resolution = 0.0;
    double relevance = 0.0;
};

struct NamedTrajectory {
    std::string name;
    std::vector<TrajectoryPoint> points;
};

struct RankingEntry {
    std::string name;
    std::int64_t K = 0;       // cut where the criterion was read
    std::int64_t K_star = 0;  // argmax of resolution + relevance
    double value = 0.0;
};

struct RankingReport {
    RankCriterion criterion = RankCriterion::RELEMAX;
    std::vector<RankingEntry> ranking;  // best first
};

struct TruthMetrics {
    double mutual_information = 0.0;
    double nmi = 0.0;
    double ari = 0.0;
    double purity = 0.0;
};

inline constexpr std::int64_t kAtKStar = 0;

Dendrogram agglomerate(const DataMatrix& data, Linkage linkage, Metric metric);
Sample cut_at_k(const Dendrogram& dendrogram, std::int64_t K);
std::vector<TrajectoryPoint> rr_trajectory(const Dendrogram& dendrogram);
std::int64_t k_star(const std::vector<TrajectoryPoint>& trajectory);

// K = kAtKStar reads each algorithm at its own K_star.
RankingReport rank_algorithms(const std::vector<NamedTrajectory>& trajectories, RankCriterion criterion,
                              std::int64_t K);

TruthMetrics truth_metrics(const Sample& labels, const Sample& truth);
double kendall_tau(const std::vector<std::string>& rank_a, const std::vector<std::string>& rank_b);

}  // namespace relab
