#include "relab/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

#include "relab/error.hpp"

namespace relab {

namespace {

double distance(const std::vector<double>& a, const std::vector<double>& b, Metric metric) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += metric == Metric::L1 ? std::fabs(d) : d * d;
    }
    return metric == Metric::L1 ? acc : std::sqrt(acc);
}

double choose2(double n) { return 0.5 * n * (n - 1.0); }

struct UnionFind {
    std::vector<std::int64_t> parent;
    explicit UnionFind(std::int64_t n) : parent(static_cast<std::size_t>(n)) {
        std::iota(parent.begin(), parent.end(), std::int64_t{0});
    }
    std::int64_t find(std::int64_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    // Roots are always the smallest row index of their set.
    void unite(std::int64_t a, std::int64_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (b < a) std::swap(a, b);
        parent[b] = a;
    }
};

// Leaf row standing in for each dendrogram node.
std::vector<std::int64_t> node_rows(const Dendrogram& d) {
    std::vector<std::int64_t> rep(static_cast<std::size_t>(d.N + static_cast<std::int64_t>(d.merges.size())));
    for (std::int64_t i = 0; i < d.N; ++i) rep[i] = i;
    for (std::size_t m = 0; m < d.merges.size(); ++m)
        rep[d.N + m] = std::min(rep[d.merges[m].left], rep[d.merges[m].right]);
    return rep;
}

void check_dendrogram(const Dendrogram& d) {
    if (d.N < 1 || static_cast<std::int64_t>(d.merges.size()) != d.N - 1)
        fail(Errc::BadArgument, "malformed dendrogram");
}

}  // namespace

Dendrogram agglomerate(const DataMatrix& data, Linkage linkage, Metric metric) {
    const auto N = static_cast<std::int64_t>(data.size());
    if (N < 2) fail(Errc::BadArgument, "clustering needs at least two rows");
    const std::size_t d = data.front().size();
    if (d == 0) fail(Errc::BadData, "rows have no features");
    for (const auto& row : data) {
        if (row.size() != d) fail(Errc::BadData, "rows have unequal length");
        for (double v : row)
            if (!std::isfinite(v)) fail(Errc::BadData, "non-finite feature value");
    }

    const auto n = static_cast<std::size_t>(N);
    std::vector<double> D(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) D[i * n + j] = D[j * n + i] = distance(data[i], data[j], metric);

    // Slot i holds the cluster whose smallest row index is i, so scanning
    // slots in order visits clusters in representative order.
    std::vector<bool> active(n, true);
    std::vector<std::int64_t> node(n), size(n, 1);
    std::iota(node.begin(), node.end(), std::int64_t{0});

    Dendrogram out;
    out.N = N;
    out.merges.reserve(n - 1);
    for (std::size_t step = 0; step + 1 < n; ++step) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t bi = n, bj = n;
        for (std::size_t i = 0; i < n; ++i) {
            if (!active[i]) continue;
            for (std::size_t j = i + 1; j < n; ++j) {
                if (!active[j]) continue;
                if (D[i * n + j] < best) {
                    best = D[i * n + j];
                    bi = i;
                    bj = j;
                }
            }
        }
        const double ni = static_cast<double>(size[bi]), nj = static_cast<double>(size[bj]);
        for (std::size_t k = 0; k < n; ++k) {
            if (!active[k] || k == bi || k == bj) continue;
            const double dik = D[bi * n + k], djk = D[bj * n + k];
            double v = 0.0;
            switch (linkage) {
                case Linkage::single: v = std::min(dik, djk); break;
                case Linkage::complete: v = std::max(dik, djk); break;
                case Linkage::average: v = (ni * dik + nj * djk) / (ni + nj); break;
            }
            D[bi * n + k] = D[k * n + bi] = v;
        }
        Merge m;
        m.left = std::min(node[bi], node[bj]);
        m.right = std::max(node[bi], node[bj]);
        m.distance = best;
        m.size = size[bi] + size[bj];
        out.merges.push_back(m);
        active[bj] = false;
        size[bi] += size[bj];
        node[bi] = N + static_cast<std::int64_t>(step);
    }
    return out;
}

Sample cut_at_k(const Dendrogram& dendrogram, std::int64_t K) {
    check_dendrogram(dendrogram);
    const std::int64_t N = dendrogram.N;
    if (K < 1 || K > N) fail(Errc::BadArgument, "K must lie in [1, N]");
    const auto rep = node_rows(dendrogram);
    UnionFind uf(N);
    for (std::int64_t m = 0; m < N - K; ++m)
        uf.unite(rep[dendrogram.merges[m].left], rep[dendrogram.merges[m].right]);
    std::map<std::int64_t, std::int64_t> label_of_root;
    for (std::int64_t i = 0; i < N; ++i) {
        const auto r = uf.find(i);
        if (!label_of_root.count(r)) label_of_root.emplace(r, static_cast<std::int64_t>(label_of_root.size()) + 1);
    }
    Sample labels;
    labels.reserve(static_cast<std::size_t>(N));
    for (std::int64_t i = 0; i < N; ++i) labels.push_back(std::to_string(label_of_root[uf.find(i)]));
    return labels;
}

std::vector<TrajectoryPoint> rr_trajectory(const Dendrogram& dendrogram) {
    check_dendrogram(dendrogram);
    const std::int64_t N = dendrogram.N;
    std::vector<std::int64_t> node_size(static_cast<std::size_t>(N + N - 1), 1);
    DegeneracyProfile deg;
    deg.N = N;
    deg.M = N;
    deg.m[1] = N;
    auto bump = [&](std::int64_t k, std::int64_t delta) {
        auto& v = deg.m[k];
        v += delta;
        if (v == 0) deg.m.erase(k);
    };
    std::vector<TrajectoryPoint> out(static_cast<std::size_t>(N));
    auto record = [&](std::int64_t K) {
        const auto e = entropy_summary(deg);
        out[static_cast<std::size_t>(K - 1)] = TrajectoryPoint{K, e.resolution, e.relevance};
    };
    record(N);
    for (std::int64_t m = 0; m < N - 1; ++m) {
        const auto& mg = dendrogram.merges[m];
        const auto a = node_size[mg.left], b = node_size[mg.right];
        bump(a, -1);
        bump(b, -1);
        bump(a + b, +1);
        --deg.M;
        node_size[N + m] = a + b;
        record(N - m - 1);
    }
    return out;
}

std::int64_t k_star(const std::vector<TrajectoryPoint>& trajectory) {
    if (trajectory.empty()) fail(Errc::BadArgument, "empty trajectory");
    std::int64_t best_k = trajectory.front().K;
    double best = -1.0;
    for (const auto& p : trajectory) {
        const double v = p.resolution + p.relevance;
        if (v > best || (v == best && p.K < best_k)) {
            best = v;
            best_k = p.K;
        }
    }
    return best_k;
}

RankingReport rank_algorithms(const std::vector<NamedTrajectory>& trajectories, RankCriterion criterion,
                              std::int64_t K) {
    if (trajectories.empty()) fail(Errc::BadArgument, "no trajectories to rank");
    RankingReport report;
    report.criterion = criterion;
    for (const auto& t : trajectories) {
        RankingEntry e;
        e.name = t.name;
        e.K_star = k_star(t.points);
        e.K = K == kAtKStar ? e.K_star : K;
        const auto it = std::find_if(t.points.begin(), t.points.end(),
                                     [&](const TrajectoryPoint& p) { return p.K == e.K; });
        if (it == t.points.end())
            fail(Errc::BadArgument, "trajectory '" + t.name + "' has no point at K=" + std::to_string(e.K));
        e.value = criterion == RankCriterion::INFOMAX ? it->resolution : it->resolution + it->relevance;
        report.ranking.push_back(e);
    }
    std::stable_sort(report.ranking.begin(), report.ranking.end(), [](const RankingEntry& a, const RankingEntry& b) {
        if (a.value != b.value) return a.value > b.value;
        return a.name < b.name;
    });
    return report;
}

TruthMetrics truth_metrics(const Sample& labels, const Sample& truth) {
    if (labels.size() != truth.size()) fail(Errc::BadArgument, "label and truth sequences differ in length");
    if (labels.empty()) fail(Errc::EmptyInput, "empty label sequence");
    const double N = static_cast<double>(labels.size());

    std::map<std::pair<std::string, std::string>, std::int64_t> joint;
    std::map<std::string, std::int64_t> a, b;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        ++joint[{labels[i], truth[i]}];
        ++a[labels[i]];
        ++b[truth[i]];
    }
    auto entropy = [&](const std::map<std::string, std::int64_t>& c) {
        double h = 0.0;
        for (const auto& [_, n] : c) h -= (static_cast<double>(n) / N) * std::log(static_cast<double>(n) / N);
        return h;
    };
    TruthMetrics t;
    double mi = 0.0, index = 0.0;
    std::map<std::string, std::int64_t> best_in_cluster;
    for (const auto& [key, n] : joint) {
        const double nij = static_cast<double>(n);
        mi += (nij / N) * std::log(N * nij / (static_cast<double>(a[key.first]) * static_cast<double>(b[key.second])));
        index += choose2(nij);
        auto& best = best_in_cluster[key.first];
        best = std::max(best, n);
    }
    const double hs = entropy(a), ht = entropy(b);
    t.mutual_information = std::max(0.0, mi);
    if (hs > 0.0 && ht > 0.0) t.nmi = std::min(1.0, t.mutual_information / std::sqrt(hs * ht));
    else t.nmi = (hs == 0.0 && ht == 0.0) ? 1.0 : 0.0;

    double sa = 0.0, sb = 0.0;
    for (const auto& [_, n] : a) sa += choose2(static_cast<double>(n));
    for (const auto& [_, n] : b) sb += choose2(static_cast<double>(n));
    const double total = choose2(N);
    const double expected = total > 0.0 ? sa * sb / total : 0.0;
    const double maximum = 0.5 * (sa + sb);
    if (maximum == expected) t.ari = index == maximum ? 1.0 : 0.0;
    else t.ari = (index - expected) / (maximum - expected);

    double pure = 0.0;
    for (const auto& [_, n] : best_in_cluster) pure += static_cast<double>(n);
    t.purity = pure / N;
    return t;
}

double kendall_tau(const std::vector<std::string>& rank_a, const std::vector<std::string>& rank_b) {
    if (rank_a.size() != rank_b.size()) fail(Errc::BadArgument, "rankings differ in length");
    if (rank_a.size() < 2) fail(Errc::BadArgument, "Kendall tau needs at least two names");
    std::unordered_map<std::string, std::size_t> pos_b;
    for (std::size_t i = 0; i < rank_b.size(); ++i)
        if (!pos_b.emplace(rank_b[i], i).second) fail(Errc::BadArgument, "duplicate name in ranking");
    std::set<std::string> seen;
    std::vector<std::size_t> y;
    for (const auto& name : rank_a) {
        if (!seen.insert(name).second) fail(Errc::BadArgument, "duplicate name in ranking");
        const auto it = pos_b.find(name);
        if (it == pos_b.end()) fail(Errc::BadArgument, "rankings contain different names");
        y.push_back(it->second);
    }
    // Orderings carry no ties, so tau-b reduces to (C - D) / (n choose 2).
    double concordant = 0.0, discordant = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i)
        for (std::size_t j = i + 1; j < y.size(); ++j) (y[i] < y[j] ? concordant : discordant) += 1.0;
    return (concordant - discordant) / choose2(static_cast<double>(y.size()));
}

}  // namespace relab
