#include "relab/sample.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "relab/error.hpp"
#include "relab/random.hpp"

namespace relab {

namespace {

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

}  // namespace

FrequencyProfile build_frequency(const Sample& sample) {
    if (sample.empty()) fail(Errc::EmptyInput, "sample is empty");
    FrequencyProfile f;
    for (const auto& s : sample) {
        if (s.empty()) fail(Errc::BadLabel, "empty label token");
        ++f.counts[s];
    }
    f.N = static_cast<std::int64_t>(sample.size());
    return f;
}

DegeneracyProfile build_degeneracy(const FrequencyProfile& freq) {
    DegeneracyProfile d;
    std::int64_t total = 0;
    for (const auto& [label, k] : freq.counts) {
        if (k < 1) fail(Errc::BadData, "non-positive count for label '" + label + "'");
        ++d.m[k];
        total += k;
    }
    if (total != freq.N) fail(Errc::BadData, "counts do not sum to N");
    if (total == 0) fail(Errc::EmptyInput, "empty frequency profile");
    d.N = total;
    d.M = static_cast<std::int64_t>(freq.counts.size());
    return d;
}

DegeneracyProfile degeneracy_from_counts(const std::vector<std::int64_t>& counts) {
    DegeneracyProfile d;
    for (auto k : counts) {
        if (k < 0) fail(Errc::BadData, "negative count");
        if (k == 0) continue;
        ++d.m[k];
        d.N += k;
        ++d.M;
    }
    if (d.N == 0) fail(Errc::EmptyInput, "all counts are zero");
    return d;
}

void validate(const DegeneracyProfile& deg) {
    std::int64_t n = 0, m = 0;
    for (const auto& [k, mk] : deg.m) {
        if (k < 1 || mk < 1) fail(Errc::BadData, "degeneracy entries must be positive");
        n += k * mk;
        m += mk;
    }
    if (n == 0) fail(Errc::EmptyInput, "empty degeneracy profile");
    if (n != deg.N || m != deg.M) fail(Errc::BadData, "degeneracy profile totals are inconsistent");
}

double resolution_of(const DegeneracyProfile& deg) {
    const double N = static_cast<double>(deg.N);
    double acc = 0.0;
    for (const auto& [k, mk] : deg.m) acc += static_cast<double>(mk) * xlogx(static_cast<double>(k));
    return std::log(N) - acc / N;
}

double relevance_of(const DegeneracyProfile& deg) {
    const double N = static_cast<double>(deg.N);
    double acc = 0.0;
    for (const auto& [k, mk] : deg.m) acc += xlogx(static_cast<double>(k * mk));
    return std::log(N) - acc / N;
}

double noise_of(const DegeneracyProfile& deg) {
    const double N = static_cast<double>(deg.N);
    double acc = 0.0;
    for (const auto& [k, mk] : deg.m)
        acc += static_cast<double>(k * mk) * std::log(static_cast<double>(mk));
    return acc / N;
}

double base_divisor(Base base, std::int64_t N) {
    switch (base) {
        case Base::nats: return 1.0;
        case Base::bits: return std::log(2.0);
        case Base::baseN: return N > 1 ? std::log(static_cast<double>(N)) : 0.0;
    }
    return 1.0;
}

EntropySummary entropy_summary(const DegeneracyProfile& deg, Base base) {
    validate(deg);
    const double lnN = std::log(static_cast<double>(deg.N));
    EntropySummary e;
    e.N = deg.N;
    e.M = deg.M;
    e.base = base;
    // Rounding can push the sums a few ulps outside their exact bounds.
    e.resolution = std::clamp(resolution_of(deg), 0.0, lnN);
    e.relevance = std::clamp(relevance_of(deg), 0.0, e.resolution);
    e.noise = e.resolution - e.relevance;
    const double div = base_divisor(base, deg.N);
    if (div == 0.0) {
        e.resolution = e.relevance = e.noise = 0.0;
    } else if (div != 1.0) {
        e.resolution /= div;
        e.relevance /= div;
        e.noise /= div;
    }
    return e;
}

EntropySummary entropy_summary(const Sample& sample, Base base) {
    return entropy_summary(build_degeneracy(build_frequency(sample)), base);
}

Sample project_columns(const CategoricalTable& table, const std::vector<std::size_t>& columns) {
    if (table.empty() || table.front().empty()) fail(Errc::EmptyInput, "table has no rows or columns");
    if (columns.empty()) fail(Errc::BadArgument, "no columns selected");
    const std::size_t width = table.front().size();
    for (auto c : columns)
        if (c >= width)
            fail(Errc::BadColumn, "column " + std::to_string(c) + " out of range (" +
                                      std::to_string(width) + " columns)");
    Sample out;
    out.reserve(table.size());
    for (std::size_t r = 0; r < table.size(); ++r) {
        const auto& row = table[r];
        if (row.size() != width) fail(Errc::BadData, "row " + std::to_string(r) + " has wrong length");
        std::string label;
        for (std::size_t i = 0; i < columns.size(); ++i) {
            const auto& cell = row[columns[i]];
            if (cell.find(kColumnSeparator) != std::string::npos)
                fail(Errc::BadLabel, "token contains the reserved 0x1F separator");
            if (i) label.push_back(kColumnSeparator);
            label += cell;
        }
        out.push_back(std::move(label));
    }
    return out;
}

std::vector<std::size_t> rank_sites(const CategoricalTable& table, std::size_t n,
                                    SiteCriterion criterion, std::uint64_t seed) {
    if (table.empty() || table.front().empty()) fail(Errc::EmptyInput, "table has no rows or columns");
    const std::size_t width = table.front().size();
    if (n < 1 || n > width) fail(Errc::BadArgument, "n must lie in [1, column count]");

    std::vector<std::size_t> order(width);
    std::iota(order.begin(), order.end(), std::size_t{0});

    switch (criterion) {
        case SiteCriterion::conservation: {
            std::vector<double> h(width);
            for (std::size_t c = 0; c < width; ++c)
                h[c] = entropy_summary(project_columns(table, {c})).resolution;
            std::stable_sort(order.begin(), order.end(),
                             [&](std::size_t a, std::size_t b) { return h[a] < h[b]; });
            order.resize(n);
            return order;
        }
        case SiteCriterion::greedy_relevance: {
            std::vector<std::size_t> chosen;
            std::vector<bool> used(width, false);
            while (chosen.size() < n) {
                std::size_t best = width;
                double best_rel = -1.0;
                for (std::size_t c = 0; c < width; ++c) {
                    if (used[c]) continue;
                    auto trial = chosen;
                    trial.push_back(c);
                    const double rel = entropy_summary(project_columns(table, trial)).relevance;
                    if (rel > best_rel) {
                        best_rel = rel;
                        best = c;
                    }
                }
                used[best] = true;
                chosen.push_back(best);
            }
            return chosen;
        }
        case SiteCriterion::random: {
            Rng rng(seed);
            for (std::size_t i = width; i > 1; --i) std::swap(order[i - 1], order[uniform_index(rng, i)]);
            order.resize(n);
            return order;
        }
    }
    fail(Errc::BadArgument, "unknown site criterion");
}

}  // namespace relab
