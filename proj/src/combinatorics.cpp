#include "relab/combinatorics.hpp"

#include <cmath>
#include <string>

#include "relab/error.hpp"

namespace relab {

namespace {

double lfact(std::int64_t n) { return std::lgamma(static_cast<double>(n) + 1.0); }

}  // namespace

LogCounts log_counts(const DegeneracyProfile& deg) {
    validate(deg);
    double sum_lfact_k = 0.0;   // sum_s ln k_s!
    double sum_lfact_km = 0.0;  // sum_k ln (k m_k)!
    double sum_lfact_m = 0.0;   // sum_k ln m_k!
    for (const auto& [k, mk] : deg.m) {
        sum_lfact_k += static_cast<double>(mk) * lfact(k);
        sum_lfact_km += lfact(k * mk);
        sum_lfact_m += lfact(mk);
    }
    const double lN = lfact(deg.N);
    LogCounts c;
    c.log_Ws = lN - sum_lfact_k;
    c.log_Wk = lN - sum_lfact_km;
    c.log_Ws_given_k = c.log_Ws - c.log_Wk;
    c.log_Wm = lfact(deg.M) - sum_lfact_m;
    return c;
}

std::uint64_t enumerate_partitions(std::int64_t N, const std::function<void(const PartitionView&)>& visit,
                                   std::int64_t n_max) {
    if (N < 1) fail(Errc::BadArgument, "N must be positive");
    if (N > n_max)
        fail(Errc::TooLarge, "N=" + std::to_string(N) + " exceeds the enumeration limit " + std::to_string(n_max));

    std::vector<std::int64_t> part(static_cast<std::size_t>(N) + 1), mult(static_cast<std::size_t>(N) + 1);
    std::size_t len = 1;
    part[0] = N;
    mult[0] = 1;
    std::uint64_t count = 0;
    for (;;) {
        visit(PartitionView{part.data(), mult.data(), len, N});
        ++count;

        std::int64_t ones = 0;
        if (part[len - 1] == 1) {
            ones = mult[len - 1];
            --len;
        }
        if (len == 0) break;
        const std::int64_t x = part[len - 1];
        if (--mult[len - 1] == 0) --len;
        const std::int64_t rest = ones + x;
        const std::int64_t y = x - 1;
        part[len] = y;
        mult[len] = rest / y;
        ++len;
        if (const std::int64_t r = rest % y; r > 0) {
            part[len] = r;
            mult[len] = 1;
            ++len;
        }
    }
    return count;
}

PartitionScorer::PartitionScorer(std::int64_t N)
    : N_(N), lnN_(std::log(static_cast<double>(N))), xlx_(static_cast<std::size_t>(N) + 1),
      lfact_(static_cast<std::size_t>(N) + 1) {
    for (std::int64_t j = 1; j <= N; ++j) {
        xlx_[j] = static_cast<double>(j) * std::log(static_cast<double>(j));
        lfact_[j] = lfact(j);
    }
}

double PartitionScorer::resolution(const PartitionView& p) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size; ++i) acc += static_cast<double>(p.mult[i]) * xlx_[p.parts[i]];
    return lnN_ - acc / static_cast<double>(N_);
}

double PartitionScorer::relevance(const PartitionView& p) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size; ++i) acc += xlx_[p.parts[i] * p.mult[i]];
    return lnN_ - acc / static_cast<double>(N_);
}

double PartitionScorer::log_Wm(const PartitionView& p) const {
    std::int64_t M = 0;
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size; ++i) {
        M += p.mult[i];
        acc += lfact_[p.mult[i]];
    }
    return lfact_[M] - acc;
}

DegeneracyProfile to_degeneracy(const PartitionView& p) {
    DegeneracyProfile d;
    for (std::size_t i = 0; i < p.size; ++i) {
        d.m[p.parts[i]] = p.mult[i];
        d.M += p.mult[i];
    }
    d.N = p.N;
    return d;
}

std::vector<PartitionPoint> rr_density_map(std::int64_t N, std::int64_t n_max) {
    std::vector<PartitionPoint> out;
    if (N < 1) fail(Errc::BadArgument, "N must be positive");
    if (N > n_max) fail(Errc::TooLarge, "N exceeds the enumeration limit");
    const PartitionScorer scorer(N);
    enumerate_partitions(
        N,
        [&](const PartitionView& p) {
            out.push_back(PartitionPoint{to_degeneracy(p), scorer.resolution(p), scorer.relevance(p),
                                         scorer.log_Wm(p)});
        },
        n_max);
    return out;
}

}  // namespace relab
