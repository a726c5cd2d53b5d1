#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace relab {

using Label = std::string;
using Sample = std::vector<Label>;

struct FrequencyProfile {
    std::map<Label, std::int64_t> counts;
    std::int64_t N = 0;
};

struct DegeneracyProfile {
    std::map<std::int64_t, std::int64_t> m;  // k -> m_k
    std::int64_t N = 0;
    std::int64_t M = 0;
};

enum class Base { nats, bits, baseN };

struct EntropySummary {
    std::int64_t N = 0;
    std::int64_t M = 0;
    double resolution = 0.0;
    double relevance = 0.0;
    double noise = 0.0;
    Base base = Base::nats;
};

using CategoricalTable = std::vector<std::vector<Label>>;

enum class SiteCriterion { conservation, greedy_relevance, random };

inline constexpr char kColumnSeparator = '\x1f';

FrequencyProfile build_frequency(const Sample& sample);
DegeneracyProfile build_degeneracy(const FrequencyProfile& freq);
DegeneracyProfile degeneracy_from_counts(const std::vector<std::int64_t>& counts);
void validate(const DegeneracyProfile& deg);

double resolution_of(const DegeneracyProfile& deg);
double relevance_of(const DegeneracyProfile& deg);
double noise_of(const DegeneracyProfile& deg);

EntropySummary entropy_summary(const DegeneracyProfile& deg, Base base = Base::nats);
EntropySummary entropy_summary(const Sample& sample, Base base = Base::nats);
double base_divisor(Base base, std::int64_t N);

Sample project_columns(const CategoricalTable& table, const std::vector<std::size_t>& columns);
std::vector<std::size_t> rank_sites(const CategoricalTable& table, std::size_t n,
                                    SiteCriterion criterion, std::uint64_t seed = 0);

}  // namespace relab
