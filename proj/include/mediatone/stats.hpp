#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "mediatone/scoring.hpp"
#include "mediatone/words.hpp"

namespace mediatone {

struct MannWhitneyResult {
    double u;  // statistic of the first sample, midrank ties
    double p;  // two-sided
    bool exact;
};

// Exact p by rank enumeration when n_a + n_b <= 12 and tie-free, otherwise
// normal approximation with tie-corrected variance and continuity correction.
MannWhitneyResult mann_whitney(std::span<const double> a, std::span<const double> b);

struct WelchResult {
    double t;
    double p;  // two-sided
    double df;
};

WelchResult welch_t_test(std::span<const double> a, std::span<const double> b);

double normal_cdf(double z);
double student_t_cdf(double t, double df);
double median(std::span<const double> values);  // sorts a copy

enum class TestKind { MannWhitney, WelchT };
TestKind test_kind_from(std::string_view tag);

enum class Direction { HigherInControversial, HigherInNonControversial, Tie };
const char* to_string(Direction direction);
Direction direction_from(std::string_view text);

struct GroupComparison {
    std::string source;
    std::string feature_id;
    std::size_t n_controversial = 0;
    std::size_t n_noncontroversial = 0;
    double u_statistic = 0.0;  // C3-sample statistic (t statistic in WelchT mode)
    double p_value = 1.0;
    Direction direction = Direction::Tie;
    bool significant = false;
    double median_controversial = 0.0;
    double median_noncontroversial = 0.0;
};

// C3 proportions vs C0 proportions for one (source, feature); direction by
// median comparison. Either group empty -> GroupMissing.
GroupComparison compare_groups(const std::vector<ProportionRecord>& records,
                               const std::map<std::string, Klass>& labels,
                               const std::string& source, const std::string& feature_id,
                               double alpha = 0.01, TestKind test = TestKind::MannWhitney);

// Every (source, feature_id) pair present in records, sorted; pairs with an
// empty group are skipped via the warning callback.
std::vector<GroupComparison> compare_all_groups(
    const std::vector<ProportionRecord>& records, const std::map<std::string, Klass>& labels,
    double alpha, TestKind test, const std::function<void(const std::string&)>& warn);

enum class RankMetric { RankBiserial, MedianDifference };
RankMetric rank_metric_from(std::string_view tag);

struct SourceRank {
    std::string source;
    double effect;
};

// Descending by effect, ties by source name; output is a permutation of the
// registry. Rank-biserial effect = 2u/(n_c*n_n) - 1, positive when the
// feature runs higher in controversial topics.
std::vector<SourceRank> rank_sources(const std::vector<GroupComparison>& comparisons,
                                     const std::string& feature_id,
                                     const std::vector<std::string>& source_registry,
                                     RankMetric metric = RankMetric::RankBiserial);

struct DistributionSummary {
    std::string group;  // C (C3), W (C2), N (C0)
    double min = 0.0, q1 = 0.0, median = 0.0, q3 = 0.0, max = 0.0;
    std::vector<double> outliers;  // beyond 1.5*IQR from the hinges
};

// Tukey five-number summary (hinges include the median for odd sizes).
DistributionSummary summarize_distribution(std::span<const double> values);

struct GroupSummaryRow {
    std::string source;
    std::string feature_id;
    DistributionSummary summary;
};

// One row per (source, feature, group) with at least one labeled topic.
std::vector<GroupSummaryRow> summarize_groups(const std::vector<ProportionRecord>& records,
                                              const std::map<std::string, Klass>& labels);

// CSV: source,feature_id,n_c,n_n,u,p,direction,significant
void write_comparisons_csv(std::ostream& out, const std::vector<GroupComparison>& rows);
void write_comparisons_csv(const std::filesystem::path& path,
                           const std::vector<GroupComparison>& rows);
std::vector<GroupComparison> read_comparisons_csv(std::istream& in);
std::vector<GroupComparison> read_comparisons_csv(const std::filesystem::path& path);

// CSV: source,feature_id,group,min,q1,median,q3,max,outliers (';'-joined)
void write_summaries_csv(std::ostream& out, const std::vector<GroupSummaryRow>& rows);
void write_summaries_csv(const std::filesystem::path& path,
                         const std::vector<GroupSummaryRow>& rows);

// CSV: rank,source,effect
void write_ranking_csv(std::ostream& out, const std::vector<SourceRank>& rows);
void write_ranking_csv(const std::filesystem::path& path, const std::vector<SourceRank>& rows);

}  // namespace mediatone
