#include "mediatone/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "mediatone/errors.hpp"
#include "mediatone/io.hpp"

namespace mediatone {

namespace {

// Midranks of the pooled samples; returns (rank sum of a, ties present).
std::pair<double, bool> rank_sum_first(std::span<const double> a, std::span<const double> b) {
    struct Tagged {
        double value;
        bool from_a;
    };
    std::vector<Tagged> pooled;
    pooled.reserve(a.size() + b.size());
    for (double v : a) pooled.push_back({v, true});
    for (double v : b) pooled.push_back({v, false});
    std::sort(pooled.begin(), pooled.end(),
              [](const Tagged& x, const Tagged& y) { return x.value < y.value; });

    double rank_a = 0.0;
    bool ties = false;
    std::size_t i = 0;
    while (i < pooled.size()) {
        std::size_t j = i;
        while (j + 1 < pooled.size() && pooled[j + 1].value == pooled[i].value) ++j;
        if (j > i) ties = true;
        const double midrank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t k = i; k <= j; ++k) {
            if (pooled[k].from_a) rank_a += midrank;
        }
        i = j + 1;
    }
    return {rank_a, ties};
}

double tie_correction_term(std::span<const double> a, std::span<const double> b) {
    std::vector<double> pooled(a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    std::sort(pooled.begin(), pooled.end());
    double sum = 0.0;
    std::size_t i = 0;
    while (i < pooled.size()) {
        std::size_t j = i;
        while (j + 1 < pooled.size() && pooled[j + 1] == pooled[i]) ++j;
        const double t = static_cast<double>(j - i + 1);
        sum += t * t * t - t;
        i = j + 1;
    }
    return sum;
}

// Exact two-sided p over all C(N, n_a) tie-free rank assignments:
// P(|U' - mu| >= |u_obs - mu|).
double exact_two_sided_p(std::size_t n_a, std::size_t n_b, double u_obs) {
    const std::size_t n = n_a + n_b;
    const double mu = static_cast<double>(n_a) * static_cast<double>(n_b) / 2.0;
    const double dev = std::abs(u_obs - mu);

    std::uint64_t total = 0;
    std::uint64_t extreme = 0;
    std::vector<std::size_t> ranks(n_a);
    // Enumerate n_a-subsets of {1..n} as sorted rank vectors.
    auto recurse = [&](auto&& self, std::size_t depth, std::size_t next, double rank_sum) -> void {
        if (depth == n_a) {
            const double u = rank_sum - static_cast<double>(n_a) * (n_a + 1) / 2.0;
            ++total;
            if (std::abs(u - mu) >= dev - 1e-12) ++extreme;
            return;
        }
        for (std::size_t r = next; r <= n - (n_a - depth - 1); ++r) {
            self(self, depth + 1, r + 1, rank_sum + static_cast<double>(r));
        }
    };
    recurse(recurse, 0, 1, 0.0);
    return static_cast<double>(extreme) / static_cast<double>(total);
}

double sample_mean(std::span<const double> values) {
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

double sample_variance(std::span<const double> values, double mean) {
    double sum = 0.0;
    for (double v : values) sum += (v - mean) * (v - mean);
    return sum / static_cast<double>(values.size() - 1);
}

// Continued fraction for the regularized incomplete beta (modified Lentz).
double beta_cf(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 3e-16;
    constexpr double kFpMin = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kFpMin) d = kFpMin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::abs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::abs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) break;
    }
    return h;
}

double reg_inc_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_bt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                         a * std::log(x) + b * std::log(1.0 - x);
    const double bt = std::exp(ln_bt);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return bt * beta_cf(a, b, x) / a;
    }
    return 1.0 - bt * beta_cf(b, a, 1.0 - x) / b;
}

struct GroupSamples {
    std::vector<double> controversial;
    std::vector<double> noncontroversial;
};

GroupComparison compare_from_samples(const std::string& source, const std::string& feature_id,
                                     const GroupSamples& samples, double alpha, TestKind test) {
    if (samples.controversial.empty()) {
        throw GroupMissing("no C3 topics for " + source + "/" + feature_id);
    }
    if (samples.noncontroversial.empty()) {
        throw GroupMissing("no C0 topics for " + source + "/" + feature_id);
    }
    GroupComparison cmp;
    cmp.source = source;
    cmp.feature_id = feature_id;
    cmp.n_controversial = samples.controversial.size();
    cmp.n_noncontroversial = samples.noncontroversial.size();
    if (test == TestKind::MannWhitney) {
        const auto result = mann_whitney(samples.controversial, samples.noncontroversial);
        cmp.u_statistic = result.u;
        cmp.p_value = result.p;
    } else {
        const auto result = welch_t_test(samples.controversial, samples.noncontroversial);
        cmp.u_statistic = result.t;
        cmp.p_value = result.p;
    }
    cmp.median_controversial = median(samples.controversial);
    cmp.median_noncontroversial = median(samples.noncontroversial);
    if (cmp.median_controversial > cmp.median_noncontroversial) {
        cmp.direction = Direction::HigherInControversial;
    } else if (cmp.median_controversial < cmp.median_noncontroversial) {
        cmp.direction = Direction::HigherInNonControversial;
    } else {
        cmp.direction = Direction::Tie;
    }
    cmp.significant = cmp.p_value < alpha;
    return cmp;
}

void check_csv_field(const std::string& field) {
    if (field.find(',') != std::string::npos || field.find('\n') != std::string::npos) {
        throw ParseError("field not representable in csv: " + field);
    }
}

}  // namespace

MannWhitneyResult mann_whitney(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw EmptySample("mann_whitney needs nonempty samples");
    for (double v : a) {
        if (!std::isfinite(v)) throw NumericalInput("non-finite value in sample");
    }
    for (double v : b) {
        if (!std::isfinite(v)) throw NumericalInput("non-finite value in sample");
    }
    const auto n_a = a.size();
    const auto n_b = b.size();
    const auto [rank_a, ties] = rank_sum_first(a, b);
    const double u = rank_a - static_cast<double>(n_a) * (n_a + 1) / 2.0;

    MannWhitneyResult result;
    result.u = u;
    if (n_a + n_b <= 12 && !ties) {
        result.exact = true;
        result.p = exact_two_sided_p(n_a, n_b, u);
        return result;
    }
    result.exact = false;
    const double n = static_cast<double>(n_a + n_b);
    const double mu = static_cast<double>(n_a) * static_cast<double>(n_b) / 2.0;
    const double tie_term = tie_correction_term(a, b);
    const double var = static_cast<double>(n_a) * static_cast<double>(n_b) / 12.0 *
                       ((n + 1.0) - tie_term / (n * (n - 1.0)));
    if (var <= 0.0) {
        result.p = 1.0;
        return result;
    }
    const double adj = std::max(0.0, std::abs(u - mu) - 0.5);
    const double z = adj / std::sqrt(var);
    result.p = std::min(1.0, 2.0 * (1.0 - normal_cdf(z)));
    return result;
}

WelchResult welch_t_test(std::span<const double> a, std::span<const double> b) {
    if (a.size() < 2 || b.size() < 2) {
        throw EmptySample("welch_t_test needs at least 2 values per sample");
    }
    const double n_a = static_cast<double>(a.size());
    const double n_b = static_cast<double>(b.size());
    const double mean_a = sample_mean(a);
    const double mean_b = sample_mean(b);
    const double var_a = sample_variance(a, mean_a);
    const double var_b = sample_variance(b, mean_b);

    WelchResult result;
    const double se2 = var_a / n_a + var_b / n_b;
    const double diff = mean_a - mean_b;
    if (se2 <= 0.0) {
        result.df = n_a + n_b - 2.0;
        if (diff == 0.0) {
            result.t = 0.0;
            result.p = 1.0;
        } else {
            result.t = diff > 0.0 ? std::numeric_limits<double>::infinity()
                                  : -std::numeric_limits<double>::infinity();
            result.p = 0.0;
        }
        return result;
    }
    result.t = diff / std::sqrt(se2);
    const double num = se2 * se2;
    const double den = (var_a / n_a) * (var_a / n_a) / (n_a - 1.0) +
                       (var_b / n_b) * (var_b / n_b) / (n_b - 1.0);
    result.df = num / den;
    result.p = std::min(1.0, 2.0 * (1.0 - student_t_cdf(std::abs(result.t), result.df)));
    return result;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double student_t_cdf(double t, double df) {
    if (df <= 0.0) throw std::invalid_argument("student_t_cdf: df must be positive");
    if (std::isinf(t)) return t > 0.0 ? 1.0 : 0.0;
    const double x = df / (df + t * t);
    const double tail = 0.5 * reg_inc_beta(df / 2.0, 0.5, x);
    return t >= 0.0 ? 1.0 - tail : tail;
}

double median(std::span<const double> values) {
    if (values.empty()) throw EmptySample("median of empty sample");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const auto n = sorted.size();
    if (n % 2 == 1) return sorted[n / 2];
    return (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0;
}

TestKind test_kind_from(std::string_view tag) {
    if (tag == "mann-whitney") return TestKind::MannWhitney;
    if (tag == "welch") return TestKind::WelchT;
    throw ParseError("unknown test kind: " + std::string(tag));
}

const char* to_string(Direction direction) {
    switch (direction) {
        case Direction::HigherInControversial: return "higher_in_controversial";
        case Direction::HigherInNonControversial: return "higher_in_noncontroversial";
        case Direction::Tie: return "tie";
    }
    return "?";
}

Direction direction_from(std::string_view text) {
    if (text == "higher_in_controversial") return Direction::HigherInControversial;
    if (text == "higher_in_noncontroversial") return Direction::HigherInNonControversial;
    if (text == "tie") return Direction::Tie;
    throw ParseError("unknown direction: " + std::string(text));
}

GroupComparison compare_groups(const std::vector<ProportionRecord>& records,
                               const std::map<std::string, Klass>& labels,
                               const std::string& source, const std::string& feature_id,
                               double alpha, TestKind test) {
    GroupSamples samples;
    for (const auto& record : records) {
        if (record.source != source || record.feature_id != feature_id) continue;
        auto it = labels.find(record.topic);
        if (it == labels.end()) continue;
        if (it->second == Klass::C3) {
            samples.controversial.push_back(record.proportion);
        } else if (it->second == Klass::C0) {
            samples.noncontroversial.push_back(record.proportion);
        }
    }
    return compare_from_samples(source, feature_id, samples, alpha, test);
}

std::vector<GroupComparison> compare_all_groups(
    const std::vector<ProportionRecord>& records, const std::map<std::string, Klass>& labels,
    double alpha, TestKind test, const std::function<void(const std::string&)>& warn) {
    std::map<std::pair<std::string, std::string>, GroupSamples> buckets;
    for (const auto& record : records) {
        auto& samples = buckets[{record.source, record.feature_id}];
        auto it = labels.find(record.topic);
        if (it == labels.end()) continue;
        if (it->second == Klass::C3) {
            samples.controversial.push_back(record.proportion);
        } else if (it->second == Klass::C0) {
            samples.noncontroversial.push_back(record.proportion);
        }
    }
    std::vector<GroupComparison> out;
    for (const auto& [key, samples] : buckets) {
        try {
            out.push_back(compare_from_samples(key.first, key.second, samples, alpha, test));
        } catch (const GroupMissing& e) {
            warn(e.what());
        }
    }
    return out;
}

RankMetric rank_metric_from(std::string_view tag) {
    if (tag == "rank-biserial") return RankMetric::RankBiserial;
    if (tag == "median-difference") return RankMetric::MedianDifference;
    throw ParseError("unknown rank metric: " + std::string(tag));
}

std::vector<SourceRank> rank_sources(const std::vector<GroupComparison>& comparisons,
                                     const std::string& feature_id,
                                     const std::vector<std::string>& source_registry,
                                     RankMetric metric) {
    std::map<std::string, const GroupComparison*> by_source;
    for (const auto& cmp : comparisons) {
        if (cmp.feature_id == feature_id) by_source.emplace(cmp.source, &cmp);
    }
    std::vector<SourceRank> out;
    for (const auto& source : source_registry) {
        auto it = by_source.find(source);
        if (it == by_source.end()) {
            throw MissingComparison("no comparison for source " + source + ", feature " +
                                    feature_id);
        }
        const GroupComparison& cmp = *it->second;
        double effect = 0.0;
        if (metric == RankMetric::RankBiserial) {
            effect = 2.0 * cmp.u_statistic /
                         (static_cast<double>(cmp.n_controversial) *
                          static_cast<double>(cmp.n_noncontroversial)) -
                     1.0;
        } else {
            effect = cmp.median_controversial - cmp.median_noncontroversial;
        }
        out.push_back({source, effect});
    }
    std::sort(out.begin(), out.end(), [](const SourceRank& a, const SourceRank& b) {
        if (a.effect != b.effect) return a.effect > b.effect;
        return a.source < b.source;
    });
    return out;
}

DistributionSummary summarize_distribution(std::span<const double> values) {
    if (values.empty()) throw EmptySample("summarize_distribution of empty sample");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const auto n = sorted.size();

    DistributionSummary s;
    s.min = sorted.front();
    s.max = sorted.back();
    s.median = median(sorted);
    const std::size_t half = (n + 1) / 2;  // hinges include the median when n is odd
    s.q1 = median(std::span<const double>(sorted.data(), half));
    s.q3 = median(std::span<const double>(sorted.data() + (n - half), half));
    const double iqr = s.q3 - s.q1;
    const double lo = s.q1 - 1.5 * iqr;
    const double hi = s.q3 + 1.5 * iqr;
    for (double v : sorted) {
        if (v < lo || v > hi) s.outliers.push_back(v);
    }
    return s;
}

std::vector<GroupSummaryRow> summarize_groups(const std::vector<ProportionRecord>& records,
                                              const std::map<std::string, Klass>& labels) {
    auto group_of = [](Klass klass) -> const char* {
        switch (klass) {
            case Klass::C3: return "C";
            case Klass::C2: return "W";
            case Klass::C0: return "N";
            default: return nullptr;
        }
    };
    auto group_order = [](const std::string& g) { return g == "C" ? 0 : (g == "W" ? 1 : 2); };

    std::map<std::tuple<std::string, std::string, std::string>, std::vector<double>> buckets;
    for (const auto& record : records) {
        auto it = labels.find(record.topic);
        if (it == labels.end()) continue;
        const char* group = group_of(it->second);
        if (!group) continue;
        buckets[{record.source, record.feature_id, group}].push_back(record.proportion);
    }
    std::vector<GroupSummaryRow> rows;
    for (const auto& [key, values] : buckets) {
        GroupSummaryRow row;
        row.source = std::get<0>(key);
        row.feature_id = std::get<1>(key);
        row.summary = summarize_distribution(values);
        row.summary.group = std::get<2>(key);
        rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end(), [&](const GroupSummaryRow& a, const GroupSummaryRow& b) {
        if (a.source != b.source) return a.source < b.source;
        if (a.feature_id != b.feature_id) return a.feature_id < b.feature_id;
        return group_order(a.summary.group) < group_order(b.summary.group);
    });
    return rows;
}

void write_comparisons_csv(std::ostream& out, const std::vector<GroupComparison>& rows) {
    out << "source,feature_id,n_c,n_n,u,p,direction,significant\n";
    for (const auto& r : rows) {
        check_csv_field(r.source);
        check_csv_field(r.feature_id);
        out << r.source << ',' << r.feature_id << ',' << r.n_controversial << ','
            << r.n_noncontroversial << ',' << fmt_double(r.u_statistic) << ','
            << fmt_double(r.p_value) << ',' << to_string(r.direction) << ','
            << (r.significant ? "true" : "false") << '\n';
    }
}

void write_comparisons_csv(const std::filesystem::path& path,
                           const std::vector<GroupComparison>& rows) {
    auto out = open_output(path);
    write_comparisons_csv(out, rows);
}

std::vector<GroupComparison> read_comparisons_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty comparisons csv");
    chomp(line);
    if (line != "source,feature_id,n_c,n_n,u,p,direction,significant") {
        throw ParseError("unexpected comparisons csv header: " + line);
    }
    std::vector<GroupComparison> rows;
    while (std::getline(in, line)) {
        chomp(line);
        if (line.empty()) continue;
        auto fields = split(line, ',');
        if (fields.size() != 8) throw ParseError("bad comparisons csv row: " + line);
        GroupComparison r;
        r.source = std::string(fields[0]);
        r.feature_id = std::string(fields[1]);
        r.n_controversial = static_cast<std::size_t>(parse_int64(fields[2]));
        r.n_noncontroversial = static_cast<std::size_t>(parse_int64(fields[3]));
        r.u_statistic = parse_double(fields[4]);
        r.p_value = parse_double(fields[5]);
        r.direction = direction_from(fields[6]);
        if (fields[7] == "true") {
            r.significant = true;
        } else if (fields[7] == "false") {
            r.significant = false;
        } else {
            throw ParseError("bad significant flag: " + line);
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<GroupComparison> read_comparisons_csv(const std::filesystem::path& path) {
    auto in = open_input(path);
    return read_comparisons_csv(in);
}

void write_summaries_csv(std::ostream& out, const std::vector<GroupSummaryRow>& rows) {
    out << "source,feature_id,group,min,q1,median,q3,max,outliers\n";
    for (const auto& r : rows) {
        check_csv_field(r.source);
        check_csv_field(r.feature_id);
        std::string outliers;
        for (double v : r.summary.outliers) {
            if (!outliers.empty()) outliers.push_back(';');
            outliers += fmt_double(v);
        }
        out << r.source << ',' << r.feature_id << ',' << r.summary.group << ','
            << fmt_double(r.summary.min) << ',' << fmt_double(r.summary.q1) << ','
            << fmt_double(r.summary.median) << ',' << fmt_double(r.summary.q3) << ','
            << fmt_double(r.summary.max) << ',' << outliers << '\n';
    }
}

void write_summaries_csv(const std::filesystem::path& path,
                         const std::vector<GroupSummaryRow>& rows) {
    auto out = open_output(path);
    write_summaries_csv(out, rows);
}

void write_ranking_csv(std::ostream& out, const std::vector<SourceRank>& rows) {
    out << "rank,source,effect\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        check_csv_field(rows[i].source);
        out << (i + 1) << ',' << rows[i].source << ',' << fmt_double(rows[i].effect) << '\n';
    }
}

void write_ranking_csv(const std::filesystem::path& path, const std::vector<SourceRank>& rows) {
    auto out = open_output(path);
    write_ranking_csv(out, rows);
}

}  // namespace mediatone
