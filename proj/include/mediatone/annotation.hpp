#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "mediatone/words.hpp"

namespace mediatone {

struct RawLabel {
    std::string annotator_id;
    std::string term;
    Klass label;  // C0..C3
};

struct GoldItem {
    std::string term;
    bool controversial;  // C2/C3 answers count as agreement when true
};

struct AggregatedWord {
    std::string term;
    Klass klass;
    double confidence = 0.0;  // modal fraction, > majority threshold
    std::size_t n_labels = 0;
    bool excluded_from_analysis = false;  // C1 outcomes are kept but flagged
};

// Annotators whose binary agreement with the gold set reaches min_agreement.
// Annotators with no gold exposure are excluded via warn.
std::set<std::string> gate_annotators(const std::vector<RawLabel>& raw,
                                      const std::vector<GoldItem>& gold, double min_agreement,
                                      const std::function<void(const std::string&)>& warn);

struct AggregateOptions {
    std::size_t judgments = 7;  // labels per word; extras truncated, fewer skipped
    double majority = 0.6;      // modal fraction must exceed this strictly
};

// Majority aggregation over trusted labels only; words without a strict
// majority are dropped; insufficient labels are skipped via warn. Sorted by
// term; invariant to input row order.
std::vector<AggregatedWord> aggregate(const std::vector<RawLabel>& raw,
                                      const std::set<std::string>& trusted,
                                      const AggregateOptions& opt,
                                      const std::function<void(const std::string&)>& warn);

// Words TSV: term<TAB>klass[<TAB>user_score]. expect_reference_counts checks
// the 145/45/272 class split of the bundled reference list.
std::vector<TopicWord> load_words_tsv(std::istream& in);
std::vector<TopicWord> load_words_tsv(const std::filesystem::path& path);
std::vector<TopicWord> load_reference_words(const std::filesystem::path& path,
                                            bool expect_reference_counts = true);

void write_words_tsv(std::ostream& out, const std::vector<TopicWord>& words);
void write_words_tsv(const std::filesystem::path& path, const std::vector<TopicWord>& words);

std::vector<TopicWord> to_topic_words(const std::vector<AggregatedWord>& aggregated);

// CSV: annotator_id,term,label; duplicate (annotator, term) rows rejected.
std::vector<RawLabel> load_raw_labels_csv(std::istream& in);
std::vector<RawLabel> load_raw_labels_csv(const std::filesystem::path& path);

// CSV: term,binary with binary in {controversial, non-controversial}
std::vector<GoldItem> load_gold_csv(std::istream& in);
std::vector<GoldItem> load_gold_csv(const std::filesystem::path& path);

}  // namespace mediatone
