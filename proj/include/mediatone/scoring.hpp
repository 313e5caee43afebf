#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "mediatone/lexicon.hpp"
#include "mediatone/store.hpp"
#include "mediatone/super_article.hpp"

namespace mediatone {

struct ProportionRecord {
    std::string source;
    std::string topic;
    std::string feature_id;  // "<lexicon>:<category>", e.g. anew:negative
    double proportion = 0.0;
    std::int64_t total_tokens = 0;
};

using TermSet = std::vector<std::string>;  // sorted unique

ProportionRecord lexicon_proportion(const SuperArticle& super, const TermSet& terms,
                                    const std::string& feature_id);

struct FeatureSpec {
    std::string lexicon;
    Category category;

    std::string id() const { return lexicon + ":" + to_string(category); }
};

// bias:bias; {anew,geninq,micrownop,sentiwordnet} x {positive,negative};
// {anew,micrownop,sentiwordnet} x strong; micrownop:neutral.
std::vector<FeatureSpec> default_feature_roster();

// Comma-separated "lexicon:category" list.
std::vector<FeatureSpec> parse_feature_roster(std::string_view text);

// Term set for one feature. Strong uses native strong entries when the
// lexicon has them, else the percentile partition of a scored lexicon.
// Unresolvable features return std::nullopt.
std::optional<TermSet> resolve_feature(const FeatureSpec& spec, const Lexicon& lexicon,
                                       double strong_percentile = 0.75);

struct ResolvedFeature {
    FeatureSpec spec;
    TermSet terms;
};

// Resolves the roster against loaded lexicons; features whose lexicon is
// absent or category unresolvable are skipped via the warning callback.
std::vector<ResolvedFeature> resolve_roster(
    const std::vector<FeatureSpec>& roster,
    const std::map<std::string, Lexicon>& lexicons,
    const std::function<void(const std::string&)>& warn,
    double strong_percentile = 0.75);

std::vector<ProportionRecord> score_super_articles(
    const std::vector<SuperArticle>& supers, const std::vector<ResolvedFeature>& features);

std::vector<ProportionRecord> score_corpus(const CorpusStore& store,
                                           const std::vector<ResolvedFeature>& features);

std::vector<std::pair<std::string, std::int64_t>> top_terms(const SuperArticle& super,
                                                            const TermSet& terms,
                                                            std::size_t k);

// CSV: source,topic,feature_id,proportion,total_tokens
void write_proportions_csv(std::ostream& out, const std::vector<ProportionRecord>& records);
void write_proportions_csv(const std::filesystem::path& path,
                           const std::vector<ProportionRecord>& records);
std::vector<ProportionRecord> read_proportions_csv(std::istream& in);
std::vector<ProportionRecord> read_proportions_csv(const std::filesystem::path& path);

}  // namespace mediatone
