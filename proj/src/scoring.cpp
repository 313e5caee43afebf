#include "mediatone/scoring.hpp"

#include <algorithm>
#include <ostream>

#include "mediatone/errors.hpp"
#include "mediatone/io.hpp"

namespace mediatone {

namespace {

const std::vector<std::string>& known_lexicon_names() {
    static const std::vector<std::string> names = {"anew", "bias", "geninq", "micrownop",
                                                   "sentiwordnet"};
    return names;
}

void check_csv_field(const std::string& field) {
    if (field.find(',') != std::string::npos || field.find('\n') != std::string::npos) {
        throw ParseError("field not representable in csv: " + field);
    }
}

}  // namespace

ProportionRecord lexicon_proportion(const SuperArticle& super, const TermSet& terms,
                                    const std::string& feature_id) {
    if (super.total_tokens <= 0) {
        throw InsufficientText("empty super-article: " + super.source + "/" + super.topic);
    }
    std::int64_t matched = 0;
    for (const auto& term : terms) {
        auto it = super.token_counts.find(term);
        if (it != super.token_counts.end()) matched += it->second;
    }
    ProportionRecord record;
    record.source = super.source;
    record.topic = super.topic;
    record.feature_id = feature_id;
    record.proportion = static_cast<double>(matched) / static_cast<double>(super.total_tokens);
    record.total_tokens = super.total_tokens;
    return record;
}

std::vector<FeatureSpec> default_feature_roster() {
    std::vector<FeatureSpec> roster;
    roster.push_back({"bias", Category::Bias});
    for (const char* name : {"anew", "geninq", "micrownop", "sentiwordnet"}) {
        roster.push_back({name, Category::Positive});
        roster.push_back({name, Category::Negative});
    }
    for (const char* name : {"anew", "micrownop", "sentiwordnet"}) {
        roster.push_back({name, Category::Strong});
    }
    roster.push_back({"micrownop", Category::Neutral});
    return roster;
}

std::vector<FeatureSpec> parse_feature_roster(std::string_view text) {
    std::vector<FeatureSpec> roster;
    for (auto item : split(text, ',')) {
        while (!item.empty() && (item.front() == ' ' || item.front() == '\t')) {
            item.remove_prefix(1);
        }
        while (!item.empty() && (item.back() == ' ' || item.back() == '\t')) {
            item.remove_suffix(1);
        }
        if (item.empty()) continue;
        const auto colon = item.find(':');
        if (colon == std::string_view::npos) {
            throw ParseError("feature must be lexicon:category, got: " + std::string(item));
        }
        FeatureSpec spec;
        spec.lexicon = std::string(item.substr(0, colon));
        spec.category = category_from(item.substr(colon + 1));
        const auto& names = known_lexicon_names();
        if (std::find(names.begin(), names.end(), spec.lexicon) == names.end()) {
            throw ParseError("unknown lexicon in feature: " + std::string(item));
        }
        for (const auto& existing : roster) {
            if (existing.id() == spec.id()) {
                throw ParseError("duplicate feature: " + spec.id());
            }
        }
        roster.push_back(std::move(spec));
    }
    if (roster.empty()) throw ParseError("empty feature roster");
    return roster;
}

std::optional<TermSet> resolve_feature(const FeatureSpec& spec, const Lexicon& lexicon,
                                       double strong_percentile) {
    TermSet terms;
    if (spec.category == Category::Strong) {
        terms = category_terms(lexicon, Category::Strong);
        if (terms.empty() && lexicon.scored()) {
            terms = strength_partition(lexicon, strong_percentile).strong;
            std::sort(terms.begin(), terms.end());
            terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
        }
    } else {
        terms = category_terms(lexicon, spec.category);
    }
    if (terms.empty()) return std::nullopt;
    return terms;
}

std::vector<ResolvedFeature> resolve_roster(
    const std::vector<FeatureSpec>& roster,
    const std::map<std::string, Lexicon>& lexicons,
    const std::function<void(const std::string&)>& warn,
    double strong_percentile) {
    std::vector<ResolvedFeature> resolved;
    for (const auto& spec : roster) {
        auto it = lexicons.find(spec.lexicon);
        if (it == lexicons.end()) {
            warn("feature " + spec.id() + ": lexicon not loaded, skipping");
            continue;
        }
        auto terms = resolve_feature(spec, it->second, strong_percentile);
        if (!terms) {
            warn("feature " + spec.id() + ": category unavailable, skipping");
            continue;
        }
        resolved.push_back({spec, std::move(*terms)});
    }
    return resolved;
}

std::vector<ProportionRecord> score_super_articles(
    const std::vector<SuperArticle>& supers, const std::vector<ResolvedFeature>& features) {
    std::vector<ProportionRecord> records;
    records.reserve(supers.size() * features.size());
    for (const auto& super : supers) {
        if (super.total_tokens <= 0) continue;
        for (const auto& feature : features) {
            records.push_back(lexicon_proportion(super, feature.terms, feature.spec.id()));
        }
    }
    std::sort(records.begin(), records.end(),
              [](const ProportionRecord& a, const ProportionRecord& b) {
                  if (a.source != b.source) return a.source < b.source;
                  if (a.topic != b.topic) return a.topic < b.topic;
                  return a.feature_id < b.feature_id;
              });
    return records;
}

std::vector<ProportionRecord> score_corpus(const CorpusStore& store,
                                           const std::vector<ResolvedFeature>& features) {
    std::vector<ProportionRecord> records;
    for (const auto& source : store.sources()) {
        for (const auto& topic : store.topics(source)) {
            if (store.meta(source, topic).total_tokens <= 0) continue;
            const SuperArticle super = store.load(source, topic);
            for (const auto& feature : features) {
                records.push_back(lexicon_proportion(super, feature.terms, feature.spec.id()));
            }
        }
    }
    std::sort(records.begin(), records.end(),
              [](const ProportionRecord& a, const ProportionRecord& b) {
                  if (a.source != b.source) return a.source < b.source;
                  if (a.topic != b.topic) return a.topic < b.topic;
                  return a.feature_id < b.feature_id;
              });
    return records;
}

std::vector<std::pair<std::string, std::int64_t>> top_terms(const SuperArticle& super,
                                                            const TermSet& terms,
                                                            std::size_t k) {
    if (k == 0) throw std::invalid_argument("top_terms: k must be >= 1");
    if (super.total_tokens <= 0) {
        throw InsufficientText("empty super-article: " + super.source + "/" + super.topic);
    }
    std::vector<std::pair<std::string, std::int64_t>> matches;
    for (const auto& term : terms) {
        auto it = super.token_counts.find(term);
        if (it != super.token_counts.end() && it->second > 0) {
            matches.emplace_back(term, it->second);
        }
    }
    std::sort(matches.begin(), matches.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (matches.size() > k) matches.resize(k);
    return matches;
}

void write_proportions_csv(std::ostream& out, const std::vector<ProportionRecord>& records) {
    out << "source,topic,feature_id,proportion,total_tokens\n";
    for (const auto& r : records) {
        check_csv_field(r.source);
        check_csv_field(r.topic);
        check_csv_field(r.feature_id);
        out << r.source << ',' << r.topic << ',' << r.feature_id << ','
            << fmt_double(r.proportion) << ',' << r.total_tokens << '\n';
    }
}

void write_proportions_csv(const std::filesystem::path& path,
                           const std::vector<ProportionRecord>& records) {
    auto out = open_output(path);
    write_proportions_csv(out, records);
}

std::vector<ProportionRecord> read_proportions_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty proportions csv");
    chomp(line);
    if (line != "source,topic,feature_id,proportion,total_tokens") {
        throw ParseError("unexpected proportions csv header: " + line);
    }
    std::vector<ProportionRecord> records;
    while (std::getline(in, line)) {
        chomp(line);
        if (line.empty()) continue;
        auto fields = split(line, ',');
        if (fields.size() != 5) throw ParseError("bad proportions csv row: " + line);
        ProportionRecord r;
        r.source = std::string(fields[0]);
        r.topic = std::string(fields[1]);
        r.feature_id = std::string(fields[2]);
        r.proportion = parse_double(fields[3]);
        r.total_tokens = parse_int64(fields[4]);
        if (r.proportion < 0.0 || r.proportion > 1.0) {
            throw ParseError("proportion outside [0,1]: " + line);
        }
        if (r.total_tokens <= 0) throw ParseError("non-positive total_tokens: " + line);
        records.push_back(std::move(r));
    }
    return records;
}

std::vector<ProportionRecord> read_proportions_csv(const std::filesystem::path& path) {
    auto in = open_input(path);
    return read_proportions_csv(in);
}

}  // namespace mediatone
