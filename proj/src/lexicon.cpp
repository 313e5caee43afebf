#include "mediatone/lexicon.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "mediatone/errors.hpp"
#include "mediatone/io.hpp"

namespace mediatone {

namespace {

std::string lower_ascii(std::string_view text) {
    std::string out(text);
    for (char& c : out) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return out;
}

void sort_entries(Lexicon& lexicon) {
    std::sort(lexicon.entries.begin(), lexicon.entries.end(),
              [](const LexiconEntry& a, const LexiconEntry& b) {
                  if (a.term != b.term) return a.term < b.term;
                  return static_cast<int>(a.category) < static_cast<int>(b.category);
              });
}

struct Row {
    std::string term;
    std::vector<std::string> rest;
};

std::vector<Row> read_rows(std::istream& in) {
    std::vector<Row> rows;
    std::string line;
    while (std::getline(in, line)) {
        chomp(line);
        if (line.empty() || line[0] == '#') continue;
        auto fields = split(line, '\t');
        Row row;
        row.term = lower_ascii(fields[0]);
        if (row.term.empty()) throw ParseError("empty term in lexicon row: " + line);
        for (std::size_t i = 1; i < fields.size(); ++i) row.rest.emplace_back(fields[i]);
        rows.push_back(std::move(row));
    }
    return rows;
}

Lexicon load_anew(const std::vector<Row>& rows) {
    Lexicon lexicon;
    lexicon.name = "anew";
    std::vector<std::pair<std::string, double>> scored;
    std::set<std::string> seen;
    double sum = 0.0;
    for (const auto& row : rows) {
        std::string_view score_field;
        if (row.rest.size() == 1) {
            score_field = row.rest[0];
        } else if (row.rest.size() == 2 && row.rest[0] == "valence") {
            score_field = row.rest[1];
        } else {
            throw ParseError("bad anew row for term: " + row.term);
        }
        const double valence = parse_double(score_field);
        if (valence < 1.0 || valence > 9.0) {
            throw ParseError("anew valence outside [1,9] for term: " + row.term);
        }
        if (!seen.insert(row.term).second) {
            throw ParseError("duplicate anew term: " + row.term);
        }
        scored.emplace_back(row.term, valence);
        sum += valence;
    }
    if (scored.empty()) throw ParseError("empty anew lexicon");
    const double mean = sum / static_cast<double>(scored.size());
    lexicon.neutral_midpoint = (mean - 1.0) / 8.0;
    for (const auto& [term, valence] : scored) {
        Category category = Category::Neutral;
        if (valence > mean) category = Category::Positive;
        if (valence < mean) category = Category::Negative;
        lexicon.entries.push_back({term, category, (valence - 1.0) / 8.0});
    }
    return lexicon;
}

Lexicon load_geninq(const std::vector<Row>& rows) {
    Lexicon lexicon;
    lexicon.name = "geninq";
    std::set<std::pair<std::string, Category>> seen;
    for (const auto& row : rows) {
        if (row.rest.empty() || row.rest.size() > 2) {
            throw ParseError("bad geninq row for term: " + row.term);
        }
        Category category;
        if (row.rest[0] == "Positiv") {
            category = Category::Positive;
        } else if (row.rest[0] == "Negativ") {
            category = Category::Negative;
        } else if (row.rest[0] == "Strong") {
            category = Category::Strong;
        } else {
            throw ParseError("unknown geninq tag: " + row.rest[0]);
        }
        if (row.rest.size() == 2) parse_double(row.rest[1]);  // validate, value unused
        if (!seen.insert({row.term, category}).second) {
            throw ParseError("duplicate geninq row: " + row.term + " " + row.rest[0]);
        }
        lexicon.entries.push_back({row.term, category, 1.0});
    }
    return lexicon;
}

Lexicon load_bias(const std::vector<Row>& rows) {
    Lexicon lexicon;
    lexicon.name = "bias";
    std::set<std::string> seen;
    for (const auto& row : rows) {
        if (!row.rest.empty()) {
            if (row.rest[0] != "bias" || row.rest.size() > 2) {
                throw ParseError("bad bias row for term: " + row.term);
            }
            if (row.rest.size() == 2) parse_double(row.rest[1]);
        }
        if (!seen.insert(row.term).second) {
            throw ParseError("duplicate bias term: " + row.term);
        }
        lexicon.entries.push_back({row.term, Category::Bias, 1.0});
    }
    return lexicon;
}

}  // namespace

const char* to_string(Category category) {
    switch (category) {
        case Category::Positive: return "positive";
        case Category::Negative: return "negative";
        case Category::Neutral: return "neutral";
        case Category::Bias: return "bias";
        case Category::Strong: return "strong";
    }
    return "?";
}

Category category_from(std::string_view text) {
    if (text == "positive") return Category::Positive;
    if (text == "negative") return Category::Negative;
    if (text == "neutral") return Category::Neutral;
    if (text == "bias") return Category::Bias;
    if (text == "strong") return Category::Strong;
    throw ParseError("unknown category: " + std::string(text));
}

WordFormat word_format_from(std::string_view tag) {
    if (tag == "anew") return WordFormat::Anew;
    if (tag == "geninq") return WordFormat::GenInq;
    if (tag == "bias") return WordFormat::Bias;
    throw ParseError("unknown word-lexicon format: " + std::string(tag));
}

SynsetFormat synset_format_from(std::string_view tag) {
    if (tag == "micrownop") return SynsetFormat::MicroWnop;
    if (tag == "sentiwordnet") return SynsetFormat::SentiWordNet;
    throw ParseError("unknown synset-lexicon format: " + std::string(tag));
}

const char* to_string(WordFormat format) {
    switch (format) {
        case WordFormat::Anew: return "anew";
        case WordFormat::GenInq: return "geninq";
        case WordFormat::Bias: return "bias";
    }
    return "?";
}

const char* to_string(SynsetFormat format) {
    switch (format) {
        case SynsetFormat::MicroWnop: return "micrownop";
        case SynsetFormat::SentiWordNet: return "sentiwordnet";
    }
    return "?";
}

bool is_word_format(std::string_view tag) {
    return tag == "anew" || tag == "geninq" || tag == "bias";
}

bool is_synset_format(std::string_view tag) {
    return tag == "micrownop" || tag == "sentiwordnet";
}

Lexicon load_word_lexicon(std::istream& in, WordFormat format) {
    const auto rows = read_rows(in);
    Lexicon lexicon;
    switch (format) {
        case WordFormat::Anew: lexicon = load_anew(rows); break;
        case WordFormat::GenInq: lexicon = load_geninq(rows); break;
        case WordFormat::Bias: lexicon = load_bias(rows); break;
    }
    sort_entries(lexicon);
    return lexicon;
}

Lexicon load_word_lexicon(const std::filesystem::path& path, WordFormat format) {
    auto in = open_input(path);
    return load_word_lexicon(in, format);
}

double default_polarity_margin(SynsetFormat format) {
    return format == SynsetFormat::MicroWnop ? 0.0 : 0.25;
}

Lexicon flatten_synset_lexicon(std::istream& in, SynsetFormat format,
                               std::optional<double> polarity_margin) {
    const bool has_neutral = format == SynsetFormat::MicroWnop;
    const std::size_t want_fields = has_neutral ? 5 : 4;
    const double margin = polarity_margin.value_or(default_polarity_margin(format));

    std::map<std::string, std::vector<std::array<double, 3>>> per_lemma;
    std::string line;
    while (std::getline(in, line)) {
        chomp(line);
        if (line.empty() || line[0] == '#') continue;
        auto fields = split(line, '\t');
        if (fields.size() != want_fields) {
            throw ParseError("bad synset row (want " + std::to_string(want_fields) +
                             " fields): " + line);
        }
        std::array<double, 3> scores{};
        scores[0] = parse_double(fields[2]);
        scores[1] = parse_double(fields[3]);
        scores[2] = has_neutral ? parse_double(fields[4]) : 0.0;
        for (int i = 0; i < (has_neutral ? 3 : 2); ++i) {
            if (scores[i] < 0.0 || scores[i] > 1.0) {
                throw ParseError("synset score outside [0,1]: " + line);
            }
        }
        std::set<std::string> lemmas;
        for (auto lemma : split(fields[1], ',')) {
            if (!lemma.empty()) lemmas.insert(lower_ascii(lemma));
        }
        if (lemmas.empty()) throw ParseError("empty lemma list: " + line);
        for (const auto& lemma : lemmas) per_lemma[lemma].push_back(scores);
    }

    Lexicon lexicon;
    lexicon.name = has_neutral ? "micrownop" : "sentiwordnet";
    lexicon.neutral_midpoint = 0.0;
    for (auto& [lemma, scores] : per_lemma) {
        // Sort before summing so row permutations cannot perturb the means.
        std::sort(scores.begin(), scores.end());
        double sum_pos = 0.0, sum_neg = 0.0, sum_neu = 0.0;
        for (const auto& s : scores) {
            sum_pos += s[0];
            sum_neg += s[1];
            sum_neu += s[2];
        }
        const double n = static_cast<double>(scores.size());
        const double mean_pos = sum_pos / n;
        const double mean_neg = sum_neg / n;
        const double mean_neu = sum_neu / n;

        LexiconEntry entry;
        entry.term = lemma;
        if (mean_pos - mean_neg > margin) {
            entry.category = Category::Positive;
            entry.strength = mean_pos;
        } else if (mean_neg - mean_pos > margin) {
            entry.category = Category::Negative;
            entry.strength = mean_neg;
        } else {
            entry.category = Category::Neutral;
            entry.strength = has_neutral
                                 ? mean_neu
                                 : std::clamp(1.0 - mean_pos - mean_neg, 0.0, 1.0);
        }
        lexicon.entries.push_back(std::move(entry));
    }
    return lexicon;
}

Lexicon flatten_synset_lexicon(const std::filesystem::path& path, SynsetFormat format,
                               std::optional<double> polarity_margin) {
    auto in = open_input(path);
    return flatten_synset_lexicon(in, format, polarity_margin);
}

StrengthPartition strength_partition(const Lexicon& lexicon, double percentile) {
    if (!lexicon.scored()) {
        throw NotScored("lexicon " + lexicon.name + " carries no strength scores");
    }
    if (percentile <= 0.0 || percentile > 1.0) {
        throw std::invalid_argument("percentile must be in (0,1]");
    }
    const double midpoint = *lexicon.neutral_midpoint;
    std::vector<std::pair<std::string, double>> polar;
    for (const auto& entry : lexicon.entries) {
        if (entry.category == Category::Positive || entry.category == Category::Negative) {
            polar.emplace_back(entry.term, std::abs(entry.strength - midpoint));
        }
    }
    StrengthPartition partition;
    if (polar.empty()) return partition;

    std::vector<double> deviations;
    deviations.reserve(polar.size());
    for (const auto& [term, dev] : polar) deviations.push_back(dev);
    std::sort(deviations.begin(), deviations.end());
    const auto n = deviations.size();
    auto rank = static_cast<std::size_t>(std::ceil(percentile * static_cast<double>(n) - 1e-9));
    if (rank == 0) rank = 1;
    const double cutoff = deviations[rank - 1];

    for (const auto& [term, dev] : polar) {
        (dev >= cutoff ? partition.strong : partition.weak).push_back(term);
    }
    return partition;
}

std::vector<std::string> category_terms(const Lexicon& lexicon, Category category) {
    std::vector<std::string> terms;
    for (const auto& entry : lexicon.entries) {
        if (entry.category == category) terms.push_back(entry.term);
    }
    std::sort(terms.begin(), terms.end());
    terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
    return terms;
}

}  // namespace mediatone
