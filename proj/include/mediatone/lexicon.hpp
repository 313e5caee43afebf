#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mediatone {

enum class Category { Positive, Negative, Neutral, Bias, Strong };

const char* to_string(Category category);
Category category_from(std::string_view text);

struct LexiconEntry {
    std::string term;
    Category category;
    double strength;  // in [0,1]; 1.0 for unscored resources
};

struct Lexicon {
    std::string name;  // anew, geninq, micrownop, sentiwordnet, bias
    std::vector<LexiconEntry> entries;  // sorted by (term, category)
    std::optional<double> neutral_midpoint;  // scored lexicons only

    bool scored() const { return neutral_midpoint.has_value(); }
};

enum class WordFormat { Anew, GenInq, Bias };
enum class SynsetFormat { MicroWnop, SentiWordNet };

WordFormat word_format_from(std::string_view tag);
SynsetFormat synset_format_from(std::string_view tag);
const char* to_string(WordFormat format);
const char* to_string(SynsetFormat format);
bool is_word_format(std::string_view tag);
bool is_synset_format(std::string_view tag);

// Normalized word TSV. Canonical rows are term<TAB>category<TAB>score;
// per-format short rows are also accepted:
//   anew    term<TAB>valence   (category column, when present, must be "valence";
//           valence on the 1-9 scale, polarity split at the loaded mean)
//   geninq  term<TAB>Positiv|Negativ|Strong  (score column ignored, strength 1.0)
//   bias    term                              (category column, when present, "bias")
Lexicon load_word_lexicon(std::istream& in, WordFormat format);
Lexicon load_word_lexicon(const std::filesystem::path& path, WordFormat format);

// Synset TSV: synset_id<TAB>lemma1,lemma2<TAB>pos<TAB>neg  plus a fifth
// neutral column for MicroWNOp. Lemma scores are uniform means over all
// synsets containing the lemma; polarity needs a mean gap > margin.
double default_polarity_margin(SynsetFormat format);  // 0.0 mwn, 0.25 swn
Lexicon flatten_synset_lexicon(std::istream& in, SynsetFormat format,
                               std::optional<double> polarity_margin = std::nullopt);
Lexicon flatten_synset_lexicon(const std::filesystem::path& path, SynsetFormat format,
                               std::optional<double> polarity_margin = std::nullopt);

struct StrengthPartition {
    std::vector<std::string> strong;
    std::vector<std::string> weak;
};

// Nearest-rank 75th percentile of |strength - neutral_midpoint| over polar
// terms; deviations at or above the cutoff are strong. Unscored -> NotScored.
StrengthPartition strength_partition(const Lexicon& lexicon, double percentile = 0.75);

std::vector<std::string> category_terms(const Lexicon& lexicon, Category category);

}  // namespace mediatone
