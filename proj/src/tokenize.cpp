#include "mediatone/tokenize.hpp"

namespace mediatone {

namespace {

const char* const kGenericStopwords[] = {
    "i",       "me",      "my",      "myself",  "we",       "our",     "ours",
    "ourselves", "you",   "your",    "yours",   "yourself", "yourselves",
    "he",      "him",     "his",     "himself", "she",      "her",     "hers",
    "herself", "it",      "its",     "itself",  "they",     "them",    "their",
    "theirs",  "themselves", "what", "which",   "who",      "whom",    "this",
    "that",    "these",   "those",   "am",      "is",       "are",     "was",
    "were",    "be",      "been",    "being",   "have",     "has",     "had",
    "having",  "do",      "does",    "did",     "doing",    "a",       "an",
    "the",     "and",     "but",     "if",      "or",       "because", "as",
    "until",   "while",   "of",      "at",      "by",       "for",     "with",
    "about",   "against", "between", "into",    "through",  "during",  "before",
    "after",   "above",   "below",   "to",      "from",     "up",      "down",
    "in",      "out",     "on",      "off",     "over",     "under",   "again",
    "further", "then",    "once",    "here",    "there",    "when",    "where",
    "why",     "how",     "all",     "any",     "both",     "each",    "few",
    "more",    "most",    "other",   "some",    "such",     "no",      "nor",
    "not",     "only",    "own",     "same",    "so",       "than",    "too",
    "very",    "s",       "t",       "can",     "will",     "just",    "don",
    "should",  "now",
};

const char* const kNewsStopwords[] = {
    "ap",        "broadcast",     "press",  "published", "rewritten",
    "redistributed", "rights",    "copyright", "reserved",
};

}  // namespace

const std::unordered_set<std::string>& generic_stopwords() {
    static const std::unordered_set<std::string> set(std::begin(kGenericStopwords),
                                                     std::end(kGenericStopwords));
    return set;
}

const std::unordered_set<std::string>& news_stopwords() {
    static const std::unordered_set<std::string> set(std::begin(kNewsStopwords),
                                                     std::end(kNewsStopwords));
    return set;
}

bool is_stopword(std::string_view token, const TokenizeOptions& opt) {
    if (!opt.drop_generic_stopwords && !opt.drop_news_stopwords) return false;
    // unordered_set<string> has no heterogeneous lookup pre-C++20 hash; the
    // token is short so one temporary string is fine.
    std::string key(token);
    if (opt.drop_generic_stopwords && generic_stopwords().count(key)) return true;
    if (opt.drop_news_stopwords && news_stopwords().count(key)) return true;
    return false;
}

std::vector<std::string> normalize_tokens(std::string_view text,
                                          const TokenizeOptions& opt) {
    std::vector<std::string> out;
    for_each_token(text, opt, [&](const std::string& tok) { out.push_back(tok); });
    return out;
}

std::string strip_html_tags(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    bool in_tag = false;
    for (char c : text) {
        if (in_tag) {
            if (c == '>') {
                in_tag = false;
                out.push_back(' ');
            }
        } else if (c == '<') {
            in_tag = true;
        } else {
            out.push_back(c);
        }
    }
    return out;
}

}  // namespace mediatone
