#pragma once

#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace mediatone {

struct TokenizeOptions {
    bool drop_generic_stopwords = false;
    bool drop_news_stopwords = false;
};

// Generic English stopwords (Snowball list).
const std::unordered_set<std::string>& generic_stopwords();

// Boilerplate words common in syndicated news copy (wire credits and
// copyright lines): ap, broadcast, press, published, rewritten,
// redistributed, rights, copyright, reserved.
const std::unordered_set<std::string>& news_stopwords();

bool is_stopword(std::string_view token, const TokenizeOptions& opt);

// Lowercases, splits on non-alphanumeric boundaries (ASCII), drops tokens
// shorter than 2 characters, then applies the stopword filters enabled in
// opt. fn receives each surviving token in order.
template <class F>
void for_each_token(std::string_view text, const TokenizeOptions& opt, F&& fn) {
    std::string token;
    auto flush = [&] {
        if (token.size() >= 2 && !is_stopword(token, opt)) fn(token);
        token.clear();
    };
    for (char raw : text) {
        unsigned char c = static_cast<unsigned char>(raw);
        if (c >= 'A' && c <= 'Z') c = static_cast<unsigned char>(c - 'A' + 'a');
        if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')) {
            token.push_back(static_cast<char>(c));
        } else {
            flush();
        }
    }
    flush();
}

std::vector<std::string> normalize_tokens(std::string_view text,
                                          const TokenizeOptions& opt = {});

// Replaces <...> tag spans with a space; an unclosed '<' drops the rest of
// the text. Ingestion preprocessing only, not a general HTML parser.
std::string strip_html_tags(std::string_view text);

}  // namespace mediatone
