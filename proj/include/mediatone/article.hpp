#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mediatone {

struct Article {
    std::string id;
    std::string source;
    std::int64_t published_at = 0;  // seconds since the Unix epoch, UTC
    std::string title;
    std::string body;
};

struct ParseResult {
    std::vector<Article> articles;
    std::size_t skipped = 0;  // malformed lines (counted, not fatal)
};

// Reads JSON-lines records with fields id, source, published_at (RFC 3339),
// title, body. Lines that fail to parse, miss a field, or repeat an id are
// counted in skipped. Stream-level failure throws.
ParseResult parse_articles(std::istream& in);

std::optional<std::int64_t> parse_rfc3339(std::string_view s);
std::string format_rfc3339(std::int64_t epoch_seconds);

void write_articles_jsonl(std::ostream& out, const std::vector<Article>& articles);

}  // namespace mediatone
