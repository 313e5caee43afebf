#include "mediatone/article.hpp"

#include <cctype>
#include <cstdio>
#include <istream>
#include <ostream>
#include <unordered_set>

#include <json.hpp>

#include "mediatone/errors.hpp"

namespace mediatone {

namespace {

// Days since 1970-01-01 for a civil date (proleptic Gregorian).
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

bool all_digits(std::string_view s) {
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return !s.empty();
}

int num(std::string_view s) {
    int v = 0;
    for (char c : s) v = v * 10 + (c - '0');
    return v;
}

}  // namespace

std::optional<std::int64_t> parse_rfc3339(std::string_view s) {
    // YYYY-MM-DDTHH:MM:SS[.frac](Z|+HH:MM|-HH:MM)
    if (s.size() < 20) return std::nullopt;
    if (s[4] != '-' || s[7] != '-' || (s[10] != 'T' && s[10] != 't' && s[10] != ' ') ||
        s[13] != ':' || s[16] != ':')
        return std::nullopt;
    std::string_view ys = s.substr(0, 4), mos = s.substr(5, 2), ds = s.substr(8, 2);
    std::string_view hs = s.substr(11, 2), mis = s.substr(14, 2), ss = s.substr(17, 2);
    if (!all_digits(ys) || !all_digits(mos) || !all_digits(ds) || !all_digits(hs) ||
        !all_digits(mis) || !all_digits(ss))
        return std::nullopt;
    std::size_t pos = 19;
    if (pos < s.size() && s[pos] == '.') {
        ++pos;
        std::size_t start = pos;
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
        if (pos == start) return std::nullopt;  // fractional seconds truncated
    }
    if (pos >= s.size()) return std::nullopt;
    std::int64_t offset = 0;
    if (s[pos] == 'Z' || s[pos] == 'z') {
        if (pos + 1 != s.size()) return std::nullopt;
    } else if (s[pos] == '+' || s[pos] == '-') {
        if (pos + 6 != s.size() || s[pos + 3] != ':') return std::nullopt;
        std::string_view oh = s.substr(pos + 1, 2), om = s.substr(pos + 4, 2);
        if (!all_digits(oh) || !all_digits(om)) return std::nullopt;
        offset = num(oh) * 3600 + num(om) * 60;
        if (s[pos] == '-') offset = -offset;
    } else {
        return std::nullopt;
    }
    int year = num(ys), month = num(mos), day = num(ds);
    int hour = num(hs), minute = num(mis), second = num(ss);
    if (month < 1 || month > 12 || day < 1 || day > 31) return std::nullopt;
    if (hour > 23 || minute > 59 || second > 60) return std::nullopt;
    if (second == 60) second = 59;  // fold leap seconds
    std::int64_t days = days_from_civil(year, static_cast<unsigned>(month),
                                        static_cast<unsigned>(day));
    return days * 86400 + hour * 3600 + minute * 60 + second - offset;
}

std::string format_rfc3339(std::int64_t t) {
    std::int64_t days = t / 86400;
    std::int64_t rem = t % 86400;
    if (rem < 0) {
        rem += 86400;
        --days;
    }
    // civil_from_days
    std::int64_t z = days + 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp + (mp < 10 ? 3 : -9);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04lld-%02u-%02uT%02lld:%02lld:%02lldZ",
                  static_cast<long long>(y + (m <= 2)), m, d,
                  static_cast<long long>(rem / 3600),
                  static_cast<long long>((rem / 60) % 60),
                  static_cast<long long>(rem % 60));
    return buf;
}

ParseResult parse_articles(std::istream& in) {
    ParseResult result;
    std::unordered_set<std::string> seen_ids;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object()) {
            ++result.skipped;
            continue;
        }
        auto get_str = [&](const char* key) -> const std::string* {
            auto it = j.find(key);
            if (it == j.end() || !it->is_string()) return nullptr;
            return it->get_ptr<const std::string*>();
        };
        const std::string* id = get_str("id");
        const std::string* source = get_str("source");
        const std::string* published = get_str("published_at");
        const std::string* title = get_str("title");
        const std::string* body = get_str("body");
        if (!id || id->empty() || !source || source->empty() || !published ||
            !title || !body) {
            ++result.skipped;
            continue;
        }
        auto ts = parse_rfc3339(*published);
        if (!ts) {
            ++result.skipped;
            continue;
        }
        if (!seen_ids.insert(*id).second) {
            ++result.skipped;  // duplicate id within the batch
            continue;
        }
        result.articles.push_back(Article{*id, *source, *ts, *title, *body});
    }
    if (in.bad()) throw Error("I/O failure while reading article stream");
    return result;
}

void write_articles_jsonl(std::ostream& out, const std::vector<Article>& articles) {
    for (const auto& article : articles) {
        nlohmann::json j;
        j["id"] = article.id;
        j["source"] = article.source;
        j["published_at"] = format_rfc3339(article.published_at);
        j["title"] = article.title;
        j["body"] = article.body;
        out << j.dump() << '\n';
    }
}

}  // namespace mediatone
