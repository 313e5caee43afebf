#include "mediatone/dedup.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "mediatone/rng.hpp"
#include "mediatone/tokenize.hpp"

namespace mediatone {

namespace {

std::uint64_t hash_gram(const std::vector<std::string>& tokens, std::size_t start,
                        std::size_t len) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::size_t i = start; i < start + len; ++i) {
        for (unsigned char c : tokens[i]) {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
        h ^= 0x1f;  // token separator
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

std::vector<std::uint64_t> shingle_hashes(const std::vector<std::string>& tokens,
                                          std::size_t k) {
    std::vector<std::uint64_t> out;
    if (tokens.empty()) return out;
    if (tokens.size() < k) {
        out.push_back(hash_gram(tokens, 0, tokens.size()));
        return out;
    }
    out.reserve(tokens.size() - k + 1);
    for (std::size_t i = 0; i + k <= tokens.size(); ++i)
        out.push_back(hash_gram(tokens, i, k));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

double jaccard(const std::vector<std::uint64_t>& a,
               const std::vector<std::uint64_t>& b) {
    if (a.empty() && b.empty()) return 1.0;
    if (a.empty() || b.empty()) return 0.0;
    std::size_t inter = 0, i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j])
            ++i;
        else if (b[j] < a[i])
            ++j;
        else {
            ++inter;
            ++i;
            ++j;
        }
    }
    return static_cast<double>(inter) /
           static_cast<double>(a.size() + b.size() - inter);
}

std::vector<std::size_t> deduplicate_items(std::span<const DedupItem> items,
                                           double threshold) {
    if (!(threshold > 0.0) || threshold > 1.0)
        throw std::invalid_argument("dedup threshold must be in (0, 1]");
    std::vector<std::size_t> order(items.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        if (items[x].published_at != items[y].published_at)
            return items[x].published_at < items[y].published_at;
        return items[x].id < items[y].id;
    });
    std::vector<std::size_t> retained;
    retained.reserve(items.size());
    for (std::size_t idx : order) {
        bool duplicate = false;
        for (std::size_t kept : retained) {
            if (jaccard(*items[idx].shingles, *items[kept].shingles) >= threshold) {
                duplicate = true;
                break;
            }
        }
        if (!duplicate) retained.push_back(idx);
    }
    std::sort(retained.begin(), retained.end());
    return retained;
}

std::vector<Article> deduplicate(const std::vector<Article>& articles,
                                 double threshold) {
    std::vector<std::vector<std::uint64_t>> shingles(articles.size());
    std::vector<DedupItem> items(articles.size());
    for (std::size_t i = 0; i < articles.size(); ++i) {
        shingles[i] = shingle_hashes(normalize_tokens(articles[i].body));
        items[i] = DedupItem{articles[i].published_at, articles[i].id, &shingles[i]};
    }
    std::vector<Article> out;
    for (std::size_t idx : deduplicate_items(items, threshold))
        out.push_back(articles[idx]);
    return out;
}

}  // namespace mediatone
