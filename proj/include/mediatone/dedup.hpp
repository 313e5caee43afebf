#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mediatone/article.hpp"

namespace mediatone {

// Sorted unique hashes of the token k-grams of a document. Documents shorter
// than k tokens contribute their whole token sequence as a single shingle;
// an empty document has no shingles.
std::vector<std::uint64_t> shingle_hashes(const std::vector<std::string>& tokens,
                                          std::size_t k = 5);

// Exact Jaccard similarity of two sorted unique hash sets. Both empty
// compares equal (1.0); one empty gives 0.0.
double jaccard(const std::vector<std::uint64_t>& a,
               const std::vector<std::uint64_t>& b);

struct DedupItem {
    std::int64_t published_at = 0;
    std::string_view id;
    const std::vector<std::uint64_t>* shingles = nullptr;
};

// Greedy near-duplicate removal. Candidates are visited earliest published
// first (ties: smallest id); a candidate is dropped when its shingle Jaccard
// with any already retained item reaches the threshold. Returns the retained
// indices in input order. The retained set is pairwise below the threshold,
// which makes the operation idempotent.
std::vector<std::size_t> deduplicate_items(std::span<const DedupItem> items,
                                           double threshold);

// Article-level wrapper; shingles are built from the raw normalized body
// tokens (no stopword removal). Preserves input order among retained.
std::vector<Article> deduplicate(const std::vector<Article>& articles,
                                 double threshold);

}  // namespace mediatone
