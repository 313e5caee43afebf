#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mediatone/article.hpp"
#include "mediatone/tokenize.hpp"

namespace mediatone {

// Token-count aggregate of all deduplicated articles for one (source, topic)
// pair. The unit on which lexicon proportions are computed.
struct SuperArticle {
    std::string source;
    std::string topic;
    std::map<std::string, std::int64_t> token_counts;
    std::int64_t total_tokens = 0;
    std::int64_t article_count = 0;
};

// Aggregates the normalized bodies. Callers are expected to pass articles of
// the named source whose bodies contain the topic token. Throws NoArticles
// on empty input.
SuperArticle build_super_article(std::string source, std::string topic,
                                 const std::vector<Article>& articles,
                                 const TokenizeOptions& opt = {});

// Pointwise sum of token counts; both inputs must refer to the same
// (source, topic) pair.
SuperArticle merge_super_articles(const SuperArticle& a, const SuperArticle& b);

}  // namespace mediatone
