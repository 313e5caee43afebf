#include "mediatone/super_article.hpp"

#include <stdexcept>

#include "mediatone/errors.hpp"

namespace mediatone {

SuperArticle build_super_article(std::string source, std::string topic,
                                 const std::vector<Article>& articles,
                                 const TokenizeOptions& opt) {
    if (articles.empty())
        throw NoArticles("no articles for (" + source + ", " + topic + ")");
    SuperArticle super;
    super.source = std::move(source);
    super.topic = std::move(topic);
    super.article_count = static_cast<std::int64_t>(articles.size());
    for (const Article& a : articles) {
        for_each_token(a.body, opt, [&](const std::string& tok) {
            ++super.token_counts[tok];
            ++super.total_tokens;
        });
    }
    return super;
}

SuperArticle merge_super_articles(const SuperArticle& a, const SuperArticle& b) {
    if (a.source != b.source || a.topic != b.topic)
        throw std::invalid_argument("merge requires matching (source, topic)");
    SuperArticle out = a;
    for (const auto& [token, count] : b.token_counts) out.token_counts[token] += count;
    out.total_tokens += b.total_tokens;
    out.article_count += b.article_count;
    return out;
}

}  // namespace mediatone
