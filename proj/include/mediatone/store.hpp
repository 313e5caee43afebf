#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "mediatone/super_article.hpp"

namespace mediatone {

// On-disk corpus layout:
//   <root>/sources.tsv          source<TAB>directory, sorted by source
//   <root>/<dir>/meta.tsv       topic<TAB>article_count<TAB>total_tokens
//   <root>/<dir>/<topic>.tsv    token<TAB>count, sorted by token
std::string sanitize_dir_name(const std::string& source);

class StoreWriter {
  public:
    explicit StoreWriter(std::filesystem::path root);

    void add(const SuperArticle& super);

    // Writes meta.tsv per source and sources.tsv. Sources in the registry
    // with no super-articles still get an (empty) directory and meta file.
    void finish(const std::vector<std::string>& source_registry);

  private:
    struct MetaRow {
        std::string topic;
        std::int64_t article_count;
        std::int64_t total_tokens;
    };
    std::filesystem::path root_;
    std::map<std::string, std::vector<MetaRow>> metas_;  // source -> rows
};

struct TopicMeta {
    std::string topic;
    std::int64_t article_count = 0;
    std::int64_t total_tokens = 0;
};

class CorpusStore {
  public:
    static CorpusStore open(const std::filesystem::path& root);

    const std::vector<std::string>& sources() const { return sources_; }
    std::vector<std::string> topics(const std::string& source) const;
    const TopicMeta& meta(const std::string& source, const std::string& topic) const;
    SuperArticle load(const std::string& source, const std::string& topic) const;

  private:
    std::filesystem::path root_;
    std::vector<std::string> sources_;
    std::map<std::string, std::string> dirs_;                    // source -> dir
    std::map<std::string, std::map<std::string, TopicMeta>> meta_;  // source -> topic -> meta
};

}  // namespace mediatone
