#include "mediatone/store.hpp"

#include <algorithm>
#include <fstream>

#include "mediatone/errors.hpp"
#include "mediatone/io.hpp"

namespace mediatone {

namespace fs = std::filesystem;

std::string sanitize_dir_name(const std::string& source) {
    std::string out;
    out.reserve(source.size());
    for (char c : source) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-' || c == '_';
        const bool upper = (c >= 'A' && c <= 'Z');
        if (upper) {
            out.push_back(static_cast<char>(c - 'A' + 'a'));
        } else if (ok) {
            out.push_back(c);
        } else {
            out.push_back('_');
        }
    }
    if (out.empty()) out = "_";
    return out;
}

StoreWriter::StoreWriter(fs::path root) : root_(std::move(root)) {
    fs::create_directories(root_);
}

void StoreWriter::add(const SuperArticle& super) {
    const std::string dir = sanitize_dir_name(super.source);
    fs::create_directories(root_ / dir);
    auto out = open_output(root_ / dir / (super.topic + ".tsv"));
    for (const auto& [token, count] : super.token_counts) {
        out << token << '\t' << count << '\n';
    }
    metas_[super.source].push_back({super.topic, super.article_count, super.total_tokens});
}

void StoreWriter::finish(const std::vector<std::string>& source_registry) {
    std::vector<std::string> sources = source_registry;
    for (const auto& [source, rows] : metas_) {
        (void)rows;
        if (std::find(sources.begin(), sources.end(), source) == sources.end()) {
            sources.push_back(source);
        }
    }
    std::sort(sources.begin(), sources.end());
    sources.erase(std::unique(sources.begin(), sources.end()), sources.end());

    auto index = open_output(root_ / "sources.tsv");
    for (const auto& source : sources) {
        const std::string dir = sanitize_dir_name(source);
        fs::create_directories(root_ / dir);
        index << source << '\t' << dir << '\n';

        auto rows = metas_[source];
        std::sort(rows.begin(), rows.end(),
                  [](const MetaRow& a, const MetaRow& b) { return a.topic < b.topic; });
        auto meta = open_output(root_ / dir / "meta.tsv");
        for (const auto& row : rows) {
            meta << row.topic << '\t' << row.article_count << '\t' << row.total_tokens << '\n';
        }
    }
}

CorpusStore CorpusStore::open(const fs::path& root) {
    CorpusStore store;
    store.root_ = root;
    auto index = open_input(root / "sources.tsv");
    std::string line;
    while (std::getline(index, line)) {
        chomp(line);
        if (line.empty() || line[0] == '#') continue;
        auto fields = split(line, '\t');
        if (fields.size() != 2) {
            throw ParseError("malformed sources.tsv row: " + line);
        }
        const std::string source(fields[0]);
        const std::string dir(fields[1]);
        store.sources_.push_back(source);
        store.dirs_[source] = dir;

        auto meta_in = open_input(root / dir / "meta.tsv");
        std::string meta_line;
        auto& topic_map = store.meta_[source];
        while (std::getline(meta_in, meta_line)) {
            chomp(meta_line);
            if (meta_line.empty() || meta_line[0] == '#') continue;
            auto mf = split(meta_line, '\t');
            if (mf.size() != 3) {
                throw ParseError("malformed meta.tsv row: " + meta_line);
            }
            TopicMeta tm;
            tm.topic = std::string(mf[0]);
            tm.article_count = parse_int64(mf[1]);
            tm.total_tokens = parse_int64(mf[2]);
            topic_map[tm.topic] = tm;
        }
    }
    std::sort(store.sources_.begin(), store.sources_.end());
    return store;
}

std::vector<std::string> CorpusStore::topics(const std::string& source) const {
    auto it = meta_.find(source);
    if (it == meta_.end()) {
        throw Error("unknown source: " + source);
    }
    std::vector<std::string> out;
    out.reserve(it->second.size());
    for (const auto& [topic, tm] : it->second) {
        (void)tm;
        out.push_back(topic);
    }
    return out;
}

const TopicMeta& CorpusStore::meta(const std::string& source, const std::string& topic) const {
    auto it = meta_.find(source);
    if (it == meta_.end()) {
        throw Error("unknown source: " + source);
    }
    auto jt = it->second.find(topic);
    if (jt == it->second.end()) {
        throw Error("unknown topic for source " + source + ": " + topic);
    }
    return jt->second;
}

SuperArticle CorpusStore::load(const std::string& source, const std::string& topic) const {
    const TopicMeta& tm = meta(source, topic);
    auto dir_it = dirs_.find(source);
    auto in = open_input(root_ / dir_it->second / (topic + ".tsv"));

    SuperArticle super;
    super.source = source;
    super.topic = topic;
    super.article_count = tm.article_count;
    super.total_tokens = tm.total_tokens;

    std::int64_t sum = 0;
    std::string line;
    while (std::getline(in, line)) {
        chomp(line);
        if (line.empty() || line[0] == '#') continue;
        auto fields = split(line, '\t');
        if (fields.size() != 2) {
            throw ParseError("malformed token row: " + line);
        }
        const std::int64_t count = parse_int64(fields[1]);
        if (count <= 0) {
            throw ParseError("non-positive token count: " + line);
        }
        super.token_counts[std::string(fields[0])] += count;
        sum += count;
    }
    if (sum != tm.total_tokens) {
        throw ParseError("token counts for " + source + "/" + topic + " sum to " +
                         std::to_string(sum) + ", meta says " + std::to_string(tm.total_tokens));
    }
    return super;
}

}  // namespace mediatone
