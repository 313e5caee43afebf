#include "mediatone/annotation.hpp"

#include <algorithm>
#include <map>
#include <ostream>

#include "mediatone/errors.hpp"
#include "mediatone/io.hpp"

namespace mediatone {

namespace {

bool binary_controversial(Klass klass) { return klass == Klass::C2 || klass == Klass::C3; }

}  // namespace

std::set<std::string> gate_annotators(const std::vector<RawLabel>& raw,
                                      const std::vector<GoldItem>& gold, double min_agreement,
                                      const std::function<void(const std::string&)>& warn) {
    if (min_agreement < 0.0 || min_agreement > 1.0) {
        throw std::invalid_argument("min_agreement must be in [0,1]");
    }
    std::map<std::string, bool> gold_by_term;
    for (const auto& item : gold) gold_by_term[item.term] = item.controversial;

    struct Tally {
        std::size_t exposed = 0;
        std::size_t agreed = 0;
    };
    std::map<std::string, Tally> tallies;
    for (const auto& label : raw) {
        auto& tally = tallies[label.annotator_id];  // registers zero-exposure annotators too
        auto it = gold_by_term.find(label.term);
        if (it == gold_by_term.end()) continue;
        ++tally.exposed;
        if (binary_controversial(label.label) == it->second) ++tally.agreed;
    }

    std::set<std::string> trusted;
    for (const auto& [annotator, tally] : tallies) {
        if (tally.exposed == 0) {
            warn("annotator " + annotator + " never saw a gold item, excluding");
            continue;
        }
        const double agreement =
            static_cast<double>(tally.agreed) / static_cast<double>(tally.exposed);
        if (agreement >= min_agreement) trusted.insert(annotator);
    }
    return trusted;
}

std::vector<AggregatedWord> aggregate(const std::vector<RawLabel>& raw,
                                      const std::set<std::string>& trusted,
                                      const AggregateOptions& opt,
                                      const std::function<void(const std::string&)>& warn) {
    if (opt.judgments == 0) throw std::invalid_argument("judgments must be >= 1");
    if (opt.majority < 0.0 || opt.majority >= 1.0) {
        throw std::invalid_argument("majority must be in [0,1)");
    }
    std::map<std::string, std::vector<std::pair<std::string, Klass>>> by_term;
    for (const auto& label : raw) {
        if (!trusted.count(label.annotator_id)) continue;
        by_term[label.term].emplace_back(label.annotator_id, label.label);
    }

    std::vector<AggregatedWord> out;
    for (auto& [term, labels] : by_term) {
        if (labels.size() < opt.judgments) {
            warn("word " + term + " has " + std::to_string(labels.size()) +
                 " trusted labels, needs " + std::to_string(opt.judgments) + ", skipping");
            continue;
        }
        std::sort(labels.begin(), labels.end());  // stable annotator_id order
        labels.resize(opt.judgments);

        std::map<Klass, std::size_t> counts;
        for (const auto& [annotator, klass] : labels) ++counts[klass];
        Klass modal = Klass::C0;
        std::size_t best = 0;
        for (const auto& [klass, count] : counts) {
            if (count > best) {
                best = count;
                modal = klass;
            }
        }
        const double fraction = static_cast<double>(best) / static_cast<double>(opt.judgments);
        if (fraction <= opt.majority) continue;

        AggregatedWord word;
        word.term = term;
        word.klass = modal;
        word.confidence = fraction;
        word.n_labels = opt.judgments;
        word.excluded_from_analysis = modal == Klass::C1;
        out.push_back(std::move(word));
    }
    return out;  // by_term is a std::map, so output is term-sorted
}

std::vector<TopicWord> load_words_tsv(std::istream& in) {
    std::vector<TopicWord> words;
    std::set<std::string> seen;
    std::string line;
    while (std::getline(in, line)) {
        chomp(line);
        if (line.empty() || line[0] == '#') continue;
        auto fields = split(line, '\t');
        if (fields.size() < 2 || fields.size() > 3) {
            throw ParseError("bad words row: " + line);
        }
        TopicWord word;
        word.term = std::string(fields[0]);
        if (word.term.empty() || word.term.find(' ') != std::string::npos) {
            throw ParseError("term must be a single token: " + line);
        }
        for (char& c : word.term) {
            if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
        }
        auto klass = klass_from(fields[1]);
        if (!klass) throw ParseError("bad class in words row: " + line);
        word.klass = *klass;
        if (fields.size() == 3 && !fields[2].empty()) {
            const double score = parse_double(fields[2]);
            if (score < 0.0 || score > 1.0) {
                throw ParseError("user_score outside [0,1]: " + line);
            }
            word.user_score = score;
        }
        if (!seen.insert(word.term).second) {
            throw ParseError("duplicate term in words file: " + word.term);
        }
        words.push_back(std::move(word));
    }
    return words;
}

std::vector<TopicWord> load_words_tsv(const std::filesystem::path& path) {
    auto in = open_input(path);
    return load_words_tsv(in);
}

std::vector<TopicWord> load_reference_words(const std::filesystem::path& path,
                                            bool expect_reference_counts) {
    auto words = load_words_tsv(path);
    if (expect_reference_counts) {
        std::size_t c3 = 0, c2 = 0, c0 = 0;
        for (const auto& word : words) {
            if (word.klass == Klass::C3) ++c3;
            if (word.klass == Klass::C2) ++c2;
            if (word.klass == Klass::C0) ++c0;
        }
        if (c3 != 145 || c2 != 45 || c0 != 272) {
            throw ParseError("reference word list must hold 145 C3 / 45 C2 / 272 C0, got " +
                             std::to_string(c3) + "/" + std::to_string(c2) + "/" +
                             std::to_string(c0));
        }
    }
    return words;
}

void write_words_tsv(std::ostream& out, const std::vector<TopicWord>& words) {
    for (const auto& word : words) {
        out << word.term << '\t' << to_string(word.klass);
        if (word.user_score) out << '\t' << fmt_double(*word.user_score);
        out << '\n';
    }
}

void write_words_tsv(const std::filesystem::path& path, const std::vector<TopicWord>& words) {
    auto out = open_output(path);
    write_words_tsv(out, words);
}

std::vector<TopicWord> to_topic_words(const std::vector<AggregatedWord>& aggregated) {
    std::vector<TopicWord> words;
    words.reserve(aggregated.size());
    for (const auto& a : aggregated) {
        TopicWord word;
        word.term = a.term;
        word.klass = a.klass;
        word.user_score = a.confidence;
        words.push_back(std::move(word));
    }
    return words;
}

std::vector<RawLabel> load_raw_labels_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty labels csv");
    chomp(line);
    if (line != "annotator_id,term,label") {
        throw ParseError("unexpected labels csv header: " + line);
    }
    std::vector<RawLabel> labels;
    std::set<std::pair<std::string, std::string>> seen;
    while (std::getline(in, line)) {
        chomp(line);
        if (line.empty()) continue;
        auto fields = split(line, ',');
        if (fields.size() != 3) throw ParseError("bad labels csv row: " + line);
        RawLabel label;
        label.annotator_id = std::string(fields[0]);
        label.term = std::string(fields[1]);
        auto klass = klass_from(fields[2]);
        if (!klass || *klass == Klass::Unlabeled) {
            throw ParseError("label must be C0..C3: " + line);
        }
        label.label = *klass;
        if (label.annotator_id.empty() || label.term.empty()) {
            throw ParseError("empty field in labels csv row: " + line);
        }
        if (!seen.insert({label.annotator_id, label.term}).second) {
            throw ParseError("duplicate (annotator, term): " + line);
        }
        labels.push_back(std::move(label));
    }
    return labels;
}

std::vector<RawLabel> load_raw_labels_csv(const std::filesystem::path& path) {
    auto in = open_input(path);
    return load_raw_labels_csv(in);
}

std::vector<GoldItem> load_gold_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty gold csv");
    chomp(line);
    if (line != "term,binary") throw ParseError("unexpected gold csv header: " + line);
    std::vector<GoldItem> gold;
    std::set<std::string> seen;
    while (std::getline(in, line)) {
        chomp(line);
        if (line.empty()) continue;
        auto fields = split(line, ',');
        if (fields.size() != 2) throw ParseError("bad gold csv row: " + line);
        GoldItem item;
        item.term = std::string(fields[0]);
        if (fields[1] == "controversial") {
            item.controversial = true;
        } else if (fields[1] == "non-controversial") {
            item.controversial = false;
        } else {
            throw ParseError("gold binary must be controversial|non-controversial: " + line);
        }
        if (!seen.insert(item.term).second) {
            throw ParseError("duplicate gold term: " + item.term);
        }
        gold.push_back(std::move(item));
    }
    return gold;
}

std::vector<GoldItem> load_gold_csv(const std::filesystem::path& path) {
    auto in = open_input(path);
    return load_gold_csv(in);
}

}  // namespace mediatone
