#include <algorithm>
#include <filesystem>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include <CLI11.hpp>

#include "mediatone/annotation.hpp"
#include "mediatone/article.hpp"
#include "mediatone/classifier.hpp"
#include "mediatone/convert.hpp"
#include "mediatone/dedup.hpp"
#include "mediatone/errors.hpp"
#include "mediatone/io.hpp"
#include "mediatone/lexicon.hpp"
#include "mediatone/manifest.hpp"
#include "mediatone/scoring.hpp"
#include "mediatone/stats.hpp"
#include "mediatone/store.hpp"
#include "mediatone/super_article.hpp"
#include "mediatone/synth.hpp"
#include "mediatone/tokenize.hpp"
#include "mediatone/version.hpp"

#ifndef MEDIATONE_DEFAULT_WORDS
#define MEDIATONE_DEFAULT_WORDS "data/controversial_words.tsv"
#endif

namespace mt = mediatone;
namespace fs = std::filesystem;

namespace {

void warn(const std::string& message) { std::cerr << "warning: " << message << '\n'; }

struct WordsIndex {
    std::vector<mt::TopicWord> words;
    std::map<std::string, mt::Klass> labels;
    std::map<std::string, double> user_scores;
};

WordsIndex load_words_index(const fs::path& path) {
    WordsIndex index;
    index.words = mt::load_words_tsv(path);
    for (const auto& word : index.words) {
        index.labels[word.term] = word.klass;
        if (word.user_score) index.user_scores[word.term] = *word.user_score;
    }
    return index;
}

std::map<std::string, mt::Lexicon> load_lexicon_dir(const fs::path& dir,
                                                    const std::vector<mt::FeatureSpec>& roster,
                                                    double mwn_margin, double swn_margin) {
    std::set<std::string> names;
    for (const auto& spec : roster) names.insert(spec.lexicon);
    std::map<std::string, mt::Lexicon> lexicons;
    for (const auto& name : names) {
        const fs::path path = dir / (name + ".tsv");
        if (!fs::exists(path)) {
            warn("lexicon file missing: " + path.string());
            continue;
        }
        if (mt::is_synset_format(name)) {
            const auto format = mt::synset_format_from(name);
            const double margin =
                format == mt::SynsetFormat::MicroWnop ? mwn_margin : swn_margin;
            lexicons.emplace(name, mt::flatten_synset_lexicon(path, format, margin));
        } else {
            lexicons.emplace(name, mt::load_word_lexicon(path, mt::word_format_from(name)));
        }
    }
    return lexicons;
}

mt::FeatureMatrix subset_rows(const mt::FeatureMatrix& matrix,
                              const std::vector<std::size_t>& rows) {
    mt::FeatureMatrix out;
    out.columns = matrix.columns;
    out.topics.reserve(rows.size());
    out.values.reserve(rows.size() * matrix.cols());
    out.observed.reserve(rows.size() * matrix.cols());
    for (auto r : rows) {
        out.topics.push_back(matrix.topics[r]);
        for (std::size_t c = 0; c < matrix.cols(); ++c) {
            out.values.push_back(matrix.at(r, c));
            out.observed.push_back(matrix.is_observed(r, c) ? 1 : 0);
        }
    }
    return out;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
    std::string out;
    for (const auto& part : parts) {
        if (!out.empty()) out += sep;
        out += part;
    }
    return out;
}

// ---------------------------------------------------------------- ingest --

struct IngestOptions {
    std::vector<std::string> inputs;
    std::string out_dir;
    std::string words_path = MEDIATONE_DEFAULT_WORDS;
    std::string sources_path;
    double dedup_threshold = 0.85;
    bool keep_news_stopwords = false;
    bool generic_stopwords = false;
};

int run_ingest(const IngestOptions& opt) {
    mt::TokenizeOptions tokopt;
    tokopt.drop_generic_stopwords = opt.generic_stopwords;
    tokopt.drop_news_stopwords = !opt.keep_news_stopwords;

    const auto words = mt::load_words_tsv(opt.words_path);
    std::unordered_set<std::string> topic_set;
    for (const auto& word : words) topic_set.insert(word.term);

    std::vector<std::string> registry;
    if (!opt.sources_path.empty()) {
        auto in = mt::open_input(opt.sources_path);
        std::string line;
        while (std::getline(in, line)) {
            mt::chomp(line);
            if (line.empty() || line[0] == '#') continue;
            registry.push_back(line);
        }
        std::sort(registry.begin(), registry.end());
        registry.erase(std::unique(registry.begin(), registry.end()), registry.end());
    }

    std::vector<mt::Article> articles;
    std::size_t skipped = 0;
    std::unordered_set<std::string> seen_ids;
    for (const auto& input : opt.inputs) {
        auto in = mt::open_input(input);
        auto parsed = mt::parse_articles(in);
        skipped += parsed.skipped;
        for (auto& article : parsed.articles) {
            if (!seen_ids.insert(article.id).second) {
                ++skipped;  // id already used by an earlier input file
                continue;
            }
            articles.push_back(std::move(article));
        }
    }
    if (articles.empty()) warn("no articles parsed from input");
    if (skipped > 0) warn(std::to_string(skipped) + " malformed or duplicate-id lines skipped");

    std::size_t foreign = 0;
    if (!registry.empty()) {
        std::erase_if(articles, [&](const mt::Article& article) {
            const bool known = std::binary_search(registry.begin(), registry.end(),
                                                  article.source);
            if (!known) ++foreign;
            return !known;
        });
        if (foreign > 0) {
            warn(std::to_string(foreign) + " articles from sources outside the registry");
        }
    } else {
        std::set<std::string> observed;
        for (const auto& article : articles) observed.insert(article.source);
        registry.assign(observed.begin(), observed.end());
    }

    std::map<std::pair<std::string, std::string>, std::vector<std::size_t>> buckets;
    for (std::size_t i = 0; i < articles.size(); ++i) {
        const std::string text = mt::strip_html_tags(articles[i].body);
        std::set<std::string> matched;
        mt::for_each_token(text, tokopt, [&](const std::string& token) {
            if (topic_set.count(token)) matched.insert(token);
        });
        for (const auto& topic : matched) {
            buckets[{articles[i].source, topic}].push_back(i);
        }
    }

    mt::StoreWriter writer(opt.out_dir);
    std::size_t duplicates_removed = 0;
    for (const auto& [key, indices] : buckets) {
        const auto& [source, topic] = key;
        std::vector<std::vector<std::uint64_t>> shingles;
        shingles.reserve(indices.size());
        std::vector<mt::DedupItem> items;
        items.reserve(indices.size());
        for (auto i : indices) {
            const auto raw =
                mt::normalize_tokens(mt::strip_html_tags(articles[i].body), {});
            shingles.push_back(mt::shingle_hashes(raw));
        }
        for (std::size_t j = 0; j < indices.size(); ++j) {
            const auto& article = articles[indices[j]];
            items.push_back({article.published_at, article.id, &shingles[j]});
        }
        const auto retained = mt::deduplicate_items(items, opt.dedup_threshold);
        duplicates_removed += indices.size() - retained.size();

        mt::SuperArticle super;
        super.source = source;
        super.topic = topic;
        super.article_count = static_cast<std::int64_t>(retained.size());
        for (auto j : retained) {
            const auto& article = articles[indices[j]];
            mt::for_each_token(mt::strip_html_tags(article.body), tokopt,
                               [&](const std::string& token) {
                                   ++super.token_counts[token];
                                   ++super.total_tokens;
                               });
        }
        writer.add(super);
        std::cout << source << '\t' << topic << '\t' << super.article_count << '\t'
                  << super.total_tokens << '\n';
    }
    writer.finish(registry);

    std::cout << "articles=" << articles.size() << " skipped=" << skipped
              << " duplicates_removed=" << duplicates_removed << " pairs=" << buckets.size()
              << '\n';

    mt::RunManifest manifest;
    manifest.command = "ingest";
    manifest.inputs = opt.inputs;
    manifest.inputs.push_back(opt.words_path);
    manifest.config = {
        {"dedup_threshold", mt::fmt_double(opt.dedup_threshold)},
        {"generic_stopwords", opt.generic_stopwords ? "true" : "false"},
        {"news_stopwords", opt.keep_news_stopwords ? "false" : "true"},
        {"sources", opt.sources_path},
    };
    mt::write_manifests(manifest, {fs::path(opt.out_dir)});
    return 0;
}

// --------------------------------------------------------------- convert --

struct ConvertOptions {
    std::string format;
    std::string input;
    std::string output;
};

int run_convert(const ConvertOptions& opt) {
    auto in = mt::open_input(opt.input);
    auto out = mt::open_output(opt.output);
    mt::convert_lexicon(in, out, opt.format);
    out.close();

    mt::RunManifest manifest;
    manifest.command = "convert-lexicon";
    manifest.inputs = {opt.input};
    manifest.config = {{"format", opt.format}};
    mt::write_manifests(manifest, {fs::path(opt.output)});
    return 0;
}

// ----------------------------------------------------------------- score --

struct ScoreOptions {
    std::string corpus_dir;
    std::string lexicon_dir;
    std::string features;
    std::string output = "proportions.csv";
    double strong_percentile = 0.75;
    double mwn_margin = 0.0;
    double swn_margin = 0.25;
};

int run_score(const ScoreOptions& opt) {
    const auto roster = opt.features.empty() ? mt::default_feature_roster()
                                             : mt::parse_feature_roster(opt.features);
    const auto lexicons =
        load_lexicon_dir(opt.lexicon_dir, roster, opt.mwn_margin, opt.swn_margin);
    const auto features = mt::resolve_roster(roster, lexicons, warn, opt.strong_percentile);
    if (features.empty()) throw mt::Error("no usable features; check the lexicon directory");

    const auto store = mt::CorpusStore::open(opt.corpus_dir);
    const auto records = mt::score_corpus(store, features);
    mt::write_proportions_csv(fs::path(opt.output), records);
    std::cout << "wrote " << records.size() << " proportion rows to " << opt.output << '\n';

    mt::RunManifest manifest;
    manifest.command = "score";
    manifest.inputs = {opt.corpus_dir, opt.lexicon_dir};
    manifest.config = {
        {"features", opt.features.empty() ? "(default)" : opt.features},
        {"mwn_margin", mt::fmt_double(opt.mwn_margin)},
        {"strong_percentile", mt::fmt_double(opt.strong_percentile)},
        {"swn_margin", mt::fmt_double(opt.swn_margin)},
    };
    mt::write_manifests(manifest, {fs::path(opt.output)});
    return 0;
}

// --------------------------------------------------------------- analyze --

struct AnalyzeOptions {
    std::string proportions;
    std::string words_path = MEDIATONE_DEFAULT_WORDS;
    std::string out_comparisons = "comparisons.csv";
    std::string out_summaries = "summaries.csv";
    double alpha = 0.01;
    std::string stat = "mann-whitney";
};

int run_analyze(const AnalyzeOptions& opt) {
    const auto records = mt::read_proportions_csv(fs::path(opt.proportions));
    const auto words = load_words_index(opt.words_path);
    const auto test = mt::test_kind_from(opt.stat);

    const auto comparisons =
        mt::compare_all_groups(records, words.labels, opt.alpha, test, warn);
    mt::write_comparisons_csv(fs::path(opt.out_comparisons), comparisons);
    const auto summaries = mt::summarize_groups(records, words.labels);
    mt::write_summaries_csv(fs::path(opt.out_summaries), summaries);

    std::size_t significant = 0;
    for (const auto& cmp : comparisons) {
        if (cmp.significant) ++significant;
    }
    std::cout << comparisons.size() << " comparisons, " << significant
              << " significant at alpha=" << mt::fmt_double(opt.alpha) << '\n';

    mt::RunManifest manifest;
    manifest.command = "analyze";
    manifest.inputs = {opt.proportions, opt.words_path};
    manifest.config = {{"alpha", mt::fmt_double(opt.alpha)}, {"stat", opt.stat}};
    mt::write_manifests(manifest,
                        {fs::path(opt.out_comparisons), fs::path(opt.out_summaries)});
    return 0;
}

// ------------------------------------------------------------------ rank --

struct RankOptions {
    std::string proportions;
    std::string words_path = MEDIATONE_DEFAULT_WORDS;
    std::string feature = "bias:bias";
    std::string metric = "rank-biserial";
    std::string output = "ranking.csv";
    double alpha = 0.01;
};

int run_rank(const RankOptions& opt) {
    const auto records = mt::read_proportions_csv(fs::path(opt.proportions));
    const auto words = load_words_index(opt.words_path);
    const auto metric = mt::rank_metric_from(opt.metric);

    const auto comparisons = mt::compare_all_groups(records, words.labels, opt.alpha,
                                                    mt::TestKind::MannWhitney, warn);
    std::set<std::string> sources;
    for (const auto& record : records) sources.insert(record.source);
    const std::vector<std::string> registry(sources.begin(), sources.end());

    const auto ranking = mt::rank_sources(comparisons, opt.feature, registry, metric);
    mt::write_ranking_csv(fs::path(opt.output), ranking);
    for (std::size_t i = 0; i < ranking.size(); ++i) {
        std::cout << (i + 1) << ". " << ranking[i].source << " ("
                  << mt::fmt_double(ranking[i].effect) << ")\n";
    }

    mt::RunManifest manifest;
    manifest.command = "rank";
    manifest.inputs = {opt.proportions, opt.words_path};
    manifest.config = {{"alpha", mt::fmt_double(opt.alpha)},
                       {"feature", opt.feature},
                       {"metric", opt.metric}};
    mt::write_manifests(manifest, {fs::path(opt.output)});
    return 0;
}

// -------------------------------------------------------------- classify --

struct ClassifyOptions {
    std::string proportions;
    std::string words_path = MEDIATONE_DEFAULT_WORDS;
    std::string out_model = "model.txt";
    std::string out_scores = "scores.csv";
    std::size_t k = 5;
    std::size_t folds = 5;
    double lambda = 1e-3;
    double tol = 1e-6;
    int max_iter = 10000;
    int select_max_iter = 500;
};

int run_classify(const ClassifyOptions& opt) {
    const auto records = mt::read_proportions_csv(fs::path(opt.proportions));
    const auto words = load_words_index(opt.words_path);

    std::set<std::string> topic_set;
    std::set<std::pair<std::string, std::string>> column_set;
    for (const auto& record : records) {
        topic_set.insert(record.topic);
        column_set.insert({record.source, record.feature_id});
    }
    const std::vector<std::string> topics(topic_set.begin(), topic_set.end());
    std::vector<mt::ColumnId> columns;
    columns.reserve(column_set.size());
    for (const auto& [source, feature_id] : column_set) columns.push_back({source, feature_id});

    const auto matrix = mt::build_feature_matrix(records, topics, columns, warn);

    std::vector<std::size_t> training_rows;
    std::vector<int> labels;
    std::size_t missing_labeled = 0;
    for (const auto& word : words.words) {
        if (word.klass != mt::Klass::C3 && word.klass != mt::Klass::C0) continue;
        if (!topic_set.count(word.term)) ++missing_labeled;
    }
    if (missing_labeled > 0) {
        warn(std::to_string(missing_labeled) +
             " labeled words have no corpus data and are left out of training");
    }
    for (std::size_t r = 0; r < matrix.rows(); ++r) {
        auto it = words.labels.find(matrix.topics[r]);
        if (it == words.labels.end()) continue;
        if (it->second == mt::Klass::C3) {
            training_rows.push_back(r);
            labels.push_back(1);
        } else if (it->second == mt::Klass::C0) {
            training_rows.push_back(r);
            labels.push_back(0);
        }
    }
    const auto training = subset_rows(matrix, training_rows);

    mt::SelectOptions select_opt;
    select_opt.k = opt.k;
    select_opt.folds = opt.folds;
    select_opt.inner = {opt.lambda, opt.tol, opt.select_max_iter};
    const auto selected = mt::select_features(training, labels, select_opt);

    mt::LogisticOptions train_opt{opt.lambda, opt.tol, opt.max_iter};
    const auto model = mt::train_logistic(training, selected, labels, train_opt);
    if (!model.meta.converged) {
        warn("training stopped after " + std::to_string(model.meta.iterations) +
             " iterations without reaching the gradient tolerance");
    }

    const auto scores = mt::score_topics(model, matrix);
    const auto report = mt::error_report(scores, words.labels, words.user_scores);
    mt::write_model(fs::path(opt.out_model), model);
    mt::write_scores_csv(fs::path(opt.out_scores), report);

    double sum_c3 = 0.0, sum_c0 = 0.0;
    std::size_t n_c3 = 0, n_c0 = 0, correct = 0;
    for (const auto& row : report) {
        if (row.klass == mt::Klass::C3) {
            sum_c3 += row.classifier_score;
            ++n_c3;
            if (!row.misclassified) ++correct;
        } else if (row.klass == mt::Klass::C0) {
            sum_c0 += row.classifier_score;
            ++n_c0;
            if (!row.misclassified) ++correct;
        }
    }
    std::cout << "selected: " << join(model.selected_names, " ") << '\n';
    if (n_c3 > 0 && n_c0 > 0) {
        const double mean_c3 = sum_c3 / static_cast<double>(n_c3);
        const double mean_c0 = sum_c0 / static_cast<double>(n_c0);
        const double accuracy =
            static_cast<double>(correct) / static_cast<double>(n_c3 + n_c0);
        std::cout << "training_accuracy=" << mt::fmt_double(accuracy)
                  << " mean_score_c3=" << mt::fmt_double(mean_c3)
                  << " mean_score_c0=" << mt::fmt_double(mean_c0) << '\n';
    }

    mt::RunManifest manifest;
    manifest.command = "classify";
    manifest.inputs = {opt.proportions, opt.words_path};
    manifest.config = {
        {"folds", std::to_string(opt.folds)},
        {"k", std::to_string(opt.k)},
        {"lambda", mt::fmt_double(opt.lambda)},
        {"max_iter", std::to_string(opt.max_iter)},
        {"select_max_iter", std::to_string(opt.select_max_iter)},
        {"tol", mt::fmt_double(opt.tol)},
    };
    mt::write_manifests(manifest, {fs::path(opt.out_model), fs::path(opt.out_scores)});
    return 0;
}

// ------------------------------------------------------------- top-terms --

struct TopTermsOptions {
    std::string corpus_dir;
    std::string lexicon_dir;
    std::string feature = "bias:bias";
    std::string source;
    std::string topic;
    std::string output;
    std::size_t k = 30;
    double strong_percentile = 0.75;
    double mwn_margin = 0.0;
    double swn_margin = 0.25;
};

int run_top_terms(const TopTermsOptions& opt) {
    const auto roster = mt::parse_feature_roster(opt.feature);
    const auto lexicons =
        load_lexicon_dir(opt.lexicon_dir, roster, opt.mwn_margin, opt.swn_margin);
    const auto features = mt::resolve_roster(roster, lexicons, warn, opt.strong_percentile);
    if (features.empty()) throw mt::Error("feature " + opt.feature + " is unavailable");

    const auto store = mt::CorpusStore::open(opt.corpus_dir);
    const auto super = store.load(opt.source, opt.topic);
    const auto ranked = mt::top_terms(super, features.front().terms, opt.k);

    std::string text;
    for (const auto& [term, count] : ranked) {
        text += term + "\t" + std::to_string(count) + "\n";
    }
    if (opt.output.empty()) {
        std::cout << text;
    } else {
        mt::write_file(fs::path(opt.output), text);
        mt::RunManifest manifest;
        manifest.command = "top-terms";
        manifest.inputs = {opt.corpus_dir, opt.lexicon_dir};
        manifest.config = {{"feature", opt.feature},
                           {"k", std::to_string(opt.k)},
                           {"source", opt.source},
                           {"topic", opt.topic}};
        mt::write_manifests(manifest, {fs::path(opt.output)});
    }
    return 0;
}

// ------------------------------------------------------- aggregate-labels --

struct AggregateOptions {
    std::string labels_path;
    std::string gold_path;
    std::string output = "words.tsv";
    double min_agreement = 0.7;
    std::size_t judgments = 7;
    double majority = 0.6;
};

int run_aggregate(const AggregateOptions& opt) {
    const auto raw = mt::load_raw_labels_csv(fs::path(opt.labels_path));
    const auto gold = mt::load_gold_csv(fs::path(opt.gold_path));

    std::set<std::string> annotators;
    for (const auto& label : raw) annotators.insert(label.annotator_id);
    const auto trusted = mt::gate_annotators(raw, gold, opt.min_agreement, warn);

    mt::AggregateOptions agg_opt;
    agg_opt.judgments = opt.judgments;
    agg_opt.majority = opt.majority;
    const auto aggregated = mt::aggregate(raw, trusted, agg_opt, warn);
    mt::write_words_tsv(fs::path(opt.output), mt::to_topic_words(aggregated));

    std::size_t excluded = 0;
    for (const auto& word : aggregated) {
        if (word.excluded_from_analysis) ++excluded;
    }
    std::cout << "trusted " << trusted.size() << " of " << annotators.size()
              << " annotators; emitted " << aggregated.size() << " words (" << excluded
              << " class C1, excluded from analysis)\n";

    mt::RunManifest manifest;
    manifest.command = "aggregate-labels";
    manifest.inputs = {opt.labels_path, opt.gold_path};
    manifest.config = {
        {"judgments", std::to_string(opt.judgments)},
        {"majority", mt::fmt_double(opt.majority)},
        {"min_agreement", mt::fmt_double(opt.min_agreement)},
    };
    mt::write_manifests(manifest, {fs::path(opt.output)});
    return 0;
}

// ----------------------------------------------------------------- synth --

struct SynthOptions {
    std::string out_dir;
    std::string words_path = MEDIATONE_DEFAULT_WORDS;
    std::uint64_t seed = 42;
    double effect = 1.0;
    std::size_t articles = 100;
    std::size_t topics_per_class = 0;  // 0 = every reference topic
    std::size_t body_min = 50;
    std::size_t body_max = 80;
    double dup_rate = 0.05;
};

int run_synth(const SynthOptions& opt) {
    const auto all_words = mt::load_words_tsv(opt.words_path);
    std::vector<mt::TopicWord> words;
    if (opt.topics_per_class == 0) {
        words = all_words;
    } else {
        std::map<mt::Klass, std::size_t> taken;
        for (const auto& word : all_words) {
            if (taken[word.klass] >= opt.topics_per_class) continue;
            ++taken[word.klass];
            words.push_back(word);
        }
    }

    mt::SynthConfig config;
    config.seed = opt.seed;
    config.effect = opt.effect;
    config.articles_per_pair = opt.articles;
    config.body_min = opt.body_min;
    config.body_max = opt.body_max;
    config.dup_rate = opt.dup_rate;
    config.words = std::move(words);
    const auto output = mt::generate_synthetic(config);

    const fs::path root(opt.out_dir);
    fs::create_directories(root / "lexicons");
    std::vector<fs::path> outputs;
    {
        auto out = mt::open_output(root / "articles.jsonl");
        mt::write_articles_jsonl(out, output.articles);
        outputs.push_back(root / "articles.jsonl");
    }
    mt::write_words_tsv(root / "words.tsv", output.words);
    outputs.push_back(root / "words.tsv");
    for (const auto& [name, content] : output.lexicon_files) {
        mt::write_file(root / "lexicons" / name, content);
        outputs.push_back(root / "lexicons" / name);
    }

    std::cout << "generated " << output.articles.size() << " articles over "
              << output.words.size() << " topics and " << output.source_names.size()
              << " sources\n";

    mt::RunManifest manifest;
    manifest.command = "synth";
    manifest.inputs = {opt.words_path};
    manifest.config = {
        {"articles", std::to_string(opt.articles)},
        {"body_max", std::to_string(opt.body_max)},
        {"body_min", std::to_string(opt.body_min)},
        {"dup_rate", mt::fmt_double(opt.dup_rate)},
        {"effect", mt::fmt_double(opt.effect)},
        {"seed", std::to_string(opt.seed)},
        {"topics_per_class", std::to_string(opt.topics_per_class)},
    };
    mt::write_manifests(manifest, outputs);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mediatone: emotional and biased language around controversial news topics"};
    app.set_version_flag("--version", mt::kVersion);
    app.require_subcommand(1);
    app.set_config("--config", "", "TOML-style config file; command-line flags win");

    int exit_code = 0;
    auto guard = [&](auto fn) {
        return [&, fn]() {
            try {
                exit_code = fn();
            } catch (const std::exception& e) {
                std::cerr << "error: " << e.what() << '\n';
                exit_code = 1;
            }
        };
    };

    IngestOptions ingest;
    auto* cmd_ingest = app.add_subcommand(
        "ingest", "Build per-(source, topic) super-articles from JSONL articles");
    cmd_ingest->add_option("inputs", ingest.inputs, "JSONL article files")
        ->required()
        ->check(CLI::ExistingFile);
    cmd_ingest->add_option("--out", ingest.out_dir, "corpus directory to create")->required();
    cmd_ingest->add_option("--words", ingest.words_path, "topic word list (TSV)")
        ->capture_default_str();
    cmd_ingest->add_option("--sources", ingest.sources_path,
                           "source registry file, one source per line");
    cmd_ingest
        ->add_option("--dedup-threshold", ingest.dedup_threshold,
                     "shingle Jaccard at or above which an article is a near-duplicate")
        ->capture_default_str();
    cmd_ingest->add_flag("--keep-news-stopwords", ingest.keep_news_stopwords,
                         "keep wire-boilerplate words instead of dropping them");
    cmd_ingest->add_flag("--generic-stopwords", ingest.generic_stopwords,
                         "also drop generic English stopwords");
    cmd_ingest->callback(guard([&] { return run_ingest(ingest); }));

    ConvertOptions convert;
    auto* cmd_convert = app.add_subcommand(
        "convert-lexicon", "Convert an upstream lexical resource to normalized TSV");
    cmd_convert
        ->add_option("--format", convert.format,
                     "anew, geninq, micrownop, sentiwordnet, or bias")
        ->required();
    cmd_convert->add_option("input", convert.input, "native-format file")
        ->required()
        ->check(CLI::ExistingFile);
    cmd_convert->add_option("output", convert.output, "normalized TSV to write")->required();
    cmd_convert->callback(guard([&] { return run_convert(convert); }));

    ScoreOptions score;
    auto* cmd_score =
        app.add_subcommand("score", "Compute lexicon-category proportions per super-article");
    cmd_score->add_option("--corpus", score.corpus_dir, "corpus directory from ingest")
        ->required();
    cmd_score->add_option("--lexicons", score.lexicon_dir, "directory of <name>.tsv lexicons")
        ->required();
    cmd_score
        ->add_option("--features", score.features,
                     "comma-separated lexicon:category list (default: the 13-feature roster)");
    cmd_score->add_option("--out", score.output, "proportions CSV")->capture_default_str();
    cmd_score->add_option("--strong-percentile", score.strong_percentile)
        ->capture_default_str();
    cmd_score->add_option("--mwn-margin", score.mwn_margin)->capture_default_str();
    cmd_score->add_option("--swn-margin", score.swn_margin)->capture_default_str();
    cmd_score->callback(guard([&] { return run_score(score); }));

    AnalyzeOptions analyze;
    auto* cmd_analyze = app.add_subcommand(
        "analyze", "Compare controversial vs non-controversial proportions per source");
    cmd_analyze->add_option("--proportions", analyze.proportions, "proportions CSV from score")
        ->required();
    cmd_analyze->add_option("--words", analyze.words_path, "labeled topic words (TSV)")
        ->capture_default_str();
    cmd_analyze->add_option("--alpha", analyze.alpha)->capture_default_str();
    cmd_analyze->add_option("--stat", analyze.stat, "mann-whitney or welch")
        ->capture_default_str();
    cmd_analyze->add_option("--out-comparisons", analyze.out_comparisons)
        ->capture_default_str();
    cmd_analyze->add_option("--out-summaries", analyze.out_summaries)->capture_default_str();
    cmd_analyze->callback(guard([&] { return run_analyze(analyze); }));

    RankOptions rank;
    auto* cmd_rank =
        app.add_subcommand("rank", "Rank sources by effect size for one feature");
    cmd_rank->add_option("--proportions", rank.proportions, "proportions CSV")->required();
    cmd_rank->add_option("--words", rank.words_path)->capture_default_str();
    cmd_rank->add_option("--feature", rank.feature)->capture_default_str();
    cmd_rank->add_option("--metric", rank.metric, "rank-biserial or median-difference")
        ->capture_default_str();
    cmd_rank->add_option("--alpha", rank.alpha)->capture_default_str();
    cmd_rank->add_option("--out", rank.output)->capture_default_str();
    cmd_rank->callback(guard([&] { return run_rank(rank); }));

    ClassifyOptions classify;
    auto* cmd_classify = app.add_subcommand(
        "classify", "Select features, train the logistic model, and score every topic");
    cmd_classify->add_option("--proportions", classify.proportions)->required();
    cmd_classify->add_option("--words", classify.words_path)->capture_default_str();
    cmd_classify->add_option("--k", classify.k, "features to select")->capture_default_str();
    cmd_classify->add_option("--folds", classify.folds)->capture_default_str();
    cmd_classify->add_option("--lambda", classify.lambda)->capture_default_str();
    cmd_classify->add_option("--tol", classify.tol)->capture_default_str();
    cmd_classify->add_option("--max-iter", classify.max_iter)->capture_default_str();
    cmd_classify
        ->add_option("--select-max-iter", classify.select_max_iter,
                     "iteration cap for the inner cross-validation fits")
        ->capture_default_str();
    cmd_classify->add_option("--out-model", classify.out_model)->capture_default_str();
    cmd_classify->add_option("--out-scores", classify.out_scores)->capture_default_str();
    cmd_classify->callback(guard([&] { return run_classify(classify); }));

    TopTermsOptions top_terms;
    auto* cmd_top = app.add_subcommand(
        "top-terms", "Most frequent lexicon terms in one (source, topic) super-article");
    cmd_top->add_option("--corpus", top_terms.corpus_dir)->required();
    cmd_top->add_option("--lexicons", top_terms.lexicon_dir)->required();
    cmd_top->add_option("--source", top_terms.source)->required();
    cmd_top->add_option("--topic", top_terms.topic)->required();
    cmd_top->add_option("--feature", top_terms.feature)->capture_default_str();
    cmd_top->add_option("--k", top_terms.k)->capture_default_str();
    cmd_top->add_option("--out", top_terms.output, "write here instead of stdout");
    cmd_top->add_option("--strong-percentile", top_terms.strong_percentile)
        ->capture_default_str();
    cmd_top->add_option("--mwn-margin", top_terms.mwn_margin)->capture_default_str();
    cmd_top->add_option("--swn-margin", top_terms.swn_margin)->capture_default_str();
    cmd_top->callback(guard([&] { return run_top_terms(top_terms); }));

    AggregateOptions aggregate;
    auto* cmd_aggregate = app.add_subcommand(
        "aggregate-labels", "Aggregate crowdsourced labels into topic classes");
    cmd_aggregate->add_option("--labels", aggregate.labels_path, "raw labels CSV")->required();
    cmd_aggregate->add_option("--gold", aggregate.gold_path, "gold answers CSV")->required();
    cmd_aggregate->add_option("--min-agreement", aggregate.min_agreement)
        ->capture_default_str();
    cmd_aggregate->add_option("--judgments", aggregate.judgments)->capture_default_str();
    cmd_aggregate->add_option("--majority", aggregate.majority)->capture_default_str();
    cmd_aggregate->add_option("--out", aggregate.output)->capture_default_str();
    cmd_aggregate->callback(guard([&] { return run_aggregate(aggregate); }));

    SynthOptions synth;
    auto* cmd_synth =
        app.add_subcommand("synth", "Generate a deterministic planted-signal corpus");
    cmd_synth->add_option("--out", synth.out_dir, "output directory")->required();
    cmd_synth->add_option("--words", synth.words_path)->capture_default_str();
    cmd_synth->add_option("--seed", synth.seed)->capture_default_str();
    cmd_synth->add_option("--effect", synth.effect, "0 disables every planted difference")
        ->capture_default_str();
    cmd_synth->add_option("--articles", synth.articles, "articles per (source, topic) pair")
        ->capture_default_str();
    cmd_synth
        ->add_option("--topics-per-class", synth.topics_per_class,
                     "cap topics per class (0 = all)")
        ->capture_default_str();
    cmd_synth->add_option("--body-min", synth.body_min)->capture_default_str();
    cmd_synth->add_option("--body-max", synth.body_max)->capture_default_str();
    cmd_synth->add_option("--dup-rate", synth.dup_rate)->capture_default_str();
    cmd_synth->callback(guard([&] { return run_synth(synth); }));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return exit_code;
}
