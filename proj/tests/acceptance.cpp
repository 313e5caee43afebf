// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances and limits are pinned as constants next to each check.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "mediatone/annotation.hpp"
#include "mediatone/classifier.hpp"
#include "mediatone/dedup.hpp"
#include "mediatone/io.hpp"
#include "mediatone/lexicon.hpp"
#include "mediatone/rng.hpp"
#include "mediatone/scoring.hpp"
#include "mediatone/stats.hpp"
#include "mediatone/super_article.hpp"
#include "mediatone/synth.hpp"
#include "mediatone/tokenize.hpp"
#include "mediatone/words.hpp"

namespace mt = mediatone;
namespace fs = std::filesystem;
using clock_type = std::chrono::steady_clock;

namespace {

void require(bool condition, const std::string& message) {
    if (!condition) throw std::runtime_error(message);
}

std::string num(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.4g", value);
    return buffer;
}

fs::path workspace() {
    static const fs::path root = [] {
        auto dir = fs::temp_directory_path() / "mediatone_acceptance";
        fs::remove_all(dir);
        fs::create_directories(dir);
        return dir;
    }();
    return root;
}

void cli_step(const fs::path& dir, const std::string& args) {
    const std::string command = "cd '" + dir.string() + "' && '" + MEDIATONE_CLI_PATH +
                                "' " + args + " >> pipeline.log 2>&1";
    const int status = std::system(command.c_str());
    const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    require(code == 0, "pipeline step failed (" + args + "), see " +
                           (dir / "pipeline.log").string());
}

void run_pipeline(const fs::path& dir) {
    fs::create_directories(dir);
    cli_step(dir, "synth --out syn --seed 42");
    cli_step(dir, "ingest syn/articles.jsonl --out corpus --words syn/words.tsv");
    cli_step(dir, "score --corpus corpus --lexicons syn/lexicons --out proportions.csv");
    cli_step(dir,
             "analyze --proportions proportions.csv --words syn/words.tsv "
             "--out-comparisons comparisons.csv --out-summaries summaries.csv");
    cli_step(dir,
             "classify --proportions proportions.csv --words syn/words.tsv "
             "--out-model model.txt --out-scores scores.csv");
}

// ------------------------------------------------------------ criterion 1 --

std::string check_reference_words() {
    const auto words = mt::load_words_tsv(fs::path(MEDIATONE_WORDS_PATH));
    std::map<mt::Klass, std::size_t> counts;
    std::map<std::string, mt::Klass> by_term;
    for (const auto& word : words) {
        ++counts[word.klass];
        by_term[word.term] = word.klass;
    }
    require(counts[mt::Klass::C3] == 145,
            "expected 145 C3 terms, got " + std::to_string(counts[mt::Klass::C3]));
    require(counts[mt::Klass::C2] == 45,
            "expected 45 C2 terms, got " + std::to_string(counts[mt::Klass::C2]));
    require(counts[mt::Klass::C0] == 272,
            "expected 272 C0 terms, got " + std::to_string(counts[mt::Klass::C0]));
    require(words.size() == 462, "expected 462 terms in total");
    require(by_term.count("gun") && by_term.at("gun") == mt::Klass::C3, "gun must be C3");
    require(by_term.count("february") && by_term.at("february") == mt::Klass::C2,
            "february must be C2");
    require(by_term.count("weekend") && by_term.at("weekend") == mt::Klass::C0,
            "weekend must be C0");
    return "145/45/272 terms, spot checks hold";
}

// ------------------------------------------------------------ criterion 2 --

std::string check_mann_whitney_oracle() {
    constexpr double kTol = 1e-9;
    std::size_t pairs = 0;
    double worst = 0.0;

    for (unsigned mask_a = 1; mask_a < 256; ++mask_a) {
        if (std::popcount(mask_a) > 4) continue;
        for (unsigned mask_b = 1; mask_b < 256; ++mask_b) {
            if ((mask_a & mask_b) != 0 || std::popcount(mask_b) > 4) continue;

            std::vector<double> a, b;
            for (unsigned i = 0; i < 8; ++i) {
                if (mask_a >> i & 1) a.push_back(static_cast<double>(i + 1));
                if (mask_b >> i & 1) b.push_back(static_cast<double>(i + 1));
            }
            const std::size_t n_a = a.size(), n_b = b.size(), n = n_a + n_b;

            std::vector<double> combined = a;
            combined.insert(combined.end(), b.begin(), b.end());

            // Independent oracle: direct pair counting over every way the
            // first sample could occupy the combined values.
            double u_obs = 0.0;
            for (double va : a) {
                for (double vb : b) {
                    if (va > vb) u_obs += 1.0;
                }
            }
            const double mu = static_cast<double>(n_a * n_b) / 2.0;
            const double dev_obs = std::abs(u_obs - mu);

            std::size_t total = 0, at_least = 0;
            for (unsigned subset = 0; subset < (1u << n); ++subset) {
                if (std::popcount(subset) != static_cast<int>(n_a)) continue;
                double u = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    if (!(subset >> i & 1)) continue;
                    for (std::size_t j = 0; j < n; ++j) {
                        if (subset >> j & 1) continue;
                        if (combined[i] > combined[j]) u += 1.0;
                    }
                }
                ++total;
                if (std::abs(u - mu) >= dev_obs - 1e-12) ++at_least;
            }
            const double p_oracle =
                static_cast<double>(at_least) / static_cast<double>(total);

            const auto result = mt::mann_whitney(a, b);
            require(result.exact, "exact path expected for tie-free n <= 8");
            require(std::abs(result.u - u_obs) <= kTol, "U mismatch against pair counting");
            worst = std::max(worst, std::abs(result.p - p_oracle));
            require(std::abs(result.p - p_oracle) <= kTol,
                    "p mismatch at a=" + std::to_string(mask_a) +
                        " b=" + std::to_string(mask_b) + ": got " + num(result.p) +
                        " want " + num(p_oracle));
            ++pairs;
        }
    }
    require(pairs == 5082, "expected 5082 disjoint sample pairs, saw " +
                               std::to_string(pairs));

    const std::vector<double> lo{1, 2, 3}, hi{4, 5, 6};
    const auto fixture = mt::mann_whitney(lo, hi);
    require(fixture.p == 0.1, "{1,2,3} vs {4,5,6} must give p = 0.1 exactly, got " +
                                  num(fixture.p));
    return std::to_string(pairs) + " pairs, max |dp| = " + num(worst);
}

// ------------------------------------------------------------ criterion 3 --

std::string check_gradient() {
    constexpr double kH = 1e-5;
    constexpr double kRelTol = 1e-6;
    constexpr std::size_t kRows = 40, kCols = 5, kPoints = 20;
    constexpr double kLambda = 1e-3;

    mt::Rng rng(20260817);
    auto sigmoid = [](double z) { return 1.0 / (1.0 + std::exp(-z)); };

    std::vector<double> x(kRows * kCols);
    for (auto& v : x) v = rng.uniform() * 4.0 - 2.0;
    const std::vector<double> truth{1.5, -2.0, 0.5, 0.0, 1.0};
    std::vector<int> y(kRows);
    for (std::size_t r = 0; r < kRows; ++r) {
        double z = 0.3;
        for (std::size_t c = 0; c < kCols; ++c) z += truth[c] * x[r * kCols + c];
        y[r] = rng.chance(sigmoid(z)) ? 1 : 0;
    }
    y[0] = 0;
    y[1] = 1;

    double worst = 0.0;
    for (std::size_t point = 0; point < kPoints; ++point) {
        std::vector<double> w(kCols);
        for (auto& v : w) v = rng.uniform() * 4.0 - 2.0;
        const double b = rng.uniform() * 2.0 - 1.0;

        std::vector<double> grad(kCols);
        double grad_b = 0.0;
        mt::logistic_gradient(x, kRows, kCols, y, w, b, kLambda, grad, grad_b);

        auto check_component = [&](double analytic, double fd) {
            const double rel = std::abs(analytic - fd) /
                               std::max({1.0, std::abs(analytic), std::abs(fd)});
            worst = std::max(worst, rel);
            require(rel <= kRelTol, "gradient component off by rel " + num(rel));
        };
        for (std::size_t c = 0; c < kCols; ++c) {
            auto shifted = w;
            shifted[c] = w[c] + kH;
            const double up = mt::logistic_loss(x, kRows, kCols, y, shifted, b, kLambda);
            shifted[c] = w[c] - kH;
            const double down = mt::logistic_loss(x, kRows, kCols, y, shifted, b, kLambda);
            check_component(grad[c], (up - down) / (2.0 * kH));
        }
        const double up = mt::logistic_loss(x, kRows, kCols, y, w, b + kH, kLambda);
        const double down = mt::logistic_loss(x, kRows, kCols, y, w, b - kH, kLambda);
        check_component(grad_b, (up - down) / (2.0 * kH));
    }

    const auto fit = mt::minimize_logistic(x, kRows, kCols, y, {kLambda, 1e-6, 10000});
    const auto& trace = fit.meta.loss_trace;
    require(!trace.empty(), "optimizer recorded no steps");
    for (std::size_t i = 1; i < trace.size(); ++i) {
        require(trace[i] <= trace[i - 1], "loss increased at step " + std::to_string(i));
    }
    require(fit.meta.final_loss <= trace.back(), "final loss above last traced loss");
    return "max rel err " + num(worst) + " over " + std::to_string(kPoints) +
           " points, " + std::to_string(fit.meta.iterations) + " monotone steps";
}

// ------------------------------------------------------------ criterion 4 --

struct PipelineChecks {
    double score_gap = 0.0;
    double accuracy = 0.0;
};

PipelineChecks check_pipeline_outputs(const fs::path& dir) {
    const auto comparisons = mt::read_comparisons_csv(dir / "comparisons.csv");
    std::set<std::string> sources;
    std::map<std::pair<std::string, std::string>, const mt::GroupComparison*> by_key;
    for (const auto& row : comparisons) {
        sources.insert(row.source);
        by_key[{row.source, row.feature_id}] = &row;
    }
    require(!sources.empty(), "no comparisons were produced");

    const std::vector<std::string> up{"bias:bias", "anew:negative", "geninq:negative",
                                      "micrownop:negative", "sentiwordnet:negative"};
    const std::vector<std::string> down{"anew:strong", "micrownop:strong",
                                        "sentiwordnet:strong"};
    for (const auto& source : sources) {
        for (const auto& feature : up) {
            auto it = by_key.find({source, feature});
            require(it != by_key.end(), source + "/" + feature + " comparison missing");
            require(it->second->significant && it->second->p_value < 0.01,
                    source + "/" + feature + " not significant (p=" +
                        num(it->second->p_value) + ")");
            require(it->second->direction == mt::Direction::HigherInControversial,
                    source + "/" + feature + " not higher in controversial topics");
        }
        for (const auto& feature : down) {
            auto it = by_key.find({source, feature});
            require(it != by_key.end(), source + "/" + feature + " comparison missing");
            require(it->second->significant && it->second->p_value < 0.01,
                    source + "/" + feature + " not significant (p=" +
                        num(it->second->p_value) + ")");
            require(it->second->direction == mt::Direction::HigherInNonControversial,
                    source + "/" + feature + " not lower in controversial topics");
        }
    }

    std::istringstream in(mt::read_file(dir / "scores.csv"));
    std::string line;
    require(static_cast<bool>(std::getline(in, line)), "scores.csv is empty");
    double sum_c3 = 0.0, sum_c0 = 0.0;
    std::size_t n_c3 = 0, n_c0 = 0, correct = 0;
    while (std::getline(in, line)) {
        mt::chomp(line);
        if (line.empty()) continue;
        const auto fields = mt::split(line, ',');
        require(fields.size() == 5, "malformed scores row: " + line);
        const auto klass = mt::klass_from(fields[1]);
        const double score = std::stod(std::string(fields[3]));
        const bool misclassified = fields[4] == "true";
        if (klass == mt::Klass::C3) {
            sum_c3 += score;
            ++n_c3;
            if (!misclassified) ++correct;
        } else if (klass == mt::Klass::C0) {
            sum_c0 += score;
            ++n_c0;
            if (!misclassified) ++correct;
        }
    }
    require(n_c3 > 0 && n_c0 > 0, "scores.csv lacks labeled topics");

    PipelineChecks checks;
    checks.score_gap = sum_c3 / static_cast<double>(n_c3) -
                       sum_c0 / static_cast<double>(n_c0);
    checks.accuracy = static_cast<double>(correct) / static_cast<double>(n_c3 + n_c0);
    require(checks.score_gap >= 0.3,
            "mean score gap " + num(checks.score_gap) + " below 0.3");
    require(checks.accuracy >= 0.9,
            "training accuracy " + num(checks.accuracy) + " below 0.9");
    return checks;
}

std::string check_planted_signal(bool& pipeline_ready) {
    const fs::path dir = workspace() / "run1";
    run_pipeline(dir);
    pipeline_ready = true;
    const auto checks = check_pipeline_outputs(dir);
    return "every source recovers the planted directions, gap=" +
           num(checks.score_gap) + ", accuracy=" + num(checks.accuracy);
}

// ------------------------------------------------------------ criterion 5 --

std::string check_determinism(bool pipeline_ready) {
    require(pipeline_ready, "criterion 4 pipeline did not complete");
    const fs::path first = workspace() / "run1";
    const fs::path second = workspace() / "run2";
    run_pipeline(second);
    const std::vector<std::string> outputs{"proportions.csv", "comparisons.csv",
                                           "summaries.csv", "model.txt", "scores.csv"};
    for (const auto& name : outputs) {
        require(mt::read_file(first / name) == mt::read_file(second / name),
                name + " differs between identical runs");
    }
    return std::to_string(outputs.size()) + " outputs byte-identical across reruns";
}

// ------------------------------------------------------------ criterion 6 --

void suite_merge_identity(mt::Rng& rng) {
    for (int iteration = 0; iteration < 100; ++iteration) {
        const mt::TermSet terms{"e0", "e1", "e2", "e3", "e4"};
        auto random_super = [&] {
            mt::SuperArticle super;
            super.source = "s";
            super.topic = "t";
            super.article_count = 1;
            for (int w = 0; w < 10; ++w) {
                if (rng.chance(0.7)) {
                    const auto count = static_cast<std::int64_t>(1 + rng.below(20));
                    super.token_counts["w" + std::to_string(w)] += count;
                    super.total_tokens += count;
                }
            }
            for (const auto& term : terms) {
                if (rng.chance(0.5)) {
                    const auto count = static_cast<std::int64_t>(1 + rng.below(10));
                    super.token_counts[term] += count;
                    super.total_tokens += count;
                }
            }
            if (super.total_tokens == 0) {
                super.token_counts["w0"] = 1;
                super.total_tokens = 1;
            }
            return super;
        };
        const auto a = random_super();
        const auto b = random_super();
        const double pa = mt::lexicon_proportion(a, terms, "f").proportion;
        const double pb = mt::lexicon_proportion(b, terms, "f").proportion;
        const auto merged = mt::merge_super_articles(a, b);
        const double pm = mt::lexicon_proportion(merged, terms, "f").proportion;
        const auto ta = static_cast<double>(a.total_tokens);
        const auto tb = static_cast<double>(b.total_tokens);
        const double expected = (pa * ta + pb * tb) / (ta + tb);
        require(std::abs(pm - expected) <= 1e-12,
                "merged proportion is not the token-weighted mean");
    }
}

void suite_dedup_idempotence(mt::Rng& rng) {
    for (int iteration = 0; iteration < 100; ++iteration) {
        const std::size_t n = 2 + rng.below(10);
        std::vector<std::vector<std::string>> bodies(n);
        std::vector<std::string> ids(n);
        std::vector<std::int64_t> published(n);
        for (std::size_t i = 0; i < n; ++i) {
            ids[i] = "a" + std::to_string(i);
            published[i] = static_cast<std::int64_t>(rng.below(1000));
            if (i > 0 && rng.chance(0.4)) {
                bodies[i] = bodies[rng.below(i)];
                if (!bodies[i].empty() && rng.chance(0.5)) {
                    bodies[i][rng.below(bodies[i].size())] = "mut" + std::to_string(i);
                }
            } else {
                const std::size_t len = 5 + rng.below(26);
                for (std::size_t t = 0; t < len; ++t) {
                    bodies[i].push_back("v" + std::to_string(rng.below(20)));
                }
            }
        }
        std::vector<std::vector<std::uint64_t>> shingles(n);
        for (std::size_t i = 0; i < n; ++i) shingles[i] = mt::shingle_hashes(bodies[i]);
        std::vector<mt::DedupItem> items;
        items.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            items.push_back({published[i], ids[i], &shingles[i]});
        }
        const auto first = mt::deduplicate_items(items, 0.6);
        std::vector<mt::DedupItem> retained;
        retained.reserve(first.size());
        for (auto idx : first) retained.push_back(items[idx]);
        const auto second = mt::deduplicate_items(retained, 0.6);
        require(second.size() == retained.size(), "second dedup pass removed items");
        for (std::size_t i = 0; i < second.size(); ++i) {
            require(second[i] == i, "second dedup pass permuted items");
        }
    }
}

void suite_u_complement(mt::Rng& rng) {
    for (int iteration = 0; iteration < 100; ++iteration) {
        const std::size_t n_a = 1 + rng.below(10);
        const std::size_t n_b = 1 + rng.below(10);
        std::vector<double> a(n_a), b(n_b);
        const bool tie_prone = rng.chance(0.5);
        auto draw = [&] {
            return tie_prone ? static_cast<double>(rng.below(5)) : rng.uniform();
        };
        for (auto& v : a) v = draw();
        for (auto& v : b) v = draw();
        const double u_ab = mt::mann_whitney(a, b).u;
        const double u_ba = mt::mann_whitney(b, a).u;
        require(std::abs(u_ab + u_ba - static_cast<double>(n_a * n_b)) <= 1e-9,
                "U statistics do not sum to n_a*n_b");
    }
}

mt::FeatureMatrix random_matrix(mt::Rng& rng, std::size_t rows, std::size_t cols) {
    mt::FeatureMatrix matrix;
    for (std::size_t r = 0; r < rows; ++r) matrix.topics.push_back("t" + std::to_string(r));
    for (std::size_t c = 0; c < cols; ++c) matrix.columns.push_back({"s", "f" + std::to_string(c)});
    matrix.values.resize(rows * cols);
    for (auto& v : matrix.values) v = rng.uniform();
    matrix.observed.assign(rows * cols, 1);
    return matrix;
}

std::vector<int> random_labels(mt::Rng& rng, std::size_t rows) {
    std::vector<int> labels(rows);
    for (auto& label : labels) label = rng.chance(0.5) ? 1 : 0;
    labels[0] = 0;
    labels[1] = 1;
    return labels;
}

void suite_score_range(mt::Rng& rng) {
    for (int iteration = 0; iteration < 100; ++iteration) {
        const std::size_t rows = 10 + rng.below(15);
        const std::size_t cols = 2 + rng.below(4);
        auto matrix = random_matrix(rng, rows, cols);
        const auto labels = random_labels(rng, rows);
        for (std::size_t r = 0; r < rows; ++r) {
            matrix.values[r * cols] += 0.4 * labels[r];  // mild signal in column 0
        }
        std::vector<std::size_t> selected(cols);
        for (std::size_t c = 0; c < cols; ++c) selected[c] = c;
        const auto model =
            mt::train_logistic(matrix, selected, labels, {1e-2, 1e-6, 300});
        const auto scores = mt::score_topics(model, matrix);
        require(scores.size() == rows, "one score per matrix row expected");
        for (const auto& row : scores) {
            require(row.score > 0.0 && row.score < 1.0,
                    "score outside (0,1): " + num(row.score));
        }
    }
}

void suite_selection(mt::Rng& rng) {
    for (int iteration = 0; iteration < 100; ++iteration) {
        const std::size_t rows = 12 + rng.below(9);
        const std::size_t cols = 3 + rng.below(4);
        const auto matrix = random_matrix(rng, rows, cols);
        const auto labels = random_labels(rng, rows);
        const std::size_t k = 1 + rng.below(cols + 2);
        mt::SelectOptions options;
        options.k = k;
        options.folds = 3;
        options.inner = {1e-2, 1e-4, 40};
        const auto selected = mt::select_features(matrix, labels, options);
        require(selected.size() == std::min(k, cols), "selection cardinality wrong");
        std::set<std::size_t> unique(selected.begin(), selected.end());
        require(unique.size() == selected.size(), "selection repeated a column");
        for (auto index : selected) {
            require(index < cols, "selected column out of range");
        }
    }
}

void suite_aggregation(mt::Rng& rng) {
    const auto noop = [](const std::string&) {};
    for (int iteration = 0; iteration < 100; ++iteration) {
        std::vector<int> classes{0, 1, 2, 3};
        for (std::size_t i = classes.size(); i > 1; --i) {
            std::swap(classes[i - 1], classes[rng.below(i)]);
        }
        const auto klass_of = [](int index) { return static_cast<mt::Klass>(index); };
        const auto modal = klass_of(classes[0]);

        std::vector<mt::RawLabel> raw;
        std::set<std::string> trusted;
        for (int annotator = 0; annotator < 7; ++annotator) {
            trusted.insert("a" + std::to_string(annotator));
        }
        auto emit = [&](const std::string& term, const std::vector<mt::Klass>& votes) {
            std::vector<int> order{0, 1, 2, 3, 4, 5, 6};
            for (std::size_t i = order.size(); i > 1; --i) {
                std::swap(order[i - 1], order[rng.below(i)]);
            }
            for (std::size_t v = 0; v < votes.size(); ++v) {
                raw.push_back({"a" + std::to_string(order[v]), term, votes[v]});
            }
        };
        emit("keep", {modal, modal, modal, modal, modal, klass_of(classes[1]),
                      klass_of(classes[2])});
        emit("dropfour", {klass_of(classes[0]), klass_of(classes[0]), klass_of(classes[0]),
                          klass_of(classes[0]), klass_of(classes[1]), klass_of(classes[1]),
                          klass_of(classes[1])});
        emit("dropsplit", {klass_of(classes[0]), klass_of(classes[0]), klass_of(classes[0]),
                           klass_of(classes[1]), klass_of(classes[1]), klass_of(classes[1]),
                           klass_of(classes[2])});
        for (std::size_t i = raw.size(); i > 1; --i) {
            std::swap(raw[i - 1], raw[rng.below(i)]);
        }

        const auto aggregated = mt::aggregate(raw, trusted, {7, 0.6}, noop);
        require(aggregated.size() == 1, "only the 5/7 majority word must survive");
        require(aggregated[0].term == "keep", "wrong word survived aggregation");
        require(aggregated[0].klass == modal, "majority class lost");
        require(std::abs(aggregated[0].confidence - 5.0 / 7.0) <= 1e-12,
                "confidence must be the modal fraction");
        require(aggregated[0].excluded_from_analysis == (modal == mt::Klass::C1),
                "C1 exclusion flag wrong");
    }
}

std::string check_invariants() {
    mt::Rng rng(6001);
    suite_merge_identity(rng);
    suite_dedup_idempotence(rng);
    suite_u_complement(rng);
    suite_score_range(rng);
    suite_selection(rng);
    suite_aggregation(rng);
    return "6 suites x 100 randomized cases";
}

// ------------------------------------------------------------ criterion 7 --

std::string check_null_effect() {
    constexpr double kAlpha = 0.01;
    constexpr int kRuns = 100;
    constexpr int kMinCleanRuns = 95;

    std::vector<mt::TopicWord> words;
    for (int i = 0; i < 24; ++i) {
        char buffer[16];
        std::snprintf(buffer, sizeof(buffer), "arg%02d", i);
        words.push_back({buffer, mt::Klass::C3, std::nullopt});
        std::snprintf(buffer, sizeof(buffer), "zen%02d", i);
        words.push_back({buffer, mt::Klass::C0, std::nullopt});
    }
    std::map<std::string, mt::Klass> labels;
    for (const auto& word : words) labels[word.term] = word.klass;

    const auto roster = mt::default_feature_roster();
    std::map<std::string, int> clean_runs;
    for (const auto& spec : roster) clean_runs[spec.id()] = 0;
    const auto noop = [](const std::string&) {};

    for (int run = 1; run <= kRuns; ++run) {
        mt::SynthConfig config;
        config.seed = static_cast<std::uint64_t>(run);
        config.effect = 0.0;
        config.articles_per_pair = 8;
        config.body_min = 30;
        config.body_max = 40;
        config.dup_rate = 0.0;
        config.sources = {{"wire", 1.0}};
        config.words = words;
        const auto output = mt::generate_synthetic(config);

        std::map<std::string, mt::Lexicon> lexicons;
        for (const auto& [filename, content] : output.lexicon_files) {
            const std::string name = fs::path(filename).stem().string();
            std::istringstream in(content);
            if (mt::is_synset_format(name)) {
                const double margin = name == "micrownop" ? 0.0 : 0.25;
                lexicons.emplace(name, mt::flatten_synset_lexicon(
                                           in, mt::synset_format_from(name), margin));
            } else {
                lexicons.emplace(name, mt::load_word_lexicon(in, mt::word_format_from(name)));
            }
        }
        const auto features = mt::resolve_roster(roster, lexicons, noop);
        require(features.size() == roster.size(), "synthetic lexicons must cover the roster");

        std::set<std::string> topic_set;
        for (const auto& word : words) topic_set.insert(word.term);
        std::map<std::string, mt::SuperArticle> supers;
        const mt::TokenizeOptions tokopt;
        for (const auto& article : output.articles) {
            std::set<std::string> matched;
            std::vector<std::string> tokens;
            mt::for_each_token(article.body, tokopt, [&](const std::string& token) {
                tokens.push_back(token);
                if (topic_set.count(token)) matched.insert(token);
            });
            for (const auto& topic : matched) {
                auto& super = supers[topic];
                super.source = article.source;
                super.topic = topic;
                ++super.article_count;
                for (const auto& token : tokens) {
                    ++super.token_counts[token];
                    ++super.total_tokens;
                }
            }
        }
        std::vector<mt::SuperArticle> ordered;
        ordered.reserve(supers.size());
        for (auto& [topic, super] : supers) ordered.push_back(std::move(super));
        require(ordered.size() == words.size(), "every topic needs a super-article");

        const auto records = mt::score_super_articles(ordered, features);
        const auto comparisons =
            mt::compare_all_groups(records, labels, kAlpha, mt::TestKind::MannWhitney, noop);
        require(comparisons.size() == roster.size(), "one comparison per feature expected");

        std::set<std::string> significant;
        for (const auto& comparison : comparisons) {
            if (comparison.significant) significant.insert(comparison.feature_id);
        }
        for (const auto& spec : roster) {
            if (!significant.count(spec.id())) ++clean_runs[spec.id()];
        }
    }

    int worst = kRuns;
    std::string worst_feature = "none";
    for (const auto& [feature, clean] : clean_runs) {
        if (clean < worst) {
            worst = clean;
            worst_feature = feature;
        }
    }
    require(worst >= kMinCleanRuns,
            worst_feature + " clean in only " + std::to_string(worst) + "/100 runs");
    return "worst feature clean in " + std::to_string(worst) + "/100 runs (" +
           worst_feature + ")";
}

}  // namespace

int main() {
    bool pipeline_ready = false;
    struct Criterion {
        int id;
        const char* label;
        double limit_seconds;  // 0 = no limit
        std::function<std::string()> body;
    };
    const std::vector<Criterion> criteria{
        {1, "reference word list integrity", 1.0, check_reference_words},
        {2, "Mann-Whitney exact oracle equivalence", 5.0, check_mann_whitney_oracle},
        {3, "logistic gradient and monotone descent", 5.0, check_gradient},
        {4, "planted-signal recovery end to end", 60.0,
         [&] { return check_planted_signal(pipeline_ready); }},
        {5, "byte-identical rerun determinism", 0.0,
         [&] { return check_determinism(pipeline_ready); }},
        {6, "randomized invariant suites", 30.0, check_invariants},
        {7, "null-effect false-positive control", 0.0, check_null_effect},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        const auto start = clock_type::now();
        bool passed = false;
        std::string detail;
        try {
            detail = criterion.body();
            passed = true;
        } catch (const std::exception& e) {
            detail = e.what();
        }
        const double seconds =
            std::chrono::duration<double>(clock_type::now() - start).count();
        if (passed && criterion.limit_seconds > 0.0 && seconds > criterion.limit_seconds) {
            passed = false;
            detail = "exceeded the " + num(criterion.limit_seconds) + "s budget";
        }
        if (!passed) ++failures;
        std::printf("[%s] criterion %d: %s (%.2fs) -- %s\n", passed ? "PASS" : "FAIL",
                    criterion.id, criterion.label, seconds, detail.c_str());
        std::fflush(stdout);
    }
    if (failures > 0) {
        std::printf("%d of 7 criteria failed\n", failures);
        return 1;
    }
    std::printf("all 7 criteria passed\n");
    return 0;
}
