#include "mediatone/synth.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include "mediatone/io.hpp"
#include "mediatone/rng.hpp"

namespace mediatone {

namespace {

// All pool words carry digits, so they can never collide with topic words.
std::vector<std::string> numbered(const char* stem, std::size_t count, int width) {
    std::vector<std::string> words;
    words.reserve(count);
    char buffer[32];
    for (std::size_t i = 0; i < count; ++i) {
        std::snprintf(buffer, sizeof(buffer), "%s%0*zu", stem, width, i);
        words.emplace_back(buffer);
    }
    return words;
}

struct Pools {
    std::vector<std::string> filler = numbered("fill", 300, 3);
    std::vector<std::string> bias = numbered("slant", 30, 2);
    std::vector<std::string> positive = numbered("glee", 20, 2);  // last 5 strong
    std::vector<std::string> negative = numbered("dour", 20, 2);  // last 6 strong
    std::vector<std::string> neutral = numbered("calm", 20, 2);
    std::size_t pos_strong_from = 15;
    std::size_t neg_strong_from = 14;
};

// Tier scores chosen so each loader's 75th-percentile partition recovers the
// designed strong tier exactly: 11 strong of 40 polar terms, and for the
// valence file every positive stays above / negative below the loaded mean.
constexpr double kValWeakPos = 7.0, kValStrongPos = 8.6;
constexpr double kValWeakNeg = 3.0, kValStrongNeg = 1.4;
constexpr double kSynWeak = 0.55, kSynStrong = 0.9;

std::map<std::string, std::string> build_lexicon_files(const Pools& pools) {
    std::map<std::string, std::string> files;

    std::string anew;
    for (std::size_t i = 0; i < pools.negative.size(); ++i) {
        const double v = i >= pools.neg_strong_from ? kValStrongNeg : kValWeakNeg;
        anew += pools.negative[i] + "\tvalence\t" + fmt_double(v) + "\n";
    }
    for (std::size_t i = 0; i < pools.positive.size(); ++i) {
        const double v = i >= pools.pos_strong_from ? kValStrongPos : kValWeakPos;
        anew += pools.positive[i] + "\tvalence\t" + fmt_double(v) + "\n";
    }
    files["anew.tsv"] = anew;

    std::string geninq;
    for (std::size_t i = 0; i < pools.negative.size(); ++i) {
        geninq += pools.negative[i] + "\tNegativ\t1\n";
        if (i >= pools.neg_strong_from) geninq += pools.negative[i] + "\tStrong\t1\n";
    }
    for (std::size_t i = 0; i < pools.positive.size(); ++i) {
        geninq += pools.positive[i] + "\tPositiv\t1\n";
        if (i >= pools.pos_strong_from) geninq += pools.positive[i] + "\tStrong\t1\n";
    }
    files["geninq.tsv"] = geninq;

    std::string micrownop;
    std::string sentiwordnet;
    int synset = 0;
    auto add_synsets = [&](const std::vector<std::string>& pool, std::size_t strong_from,
                           bool is_positive) {
        for (std::size_t i = 0; i < pool.size(); ++i) {
            const double score = i >= strong_from ? kSynStrong : kSynWeak;
            const double pos = is_positive ? score : 0.0;
            const double neg = is_positive ? 0.0 : score;
            char id[16];
            std::snprintf(id, sizeof(id), "%04d", ++synset);
            micrownop += std::string("m") + id + "\t" + pool[i] + "\t" + fmt_double(pos) +
                         "\t" + fmt_double(neg) + "\t" + fmt_double(1.0 - score) + "\n";
            sentiwordnet += std::string("s") + id + "\t" + pool[i] + "\t" + fmt_double(pos) +
                            "\t" + fmt_double(neg) + "\n";
        }
    };
    add_synsets(pools.negative, pools.neg_strong_from, false);
    add_synsets(pools.positive, pools.pos_strong_from, true);
    for (const auto& word : pools.neutral) {
        char id[16];
        std::snprintf(id, sizeof(id), "%04d", ++synset);
        micrownop += std::string("m") + id + "\t" + word + "\t0\t0\t1\n";
    }
    files["micrownop.tsv"] = micrownop;
    files["sentiwordnet.tsv"] = sentiwordnet;

    std::string bias;
    for (const auto& word : pools.bias) bias += word + "\tbias\t1\n";
    files["bias.tsv"] = bias;
    return files;
}

double class_delta(Klass klass) {
    switch (klass) {
        case Klass::C3: return 1.0;
        case Klass::C2: return 0.5;
        case Klass::C1: return 0.25;
        default: return 0.0;
    }
}

constexpr std::int64_t kBaseEpoch = 1735689600;  // 2025-01-01T00:00:00Z

}  // namespace

SynthOutput generate_synthetic(const SynthConfig& config) {
    if (config.words.empty()) {
        throw std::invalid_argument("synth config needs at least one topic word");
    }
    if (config.sources.empty()) {
        throw std::invalid_argument("synth config needs at least one source");
    }
    if (config.body_min < 10 || config.body_max < config.body_min) {
        throw std::invalid_argument("synth body length bounds invalid (min >= 10)");
    }
    if (config.effect < 0.0) throw std::invalid_argument("synth effect must be >= 0");
    if (config.dup_rate < 0.0 || config.dup_rate >= 1.0) {
        throw std::invalid_argument("synth dup_rate must be in [0,1)");
    }
    double max_mult = 0.0;
    for (const auto& source : config.sources) {
        max_mult = std::max(max_mult, source.multiplier);
    }
    const double max_delta = config.effect * max_mult;
    const double worst_rate_sum = config.base_bias * (1.0 + 0.6 * max_delta) +
                                  config.base_negative * (1.0 + 0.5 * max_delta) +
                                  config.base_positive + config.base_neutral +
                                  config.topic_rate;
    if (worst_rate_sum > 0.9) {
        throw std::invalid_argument("synth token rates leave too little filler mass");
    }

    const Pools pools;
    SynthOutput output;
    output.words = config.words;
    output.lexicon_files = build_lexicon_files(pools);
    for (const auto& source : config.sources) output.source_names.push_back(source.name);

    auto pick = [](Rng& rng, const std::vector<std::string>& pool) -> const std::string& {
        return pool[rng.below(pool.size())];
    };

    for (const auto& source : config.sources) {
        for (const auto& word : config.words) {
            const double delta = config.effect * class_delta(word.klass) * source.multiplier;
            const double p_bias = config.base_bias * (1.0 + 0.6 * delta);
            const double p_neg = config.base_negative * (1.0 + 0.5 * delta);
            const double p_pos = config.base_positive * (1.0 - 0.35 * delta);
            const double p_neu = config.base_neutral;
            const double share = config.strong_share * (1.0 - 0.5 * delta);

            Rng rng(config.seed ^ fnv1a64(source.name + "\x1f" + word.term));
            for (std::size_t i = 0; i < config.articles_per_pair; ++i) {
                const auto length = static_cast<std::size_t>(rng.between(
                    static_cast<std::int64_t>(config.body_min),
                    static_cast<std::int64_t>(config.body_max)));
                std::string body = word.term;
                for (std::size_t j = 1; j < length; ++j) {
                    body.push_back(' ');
                    double r = rng.uniform();
                    if (r < p_bias) {
                        body += pick(rng, pools.bias);
                    } else if ((r -= p_bias) < p_neg) {
                        const bool strong = rng.chance(share);
                        const std::size_t lo = strong ? pools.neg_strong_from : 0;
                        const std::size_t hi =
                            strong ? pools.negative.size() : pools.neg_strong_from;
                        body += pools.negative[lo + rng.below(hi - lo)];
                    } else if ((r -= p_neg) < p_pos) {
                        const bool strong = rng.chance(share);
                        const std::size_t lo = strong ? pools.pos_strong_from : 0;
                        const std::size_t hi =
                            strong ? pools.positive.size() : pools.pos_strong_from;
                        body += pools.positive[lo + rng.below(hi - lo)];
                    } else if ((r -= p_pos) < p_neu) {
                        body += pick(rng, pools.neutral);
                    } else if ((r -= p_neu) < config.topic_rate) {
                        body += word.term;
                    } else {
                        body += pick(rng, pools.filler);
                    }
                }

                char suffix[16];
                std::snprintf(suffix, sizeof(suffix), "%05zu", i);
                Article article;
                article.id = source.name + "-" + word.term + "-" + suffix;
                article.source = source.name;
                article.published_at = kBaseEpoch + static_cast<std::int64_t>(i) * 3600;
                article.title = word.term + " coverage " + std::to_string(i);
                article.body = body;

                const bool plant_duplicate = rng.chance(config.dup_rate);
                output.articles.push_back(std::move(article));
                if (plant_duplicate) {
                    Article dup = output.articles.back();
                    dup.id += "-dup";
                    dup.published_at += 1800;
                    output.articles.push_back(std::move(dup));
                }
            }
        }
    }
    return output;
}

}  // namespace mediatone
