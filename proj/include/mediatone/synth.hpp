#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mediatone/article.hpp"
#include "mediatone/words.hpp"

namespace mediatone {

struct SynthSource {
    std::string name;
    double multiplier;  // scales the planted effect for this source
};

struct SynthConfig {
    std::uint64_t seed = 42;
    double effect = 1.0;  // 0 disables every planted difference
    std::size_t articles_per_pair = 100;
    std::size_t body_min = 50;
    std::size_t body_max = 80;
    double dup_rate = 0.05;  // chance of planting an exact duplicate

    // Per-token draw rates; the parenthesized factor scales with the class
    // effect delta (C3 full, C2 half, C0 zero).
    double base_bias = 0.030;     // * (1 + 0.6 delta)
    double base_negative = 0.040;  // * (1 + 0.5 delta)
    double base_positive = 0.050;  // * (1 - 0.35 delta)
    double base_neutral = 0.020;   // flat
    double topic_rate = 0.02;      // extra topic-token occurrences
    double strong_share = 0.45;    // * (1 - 0.5 delta), share of polar draws

    std::vector<SynthSource> sources = {
        {"gazette", 1.15}, {"herald", 1.0}, {"ledger", 0.8}};
    std::vector<TopicWord> words;  // topics to generate; must be nonempty
};

struct SynthOutput {
    std::vector<TopicWord> words;
    std::vector<Article> articles;
    std::map<std::string, std::string> lexicon_files;  // filename -> normalized TSV
    std::vector<std::string> source_names;
};

// Deterministic planted-signal corpus: bodies draw from disjoint pseudoword
// pools wired into fixture lexicons (emitted in every loader format), with
// per-class rate shifts that reproduce the expected directional findings.
// Per-(source, topic) RNG substreams make output independent of config
// iteration order.
SynthOutput generate_synthetic(const SynthConfig& config);

}  // namespace mediatone
