#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <sys/wait.h>

#include "mediatone/io.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
    std::string err;
};

fs::path scratch_root() {
    static const fs::path root = [] {
        auto dir = fs::temp_directory_path() / "mediatone_cli_tests";
        fs::remove_all(dir);
        fs::create_directories(dir);
        return dir;
    }();
    return root;
}

fs::path scratch(const std::string& name) {
    auto dir = scratch_root() / name;
    fs::create_directories(dir);
    return dir;
}

RunResult run(const fs::path& cwd, const std::string& args) {
    const auto out_path = cwd / "_stdout.txt";
    const auto err_path = cwd / "_stderr.txt";
    const std::string command = "cd '" + cwd.string() + "' && '" + MEDIATONE_CLI_PATH +
                                "' " + args + " > '" + out_path.string() + "' 2> '" +
                                err_path.string() + "'";
    const int status = std::system(command.c_str());
    RunResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = mediatone::read_file(out_path);
    result.err = mediatone::read_file(err_path);
    return result;
}

void write(const fs::path& path, const std::string& content) {
    mediatone::write_file(path, content);
}

std::string tiny_words() {
    return "war\tC3\nfeud\tC3\nriot\tC3\nstrike\tC3\nclash\tC3\ncrime\tC3\n"
           "sofa\tC0\nlawn\tC0\npicnic\tC0\nrecipe\tC0\ngarden\tC0\nhobby\tC0\n";
}

void make_synth_corpus(const fs::path& dir) {
    write(dir / "words.tsv", tiny_words());
    auto synth = run(dir, "synth --out syn --words words.tsv --articles 16 --seed 7");
    REQUIRE(synth.exit_code == 0);
    auto ingest = run(dir, "ingest syn/articles.jsonl --out corpus --words words.tsv");
    REQUIRE(ingest.exit_code == 0);
}

}  // namespace

TEST_CASE("cli requires a subcommand and reports bad input") {
    auto dir = scratch("usage");
    CHECK(run(dir, "").exit_code != 0);
    CHECK(run(dir, "frobnicate").exit_code != 0);
    auto missing = run(dir, "ingest no_such_file.jsonl --out corpus");
    CHECK(missing.exit_code != 0);

    auto version = run(dir, "--version");
    CHECK(version.exit_code == 0);
    CHECK(version.out.find("1.0.0") != std::string::npos);
}

TEST_CASE("synth is reproducible at the file level") {
    auto dir = scratch("synth_repro");
    write(dir / "words.tsv", tiny_words());
    REQUIRE(run(dir, "synth --out a --words words.tsv --articles 10").exit_code == 0);
    REQUIRE(run(dir, "synth --out b --words words.tsv --articles 10").exit_code == 0);
    CHECK(mediatone::read_file(dir / "a" / "articles.jsonl") ==
          mediatone::read_file(dir / "b" / "articles.jsonl"));
    CHECK(mediatone::read_file(dir / "a" / "words.tsv") ==
          mediatone::read_file(dir / "b" / "words.tsv"));
    CHECK(mediatone::read_file(dir / "a" / "lexicons" / "anew.tsv") ==
          mediatone::read_file(dir / "b" / "lexicons" / "anew.tsv"));
    CHECK(mediatone::read_file(dir / "a" / "articles.jsonl.manifest.json") ==
          mediatone::read_file(dir / "b" / "articles.jsonl.manifest.json"));
    CHECK(fs::exists(dir / "a" / "lexicons" / "bias.tsv"));
}

TEST_CASE("ingest builds the store layout and reports counts") {
    auto dir = scratch("ingest_layout");
    make_synth_corpus(dir);
    CHECK(fs::exists(dir / "corpus" / "sources.tsv"));
    CHECK(fs::exists(dir / "corpus" / "gazette" / "meta.tsv"));
    CHECK(fs::exists(dir / "corpus" / "gazette" / "war.tsv"));
    CHECK(fs::exists(dir / "corpus" / "ledger" / "sofa.tsv"));
    CHECK(fs::exists(dir / "corpus.manifest.json"));

    auto sources = mediatone::read_file(dir / "corpus" / "sources.tsv");
    CHECK(sources == "gazette\tgazette\nherald\therald\nledger\tledger\n");
}

TEST_CASE("ingest tolerates an empty input with a warning") {
    auto dir = scratch("ingest_empty");
    write(dir / "words.tsv", tiny_words());
    write(dir / "empty.jsonl", "");
    auto result = run(dir, "ingest empty.jsonl --out corpus --words words.tsv");
    CHECK(result.exit_code == 0);
    CHECK(result.err.find("no articles") != std::string::npos);
    CHECK(mediatone::read_file(dir / "corpus" / "sources.tsv").empty());
}

TEST_CASE("ingest counts removed duplicates") {
    auto dir = scratch("ingest_dups");
    write(dir / "words.tsv", tiny_words());
    const std::string body = "war talk one two three four five six seven eight nine ten";
    std::string jsonl;
    for (int i = 0; i < 4; ++i) {
        jsonl += "{\"id\":\"a" + std::to_string(i) +
                 "\",\"source\":\"post\",\"published_at\":\"2013-05-01T0" +
                 std::to_string(i) + ":00:00Z\",\"title\":\"t\",\"body\":\"" + body +
                 "\"}\n";
    }
    jsonl +=
        "{\"id\":\"b\",\"source\":\"post\",\"published_at\":\"2013-05-02T00:00:00Z\","
        "\"title\":\"t\",\"body\":\"war entirely different text about nothing else at "
        "all whatsoever today\"}\n";
    write(dir / "articles.jsonl", jsonl);
    auto result = run(dir, "ingest articles.jsonl --out corpus --words words.tsv");
    CHECK(result.exit_code == 0);
    CHECK(result.out.find("duplicates_removed=3") != std::string::npos);
    CHECK(result.out.find("post\twar\t2\t") != std::string::npos);
}

TEST_CASE("ingest honors a source registry") {
    auto dir = scratch("ingest_registry");
    write(dir / "words.tsv", tiny_words());
    write(dir / "sources.txt", "post\nabsent\n");
    write(dir / "articles.jsonl",
          "{\"id\":\"a\",\"source\":\"post\",\"published_at\":\"2013-05-01T00:00:00Z\","
          "\"title\":\"t\",\"body\":\"war one two\"}\n"
          "{\"id\":\"b\",\"source\":\"rogue\",\"published_at\":\"2013-05-01T00:00:00Z\","
          "\"title\":\"t\",\"body\":\"war one two\"}\n");
    auto result =
        run(dir, "ingest articles.jsonl --out corpus --words words.tsv --sources sources.txt");
    CHECK(result.exit_code == 0);
    CHECK(result.err.find("outside the registry") != std::string::npos);
    auto sources = mediatone::read_file(dir / "corpus" / "sources.tsv");
    CHECK(sources == "absent\tabsent\npost\tpost\n");
    CHECK(fs::exists(dir / "corpus" / "absent" / "meta.tsv"));
}

TEST_CASE("the pipeline produces byte-identical outputs on a rerun") {
    auto dir = scratch("pipeline_repro");
    make_synth_corpus(dir);
    const std::string steps =
        "score --corpus corpus --lexicons syn/lexicons --out {p} && '" MEDIATONE_CLI_PATH
        "' analyze --proportions {p} --words words.tsv --out-comparisons {c} "
        "--out-summaries {s} && '" MEDIATONE_CLI_PATH
        "' classify --proportions {p} --words words.tsv --k 2 --out-model {m} "
        "--out-scores {sc}";
    auto expand = [&](std::string text, const std::string& tag) {
        for (const auto& [key, name] :
             std::vector<std::pair<std::string, std::string>>{{"{p}", "props"},
                                                              {"{c}", "cmp"},
                                                              {"{s}", "sum"},
                                                              {"{m}", "model"},
                                                              {"{sc}", "scores"}}) {
            std::size_t at;
            while ((at = text.find(key)) != std::string::npos) {
                text.replace(at, key.size(), name + tag);
            }
        }
        return text;
    };
    REQUIRE(run(dir, expand(steps, "1")).exit_code == 0);
    REQUIRE(run(dir, expand(steps, "2")).exit_code == 0);
    for (const std::string name : {"props", "cmp", "sum", "model", "scores"}) {
        CHECK(mediatone::read_file(dir / (name + "1")) ==
              mediatone::read_file(dir / (name + "2")));
    }
}

TEST_CASE("rank writes an ordered csv") {
    auto dir = scratch("rank");
    make_synth_corpus(dir);
    REQUIRE(run(dir, "score --corpus corpus --lexicons syn/lexicons --out props.csv")
                .exit_code == 0);
    auto result = run(dir,
                      "rank --proportions props.csv --words words.tsv "
                      "--feature bias:bias --out ranking.csv");
    CHECK(result.exit_code == 0);
    auto csv = mediatone::read_file(dir / "ranking.csv");
    CHECK(csv.rfind("rank,source,effect\n1,", 0) == 0);
    CHECK(csv.find("gazette") != std::string::npos);
    auto missing = run(dir,
                       "rank --proportions props.csv --words words.tsv "
                       "--feature nope:bias --out r.csv");
    CHECK(missing.exit_code != 0);
}

TEST_CASE("top-terms prints term counts for one super-article") {
    auto dir = scratch("top_terms");
    make_synth_corpus(dir);
    auto result = run(dir,
                      "top-terms --corpus corpus --lexicons syn/lexicons "
                      "--source gazette --topic war --feature bias:bias --k 3");
    CHECK(result.exit_code == 0);
    CHECK(result.out.find("slant") != std::string::npos);
    auto absent = run(dir,
                      "top-terms --corpus corpus --lexicons syn/lexicons "
                      "--source gazette --topic nonexistent --k 3");
    CHECK(absent.exit_code != 0);
}

TEST_CASE("convert-lexicon normalizes an upstream anew table") {
    auto dir = scratch("convert");
    write(dir / "anew_raw.csv",
          "Word,Wdnum,ValMn,ValSD\n"
          "love,1,8.72,0.70\n"
          "funeral,2,1.39,0.87\n");
    auto result = run(dir, "convert-lexicon --format anew anew_raw.csv anew.tsv");
    CHECK(result.exit_code == 0);
    CHECK(mediatone::read_file(dir / "anew.tsv") ==
          "love\tvalence\t8.72\nfuneral\tvalence\t1.39\n");
    CHECK(fs::exists(dir / "anew.tsv.manifest.json"));
}

TEST_CASE("aggregate-labels gates annotators and writes a word list") {
    auto dir = scratch("aggregate");
    std::string labels = "annotator_id,term,label\n";
    for (int w = 0; w < 8; ++w) {
        const std::string annotator = "w" + std::to_string(w);
        labels += annotator + ",goldwar," + (w < 7 ? "C3" : "C0") + "\n";
        labels += annotator + ",goldsofa," + (w < 7 ? "C0" : "C3") + "\n";
        labels += annotator + ",newword,C3\n";
    }
    write(dir / "labels.csv", labels);
    write(dir / "gold.csv", "term,binary\ngoldwar,controversial\ngoldsofa,non-controversial\n");
    auto result = run(dir, "aggregate-labels --labels labels.csv --gold gold.csv --out words.tsv");
    CHECK(result.exit_code == 0);
    CHECK(result.out.find("trusted 7 of 8") != std::string::npos);
    auto words = mediatone::read_file(dir / "words.tsv");
    CHECK(words.find("newword\tC3\t1\n") != std::string::npos);
}

TEST_CASE("score accepts a custom feature roster and rejects junk") {
    auto dir = scratch("score_roster");
    make_synth_corpus(dir);
    auto result = run(dir,
                      "score --corpus corpus --lexicons syn/lexicons "
                      "--features bias:bias,anew:negative --out props.csv");
    CHECK(result.exit_code == 0);
    auto csv = mediatone::read_file(dir / "props.csv");
    CHECK(csv.find("anew:negative") != std::string::npos);
    CHECK(csv.find("geninq") == std::string::npos);
    auto bad = run(dir,
                   "score --corpus corpus --lexicons syn/lexicons "
                   "--features wordnet:positive --out p.csv");
    CHECK(bad.exit_code != 0);
    CHECK(bad.err.find("error:") != std::string::npos);
}
