#include "mediatone/convert.hpp"

#include <algorithm>
#include <array>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mediatone/errors.hpp"
#include "mediatone/io.hpp"

namespace mediatone {

namespace {

std::string lower_ascii(std::string_view text) {
    std::string out(text);
    for (char& c : out) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return out;
}

std::vector<std::string> split_row(const std::string& line, char delim) {
    std::vector<std::string> out;
    if (delim != ' ') {
        for (auto f : split(line, delim)) out.emplace_back(f);
        return out;
    }
    std::istringstream stream(line);
    std::string field;
    while (stream >> field) out.push_back(field);
    return out;
}

char sniff_delimiter(const std::string& header) {
    if (header.find('\t') != std::string::npos) return '\t';
    if (header.find(',') != std::string::npos) return ',';
    return ' ';
}

std::size_t find_column(const std::vector<std::string>& header, std::string_view name) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (lower_ascii(header[i]) == lower_ascii(name)) return i;
    }
    throw ParseError("missing column: " + std::string(name));
}

std::string strip_sense(std::string term) {
    const auto pos = term.find('#');
    if (pos != std::string::npos) term.resize(pos);
    return term;
}

void convert_anew(std::istream& in, std::ostream& out) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty anew input");
    chomp(line);
    const char delim = sniff_delimiter(line);
    const auto header = split_row(line, delim);
    const auto word_col = find_column(header, "word");
    const auto val_col = find_column(header, "valmn");

    while (std::getline(in, line)) {
        chomp(line);
        if (line.empty()) continue;
        const auto fields = split_row(line, delim);
        if (fields.size() <= std::max(word_col, val_col)) {
            throw ParseError("short anew row: " + line);
        }
        parse_double(fields[val_col]);
        out << lower_ascii(fields[word_col]) << "\tvalence\t" << fields[val_col] << '\n';
    }
}

void convert_geninq(std::istream& in, std::ostream& out) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty geninq input");
    chomp(line);
    const auto header = split_row(line, '\t');
    const auto entry_col = find_column(header, "entry");
    const std::array<std::pair<const char*, std::size_t>, 3> tag_cols = {{
        {"Positiv", find_column(header, "positiv")},
        {"Negativ", find_column(header, "negativ")},
        {"Strong", find_column(header, "strong")},
    }};

    std::set<std::pair<std::string, std::string>> emitted;
    while (std::getline(in, line)) {
        chomp(line);
        if (line.empty()) continue;
        const auto fields = split_row(line, '\t');
        if (fields.size() <= entry_col) throw ParseError("short geninq row: " + line);
        const std::string term = strip_sense(lower_ascii(fields[entry_col]));
        if (term.empty()) continue;
        for (const auto& [tag, col] : tag_cols) {
            if (col < fields.size() && !fields[col].empty()) {
                if (emitted.insert({term, tag}).second) {
                    out << term << '\t' << tag << "\t1\n";
                }
            }
        }
    }
}

void convert_sentiwordnet(std::istream& in, std::ostream& out) {
    std::string line;
    while (std::getline(in, line)) {
        chomp(line);
        if (line.empty() || line[0] == '#') continue;
        const auto fields = split_row(line, '\t');
        if (fields.size() < 5) throw ParseError("short sentiwordnet row: " + line);
        parse_double(fields[2]);
        parse_double(fields[3]);

        std::set<std::string> lemmas;
        for (const auto& term : split_row(fields[4], ' ')) {
            const std::string lemma = strip_sense(lower_ascii(term));
            if (!lemma.empty()) lemmas.insert(lemma);
        }
        if (lemmas.empty()) throw ParseError("no terms in sentiwordnet row: " + line);
        std::string joined;
        for (const auto& lemma : lemmas) {
            if (!joined.empty()) joined.push_back(',');
            joined += lemma;
        }
        out << lower_ascii(fields[0]) << fields[1] << '\t' << joined << '\t' << fields[2]
            << '\t' << fields[3] << '\n';
    }
}

void convert_micrownop(std::istream& in, std::ostream& out) {
    std::string line;
    while (std::getline(in, line)) {
        chomp(line);
        if (line.empty() || line[0] == '#') continue;
        const auto fields = split_row(line, '\t');
        if (fields.size() != 4 && fields.size() != 5) {
            throw ParseError("bad micrownop row: " + line);
        }
        const double pos = parse_double(fields[2]);
        const double neg = parse_double(fields[3]);
        std::string neutral;
        if (fields.size() == 5) {
            parse_double(fields[4]);
            neutral = fields[4];
        } else {
            neutral = fmt_double(std::clamp(1.0 - pos - neg, 0.0, 1.0));
        }
        out << fields[0] << '\t' << lower_ascii(fields[1]) << '\t' << fields[2] << '\t'
            << fields[3] << '\t' << neutral << '\n';
    }
}

void convert_bias(std::istream& in, std::ostream& out) {
    std::string line;
    std::set<std::string> seen;
    while (std::getline(in, line)) {
        chomp(line);
        if (line.empty() || line[0] == '#') continue;
        std::istringstream stream(line);
        std::string lemma;
        stream >> lemma;
        lemma = lower_ascii(lemma);
        if (lemma.empty() || !seen.insert(lemma).second) continue;
        out << lemma << "\tbias\t1\n";
    }
}

}  // namespace

void convert_lexicon(std::istream& in, std::ostream& out, std::string_view format) {
    if (format == "anew") return convert_anew(in, out);
    if (format == "geninq") return convert_geninq(in, out);
    if (format == "sentiwordnet") return convert_sentiwordnet(in, out);
    if (format == "micrownop") return convert_micrownop(in, out);
    if (format == "bias") return convert_bias(in, out);
    throw ParseError("unknown lexicon format: " + std::string(format));
}

}  // namespace mediatone
