#pragma once

#include <iosfwd>
#include <string_view>

namespace mediatone {

// Convert an upstream lexical resource to the normalized TSV the loaders
// read. Input formats, one per resource:
//   anew          delimited table (tab/comma/whitespace) with a header row
//                 naming Word and ValMn columns
//   geninq        tab-separated spreadsheet export with a header row naming
//                 Entry plus Positiv/Negativ/Strong tag columns; entries may
//                 carry #n sense suffixes, which are merged
//   sentiwordnet  distribution format: POS<TAB>ID<TAB>PosScore<TAB>NegScore
//                 <TAB>term#rank list<TAB>gloss, '#' comment lines skipped
//   micrownop     synset TSV with positive and negative columns; a missing
//                 neutral column is filled with 1-pos-neg
//   bias          one lemma per line
void convert_lexicon(std::istream& in, std::ostream& out, std::string_view format);

}  // namespace mediatone
