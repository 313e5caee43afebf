#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace mediatone {

// Controversy classes from the four-point annotation scale. C1 is kept as a
// parse target but is excluded from group comparisons and training.
enum class Klass { C0, C1, C2, C3, Unlabeled };

std::string_view to_string(Klass k);
std::optional<Klass> klass_from(std::string_view s);

struct TopicWord {
    std::string term;                 // lowercase single token
    Klass klass = Klass::Unlabeled;
    std::optional<double> user_score; // majority fraction behind the label
};

}  // namespace mediatone
