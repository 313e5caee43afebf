#include "mediatone/words.hpp"

namespace mediatone {

std::string_view to_string(Klass k) {
    switch (k) {
        case Klass::C0: return "C0";
        case Klass::C1: return "C1";
        case Klass::C2: return "C2";
        case Klass::C3: return "C3";
        case Klass::Unlabeled: return "unlabeled";
    }
    return "unlabeled";
}

std::optional<Klass> klass_from(std::string_view s) {
    if (s == "C0") return Klass::C0;
    if (s == "C1") return Klass::C1;
    if (s == "C2") return Klass::C2;
    if (s == "C3") return Klass::C3;
    if (s == "unlabeled") return Klass::Unlabeled;
    return std::nullopt;
}

}  // namespace mediatone
