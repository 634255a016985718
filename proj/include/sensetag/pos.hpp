#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace sensetag {

// Coarse part-of-speech categories. Content words are the first four;
// prepositions and everything else fall under Other.
enum class CoarsePos { Noun, Verb, Adjective, Adverb, Other };

inline bool is_content(CoarsePos p) { return p != CoarsePos::Other; }

inline std::string_view to_string(CoarsePos p) {
    switch (p) {
        case CoarsePos::Noun: return "noun";
        case CoarsePos::Verb: return "verb";
        case CoarsePos::Adjective: return "adjective";
        case CoarsePos::Adverb: return "adverb";
        default: return "other";
    }
}

inline std::optional<CoarsePos> coarse_pos_from_string(std::string_view s) {
    if (s == "noun") return CoarsePos::Noun;
    if (s == "verb") return CoarsePos::Verb;
    if (s == "adjective") return CoarsePos::Adjective;
    if (s == "adverb") return CoarsePos::Adverb;
    if (s == "other") return CoarsePos::Other;
    return std::nullopt;
}

// Penn Treebank fine tag -> coarse category. Unknown tags map to Other.
inline CoarsePos coarsen_penn_tag(std::string_view tag) {
    if (tag.empty()) return CoarsePos::Other;
    if (tag.substr(0, 2) == "NN") return CoarsePos::Noun;
    if (tag.substr(0, 2) == "VB") return CoarsePos::Verb;
    if (tag.substr(0, 2) == "JJ") return CoarsePos::Adjective;
    if (tag.substr(0, 2) == "RB") return CoarsePos::Adverb;
    return CoarsePos::Other;
}

}  // namespace sensetag
