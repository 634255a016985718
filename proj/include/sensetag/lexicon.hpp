#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "sensetag/errors.hpp"
#include "sensetag/lemmatizer.hpp"
#include "sensetag/pos.hpp"

namespace sensetag {

// A sense id encodes (lemma, homograph index, sense index), 1-based, as
// "lemma.h.s". Ids are unique lexicon-wide.
using SenseId = std::string;

inline SenseId make_sense_id(const std::string& lemma, int homograph,
                             int sense) {
    return lemma + "." + std::to_string(homograph) + "." +
           std::to_string(sense);
}

// Semantic classes the lexicon restricts arguments with, arranged in a tree.
// Codes are 1-2 characters (H = human, P = plant, ...).
class ClassHierarchy {
public:
    std::map<std::string, std::string> classes;  // code -> readable name
    std::map<std::string, std::string> parent;   // child -> parent
    std::string root;

    bool contains(const std::string& code) const {
        return classes.count(code) > 0;
    }

    // True iff candidate is restriction itself or a descendant of it.
    bool subsumes(const std::string& restriction,
                  const std::string& candidate) const {
        if (!contains(restriction))
            throw ValidationError("unknown class code: " + restriction);
        if (!contains(candidate))
            throw ValidationError("unknown class code: " + candidate);
        std::string cur = candidate;
        while (true) {
            if (cur == restriction) return true;
            auto it = parent.find(cur);
            if (it == parent.end()) return false;
            cur = it->second;
        }
    }

    // Tree-shape violations, one message each; empty means valid.
    std::vector<std::string> validate() const {
        std::vector<std::string> errs;
        if (!contains(root))
            errs.push_back("hierarchy root '" + root + "' is not a class");
        if (parent.count(root))
            errs.push_back("hierarchy root '" + root + "' has a parent");
        for (const auto& [child, par] : parent) {
            if (!contains(child))
                errs.push_back("parent map names unknown class '" + child + "'");
            if (!contains(par))
                errs.push_back("class '" + child + "' has unknown parent '" +
                               par + "'");
        }
        for (const auto& [code, name] : classes) {
            (void)name;
            if (code == root) continue;
            if (!parent.count(code)) {
                errs.push_back("class '" + code +
                               "' is not the root but has no parent");
                continue;
            }
            // walk to root, detecting cycles
            std::set<std::string> seen{code};
            std::string cur = code;
            while (cur != root) {
                auto it = parent.find(cur);
                if (it == parent.end()) {
                    errs.push_back("class '" + code + "' does not reach root");
                    break;
                }
                cur = it->second;
                if (!seen.insert(cur).second) {
                    errs.push_back("hierarchy cycle through class '" + cur +
                                   "'");
                    break;
                }
            }
        }
        return errs;
    }
};

// Argument-class expectations of a sense. Which fields are populated depends
// on the homograph POS: nouns carry their own class, adjectives the class of
// the noun they modify, adverbs the class expected of their modifiee, verbs
// one to three argument classes by transitivity.
struct SelectionalFrame {
    std::optional<std::string> own_class;
    std::optional<std::string> modified_class;
    std::optional<std::string> modifier_target_class;
    std::optional<std::string> subject_class;
    std::optional<std::string> object_class;
    std::optional<std::string> indirect_object_class;

    bool empty() const {
        return !own_class && !modified_class && !modifier_target_class &&
               !subject_class && !object_class && !indirect_object_class;
    }

    std::vector<std::string> all_classes() const {
        std::vector<std::string> out;
        for (const auto* f : {&own_class, &modified_class,
                              &modifier_target_class, &subject_class,
                              &object_class, &indirect_object_class})
            if (*f) out.push_back(**f);
        return out;
    }
};

struct Sense {
    SenseId id;
    std::string definition;
    std::string pragmatic_code;  // empty, 2 or 4 uppercase letters
    SelectionalFrame frame;
    CoarsePos pos = CoarsePos::Other;

    // First two letters of the pragmatic code; empty when codeless.
    std::string primary_code() const { return pragmatic_code.substr(0, 2); }
};

// Senses of one word sharing a POS, ordered most-frequent first.
struct Homograph {
    CoarsePos pos = CoarsePos::Other;
    std::vector<Sense> senses;
};

// Bag of lemmatized content tokens from a definition, with multiplicity.
struct DefinitionBag {
    std::map<std::string, int> counts;
    int size = 0;  // total surviving tokens, with multiplicity
};

class Lexicon {
public:
    std::map<std::string, std::vector<Homograph>> entries;
    ClassHierarchy hierarchy;
    std::set<std::string> stoplist;

    // All senses of the lemma, homograph order then sense order. With a POS,
    // only homographs of that POS. Absent lemma -> empty.
    std::vector<const Sense*> senses_of(
        const std::string& lemma,
        std::optional<CoarsePos> pos = std::nullopt) const {
        std::vector<const Sense*> out;
        auto it = entries.find(lemma);
        if (it == entries.end()) return out;
        for (const auto& hom : it->second) {
            if (pos && hom.pos != *pos) continue;
            for (const auto& s : hom.senses) out.push_back(&s);
        }
        return out;
    }

    const Sense* find_sense(const SenseId& id) const {
        auto it = by_id_.find(id);
        return it == by_id_.end() ? nullptr : it->second;
    }

    bool has_lemma(const std::string& lemma) const {
        return entries.count(lemma) > 0;
    }

    // Most frequent coarse category of a lemma (first homograph), used by
    // the fallback POS guesser.
    std::optional<CoarsePos> most_frequent_pos(const std::string& lemma) const {
        auto it = entries.find(lemma);
        if (it == entries.end() || it->second.empty()) return std::nullopt;
        return it->second.front().pos;
    }

    // Invariant check across the whole lexicon; empty result means valid.
    std::vector<std::string> validate() const {
        std::vector<std::string> errs = hierarchy.validate();
        std::set<SenseId> seen_ids;
        for (const auto& [lemma, homs] : entries) {
            if (homs.empty())
                errs.push_back("lemma '" + lemma + "' has no homographs");
            for (const auto& hom : homs) {
                if (hom.senses.empty())
                    errs.push_back("lemma '" + lemma +
                                   "' has a homograph with no senses");
                if (!is_content(hom.pos))
                    errs.push_back("lemma '" + lemma +
                                   "' has a homograph of non-content POS");
                for (const auto& s : hom.senses) {
                    if (!seen_ids.insert(s.id).second)
                        errs.push_back("duplicate sense id '" + s.id + "'");
                    if (s.pos != hom.pos)
                        errs.push_back("sense '" + s.id +
                                       "' disagrees with homograph POS");
                    validate_sense(lemma, s, errs);
                }
            }
        }
        return errs;
    }

    void rebuild_index() {
        by_id_.clear();
        for (auto& [lemma, homs] : entries) {
            (void)lemma;
            for (auto& hom : homs)
                for (auto& s : hom.senses) by_id_[s.id] = &s;
        }
    }

private:
    void validate_sense(const std::string& lemma, const Sense& s,
                        std::vector<std::string>& errs) const {
        const auto& code = s.pragmatic_code;
        if (!code.empty()) {
            bool ok = (code.size() == 2 || code.size() == 4) &&
                      std::all_of(code.begin(), code.end(), [](char c) {
                          return c >= 'A' && c <= 'Z';
                      });
            if (!ok)
                errs.push_back("sense '" + s.id + "' has bad pragmatic code '" +
                               code + "'");
        }
        for (const auto& cls : s.frame.all_classes())
            if (!hierarchy.contains(cls))
                errs.push_back("sense '" + s.id + "' uses unknown class '" +
                               cls + "'");
        if (s.pos == CoarsePos::Verb) {
            int arity = (s.frame.subject_class ? 1 : 0) +
                        (s.frame.object_class ? 1 : 0) +
                        (s.frame.indirect_object_class ? 1 : 0);
            if (!s.frame.empty() && (arity < 1 || arity > 3))
                errs.push_back("sense '" + s.id + "' verb frame arity " +
                               std::to_string(arity));
            if (s.frame.own_class || s.frame.modified_class ||
                s.frame.modifier_target_class)
                errs.push_back("sense '" + s.id +
                               "' verb frame carries non-verb slots");
        }
        (void)lemma;
    }

    std::unordered_map<SenseId, const Sense*> by_id_;
};

// ---- file format ----------------------------------------------------------
//
// A lexicon file is a JSON document:
//   { "format_version": 1,
//     "hierarchy": { "root": "T", "classes": {code: name},
//                    "parent": {child: parent} },
//     "stoplist": [lemma, ...],
//     "entries": { lemma: [ { "pos": "noun",
//                             "senses": [ { "definition": str,
//                                           "pragmatic_code": str?,
//                                           "frame": {...}? } ] } ] } }
//
// Frame keys by POS: nouns "own"; adjectives "modified"; adverbs "target";
// verbs "subject" / "object" / "indirect_object".

inline constexpr int kLexiconFormatVersion = 1;

namespace detail {

inline SelectionalFrame frame_from_json(const nlohmann::json& j, CoarsePos pos,
                                        const SenseId& id) {
    SelectionalFrame f;
    if (j.is_null()) return f;
    auto grab = [&](const char* key) -> std::optional<std::string> {
        if (j.contains(key)) return j.at(key).get<std::string>();
        return std::nullopt;
    };
    switch (pos) {
        case CoarsePos::Noun: f.own_class = grab("own"); break;
        case CoarsePos::Adjective: f.modified_class = grab("modified"); break;
        case CoarsePos::Adverb: f.modifier_target_class = grab("target"); break;
        case CoarsePos::Verb: {
            f.subject_class = grab("subject");
            f.object_class = grab("object");
            f.indirect_object_class = grab("indirect_object");
            int extra = 0;
            for (const char* k : {"own", "modified", "target"})
                if (j.contains(k)) ++extra;
            // a verb frame listing more than three classes is malformed
            if (extra > 0 || j.size() > 3)
                throw ValidationError("sense '" + id + "': verb frame arity");
            break;
        }
        default: break;
    }
    return f;
}

inline nlohmann::json frame_to_json(const Sense& s) {
    nlohmann::json j = nlohmann::json::object();
    if (s.frame.own_class) j["own"] = *s.frame.own_class;
    if (s.frame.modified_class) j["modified"] = *s.frame.modified_class;
    if (s.frame.modifier_target_class)
        j["target"] = *s.frame.modifier_target_class;
    if (s.frame.subject_class) j["subject"] = *s.frame.subject_class;
    if (s.frame.object_class) j["object"] = *s.frame.object_class;
    if (s.frame.indirect_object_class)
        j["indirect_object"] = *s.frame.indirect_object_class;
    return j;
}

}  // namespace detail

inline Lexicon lexicon_from_json(const nlohmann::json& j) {
    Lexicon lex;
    if (j.value("format_version", -1) != kLexiconFormatVersion)
        throw ParseError("lexicon", "missing or unsupported format_version");

    const auto& h = j.at("hierarchy");
    lex.hierarchy.root = h.at("root").get<std::string>();
    for (const auto& [code, name] : h.at("classes").items())
        lex.hierarchy.classes[code] = name.get<std::string>();
    if (h.contains("parent"))
        for (const auto& [child, par] : h.at("parent").items())
            lex.hierarchy.parent[child] = par.get<std::string>();

    if (j.contains("stoplist"))
        for (const auto& w : j.at("stoplist"))
            lex.stoplist.insert(w.get<std::string>());

    for (const auto& [lemma, homs_json] : j.at("entries").items()) {
        std::vector<Homograph> homs;
        int hom_index = 0;
        for (const auto& hj : homs_json) {
            ++hom_index;
            Homograph hom;
            auto pos = coarse_pos_from_string(hj.at("pos").get<std::string>());
            if (!pos || !is_content(*pos))
                throw ParseError("lexicon",
                                 "lemma '" + lemma + "': bad homograph POS");
            hom.pos = *pos;
            int sense_index = 0;
            for (const auto& sj : hj.at("senses")) {
                ++sense_index;
                Sense s;
                s.id = make_sense_id(lemma, hom_index, sense_index);
                s.pos = hom.pos;
                s.definition = sj.value("definition", "");
                s.pragmatic_code = sj.value("pragmatic_code", "");
                s.frame = detail::frame_from_json(
                    sj.contains("frame") ? sj.at("frame")
                                         : nlohmann::json(nullptr),
                    hom.pos, s.id);
                hom.senses.push_back(std::move(s));
            }
            homs.push_back(std::move(hom));
        }
        lex.entries[lemma] = std::move(homs);
    }
    lex.rebuild_index();

    auto errs = lex.validate();
    if (!errs.empty()) {
        std::string msg = "lexicon invariant violations:";
        for (const auto& e : errs) msg += "\n  " + e;
        throw ValidationError(msg);
    }
    return lex;
}

inline nlohmann::json lexicon_to_json(const Lexicon& lex) {
    nlohmann::json j;
    j["format_version"] = kLexiconFormatVersion;
    j["hierarchy"]["root"] = lex.hierarchy.root;
    j["hierarchy"]["classes"] = lex.hierarchy.classes;
    j["hierarchy"]["parent"] = lex.hierarchy.parent;
    j["stoplist"] = lex.stoplist;
    auto& entries = j["entries"] = nlohmann::json::object();
    for (const auto& [lemma, homs] : lex.entries) {
        nlohmann::json homs_json = nlohmann::json::array();
        for (const auto& hom : homs) {
            nlohmann::json hj;
            hj["pos"] = std::string(to_string(hom.pos));
            hj["senses"] = nlohmann::json::array();
            for (const auto& s : hom.senses) {
                nlohmann::json sj;
                sj["definition"] = s.definition;
                if (!s.pragmatic_code.empty())
                    sj["pragmatic_code"] = s.pragmatic_code;
                auto fj = detail::frame_to_json(s);
                if (!fj.empty()) sj["frame"] = fj;
                hj["senses"].push_back(std::move(sj));
            }
            homs_json.push_back(std::move(hj));
        }
        entries[lemma] = std::move(homs_json);
    }
    return j;
}

inline Lexicon load_lexicon(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open lexicon: " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path, e.what());
    }
    return lexicon_from_json(j);
}

// Tokenize a definition (split on non-letters, lowercase), lemmatize with
// noun rules, drop stoplist words; multiplicity preserved.
inline DefinitionBag definition_bag(const Sense& sense,
                                    const std::set<std::string>& stoplist,
                                    const Lemmatizer& lem) {
    DefinitionBag bag;
    std::string word;
    auto flush = [&] {
        if (word.empty()) return;
        std::string lemma = lem.lemmatize(word, CoarsePos::Noun);
        if (!stoplist.count(lemma) && !stoplist.count(word)) {
            ++bag.counts[lemma];
            ++bag.size;
        }
        word.clear();
    };
    for (char c : sense.definition) {
        if ((c >= 'a' && c <= 'z')) {
            word.push_back(c);
        } else if (c >= 'A' && c <= 'Z') {
            word.push_back(static_cast<char>(c - 'A' + 'a'));
        } else {
            flush();
        }
    }
    flush();
    return bag;
}

}  // namespace sensetag
