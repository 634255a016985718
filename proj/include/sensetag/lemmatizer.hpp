#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>

#include "sensetag/errors.hpp"
#include "sensetag/pos.hpp"

namespace sensetag {

// Deterministic suffix-stripping lemmatizer: a fixed rule table (plural
// -s/-es/-ies, verbal -ed/-ing with undoubling and e-restoration, adjectival
// -er/-est) plus an exception list consulted first. Identity when no rule
// fires. Shared by corpus ingestion and definition-bag construction.
class Lemmatizer {
public:
    Lemmatizer() = default;

    // Exception list: two-column TSV, surface<TAB>lemma.
    static Lemmatizer from_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw IoError("cannot open exception list: " + path);
        Lemmatizer lem;
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty() || line[0] == '#') continue;
            auto tab = line.find('\t');
            if (tab == std::string::npos)
                throw ParseError(path + ":" + std::to_string(lineno),
                                 "expected surface<TAB>lemma");
            lem.exceptions_[line.substr(0, tab)] = line.substr(tab + 1);
        }
        return lem;
    }

    // Small built-in exception set covering the highest-frequency irregular
    // forms, so the library is usable without a data file.
    static Lemmatizer with_defaults() {
        Lemmatizer lem;
        static const char* kPairs[][2] = {
            {"is", "be"},      {"am", "be"},       {"are", "be"},
            {"was", "be"},     {"were", "be"},     {"been", "be"},
            {"being", "be"},   {"has", "have"},    {"had", "have"},
            {"having", "have"},{"does", "do"},     {"did", "do"},
            {"done", "do"},    {"goes", "go"},     {"went", "go"},
            {"gone", "go"},    {"said", "say"},    {"made", "make"},
            {"ran", "run"},    {"men", "man"},     {"women", "woman"},
            {"children", "child"}, {"feet", "foot"}, {"teeth", "tooth"},
            {"mice", "mouse"}, {"people", "person"},{"lying", "lie"},
            {"dying", "die"},  {"saw", "see"},     {"seen", "see"},
            {"took", "take"},  {"taken", "take"},  {"gave", "give"},
            {"given", "give"}, {"got", "get"},     {"better", "good"},
            {"best", "good"},  {"worse", "bad"},   {"worst", "bad"},
            {"bit", "bite"},   {"bitten", "bite"}, {"left", "leave"},
            {"found", "find"}, {"knew", "know"},   {"known", "know"},
            {"thought", "think"}, {"came", "come"}, {"grew", "grow"},
            {"grown", "grow"}, {"fell", "fall"},   {"held", "hold"},
            {"kept", "keep"},  {"paid", "pay"},    {"wrote", "write"},
            {"written", "write"}, {"spoke", "speak"}, {"spoken", "speak"},
            {"bought", "buy"}, {"sold", "sell"},   {"told", "tell"},
            {"felt", "feel"},  {"put", "put"},     {"ate", "eat"},
            {"eaten", "eat"},  {"lay", "lie"},     {"barked", "bark"},
        };
        for (auto& p : kPairs) lem.exceptions_[p[0]] = p[1];
        return lem;
    }

    void add_exception(const std::string& surface, const std::string& lemma) {
        exceptions_[surface] = lemma;
    }

    std::string lemmatize(const std::string& surface, CoarsePos pos) const {
        std::string word = to_lower(surface);
        if (auto it = exceptions_.find(word); it != exceptions_.end())
            return it->second;
        switch (pos) {
            case CoarsePos::Noun: return strip_plural(word);
            case CoarsePos::Verb: return strip_verbal(word);
            case CoarsePos::Adjective:
            case CoarsePos::Adverb: return strip_comparative(word);
            default: return word;
        }
    }

private:
    static std::string to_lower(const std::string& s) {
        std::string out = s;
        for (char& c : out)
            if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
        return out;
    }

    static bool is_vowel(char c) {
        return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
    }

    static bool ends_with(const std::string& s, const std::string& suf) {
        return s.size() >= suf.size() &&
               s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
    }

    // Undouble a final doubled consonant (runn -> run), then restore a
    // dropped 'e' on consonant-vowel-consonant stems (mak -> make). The CVC
    // check excludes w/x/y, which never double or drop e.
    static std::string fix_stem(std::string stem) {
        auto n = stem.size();
        if (n >= 3 && stem[n - 1] == stem[n - 2] && !is_vowel(stem[n - 1]) &&
            stem[n - 1] != 'l' && stem[n - 1] != 's' && stem[n - 1] != 'z') {
            stem.pop_back();
            return stem;
        }
        if (n >= 3 && !is_vowel(stem[n - 1]) && stem[n - 1] != 'w' &&
            stem[n - 1] != 'x' && stem[n - 1] != 'y' && is_vowel(stem[n - 2]) &&
            !is_vowel(stem[n - 3])) {
            stem.push_back('e');
        }
        return stem;
    }

    static std::string strip_plural(const std::string& w) {
        if (w.size() > 3 && ends_with(w, "ies"))
            return w.substr(0, w.size() - 3) + "y";
        if (w.size() > 4 && (ends_with(w, "ses") || ends_with(w, "xes") ||
                             ends_with(w, "zes") || ends_with(w, "ches") ||
                             ends_with(w, "shes")))
            return w.substr(0, w.size() - 2);
        if (w.size() > 2 && ends_with(w, "s") && !ends_with(w, "ss"))
            return w.substr(0, w.size() - 1);
        return w;
    }

    static std::string strip_verbal(const std::string& w) {
        if (w.size() > 4 && ends_with(w, "ying")) return w;  // lying -> exception list
        if (w.size() > 4 && ends_with(w, "ing"))
            return fix_stem(w.substr(0, w.size() - 3));
        if (w.size() > 3 && ends_with(w, "ied"))
            return w.substr(0, w.size() - 3) + "y";
        if (w.size() > 3 && ends_with(w, "ed"))
            return fix_stem(w.substr(0, w.size() - 2));
        // third-person singular shares the plural rules
        return strip_plural(w);
    }

    static std::string strip_comparative(const std::string& w) {
        if (w.size() > 4 && ends_with(w, "iest"))
            return w.substr(0, w.size() - 4) + "y";
        if (w.size() > 3 && ends_with(w, "ier"))
            return w.substr(0, w.size() - 3) + "y";
        if (w.size() > 4 && ends_with(w, "est"))
            return fix_stem(w.substr(0, w.size() - 3));
        if (w.size() > 3 && ends_with(w, "er"))
            return fix_stem(w.substr(0, w.size() - 2));
        return w;
    }

    std::unordered_map<std::string, std::string> exceptions_;
};

}  // namespace sensetag
