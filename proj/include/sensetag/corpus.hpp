#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sensetag/errors.hpp"
#include "sensetag/lemmatizer.hpp"
#include "sensetag/lexicon.hpp"
#include "sensetag/pos.hpp"

namespace sensetag {

enum class NeCategory { Person, Organization, Location, Other };

inline std::string_view to_string(NeCategory c) {
    switch (c) {
        case NeCategory::Person: return "PERSON";
        case NeCategory::Organization: return "ORGANIZATION";
        case NeCategory::Location: return "LOCATION";
        default: return "OTHER";
    }
}

inline std::optional<NeCategory> ne_from_string(std::string_view s) {
    if (s == "PERSON") return NeCategory::Person;
    if (s == "ORGANIZATION") return NeCategory::Organization;
    if (s == "LOCATION") return NeCategory::Location;
    if (s == "OTHER") return NeCategory::Other;
    return std::nullopt;
}

// Gold annotation: a set of sense ids, multi-valued because cross-inventory
// mapping is one-to-many. Before translation the ids are source-inventory
// keys rather than lexicon sense ids.
struct GoldTag {
    std::set<std::string> sense_ids;
    bool contains(const std::string& id) const { return sense_ids.count(id); }
    bool operator==(const GoldTag&) const = default;
};

struct Token {
    std::string surface;
    std::string lemma;
    std::string fine_pos;  // Penn-style tag
    CoarsePos pos = CoarsePos::Other;
    std::optional<NeCategory> ne_category;
    std::optional<GoldTag> gold;

    bool is_content() const { return sensetag::is_content(pos); }
    // Disambiguation targets: content words outside named entities.
    bool is_target() const { return is_content() && !ne_category; }

    bool operator==(const Token&) const = default;
};

using Sentence = std::vector<Token>;
using Paragraph = std::vector<Sentence>;

struct Document {
    std::string id;
    std::vector<Paragraph> paragraphs;
    bool operator==(const Document&) const = default;
};

// Address of one token occurrence within a corpus. Indices are 0-based.
struct TokenRef {
    int doc = 0;
    int paragraph = 0;
    int sentence = 0;
    int index = 0;
    auto operator<=>(const TokenRef&) const = default;
};

inline const Token& token_at(const std::vector<Document>& corpus,
                             const TokenRef& r) {
    return corpus[r.doc].paragraphs[r.paragraph][r.sentence][r.index];
}

inline Token& token_at(std::vector<Document>& corpus, const TokenRef& r) {
    return corpus[r.doc].paragraphs[r.paragraph][r.sentence][r.index];
}

// Visit all tokens in corpus order.
template <typename Fn>
void for_each_token(const std::vector<Document>& corpus, Fn&& fn) {
    for (int d = 0; d < static_cast<int>(corpus.size()); ++d)
        for (int p = 0; p < static_cast<int>(corpus[d].paragraphs.size()); ++p)
            for (int s = 0;
                 s < static_cast<int>(corpus[d].paragraphs[p].size()); ++s)
                for (int i = 0;
                     i < static_cast<int>(corpus[d].paragraphs[p][s].size());
                     ++i)
                    fn(TokenRef{d, p, s, i}, corpus[d].paragraphs[p][s][i]);
}

// ---- corpus file format ---------------------------------------------------
//
// One token per line, 9 tab-separated fields:
//   doc  paragraph  sentence  index  surface  lemma  pos  ne  gold
// `-` marks an absent lemma (computed by the lemmatizer), ne, or gold.
// gold is a comma-separated id list. Blank lines and #-comments are skipped.

namespace detail {

inline std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> out;
    size_t start = 0;
    while (true) {
        auto tab = line.find('\t', start);
        if (tab == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
}

inline int parse_int(const std::string& s, const std::string& where) {
    try {
        size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos != s.size() || v < 0) throw std::invalid_argument(s);
        return v;
    } catch (...) {
        throw ParseError(where, "bad index field '" + s + "'");
    }
}

}  // namespace detail

inline std::vector<Document> parse_corpus(std::istream& in,
                                          const Lemmatizer& lem,
                                          const std::string& source = "corpus") {
    std::vector<Document> docs;
    std::map<std::string, int> doc_index;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const std::string where = source + ":" + std::to_string(lineno);
        auto fields = detail::split_tabs(line);
        if (fields.size() != 9)
            throw ParseError(where, "expected 9 tab-separated fields, got " +
                                        std::to_string(fields.size()));
        const std::string& doc_id = fields[0];
        int p = detail::parse_int(fields[1], where);
        int s = detail::parse_int(fields[2], where);
        int i = detail::parse_int(fields[3], where);

        Token tok;
        tok.surface = fields[4];
        if (tok.surface.empty() || tok.surface == "-")
            throw ParseError(where, "record missing surface");
        tok.fine_pos = fields[6] == "-" ? "" : fields[6];
        tok.pos = coarsen_penn_tag(tok.fine_pos);
        tok.lemma = fields[5] == "-" ? lem.lemmatize(tok.surface, tok.pos)
                                     : fields[5];
        if (fields[7] != "-") {
            auto ne = ne_from_string(fields[7]);
            if (!ne) throw ParseError(where, "bad ne field '" + fields[7] + "'");
            tok.ne_category = ne;
        }
        if (fields[8] != "-" && !fields[8].empty()) {
            GoldTag gold;
            std::stringstream ids(fields[8]);
            std::string id;
            while (std::getline(ids, id, ','))
                if (!id.empty()) gold.sense_ids.insert(id);
            if (!gold.sense_ids.empty()) tok.gold = std::move(gold);
        }

        auto [it, fresh] = doc_index.try_emplace(doc_id,
                                                 static_cast<int>(docs.size()));
        if (fresh) docs.push_back(Document{doc_id, {}});
        Document& doc = docs[it->second];
        if (p != static_cast<int>(doc.paragraphs.size()) - 1 &&
            p != static_cast<int>(doc.paragraphs.size()))
            throw ParseError(where, "paragraph index out of order");
        if (p == static_cast<int>(doc.paragraphs.size()))
            doc.paragraphs.emplace_back();
        Paragraph& para = doc.paragraphs[p];
        if (s == static_cast<int>(para.size())) para.emplace_back();
        else if (s != static_cast<int>(para.size()) - 1)
            throw ParseError(where, "sentence index out of order");
        Sentence& sent = para[s];
        if (i != static_cast<int>(sent.size()))
            throw ParseError(where, "token index out of order");
        sent.push_back(std::move(tok));
    }
    return docs;
}

inline void serialize_corpus(const std::vector<Document>& corpus,
                             std::ostream& out) {
    for_each_token(corpus, [&](const TokenRef& r, const Token& tok) {
        out << corpus[r.doc].id << '\t' << r.paragraph << '\t' << r.sentence
            << '\t' << r.index << '\t' << tok.surface << '\t' << tok.lemma
            << '\t' << (tok.fine_pos.empty() ? "-" : tok.fine_pos) << '\t'
            << (tok.ne_category ? to_string(*tok.ne_category) : "-") << '\t';
        if (tok.gold && !tok.gold->sense_ids.empty()) {
            bool first = true;
            for (const auto& id : tok.gold->sense_ids) {
                if (!first) out << ',';
                out << id;
                first = false;
            }
        } else {
            out << '-';
        }
        out << '\n';
    });
}

// ---- plain-text fallback --------------------------------------------------
//
// Minimal ingestion for untagged text: whitespace/punctuation tokenization,
// blank-line paragraph breaks, sentence-final punctuation sentence breaks,
// POS guessed from the lexicon's most frequent category.

inline std::vector<Document> ingest_text(std::istream& in, const Lexicon& lex,
                                         const Lemmatizer& lem,
                                         const std::string& doc_id = "text") {
    Document doc{doc_id, {}};
    Paragraph para;
    Sentence sent;
    auto end_sentence = [&] {
        if (!sent.empty()) para.push_back(std::move(sent)), sent.clear();
    };
    auto end_paragraph = [&] {
        end_sentence();
        if (!para.empty()) doc.paragraphs.push_back(std::move(para)), para.clear();
    };
    auto add_word = [&](const std::string& w) {
        Token tok;
        tok.surface = w;
        std::string lower;
        for (char c : w)
            lower.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a')
                                                 : c);
        auto guess = lex.most_frequent_pos(lower);
        if (!guess) {
            // try the lemmatized form under each content category
            for (auto pos : {CoarsePos::Noun, CoarsePos::Verb,
                             CoarsePos::Adjective, CoarsePos::Adverb}) {
                std::string candidate = lem.lemmatize(lower, pos);
                if (lex.has_lemma(candidate)) {
                    guess = lex.most_frequent_pos(candidate);
                    break;
                }
            }
        }
        tok.pos = guess.value_or(CoarsePos::Other);
        tok.lemma = lem.lemmatize(lower, tok.pos);
        tok.fine_pos = "";
        sent.push_back(std::move(tok));
    };

    std::string line;
    std::string word;
    auto flush_word = [&] {
        if (!word.empty()) add_word(word), word.clear();
    };
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            flush_word();
            end_paragraph();
            continue;
        }
        for (char c : line) {
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '\'' ||
                c == '-') {
                word.push_back(c);
            } else {
                flush_word();
                if (c == '.' || c == '!' || c == '?') {
                    Token punct;
                    punct.surface = std::string(1, c);
                    punct.lemma = punct.surface;
                    punct.fine_pos = ".";
                    punct.pos = CoarsePos::Other;
                    sent.push_back(std::move(punct));
                    end_sentence();
                } else if (c == ',' || c == ';' || c == ':') {
                    Token punct;
                    punct.surface = std::string(1, c);
                    punct.lemma = punct.surface;
                    punct.fine_pos = ",";
                    punct.pos = CoarsePos::Other;
                    sent.push_back(std::move(punct));
                }
            }
        }
        flush_word();
    }
    flush_word();
    end_paragraph();
    std::vector<Document> out;
    if (!doc.paragraphs.empty()) out.push_back(std::move(doc));
    return out;
}

// ---- gold-tag translation -------------------------------------------------

// Map from source-inventory sense key to target sense ids; a key absent from
// the map is a gap. Many-to-many allowed.
struct SenseMapping {
    std::map<std::string, std::set<SenseId>> rows;
};

// Two-column TSV, source_key<TAB>target_id, repeated rows for one-to-many.
inline SenseMapping parse_mapping(std::istream& in,
                                  const std::string& source = "mapping") {
    SenseMapping m;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw ParseError(source + ":" + std::to_string(lineno),
                             "expected source_key<TAB>target_id");
        m.rows[line.substr(0, tab)].insert(line.substr(tab + 1));
    }
    return m;
}

struct MappingStats {
    std::int64_t source_tagged = 0;        // tokens carrying a source tag
    std::int64_t proper_names_skipped = 0; // tagged tokens inside named entities
    std::int64_t translated = 0;           // tokens that gained a target tag
    std::int64_t gaps = 0;                 // tagged tokens with no mapping row
};

// Replace source-inventory gold keys with target sense ids. Proper-name
// tokens are skipped (their tags dropped); tokens whose key has no mapping
// row lose their tag and count as gaps.
inline MappingStats translate_gold(
    std::vector<Document>& corpus, const SenseMapping& mapping,
    const Lexicon& target_lexicon,
    const std::function<std::optional<std::string>(const Token&)>&
        source_key_of) {
    // reject rows whose targets do not resolve before touching the corpus
    std::vector<std::string> bad;
    for (const auto& [key, targets] : mapping.rows)
        for (const auto& id : targets)
            if (!target_lexicon.find_sense(id))
                bad.push_back(key + " -> " + id);
    if (!bad.empty()) {
        std::string msg = "mapping targets unresolvable in lexicon:";
        for (const auto& row : bad) msg += "\n  " + row;
        throw ValidationError(msg);
    }

    MappingStats stats;
    for (auto& doc : corpus)
        for (auto& para : doc.paragraphs)
            for (auto& sent : para)
                for (auto& tok : sent) {
                    auto key = source_key_of(tok);
                    if (!key) continue;
                    ++stats.source_tagged;
                    tok.gold.reset();
                    if (tok.ne_category) {
                        ++stats.proper_names_skipped;
                        continue;
                    }
                    auto it = mapping.rows.find(*key);
                    if (it == mapping.rows.end() || it->second.empty()) {
                        ++stats.gaps;
                        continue;
                    }
                    tok.gold = GoldTag{it->second};
                    ++stats.translated;
                }
    return stats;
}

// Convenience: the token's single gold id is its source key.
inline MappingStats translate_gold(std::vector<Document>& corpus,
                                   const SenseMapping& mapping,
                                   const Lexicon& target_lexicon) {
    return translate_gold(
        corpus, mapping, target_lexicon,
        [](const Token& tok) -> std::optional<std::string> {
            if (!tok.gold || tok.gold->sense_ids.empty()) return std::nullopt;
            return *tok.gold->sense_ids.begin();
        });
}

// ---- train/test split -----------------------------------------------------

struct CorpusSplit {
    std::vector<TokenRef> train;
    std::vector<TokenRef> test;
};

// Deterministic seeded partition of gold-tagged content-token occurrences.
// Uses a hand-rolled Fisher-Yates shuffle so results are identical across
// standard libraries.
inline CorpusSplit split_corpus(const std::vector<Document>& corpus,
                                std::size_t held_out_count,
                                std::uint64_t seed) {
    std::vector<TokenRef> tagged;
    for_each_token(corpus, [&](const TokenRef& r, const Token& tok) {
        if (tok.gold && tok.is_target()) tagged.push_back(r);
    });
    if (held_out_count > tagged.size())
        throw ValidationError("held-out count " +
                              std::to_string(held_out_count) +
                              " exceeds tagged token count " +
                              std::to_string(tagged.size()));
    std::uint64_t state = seed ^ 0x9e3779b97f4a7c15ULL;
    auto next = [&state] {
        state += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    for (std::size_t i = tagged.size(); i > 1; --i)
        std::swap(tagged[i - 1], tagged[next() % i]);

    CorpusSplit split;
    split.test.assign(tagged.begin(),
                      tagged.begin() + static_cast<std::ptrdiff_t>(held_out_count));
    split.train.assign(tagged.begin() + static_cast<std::ptrdiff_t>(held_out_count),
                       tagged.end());
    std::sort(split.test.begin(), split.test.end());
    std::sort(split.train.begin(), split.train.end());
    return split;
}

}  // namespace sensetag
