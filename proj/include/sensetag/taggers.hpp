#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sensetag/annealing.hpp"
#include "sensetag/corpus.hpp"
#include "sensetag/lexicon.hpp"

namespace sensetag {

enum class TaggerSource { Pos, Lesk, Pragmatic, Selres };

inline std::string_view to_string(TaggerSource s) {
    switch (s) {
        case TaggerSource::Pos: return "pos";
        case TaggerSource::Lesk: return "lesk";
        case TaggerSource::Pragmatic: return "pragmatic";
        default: return "selres";
    }
}

// Per-token suggested sense sets with confidence in [0,1]. Suggested senses
// are exactly the keys of the confidence map.
struct TaggerOutput {
    TaggerSource source = TaggerSource::Pos;
    std::map<TokenRef, std::map<SenseId, double>> suggestions;

    const std::map<SenseId, double>* for_token(const TokenRef& r) const {
        auto it = suggestions.find(r);
        return it == suggestions.end() ? nullptr : &it->second;
    }
};

struct TaggerParams {
    Schedule schedule;
    std::uint64_t seed = 1;
    int restarts = 10;
    double threshold = 0.2;
};

// ---- part-of-speech filter ------------------------------------------------

// Keep senses whose homograph POS matches the token's coarse category; when
// nothing matches (or the token is not a content word) all senses are kept,
// so a tagging error can never empty the candidate set.
inline std::vector<const Sense*> pos_filter(
    const Token& token, const std::vector<const Sense*>& senses) {
    if (!token.is_content()) return senses;
    std::vector<const Sense*> kept;
    for (const Sense* s : senses)
        if (s->pos == token.pos) kept.push_back(s);
    if (kept.empty()) return senses;
    return kept;
}

// POS-filtered candidate senses of a token; empty for non-targets and for
// lemmas outside the lexicon.
inline std::vector<const Sense*> candidate_senses(const Lexicon& lex,
                                                  const Token& token) {
    if (!token.is_target()) return {};
    auto senses = lex.senses_of(token.lemma);
    if (senses.empty()) return {};
    return pos_filter(token, senses);
}

// ---- definition overlap (Lesk) --------------------------------------------

// Normalized definition overlap: each lemma shared between two or more
// distinct bags contributes 1/bag_size per occurrence. Returns 1/(1+R) so
// larger overlap means lower energy.
inline double lesk_energy_of_bags(const std::vector<DefinitionBag>& bags) {
    std::map<std::string, int> bag_count;  // lemma -> number of bags containing it
    for (const auto& bag : bags)
        for (const auto& [lemma, n] : bag.counts) {
            (void)n;
            ++bag_count[lemma];
        }
    double overlap = 0.0;
    for (const auto& bag : bags) {
        if (bag.size == 0) continue;
        for (const auto& [lemma, n] : bag.counts)
            if (bag_count.at(lemma) >= 2)
                overlap += static_cast<double>(n) / bag.size;
    }
    return 1.0 / (1.0 + overlap);
}

inline double lesk_energy(const std::vector<const Sense*>& assignment,
                          const Lexicon& lex, const Lemmatizer& lem) {
    std::vector<DefinitionBag> bags;
    bags.reserve(assignment.size());
    for (const Sense* s : assignment)
        bags.push_back(definition_bag(*s, lex.stoplist, lem));
    return lesk_energy_of_bags(bags);
}

// ---- pragmatic code overlap -----------------------------------------------

// Pair score over assigned senses: 2 for identical four-letter codes, 1 for
// a shared two-letter primary code only, 0 otherwise; codeless senses score
// nothing. Returns 1/(1+R).
inline double pragmatic_energy(const std::vector<const Sense*>& assignment) {
    double overlap = 0.0;
    for (std::size_t i = 0; i < assignment.size(); ++i) {
        const auto& a = assignment[i]->pragmatic_code;
        if (a.empty()) continue;
        for (std::size_t j = i + 1; j < assignment.size(); ++j) {
            const auto& b = assignment[j]->pragmatic_code;
            if (b.empty()) continue;
            if (a == b && a.size() == 4) overlap += 2.0;
            else if (a.substr(0, 2) == b.substr(0, 2)) overlap += 1.0;
        }
    }
    return 1.0 / (1.0 + overlap);
}

// ---- annealed set taggers -------------------------------------------------

namespace detail {

struct AnnealUnit {
    std::vector<TokenRef> slot_refs;                      // ambiguous tokens
    std::vector<std::vector<const Sense*>> slot_senses;   // candidates per slot
    std::vector<TokenRef> fixed_refs;                     // single-candidate
    std::vector<const Sense*> fixed_senses;
};

// Restart-voting contract shared by the Lesk and pragmatic taggers:
// confidence = fraction of restart finals choosing the sense, suggested =
// {confidence >= threshold} plus the overall best configuration's senses;
// fixed tokens are reported with confidence 1.
inline void run_anneal_tagger(const AnnealUnit& unit, const EnergyFn& energy,
                              const TaggerParams& params,
                              TaggerOutput& out) {
    for (std::size_t i = 0; i < unit.fixed_refs.size(); ++i)
        out.suggestions[unit.fixed_refs[i]][unit.fixed_senses[i]->id] = 1.0;
    if (unit.slot_refs.empty()) return;

    ConfigSpace space;
    for (const auto& senses : unit.slot_senses)
        space.choice_counts.push_back(static_cast<int>(senses.size()));

    AnnealResult result = anneal(space, energy, params.schedule, params.seed,
                                 params.restarts);

    for (std::size_t slot = 0; slot < unit.slot_refs.size(); ++slot) {
        std::map<SenseId, int> votes;
        for (const auto& final_config : result.restart_finals)
            ++votes[unit.slot_senses[slot][final_config[slot]]->id];
        const SenseId& best_id =
            unit.slot_senses[slot][result.best_config[slot]]->id;
        auto& conf = out.suggestions[unit.slot_refs[slot]];
        for (const auto& [id, n] : votes) {
            double fraction =
                static_cast<double>(n) / result.restart_finals.size();
            if (fraction >= params.threshold || id == best_id)
                conf[id] = fraction;
        }
        if (!conf.count(best_id)) conf[best_id] = 0.0;
    }
}

}  // namespace detail

// Lesk tagger over one sentence: anneal the sense choice of every ambiguous
// content token against the normalized definition-overlap energy.
inline TaggerOutput lesk_tag(const std::vector<Document>& corpus, int d, int p,
                             int s, const Lexicon& lex, const Lemmatizer& lem,
                             const TaggerParams& params) {
    TaggerOutput out;
    out.source = TaggerSource::Lesk;
    const Sentence& sent = corpus[d].paragraphs[p][s];

    detail::AnnealUnit unit;
    std::vector<std::vector<DefinitionBag>> slot_bags;
    std::vector<DefinitionBag> fixed_bags;
    for (int i = 0; i < static_cast<int>(sent.size()); ++i) {
        auto cands = candidate_senses(lex, sent[i]);
        if (cands.empty()) continue;
        TokenRef ref{d, p, s, i};
        if (cands.size() == 1) {
            unit.fixed_refs.push_back(ref);
            unit.fixed_senses.push_back(cands[0]);
            fixed_bags.push_back(definition_bag(*cands[0], lex.stoplist, lem));
        } else {
            unit.slot_refs.push_back(ref);
            std::vector<DefinitionBag> bags;
            for (const Sense* c : cands)
                bags.push_back(definition_bag(*c, lex.stoplist, lem));
            slot_bags.push_back(std::move(bags));
            unit.slot_senses.push_back(std::move(cands));
        }
    }

    auto energy = [&](const Configuration& config) {
        std::vector<DefinitionBag> bags = fixed_bags;
        for (std::size_t slot = 0; slot < config.size(); ++slot)
            bags.push_back(slot_bags[slot][config[slot]]);
        return lesk_energy_of_bags(bags);
    };
    detail::run_anneal_tagger(unit, energy, params, out);
    return out;
}

// Pragmatic-code tagger over one paragraph, nouns only: anneal noun sense
// choices against the code-coherence energy. Unambiguous nouns participate
// as fixed evidence.
inline TaggerOutput pragmatic_tag(const std::vector<Document>& corpus, int d,
                                  int p, const Lexicon& lex,
                                  const TaggerParams& params) {
    TaggerOutput out;
    out.source = TaggerSource::Pragmatic;
    const Paragraph& para = corpus[d].paragraphs[p];

    detail::AnnealUnit unit;
    for (int s = 0; s < static_cast<int>(para.size()); ++s) {
        const Sentence& sent = para[s];
        for (int i = 0; i < static_cast<int>(sent.size()); ++i) {
            if (sent[i].pos != CoarsePos::Noun) continue;
            auto cands = candidate_senses(lex, sent[i]);
            if (cands.empty()) continue;
            TokenRef ref{d, p, s, i};
            if (cands.size() == 1) {
                unit.fixed_refs.push_back(ref);
                unit.fixed_senses.push_back(cands[0]);
            } else {
                unit.slot_refs.push_back(ref);
                unit.slot_senses.push_back(std::move(cands));
            }
        }
    }

    auto energy = [&](const Configuration& config) {
        std::vector<const Sense*> assignment = unit.fixed_senses;
        for (std::size_t slot = 0; slot < config.size(); ++slot)
            assignment.push_back(unit.slot_senses[slot][config[slot]]);
        return pragmatic_energy(assignment);
    };
    detail::run_anneal_tagger(unit, energy, params, out);
    return out;
}

// ---- shallow grammatical links --------------------------------------------

enum class LinkKind {
    SubjectOf,
    ObjectOf,
    IndirectObjectOf,
    AdjectiveModifies,
    AdverbModifies
};

inline std::string_view to_string(LinkKind k) {
    switch (k) {
        case LinkKind::SubjectOf: return "subject-of";
        case LinkKind::ObjectOf: return "object-of";
        case LinkKind::IndirectObjectOf: return "indirect-object-of";
        case LinkKind::AdjectiveModifies: return "adjective-modifies";
        default: return "adverb-modifies";
    }
}

// governor carries the restriction (verb, adjective, adverb); dependent is
// the argument it is resolved against. Indices are sentence positions.
struct GrammaticalLink {
    LinkKind kind;
    int governor;
    int dependent;
    bool operator==(const GrammaticalLink&) const = default;
};

namespace detail {

inline bool is_punct(const Token& tok) {
    return std::none_of(tok.surface.begin(), tok.surface.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c));
    });
}

inline bool is_noun(const Token& tok) { return tok.pos == CoarsePos::Noun; }

// Noun head = last noun of a maximal noun run.
inline bool is_noun_head(const Sentence& sent, int i) {
    return is_noun(sent[i]) &&
           (i + 1 >= static_cast<int>(sent.size()) || !is_noun(sent[i + 1]));
}

inline bool is_dative_preposition(const Token& tok) {
    return tok.lemma == "to" || tok.lemma == "for";
}

}  // namespace detail

// Five deterministic patterns, not a parser:
//   subject-of:          nearest noun head left of a verb within the clause
//   object-of:           first noun head right of the verb before the next
//                        verb or punctuation
//   indirect-object-of:  noun head following a dative preposition in the
//                        same window
//   adjective-modifies:  next noun head rightward within the noun phrase
//   adverb-modifies:     nearest verb or adjective within two tokens
inline std::vector<GrammaticalLink> find_links(const Sentence& sent) {
    std::vector<GrammaticalLink> links;
    const int n = static_cast<int>(sent.size());
    for (int v = 0; v < n; ++v) {
        if (sent[v].pos == CoarsePos::Verb) {
            for (int i = v - 1; i >= 0; --i) {
                if (sent[i].pos == CoarsePos::Verb || detail::is_punct(sent[i]))
                    break;
                if (detail::is_noun_head(sent, i)) {
                    links.push_back({LinkKind::SubjectOf, v, i});
                    break;
                }
            }
            bool object_found = false;
            std::optional<int> preposition;
            for (int i = v + 1; i < n; ++i) {
                if (sent[i].pos == CoarsePos::Verb || detail::is_punct(sent[i]))
                    break;
                if (preposition) {
                    if (detail::is_noun_head(sent, i)) {
                        links.push_back({LinkKind::IndirectObjectOf, v, i});
                        break;
                    }
                } else if (detail::is_dative_preposition(sent[i])) {
                    preposition = i;
                } else if (!object_found && detail::is_noun_head(sent, i)) {
                    links.push_back({LinkKind::ObjectOf, v, i});
                    object_found = true;
                }
            }
        } else if (sent[v].pos == CoarsePos::Adjective) {
            for (int i = v + 1; i < n; ++i) {
                if (sent[i].pos != CoarsePos::Noun &&
                    sent[i].pos != CoarsePos::Adjective)
                    break;
                if (detail::is_noun_head(sent, i)) {
                    links.push_back({LinkKind::AdjectiveModifies, v, i});
                    break;
                }
            }
        } else if (sent[v].pos == CoarsePos::Adverb) {
            int best = -1;
            for (int dist = 1; dist <= 2 && best < 0; ++dist) {
                // prefer the left neighbor at equal distance
                for (int i : {v - dist, v + dist}) {
                    if (i < 0 || i >= n) continue;
                    if (sent[i].pos == CoarsePos::Verb ||
                        sent[i].pos == CoarsePos::Adjective) {
                        best = i;
                        break;
                    }
                }
            }
            if (best >= 0)
                links.push_back({LinkKind::AdverbModifies, v, best});
        }
    }
    return links;
}

// ---- selectional restrictions ---------------------------------------------

// Semantic class attributed to a named-entity dependent.
inline std::string ne_class(NeCategory cat, const ClassHierarchy& h) {
    switch (cat) {
        case NeCategory::Person: return "H";
        case NeCategory::Organization:
        case NeCategory::Location: return "I";
        default: return h.root;
    }
}

namespace detail {

// Restriction slot a governor sense imposes across a link; nullopt = no
// restriction (vacuously satisfied).
inline std::optional<std::string> governor_restriction(const Sense& s,
                                                       LinkKind kind) {
    switch (kind) {
        case LinkKind::SubjectOf: return s.frame.subject_class;
        case LinkKind::ObjectOf: return s.frame.object_class;
        case LinkKind::IndirectObjectOf: return s.frame.indirect_object_class;
        case LinkKind::AdjectiveModifies: return s.frame.modified_class;
        case LinkKind::AdverbModifies: return s.frame.modifier_target_class;
    }
    return std::nullopt;
}

// Classes a dependent token can denote: the NE class for named entities,
// otherwise the own-classes of its candidate senses. Empty = unknown, which
// satisfies any restriction.
inline std::vector<std::string> dependent_classes(
    const Token& tok, const std::vector<const Sense*>& cands,
    const ClassHierarchy& h) {
    if (tok.ne_category) return {ne_class(*tok.ne_category, h)};
    std::vector<std::string> out;
    for (const Sense* s : cands)
        if (s->frame.own_class) out.push_back(*s->frame.own_class);
    return out;
}

inline bool any_subsumed(const ClassHierarchy& h, const std::string& restriction,
                         const std::vector<std::string>& classes) {
    if (classes.empty()) return true;
    return std::any_of(classes.begin(), classes.end(), [&](const auto& c) {
        return h.subsumes(restriction, c);
    });
}

}  // namespace detail

// Resolve selectional restrictions over the sentence's grammatical links. A
// candidate sense survives when, for every link its token takes part in, it
// agrees with at least one sense of the partner; tokens with no links keep
// all candidates at confidence 0.5. Named entities are never tagged but
// their category acts as class evidence for their partners.
inline TaggerOutput selres_tag(const std::vector<Document>& corpus, int d,
                               int p, int s,
                               const std::vector<GrammaticalLink>& links,
                               const Lexicon& lex) {
    TaggerOutput out;
    out.source = TaggerSource::Selres;
    const Sentence& sent = corpus[d].paragraphs[p][s];
    const ClassHierarchy& h = lex.hierarchy;

    std::vector<std::vector<const Sense*>> cands(sent.size());
    for (int i = 0; i < static_cast<int>(sent.size()); ++i)
        cands[i] = candidate_senses(lex, sent[i]);

    // sense of the governor agrees when its restriction subsumes some class
    // the dependent can denote
    auto governor_agrees = [&](const Sense& g, const GrammaticalLink& link) {
        auto restriction = detail::governor_restriction(g, link.kind);
        if (!restriction) return true;
        return detail::any_subsumed(
            h, *restriction,
            detail::dependent_classes(sent[link.dependent],
                                      cands[link.dependent], h));
    };
    // sense of the dependent agrees when some governor sense's restriction
    // subsumes its own class
    auto dependent_agrees = [&](const Sense& dep, const GrammaticalLink& link) {
        if (!dep.frame.own_class) return true;
        if (cands[link.governor].empty()) return true;  // governor unknown
        return std::any_of(
            cands[link.governor].begin(), cands[link.governor].end(),
            [&](const Sense* g) {
                auto restriction = detail::governor_restriction(*g, link.kind);
                return !restriction || h.subsumes(*restriction,
                                                  *dep.frame.own_class);
            });
    };

    for (int i = 0; i < static_cast<int>(sent.size()); ++i) {
        if (cands[i].empty()) continue;
        std::vector<const GrammaticalLink*> mine;
        for (const auto& link : links)
            if (link.governor == i || link.dependent == i)
                mine.push_back(&link);
        auto& conf = out.suggestions[TokenRef{d, p, s, i}];
        if (mine.empty()) {
            for (const Sense* c : cands[i]) conf[c->id] = 0.5;
            continue;
        }
        for (const Sense* c : cands[i]) {
            bool ok = std::all_of(mine.begin(), mine.end(), [&](auto* link) {
                return link->governor == i ? governor_agrees(*c, *link)
                                           : dependent_agrees(*c, *link);
            });
            if (ok) conf[c->id] = 1.0;
        }
        if (conf.empty())  // restriction conflict: keep everything
            for (const Sense* c : cands[i]) conf[c->id] = 0.5;
    }
    return out;
}

}  // namespace sensetag
