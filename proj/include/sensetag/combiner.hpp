#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "sensetag/corpus.hpp"
#include "sensetag/errors.hpp"
#include "sensetag/taggers.hpp"

namespace sensetag {

enum class Label { Appropriate, Inappropriate };

inline std::string_view to_string(Label l) {
    return l == Label::Appropriate ? "appropriate" : "inappropriate";
}

// Flat list of (feature name, value) pairs. Tagger features are namespaced
// by the token's POS so a rule can condition on both at once.
struct FeatureVector {
    std::vector<std::pair<std::string, std::string>> features;

    bool has(const std::string& name, const std::string& value) const {
        return std::find(features.begin(), features.end(),
                         std::make_pair(name, value)) != features.end();
    }
};

struct TrainingInstance {
    FeatureVector features;
    Label label = Label::Inappropriate;
};

struct Rule {
    std::string feature;
    std::string value;
    Label label = Label::Inappropriate;
    double score = 0.0;
    bool operator==(const Rule&) const = default;
};

// Ordered single-feature rules, highest score first; the first matching rule
// classifies, the default is inappropriate.
struct DecisionList {
    std::vector<Rule> rules;
    double alpha = 0.1;
};

// ---- feature extraction ---------------------------------------------------

inline const char* kCollocationSlots[10] = {
    "first_noun_left",  "first_noun_right", "first_verb_left",
    "first_verb_right", "first_prep_left",  "first_prep_right",
    "first_word_left",  "second_word_left", "first_word_right",
    "second_word_right"};

namespace detail {

inline bool is_preposition(const Token& tok) {
    if (tok.fine_pos == "IN" || tok.fine_pos == "TO") return true;
    static const std::set<std::string> kPreps = {
        "of", "in", "to", "for", "with", "on", "at", "by",
        "from", "about", "into", "over", "under", "through"};
    return tok.pos == CoarsePos::Other && kPreps.count(tok.lemma) > 0;
}

inline bool is_word(const Token& tok) { return !is_punct(tok); }

inline std::string confidence_bucket(double c) {
    if (c >= 0.8) return "high";
    if (c >= 0.4) return "mid";
    return "low";
}

inline std::string rank_bucket(int rank) {
    if (rank <= 1) return "1";
    if (rank == 2) return "2";
    return "3+";
}

}  // namespace detail

// Build the feature vector of one candidate sense in context: coarse POS,
// sense-rank bucket, per-tagger suggestion/confidence buckets, and the 10
// collocation slots scanned outward within the sentence.
inline FeatureVector extract_features(
    const std::vector<Document>& corpus, const TokenRef& ref,
    const SenseId& candidate, int rank,
    const std::vector<TaggerOutput>& tagger_outputs) {
    const Sentence& sent = corpus[ref.doc].paragraphs[ref.paragraph][ref.sentence];
    const Token& tok = sent[ref.index];
    const std::string pos(to_string(tok.pos));

    FeatureVector fv;
    fv.features.emplace_back("pos", pos);
    fv.features.emplace_back("rank", detail::rank_bucket(rank));

    for (auto source : {TaggerSource::Lesk, TaggerSource::Pragmatic,
                        TaggerSource::Selres}) {
        const std::string name = pos + ":" + std::string(to_string(source));
        double c = 0.0;
        bool suggested = false;
        for (const auto& out : tagger_outputs) {
            if (out.source != source) continue;
            if (const auto* conf = out.for_token(ref)) {
                auto it = conf->find(candidate);
                if (it != conf->end()) {
                    suggested = true;
                    c = it->second;
                }
            }
        }
        fv.features.emplace_back(name + ":suggested", suggested ? "yes" : "no");
        fv.features.emplace_back(name + ":confidence",
                                 detail::confidence_bucket(suggested ? c : 0.0));
    }

    // collocations
    auto scan = [&](int step, auto&& pred, int which) -> std::string {
        int found = 0;
        for (int i = ref.index + step; i >= 0 && i < static_cast<int>(sent.size());
             i += step) {
            if (pred(sent[i]) && ++found == which) return sent[i].lemma;
        }
        return "ABSENT";
    };
    auto noun = [](const Token& t) { return t.pos == CoarsePos::Noun; };
    auto verb = [](const Token& t) { return t.pos == CoarsePos::Verb; };
    const std::string values[10] = {
        scan(-1, noun, 1),
        scan(+1, noun, 1),
        scan(-1, verb, 1),
        scan(+1, verb, 1),
        scan(-1, detail::is_preposition, 1),
        scan(+1, detail::is_preposition, 1),
        scan(-1, detail::is_word, 1),
        scan(-1, detail::is_word, 2),
        scan(+1, detail::is_word, 1),
        scan(+1, detail::is_word, 2),
    };
    for (int i = 0; i < 10; ++i)
        fv.features.emplace_back(std::string("colloc:") + kCollocationSlots[i],
                                 values[i]);
    return fv;
}

// ---- training -------------------------------------------------------------

// One rule per observed (feature, value) pair, predicting the majority label
// with a smoothed log-likelihood-ratio score; sorted by score descending,
// ties by (feature, value). Deterministic and order-independent.
inline DecisionList train_decision_list(
    const std::vector<TrainingInstance>& instances, double alpha = 0.1) {
    if (instances.empty())
        throw ValidationError("cannot train on an empty instance set");
    bool has_pos = false, has_neg = false;
    for (const auto& inst : instances)
        (inst.label == Label::Appropriate ? has_pos : has_neg) = true;
    if (!has_pos || !has_neg)
        throw ValidationError("training set contains a single label only");

    std::map<std::pair<std::string, std::string>, std::pair<long, long>> counts;
    for (const auto& inst : instances)
        for (const auto& fv : inst.features.features) {
            auto& c = counts[fv];
            if (inst.label == Label::Appropriate) ++c.first;
            else ++c.second;
        }

    DecisionList dl;
    dl.alpha = alpha;
    for (const auto& [fv, c] : counts) {
        auto [appropriate, inappropriate] = c;
        Rule rule;
        rule.feature = fv.first;
        rule.value = fv.second;
        rule.label = appropriate > inappropriate ? Label::Appropriate
                                                 : Label::Inappropriate;
        double hi = static_cast<double>(std::max(appropriate, inappropriate));
        double lo = static_cast<double>(std::min(appropriate, inappropriate));
        rule.score = std::log((hi + alpha) / (lo + alpha));
        dl.rules.push_back(std::move(rule));
    }
    std::stable_sort(dl.rules.begin(), dl.rules.end(),
                     [](const Rule& a, const Rule& b) {
                         if (a.score != b.score) return a.score > b.score;
                         return std::tie(a.feature, a.value) <
                                std::tie(b.feature, b.value);
                     });
    return dl;
}

// First matching rule decides; no match -> (inappropriate, 0).
inline std::pair<Label, double> classify(const DecisionList& dl,
                                         const FeatureVector& fv) {
    for (const auto& rule : dl.rules)
        if (fv.has(rule.feature, rule.value)) return {rule.label, rule.score};
    return {Label::Inappropriate, 0.0};
}

// ---- sense choice ---------------------------------------------------------

struct ClassifiedCandidate {
    SenseId id;
    int rank = 1;  // 1-based position in the POS-filtered candidate list
    Label label = Label::Inappropriate;
    double score = 0.0;
};

struct SenseChoice {
    SenseId chosen;
    std::set<SenseId> suggested;
};

// Highest-scoring appropriate candidate wins, ties by lexicon rank; when no
// candidate is appropriate, fall back to the first sense.
inline SenseChoice choose_sense(const std::vector<ClassifiedCandidate>& cands) {
    if (cands.empty()) throw ValidationError("choose_sense with no candidates");
    const ClassifiedCandidate* best = nullptr;
    SenseChoice choice;
    for (const auto& c : cands) {
        if (c.label != Label::Appropriate) continue;
        choice.suggested.insert(c.id);
        if (!best || c.score > best->score ||
            (c.score == best->score && c.rank < best->rank))
            best = &c;
    }
    if (!best) {
        best = &*std::min_element(cands.begin(), cands.end(),
                                  [](const auto& a, const auto& b) {
                                      return a.rank < b.rank;
                                  });
        choice.suggested = {best->id};
    }
    choice.chosen = best->id;
    return choice;
}

// Simple voting baseline: each partial tagger casts one vote per suggested
// sense; most votes wins, ties by lexicon rank.
inline SenseChoice vote(const std::vector<std::pair<SenseId, int>>& candidates,
                        const TokenRef& ref,
                        const std::vector<TaggerOutput>& tagger_outputs) {
    if (candidates.empty()) throw ValidationError("vote with no candidates");
    std::map<SenseId, int> votes;
    for (const auto& [id, rank] : candidates) {
        (void)rank;
        votes[id] = 0;
    }
    for (const auto& out : tagger_outputs) {
        if (out.source == TaggerSource::Pos) continue;
        const auto* conf = out.for_token(ref);
        if (!conf) continue;
        for (const auto& [id, c] : *conf) {
            (void)c;
            auto it = votes.find(id);
            if (it != votes.end()) ++it->second;
        }
    }
    const std::pair<SenseId, int>* best = nullptr;
    int best_votes = -1;
    for (const auto& cand : candidates) {
        int v = votes[cand.first];
        if (v > best_votes ||
            (v == best_votes && best && cand.second < best->second)) {
            best = &cand;
            best_votes = v;
        }
    }
    SenseChoice choice;
    choice.chosen = best->first;
    for (const auto& [id, v] : votes)
        if (v == best_votes && v > 0) choice.suggested.insert(id);
    if (choice.suggested.empty()) choice.suggested = {choice.chosen};
    return choice;
}

// ---- model serialization --------------------------------------------------

inline constexpr int kModelFormatVersion = 1;

inline nlohmann::json decision_list_to_json(const DecisionList& dl) {
    nlohmann::json j;
    j["format_version"] = kModelFormatVersion;
    j["alpha"] = dl.alpha;
    j["rules"] = nlohmann::json::array();
    for (const auto& r : dl.rules)
        j["rules"].push_back({{"feature", r.feature},
                              {"value", r.value},
                              {"label", std::string(to_string(r.label))},
                              {"score", r.score}});
    return j;
}

inline DecisionList decision_list_from_json(const nlohmann::json& j) {
    if (j.value("format_version", -1) != kModelFormatVersion)
        throw ParseError("model", "missing or unsupported format_version");
    DecisionList dl;
    dl.alpha = j.value("alpha", 0.1);
    for (const auto& rj : j.at("rules")) {
        Rule r;
        r.feature = rj.at("feature").get<std::string>();
        r.value = rj.at("value").get<std::string>();
        r.label = rj.at("label").get<std::string>() == "appropriate"
                      ? Label::Appropriate
                      : Label::Inappropriate;
        r.score = rj.at("score").get<double>();
        dl.rules.push_back(std::move(r));
    }
    return dl;
}

inline DecisionList load_decision_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open model: " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path, e.what());
    }
    return decision_list_from_json(j);
}

}  // namespace sensetag
