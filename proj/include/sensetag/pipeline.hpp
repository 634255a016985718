#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "sensetag/combiner.hpp"
#include "sensetag/corpus.hpp"
#include "sensetag/lexicon.hpp"
#include "sensetag/taggers.hpp"

namespace sensetag {

// End-to-end wiring shared by the CLI, training and evaluation: run the
// partial taggers over a corpus, then combine their outputs into one sense
// choice per target token.

struct PipelineParams {
    TaggerParams tagger;
    std::set<TaggerSource> enabled = {TaggerSource::Lesk,
                                      TaggerSource::Pragmatic,
                                      TaggerSource::Selres};
};

namespace detail {

// Per-unit seed so sentences and paragraphs get independent random streams
// and can be processed in any order with identical results.
inline std::uint64_t unit_seed(std::uint64_t seed, int d, int p, int s) {
    std::uint64_t h = seed;
    h = mix64(h ^ static_cast<std::uint64_t>(d + 1));
    h = mix64(h ^ static_cast<std::uint64_t>(p + 1));
    h = mix64(h ^ static_cast<std::uint64_t>(s + 2));
    return h;
}

}  // namespace detail

// Run the enabled partial taggers over the whole corpus; one merged
// TaggerOutput per source, in the fixed order lesk, pragmatic, selres.
inline std::vector<TaggerOutput> run_taggers(const std::vector<Document>& corpus,
                                             const Lexicon& lex,
                                             const Lemmatizer& lem,
                                             const PipelineParams& params) {
    TaggerOutput lesk{TaggerSource::Lesk, {}};
    TaggerOutput pragmatic{TaggerSource::Pragmatic, {}};
    TaggerOutput selres{TaggerSource::Selres, {}};

    for (int d = 0; d < static_cast<int>(corpus.size()); ++d) {
        const auto& paragraphs = corpus[d].paragraphs;
        for (int p = 0; p < static_cast<int>(paragraphs.size()); ++p) {
            if (params.enabled.count(TaggerSource::Pragmatic)) {
                TaggerParams tp = params.tagger;
                tp.seed = detail::unit_seed(params.tagger.seed, d, p, -1);
                auto out = pragmatic_tag(corpus, d, p, lex, tp);
                pragmatic.suggestions.merge(out.suggestions);
            }
            for (int s = 0; s < static_cast<int>(paragraphs[p].size()); ++s) {
                if (params.enabled.count(TaggerSource::Lesk)) {
                    TaggerParams tp = params.tagger;
                    tp.seed = detail::unit_seed(params.tagger.seed, d, p, s);
                    auto out = lesk_tag(corpus, d, p, s, lex, lem, tp);
                    lesk.suggestions.merge(out.suggestions);
                }
                if (params.enabled.count(TaggerSource::Selres)) {
                    auto links = find_links(paragraphs[p][s]);
                    auto out = selres_tag(corpus, d, p, s, links, lex);
                    selres.suggestions.merge(out.suggestions);
                }
            }
        }
    }

    std::vector<TaggerOutput> outputs;
    if (params.enabled.count(TaggerSource::Lesk)) outputs.push_back(std::move(lesk));
    if (params.enabled.count(TaggerSource::Pragmatic))
        outputs.push_back(std::move(pragmatic));
    if (params.enabled.count(TaggerSource::Selres))
        outputs.push_back(std::move(selres));
    return outputs;
}

struct Prediction {
    SenseId chosen;
    std::set<SenseId> suggested;
};

// Combine tagger outputs into one prediction per target token, using the
// decision list when given and the voting baseline otherwise.
inline std::map<TokenRef, Prediction> predict(
    const std::vector<Document>& corpus, const Lexicon& lex,
    const std::vector<TaggerOutput>& outputs,
    const DecisionList* model = nullptr) {
    std::map<TokenRef, Prediction> predictions;
    for_each_token(corpus, [&](const TokenRef& ref, const Token& tok) {
        auto cands = candidate_senses(lex, tok);
        if (cands.empty()) return;
        SenseChoice choice;
        if (model) {
            std::vector<ClassifiedCandidate> classified;
            for (int rank = 1; rank <= static_cast<int>(cands.size()); ++rank) {
                auto fv = extract_features(corpus, ref, cands[rank - 1]->id,
                                           rank, outputs);
                auto [label, score] = classify(*model, fv);
                classified.push_back(
                    {cands[rank - 1]->id, rank, label, score});
            }
            choice = choose_sense(classified);
        } else {
            std::vector<std::pair<SenseId, int>> ranked;
            for (int rank = 1; rank <= static_cast<int>(cands.size()); ++rank)
                ranked.emplace_back(cands[rank - 1]->id, rank);
            choice = vote(ranked, ref, outputs);
        }
        predictions[ref] = Prediction{choice.chosen, choice.suggested};
    });
    return predictions;
}

// Training instances for every (gold-tagged target token, candidate sense)
// pair; label = membership of the candidate in the gold set. When `subset`
// is given, only those token occurrences contribute.
inline std::vector<TrainingInstance> build_training_instances(
    const std::vector<Document>& corpus, const Lexicon& lex,
    const std::vector<TaggerOutput>& outputs,
    const std::set<TokenRef>* subset = nullptr) {
    std::vector<TrainingInstance> instances;
    for_each_token(corpus, [&](const TokenRef& ref, const Token& tok) {
        if (!tok.gold || !tok.is_target()) return;
        if (subset && !subset->count(ref)) return;
        auto cands = candidate_senses(lex, tok);
        for (int rank = 1; rank <= static_cast<int>(cands.size()); ++rank) {
            TrainingInstance inst;
            inst.features = extract_features(corpus, ref, cands[rank - 1]->id,
                                             rank, outputs);
            inst.label = tok.gold->contains(cands[rank - 1]->id)
                             ? Label::Appropriate
                             : Label::Inappropriate;
            instances.push_back(std::move(inst));
        }
    });
    return instances;
}

}  // namespace sensetag
