#pragma once

#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sensetag/corpus.hpp"
#include "sensetag/errors.hpp"
#include "sensetag/lexicon.hpp"
#include "sensetag/pipeline.hpp"

namespace sensetag {

struct EvaluationReport {
    long tagged_tokens = 0;
    long types = 0;  // distinct lemmas among tagged tokens
    double average_polysemy = 0.0;
    double baseline_accuracy = 0.0;
    double top_choice_accuracy = 0.0;
    double candidate_set_accuracy = 0.0;
    double ambiguity_rate = 0.0;
    double all_words_accuracy = 0.0;
    // knowledge-source name -> top-choice accuracy, in presentation order
    std::vector<std::pair<std::string, double>> ablation;
};

// Fraction of gold-tagged target tokens whose first POS-filtered sense is in
// the gold set.
inline double first_sense_baseline(const std::vector<Document>& corpus,
                                   const Lexicon& lex) {
    long total = 0, correct = 0;
    for_each_token(corpus, [&](const TokenRef&, const Token& tok) {
        if (!tok.gold || !tok.is_target()) return;
        auto cands = candidate_senses(lex, tok);
        if (cands.empty()) return;
        ++total;
        if (tok.gold->contains(cands.front()->id)) ++correct;
    });
    if (total == 0) throw ValidationError("empty evaluation set");
    return static_cast<double>(correct) / total;
}

struct Accuracies {
    double top_choice = 0.0;
    double candidate_set = 0.0;
};

// top_choice: chosen sense in the gold set. candidate_set: suggested set
// intersects the gold set. Every scored token must carry gold.
inline Accuracies score(const std::map<TokenRef, Prediction>& predictions,
                        const std::vector<Document>& corpus) {
    long total = 0, top = 0, set_hit = 0;
    for (const auto& [ref, pred] : predictions) {
        const Token& tok = token_at(corpus, ref);
        if (!tok.gold)
            throw ValidationError("prediction for a token without gold tag");
        ++total;
        if (tok.gold->contains(pred.chosen)) ++top;
        for (const auto& id : pred.suggested)
            if (tok.gold->contains(id)) {
                ++set_hit;
                break;
            }
    }
    if (total == 0) throw ValidationError("empty evaluation set");
    return {static_cast<double>(top) / total,
            static_cast<double>(set_hit) / total};
}

// Accuracy over all tokens given accuracy over the ambiguous ones, counting
// unambiguous tokens as correct.
inline double extrapolate_all_words(double acc_on_ambiguous,
                                    double ambiguity_rate) {
    if (acc_on_ambiguous < 0.0 || acc_on_ambiguous > 1.0 ||
        ambiguity_rate < 0.0 || ambiguity_rate > 1.0)
        throw ValidationError("extrapolation inputs must lie in [0,1]");
    return ambiguity_rate * acc_on_ambiguous + (1.0 - ambiguity_rate);
}

// Top-choice accuracy per knowledge-source subset, each row combining that
// subset's tagger outputs with the voting scheme over gold-tagged tokens.
inline std::vector<std::pair<std::string, double>> ablation(
    const std::vector<Document>& corpus, const Lexicon& lex,
    const std::vector<TaggerOutput>& outputs,
    const std::vector<std::set<TaggerSource>>& subsets,
    const std::vector<std::string>& row_names) {
    if (subsets.empty()) throw ValidationError("empty ablation subset list");
    std::vector<std::pair<std::string, double>> rows;
    for (std::size_t i = 0; i < subsets.size(); ++i) {
        std::vector<TaggerOutput> filtered;
        for (const auto& out : outputs)
            if (subsets[i].count(out.source)) filtered.push_back(out);
        auto preds = predict(corpus, lex, filtered, nullptr);
        // restrict scoring to gold-tagged tokens
        std::map<TokenRef, Prediction> gold_preds;
        for (const auto& [ref, pred] : preds)
            if (token_at(corpus, ref).gold) gold_preds[ref] = pred;
        rows.emplace_back(row_names[i], score(gold_preds, corpus).top_choice);
    }
    return rows;
}

// Corpus-level counts plus metrics, assembled from predictions over
// gold-tagged tokens.
inline EvaluationReport build_report(
    const std::vector<Document>& corpus, const Lexicon& lex,
    const std::map<TokenRef, Prediction>& gold_predictions) {
    EvaluationReport report;
    std::set<std::string> lemmas;
    long candidate_total = 0;
    long all_tokens = 0, ambiguous_tokens = 0;
    for_each_token(corpus, [&](const TokenRef&, const Token& tok) {
        ++all_tokens;
        auto cands = candidate_senses(lex, tok);
        if (cands.size() > 1) ++ambiguous_tokens;
        if (!tok.gold || !tok.is_target() || cands.empty()) return;
        ++report.tagged_tokens;
        lemmas.insert(tok.lemma);
        candidate_total += static_cast<long>(cands.size());
    });
    report.types = static_cast<long>(lemmas.size());
    if (report.tagged_tokens > 0)
        report.average_polysemy =
            static_cast<double>(candidate_total) / report.tagged_tokens;
    report.ambiguity_rate =
        all_tokens > 0 ? static_cast<double>(ambiguous_tokens) / all_tokens
                       : 0.0;
    report.baseline_accuracy = first_sense_baseline(corpus, lex);
    auto acc = score(gold_predictions, corpus);
    report.top_choice_accuracy = acc.top_choice;
    report.candidate_set_accuracy = acc.candidate_set;
    report.all_words_accuracy = extrapolate_all_words(
        acc.candidate_set, report.ambiguity_rate);
    return report;
}

inline nlohmann::json report_to_json(const EvaluationReport& r) {
    nlohmann::json j;
    j["tagged_tokens"] = r.tagged_tokens;
    j["types"] = r.types;
    j["average_polysemy"] = r.average_polysemy;
    j["baseline_accuracy"] = r.baseline_accuracy;
    j["top_choice_accuracy"] = r.top_choice_accuracy;
    j["candidate_set_accuracy"] = r.candidate_set_accuracy;
    j["ambiguity_rate"] = r.ambiguity_rate;
    j["all_words_accuracy"] = r.all_words_accuracy;
    j["ablation"] = nlohmann::json::array();
    for (const auto& [name, acc] : r.ablation)
        j["ablation"].push_back({{"knowledge_sources", name}, {"accuracy", acc}});
    return j;
}

inline std::string render_report(const EvaluationReport& r) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(1);
    auto pct = [](double x) { return 100.0 * x; };
    out << "tagged tokens:          " << r.tagged_tokens << "\n"
        << "types:                  " << r.types << "\n"
        << "average polysemy:       " << std::setprecision(2)
        << r.average_polysemy << std::setprecision(1) << "\n"
        << "first-sense baseline:   " << pct(r.baseline_accuracy) << "%\n"
        << "top-choice accuracy:    " << pct(r.top_choice_accuracy) << "%\n"
        << "candidate-set accuracy: " << pct(r.candidate_set_accuracy) << "%\n"
        << "ambiguity rate:         " << pct(r.ambiguity_rate) << "%\n"
        << "all-words accuracy:     " << pct(r.all_words_accuracy) << "%\n";
    if (!r.ablation.empty()) {
        out << "\nKnowledge sources          | Result\n"
            << "---------------------------+-------\n";
        for (const auto& [name, acc] : r.ablation)
            out << std::left << std::setw(26) << name << " | "
                << pct(acc) << "%\n";
    }
    return out.str();
}

}  // namespace sensetag
