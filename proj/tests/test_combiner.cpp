#include <doctest.h>

#include <algorithm>
#include <random>

#include "sensetag/combiner.hpp"
#include "test_util.hpp"

using namespace sensetag;

namespace {

Token make_token(std::string surface, std::string lemma, CoarsePos pos) {
    Token t;
    t.surface = std::move(surface);
    t.lemma = std::move(lemma);
    t.pos = pos;
    return t;
}

std::vector<Document> one_sentence(Sentence sent) {
    return {Document{"t", {{std::move(sent)}}}};
}

std::string feature_value(const FeatureVector& fv, const std::string& name) {
    for (const auto& [n, v] : fv.features)
        if (n == name) return v;
    return "<missing>";
}

}  // namespace

TEST_CASE("sentence-initial tokens have absent left collocations") {
    auto corpus = one_sentence({make_token("dog", "dog", CoarsePos::Noun),
                                make_token("barked", "bark", CoarsePos::Verb)});
    auto fv = extract_features(corpus, TokenRef{0, 0, 0, 0}, "dog.1.1", 1, {});
    CHECK(feature_value(fv, "colloc:first_word_left") == "ABSENT");
    CHECK(feature_value(fv, "colloc:first_noun_left") == "ABSENT");
    CHECK(feature_value(fv, "colloc:second_word_left") == "ABSENT");
    CHECK(feature_value(fv, "colloc:first_verb_right") == "bark");
    CHECK(fv.features.size() == 2 + 6 + 10);  // pos, rank, 3 taggers x 2, 10 colloc
}

TEST_CASE("rank bucket and tagger confidence buckets") {
    auto corpus = one_sentence({make_token("dog", "dog", CoarsePos::Noun)});
    TaggerOutput lesk;
    lesk.source = TaggerSource::Lesk;
    lesk.suggestions[TokenRef{0, 0, 0, 0}]["dog.1.1"] = 1.0;
    auto fv = extract_features(corpus, TokenRef{0, 0, 0, 0}, "dog.1.1", 1,
                               {lesk});
    CHECK(feature_value(fv, "rank") == "1");
    CHECK(feature_value(fv, "noun:lesk:suggested") == "yes");
    CHECK(feature_value(fv, "noun:lesk:confidence") == "high");

    auto fv2 = extract_features(corpus, TokenRef{0, 0, 0, 0}, "dog.1.4", 4,
                                {lesk});
    CHECK(feature_value(fv2, "rank") == "3+");
    CHECK(feature_value(fv2, "noun:lesk:suggested") == "no");
    CHECK(feature_value(fv2, "noun:lesk:confidence") == "low");
}

TEST_CASE("collocation slots scan outward and are lemmatized") {
    auto corpus = one_sentence({make_token("the", "the", CoarsePos::Other),
                                make_token("big", "big", CoarsePos::Adjective),
                                make_token("dog", "dog", CoarsePos::Noun),
                                make_token("barked", "bark", CoarsePos::Verb)});
    auto fv = extract_features(corpus, TokenRef{0, 0, 0, 2}, "dog.1.1", 1, {});
    CHECK(feature_value(fv, "colloc:first_word_left") == "big");
    CHECK(feature_value(fv, "colloc:second_word_left") == "the");
    CHECK(feature_value(fv, "colloc:first_verb_right") == "bark");
    CHECK(feature_value(fv, "colloc:first_word_right") == "bark");
    CHECK(feature_value(fv, "colloc:first_noun_left") == "ABSENT");
}

TEST_CASE("training scores match the smoothed log ratio") {
    // f=v seen 9x appropriate, 1x inappropriate, alpha 0.1:
    // score = log(9.1 / 1.1)
    std::vector<TrainingInstance> instances;
    for (int i = 0; i < 9; ++i)
        instances.push_back({FeatureVector{{{"f", "v"}}}, Label::Appropriate});
    instances.push_back({FeatureVector{{{"f", "v"}}}, Label::Inappropriate});
    auto dl = train_decision_list(instances, 0.1);
    REQUIRE(dl.rules.size() == 1);
    CHECK(dl.rules[0].label == Label::Appropriate);
    CHECK(dl.rules[0].score == doctest::Approx(std::log(9.1 / 1.1)));
    CHECK(dl.rules[0].score == doctest::Approx(2.113).epsilon(0.001));
}

TEST_CASE("pure features outrank noisy ones") {
    std::vector<TrainingInstance> instances;
    for (int i = 0; i < 20; ++i) {
        bool good = i % 2 == 0;
        FeatureVector fv;
        fv.features.emplace_back("lesk", good ? "yes" : "no");
        fv.features.emplace_back("noise", i % 3 == 0 ? "a" : "b");
        instances.push_back(
            {fv, good ? Label::Appropriate : Label::Inappropriate});
    }
    auto dl = train_decision_list(instances, 0.1);
    REQUIRE(dl.rules.size() >= 4);
    CHECK(dl.rules[0].feature == "lesk");
    CHECK(dl.rules[1].feature == "lesk");
}

TEST_CASE("training is invariant under instance permutation") {
    std::vector<TrainingInstance> instances;
    for (int i = 0; i < 30; ++i) {
        FeatureVector fv;
        fv.features.emplace_back("a", std::to_string(i % 4));
        fv.features.emplace_back("b", std::to_string(i % 3));
        instances.push_back(
            {fv, i % 5 == 0 ? Label::Appropriate : Label::Inappropriate});
    }
    auto dl1 = train_decision_list(instances, 0.1);
    std::mt19937 rng(7);
    std::shuffle(instances.begin(), instances.end(), rng);
    auto dl2 = train_decision_list(instances, 0.1);
    CHECK(dl1.rules == dl2.rules);
}

TEST_CASE("degenerate training sets are rejected") {
    CHECK_THROWS_AS(train_decision_list({}, 0.1), ValidationError);
    std::vector<TrainingInstance> one_label{
        {FeatureVector{{{"f", "v"}}}, Label::Appropriate}};
    CHECK_THROWS_AS(train_decision_list(one_label, 0.1), ValidationError);
}

TEST_CASE("classification follows rule order with an inappropriate default") {
    DecisionList empty;
    auto [label, score] = classify(empty, FeatureVector{{{"f", "v"}}});
    CHECK(label == Label::Inappropriate);
    CHECK(score == 0.0);

    DecisionList dl;
    dl.rules.push_back({"f", "v", Label::Appropriate, 3.0});
    dl.rules.push_back({"g", "w", Label::Inappropriate, 1.0});
    auto [l1, s1] = classify(dl, FeatureVector{{{"g", "w"}}});
    CHECK(l1 == Label::Inappropriate);
    CHECK(s1 == 1.0);
    // both rules match: the higher-scored one wins
    auto [l2, s2] = classify(dl, FeatureVector{{{"f", "v"}, {"g", "w"}}});
    CHECK(l2 == Label::Appropriate);
    CHECK(s2 == 3.0);
}

TEST_CASE("choose_sense picks the best appropriate candidate") {
    // all inappropriate: rank-1 fallback
    auto c1 = choose_sense({{"x.1.2", 2, Label::Inappropriate, 1.0},
                            {"x.1.1", 1, Label::Inappropriate, 2.0}});
    CHECK(c1.chosen == "x.1.1");
    CHECK(c1.suggested == std::set<SenseId>{"x.1.1"});

    auto c2 = choose_sense({{"x.1.1", 1, Label::Inappropriate, 0.0},
                            {"x.1.2", 2, Label::Appropriate, 1.0}});
    CHECK(c2.chosen == "x.1.2");

    // equal scores: lower rank wins
    auto c3 = choose_sense({{"x.1.2", 2, Label::Appropriate, 1.5},
                            {"x.1.3", 3, Label::Appropriate, 1.5}});
    CHECK(c3.chosen == "x.1.2");
    CHECK(c3.suggested == std::set<SenseId>{"x.1.2", "x.1.3"});
}

TEST_CASE("voting counts tagger suggestions with rank tie-breaks") {
    TokenRef ref{0, 0, 0, 0};
    auto make_output = [&](TaggerSource src,
                           std::vector<SenseId> ids) {
        TaggerOutput out;
        out.source = src;
        for (const auto& id : ids) out.suggestions[ref][id] = 1.0;
        return out;
    };
    std::vector<std::pair<SenseId, int>> cands{
        {"x.1.1", 1}, {"x.1.2", 2}, {"x.1.3", 3}};

    // unanimous sense wins
    auto v1 = vote(cands, ref,
                   {make_output(TaggerSource::Lesk, {"x.1.2"}),
                    make_output(TaggerSource::Pragmatic, {"x.1.2", "x.1.3"}),
                    make_output(TaggerSource::Selres, {"x.1.2"})});
    CHECK(v1.chosen == "x.1.2");

    // no tagger covers the token: rank-1 fallback
    auto v2 = vote(cands, ref, {});
    CHECK(v2.chosen == "x.1.1");

    // two senses tied on votes: lower rank wins
    auto v3 = vote(cands, ref,
                   {make_output(TaggerSource::Lesk, {"x.1.1", "x.1.3"}),
                    make_output(TaggerSource::Selres, {"x.1.1", "x.1.3"})});
    CHECK(v3.chosen == "x.1.1");
}

TEST_CASE("decision list serialization round-trips") {
    DecisionList dl;
    dl.alpha = 0.25;
    dl.rules.push_back({"noun:lesk:suggested", "yes", Label::Appropriate, 2.5});
    dl.rules.push_back({"rank", "1", Label::Appropriate, 1.25});
    auto j = decision_list_to_json(dl);
    DecisionList back = decision_list_from_json(j);
    CHECK(back.alpha == dl.alpha);
    CHECK(back.rules == dl.rules);
}
