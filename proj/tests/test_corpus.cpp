#include <doctest.h>

#include <sstream>

#include "sensetag/corpus.hpp"
#include "test_util.hpp"

using namespace sensetag;

namespace {

const char* kSmallCorpus =
    "d1\t0\t0\t0\tThe\tthe\tDT\t-\t-\n"
    "d1\t0\t0\t1\tdogs\t-\tNNS\t-\tdog.1.1\n"
    "d1\t0\t1\t0\tMary\tmary\tNNP\tPERSON\t-\n"
    "d1\t1\t0\t0\truns\t-\tVBZ\t-\t-\n";

}  // namespace

TEST_CASE("parse builds document structure and fills missing lemmas") {
    auto lem = Lemmatizer::with_defaults();
    auto docs = test_util::corpus_from_string(kSmallCorpus, lem);
    REQUIRE(docs.size() == 1);
    REQUIRE(docs[0].paragraphs.size() == 2);
    CHECK(docs[0].paragraphs[0].size() == 2);
    CHECK(docs[0].paragraphs[1].size() == 1);

    const Token& dogs = docs[0].paragraphs[0][0][1];
    CHECK(dogs.lemma == "dog");  // from the lemmatizer
    CHECK(dogs.pos == CoarsePos::Noun);
    REQUIRE(dogs.gold.has_value());
    CHECK(dogs.gold->contains("dog.1.1"));

    const Token& mary = docs[0].paragraphs[0][1][0];
    CHECK(mary.ne_category == NeCategory::Person);
    CHECK(mary.is_content());
    CHECK_FALSE(mary.is_target());

    CHECK(docs[0].paragraphs[1][0][0].lemma == "run");
}

TEST_CASE("empty input yields an empty corpus") {
    auto lem = Lemmatizer::with_defaults();
    CHECK(test_util::corpus_from_string("", lem).empty());
    CHECK(test_util::corpus_from_string("# only a comment\n\n", lem).empty());
}

TEST_CASE("malformed records raise parse errors naming the location") {
    auto lem = Lemmatizer::with_defaults();
    CHECK_THROWS_WITH_AS(
        test_util::corpus_from_string("d1\t0\t0\t0\t-\t-\tNN\t-\t-\n", lem),
        doctest::Contains("missing surface"), ParseError);
    CHECK_THROWS_WITH_AS(
        test_util::corpus_from_string("d1\t0\t0\tdog\n", lem),
        doctest::Contains("9 tab-separated fields"), ParseError);
    CHECK_THROWS_AS(
        test_util::corpus_from_string("d1\t0\t0\t0\tdog\tdog\tNN\tBAD\t-\n",
                                      lem),
        ParseError);
}

TEST_CASE("parse after serialize is identity") {
    auto lem = Lemmatizer::with_defaults();
    auto docs = test_util::corpus_from_string(kSmallCorpus, lem);
    std::ostringstream out;
    serialize_corpus(docs, out);
    std::istringstream in(out.str());
    auto again = parse_corpus(in, lem, "roundtrip");
    CHECK(again == docs);
}

TEST_CASE("plain-text ingestion guesses POS from the lexicon") {
    Lexicon lex = test_util::demo_lexicon();
    auto lem = test_util::demo_lemmatizer();
    std::istringstream in("The dog bit the man.\n\nThe bank paid interest.\n");
    auto docs = ingest_text(in, lex, lem);
    REQUIRE(docs.size() == 1);
    REQUIRE(docs[0].paragraphs.size() == 2);
    const Sentence& s0 = docs[0].paragraphs[0][0];
    REQUIRE(s0.size() == 6);  // the dog bit the man .
    CHECK(s0[1].lemma == "dog");
    CHECK(s0[1].pos == CoarsePos::Noun);
    CHECK(s0[2].lemma == "bite");
    CHECK(s0[2].pos == CoarsePos::Verb);
}

TEST_CASE("translate_gold maps, unions and records gaps") {
    auto lem = Lemmatizer::with_defaults();
    auto docs = test_util::corpus_from_string(
        "d\t0\t0\t0\tman\tman\tNN\t-\tsrc:42\n"
        "d\t0\t0\t1\tbank\tbank\tNN\t-\tsrc:7\n"
        "d\t0\t0\t2\tJohn\tjohn\tNNP\tPERSON\tsrc:42\n",
        lem);
    Lexicon lex = test_util::demo_lexicon();
    SenseMapping mapping;
    mapping.rows["src:42"] = {"man.1.1", "man.1.2"};

    auto stats = translate_gold(docs, mapping, lex);
    CHECK(stats.source_tagged == 3);
    CHECK(stats.proper_names_skipped == 1);
    CHECK(stats.translated == 1);
    CHECK(stats.gaps == 1);
    CHECK(stats.translated + stats.gaps ==
          stats.source_tagged - stats.proper_names_skipped);

    const Token& man = docs[0].paragraphs[0][0][0];
    REQUIRE(man.gold.has_value());
    CHECK(man.gold->sense_ids == std::set<std::string>{"man.1.1", "man.1.2"});
    CHECK_FALSE(docs[0].paragraphs[0][0][1].gold.has_value());  // gap
    CHECK_FALSE(docs[0].paragraphs[0][0][2].gold.has_value());  // proper name
}

TEST_CASE("translate_gold rejects unresolvable targets") {
    auto lem = Lemmatizer::with_defaults();
    auto docs = test_util::corpus_from_string(
        "d\t0\t0\t0\tman\tman\tNN\t-\tsrc:1\n", lem);
    Lexicon lex = test_util::demo_lexicon();
    SenseMapping mapping;
    mapping.rows["src:1"] = {"nosuch.9.9"};
    CHECK_THROWS_WITH_AS(translate_gold(docs, mapping, lex),
                         doctest::Contains("nosuch.9.9"), ValidationError);
}

TEST_CASE("mapping file parses one-to-many rows") {
    std::istringstream in("# comment\nsrc:1\ta.1.1\nsrc:1\ta.1.2\nsrc:2\tb.1.1\n");
    auto m = parse_mapping(in);
    CHECK(m.rows.at("src:1").size() == 2);
    CHECK(m.rows.at("src:2") == std::set<std::string>{"b.1.1"});
}

TEST_CASE("split_corpus partitions deterministically") {
    auto lem = Lemmatizer::with_defaults();
    std::ostringstream corpus_text;
    for (int i = 0; i < 50; ++i)
        corpus_text << "d\t0\t0\t" << i << "\tdog\tdog\tNN\t-\tdog.1.1\n";
    auto docs = test_util::corpus_from_string(corpus_text.str(), lem);

    auto split = split_corpus(docs, 10, 7);
    CHECK(split.test.size() == 10);
    CHECK(split.train.size() == 40);

    // disjoint and exhaustive
    std::set<TokenRef> all(split.train.begin(), split.train.end());
    for (const auto& r : split.test) CHECK(all.insert(r).second);
    CHECK(all.size() == 50);

    auto again = split_corpus(docs, 10, 7);
    CHECK(again.train == split.train);
    CHECK(again.test == split.test);

    auto other_seed = split_corpus(docs, 10, 8);
    CHECK(other_seed.test != split.test);  // seed matters

    CHECK(split_corpus(docs, 0, 1).test.empty());
    CHECK_THROWS_AS(split_corpus(docs, 51, 1), ValidationError);
}
