// Command-line front end: validate resources, map gold tags across sense
// inventories, tag text, train the decision-list combiner, evaluate.
//
// Exit codes: 0 success, 1 domain error (bad data, invariant violation),
// 2 I/O or usage error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sensetag/combiner.hpp"
#include "sensetag/corpus.hpp"
#include "sensetag/evaluation.hpp"
#include "sensetag/lexicon.hpp"
#include "sensetag/pipeline.hpp"
#include "sensetag/taggers.hpp"

namespace {

using namespace sensetag;

struct CommonOptions {
    std::string lexicon_path;
    std::string exceptions_path;
    std::uint64_t seed = 1;
    int restarts = 10;
    double threshold = 0.2;
    double alpha = 0.1;
    std::string schedule;  // "t0,decay,trials"
    std::string format = "tsv";
};

Schedule parse_schedule(const std::string& text) {
    Schedule s;
    if (text.empty()) return s;
    std::stringstream ss(text);
    std::string part;
    std::vector<double> vals;
    while (std::getline(ss, part, ',')) vals.push_back(std::stod(part));
    if (vals.size() != 3)
        throw ValidationError("--schedule expects t0,decay,trials");
    s.initial_temperature = vals[0];
    s.decay = vals[1];
    s.trials_per_level = static_cast<int>(vals[2]);
    return s;
}

Lemmatizer make_lemmatizer(const CommonOptions& opt) {
    if (!opt.exceptions_path.empty())
        return Lemmatizer::from_file(opt.exceptions_path);
    return Lemmatizer::with_defaults();
}

PipelineParams make_params(const CommonOptions& opt) {
    PipelineParams params;
    params.tagger.schedule = parse_schedule(opt.schedule);
    params.tagger.seed = opt.seed;
    params.tagger.restarts = opt.restarts;
    params.tagger.threshold = opt.threshold;
    return params;
}

std::vector<Document> read_corpus_file(const std::string& path,
                                       const Lemmatizer& lem) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open corpus: " + path);
    return parse_corpus(in, lem, path);
}

// A corpus file has 9 tab-separated fields per record; anything else is
// treated as plain text.
bool looks_like_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open input: " + path);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        return std::count(line.begin(), line.end(), '\t') == 8;
    }
    return false;
}

int cmd_validate(const CommonOptions& opt) {
    std::ifstream in(opt.lexicon_path);
    if (!in) {
        std::cerr << "error: cannot open lexicon: " << opt.lexicon_path
                  << "\n";
        return 2;
    }
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    }
    try {
        Lexicon lex = lexicon_from_json(j);
        std::cerr << "lexicon ok: " << lex.entries.size() << " lemmas, "
                  << lex.hierarchy.classes.size() << " classes\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
}

int cmd_map(const CommonOptions& opt, const std::string& corpus_path,
            const std::string& mapping_path) {
    Lemmatizer lem = make_lemmatizer(opt);
    Lexicon lex = load_lexicon(opt.lexicon_path);
    auto corpus = read_corpus_file(corpus_path, lem);
    std::ifstream min(mapping_path);
    if (!min) throw IoError("cannot open mapping: " + mapping_path);
    SenseMapping mapping = parse_mapping(min, mapping_path);

    MappingStats stats = translate_gold(corpus, mapping, lex);
    serialize_corpus(corpus, std::cout);
    std::cerr << "source-tagged tokens:      " << stats.source_tagged << "\n"
              << "proper names skipped:      " << stats.proper_names_skipped
              << "\n"
              << "potentially translatable:  "
              << stats.source_tagged - stats.proper_names_skipped << "\n"
              << "translated:                " << stats.translated << "\n"
              << "mapping gaps:              " << stats.gaps << "\n";
    return 0;
}

void write_tagged(const std::vector<Document>& corpus,
                  const std::map<TokenRef, Prediction>& predictions,
                  const std::string& format, std::ostream& out) {
    if (format == "json") {
        nlohmann::json j = nlohmann::json::array();
        for_each_token(corpus, [&](const TokenRef& ref, const Token& tok) {
            nlohmann::json rec;
            rec["doc"] = corpus[ref.doc].id;
            rec["paragraph"] = ref.paragraph;
            rec["sentence"] = ref.sentence;
            rec["index"] = ref.index;
            rec["surface"] = tok.surface;
            rec["lemma"] = tok.lemma;
            rec["pos"] = std::string(to_string(tok.pos));
            auto it = predictions.find(ref);
            if (it != predictions.end()) {
                rec["chosen"] = it->second.chosen;
                rec["suggested"] = it->second.suggested;
            }
            j.push_back(std::move(rec));
        });
        out << j.dump(2) << "\n";
        return;
    }
    // tsv: the 9 corpus columns plus chosen and suggested
    for_each_token(corpus, [&](const TokenRef& ref, const Token& tok) {
        out << corpus[ref.doc].id << '\t' << ref.paragraph << '\t'
            << ref.sentence << '\t' << ref.index << '\t' << tok.surface << '\t'
            << tok.lemma << '\t' << (tok.fine_pos.empty() ? "-" : tok.fine_pos)
            << '\t' << (tok.ne_category ? to_string(*tok.ne_category) : "-")
            << '\t';
        if (tok.gold && !tok.gold->sense_ids.empty()) {
            bool first = true;
            for (const auto& id : tok.gold->sense_ids)
                out << (first ? "" : ",") << id, first = false;
        } else {
            out << '-';
        }
        auto it = predictions.find(ref);
        if (it == predictions.end()) {
            out << "\t-\t-\n";
            return;
        }
        out << '\t' << it->second.chosen << '\t';
        bool first = true;
        for (const auto& id : it->second.suggested)
            out << (first ? "" : ",") << id, first = false;
        out << '\n';
    });
}

int cmd_tag(const CommonOptions& opt, const std::string& input_path,
            const std::string& model_path) {
    Lemmatizer lem = make_lemmatizer(opt);
    Lexicon lex = load_lexicon(opt.lexicon_path);
    std::vector<Document> corpus;
    if (looks_like_corpus(input_path)) {
        corpus = read_corpus_file(input_path, lem);
    } else {
        std::ifstream in(input_path);
        if (!in) throw IoError("cannot open input: " + input_path);
        corpus = ingest_text(in, lex, lem, input_path);
    }
    PipelineParams params = make_params(opt);
    auto outputs = run_taggers(corpus, lex, lem, params);
    std::optional<DecisionList> model;
    if (!model_path.empty()) model = load_decision_list(model_path);
    auto predictions =
        predict(corpus, lex, outputs, model ? &*model : nullptr);
    write_tagged(corpus, predictions, opt.format, std::cout);
    return 0;
}

int cmd_train(const CommonOptions& opt, const std::string& corpus_path,
              const std::string& model_path, int held_out) {
    Lemmatizer lem = make_lemmatizer(opt);
    Lexicon lex = load_lexicon(opt.lexicon_path);
    auto corpus = read_corpus_file(corpus_path, lem);
    PipelineParams params = make_params(opt);
    auto outputs = run_taggers(corpus, lex, lem, params);

    std::set<TokenRef> train_refs;
    std::optional<CorpusSplit> split;
    if (held_out > 0) {
        split = split_corpus(corpus, static_cast<std::size_t>(held_out),
                             opt.seed);
        train_refs.insert(split->train.begin(), split->train.end());
        std::cerr << "train occurrences: " << split->train.size()
                  << "  held-out occurrences: " << split->test.size() << "\n";
    }
    auto instances = build_training_instances(
        corpus, lex, outputs, held_out > 0 ? &train_refs : nullptr);
    if (instances.empty()) throw ValidationError("no gold-tagged tokens");
    DecisionList dl = train_decision_list(instances, opt.alpha);

    if (split) {
        std::map<TokenRef, Prediction> test_preds;
        auto preds = predict(corpus, lex, outputs, &dl);
        for (const auto& ref : split->test)
            if (auto it = preds.find(ref); it != preds.end())
                test_preds[ref] = it->second;
        if (!test_preds.empty()) {
            auto acc = score(test_preds, corpus);
            std::cerr << "held-out top-choice accuracy: "
                      << 100.0 * acc.top_choice << "%\n"
                      << "held-out candidate-set accuracy: "
                      << 100.0 * acc.candidate_set << "%\n";
        }
    }

    nlohmann::json j = decision_list_to_json(dl);
    if (model_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream out(model_path);
        if (!out) throw IoError("cannot write model: " + model_path);
        out << j.dump(2) << "\n";
    }
    std::cerr << "trained " << dl.rules.size() << " rules from "
              << instances.size() << " instances\n";
    return 0;
}

int cmd_eval(const CommonOptions& opt, const std::string& corpus_path,
             const std::string& model_path, const std::string& ablate) {
    Lemmatizer lem = make_lemmatizer(opt);
    Lexicon lex = load_lexicon(opt.lexicon_path);
    auto corpus = read_corpus_file(corpus_path, lem);
    PipelineParams params = make_params(opt);
    auto outputs = run_taggers(corpus, lex, lem, params);

    std::optional<DecisionList> model;
    if (!model_path.empty()) model = load_decision_list(model_path);
    auto preds = predict(corpus, lex, outputs, model ? &*model : nullptr);
    std::map<TokenRef, Prediction> gold_preds;
    for (const auto& [ref, pred] : preds)
        if (token_at(corpus, ref).gold) gold_preds[ref] = pred;

    EvaluationReport report = build_report(corpus, lex, gold_preds);
    if (!ablate.empty()) {
        std::vector<std::set<TaggerSource>> subsets;
        std::vector<std::string> names;
        std::stringstream ss(ablate);
        std::string part;
        while (std::getline(ss, part, ',')) {
            if (part == "lesk") {
                subsets.push_back({TaggerSource::Lesk});
                names.push_back("Dictionary definitions");
            } else if (part == "pragmatic") {
                subsets.push_back({TaggerSource::Pragmatic});
                names.push_back("Pragmatic codes");
            } else if (part == "selres") {
                subsets.push_back({TaggerSource::Selres});
                names.push_back("Selectional restrictions");
            } else if (part == "all") {
                subsets.push_back({TaggerSource::Lesk, TaggerSource::Pragmatic,
                                   TaggerSource::Selres});
                names.push_back("All");
            } else {
                throw ValidationError("unknown ablation source: " + part);
            }
        }
        report.ablation = ablation(corpus, lex, outputs, subsets, names);
    }

    if (opt.format == "json")
        std::cout << report_to_json(report).dump(2) << "\n";
    else
        std::cout << render_report(report);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multi-source word sense tagger"};
    app.require_subcommand(1);

    CommonOptions opt;
    std::string corpus_path, mapping_path, model_path, input_path, ablate;
    int held_out = 0;

    auto add_common = [&](CLI::App* sub, bool needs_lexicon = true) {
        auto* o = sub->add_option("--lexicon", opt.lexicon_path,
                                  "lexicon JSON file");
        if (needs_lexicon) o->required();
        sub->add_option("--exceptions", opt.exceptions_path,
                        "lemmatizer exception list (TSV)");
        sub->add_option("--seed", opt.seed, "random seed");
        sub->add_option("--restarts", opt.restarts, "annealing restarts");
        sub->add_option("--threshold", opt.threshold,
                        "suggestion confidence threshold");
        sub->add_option("--alpha", opt.alpha, "decision-list smoothing");
        sub->add_option("--schedule", opt.schedule,
                        "annealing schedule t0,decay,trials");
        sub->add_option("--format", opt.format, "output format (tsv|json)")
            ->check(CLI::IsMember({"tsv", "json"}));
    };

    auto* validate = app.add_subcommand("validate", "check a lexicon file");
    add_common(validate);

    auto* map_cmd =
        app.add_subcommand("map", "translate gold tags across inventories");
    add_common(map_cmd);
    map_cmd->add_option("corpus", corpus_path, "source-tagged corpus")
        ->required();
    map_cmd->add_option("--mapping", mapping_path, "sense mapping TSV")
        ->required();

    auto* tag = app.add_subcommand("tag", "sense-tag text or a corpus");
    add_common(tag);
    tag->add_option("input", input_path, "corpus TSV or plain text")
        ->required();
    tag->add_option("--model", model_path, "decision-list model JSON");

    auto* train = app.add_subcommand("train", "train the decision list");
    add_common(train);
    train->add_option("corpus", corpus_path, "gold-tagged corpus")->required();
    train->add_option("--model", model_path, "output model path");
    train->add_option("--held-out", held_out,
                      "held-out occurrence count for the accuracy report");

    auto* eval = app.add_subcommand("eval", "evaluate on a gold-tagged corpus");
    add_common(eval);
    eval->add_option("corpus", corpus_path, "gold-tagged corpus")->required();
    eval->add_option("--model", model_path, "decision-list model JSON");
    eval->add_option("--ablate", ablate,
                     "comma list of knowledge sources "
                     "(lesk,pragmatic,selres,all)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (validate->parsed()) return cmd_validate(opt);
        if (map_cmd->parsed()) return cmd_map(opt, corpus_path, mapping_path);
        if (tag->parsed()) return cmd_tag(opt, input_path, model_path);
        if (train->parsed())
            return cmd_train(opt, corpus_path, model_path, held_out);
        if (eval->parsed()) return cmd_eval(opt, corpus_path, model_path, ablate);
    } catch (const sensetag::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
