#ifndef SUBJPARSE_PIPELINE_HPP
#define SUBJPARSE_PIPELINE_HPP

#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "subjparse/corpus.hpp"
#include "subjparse/evaluator.hpp"
#include "subjparse/nets.hpp"

namespace subjparse {

/// End-to-end configuration; load_config reads a key=value file with
/// # comments, apply_override handles key=value command-line strings.
struct Config {
    std::string tagset_path = "data/tagset.txt";
    std::string lexicon_path = "data/lexicon.tsv";
    std::string prohibitions_path = "data/prohibitions.txt";
    std::string mode = "both";
    std::string model = "hodyne";
    std::vector<std::string> fallback_tags = {"noun", "verb", "adj"};
    double smoothing = 1.0;  // Bayes
    GenLimits limits;
    TrainParams train;

    static Config from_file(const std::string& path);
    void apply_override(const std::string& key_value);
};

/// Loaded, immutable pipeline context shared by the CLI commands.
struct Context {
    TagSet tagset;
    Lexicon lexicon;
    ProhibitionTable table;
    TupleIndex index;
    Config config;

    static Context load(const Config& config);
};

struct BuildResult {
    std::vector<SentenceCase> cases;
    // Sentences whose gold string was pruned away or out of candidate range.
    std::vector<std::string> coverage_failures;
    std::size_t total_candidates = 0;
};

// Generates and encodes candidates for every sentence, locating the gold
// string per sentence. Parallel over sentences (OpenMP when available).
BuildResult build_cases(const AnnotatedCorpus& corpus, const Context& ctx);
// Serial reference implementation; identical results.
BuildResult build_cases_serial(const AnnotatedCorpus& corpus, const Context& ctx);

// Exactly one yes item per sentence (the target), no items for the rest.
TrainingSet make_training_set(const std::vector<SentenceCase>& cases, std::size_t dim);

struct TrainOutcome {
    std::unique_ptr<Model> model;
    TrainReport report;
    std::vector<std::string> coverage_failures;
    double train_seconds = 0.0;
};

TrainOutcome run_pipeline_train(const AnnotatedCorpus& corpus, const Context& ctx);

struct ParseOutcome {
    TagLattice lattice;
    std::vector<CandidateString> candidates;
    std::vector<double> gamma;
    std::size_t winner = 0;
};

// Stages A-D for one raw sentence plus winner selection; the trace of every
// stage goes to `trace` when non-null.
ParseOutcome run_pipeline_parse(const Model& model, const std::string& text, const Context& ctx,
                                std::ostream* trace = nullptr);

// Interactive annotation: prompts on `out`, reads selections from `in`.
// Already-annotated sentences (skip_first lines of input) are passed over,
// single-candidate sentences auto-annotate.
AnnotatedCorpus annotate(const std::vector<std::string>& raw_sentences, const Context& ctx,
                         std::istream& in, std::ostream& out, std::size_t skip_first = 0);

}  // namespace subjparse

#endif
