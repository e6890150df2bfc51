// Command-line surface for the subject-boundary parser pipeline.
//
// Subcommands: train, parse, eval, split, analyze, annotate, extract-rules.
// Exit codes: 0 success, 1 usage error, 2 data error, 3 non-convergence.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "subjparse/errors.hpp"
#include "subjparse/pipeline.hpp"
#include "subjparse/stats.hpp"

using namespace subjparse;

namespace {

struct CommonOpts {
    std::string config_path;
    std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "key=value config file");
    cmd->add_option("--set", opts.overrides, "config override, key=value (repeatable)");
}

Config make_config(const CommonOpts& opts) {
    Config cfg = opts.config_path.empty() ? Config{} : Config::from_file(opts.config_path);
    for (const auto& kv : opts.overrides) cfg.apply_override(kv);
    return cfg;
}

void report_corpus_load(const AnnotatedCorpus& corpus) {
    std::cerr << "loaded " << corpus.sentences.size() << " sentences";
    if (!corpus.rejected.empty()) {
        std::cerr << ", rejected " << corpus.rejected.size() << ":\n";
        for (const auto& r : corpus.rejected) std::cerr << "  " << r << '\n';
    } else {
        std::cerr << '\n';
    }
}

int cmd_train(const CommonOpts& opts, const std::string& corpus_path,
              const std::string& model_out) {
    Config cfg = make_config(opts);
    Context ctx = Context::load(cfg);
    AnnotatedCorpus corpus = parse_corpus_file(corpus_path, ctx.tagset, ctx.lexicon, cfg.limits);
    report_corpus_load(corpus);

    TrainOutcome outcome = run_pipeline_train(corpus, ctx);
    for (const auto& f : outcome.coverage_failures) std::cerr << "coverage failure: " << f << '\n';
    save_model(*outcome.model, ctx.index.mode(), ctx.tagset.m(), model_out);
    std::cout << "model: " << outcome.model->kind() << " (" << cfg.mode << ", dim "
              << ctx.index.dim() << ")\n"
              << "training strings correct: " << outcome.report.achieved_pct << "% after "
              << outcome.report.epochs << " epochs in " << outcome.train_seconds << " s\n"
              << "saved to " << model_out << '\n';
    if (!outcome.report.converged) {
        std::cerr << "warning: did not reach threshold " << cfg.train.threshold_pct << "%\n";
        return 3;
    }
    return 0;
}

int cmd_parse(const CommonOpts& opts, const std::string& model_path, const std::string& text,
              bool quiet) {
    Config cfg = make_config(opts);
    TupleMode mode;
    std::size_t m = 0;
    auto model = load_model(model_path, &mode, &m);
    cfg.mode = to_string(mode);
    Context ctx = Context::load(cfg);
    if (ctx.tagset.m() != m)
        throw DataError("model was trained with m=" + std::to_string(m) +
                        " but the tagset has m=" + std::to_string(ctx.tagset.m()));

    ParseOutcome out = run_pipeline_parse(*model, text, ctx, quiet ? nullptr : &std::cout);
    const CandidateString& win = out.candidates[out.winner];
    std::cout << "winner: " << render_tags(win, ctx.tagset) << '\n';
    std::ostringstream rendered;
    for (std::size_t i = 0; i < out.lattice.words.size(); ++i) {
        if (static_cast<int>(i) == win.open_word) rendered << "[ ";
        if (static_cast<int>(i) == win.close_word) rendered << "] ";
        rendered << out.lattice.words[i] << ' ';
    }
    std::cout << rendered.str() << '\n';
    return 0;
}

int cmd_eval(const CommonOpts& opts, const std::string& model_path,
             const std::string& corpus_path, const std::string& csv_path) {
    Config cfg = make_config(opts);
    TupleMode mode;
    std::size_t m = 0;
    auto model = load_model(model_path, &mode, &m);
    cfg.mode = to_string(mode);
    Context ctx = Context::load(cfg);
    AnnotatedCorpus corpus = parse_corpus_file(corpus_path, ctx.tagset, ctx.lexicon, cfg.limits);
    report_corpus_load(corpus);

    BuildResult built = build_cases(corpus, ctx);
    for (const auto& f : built.coverage_failures) std::cerr << "coverage failure: " << f << '\n';
    if (built.cases.empty()) throw DataError("no evaluable sentences");
    Metrics metrics = evaluate(*model, built.cases);

    std::cout << std::fixed << std::setprecision(1);
    std::cout << "model      mode     correct-a  correct-b  correct-c  correct-d\n"
              << std::left << std::setw(11) << model->kind() << std::setw(9) << cfg.mode
              << std::right << std::setw(8) << metrics.pct_a() << "% " << std::setw(9)
              << metrics.pct_b() << "% " << std::setw(9) << metrics.pct_c() << "% "
              << std::setw(9) << metrics.pct_d() << "%\n"
              << "(" << metrics.n_sentences << " sentences, " << metrics.n_strings
              << " strings)\n";
    if (!csv_path.empty()) {
        std::ofstream csv(csv_path);
        if (!csv) throw DataError("cannot write CSV: " + csv_path);
        csv << "model,mode,threshold,correct_a,correct_b,correct_c,correct_d\n"
            << model->kind() << ',' << cfg.mode << ',' << cfg.train.threshold_pct << ','
            << metrics.pct_a() << ',' << metrics.pct_b() << ',' << metrics.pct_c() << ','
            << metrics.pct_d() << '\n';
    }
    return 0;
}

int cmd_split(const CommonOpts& opts, const std::string& corpus_path, double fraction,
              std::uint64_t seed, const std::string& train_out, const std::string& test_out) {
    Config cfg = make_config(opts);
    Context ctx = Context::load(cfg);
    AnnotatedCorpus corpus = parse_corpus_file(corpus_path, ctx.tagset, ctx.lexicon, cfg.limits);
    report_corpus_load(corpus);

    SplitSpec spec;
    spec.test_fraction = fraction;
    spec.rng_seed = seed;
    SplitResult split = split_corpus(corpus, spec);
    {
        std::ofstream out(train_out);
        if (!out) throw DataError("cannot write " + train_out);
        serialize_corpus(split.train, ctx.tagset, out);
    }
    {
        std::ofstream out(test_out);
        if (!out) throw DataError("cannot write " + test_out);
        serialize_corpus(split.test, ctx.tagset, out);
    }
    BuildResult train_built = build_cases(split.train, ctx);
    BuildResult test_built = build_cases(split.test, ctx);
    double ratio = train_built.total_candidates
                       ? static_cast<double>(test_built.total_candidates) /
                             static_cast<double>(train_built.total_candidates)
                       : 0.0;
    std::cout << "train: " << split.train.sentences.size() << " sentences, "
              << train_built.total_candidates << " strings -> " << train_out << '\n'
              << "test:  " << split.test.sentences.size() << " sentences, "
              << test_built.total_candidates << " strings -> " << test_out << '\n'
              << "test/train string ratio: " << ratio << '\n';
    return 0;
}

int cmd_analyze(const CommonOpts& opts, const std::string& corpus_path,
                const std::string& zipf_csv, const std::string& model_path,
                const std::string& weights_csv) {
    Config cfg = make_config(opts);
    Context ctx = Context::load(cfg);
    AnnotatedCorpus corpus = parse_corpus_file(corpus_path, ctx.tagset, ctx.lexicon, cfg.limits);
    report_corpus_load(corpus);

    BuildResult built = build_cases(corpus, ctx);
    if (built.cases.empty()) throw DataError("no analyzable sentences");

    // Candidate-count band (the generator statistic).
    std::size_t min_c = built.cases.front().candidates.size(), max_c = min_c, total = 0;
    for (const auto& c : built.cases) {
        min_c = std::min(min_c, c.candidates.size());
        max_c = std::max(max_c, c.candidates.size());
        total += c.candidates.size();
    }
    std::cout << "candidates per sentence: min " << min_c << ", max " << max_c << ", mean "
              << static_cast<double>(total) / built.cases.size() << '\n';

    // Ambiguity rate over the corpus tokens.
    std::size_t ambiguous = 0, tokens = 0;
    for (const auto& sent : corpus.sentences) {
        TagLattice lat = tag_sentence(ctx.lexicon, sent.tokens);
        tokens += lat.size();
        for (const auto& slot : lat.slots) ambiguous += slot.size() > 1;
    }
    std::cout << "tag ambiguity rate: " << 100.0 * ambiguous / tokens << "% of " << tokens
              << " tokens\n";

    // n-gram entropy of the gold tag sequences (start symbol included).
    std::vector<std::vector<TagId>> sequences;
    for (const auto& sent : corpus.sentences) {
        std::vector<TagId> seq{ctx.tagset.start_id()};
        seq.insert(seq.end(), sent.gold_tags.begin(), sent.gold_tags.end());
        sequences.push_back(std::move(seq));
    }
    std::cout << "n-gram entropy of gold tag sequences (block / per-symbol / conditional):\n";
    double prev_block = 0.0;
    for (int n = 1; n <= 3; ++n) {
        EntropyResult e = ngram_entropy(sequences, n);
        double conditional = n == 1 ? e.block_bits : e.block_bits - prev_block;
        std::cout << "  n=" << n << ": H=" << e.block_bits << " bits, H/n=" << e.per_symbol_bits
                  << ", H(n|n-1)=" << conditional << " (" << e.sample_size << " grams)\n";
        prev_block = e.block_bits;
    }

    if (!zipf_csv.empty()) {
        std::vector<std::uint32_t> tuples;
        for (const auto& c : built.cases)
            for (const auto& v : c.vectors) {
                // multiset of realised tuples: re-extract with repetitions
                (void)v;
            }
        for (const auto& c : built.cases)
            for (const auto& cand : c.candidates) {
                const auto& tags = cand.tags;
                if (ctx.index.uses_pairs())
                    for (std::size_t i = 0; i + 1 < tags.size(); ++i)
                        tuples.push_back(ctx.index.encode_pair(tags[i], tags[i + 1]));
                if (ctx.index.uses_triples())
                    for (std::size_t i = 0; i + 2 < tags.size(); ++i)
                        tuples.push_back(
                            ctx.index.encode_triple(tags[i], tags[i + 1], tags[i + 2]));
            }
        RankFrequencyTable table = rank_frequency(tuples);
        std::ofstream out(zipf_csv);
        if (!out) throw DataError("cannot write CSV: " + zipf_csv);
        write_rank_frequency_csv(table, &ctx.index, &ctx.tagset, out);
        std::cout << "rank-frequency table (" << table.rows.size() << " distinct tuples) -> "
                  << zipf_csv << '\n';
    }

    if (!model_path.empty()) {
        TupleMode mode;
        std::size_t m = 0;
        auto model = load_model(model_path, &mode, &m);
        if (to_string(mode) != cfg.mode)
            throw DataError("model mode " + to_string(mode) + " does not match config mode " +
                            cfg.mode);
        TrainingSet data = make_training_set(built.cases, ctx.index.dim());
        auto rows = weight_frequency_report(*model, data);
        // One point per enabled link so dual-linked tuples are not
        // double-counted into a single inflated magnitude.
        std::vector<double> freq, absw;
        for (const auto& r : rows) {
            double f = static_cast<double>(r.freq_yes + r.freq_no);
            if (r.weight_yes != 0.0) {
                freq.push_back(f);
                absw.push_back(std::abs(r.weight_yes));
            }
            if (r.weight_no != 0.0) {
                freq.push_back(f);
                absw.push_back(std::abs(r.weight_no));
            }
        }
        std::cout << "weight-vs-frequency Spearman correlation: " << spearman(freq, absw) << '\n';
        if (!weights_csv.empty()) {
            std::ofstream out(weights_csv);
            if (!out) throw DataError("cannot write CSV: " + weights_csv);
            write_weight_frequency_csv(rows, ctx.index, ctx.tagset, out);
            std::cout << "weight report -> " << weights_csv << '\n';
        }
    }
    return 0;
}

int cmd_annotate(const CommonOpts& opts, const std::string& input_path,
                 const std::string& output_path) {
    Config cfg = make_config(opts);
    Context ctx = Context::load(cfg);

    std::ifstream in(input_path);
    if (!in) throw DataError("cannot open sentence file: " + input_path);
    std::vector<std::string> raw;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        raw.push_back(line);
    }

    // Resume: previously annotated sentences in the output file are skipped.
    std::size_t done = 0;
    {
        std::ifstream existing(output_path);
        while (existing && std::getline(existing, line))
            if (!line.empty() && line[0] != '#') ++done;
    }
    if (done) std::cout << "resuming: " << done << " sentences already annotated\n";

    AnnotatedCorpus annotated = annotate(raw, ctx, std::cin, std::cout, done);
    std::ofstream out(output_path, std::ios::app);
    if (!out) throw DataError("cannot write " + output_path);
    serialize_corpus(annotated, ctx.tagset, out);
    std::cout << "annotated " << annotated.sentences.size() << " sentences -> " << output_path
              << '\n';
    return 0;
}

int cmd_extract_rules(const CommonOpts& opts, const std::string& model_path) {
    Config cfg = make_config(opts);
    TupleMode mode;
    std::size_t m = 0;
    auto model = load_model(model_path, &mode, &m);
    auto* hodyne = dynamic_cast<HodyneModel*>(model.get());
    if (!hodyne) throw DataError("extract-rules requires a Hodyne model");
    cfg.mode = to_string(mode);
    Context ctx = Context::load(cfg);
    TupleIndex index(mode, m);
    for (const auto& tuple : extract_prohibition_candidates(*hodyne, index)) {
        std::cout << (tuple.size() == 2 ? "P" : "T");
        for (TagId t : tuple) std::cout << ' ' << ctx.tagset.name(t);
        std::cout << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Subject-boundary partial parser: candidate generation over tag lattices, "
                 "tuple encoding, and single-layer-net selection"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string corpus_path, model_path, model_out, text, csv_path;
    std::string zipf_csv, weights_csv, train_out = "train.txt", test_out = "test.txt";
    std::string annotate_in, annotate_out;
    double fraction = 0.2;
    std::uint64_t seed = 1;
    bool quiet = false;

    auto* train = app.add_subcommand("train", "train a model on an annotated corpus");
    add_common(train, opts);
    train->add_option("--corpus", corpus_path, "annotated corpus file")->required();
    train->add_option("--model-out", model_out, "output model file")->required();

    auto* parse = app.add_subcommand("parse", "parse one sentence, showing every stage");
    add_common(parse, opts);
    parse->add_option("--model", model_path, "trained model file")->required();
    parse->add_option("text", text, "sentence text")->required();
    parse->add_flag("--quiet", quiet, "suppress the stage trace");

    auto* eval = app.add_subcommand("eval", "evaluate a model on an annotated corpus");
    add_common(eval, opts);
    eval->add_option("--model", model_path, "trained model file")->required();
    eval->add_option("--corpus", corpus_path, "annotated corpus file")->required();
    eval->add_option("--csv", csv_path, "also write a machine-readable CSV row");

    auto* split = app.add_subcommand("split", "split a corpus into train/test parts");
    add_common(split, opts);
    split->add_option("--corpus", corpus_path, "annotated corpus file")->required();
    split->add_option("--test-fraction", fraction, "fraction of sentences for testing");
    split->add_option("--seed", seed, "split RNG seed");
    split->add_option("--train-out", train_out, "output file for the training part");
    split->add_option("--test-out", test_out, "output file for the testing part");

    auto* analyze = app.add_subcommand("analyze", "corpus statistics and model reports");
    add_common(analyze, opts);
    analyze->add_option("--corpus", corpus_path, "annotated corpus file")->required();
    analyze->add_option("--zipf-csv", zipf_csv, "write tuple rank-frequency CSV");
    analyze->add_option("--model", model_path, "trained model for the weight report");
    analyze->add_option("--weights-csv", weights_csv, "write weight-vs-frequency CSV");

    auto* annotate_cmd = app.add_subcommand("annotate", "interactively annotate raw sentences");
    add_common(annotate_cmd, opts);
    annotate_cmd->add_option("--input", annotate_in, "file of raw sentences, one per line")
        ->required();
    annotate_cmd->add_option("--output", annotate_out, "annotated corpus file (appended)")
        ->required();

    auto* extract = app.add_subcommand("extract-rules",
                                       "propose prohibition rules from a Hodyne model");
    add_common(extract, opts);
    extract->add_option("--model", model_path, "trained Hodyne model file")->required();

    try {
        app.parse(argc, argv);
        if (train->parsed()) return cmd_train(opts, corpus_path, model_out);
        if (parse->parsed()) return cmd_parse(opts, model_path, text, quiet);
        if (eval->parsed()) return cmd_eval(opts, model_path, corpus_path, csv_path);
        if (split->parsed())
            return cmd_split(opts, corpus_path, fraction, seed, train_out, test_out);
        if (analyze->parsed())
            return cmd_analyze(opts, corpus_path, zipf_csv, model_path, weights_csv);
        if (annotate_cmd->parsed()) return cmd_annotate(opts, annotate_in, annotate_out);
        if (extract->parsed()) return cmd_extract_rules(opts, model_path);
        return 1;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const ConvergenceError& e) {
        std::cerr << "error: " << e.what() << " (reached " << e.achieved_pct << "% after "
                  << e.epochs << " epochs)\n";
        return 3;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
