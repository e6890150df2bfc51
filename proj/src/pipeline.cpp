#include "subjparse/pipeline.hpp"

#include <chrono>
#include <fstream>
#include <ostream>
#include <sstream>

#include "subjparse/errors.hpp"

namespace subjparse {

namespace {

std::string strip(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ',')) {
        part = strip(part);
        if (!part.empty()) out.push_back(part);
    }
    return out;
}

}  // namespace

Config Config::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open config file: " + path);
    Config cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = strip(line);
        if (line.empty()) continue;
        try {
            cfg.apply_override(line);
        } catch (const DataError& e) {
            throw DataError(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return cfg;
}

void Config::apply_override(const std::string& key_value) {
    auto eq = key_value.find('=');
    if (eq == std::string::npos) throw DataError("expected key=value, got: " + key_value);
    std::string key = strip(key_value.substr(0, eq));
    std::string value = strip(key_value.substr(eq + 1));
    if (key.empty() || value.empty()) throw DataError("expected key=value, got: " + key_value);

    auto as_int = [&] {
        try {
            return std::stoi(value);
        } catch (...) {
            throw DataError("bad integer for " + key + ": " + value);
        }
    };
    auto as_double = [&] {
        try {
            return std::stod(value);
        } catch (...) {
            throw DataError("bad number for " + key + ": " + value);
        }
    };

    if (key == "tagset") tagset_path = value;
    else if (key == "lexicon") lexicon_path = value;
    else if (key == "prohibitions") prohibitions_path = value;
    else if (key == "mode") mode = (tuple_mode_from_string(value), value);
    else if (key == "model") {
        if (value != "perceptron" && value != "hodyne" && value != "lms" && value != "bayes")
            throw DataError("unknown model kind: " + value);
        model = value;
    }
    else if (key == "fallback_tags") fallback_tags = split_csv(value);
    else if (key == "smoothing") smoothing = as_double();
    else if (key == "max_presubject") limits.max_presubject = as_int();
    else if (key == "max_subject") limits.max_subject = as_int();
    else if (key == "truncate_after") limits.truncate_after = as_int();
    else if (key == "max_candidates") limits.max_candidates = static_cast<std::size_t>(as_int());
    else if (key == "threshold_pct") train.threshold_pct = as_double();
    else if (key == "max_epochs") train.max_epochs = as_int();
    else if (key == "learning_rate") train.learning_rate = as_double();
    else if (key == "theta") train.theta = as_double();
    else if (key == "seed") train.rng_seed = static_cast<std::uint64_t>(std::stoull(value));
    else throw DataError("unknown config key: " + key);

    if (limits.max_presubject < 1 || limits.max_subject < 1 || limits.truncate_after < 1 ||
        limits.max_candidates < 1)
        throw DataError("generation limits must all be positive");
    if (train.threshold_pct <= 0.0 || train.threshold_pct > 100.0)
        throw DataError("threshold_pct must lie in (0, 100]");
    if (train.max_epochs < 1) throw DataError("max_epochs must be >= 1");
}

Context Context::load(const Config& config) {
    TagSet tagset = load_tagset(config.tagset_path);
    std::set<TagId> fallback;
    for (const auto& name : config.fallback_tags) {
        TagId t = tagset.id(name);
        if (tagset.is_reserved(t)) throw DataError("reserved tag in fallback set: " + name);
        fallback.insert(t);
    }
    if (fallback.empty()) throw DataError("fallback tag set must be non-empty");
    Lexicon lexicon = load_lexicon(config.lexicon_path, tagset, fallback);
    ProhibitionTable table = load_prohibitions(config.prohibitions_path, tagset);
    TupleIndex index(tuple_mode_from_string(config.mode), tagset.m());
    return Context{std::move(tagset), std::move(lexicon), std::move(table), index, config};
}

namespace {

// Target = the candidate matching the gold brackets whose tags agree with
// the gold tags on every covered word.
std::optional<std::size_t> find_target(const std::vector<CandidateString>& candidates,
                                       const AnnotatedSentence& sent) {
    for (std::size_t k = 0; k < candidates.size(); ++k) {
        const auto& c = candidates[k];
        if (c.open_word != sent.open_word || c.close_word != sent.close_word) continue;
        bool match = true;
        for (std::size_t pos = 0; pos < c.tags.size() && match; ++pos) {
            int word = c.word_of[pos];
            if (word >= 0 && c.tags[pos] != sent.gold_tags[static_cast<std::size_t>(word)])
                match = false;
        }
        if (match) return k;
    }
    return std::nullopt;
}

// One sentence; returns a case or a coverage-failure message.
bool build_one(const AnnotatedSentence& sent, int id, const Context& ctx, SentenceCase& out,
               std::string& failure) {
    TagLattice lattice = tag_sentence(ctx.lexicon, sent.tokens);
    auto candidates = generate_candidates(lattice, ctx.config.limits, ctx.table, ctx.tagset);
    if (candidates.empty()) {
        failure = "sentence " + std::to_string(id) + ": all candidates pruned";
        return false;
    }
    auto target = find_target(candidates, sent);
    if (!target) {
        failure = "sentence " + std::to_string(id) + ": gold string not among " +
                  std::to_string(candidates.size()) + " candidates";
        return false;
    }
    out.sentence_id = id;
    out.target_index = *target;
    out.gold_tags = sent.gold_tags;
    out.vectors.reserve(candidates.size());
    for (const auto& c : candidates) out.vectors.push_back(phi(c.tags, ctx.index));
    out.candidates = std::move(candidates);
    return true;
}

BuildResult collect(std::vector<std::optional<SentenceCase>>& slots,
                    std::vector<std::string>& failures) {
    BuildResult result;
    for (auto& slot : slots) {
        if (!slot) continue;
        result.total_candidates += slot->candidates.size();
        result.cases.push_back(std::move(*slot));
    }
    for (auto& f : failures)
        if (!f.empty()) result.coverage_failures.push_back(std::move(f));
    return result;
}

}  // namespace

BuildResult build_cases_serial(const AnnotatedCorpus& corpus, const Context& ctx) {
    std::vector<std::optional<SentenceCase>> slots(corpus.sentences.size());
    std::vector<std::string> failures(corpus.sentences.size());
    for (std::size_t i = 0; i < corpus.sentences.size(); ++i) {
        SentenceCase c;
        if (build_one(corpus.sentences[i], static_cast<int>(i), ctx, c, failures[i]))
            slots[i] = std::move(c);
    }
    return collect(slots, failures);
}

BuildResult build_cases(const AnnotatedCorpus& corpus, const Context& ctx) {
    std::vector<std::optional<SentenceCase>> slots(corpus.sentences.size());
    std::vector<std::string> failures(corpus.sentences.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < static_cast<long>(corpus.sentences.size()); ++i) {
        auto u = static_cast<std::size_t>(i);
        SentenceCase c;
        if (build_one(corpus.sentences[u], static_cast<int>(i), ctx, c, failures[u]))
            slots[u] = std::move(c);
    }
    return collect(slots, failures);
}

TrainingSet make_training_set(const std::vector<SentenceCase>& cases, std::size_t dim) {
    TrainingSet data;
    data.dim = dim;
    for (const auto& c : cases)
        for (std::size_t k = 0; k < c.vectors.size(); ++k)
            data.items.push_back(
                {c.vectors[k], k == c.target_index ? Label::Yes : Label::No, c.sentence_id});
    return data;
}

TrainOutcome run_pipeline_train(const AnnotatedCorpus& corpus, const Context& ctx) {
    BuildResult built = build_cases(corpus, ctx);
    if (built.cases.empty()) throw DataError("training set is empty (no covered sentences)");
    TrainingSet data = make_training_set(built.cases, ctx.index.dim());

    TrainOutcome outcome;
    outcome.coverage_failures = std::move(built.coverage_failures);
    auto t0 = std::chrono::steady_clock::now();
    if (ctx.config.model == "perceptron") {
        outcome.model =
            std::make_unique<PerceptronModel>(train_perceptron(data, ctx.config.train, &outcome.report));
    } else if (ctx.config.model == "hodyne") {
        outcome.model =
            std::make_unique<HodyneModel>(train_hodyne(data, ctx.config.train, &outcome.report));
    } else if (ctx.config.model == "lms") {
        outcome.model = std::make_unique<LmsModel>(train_lms(data, ctx.config.train, &outcome.report));
    } else if (ctx.config.model == "bayes") {
        outcome.model = std::make_unique<BayesModel>(train_bayes(data, ctx.config.smoothing));
        outcome.report.converged = true;
        outcome.report.epochs = 1;
        outcome.report.achieved_pct = training_accuracy_pct(*outcome.model, data);
    } else {
        throw DataError("unknown model kind: " + ctx.config.model);
    }
    outcome.train_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return outcome;
}

ParseOutcome run_pipeline_parse(const Model& model, const std::string& text, const Context& ctx,
                                std::ostream* trace) {
    auto tokens = tokenize(text);
    if (tokens.empty()) throw DataError("cannot parse empty input");
    ParseOutcome out;
    out.lattice = tag_sentence(ctx.lexicon, tokens);
    if (trace) {
        *trace << "stage A: tag lattice\n";
        for (std::size_t i = 0; i < tokens.size(); ++i) {
            *trace << "  " << tokens[i] << " ->";
            for (TagId t : out.lattice.slots[i]) *trace << ' ' << ctx.tagset.name(t);
            *trace << '\n';
        }
        if (out.lattice.unknown_words)
            *trace << "  (" << out.lattice.unknown_words << " unknown words used the fallback set)\n";
    }
    out.candidates = generate_candidates(out.lattice, ctx.config.limits, ctx.table, ctx.tagset);
    if (out.candidates.empty())
        throw DataError("sentence is unparseable: all candidates pruned");
    if (trace) {
        *trace << "stage B: " << out.candidates.size() << " candidate strings\n";
        for (std::size_t k = 0; k < out.candidates.size(); ++k)
            *trace << "  string " << k + 1 << ": " << render_tags(out.candidates[k], ctx.tagset)
                   << '\n';
    }
    const auto* bayes = dynamic_cast<const BayesModel*>(&model);
    for (std::size_t k = 0; k < out.candidates.size(); ++k) {
        SparseBinaryVector v = phi(out.candidates[k].tags, ctx.index);
        if (trace) {
            *trace << "stage C/D: string " << k + 1 << " tuples:";
            for (auto i : v.active) *trace << ' ' << ctx.index.tuple_name(i, ctx.tagset);
            *trace << '\n';
        }
        out.gamma.push_back(bayes ? bayes->score_with_prior(v, out.candidates.size())
                                  : model.score(v));
    }
    out.winner = 0;
    for (std::size_t k = 1; k < out.gamma.size(); ++k)
        if (out.gamma[k] > out.gamma[out.winner]) out.winner = k;
    if (trace) {
        for (std::size_t k = 0; k < out.gamma.size(); ++k)
            *trace << "  Gamma(string " << k + 1 << ") = " << out.gamma[k]
                   << (k == out.winner ? "   <- winner" : "") << '\n';
    }
    return out;
}

AnnotatedCorpus annotate(const std::vector<std::string>& raw_sentences, const Context& ctx,
                         std::istream& in, std::ostream& out, std::size_t skip_first) {
    AnnotatedCorpus corpus;
    corpus.provenance = "annotate session";
    // Candidates must cover the whole sentence so that every gold tag is
    // fixed by the selection; disable truncation for annotation.
    Context full = ctx;
    full.config.limits.truncate_after = 1 << 20;

    for (std::size_t s = skip_first; s < raw_sentences.size(); ++s) {
        auto tokens = tokenize(raw_sentences[s]);
        if (tokens.empty()) continue;
        TagLattice lattice = tag_sentence(full.lexicon, tokens);
        auto candidates =
            generate_candidates(lattice, full.config.limits, full.table, full.tagset);
        if (candidates.empty()) {
            out << "sentence " << s + 1 << ": all candidates pruned, skipping\n";
            continue;
        }
        std::size_t chosen = 0;
        if (candidates.size() == 1) {
            out << "sentence " << s + 1 << ": single candidate, auto-annotated\n";
        } else {
            out << "sentence " << s + 1 << ": " << raw_sentences[s] << '\n';
            for (std::size_t k = 0; k < candidates.size(); ++k)
                out << "  string " << k + 1 << ": " << render_tags(candidates[k], full.tagset)
                    << '\n';
            for (;;) {
                out << "select target [1-" << candidates.size() << "]: " << std::flush;
                std::size_t pick = 0;
                if (!(in >> pick)) return corpus;  // user abort keeps partial progress
                if (pick >= 1 && pick <= candidates.size()) {
                    chosen = pick - 1;
                    break;
                }
                out << "out of range\n";
                in.clear();
            }
        }
        const auto& c = candidates[chosen];
        AnnotatedSentence sent;
        sent.tokens = tokens;
        sent.gold_tags.resize(tokens.size());
        for (std::size_t pos = 0; pos < c.tags.size(); ++pos)
            if (c.word_of[pos] >= 0)
                sent.gold_tags[static_cast<std::size_t>(c.word_of[pos])] = c.tags[pos];
        sent.open_word = c.open_word;
        sent.close_word = c.close_word;
        corpus.sentences.push_back(std::move(sent));
    }
    return corpus;
}

}  // namespace subjparse
