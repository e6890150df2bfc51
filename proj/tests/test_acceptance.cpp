// End-to-end acceptance suite. Each test case prints one PASS/FAIL line so
// the overall verdict can be read straight off the log.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "doctest.h"
#include "helpers.hpp"
#include "subjparse/corpus.hpp"
#include "subjparse/pipeline.hpp"
#include "subjparse/stats.hpp"

using namespace subjparse;

namespace {

struct Verdict {
    const char* name;
    bool ok = true;
    ~Verdict() { std::printf("[acceptance] %s: %s\n", ok ? "PASS" : "FAIL", name); }
};

#define REQ(cond)                       \
    do {                                \
        bool r_ = static_cast<bool>(cond); \
        CHECK(r_);                      \
        verdict.ok = verdict.ok && r_;  \
    } while (0)

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

AnnotatedCorpus load_corpus(const Context& ctx) {
    return parse_corpus_file(testutil::data_path("corpus.txt"), ctx.tagset, ctx.lexicon,
                             ctx.config.limits);
}

// Cached heavyweight artifacts shared by several criteria.
struct Trained {
    Context ctx = testutil::default_context();
    AnnotatedCorpus corpus = load_corpus(ctx);
    BuildResult built = build_cases(corpus, ctx);
    TrainingSet data = make_training_set(built.cases, ctx.index.dim());
    HodyneModel hodyne;
    TrainReport hodyne_report;

    Trained() {
        // Push to full separation so every hard string exerts update
        // pressure on its tuples' weights.
        TrainParams params = ctx.config.train;
        params.threshold_pct = 100.0;
        hodyne = train_hodyne(data, params, &hodyne_report);
    }
};

Trained& trained() {
    static Trained t;
    return t;
}

}  // namespace

TEST_CASE("reference-sentence replay: candidate strings and their pair/triple listings") {
    Verdict verdict{"candidate generation reproduces the reference example strings"};
    auto t0 = std::chrono::steady_clock::now();

    Context ctx = testutil::default_context("both", 1000);
    TagLattice lat = tag_sentence(ctx.lexicon, {"all", "papers", "published", "in", "this",
                                                "journal", "are", "protected", "by",
                                                "copyright", "."});
    auto candidates = generate_candidates(lat, ctx.config.limits, ctx.table, ctx.tagset);

    std::set<std::string> seen;
    for (const auto& c : candidates) seen.insert(render_tags(c, ctx.tagset));
    const std::vector<std::string> expected = {
        "STRT OPEN pred CLOSE verb pastp prep prod noun aux pastp prep noun endp",
        "STRT OPEN pred noun CLOSE pastp adv prod noun aux pastp prep noun endp",
        "STRT OPEN pred noun pastp CLOSE adv prod noun aux pastp prep noun endp",
        "STRT OPEN pred noun pastp prep prod noun CLOSE aux pastp prep noun endp",
        "STRT OPEN pred noun pastp adv prod noun CLOSE aux pastp prep noun endp",
    };
    for (const auto& s : expected) REQ(seen.count(s) == 1);

    // Tuple listing for the first expected string: adjacent pairs in order
    // (STRT,OPEN) (OPEN,pred) (pred,CLOSE) ... (noun,endp) and the triples
    // (STRT,OPEN,pred) (OPEN,pred,CLOSE) (pred,CLOSE,verb) ... (prep,noun,endp).
    const CandidateString* s1 = nullptr;
    for (const auto& c : candidates)
        if (render_tags(c, ctx.tagset) == expected[0]) s1 = &c;
    REQUIRE(s1 != nullptr);

    TupleIndex pairs(TupleMode::Pairs, ctx.tagset.m());
    TupleIndex triples(TupleMode::Triples, ctx.tagset.m());
    auto vp = phi(s1->tags, pairs);
    auto vt = phi(s1->tags, triples);

    std::set<std::uint32_t> want_pairs, want_triples;
    for (std::size_t i = 0; i + 1 < s1->tags.size(); ++i)
        want_pairs.insert(pairs.encode_pair(s1->tags[i], s1->tags[i + 1]));
    for (std::size_t i = 0; i + 2 < s1->tags.size(); ++i)
        want_triples.insert(triples.encode_triple(s1->tags[i], s1->tags[i + 1], s1->tags[i + 2]));
    REQ(std::set<std::uint32_t>(vp.active.begin(), vp.active.end()) == want_pairs);
    REQ(std::set<std::uint32_t>(vt.active.begin(), vt.active.end()) == want_triples);

    auto has_pair = [&](const char* a, const char* b) {
        return std::binary_search(vp.active.begin(), vp.active.end(),
                                  pairs.encode_pair(ctx.tagset.id(a), ctx.tagset.id(b)));
    };
    TagId strt = ctx.tagset.start_id(), open = ctx.tagset.open_id(),
          close = ctx.tagset.close_id();
    REQ(std::binary_search(vp.active.begin(), vp.active.end(), pairs.encode_pair(strt, open)));
    REQ(std::binary_search(vp.active.begin(), vp.active.end(),
                           pairs.encode_pair(open, ctx.tagset.id("pred"))));
    REQ(std::binary_search(vp.active.begin(), vp.active.end(),
                           pairs.encode_pair(ctx.tagset.id("pred"), close)));
    REQ(has_pair("noun", "endp"));
    REQ(std::binary_search(
        vt.active.begin(), vt.active.end(),
        triples.encode_triple(open, ctx.tagset.id("pred"), close)));
    REQ(std::binary_search(
        vt.active.begin(), vt.active.end(),
        triples.encode_triple(ctx.tagset.id("prep"), ctx.tagset.id("noun"),
                              ctx.tagset.id("endp"))));

    REQ(seconds_since(t0) < 1.0);
}

TEST_CASE("feature-space dimensionality for the 22-symbol inventory") {
    Verdict verdict{"pair+triple index over 22 symbols has dimension 11132"};
    Context ctx = testutil::default_context();
    REQ(ctx.tagset.m() == 22);
    TupleIndex index(TupleMode::Both, 22);
    REQ(index.dim() == 11132);
    REQ(ctx.index.dim() == 11132);
}

TEST_CASE("saturating weight update: fixed points and shape") {
    Verdict verdict{"weight update matches the closed form and saturates"};
    REQ(std::abs(hodyne_update(1.0, +1) - 1.5) < 1e-12);
    REQ(std::abs(hodyne_update(1.0, -1) - 0.5) < 1e-12);
    for (double w = 1e-3; w <= 100.0; w *= 1.1) {
        REQ(hodyne_update(w, +1) > w);
        REQ(hodyne_update(w, -1) < w);
        REQ(hodyne_update(w, -1) > 0.0);
    }
    REQ((hodyne_update(100.0, +1) - 100.0) / 100.0 < 1e-5);
}

TEST_CASE("training band: all three nets reach 96.5% on the bundled corpus") {
    Verdict verdict{"perceptron, two-output net, and LMS all reach 96.5% in time"};
    Trained& t = trained();
    REQ(t.built.coverage_failures.empty());

    // Hodyne (trained once in the shared fixture).
    REQ(t.hodyne_report.converged);
    REQ(t.hodyne_report.achieved_pct >= 96.5);

    TrainParams params = t.ctx.config.train;
    params.threshold_pct = 96.5;

    auto t0 = std::chrono::steady_clock::now();
    TrainReport rp;
    PerceptronModel perceptron = train_perceptron(t.data, params, &rp);
    double perceptron_s = seconds_since(t0);
    REQ(rp.converged);
    REQ(rp.achieved_pct >= 96.5);
    REQ(perceptron_s < 60.0);

    t0 = std::chrono::steady_clock::now();
    TrainParams lms_params = params;
    lms_params.max_epochs = 100000;  // slower by design, same accuracy bar
    TrainReport rl;
    LmsModel lms = train_lms(t.data, lms_params, &rl);
    double lms_s = seconds_since(t0);
    REQ(rl.converged);
    REQ(rl.achieved_pct >= 96.5);
    REQ(lms_s < 60.0);

    std::printf("[acceptance]   epochs: hodyne=%d perceptron=%d lms=%d\n",
                t.hodyne_report.epochs, rp.epochs, rl.epochs);
}

TEST_CASE("separability ordering: triples at least as separable as pairs") {
    Verdict verdict{"triples-mode training accuracy >= pairs-mode"};
    TrainParams params;
    params.threshold_pct = 100.0;
    params.max_epochs = 120;

    double acc[2] = {0.0, 0.0};
    const char* modes[2] = {"pairs", "triples"};
    for (int i = 0; i < 2; ++i) {
        Context ctx = testutil::default_context(modes[i]);
        AnnotatedCorpus corpus = load_corpus(ctx);
        BuildResult built = build_cases(corpus, ctx);
        TrainingSet data = make_training_set(built.cases, ctx.index.dim());
        HodyneModel model = train_hodyne(data, params);
        acc[i] = training_accuracy_pct(model, data);
    }
    std::printf("[acceptance]   accuracy: pairs=%.2f%% triples=%.2f%%\n", acc[0], acc[1]);
    REQ(acc[1] >= acc[0]);
}

TEST_CASE("metric ordering on a held-out split") {
    Verdict verdict{"correct-a >= correct-b >= correct-c and correct-a >= correct-d"};
    Trained& t = trained();

    SplitSpec spec;
    spec.test_fraction = 0.2;
    spec.rng_seed = 3;
    SplitResult split = split_corpus(t.corpus, spec);

    BuildResult train_built = build_cases(split.train, t.ctx);
    TrainingSet train_data = make_training_set(train_built.cases, t.ctx.index.dim());
    TrainParams params = t.ctx.config.train;
    params.threshold_pct = 96.5;
    HodyneModel model = train_hodyne(train_data, params);

    BuildResult test_built = build_cases(split.test, t.ctx);
    REQ(!test_built.cases.empty());
    Metrics m = evaluate(model, test_built.cases);
    std::printf("[acceptance]   held-out: a=%.1f%% b=%.1f%% c=%.1f%% d=%.1f%%\n", m.pct_a(),
                m.pct_b(), m.pct_c(), m.pct_d());
    REQ(m.pct_a() >= m.pct_b());
    REQ(m.pct_b() >= m.pct_c());
    REQ(m.pct_a() >= m.pct_d());
}

TEST_CASE("oracle equivalence on 200 random small lattices") {
    Verdict verdict{"generator matches the brute-force enumerator with no pruning rules"};
    Context ctx = testutil::default_context();
    ProhibitionTable empty;
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<std::size_t> len_dist(2, 6);
    std::uniform_int_distribution<int> slot_dist(1, 3);
    std::uniform_int_distribution<TagId> tag_dist(0, static_cast<TagId>(ctx.tagset.pos_count() - 1));

    for (int trial = 0; trial < 200; ++trial) {
        TagLattice lat;
        std::size_t len = len_dist(rng);
        for (std::size_t w = 0; w < len; ++w) {
            lat.words.push_back("w" + std::to_string(w));
            std::set<TagId> slot;
            int k = slot_dist(rng);
            while (static_cast<int>(slot.size()) < k) slot.insert(tag_dist(rng));
            lat.slots.emplace_back(slot.begin(), slot.end());
        }
        auto fast = generate_candidates(lat, ctx.config.limits, empty, ctx.tagset);
        auto slow = testutil::brute_force_candidates(lat, ctx.config.limits, empty, ctx.tagset);

        auto key = [&](const std::vector<CandidateString>& cs) {
            std::set<std::string> out;
            for (const auto& c : cs) out.insert(render_tags(c, ctx.tagset));
            return out;
        };
        bool equal = key(fast) == key(slow) && fast.size() == slow.size();
        REQ(equal);
        if (!equal) break;
    }
}

TEST_CASE("negative information: a close-bracket before a preposition is penalized") {
    Verdict verdict{"wrong placement scores below the right one; rule extraction finds it"};
    Trained& t = trained();

    // "the supplies in the tank are checked ." — correct subject is the whole
    // noun phrase; the rival placement closes after "supplies", creating the
    // (CLOSE, prep) pair that only ever appears in wrong training strings.
    TagLattice lat = tag_sentence(t.ctx.lexicon,
                                  {"the", "supplies", "in", "the", "tank", "are", "checked", "."});
    auto candidates = generate_candidates(lat, t.ctx.config.limits, t.ctx.table, t.ctx.tagset);

    TagId noun = t.ctx.tagset.id("noun");
    const CandidateString* right = nullptr;
    const CandidateString* wrong = nullptr;
    for (const auto& c : candidates) {
        bool supplies_noun = false;
        for (std::size_t pos = 0; pos < c.tags.size(); ++pos)
            if (c.word_of[pos] == 1 && c.tags[pos] == noun) supplies_noun = true;
        if (!supplies_noun) continue;
        if (c.open_word == 0 && c.close_word == 5) right = &c;
        if (c.open_word == 0 && c.close_word == 2) wrong = &c;
    }
    REQUIRE(right != nullptr);
    REQUIRE(wrong != nullptr);

    double g_right = t.hodyne.score(phi(right->tags, t.ctx.index));
    double g_wrong = t.hodyne.score(phi(wrong->tags, t.ctx.index));
    std::printf("[acceptance]   Gamma(right)=%.3f Gamma(wrong)=%.3f\n", g_right, g_wrong);
    REQ(g_right > g_wrong);

    auto rules = extract_prohibition_candidates(t.hodyne, t.ctx.index);
    std::vector<TagId> close_prep = {t.ctx.tagset.close_id(), t.ctx.tagset.id("prep")};
    bool found = false;
    for (const auto& r : rules) found = found || r == close_prep;
    REQ(found);
}

TEST_CASE("frequent tuples carry smaller weights") {
    Verdict verdict{"Spearman correlation between tuple frequency and weight is negative"};
    Trained& t = trained();
    auto rows = weight_frequency_report(t.hodyne, t.data);
    // One point per enabled link, mirroring the analyze command.
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
    double rho = spearman(freq, absw);
    std::printf("[acceptance]   Spearman rho = %.4f over %zu links\n", rho, freq.size());
    REQ(rho < 0.0);
}

TEST_CASE("determinism: identical runs write byte-identical model files") {
    Verdict verdict{"seeded training is reproducible and model files round-trip exactly"};
    Config cfg = testutil::default_config();
    cfg.model = "perceptron";  // exercises the seeded guided initialization
    cfg.train.rng_seed = 17;

    auto run_once = [&](const std::string& path) {
        Context ctx = Context::load(cfg);
        AnnotatedCorpus corpus = load_corpus(ctx);
        corpus.sentences.resize(60);
        TrainOutcome out = run_pipeline_train(corpus, ctx);
        REQUIRE(out.model != nullptr);
        save_model(*out.model, ctx.index.mode(), ctx.tagset.m(), path);
    };
    run_once("/tmp/subjparse_det_a.model");
    run_once("/tmp/subjparse_det_b.model");

    auto slurp = [](const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    };
    std::string a = slurp("/tmp/subjparse_det_a.model");
    REQ(!a.empty());
    REQ(a == slurp("/tmp/subjparse_det_b.model"));

    auto loaded = load_model("/tmp/subjparse_det_a.model");
    std::ostringstream resaved;
    resaved << "subjparse-model 1\n";
    loaded->save(resaved);
    // byte identity of the payload after a load/save cycle
    REQ(a.substr(a.find('\n') + 1).find(resaved.str().substr(resaved.str().find('\n') + 1)) !=
        std::string::npos);

    Trained& t = trained();
    save_model(t.hodyne, TupleMode::Both, 22, "/tmp/subjparse_det_h.model");
    auto h2 = load_model("/tmp/subjparse_det_h.model");
    auto* h = dynamic_cast<HodyneModel*>(h2.get());
    REQUIRE(h != nullptr);
    REQ(h->w_yes == t.hodyne.w_yes);
    REQ(h->w_no == t.hodyne.w_no);
}

TEST_CASE("entropy suite") {
    Verdict verdict{"entropy estimates behave on known and corpus data"};

    std::vector<std::vector<TagId>> constant = {std::vector<TagId>(500, 9)};
    for (int n = 1; n <= 3; ++n) REQ(ngram_entropy(constant, n).block_bits == 0.0);

    std::mt19937_64 rng(100);
    std::uniform_int_distribution<int> dist(0, 3);
    std::vector<TagId> iid(100000);
    for (auto& x : iid) x = static_cast<TagId>(dist(rng));
    double h1 = ngram_entropy({iid}, 1).block_bits;
    std::printf("[acceptance]   H1(uniform-4 iid) = %.4f bits\n", h1);
    REQ(std::abs(h1 - 2.0) <= 0.05);

    Trained& t = trained();
    std::vector<std::vector<TagId>> gold;
    for (const auto& s : t.corpus.sentences) gold.push_back(s.gold_tags);
    double per[4] = {0, 0, 0, 0};
    for (int n = 1; n <= 3; ++n) per[n] = ngram_entropy(gold, n).per_symbol_bits;
    std::printf("[acceptance]   per-symbol bits: n=1 %.3f, n=2 %.3f, n=3 %.3f\n", per[1], per[2],
                per[3]);
    REQ(per[2] < per[1]);
    REQ(per[3] < per[2]);
}
