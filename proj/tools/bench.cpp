// Compares the OpenMP-parallel candidate build and evaluation against the
// serial reference implementations, checking that the results agree.

#include <chrono>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "subjparse/pipeline.hpp"

using namespace subjparse;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_of(const Clock::time_point& t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    std::string corpus_path = argc > 1 ? argv[1] : "data/corpus.txt";
    int repeats = argc > 2 ? std::atoi(argv[2]) : 5;

    Config cfg;
    Context ctx = Context::load(cfg);
    AnnotatedCorpus corpus = parse_corpus_file(corpus_path, ctx.tagset, ctx.lexicon, cfg.limits);
    std::cout << "corpus: " << corpus.sentences.size() << " sentences\n";
#ifdef _OPENMP
    std::cout << "OpenMP threads: " << omp_get_max_threads() << '\n';
#else
    std::cout << "built without OpenMP; both paths run serially\n";
#endif

    double t_serial = 0.0, t_parallel = 0.0;
    BuildResult serial, parallel;
    for (int r = 0; r < repeats; ++r) {
        auto t0 = Clock::now();
        serial = build_cases_serial(corpus, ctx);
        t_serial += seconds_of(t0);
        t0 = Clock::now();
        parallel = build_cases(corpus, ctx);
        t_parallel += seconds_of(t0);
    }
    bool same = serial.cases.size() == parallel.cases.size();
    for (std::size_t i = 0; same && i < serial.cases.size(); ++i)
        same = serial.cases[i].candidates == parallel.cases[i].candidates &&
               serial.cases[i].vectors == parallel.cases[i].vectors;
    std::cout << "build_cases   serial " << t_serial / repeats << " s, parallel "
              << t_parallel / repeats << " s, speedup " << t_serial / t_parallel
              << (same ? " (results agree)" : " (RESULTS DIFFER)") << '\n';
    if (!same) return 1;

    TrainingSet data = make_training_set(serial.cases, ctx.index.dim());
    HodyneModel model = train_hodyne(data, cfg.train);

    double e_serial = 0.0, e_parallel = 0.0;
    Metrics m_serial{}, m_parallel{};
    for (int r = 0; r < repeats; ++r) {
        auto t0 = Clock::now();
        m_serial = evaluate_serial(model, serial.cases);
        e_serial += seconds_of(t0);
        t0 = Clock::now();
        m_parallel = evaluate(model, serial.cases);
        e_parallel += seconds_of(t0);
    }
    bool eval_same = m_serial.correct_a == m_parallel.correct_a &&
                     m_serial.correct_b == m_parallel.correct_b &&
                     m_serial.correct_c == m_parallel.correct_c &&
                     m_serial.correct_d == m_parallel.correct_d;
    std::cout << "evaluate      serial " << e_serial / repeats << " s, parallel "
              << e_parallel / repeats << " s, speedup " << e_serial / e_parallel
              << (eval_same ? " (results agree)" : " (RESULTS DIFFER)") << '\n';
    return eval_same ? 0 : 1;
}
