#ifndef SUBJPARSE_EVALUATOR_HPP
#define SUBJPARSE_EVALUATOR_HPP

#include <cstddef>
#include <vector>

#include "subjparse/candidates.hpp"
#include "subjparse/nets.hpp"

namespace subjparse {

/// One sentence's candidate set with its annotated target.
struct SentenceCase {
    int sentence_id = 0;
    std::vector<CandidateString> candidates;
    std::vector<SparseBinaryVector> vectors;  // parallel to candidates
    std::size_t target_index = 0;
    std::vector<TagId> gold_tags;  // one POS tag per token, whole sentence
};

struct JudgeFlags {
    bool a = false;  // hypertags correctly placed
    bool b = false;  // a, and subject words correctly tagged
    bool c = false;  // b, and all covered words correctly tagged
};

struct Metrics {
    std::size_t n_sentences = 0;
    std::size_t correct_a = 0, correct_b = 0, correct_c = 0;
    std::size_t correct_d = 0;  // strings whose Gamma sign matches their label
    std::size_t n_strings = 0;

    double pct_a() const { return 100.0 * correct_a / n_sentences; }
    double pct_b() const { return 100.0 * correct_b / n_sentences; }
    double pct_c() const { return 100.0 * correct_c / n_sentences; }
    double pct_d() const { return 100.0 * correct_d / n_strings; }
};

// Argmax of Gamma over the sentence's candidates; ties go to the lowest
// generation index. The winner may have a negative score.
std::size_t select_winner(const Model& model, const SentenceCase& c);

JudgeFlags judge(const SentenceCase& c, std::size_t winner);

// Parallel over sentences (OpenMP when available).
Metrics evaluate(const Model& model, const std::vector<SentenceCase>& cases);
// Serial reference implementation; identical results.
Metrics evaluate_serial(const Model& model, const std::vector<SentenceCase>& cases);

}  // namespace subjparse

#endif
