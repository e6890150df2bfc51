#include "subjparse/evaluator.hpp"

#include "subjparse/errors.hpp"

namespace subjparse {

std::size_t select_winner(const Model& model, const SentenceCase& c) {
    if (c.candidates.empty()) throw DataError("select_winner: no candidates");
    std::size_t best = 0;
    double best_score = model.score(c.vectors[0]);
    for (std::size_t i = 1; i < c.vectors.size(); ++i) {
        double s = model.score(c.vectors[i]);
        if (s > best_score) {
            best_score = s;
            best = i;
        }
    }
    return best;
}

JudgeFlags judge(const SentenceCase& c, std::size_t winner) {
    if (winner >= c.candidates.size()) throw DataError("judge: winner index out of range");
    const CandidateString& win = c.candidates[winner];
    const CandidateString& target = c.candidates[c.target_index];

    JudgeFlags flags;
    // Bracket positions compared in word coordinates.
    flags.a = win.open_word == target.open_word && win.close_word == target.close_word;
    if (!flags.a) return flags;

    auto tags_match = [&](int from, int to) {
        for (std::size_t pos = 0; pos < win.tags.size(); ++pos) {
            int word = win.word_of[pos];
            if (word < from || word >= to) continue;
            if (win.tags[pos] != c.gold_tags.at(static_cast<std::size_t>(word))) return false;
        }
        return true;
    };

    flags.b = tags_match(win.open_word, win.close_word);
    if (!flags.b) return flags;
    int covered = win.truncated_at ? static_cast<int>(*win.truncated_at)
                                   : static_cast<int>(c.gold_tags.size());
    flags.c = tags_match(0, covered);
    return flags;
}

namespace {

void tally(const Model& model, const SentenceCase& c, Metrics& m) {
    std::size_t winner = select_winner(model, c);
    JudgeFlags f = judge(c, winner);
    m.n_sentences += 1;
    m.correct_a += f.a;
    m.correct_b += f.b;
    m.correct_c += f.c;
    for (std::size_t i = 0; i < c.vectors.size(); ++i) {
        double g = model.score(c.vectors[i]);
        bool yes = i == c.target_index;
        m.n_strings += 1;
        if (yes ? g > 0.0 : g < 0.0) m.correct_d += 1;
    }
}

}  // namespace

Metrics evaluate_serial(const Model& model, const std::vector<SentenceCase>& cases) {
    if (cases.empty()) throw DataError("evaluate: no sentence cases");
    Metrics m;
    for (const auto& c : cases) tally(model, c, m);
    return m;
}

Metrics evaluate(const Model& model, const std::vector<SentenceCase>& cases) {
    if (cases.empty()) throw DataError("evaluate: no sentence cases");
    Metrics total;
#pragma omp parallel
    {
        Metrics local;
#pragma omp for nowait
        for (long i = 0; i < static_cast<long>(cases.size()); ++i)
            tally(model, cases[static_cast<std::size_t>(i)], local);
#pragma omp critical
        {
            total.n_sentences += local.n_sentences;
            total.correct_a += local.correct_a;
            total.correct_b += local.correct_b;
            total.correct_c += local.correct_c;
            total.correct_d += local.correct_d;
            total.n_strings += local.n_strings;
        }
    }
    return total;
}

}  // namespace subjparse
