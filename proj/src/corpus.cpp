#include "subjparse/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "subjparse/errors.hpp"

namespace subjparse {

AnnotatedCorpus parse_corpus_file(const std::string& path, const TagSet& tagset,
                                  const Lexicon& lexicon, const GenLimits& limits) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open corpus file: " + path);
    AnnotatedCorpus corpus;
    corpus.provenance = path;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ss(line);
        std::string tok;
        AnnotatedSentence sent;
        std::optional<int> open_at, close_at;
        auto where = path + ":" + std::to_string(lineno);
        bool any = false;
        while (ss >> tok) {
            any = true;
            if (tok == "[") {
                if (open_at) throw DataError(where + ": duplicate '['");
                open_at = static_cast<int>(sent.tokens.size());
                continue;
            }
            if (tok == "]") {
                if (!open_at) throw DataError(where + ": ']' before '['");
                if (close_at) throw DataError(where + ": duplicate ']'");
                close_at = static_cast<int>(sent.tokens.size());
                continue;
            }
            auto slash = tok.rfind('/');
            if (slash == std::string::npos || slash == 0 || slash + 1 == tok.size())
                throw DataError(where + ": malformed token (expected word/TAG): " + tok);
            std::string word = tok.substr(0, slash);
            std::string tagname = tok.substr(slash + 1);
            if (!tagset.contains(tagname))
                throw DataError(where + ": unknown tag: " + tagname);
            TagId tag = tagset.id(tagname);
            if (tagset.is_reserved(tag))
                throw DataError(where + ": reserved tag in corpus: " + tagname);
            sent.tokens.push_back(word);
            sent.gold_tags.push_back(tag);
        }
        if (!any) continue;  // blank or comment line
        if (!open_at || !close_at) throw DataError(where + ": missing subject brackets");
        sent.open_word = *open_at;
        sent.close_word = *close_at;

        // Bounds and lexicon-consistency checks reject the sentence, not
        // the whole corpus.
        std::string reason;
        if (sent.close_word <= sent.open_word) {
            reason = "empty subject";
        } else if (sent.open_word > limits.max_presubject) {
            reason = "pre-subject longer than " + std::to_string(limits.max_presubject) + " words";
        } else if (sent.close_word - sent.open_word > limits.max_subject) {
            reason = "subject longer than " + std::to_string(limits.max_subject) + " words";
        } else if (sent.close_word >= static_cast<int>(sent.tokens.size())) {
            reason = "subject extends to end of sentence (no predicate)";
        } else {
            for (std::size_t i = 0; i < sent.tokens.size() && reason.empty(); ++i) {
                const auto* slots = lexicon.lookup(sent.tokens[i]);
                const auto& tags = slots ? *slots : lexicon.fallback();
                if (!tags.count(sent.gold_tags[i]))
                    reason = "gold tag " + tagset.name(sent.gold_tags[i]) +
                             " not in lexicon slots for '" + sent.tokens[i] + "'";
            }
        }
        if (!reason.empty()) {
            corpus.rejected.push_back(where + ": " + reason);
            continue;
        }
        corpus.sentences.push_back(std::move(sent));
    }
    return corpus;
}

void serialize_corpus(const AnnotatedCorpus& corpus, const TagSet& tagset, std::ostream& out) {
    for (const auto& sent : corpus.sentences) {
        for (std::size_t i = 0; i < sent.tokens.size(); ++i) {
            if (static_cast<int>(i) == sent.open_word) out << "[ ";
            if (static_cast<int>(i) == sent.close_word) out << "] ";
            out << sent.tokens[i] << '/' << tagset.name(sent.gold_tags[i]);
            out << (i + 1 < sent.tokens.size() ? ' ' : '\n');
        }
    }
}

SplitResult split_corpus(const AnnotatedCorpus& corpus, const SplitSpec& spec) {
    std::size_t n = corpus.sentences.size();
    if (n < 2) throw DataError("split_corpus: need at least 2 sentences");

    std::vector<std::size_t> test_ids = spec.test_ids;
    if (test_ids.empty()) {
        if (spec.test_fraction < 0.0 || spec.test_fraction >= 1.0)
            throw DataError("split_corpus: test_fraction must lie in [0, 1)");
        std::size_t k = static_cast<std::size_t>(spec.test_fraction * static_cast<double>(n) + 0.5);
        k = std::min(k, n - 1);
        if (spec.test_fraction > 0.0) k = std::max<std::size_t>(k, 1);
        std::vector<std::size_t> ids(n);
        std::iota(ids.begin(), ids.end(), 0);
        std::mt19937_64 rng(spec.rng_seed);
        std::shuffle(ids.begin(), ids.end(), rng);
        test_ids.assign(ids.begin(), ids.begin() + static_cast<long>(k));
    }
    std::vector<bool> in_test(n, false);
    for (auto id : test_ids) {
        if (id >= n) throw DataError("split_corpus: sentence id out of range");
        in_test[id] = true;
    }

    SplitResult result;
    result.train.provenance = corpus.provenance + " (train)";
    result.test.provenance = corpus.provenance + " (test)";
    for (std::size_t i = 0; i < n; ++i)
        (in_test[i] ? result.test : result.train).sentences.push_back(corpus.sentences[i]);
    if (result.train.sentences.empty())
        throw DataError("split_corpus: no training sentences left");
    return result;
}

}  // namespace subjparse
