#ifndef SUBJPARSE_CORPUS_HPP
#define SUBJPARSE_CORPUS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "subjparse/candidates.hpp"
#include "subjparse/tagset.hpp"

namespace subjparse {

struct AnnotatedSentence {
    std::vector<std::string> tokens;
    std::vector<TagId> gold_tags;  // one POS tag per token
    int open_word = 0;             // subject = tokens [open_word, close_word)
    int close_word = 0;
};

struct AnnotatedCorpus {
    std::vector<AnnotatedSentence> sentences;
    std::string provenance;
    // Sentences dropped at load time, with reasons (out-of-bounds subject,
    // gold tag outside the lexicon slots, ...).
    std::vector<std::string> rejected;
};

/// Corpus file: one sentence per line, tokens as word/TAG, subject
/// delimited by standalone [ and ], # comments. Sentences violating the
/// length bounds or whose gold tags fall outside the lexicon slots are
/// rejected with a logged reason, not fatal.
AnnotatedCorpus parse_corpus_file(const std::string& path, const TagSet& tagset,
                                  const Lexicon& lexicon, const GenLimits& limits);

void serialize_corpus(const AnnotatedCorpus& corpus, const TagSet& tagset, std::ostream& out);

struct SplitSpec {
    double test_fraction = 0.2;
    std::uint64_t rng_seed = 1;
    // When non-empty, overrides the seeded random split.
    std::vector<std::size_t> test_ids;
};

struct SplitResult {
    AnnotatedCorpus train;
    AnnotatedCorpus test;
};

SplitResult split_corpus(const AnnotatedCorpus& corpus, const SplitSpec& spec);

}  // namespace subjparse

#endif
