#ifndef SUBJPARSE_CANDIDATES_HPP
#define SUBJPARSE_CANDIDATES_HPP

#include <array>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "subjparse/tagset.hpp"

namespace subjparse {

/// One fully disambiguated tag sequence with one hypertag placement.
/// tags[0] is always the start symbol; OPEN precedes CLOSE and each occurs
/// exactly once. word_of maps tag positions to token indices (-1 for the
/// start symbol and hypertags).
struct CandidateString {
    std::vector<TagId> tags;
    std::vector<int> word_of;
    int open_word = 0;   // token index of the first subject word
    int close_word = 0;  // token index just past the last subject word
    std::optional<std::size_t> truncated_at;  // token count covered, if < sentence length

    bool operator==(const CandidateString& other) const { return tags == other.tags; }
};

/// Banned adjacent tag pairs/triples; entries may reference hypertags.
class ProhibitionTable {
public:
    void ban_pair(TagId a, TagId b) { pairs_.insert({a, b}); }
    void ban_triple(TagId a, TagId b, TagId c) { triples_.insert({a, b, c}); }

    bool pair_banned(TagId a, TagId b) const { return pairs_.count({a, b}) != 0; }
    bool triple_banned(TagId a, TagId b, TagId c) const { return triples_.count({a, b, c}) != 0; }

    std::size_t size() const { return pairs_.size() + triples_.size(); }
    const std::set<std::array<TagId, 2>>& pairs() const { return pairs_; }
    const std::set<std::array<TagId, 3>>& triples() const { return triples_; }

private:
    std::set<std::array<TagId, 2>> pairs_;
    std::set<std::array<TagId, 3>> triples_;
};

// true iff the window (length 2 or 3) is a banned entry.
bool check_prohibited(std::span<const TagId> window, const ProhibitionTable& table);

ProhibitionTable load_prohibitions(const std::string& path, const TagSet& tagset);

struct GenLimits {
    int max_presubject = 15;
    int max_subject = 12;
    int truncate_after = 3;  // words kept beyond the close hypertag
    std::size_t max_candidates = 10000;
};

/// All candidate strings for a lattice: every legal hypertag placement x
/// every tag disambiguation of the covered tokens, with prohibited
/// prefixes abandoned during generation. Deterministic order:
/// placement-major, then lexicographic by TagId choice.
std::vector<CandidateString> generate_candidates(const TagLattice& lattice,
                                                 const GenLimits& limits,
                                                 const ProhibitionTable& table,
                                                 const TagSet& tagset);

// Space-joined tag names, e.g. "STRT OPEN pred CLOSE endp".
std::string render_tags(const CandidateString& c, const TagSet& tagset);

}  // namespace subjparse

#endif
