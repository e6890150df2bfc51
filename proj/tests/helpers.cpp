#include "helpers.hpp"

#include <algorithm>

namespace testutil {

using namespace subjparse;

namespace {

bool contains_banned(const std::vector<TagId>& tags, const ProhibitionTable& table) {
    for (std::size_t i = 0; i + 1 < tags.size(); ++i) {
        if (table.pair_banned(tags[i], tags[i + 1])) return true;
        if (i + 2 < tags.size() && table.triple_banned(tags[i], tags[i + 1], tags[i + 2]))
            return true;
    }
    return false;
}

// Odometer enumeration of one tag choice per covered slot.
void enumerate_assignments(const TagLattice& lattice, std::size_t covered, int p, int q,
                           const ProhibitionTable& table, const TagSet& tagset,
                           std::vector<CandidateString>& out) {
    std::vector<std::size_t> choice(covered, 0);
    for (;;) {
        CandidateString c;
        c.open_word = p;
        c.close_word = q;
        if (covered < lattice.size()) c.truncated_at = covered;
        c.tags.push_back(tagset.start_id());
        c.word_of.push_back(-1);
        for (std::size_t i = 0; i < covered; ++i) {
            if (static_cast<int>(i) == p) {
                c.tags.push_back(tagset.open_id());
                c.word_of.push_back(-1);
            }
            if (static_cast<int>(i) == q) {
                c.tags.push_back(tagset.close_id());
                c.word_of.push_back(-1);
            }
            c.tags.push_back(lattice.slots[i][choice[i]]);
            c.word_of.push_back(static_cast<int>(i));
        }
        if (!contains_banned(c.tags, table)) out.push_back(std::move(c));

        std::size_t k = covered;
        while (k > 0) {
            --k;
            if (++choice[k] < lattice.slots[k].size()) break;
            choice[k] = 0;
            if (k == 0) return;
        }
        if (covered == 0) return;
    }
}

}  // namespace

std::vector<CandidateString> brute_force_candidates(const TagLattice& lattice,
                                                    const GenLimits& limits,
                                                    const ProhibitionTable& table,
                                                    const TagSet& tagset) {
    std::vector<CandidateString> out;
    int len = static_cast<int>(lattice.size());
    for (int p = 0; p <= std::min(limits.max_presubject, len - 2); ++p) {
        for (int q = p + 1; q <= std::min(p + limits.max_subject, len - 1); ++q) {
            std::size_t covered =
                std::min<std::size_t>(lattice.size(), static_cast<std::size_t>(q) + limits.truncate_after);
            enumerate_assignments(lattice, covered, p, q, table, tagset, out);
        }
    }
    return out;
}

}  // namespace testutil
