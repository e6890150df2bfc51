#include "subjparse/candidates.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "subjparse/errors.hpp"

namespace subjparse {

bool check_prohibited(std::span<const TagId> window, const ProhibitionTable& table) {
    if (window.size() == 2) return table.pair_banned(window[0], window[1]);
    if (window.size() == 3) return table.triple_banned(window[0], window[1], window[2]);
    throw DataError("prohibition window must have length 2 or 3");
}

ProhibitionTable load_prohibitions(const std::string& path, const TagSet& tagset) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open prohibition table: " + path);
    ProhibitionTable table;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ss(line);
        std::string kind;
        if (!(ss >> kind)) continue;
        auto where = path + ":" + std::to_string(lineno);
        std::vector<TagId> ids;
        std::string name;
        while (ss >> name) ids.push_back(tagset.id(name));
        if (kind == "P" && ids.size() == 2) {
            table.ban_pair(ids[0], ids[1]);
        } else if (kind == "T" && ids.size() == 3) {
            table.ban_triple(ids[0], ids[1], ids[2]);
        } else {
            throw DataError(where + ": expected 'P tag tag' or 'T tag tag tag'");
        }
    }
    return table;
}

namespace {

// Shared state for one generation call.
struct Gen {
    const TagLattice& lattice;
    const GenLimits& limits;
    const ProhibitionTable& table;
    const TagSet& tagset;
    std::vector<CandidateString>& out;

    std::vector<TagId> tags;
    std::vector<int> word_of;
    int open_word = 0, close_word = 0;
    std::size_t covered = 0;

    // false if appending would create a banned pair/triple.
    bool push(TagId t, int word) {
        std::size_t n = tags.size();
        if (n >= 1 && table.pair_banned(tags[n - 1], t)) return false;
        if (n >= 2 && table.triple_banned(tags[n - 2], tags[n - 1], t)) return false;
        tags.push_back(t);
        word_of.push_back(word);
        return true;
    }

    void pop() {
        tags.pop_back();
        word_of.pop_back();
    }

    void emit() {
        if (out.size() >= limits.max_candidates)
            throw DataError("candidate generation exceeded max_candidates (" +
                            std::to_string(limits.max_candidates) + ")");
        CandidateString c;
        c.tags = tags;
        c.word_of = word_of;
        c.open_word = open_word;
        c.close_word = close_word;
        if (covered < lattice.size()) c.truncated_at = covered;
        out.push_back(std::move(c));
    }

    // Extend with word `i`, inserting hypertags at their placement points.
    void step(std::size_t i) {
        if (i == covered) {
            emit();
            return;
        }
        bool opened = false, closed = false;
        if (static_cast<int>(i) == open_word) {
            if (!push(tagset.open_id(), -1)) return;
            opened = true;
        }
        if (static_cast<int>(i) == close_word) {
            if (!push(tagset.close_id(), -1)) {
                if (opened) pop();
                return;
            }
            closed = true;
        }
        for (TagId t : lattice.slots[i]) {
            if (!push(t, static_cast<int>(i))) continue;
            step(i + 1);
            pop();
        }
        if (closed) pop();
        if (opened) pop();
    }
};

}  // namespace

std::vector<CandidateString> generate_candidates(const TagLattice& lattice,
                                                 const GenLimits& limits,
                                                 const ProhibitionTable& table,
                                                 const TagSet& tagset) {
    if (lattice.size() == 0) throw DataError("cannot generate candidates for empty lattice");
    std::vector<CandidateString> out;
    int len = static_cast<int>(lattice.size());
    // open after 0..max_presubject words; subject of 1..max_subject words;
    // close strictly before the final token so a predicate exists.
    for (int p = 0; p <= std::min(limits.max_presubject, len - 2); ++p) {
        for (int q = p + 1; q <= std::min(p + limits.max_subject, len - 1); ++q) {
            Gen gen{lattice, limits, table, tagset, out};
            gen.open_word = p;
            gen.close_word = q;
            gen.covered = std::min<std::size_t>(lattice.size(),
                                                static_cast<std::size_t>(q) + limits.truncate_after);
            if (!gen.push(tagset.start_id(), -1)) continue;
            gen.step(0);
        }
    }
    return out;
}

std::string render_tags(const CandidateString& c, const TagSet& tagset) {
    std::string s;
    for (std::size_t i = 0; i < c.tags.size(); ++i) {
        if (i) s += ' ';
        s += tagset.name(c.tags[i]);
    }
    return s;
}

}  // namespace subjparse
