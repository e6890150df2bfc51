#ifndef SUBJPARSE_TEST_HELPERS_HPP
#define SUBJPARSE_TEST_HELPERS_HPP

#include <string>
#include <vector>

#include "subjparse/pipeline.hpp"

namespace testutil {

inline std::string data_path(const std::string& name) {
    return std::string(SUBJPARSE_DATA_DIR) + "/" + name;
}

inline subjparse::Config default_config() {
    subjparse::Config cfg;
    cfg.tagset_path = data_path("tagset.txt");
    cfg.lexicon_path = data_path("lexicon.tsv");
    cfg.prohibitions_path = data_path("prohibitions.txt");
    return cfg;
}

inline subjparse::Context default_context(const std::string& mode = "both",
                                          int truncate_after = 3) {
    subjparse::Config cfg = default_config();
    cfg.mode = mode;
    cfg.limits.truncate_after = truncate_after;
    return subjparse::Context::load(cfg);
}

// Independent brute-force enumerator used as the oracle for
// generate_candidates: enumerate every placement and every full tag
// assignment, build the whole string, then filter on banned tuples.
std::vector<subjparse::CandidateString> brute_force_candidates(
    const subjparse::TagLattice& lattice, const subjparse::GenLimits& limits,
    const subjparse::ProhibitionTable& table, const subjparse::TagSet& tagset);

}  // namespace testutil

#endif
