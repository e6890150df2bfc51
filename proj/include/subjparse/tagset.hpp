#ifndef SUBJPARSE_TAGSET_HPP
#define SUBJPARSE_TAGSET_HPP

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace subjparse {

using TagId = std::uint16_t;

/// Closed tag inventory: the POS tags from the tagset file plus three
/// reserved symbols appended at the end (sentence start and the two
/// subject-boundary hypertags).
class TagSet {
public:
    static constexpr const char* kStartName = "STRT";
    static constexpr const char* kOpenName = "OPEN";
    static constexpr const char* kCloseName = "CLOSE";

    explicit TagSet(std::vector<std::string> pos_tags);

    TagId start_id() const { return start_id_; }
    TagId open_id() const { return open_id_; }
    TagId close_id() const { return close_id_; }

    // Total symbol count: POS tags + 3 reserved.
    std::size_t m() const { return names_.size(); }
    std::size_t pos_count() const { return names_.size() - 3; }

    bool is_reserved(TagId t) const { return t >= pos_count(); }
    bool is_pos(TagId t) const { return t < pos_count(); }

    const std::string& name(TagId t) const { return names_.at(t); }
    // Lookup by name; throws DataError if absent.
    TagId id(const std::string& name) const;
    bool contains(const std::string& name) const;

    const std::vector<std::string>& names() const { return names_; }

private:
    std::vector<std::string> names_;
    std::map<std::string, TagId> by_name_;
    TagId start_id_ = 0, open_id_ = 0, close_id_ = 0;
};

/// Word -> candidate POS tags. Unknown words fall back to a configurable
/// open-class set.
class Lexicon {
public:
    Lexicon(std::map<std::string, std::set<TagId>> entries, std::set<TagId> fallback,
            bool fold_case = true)
        : entries_(std::move(entries)), fallback_(std::move(fallback)), fold_case_(fold_case) {}

    const std::set<TagId>* lookup(const std::string& word) const;
    const std::set<TagId>& fallback() const { return fallback_; }
    bool fold_case() const { return fold_case_; }
    std::size_t size() const { return entries_.size(); }

private:
    std::map<std::string, std::set<TagId>> entries_;
    std::set<TagId> fallback_;
    bool fold_case_;
};

/// Per-sentence ambiguous tagging: one non-empty candidate set per token.
struct TagLattice {
    std::vector<std::string> words;
    std::vector<std::vector<TagId>> slots;  // sorted, unique, POS tags only
    std::size_t unknown_words = 0;

    std::size_t size() const { return words.size(); }
    // Fraction of tokens with more than one candidate tag.
    double ambiguity_rate() const;
};

TagSet load_tagset(const std::string& path);
Lexicon load_lexicon(const std::string& path, const TagSet& tagset,
                     const std::set<TagId>& fallback);
TagLattice tag_sentence(const Lexicon& lexicon, const std::vector<std::string>& tokens);

// Whitespace split with detachment of trailing/leading punctuation as
// separate tokens.
std::vector<std::string> tokenize(const std::string& text);

std::string lowercase(std::string s);

}  // namespace subjparse

#endif
