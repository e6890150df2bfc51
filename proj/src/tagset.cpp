#include "subjparse/tagset.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "subjparse/errors.hpp"

namespace subjparse {

std::string lowercase(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

namespace {

std::string strip(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// Drops comments and surrounding whitespace; empty result means skip.
std::string clean_line(const std::string& raw) {
    auto hash = raw.find('#');
    return strip(hash == std::string::npos ? raw : raw.substr(0, hash));
}

}  // namespace

TagSet::TagSet(std::vector<std::string> pos_tags) : names_(std::move(pos_tags)) {
    for (const auto& n : names_) {
        if (n.empty() || n.find_first_of(" \t") != std::string::npos)
            throw DataError("tag name empty or contains whitespace: '" + n + "'");
        if (n == kStartName || n == kOpenName || n == kCloseName)
            throw DataError("reserved tag name used as POS tag: " + n);
    }
    start_id_ = static_cast<TagId>(names_.size());
    open_id_ = static_cast<TagId>(names_.size() + 1);
    close_id_ = static_cast<TagId>(names_.size() + 2);
    names_.push_back(kStartName);
    names_.push_back(kOpenName);
    names_.push_back(kCloseName);
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (!by_name_.emplace(names_[i], static_cast<TagId>(i)).second)
            throw DataError("duplicate tag name: " + names_[i]);
    }
}

TagId TagSet::id(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) throw DataError("unknown tag name: " + name);
    return it->second;
}

bool TagSet::contains(const std::string& name) const { return by_name_.count(name) != 0; }

TagSet load_tagset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open tagset file: " + path);
    std::vector<std::string> tags;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto name = clean_line(line);
        if (name.empty()) continue;
        if (name == TagSet::kStartName || name == TagSet::kOpenName || name == TagSet::kCloseName)
            throw DataError(path + ":" + std::to_string(lineno) + ": reserved tag name " + name);
        if (std::find(tags.begin(), tags.end(), name) != tags.end())
            throw DataError(path + ":" + std::to_string(lineno) + ": duplicate tag name " + name);
        tags.push_back(name);
    }
    if (tags.empty()) throw DataError(path + ": empty tagset file");
    return TagSet(std::move(tags));
}

const std::set<TagId>* Lexicon::lookup(const std::string& word) const {
    auto it = entries_.find(fold_case_ ? lowercase(word) : word);
    return it == entries_.end() ? nullptr : &it->second;
}

Lexicon load_lexicon(const std::string& path, const TagSet& tagset,
                     const std::set<TagId>& fallback) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open lexicon file: " + path);
    std::map<std::string, std::set<TagId>> entries;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto cleaned = clean_line(line);
        if (cleaned.empty()) continue;
        auto where = path + ":" + std::to_string(lineno);
        auto tab = cleaned.find('\t');
        if (tab == std::string::npos) throw DataError(where + ": expected word<TAB>tags");
        std::string word = lowercase(strip(cleaned.substr(0, tab)));
        std::string taglist = strip(cleaned.substr(tab + 1));
        if (word.empty()) throw DataError(where + ": empty word");
        if (taglist.empty()) throw DataError(where + ": empty tag list");
        auto& slot = entries[word];
        std::stringstream ss(taglist);
        std::string tagname;
        while (std::getline(ss, tagname, ',')) {
            tagname = strip(tagname);
            if (tagname.empty()) throw DataError(where + ": empty tag name in list");
            if (!tagset.contains(tagname))
                throw DataError(where + ": unknown tag name: " + tagname);
            TagId t = tagset.id(tagname);
            if (tagset.is_reserved(t))
                throw DataError(where + ": reserved tag not allowed in lexicon: " + tagname);
            slot.insert(t);
        }
        if (slot.empty()) throw DataError(where + ": empty tag list");
    }
    return Lexicon(std::move(entries), fallback);
}

TagLattice tag_sentence(const Lexicon& lexicon, const std::vector<std::string>& tokens) {
    TagLattice lat;
    lat.words = tokens;
    lat.slots.reserve(tokens.size());
    for (const auto& w : tokens) {
        const std::set<TagId>* tags = lexicon.lookup(w);
        if (!tags) {
            tags = &lexicon.fallback();
            ++lat.unknown_words;
        }
        lat.slots.emplace_back(tags->begin(), tags->end());
    }
    return lat;
}

double TagLattice::ambiguity_rate() const {
    if (slots.empty()) return 0.0;
    std::size_t ambiguous = 0;
    for (const auto& s : slots)
        if (s.size() > 1) ++ambiguous;
    return static_cast<double>(ambiguous) / static_cast<double>(slots.size());
}

std::vector<std::string> tokenize(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream ss(text);
    std::string tok;
    auto is_punct = [](char c) {
        return c == '.' || c == ',' || c == ';' || c == ':' || c == '!' || c == '?';
    };
    while (ss >> tok) {
        std::size_t begin = 0;
        while (begin < tok.size() && is_punct(tok[begin])) out.emplace_back(1, tok[begin++]);
        std::size_t end = tok.size();
        std::vector<std::string> tail;
        while (end > begin && is_punct(tok[end - 1])) tail.emplace_back(1, tok[--end]);
        if (end > begin) out.push_back(tok.substr(begin, end - begin));
        out.insert(out.end(), tail.rbegin(), tail.rend());
    }
    return out;
}

}  // namespace subjparse
