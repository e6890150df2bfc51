#include "subjparse/encoder.hpp"

#include <algorithm>

#include "subjparse/errors.hpp"

namespace subjparse {

TupleMode tuple_mode_from_string(const std::string& s) {
    if (s == "pairs") return TupleMode::Pairs;
    if (s == "triples") return TupleMode::Triples;
    if (s == "both") return TupleMode::Both;
    throw DataError("unknown tuple mode: " + s + " (expected pairs|triples|both)");
}

std::string to_string(TupleMode mode) {
    switch (mode) {
        case TupleMode::Pairs: return "pairs";
        case TupleMode::Triples: return "triples";
        case TupleMode::Both: return "both";
    }
    return "?";
}

TupleIndex::TupleIndex(TupleMode mode, std::size_t m) : mode_(mode), m_(m) {
    if (m < 1) throw DataError("TupleIndex requires m >= 1");
    switch (mode) {
        case TupleMode::Pairs:
            dim_ = m * m;
            triple_offset_ = 0;
            break;
        case TupleMode::Triples:
            dim_ = m * m * m;
            triple_offset_ = 0;
            break;
        case TupleMode::Both:
            dim_ = m * m + m * m * m;
            triple_offset_ = m * m;
            break;
    }
}

std::uint32_t TupleIndex::encode_pair(TagId a, TagId b) const {
    if (!uses_pairs()) throw DataError("pair encoding not available in triples mode");
    if (a >= m_ || b >= m_) throw DataError("TagId out of range for encode_pair");
    return static_cast<std::uint32_t>(a * m_ + b);
}

std::uint32_t TupleIndex::encode_triple(TagId a, TagId b, TagId c) const {
    if (!uses_triples()) throw DataError("triple encoding not available in pairs mode");
    if (a >= m_ || b >= m_ || c >= m_) throw DataError("TagId out of range for encode_triple");
    return static_cast<std::uint32_t>(triple_offset_ + a * m_ * m_ + b * m_ + c);
}

std::vector<TagId> TupleIndex::decode(std::uint32_t i) const {
    if (i >= dim_) throw DataError("tuple index out of range: " + std::to_string(i));
    std::size_t v = i;
    bool is_pair = uses_pairs() && v < m_ * m_;
    if (is_pair) {
        return {static_cast<TagId>(v / m_), static_cast<TagId>(v % m_)};
    }
    v -= triple_offset_;
    return {static_cast<TagId>(v / (m_ * m_)), static_cast<TagId>((v / m_) % m_),
            static_cast<TagId>(v % m_)};
}

std::string TupleIndex::tuple_name(std::uint32_t i, const TagSet& tagset) const {
    auto ids = decode(i);
    std::string s = "(";
    for (std::size_t k = 0; k < ids.size(); ++k) {
        if (k) s += ",";
        s += tagset.name(ids[k]);
    }
    return s + ")";
}

SparseBinaryVector phi(std::span<const TagId> sequence, const TupleIndex& index) {
    std::size_t l = sequence.size();
    std::size_t min_len = index.uses_triples() && !index.uses_pairs() ? 3 : 2;
    if (index.mode() == TupleMode::Both) min_len = 3;
    if (l < min_len)
        throw DataError("sequence too short for tuple mode " + to_string(index.mode()));
    for (TagId t : sequence)
        if (t >= index.m()) throw DataError("TagId out of range in phi input");

    SparseBinaryVector v;
    v.dim = index.dim();
    if (index.uses_pairs())
        for (std::size_t i = 0; i + 1 < l; ++i)
            v.active.push_back(index.encode_pair(sequence[i], sequence[i + 1]));
    if (index.uses_triples())
        for (std::size_t i = 0; i + 2 < l; ++i)
            v.active.push_back(index.encode_triple(sequence[i], sequence[i + 1], sequence[i + 2]));
    std::sort(v.active.begin(), v.active.end());
    v.active.erase(std::unique(v.active.begin(), v.active.end()), v.active.end());
    return v;
}

}  // namespace subjparse
