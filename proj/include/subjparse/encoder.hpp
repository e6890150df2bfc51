#ifndef SUBJPARSE_ENCODER_HPP
#define SUBJPARSE_ENCODER_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "subjparse/tagset.hpp"

namespace subjparse {

enum class TupleMode { Pairs, Triples, Both };

TupleMode tuple_mode_from_string(const std::string& s);
std::string to_string(TupleMode mode);

/// Sparse binary vector over the fixed tuple universe: strictly increasing
/// active indices in [0, dim).
struct SparseBinaryVector {
    std::size_t dim = 0;
    std::vector<std::uint32_t> active;

    bool operator==(const SparseBinaryVector&) const = default;
};

/// Fixed arithmetic indexing of ordered adjacent tag tuples.
/// Pair (a,b) -> a*m+b; triple (a,b,c) -> offset + a*m^2 + b*m + c,
/// where offset is m^2 in Both mode and 0 in Triples mode.
class TupleIndex {
public:
    TupleIndex(TupleMode mode, std::size_t m);

    TupleMode mode() const { return mode_; }
    std::size_t m() const { return m_; }
    std::size_t dim() const { return dim_; }
    bool uses_pairs() const { return mode_ != TupleMode::Triples; }
    bool uses_triples() const { return mode_ != TupleMode::Pairs; }

    std::uint32_t encode_pair(TagId a, TagId b) const;
    std::uint32_t encode_triple(TagId a, TagId b, TagId c) const;

    // Inverse of the encode scheme: 2 or 3 TagIds.
    std::vector<TagId> decode(std::uint32_t i) const;

    std::string tuple_name(std::uint32_t i, const TagSet& tagset) const;

private:
    TupleMode mode_;
    std::size_t m_;
    std::size_t dim_;
    std::size_t triple_offset_;
};

/// The Phi transform: all adjacent ordered pairs/triples of the sequence as
/// a set (presence, not count).
SparseBinaryVector phi(std::span<const TagId> sequence, const TupleIndex& index);

}  // namespace subjparse

#endif
