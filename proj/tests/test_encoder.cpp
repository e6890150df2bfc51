#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "subjparse/encoder.hpp"
#include "subjparse/errors.hpp"

using namespace subjparse;

TEST_CASE("dimensions follow the mode formula") {
    CHECK(TupleIndex(TupleMode::Pairs, 22).dim() == 484);
    CHECK(TupleIndex(TupleMode::Triples, 22).dim() == 10648);
    CHECK(TupleIndex(TupleMode::Both, 22).dim() == 11132);
    CHECK(TupleIndex(TupleMode::Both, 4).dim() == 16 + 64);
}

TEST_CASE("decode is the inverse of encode") {
    TupleIndex idx(TupleMode::Both, 22);
    CHECK(idx.decode(0) == std::vector<TagId>{0, 0});
    CHECK(idx.decode(484) == std::vector<TagId>{0, 0, 0});
    CHECK(idx.decode(11131) == std::vector<TagId>{21, 21, 21});
    CHECK_THROWS_AS(idx.decode(11132), DataError);

    SUBCASE("exhaustive round-trip for small m") {
        TupleIndex small(TupleMode::Both, 5);
        for (TagId a = 0; a < 5; ++a)
            for (TagId b = 0; b < 5; ++b) {
                CHECK(small.decode(small.encode_pair(a, b)) == std::vector<TagId>{a, b});
                for (TagId c = 0; c < 5; ++c)
                    CHECK(small.decode(small.encode_triple(a, b, c)) ==
                          std::vector<TagId>{a, b, c});
            }
    }

    SUBCASE("random sampling for m = 22") {
        std::mt19937 rng(11);
        for (int i = 0; i < 500; ++i) {
            TagId a = rng() % 22, b = rng() % 22, c = rng() % 22;
            CHECK(idx.decode(idx.encode_pair(a, b)) == std::vector<TagId>{a, b});
            CHECK(idx.decode(idx.encode_triple(a, b, c)) == std::vector<TagId>{a, b, c});
        }
    }
}

TEST_CASE("phi extracts adjacent tuples as a set") {
    Context ctx = testutil::default_context();
    TagId strt = ctx.tagset.start_id(), open = ctx.tagset.open_id(), close = ctx.tagset.close_id();
    TagId pred = ctx.tagset.id("pred"), noun = ctx.tagset.id("noun");

    SUBCASE("stage-C pairs for the short prefix") {
        TupleIndex idx(TupleMode::Pairs, ctx.tagset.m());
        std::vector<TagId> seq{strt, open, pred, close};
        auto v = phi(seq, idx);
        std::vector<std::uint32_t> expected{idx.encode_pair(strt, open),
                                            idx.encode_pair(open, pred),
                                            idx.encode_pair(pred, close)};
        std::sort(expected.begin(), expected.end());
        CHECK(v.active == expected);
    }

    SUBCASE("repeated tags map to a single triple bit") {
        TupleIndex idx(TupleMode::Triples, ctx.tagset.m());
        std::vector<TagId> seq{noun, noun, noun};
        auto v = phi(seq, idx);
        CHECK(v.active == std::vector<std::uint32_t>{idx.encode_triple(noun, noun, noun)});
    }

    SUBCASE("presence not count: abab has exactly 2 pair bits") {
        TupleIndex idx(TupleMode::Pairs, ctx.tagset.m());
        std::vector<TagId> seq{pred, noun, pred, noun};
        auto v = phi(seq, idx);
        CHECK(v.active.size() == 2);
    }

    SUBCASE("order sensitivity") {
        TupleIndex idx(TupleMode::Both, ctx.tagset.m());
        std::vector<TagId> abc{open, pred, noun};
        std::vector<TagId> cba{noun, pred, open};
        CHECK(phi(abc, idx).active != phi(cba, idx).active);
    }

    SUBCASE("errors") {
        TupleIndex idx(TupleMode::Both, ctx.tagset.m());
        std::vector<TagId> two{noun, noun};
        CHECK_THROWS_AS(phi(two, idx), DataError);  // both mode needs l >= 3
        std::vector<TagId> bad{noun, static_cast<TagId>(22), noun};
        CHECK_THROWS_AS(phi(bad, idx), DataError);
    }
}

TEST_CASE("phi active-bit bound and determinism") {
    TupleIndex idx(TupleMode::Both, 22);
    std::mt19937 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t l = 3 + rng() % 12;
        std::vector<TagId> seq;
        for (std::size_t i = 0; i < l; ++i) seq.push_back(rng() % 22);
        auto v = phi(seq, idx);
        CHECK(v.active.size() <= (l - 1) + (l - 2));
        CHECK(std::is_sorted(v.active.begin(), v.active.end()));
        CHECK(phi(seq, idx) == v);
    }
}
