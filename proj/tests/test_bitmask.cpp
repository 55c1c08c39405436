// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <vector>

#include "bmx/bitmask.hpp"
#include "bmx/rng.hpp"
#include "oracles.hpp"

using namespace bmx;

namespace {

LayeredExpander test_graph(std::uint64_t n, std::uint32_t d, std::uint32_t m, std::uint64_t seed) {
    return LayeredExpander::sample(ExpanderParams{n, d, m, 2, Rational(1, 4)}, seed);
}

}  // namespace

TEST_CASE("bin_bit") {
    CHECK(bin_bit(6, 0) == 0);  // 6 = 110b
    CHECK(bin_bit(6, 1) == 1);
    CHECK(bin_bit(6, 2) == 1);
    for (std::uint32_t t = 0; t < 8; ++t) CHECK(bin_bit(0, t) == 0);
}

TEST_CASE("bit layout width") {
    CHECK(BitLayout::for_length(2).bit_count == 1);
    CHECK(BitLayout::for_length(8).bit_count == 3);
    CHECK(BitLayout::for_length(9).bit_count == 4);
    CHECK(BitLayout::for_length(1 << 20).bit_count == 20);
    CHECK_THROWS_AS(BitLayout::for_length(1), std::invalid_argument);
}

TEST_CASE("zero vector gives the zero syndrome") {
    auto g = test_graph(8, 2, 4, 1);
    auto layout = BitLayout::for_length(8);
    auto syn = syndrome_of_sparse(g, layout, SparseVector(Field::gf2()));
    CHECK(syn.is_zero());
    for (std::uint32_t s = 0; s < 2; ++s) {
        CHECK(syn.plain_block(s).size() == 4);
        CHECK(syn.masked_block(s).size() == 4 * 3);
    }
}

TEST_CASE("singleton support spells its binary expansion") {
    auto layout = BitLayout::for_length(8);
    for (Field f : {Field::gf2(), Field::gfp(7)}) {
        auto g = test_graph(8, 2, 4, 5);
        const std::uint64_t u = 6;
        const std::uint64_t a = f.is_gf2() ? 1 : 4;
        auto v = SparseVector::from_pairs(f, {{u, a}});
        auto syn = syndrome_of_sparse(g, layout, v);
        for (std::uint32_t s = 0; s < 2; ++s) {
            std::uint32_t q = g.neighbor(u, s);
            std::uint64_t nonsilent = 0;
            for (std::uint32_t row = 0; row < 4; ++row) {
                bool silent = syn.plain_at(s, row) == 0;
                for (std::uint32_t t = 0; t < 3; ++t)
                    silent = silent && syn.masked_at(s, row, t) == 0;
                if (!silent) ++nonsilent;
            }
            CHECK(nonsilent == 1);
            CHECK(syn.plain_at(s, q) == a);
            for (std::uint32_t t = 0; t < 3; ++t)
                CHECK(syn.masked_at(s, q, t) == (bin_bit(u, t) ? a : 0));
        }
    }
}

TEST_CASE("sparse syndrome equals the dense oracle") {
    auto g = test_graph(8, 2, 4, 7);
    auto layout = BitLayout::for_length(8);
    auto v = SparseVector::from_pairs(Field::gf2(), {{3, 1}, {5, 1}});
    CHECK(syndrome_of_sparse(g, layout, v) == oracle::dense_syndrome(g, layout, v));
}

TEST_CASE("seed slices view the normative layout") {
    auto g = test_graph(16, 3, 8, 9);
    auto layout = BitLayout::for_length(16);
    bmx::Rng rng(4);
    auto v = oracle::random_sparse(rng, Field::gfp(257), 16, 5);
    auto syn = syndrome_of_sparse(g, layout, v);
    std::vector<std::uint64_t> plain_cat, masked_cat;
    for (std::uint32_t s = 0; s < 3; ++s) {
        auto pb = syn.plain_block(s);
        auto mb = syn.masked_block(s);
        CHECK(pb.size() == 8);
        CHECK(mb.size() == 8 * 4);
        plain_cat.insert(plain_cat.end(), pb.begin(), pb.end());
        masked_cat.insert(masked_cat.end(), mb.begin(), mb.end());
    }
    CHECK(plain_cat == syn.plain());
    CHECK(masked_cat == syn.masked());
    CHECK_THROWS_AS(syn.plain_block(3), std::out_of_range);
}

TEST_CASE("residual subtraction") {
    auto g = test_graph(16, 4, 8, 13);
    auto layout = BitLayout::for_length(16);
    bmx::Rng rng(8);

    SUBCASE("subtracting zero changes nothing") {
        auto v = oracle::random_sparse(rng, Field::gf2(), 16, 4);
        auto syn = syndrome_of_sparse(g, layout, v);
        auto same = subtract_sparse_from_syndrome(syn, g, SparseVector(Field::gf2()));
        CHECK(same == syn);
    }
    SUBCASE("subtracting the generator zeroes the syndrome") {
        for (Field f : {Field::gf2(), Field::gfp(7)}) {
            auto e = oracle::random_sparse(rng, f, 16, 5);
            auto syn = syndrome_of_sparse(g, layout, e);
            CHECK(subtract_sparse_from_syndrome(syn, g, e).is_zero());
        }
    }
    SUBCASE("matches the dense oracle on the difference") {
        Field f = Field::gfp(7);
        for (int trial = 0; trial < 20; ++trial) {
            auto e = oracle::random_sparse(rng, f, 16, 4);
            auto y = oracle::random_sparse(rng, f, 16, 3);
            auto lhs = subtract_sparse_from_syndrome(syndrome_of_sparse(g, layout, e), g, y);
            CHECK(lhs == oracle::dense_syndrome(g, layout, e - y));
        }
    }
}

TEST_CASE("rate lower bound") {
    BitLayout twenty{20};
    ExpanderParams p{std::uint64_t{1} << 20, 40, 80, 8, Rational(1, 20)};
    CHECK(rate_lower_bound(p, twenty) == Rational(1, 1) - Rational(67200, 1 << 20));
    CHECK(rate_lower_bound(p, twenty) == Rational(7667, 8192));

    // boundary: D*M*(1+lambda) = N gives rate 0
    ExpanderParams boundary{84, 2, 6, 2, Rational(1, 4)};  // 2*6*7 = 84
    CHECK(rate_lower_bound(boundary, BitLayout{6}) == Rational(0, 1));

    ExpanderParams bigger = p;
    bigger.left_count <<= 1;
    CHECK(rate_lower_bound(p, twenty).less_than(rate_lower_bound(bigger, BitLayout{21})));
}

TEST_CASE("dense syndrome path") {
    auto g = test_graph(64, 4, 16, 21);
    auto layout = BitLayout::for_length(64);
    Field f = Field::gf2();

    SUBCASE("zero word") {
        std::vector<std::uint64_t> x(64, 0);
        CHECK(full_syndrome_of_dense(g, layout, x, f).is_zero());
    }
    SUBCASE("single nonzero matches the sparse path") {
        std::vector<std::uint64_t> x(64, 0);
        x[37] = 1;
        auto sparse = syndrome_of_sparse(g, layout, SparseVector::from_pairs(f, {{37, 1}}));
        CHECK(full_syndrome_of_dense(g, layout, x, f) == sparse);
    }
    SUBCASE("random word matches the dense oracle") {
        bmx::Rng rng(17);
        std::vector<std::uint64_t> x(64);
        for (auto& v : x) v = rng.below(2);
        CHECK(full_syndrome_of_dense(g, layout, x, f) == oracle::dense_syndrome(g, layout, x, f));
    }
}

TEST_CASE("syndrome linearity") {
    auto g = test_graph(32, 3, 8, 23);
    auto layout = BitLayout::for_length(32);
    bmx::Rng rng(29);
    for (Field f : {Field::gf2(), Field::gfp(257)}) {
        for (int trial = 0; trial < 50; ++trial) {
            auto u = oracle::random_sparse(rng, f, 32, 4);
            auto v = oracle::random_sparse(rng, f, 32, 3);
            std::uint64_t a = f.is_gf2() ? 1 : 1 + rng.below(f.modulus() - 1);
            std::vector<std::pair<std::uint64_t, std::uint64_t>> scaled;
            for (const auto& e : u.entries()) scaled.emplace_back(e.index, f.mul(a, e.value));
            auto au = SparseVector::from_pairs(f, std::move(scaled));
            auto lhs = syndrome_of_sparse(g, layout, au + v);

            auto syn_u = syndrome_of_sparse(g, layout, u);
            auto syn_v = syndrome_of_sparse(g, layout, v);
            Syndrome rhs(f, 32, 3, 8, layout);
            for (std::uint32_t s = 0; s < 3; ++s) {
                for (std::uint32_t q = 0; q < 8; ++q) {
                    rhs.plain_at(s, q) = f.add(f.mul(a, syn_u.plain_at(s, q)), syn_v.plain_at(s, q));
                    for (std::uint32_t t = 0; t < layout.bit_count; ++t)
                        rhs.masked_at(s, q, t) =
                            f.add(f.mul(a, syn_u.masked_at(s, q, t)), syn_v.masked_at(s, q, t));
                }
            }
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("unique-neighbor rows read out scaled expansions") {
    // Force vertex 11 to be alone on its row in layer 0 while 4 and 5 collide.
    std::vector<std::uint32_t> table(16 * 2);
    for (std::uint64_t j = 0; j < 16; ++j) {
        table[j * 2 + 0] = j == 11 ? 7 : std::uint32_t(j % 4);
        table[j * 2 + 1] = std::uint32_t(j % 8);
    }
    auto g = LayeredExpander::from_table(ExpanderParams{16, 2, 8, 2, Rational(1, 4)}, table);
    auto layout = BitLayout::for_length(16);
    Field f = Field::gfp(257);
    auto v = SparseVector::from_pairs(f, {{4, 9}, {5, 100}, {11, 42}});
    auto syn = syndrome_of_sparse(g, layout, v);
    CHECK(syn.plain_at(0, 7) == 42);
    for (std::uint32_t t = 0; t < 4; ++t)
        CHECK(syn.masked_at(0, 7, t) == (bin_bit(11, t) ? 42u : 0u));
}

TEST_CASE("sparse and dense syndromes agree") {
    auto g = test_graph(64, 4, 16, 31);
    auto layout = BitLayout::for_length(64);
    bmx::Rng rng(37);
    for (Field f : {Field::gf2(), Field::gfp(7)}) {
        auto v = oracle::random_sparse(rng, f, 64, 6);
        CHECK(syndrome_of_sparse(g, layout, v) ==
              full_syndrome_of_dense(g, layout, v.to_dense(64), f));
    }
}

TEST_CASE("out-of-range vector is rejected") {
    auto g = test_graph(8, 2, 4, 2);
    auto layout = BitLayout::for_length(8);
    auto v = SparseVector::from_pairs(Field::gf2(), {{9, 1}});
    CHECK_THROWS_AS(syndrome_of_sparse(g, layout, v), std::out_of_range);
}
