// SPDX-License-Identifier: Apache-2.0
// Test-only reference implementations: literal dense products and helpers
// used to cross-check the sparse production paths. Everything here is
// deliberately written the slow, obvious way.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bmx/bitmask.hpp"
#include "bmx/expander.hpp"
#include "bmx/field.hpp"
#include "bmx/group_testing.hpp"
#include "bmx/rng.hpp"
#include "bmx/sparse_vector.hpp"

namespace oracle {

// Syndrome assembled entry by entry as textbook dot products of the dense
// parity rows against x: plain (s,q) = sum_j [C(j,s)=q] * x_j and masked
// (s,q,t) = sum_j [C(j,s)=q] * bit_t(j) * x_j.
inline bmx::Syndrome dense_syndrome(const bmx::LayeredExpander& g, bmx::BitLayout layout,
                                    std::span<const std::uint64_t> x, const bmx::Field& f) {
    const auto& p = g.params();
    bmx::Syndrome syn(f, p.left_count, p.seed_count, p.layer_size, layout);
    for (std::uint32_t s = 0; s < p.seed_count; ++s) {
        for (std::uint32_t q = 0; q < p.layer_size; ++q) {
            std::uint64_t plain = 0;
            for (std::uint64_t j = 0; j < p.left_count; ++j) {
                std::uint64_t w = g.neighbor(j, s) == q ? 1 : 0;
                plain = f.add(plain, f.mul(w, x[j]));
            }
            syn.plain_at(s, q) = plain;
            for (std::uint32_t t = 0; t < layout.bit_count; ++t) {
                std::uint64_t acc = 0;
                for (std::uint64_t j = 0; j < p.left_count; ++j) {
                    std::uint64_t w = g.neighbor(j, s) == q ? 1 : 0;
                    std::uint64_t b = (j >> t) & 1;
                    acc = f.add(acc, f.mul(f.mul(w, b), x[j]));
                }
                syn.masked_at(s, q, t) = acc;
            }
        }
    }
    return syn;
}

inline bmx::Syndrome dense_syndrome(const bmx::LayeredExpander& g, bmx::BitLayout layout,
                                    const bmx::SparseVector& v) {
    return dense_syndrome(g, layout, v.to_dense(g.params().left_count), v.field());
}

// Boolean outcomes computed from a fully materialized dense test matrix.
inline bmx::OutcomeVector boolean_outcomes(const bmx::DisjunctMatrix& m, bmx::BitLayout layout,
                                           std::span<const std::uint64_t> defectives) {
    std::vector<std::vector<std::uint8_t>> dense(m.tests(),
                                                 std::vector<std::uint8_t>(m.items(), 0));
    for (std::uint32_t q = 0; q < m.tests(); ++q)
        for (std::uint32_t j : m.row_support(q)) dense[q][j] = 1;
    std::vector<std::uint8_t> defective(m.items(), 0);
    for (std::uint64_t j : defectives) defective[j] = 1;

    bmx::OutcomeVector out;
    out.items = m.items();
    out.tests = m.tests();
    out.bit_count = layout.bit_count;
    out.pooled.assign(out.tests, 0);
    out.masked.assign(std::uint64_t(out.tests) * out.bit_count, 0);
    for (std::uint32_t q = 0; q < m.tests(); ++q) {
        for (std::uint64_t j = 0; j < m.items(); ++j)
            if (dense[q][j] && defective[j]) out.pooled[q] = 1;
        for (std::uint32_t t = 0; t < out.bit_count; ++t) {
            std::uint8_t bit = 0;
            for (std::uint64_t j = 0; j < m.items(); ++j)
                if (dense[q][j] && defective[j] && ((j >> t) & 1)) bit = 1;
            out.masked[std::uint64_t(q) * out.bit_count + t] = bit;
        }
    }
    return out;
}

// Uniform weight-w vector with distinct indices; values are 1 over GF(2)
// and uniform nonzero otherwise.
inline bmx::SparseVector random_sparse(bmx::Rng& rng, const bmx::Field& f, std::uint64_t n,
                                       std::uint64_t weight) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
    while (pairs.size() < weight) {
        std::uint64_t j = rng.below(n);
        bool fresh = true;
        for (const auto& pr : pairs)
            if (pr.first == j) fresh = false;
        if (!fresh) continue;
        std::uint64_t v = f.is_gf2() ? 1 : 1 + rng.below(f.modulus() - 1);
        pairs.emplace_back(j, v);
    }
    return bmx::SparseVector::from_pairs(f, std::move(pairs));
}

// Calls fn with every size-k subset of [n], in lexicographic order.
template <typename Fn>
inline void for_each_subset(std::uint64_t n, std::uint64_t k, Fn&& fn) {
    std::vector<std::uint64_t> idx(k);
    for (std::uint64_t i = 0; i < k; ++i) idx[i] = i;
    if (k == 0 || k > n) return;
    for (;;) {
        fn(std::span<const std::uint64_t>(idx));
        std::uint64_t pos = k;
        while (pos > 0 && idx[pos - 1] == n - k + pos - 1) --pos;
        if (pos == 0) return;
        ++idx[pos - 1];
        for (std::uint64_t i = pos; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
}

}  // namespace oracle
