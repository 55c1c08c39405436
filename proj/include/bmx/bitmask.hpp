// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bmx/counters.hpp"
#include "bmx/expander.hpp"
#include "bmx/field.hpp"
#include "bmx/rational.hpp"
#include "bmx/sparse_vector.hpp"

namespace bmx {

/// Bit width used by the masked rows: lambda = ceil(log2 n), at least 1.
/// Bit t = 0 is the least significant bit.
struct BitLayout {
    std::uint32_t bit_count = 1;  // lambda

    static BitLayout for_length(std::uint64_t n);

    friend bool operator==(const BitLayout&, const BitLayout&) = default;
};

/// t-th least significant bit of an index.
constexpr std::uint32_t bin_bit(std::uint64_t index, std::uint32_t t) noexcept {
    return std::uint32_t((index >> t) & 1);
}

/// The syndrome of a vector v against the layered parity-check structure:
/// a plain part (per seed s, the length-M block W_s * v, row q at offset
/// s*M + q) and a masked part (per seed, the length-M*lambda block
/// (W_s (x) B) * v, entry (s, q, t) at offset s*M*lambda + q*lambda + t).
/// This seed-major layout is normative and is what gets serialized.
class Syndrome {
public:
    Syndrome(Field field, std::uint64_t vector_length, std::uint32_t seed_count,
             std::uint32_t layer_size, BitLayout layout);

    const Field& field() const noexcept { return field_; }
    std::uint64_t vector_length() const noexcept { return n_; }
    std::uint32_t seed_count() const noexcept { return seeds_; }
    std::uint32_t layer_size() const noexcept { return rows_; }
    BitLayout layout() const noexcept { return layout_; }

    std::span<const std::uint64_t> plain_block(std::uint32_t s) const;
    std::span<const std::uint64_t> masked_block(std::uint32_t s) const;
    std::span<std::uint64_t> plain_block(std::uint32_t s);
    std::span<std::uint64_t> masked_block(std::uint32_t s);

    std::uint64_t& plain_at(std::uint32_t s, std::uint32_t q) {
        return plain_[std::uint64_t(s) * rows_ + q];
    }
    std::uint64_t& masked_at(std::uint32_t s, std::uint32_t q, std::uint32_t t) {
        return masked_[(std::uint64_t(s) * rows_ + q) * layout_.bit_count + t];
    }
    std::uint64_t plain_at(std::uint32_t s, std::uint32_t q) const {
        return plain_[std::uint64_t(s) * rows_ + q];
    }
    std::uint64_t masked_at(std::uint32_t s, std::uint32_t q, std::uint32_t t) const {
        return masked_[(std::uint64_t(s) * rows_ + q) * layout_.bit_count + t];
    }

    const std::vector<std::uint64_t>& plain() const noexcept { return plain_; }
    const std::vector<std::uint64_t>& masked() const noexcept { return masked_; }

    bool is_zero() const noexcept;

    friend bool operator==(const Syndrome&, const Syndrome&) = default;

private:
    Field field_;
    std::uint64_t n_;
    std::uint32_t seeds_;
    std::uint32_t rows_;
    BitLayout layout_;
    std::vector<std::uint64_t> plain_;   // seeds * rows
    std::vector<std::uint64_t> masked_;  // seeds * rows * bit_count
};

/// Syndrome of a sparse vector, O(weight * D * lambda) plus output init.
Syndrome syndrome_of_sparse(const LayeredExpander& g, BitLayout layout, const SparseVector& v,
                            OpCounters* counters = nullptr);

/// In-place syn -= syndrome_of_sparse(y). Over GF(2) this equals addition.
void subtract_sparse_in_place(Syndrome& syn, const LayeredExpander& g, const SparseVector& y,
                              OpCounters* counters = nullptr);

/// Value-returning form of the residual update.
Syndrome subtract_sparse_from_syndrome(const Syndrome& syn, const LayeredExpander& g,
                                       const SparseVector& y, OpCounters* counters = nullptr);

/// Plain product W_s * x for dense x into out (length M, zeroed here).
/// Branchless: one table lookup and one field add per column.
void dense_plain_product(const LayeredExpander& g, std::uint32_t seed_index,
                         std::span<const std::uint64_t> x, const Field& field,
                         std::span<std::uint64_t> out, OpCounters* counters = nullptr);

/// Masked product (W_s (x) B) * x for dense x into out (length M*lambda,
/// zeroed here). Branchless: lambda multiply-accumulate steps per column.
void dense_masked_product(const LayeredExpander& g, BitLayout layout, std::uint32_t seed_index,
                          std::span<const std::uint64_t> x, const Field& field,
                          std::span<std::uint64_t> out, OpCounters* counters = nullptr);

/// Full syndrome of a dense vector; O(N * lambda) per seed.
Syndrome full_syndrome_of_dense(const LayeredExpander& g, BitLayout layout,
                                std::span<const std::uint64_t> x, const Field& field,
                                OpCounters* counters = nullptr);

/// Exact rate lower bound 1 - D*M*(1 + lambda)/N. May be negative at desk
/// scale and is reported as-is.
Rational rate_lower_bound(const ExpanderParams& params, BitLayout layout);

}  // namespace bmx
