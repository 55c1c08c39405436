// SPDX-License-Identifier: Apache-2.0
#include "bmx/bitmask.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "bmx/errors.hpp"

namespace bmx {

BitLayout BitLayout::for_length(std::uint64_t n) {
    if (n < 2) throw std::invalid_argument("BitLayout: vector length must be >= 2");
    std::uint32_t lambda = std::uint32_t(std::bit_width(n - 1));
    return BitLayout{std::max<std::uint32_t>(lambda, 1)};
}

Syndrome::Syndrome(Field field, std::uint64_t vector_length, std::uint32_t seed_count,
                   std::uint32_t layer_size, BitLayout layout)
    : field_(field), n_(vector_length), seeds_(seed_count), rows_(layer_size), layout_(layout) {
    if (seed_count == 0 || layer_size == 0)
        throw std::invalid_argument("Syndrome: empty dimensions");
    if ((std::uint64_t{1} << layout.bit_count) < vector_length)
        throw std::invalid_argument("Syndrome: bit layout too narrow for vector length");
    plain_.assign(std::uint64_t(seeds_) * rows_, 0);
    masked_.assign(std::uint64_t(seeds_) * rows_ * layout_.bit_count, 0);
}

std::span<const std::uint64_t> Syndrome::plain_block(std::uint32_t s) const {
    if (s >= seeds_) throw std::out_of_range("Syndrome::plain_block: seed out of range");
    return {plain_.data() + std::uint64_t(s) * rows_, rows_};
}

std::span<const std::uint64_t> Syndrome::masked_block(std::uint32_t s) const {
    if (s >= seeds_) throw std::out_of_range("Syndrome::masked_block: seed out of range");
    std::uint64_t width = std::uint64_t(rows_) * layout_.bit_count;
    return {masked_.data() + s * width, width};
}

std::span<std::uint64_t> Syndrome::plain_block(std::uint32_t s) {
    if (s >= seeds_) throw std::out_of_range("Syndrome::plain_block: seed out of range");
    return {plain_.data() + std::uint64_t(s) * rows_, rows_};
}

std::span<std::uint64_t> Syndrome::masked_block(std::uint32_t s) {
    if (s >= seeds_) throw std::out_of_range("Syndrome::masked_block: seed out of range");
    std::uint64_t width = std::uint64_t(rows_) * layout_.bit_count;
    return {masked_.data() + s * width, width};
}

bool Syndrome::is_zero() const noexcept {
    return std::all_of(plain_.begin(), plain_.end(), [](std::uint64_t v) { return v == 0; }) &&
           std::all_of(masked_.begin(), masked_.end(), [](std::uint64_t v) { return v == 0; });
}

namespace {

void check_compatible(const Syndrome& syn, const LayeredExpander& g) {
    const auto& p = g.params();
    if (syn.vector_length() != p.left_count || syn.seed_count() != p.seed_count ||
        syn.layer_size() != p.layer_size)
        throw std::invalid_argument("syndrome dimensions do not match the graph");
}

void check_vector(const LayeredExpander& g, BitLayout layout, const SparseVector& v) {
    if ((std::uint64_t{1} << layout.bit_count) < g.params().left_count)
        throw std::invalid_argument("bit layout too narrow for the graph");
    if (!v.entries().empty() && v.entries().back().index >= g.params().left_count)
        throw std::out_of_range("sparse vector index out of range for the graph");
}

// Accumulates +v or -v into the syndrome.
void accumulate_sparse(Syndrome& syn, const LayeredExpander& g, const SparseVector& v,
                       bool negate, OpCounters* counters) {
    if (syn.field() != v.field()) throw FieldMismatch("syndrome/vector field mismatch");
    const Field& f = syn.field();
    const std::uint32_t seeds = syn.seed_count();
    const std::uint32_t lambda = syn.layout().bit_count;
    OpCounters local;
    for (const auto& entry : v.entries()) {
        const std::uint64_t value = negate ? f.neg(entry.value) : entry.value;
        for (std::uint32_t s = 0; s < seeds; ++s) {
            const std::uint32_t q = g.neighbor_unchecked(entry.index, s);
            ++local.lookups;
            syn.plain_at(s, q) = f.add(syn.plain_at(s, q), value);
            ++local.field_ops;
            for (std::uint32_t t = 0; t < lambda; ++t) {
                if (bin_bit(entry.index, t)) {
                    syn.masked_at(s, q, t) = f.add(syn.masked_at(s, q, t), value);
                    ++local.field_ops;
                }
            }
        }
    }
    if (counters) *counters += local;
}

}  // namespace

Syndrome syndrome_of_sparse(const LayeredExpander& g, BitLayout layout, const SparseVector& v,
                            OpCounters* counters) {
    check_vector(g, layout, v);
    const auto& p = g.params();
    Syndrome syn(v.field(), p.left_count, p.seed_count, p.layer_size, layout);
    accumulate_sparse(syn, g, v, false, counters);
    return syn;
}

void subtract_sparse_in_place(Syndrome& syn, const LayeredExpander& g, const SparseVector& y,
                              OpCounters* counters) {
    check_compatible(syn, g);
    check_vector(g, syn.layout(), y);
    accumulate_sparse(syn, g, y, true, counters);
}

Syndrome subtract_sparse_from_syndrome(const Syndrome& syn, const LayeredExpander& g,
                                       const SparseVector& y, OpCounters* counters) {
    Syndrome out = syn;
    subtract_sparse_in_place(out, g, y, counters);
    return out;
}

void dense_plain_product(const LayeredExpander& g, std::uint32_t seed_index,
                         std::span<const std::uint64_t> x, const Field& field,
                         std::span<std::uint64_t> out, OpCounters* counters) {
    const auto& p = g.params();
    if (x.size() != p.left_count) throw std::invalid_argument("dense_plain_product: bad length");
    if (out.size() != p.layer_size) throw std::invalid_argument("dense_plain_product: bad output");
    if (seed_index >= p.seed_count)
        throw std::out_of_range("dense_plain_product: seed out of range");
    std::fill(out.begin(), out.end(), 0);
    for (std::uint64_t j = 0; j < p.left_count; ++j) {
        const std::uint32_t q = g.neighbor_unchecked(j, seed_index);
        out[q] = field.add(out[q], x[j]);
    }
    if (counters) {
        counters->lookups += p.left_count;
        counters->field_ops += p.left_count;
    }
}

void dense_masked_product(const LayeredExpander& g, BitLayout layout, std::uint32_t seed_index,
                          std::span<const std::uint64_t> x, const Field& field,
                          std::span<std::uint64_t> out, OpCounters* counters) {
    const auto& p = g.params();
    const std::uint32_t lambda = layout.bit_count;
    if (x.size() != p.left_count) throw std::invalid_argument("dense_masked_product: bad length");
    if (out.size() != std::uint64_t(p.layer_size) * lambda)
        throw std::invalid_argument("dense_masked_product: bad output");
    if (seed_index >= p.seed_count)
        throw std::out_of_range("dense_masked_product: seed out of range");
    std::fill(out.begin(), out.end(), 0);
    for (std::uint64_t j = 0; j < p.left_count; ++j) {
        const std::uint64_t v = x[j];
        const std::uint64_t base = std::uint64_t(g.neighbor_unchecked(j, seed_index)) * lambda;
        for (std::uint32_t t = 0; t < lambda; ++t) {
            const std::uint64_t product = bin_bit(j, t) ? v : 0;
            out[base + t] = field.add(out[base + t], product);
        }
    }
    if (counters) {
        const std::uint64_t ops = 2 * std::uint64_t(p.left_count) * lambda;
        counters->lookups += p.left_count;
        counters->field_ops += ops;
        counters->masked_field_ops += ops;
    }
}

Syndrome full_syndrome_of_dense(const LayeredExpander& g, BitLayout layout,
                                std::span<const std::uint64_t> x, const Field& field,
                                OpCounters* counters) {
    const auto& p = g.params();
    if ((std::uint64_t{1} << layout.bit_count) < p.left_count)
        throw std::invalid_argument("full_syndrome_of_dense: bit layout too narrow");
    Syndrome syn(field, p.left_count, p.seed_count, p.layer_size, layout);
    for (std::uint32_t s = 0; s < p.seed_count; ++s) {
        dense_plain_product(g, s, x, field, syn.plain_block(s), counters);
        dense_masked_product(g, layout, s, x, field, syn.masked_block(s), counters);
    }
    return syn;
}

Rational rate_lower_bound(const ExpanderParams& params, BitLayout layout) {
    unsigned __int128 redundancy = (unsigned __int128)params.seed_count * params.layer_size *
                                   (std::uint64_t(layout.bit_count) + 1);
    __int128 num = __int128(params.left_count) - __int128(redundancy);
    if (num > INT64_MAX || num < INT64_MIN)
        throw std::overflow_error("rate_lower_bound: out of range");
    return Rational(std::int64_t(num), params.left_count);
}

}  // namespace bmx
