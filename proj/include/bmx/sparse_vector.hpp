// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "bmx/field.hpp"

namespace bmx {

struct SparseEntry {
    std::uint64_t index;
    std::uint64_t value;  // canonical, nonzero

    friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

/// Sparse vector over a field: strictly increasing indices, no stored zeros.
class SparseVector {
public:
    explicit SparseVector(Field field) : field_(field) {}

    /// Builds from (index, value) pairs in any order. Values are reduced and
    /// zeros dropped; duplicate indices are rejected.
    static SparseVector from_pairs(Field field,
                                   std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs);

    const std::vector<SparseEntry>& entries() const noexcept { return entries_; }
    std::uint64_t weight() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    const Field& field() const noexcept { return field_; }

    /// Value at an index, zero when absent. O(log weight).
    std::uint64_t value_at(std::uint64_t index) const;

    SparseVector operator+(const SparseVector& other) const;
    SparseVector operator-(const SparseVector& other) const;
    SparseVector negated() const;

    /// Scatters into a dense length-n array.
    std::vector<std::uint64_t> to_dense(std::uint64_t n) const;

    /// Gathers nonzeros of a dense array.
    static SparseVector from_dense(Field field, const std::vector<std::uint64_t>& dense);

    friend bool operator==(const SparseVector&, const SparseVector&) = default;

private:
    SparseVector merge(const SparseVector& other, bool negate_other) const;

    std::vector<SparseEntry> entries_;
    Field field_;
};

}  // namespace bmx
