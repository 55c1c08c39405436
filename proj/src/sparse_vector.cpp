// SPDX-License-Identifier: Apache-2.0
#include "bmx/sparse_vector.hpp"

#include <algorithm>
#include <stdexcept>

namespace bmx {

SparseVector SparseVector::from_pairs(
    Field field, std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs) {
    std::sort(pairs.begin(), pairs.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseVector v(field);
    v.entries_.reserve(pairs.size());
    for (const auto& [index, raw] : pairs) {
        if (!v.entries_.empty() && v.entries_.back().index == index)
            throw std::invalid_argument("SparseVector: duplicate index " + std::to_string(index));
        std::uint64_t value = field.reduce(raw);
        if (value != 0) v.entries_.push_back({index, value});
    }
    return v;
}

std::uint64_t SparseVector::value_at(std::uint64_t index) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                               [](const SparseEntry& e, std::uint64_t i) { return e.index < i; });
    return it != entries_.end() && it->index == index ? it->value : 0;
}

SparseVector SparseVector::merge(const SparseVector& other, bool negate_other) const {
    if (field_ != other.field_) throw FieldMismatch("SparseVector: mixed-field arithmetic");
    SparseVector out(field_);
    out.entries_.reserve(entries_.size() + other.entries_.size());
    std::size_t i = 0, j = 0;
    while (i < entries_.size() || j < other.entries_.size()) {
        bool take_left = j == other.entries_.size() ||
                         (i < entries_.size() && entries_[i].index < other.entries_[j].index);
        bool take_right = i == entries_.size() ||
                          (j < other.entries_.size() && other.entries_[j].index < entries_[i].index);
        if (take_left) {
            out.entries_.push_back(entries_[i++]);
        } else if (take_right) {
            std::uint64_t v = other.entries_[j].value;
            out.entries_.push_back({other.entries_[j].index, negate_other ? field_.neg(v) : v});
            ++j;
        } else {
            std::uint64_t rhs = negate_other ? field_.neg(other.entries_[j].value)
                                             : other.entries_[j].value;
            std::uint64_t v = field_.add(entries_[i].value, rhs);
            if (v != 0) out.entries_.push_back({entries_[i].index, v});
            ++i;
            ++j;
        }
    }
    return out;
}

SparseVector SparseVector::operator+(const SparseVector& other) const {
    return merge(other, false);
}

SparseVector SparseVector::operator-(const SparseVector& other) const {
    return merge(other, true);
}

SparseVector SparseVector::negated() const {
    SparseVector out(field_);
    out.entries_.reserve(entries_.size());
    for (const auto& e : entries_) out.entries_.push_back({e.index, field_.neg(e.value)});
    return out;
}

std::vector<std::uint64_t> SparseVector::to_dense(std::uint64_t n) const {
    std::vector<std::uint64_t> dense(n, 0);
    for (const auto& e : entries_) {
        if (e.index >= n)
            throw std::out_of_range("SparseVector::to_dense: index " + std::to_string(e.index) +
                                    " out of range for length " + std::to_string(n));
        dense[e.index] = e.value;
    }
    return dense;
}

SparseVector SparseVector::from_dense(Field field, const std::vector<std::uint64_t>& dense) {
    SparseVector v(field);
    for (std::size_t i = 0; i < dense.size(); ++i) {
        std::uint64_t value = field.reduce(dense[i]);
        if (value != 0) v.entries_.push_back({i, value});
    }
    return v;
}

}  // namespace bmx
