// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

namespace bmx {

/// Model-cost counters. field_ops counts executed field additions and
/// multiplications; lookups counts adjacency-table queries; masked_field_ops
/// is the subset of field_ops spent inside dense masked-product passes.
struct OpCounters {
    std::uint64_t field_ops = 0;
    std::uint64_t lookups = 0;
    std::uint64_t masked_field_ops = 0;

    OpCounters& operator+=(const OpCounters& o) noexcept {
        field_ops += o.field_ops;
        lookups += o.lookups;
        masked_field_ops += o.masked_field_ops;
        return *this;
    }

    OpCounters operator-(const OpCounters& o) const noexcept {
        return {field_ops - o.field_ops, lookups - o.lookups,
                masked_field_ops - o.masked_field_ops};
    }

    void reset() noexcept { *this = OpCounters{}; }
};

}  // namespace bmx
