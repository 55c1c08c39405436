// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bmx/rational.hpp"

namespace bmx {

/// Parameters of a layered left-regular bipartite graph on [N] x ([D] layers
/// of [M] right vertices each). sparsity is the subset size K the expansion
/// property is meant to cover; expansion_error is the epsilon in
/// |Gamma(S)| >= (1 - eps) * D * |S|.
struct ExpanderParams {
    std::uint64_t left_count = 0;   // N
    std::uint32_t seed_count = 0;   // D, one layer per seed
    std::uint32_t layer_size = 0;   // M, right vertices per layer
    std::uint64_t sparsity = 0;     // K
    Rational expansion_error;       // epsilon in (0, 1/2)

    void validate() const;

    /// ceil(2 * log2(N) / eps); exact integer arithmetic when N is a power of two.
    static std::uint32_t default_seed_count(std::uint64_t left_count, const Rational& eps);
    /// ceil(4 * K / eps), exact.
    static std::uint32_t default_layer_size(std::uint64_t sparsity, const Rational& eps);

    friend bool operator==(const ExpanderParams&, const ExpanderParams&) = default;
};

/// A layered graph defined by a function table [N] x [D] -> [M]: left vertex j
/// has exactly one neighbor per layer. The table is either materialized as a
/// flat dense array indexed j*D + s (the serializable form) or evaluated
/// lazily from a counter-based hash of the sampling seed. Both forms produce
/// identical entries for the same seed. Immutable after construction.
class LayeredExpander {
public:
    /// Samples with a materialized table; entries are uniform on [0, M) and
    /// reproducible from the seed.
    static LayeredExpander sample(const ExpanderParams& params, std::uint64_t seed);

    /// Same graph as sample(params, seed) with no table storage; neighbor
    /// queries hash on demand. For scales where N*D entries do not fit.
    static LayeredExpander functional(const ExpanderParams& params, std::uint64_t seed);

    /// Wraps an explicit table (row-major, j*D + s).
    static LayeredExpander from_table(const ExpanderParams& params,
                                      std::vector<std::uint32_t> table,
                                      std::uint64_t seed_label = 0);

    /// Neighbor of left vertex j in layer s; throws std::out_of_range on bad indices.
    std::uint32_t neighbor(std::uint64_t left, std::uint32_t seed_index) const;

    std::uint32_t neighbor_unchecked(std::uint64_t left, std::uint32_t seed_index) const noexcept {
        if (!table_.empty()) return table_[left * params_.seed_count + seed_index];
        return hashed_entry(left * params_.seed_count + seed_index);
    }

    const ExpanderParams& params() const noexcept { return params_; }
    std::uint64_t sample_seed() const noexcept { return seed_; }

    bool materialized() const noexcept { return !table_.empty(); }
    const std::vector<std::uint32_t>& table() const;
    void materialize();

private:
    LayeredExpander(ExpanderParams params, std::uint64_t seed) : params_(params), seed_(seed) {}

    std::uint32_t hashed_entry(std::uint64_t flat_index) const noexcept;

    ExpanderParams params_;
    std::uint64_t seed_ = 0;
    std::vector<std::uint32_t> table_;  // empty when lazy
};

/// |Gamma_s(support)|: distinct neighbors of the support in one layer.
std::uint64_t seed_neighborhood_size(const LayeredExpander& g,
                                     std::span<const std::uint64_t> support,
                                     std::uint32_t seed_index);

/// Total neighborhood size across layers (layers are disjoint).
std::uint64_t neighborhood_size(const LayeredExpander& g, std::span<const std::uint64_t> support);

/// Number of subsets the brute-force verifier would enumerate, saturated at cap+1.
std::uint64_t subset_enumeration_count(std::uint64_t n, std::uint64_t k, std::uint64_t cap);

/// Exhaustively checks |Gamma(S)| >= (1-eps) * D * |S| for every nonempty
/// subset with |S| <= k. Throws EnumerationCapExceeded when the subset count
/// exceeds 10^7; use the Monte-Carlo audit at that scale instead.
bool verify_expansion_bruteforce(const LayeredExpander& g, std::uint64_t k, double eps);

/// Fraction of `trials` random subsets (size uniform on 1..k) satisfying the
/// expansion inequality. Deterministic for a fixed rng seed.
double audit_expansion_montecarlo(const LayeredExpander& g, std::uint64_t k, double eps,
                                  std::uint64_t trials, std::uint64_t rng_seed);

}  // namespace bmx
