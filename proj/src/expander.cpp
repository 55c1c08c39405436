// SPDX-License-Identifier: Apache-2.0
#include "bmx/expander.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bmx/errors.hpp"
#include "bmx/rng.hpp"

namespace bmx {

namespace {
constexpr std::uint64_t kEnumerationCap = 10'000'000;
}

void ExpanderParams::validate() const {
    if (left_count < 2) throw std::invalid_argument("ExpanderParams: left_count must be >= 2");
    if (seed_count < 1) throw std::invalid_argument("ExpanderParams: seed_count must be >= 1");
    if (layer_size < 1) throw std::invalid_argument("ExpanderParams: layer_size must be >= 1");
    if (sparsity < 1 || sparsity > left_count)
        throw std::invalid_argument("ExpanderParams: sparsity must be in [1, left_count]");
    if (expansion_error.num() <= 0 || 2 * std::uint64_t(expansion_error.num()) >= expansion_error.den())
        throw std::invalid_argument("ExpanderParams: expansion_error must be in (0, 1/2)");
}

std::uint32_t ExpanderParams::default_seed_count(std::uint64_t left_count, const Rational& eps) {
    if (left_count < 2) throw std::invalid_argument("default_seed_count: left_count must be >= 2");
    if (eps.num() <= 0) throw std::invalid_argument("default_seed_count: eps must be positive");
    if ((left_count & (left_count - 1)) == 0) {
        std::uint64_t lg = std::uint64_t(std::countr_zero(left_count));
        unsigned __int128 numerator = (unsigned __int128)2 * lg * eps.den();
        std::uint64_t num = std::uint64_t(eps.num());
        std::uint64_t d = std::uint64_t((numerator + num - 1) / num);
        return std::uint32_t(d);
    }
    double d = std::ceil(2.0 * std::log2(double(left_count)) / eps.to_double() - 1e-9);
    return std::uint32_t(d);
}

std::uint32_t ExpanderParams::default_layer_size(std::uint64_t sparsity, const Rational& eps) {
    if (eps.num() <= 0) throw std::invalid_argument("default_layer_size: eps must be positive");
    unsigned __int128 numerator = (unsigned __int128)4 * sparsity * eps.den();
    std::uint64_t num = std::uint64_t(eps.num());
    return std::uint32_t((numerator + num - 1) / num);
}

std::uint32_t LayeredExpander::hashed_entry(std::uint64_t flat_index) const noexcept {
    std::uint64_t h = mix64(seed_ ^ mix64(flat_index + 1));
    return std::uint32_t(((unsigned __int128)h * params_.layer_size) >> 64);
}

LayeredExpander LayeredExpander::sample(const ExpanderParams& params, std::uint64_t seed) {
    LayeredExpander g = functional(params, seed);
    g.materialize();
    return g;
}

LayeredExpander LayeredExpander::functional(const ExpanderParams& params, std::uint64_t seed) {
    params.validate();
    return LayeredExpander(params, seed);
}

LayeredExpander LayeredExpander::from_table(const ExpanderParams& params,
                                            std::vector<std::uint32_t> table,
                                            std::uint64_t seed_label) {
    params.validate();
    if (table.size() != params.left_count * params.seed_count)
        throw std::invalid_argument("LayeredExpander::from_table: table size mismatch");
    for (std::uint32_t v : table)
        if (v >= params.layer_size)
            throw std::invalid_argument("LayeredExpander::from_table: entry out of range");
    LayeredExpander g(params, seed_label);
    g.table_ = std::move(table);
    return g;
}

std::uint32_t LayeredExpander::neighbor(std::uint64_t left, std::uint32_t seed_index) const {
    if (left >= params_.left_count)
        throw std::out_of_range("LayeredExpander::neighbor: left index out of range");
    if (seed_index >= params_.seed_count)
        throw std::out_of_range("LayeredExpander::neighbor: seed index out of range");
    return neighbor_unchecked(left, seed_index);
}

const std::vector<std::uint32_t>& LayeredExpander::table() const {
    if (table_.empty())
        throw std::logic_error("LayeredExpander::table: graph is not materialized");
    return table_;
}

void LayeredExpander::materialize() {
    if (!table_.empty()) return;
    std::uint64_t total = params_.left_count * params_.seed_count;
    if (total / params_.seed_count != params_.left_count || total > (std::uint64_t{1} << 33))
        throw std::length_error("LayeredExpander::materialize: table too large; use functional()");
    table_.resize(total);
    for (std::uint64_t i = 0; i < total; ++i) table_[i] = hashed_entry(i);
}

std::uint64_t seed_neighborhood_size(const LayeredExpander& g,
                                     std::span<const std::uint64_t> support,
                                     std::uint32_t seed_index) {
    if (seed_index >= g.params().seed_count)
        throw std::out_of_range("seed_neighborhood_size: seed index out of range");
    std::vector<std::uint32_t> seen;
    seen.reserve(support.size());
    for (std::uint64_t j : support) {
        std::uint32_t q = g.neighbor(j, seed_index);
        if (std::find(seen.begin(), seen.end(), q) == seen.end()) seen.push_back(q);
    }
    return seen.size();
}

std::uint64_t neighborhood_size(const LayeredExpander& g, std::span<const std::uint64_t> support) {
    std::uint64_t total = 0;
    for (std::uint32_t s = 0; s < g.params().seed_count; ++s)
        total += seed_neighborhood_size(g, support, s);
    return total;
}

std::uint64_t subset_enumeration_count(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
    std::uint64_t total = 0;
    for (std::uint64_t size = 1; size <= k; ++size) {
        std::uint64_t binom = 1;
        for (std::uint64_t i = 0; i < size; ++i) {
            if (binom > cap) break;
            binom = binom * (n - i) / (i + 1);
        }
        total += binom;
        if (total > cap) return cap + 1;
    }
    return total;
}

namespace {

bool expansion_holds(const LayeredExpander& g, std::span<const std::uint64_t> support,
                     double eps) {
    double threshold =
        (1.0 - eps) * double(g.params().seed_count) * double(support.size());
    return double(neighborhood_size(g, support)) + 1e-9 >= threshold;
}

/// Calls fn on every size-k index subset of [n]; fn returns false to abort.
template <typename Fn>
bool for_each_subset(std::uint64_t n, std::uint64_t k, Fn&& fn) {
    std::vector<std::uint64_t> idx(k);
    for (std::uint64_t i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
        if (!fn(std::span<const std::uint64_t>(idx))) return false;
        std::uint64_t pos = k;
        while (pos > 0 && idx[pos - 1] == n - k + pos - 1) --pos;
        if (pos == 0) return true;
        ++idx[pos - 1];
        for (std::uint64_t i = pos; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
}

}  // namespace

bool verify_expansion_bruteforce(const LayeredExpander& g, std::uint64_t k, double eps) {
    const std::uint64_t n = g.params().left_count;
    if (k < 1 || k > n)
        throw std::invalid_argument("verify_expansion_bruteforce: k out of range");
    if (subset_enumeration_count(n, k, kEnumerationCap) > kEnumerationCap)
        throw EnumerationCapExceeded(
            "verify_expansion_bruteforce: subset count exceeds 10^7; use the Monte-Carlo audit");
    for (std::uint64_t size = 1; size <= k; ++size) {
        bool ok = for_each_subset(n, size, [&](std::span<const std::uint64_t> subset) {
            return expansion_holds(g, subset, eps);
        });
        if (!ok) return false;
    }
    return true;
}

double audit_expansion_montecarlo(const LayeredExpander& g, std::uint64_t k, double eps,
                                  std::uint64_t trials, std::uint64_t rng_seed) {
    if (trials < 1) throw std::invalid_argument("audit_expansion_montecarlo: trials must be >= 1");
    const std::uint64_t n = g.params().left_count;
    if (k < 1 || k > n) throw std::invalid_argument("audit_expansion_montecarlo: k out of range");
    Rng rng(rng_seed);
    std::uint64_t passed = 0;
    std::vector<std::uint64_t> subset;
    for (std::uint64_t t = 0; t < trials; ++t) {
        std::uint64_t size = 1 + rng.below(k);
        subset.clear();
        while (subset.size() < size) {
            std::uint64_t j = rng.below(n);
            if (std::find(subset.begin(), subset.end(), j) == subset.end()) subset.push_back(j);
        }
        if (expansion_holds(g, subset, eps)) ++passed;
    }
    return double(passed) / double(trials);
}

}  // namespace bmx
