// SPDX-License-Identifier: Apache-2.0
#include "bmx/group_testing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bmx/errors.hpp"
#include "bmx/expander.hpp"
#include "bmx/rng.hpp"

namespace bmx {

std::uint32_t DisjunctMatrix::default_test_count(std::uint64_t items, std::uint64_t sparsity) {
    if (items < 2) throw std::invalid_argument("default_test_count: items must be >= 2");
    double t = 3.0 * double((sparsity + 1) * (sparsity + 1)) * std::log(double(items));
    return std::uint32_t(std::ceil(t - 1e-9));
}

DisjunctMatrix DisjunctMatrix::sample(std::uint64_t items, std::uint64_t sparsity,
                                      std::uint32_t tests, std::uint64_t seed) {
    if (items < 2) throw std::invalid_argument("DisjunctMatrix::sample: items must be >= 2");
    if (items > UINT32_MAX) throw std::invalid_argument("DisjunctMatrix::sample: items too large");
    if (tests < 1) throw std::invalid_argument("DisjunctMatrix::sample: tests must be >= 1");
    DisjunctMatrix m;
    m.items_ = items;
    m.tests_ = tests;
    m.sparsity_ = sparsity;
    m.seed_ = seed;
    m.density_ = Rational(1, sparsity + 1);
    m.rows_.resize(tests);
    m.cols_.resize(items);
    Rng rng(seed);
    // Row-major sampling order is normative for reproducibility.
    for (std::uint32_t q = 0; q < tests; ++q) {
        for (std::uint64_t j = 0; j < items; ++j) {
            if (rng.below(sparsity + 1) == 0) {
                m.rows_[q].push_back(std::uint32_t(j));
                m.cols_[j].push_back(q);
            }
        }
    }
    return m;
}

DisjunctMatrix DisjunctMatrix::from_columns(
    std::uint64_t items, std::uint64_t sparsity, std::uint32_t tests,
    std::vector<std::vector<std::uint32_t>> column_supports, std::uint64_t seed_label) {
    if (column_supports.size() != items)
        throw std::invalid_argument("DisjunctMatrix::from_columns: column count mismatch");
    DisjunctMatrix m;
    m.items_ = items;
    m.tests_ = tests;
    m.sparsity_ = sparsity;
    m.seed_ = seed_label;
    m.density_ = Rational(1, sparsity + 1);
    m.cols_ = std::move(column_supports);
    for (auto& col : m.cols_) {
        std::sort(col.begin(), col.end());
        if (std::adjacent_find(col.begin(), col.end()) != col.end())
            throw std::invalid_argument("DisjunctMatrix::from_columns: duplicate test index");
        if (!col.empty() && col.back() >= tests)
            throw std::invalid_argument("DisjunctMatrix::from_columns: test index out of range");
    }
    m.build_rows_from_columns();
    return m;
}

void DisjunctMatrix::build_rows_from_columns() {
    rows_.assign(tests_, {});
    for (std::uint64_t j = 0; j < items_; ++j)
        for (std::uint32_t q : cols_[j]) rows_[q].push_back(std::uint32_t(j));
    for (auto& row : rows_) std::sort(row.begin(), row.end());
}

const std::vector<std::uint32_t>& DisjunctMatrix::row_support(std::uint32_t test) const {
    if (test >= tests_) throw std::out_of_range("DisjunctMatrix::row_support: test out of range");
    return rows_[test];
}

const std::vector<std::uint32_t>& DisjunctMatrix::column_support(std::uint64_t item) const {
    if (item >= items_)
        throw std::out_of_range("DisjunctMatrix::column_support: item out of range");
    return cols_[item];
}

bool DisjunctMatrix::entry(std::uint32_t test, std::uint64_t item) const {
    const auto& col = column_support(item);
    return std::binary_search(col.begin(), col.end(), test);
}

namespace {

constexpr std::uint64_t kEnumerationCap = 10'000'000;

std::vector<std::uint64_t> column_bits(const DisjunctMatrix& m, std::uint64_t item) {
    std::vector<std::uint64_t> bits((m.tests() + 63) / 64, 0);
    for (std::uint32_t q : m.column_support(item)) bits[q / 64] |= std::uint64_t{1} << (q % 64);
    return bits;
}

bool contained_in(const std::vector<std::uint64_t>& col, const std::vector<std::uint64_t>& uni) {
    for (std::size_t w = 0; w < col.size(); ++w)
        if ((col[w] & ~uni[w]) != 0) return false;
    return true;
}

}  // namespace

bool verify_disjunct_bruteforce(const DisjunctMatrix& m, std::uint64_t k) {
    const std::uint64_t n = m.items();
    if (k < 1 || k >= n) throw std::invalid_argument("verify_disjunct_bruteforce: bad k");
    std::uint64_t cost = subset_enumeration_count(n, k, kEnumerationCap);
    if (cost > kEnumerationCap / n)
        throw EnumerationCapExceeded("verify_disjunct_bruteforce: enumeration too large");

    std::vector<std::vector<std::uint64_t>> cols;
    cols.reserve(n);
    for (std::uint64_t j = 0; j < n; ++j) cols.push_back(column_bits(m, j));
    const std::size_t words = cols[0].size();

    // Enumerate subsets of every size up to k; for each union, every column
    // outside the subset must keep at least one uncovered test.
    std::vector<std::uint64_t> idx;
    for (std::uint64_t size = 1; size <= k; ++size) {
        idx.assign(size, 0);
        for (std::uint64_t i = 0; i < size; ++i) idx[i] = i;
        for (;;) {
            std::vector<std::uint64_t> uni(words, 0);
            for (std::uint64_t i : idx)
                for (std::size_t w = 0; w < words; ++w) uni[w] |= cols[i][w];
            for (std::uint64_t c = 0; c < n; ++c) {
                if (std::find(idx.begin(), idx.end(), c) != idx.end()) continue;
                if (contained_in(cols[c], uni)) return false;
            }
            std::uint64_t pos = size;
            while (pos > 0 && idx[pos - 1] == n - size + pos - 1) --pos;
            if (pos == 0) break;
            ++idx[pos - 1];
            for (std::uint64_t i = pos; i < size; ++i) idx[i] = idx[i - 1] + 1;
        }
    }
    return true;
}

OutcomeVector outcomes(const DisjunctMatrix& m, BitLayout layout,
                       std::span<const std::uint64_t> defectives) {
    if ((std::uint64_t{1} << layout.bit_count) < m.items())
        throw std::invalid_argument("outcomes: bit layout too narrow");
    OutcomeVector out;
    out.items = m.items();
    out.tests = m.tests();
    out.bit_count = layout.bit_count;
    out.pooled.assign(out.tests, 0);
    out.masked.assign(std::uint64_t(out.tests) * out.bit_count, 0);
    for (std::uint64_t j : defectives) {
        if (j >= m.items()) throw std::out_of_range("outcomes: defective index out of range");
        for (std::uint32_t q : m.column_support(j)) {
            out.pooled[q] = 1;
            const std::uint64_t base = std::uint64_t(q) * out.bit_count;
            for (std::uint32_t t = 0; t < out.bit_count; ++t)
                if (bin_bit(j, t)) out.masked[base + t] = 1;
        }
    }
    return out;
}

bool OutcomeVector::internally_consistent() const noexcept {
    for (std::uint32_t q = 0; q < tests; ++q) {
        if (pooled[q]) continue;
        const std::uint64_t base = std::uint64_t(q) * bit_count;
        for (std::uint32_t t = 0; t < bit_count; ++t)
            if (masked[base + t]) return false;
    }
    return true;
}

std::vector<std::uint64_t> superset(const OutcomeVector& out, BitLayout layout) {
    if (layout.bit_count != out.bit_count)
        throw std::invalid_argument("superset: layout mismatch");
    std::vector<std::uint64_t> candidates;
    for (std::uint32_t q = 0; q < out.tests; ++q) {
        if (!out.pooled[q]) continue;
        const std::uint64_t base = std::uint64_t(q) * out.bit_count;
        std::uint64_t index = 0;
        for (std::uint32_t t = 0; t < out.bit_count; ++t)
            if (out.masked[base + t]) index |= std::uint64_t{1} << t;
        if (index < out.items) candidates.push_back(index);
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    return candidates;
}

std::vector<std::uint64_t> remove_false_positives(const OutcomeVector& out,
                                                  const DisjunctMatrix& m,
                                                  std::span<const std::uint64_t> candidates,
                                                  RecoverStats* stats) {
    if (out.tests != m.tests())
        throw std::invalid_argument("remove_false_positives: outcome/matrix mismatch");
    std::vector<std::uint64_t> kept;
    RecoverStats local;
    for (std::uint64_t s : candidates) {
        const auto& col = m.column_support(s);
        local.max_column_weight = std::max<std::uint64_t>(local.max_column_weight, col.size());
        bool keep = true;
        for (std::uint32_t q : col) {
            ++local.containment_checks;
            if (!out.pooled[q]) {
                keep = false;
                break;
            }
        }
        if (keep)
            kept.push_back(s);
        else
            ++local.removed;
    }
    if (stats) {
        stats->removed += local.removed;
        stats->containment_checks += local.containment_checks;
        stats->max_column_weight = std::max(stats->max_column_weight, local.max_column_weight);
    }
    return kept;
}

std::vector<std::uint64_t> recover(const OutcomeVector& out, const DisjunctMatrix& m,
                                   BitLayout layout, RecoverStats* stats) {
    std::vector<std::uint64_t> candidates = superset(out, layout);
    if (stats) stats->superset_size = candidates.size();
    return remove_false_positives(out, m, candidates, stats);
}

}  // namespace bmx
