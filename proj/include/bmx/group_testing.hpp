// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bmx/bitmask.hpp"
#include "bmx/rational.hpp"

namespace bmx {

/// Boolean test matrix for non-adaptive group testing, stored as mutually
/// inverse row supports (items per test) and column supports (tests per
/// item). K-disjunctness — no column contained in the union of up to K
/// others — is what the recovery guarantees rest on; it is sampled with high
/// probability and only verifiable brute-force at desk scale.
class DisjunctMatrix {
public:
    /// Bernoulli(1/(K+1)) entries, reproducible from the seed. K = 0 yields
    /// the all-ones matrix.
    static DisjunctMatrix sample(std::uint64_t items, std::uint64_t sparsity,
                                 std::uint32_t tests, std::uint64_t seed);

    /// Default test count ceil(3 * (K+1)^2 * ln N).
    static std::uint32_t default_test_count(std::uint64_t items, std::uint64_t sparsity);

    static DisjunctMatrix from_columns(std::uint64_t items, std::uint64_t sparsity,
                                       std::uint32_t tests,
                                       std::vector<std::vector<std::uint32_t>> column_supports,
                                       std::uint64_t seed_label = 0);

    std::uint64_t items() const noexcept { return items_; }
    std::uint32_t tests() const noexcept { return tests_; }
    std::uint64_t sparsity() const noexcept { return sparsity_; }
    std::uint64_t seed() const noexcept { return seed_; }
    Rational density() const noexcept { return density_; }

    const std::vector<std::uint32_t>& row_support(std::uint32_t test) const;
    const std::vector<std::uint32_t>& column_support(std::uint64_t item) const;
    bool entry(std::uint32_t test, std::uint64_t item) const;

private:
    DisjunctMatrix() = default;
    void build_rows_from_columns();

    std::uint64_t items_ = 0;
    std::uint32_t tests_ = 0;
    std::uint64_t sparsity_ = 0;
    std::uint64_t seed_ = 0;
    Rational density_;
    std::vector<std::vector<std::uint32_t>> rows_;  // test -> sorted items
    std::vector<std::vector<std::uint32_t>> cols_;  // item -> sorted tests
};

/// Exhaustive disjunctness check; throws EnumerationCapExceeded when
/// sum_{k<=K} C(N,k) * N exceeds 10^7.
bool verify_disjunct_bruteforce(const DisjunctMatrix& m, std::uint64_t k);

/// Boolean outcomes of the bitmasked test matrix on a defective set:
/// pooled(q) ORs the defectives' entries in test q, masked(q, t) ORs them
/// restricted to items whose bit t is set. pooled(q) = 0 forces the whole
/// masked row to 0.
struct OutcomeVector {
    std::uint64_t items = 0;  // N, fixes the bit layout
    std::uint32_t tests = 0;
    std::uint32_t bit_count = 0;  // lambda
    std::vector<std::uint8_t> pooled;  // tests entries, 0/1
    std::vector<std::uint8_t> masked;  // tests * bit_count entries, (q, t) at q*lambda + t

    std::uint8_t y1(std::uint32_t q) const { return pooled[q]; }
    std::uint8_t y2(std::uint32_t q, std::uint32_t t) const {
        return masked[std::uint64_t(q) * bit_count + t];
    }
    bool internally_consistent() const noexcept;

    friend bool operator==(const OutcomeVector&, const OutcomeVector&) = default;
};

OutcomeVector outcomes(const DisjunctMatrix& m, BitLayout layout,
                       std::span<const std::uint64_t> defectives);

/// Candidate set read off the masked outcomes: every positive test decodes
/// one index from its masked bits. Contains the defective set whenever the
/// matrix is K-disjunct and at most K items are defective. Negative tests
/// are skipped; decoded indices >= N are discarded; result is sorted and
/// deduplicated (size <= tests).
std::vector<std::uint64_t> superset(const OutcomeVector& out, BitLayout layout);

struct RecoverStats {
    std::uint64_t superset_size = 0;
    std::uint64_t removed = 0;
    std::uint64_t containment_checks = 0;
    std::uint64_t max_column_weight = 0;
};

/// Keeps exactly the candidates whose column support lies inside the
/// positive tests. Work is one check per (candidate, supporting test),
/// bounded by |candidates| * max column weight.
std::vector<std::uint64_t> remove_false_positives(const OutcomeVector& out,
                                                  const DisjunctMatrix& m,
                                                  std::span<const std::uint64_t> candidates,
                                                  RecoverStats* stats = nullptr);

/// Full recovery: remove_false_positives over the superset.
std::vector<std::uint64_t> recover(const OutcomeVector& out, const DisjunctMatrix& m,
                                   BitLayout layout, RecoverStats* stats = nullptr);

}  // namespace bmx
