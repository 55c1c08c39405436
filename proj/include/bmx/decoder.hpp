// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bmx/bitmask.hpp"
#include "bmx/counters.hpp"
#include "bmx/expander.hpp"
#include "bmx/field.hpp"
#include "bmx/rng.hpp"
#include "bmx/sparse_vector.hpp"

namespace bmx {

enum class DecodeMode { deterministic, randomized };
enum class DecodeStatus { ok, failed, expansion_violated };

/// Knobs of the iterative decoder. contraction is the per-iteration residual
/// shrink target (nu), expansion_error the graph error the thresholds assume
/// (epsilon), sampling_slack the randomized threshold slack (delta),
/// failure_probability the randomized failure budget (eta).
///
/// Feasibility, checked by validate():
///   deterministic: eps < 1/2           and (1-2*eps)^2 >= 1 - 2*nu/5
///   randomized:    eps < 1/(2*(1+delta)) and (1-2*(1+delta)*eps)^2 >= 1 - 2*nu/5
struct DecoderParams {
    std::uint64_t sparsity = 0;         // K, upper bound on error weight
    double contraction = 0.5;           // nu in (0, 1)
    double expansion_error = 0.05;      // epsilon
    double sampling_slack = 1.0;        // delta > 0 (randomized)
    double failure_probability = 0.1;   // eta in (0, 1) (randomized)
    std::uint32_t goodseed_attempt_cap = 0;  // 0 selects ceil(64 * (1 + 1/delta))
    bool record_iterates = false;       // keep per-iteration vectors in the stats

    /// ceil(1 + log2(K) / log2(1/nu)).
    std::uint32_t max_iterations() const;

    /// Seeds sampled per randomized support estimate:
    /// ceil(1 + (log2(1/eta) + log2(log2 K) - log2(log2(1/nu))) / log2(1+delta)),
    /// at least 1 (K is clamped to 2 inside the logs).
    std::uint32_t sample_count() const;

    std::uint32_t effective_goodseed_cap() const;

    void validate(DecodeMode mode) const;

    static DecoderParams deterministic_defaults(std::uint64_t sparsity);
    static DecoderParams randomized_defaults(std::uint64_t sparsity);
};

struct ApproxDiagnostics {
    std::uint64_t rows_scanned = 0;
    std::uint64_t rows_accepted = 0;
    std::uint64_t filtered_rows = 0;        // nonzero rows rejected by the value filter
    std::uint64_t out_of_range = 0;         // decoded index >= N, discarded
    std::uint64_t duplicate_conflicts = 0;  // later rows decoding an already-written index

    ApproxDiagnostics& operator+=(const ApproxDiagnostics& o) noexcept;
};

struct IterationStats {
    std::uint64_t support_estimate = 0;  // L seen by this iteration
    std::uint32_t seed = 0;
    std::uint32_t seed_attempts = 0;
    OpCounters ops;  // cost attributed to this iteration
};

struct DecodeStats {
    std::uint32_t iterations = 0;
    std::uint64_t seeds_tried = 0;
    OpCounters totals;
    OpCounters terminal;  // the final zero-weight estimate that ends the loop
    ApproxDiagnostics approx;
    std::vector<IterationStats> per_iteration;
    std::vector<SparseVector> iterates;  // filled when record_iterates is set
};

struct DecodeResult {
    DecodeStatus status = DecodeStatus::ok;
    SparseVector errors;
    DecodeStats stats;
    std::uint64_t residual_weight_estimate = 0;  // last estimate when status != ok
};

/// Throws DecodeFailed or ExpansionViolated unless the result is ok.
void require_ok(const DecodeResult& result);

/// Support-size estimate: max over all seeds of the plain block 0-norm.
/// Zero exactly when the (expander-consistent) residual is zero.
std::uint64_t estimate_support_det(const Syndrome& syn);

/// Max plain-block 0-norm over an explicit seed list.
std::uint64_t estimate_support_over_seeds(const Syndrome& syn,
                                          std::span<const std::uint32_t> seeds);

/// Max plain-block 0-norm over `samples` seeds drawn i.i.d. with replacement.
std::uint64_t estimate_support_rand(const Syndrome& syn, std::uint32_t samples, Rng& rng);

/// Smallest seed whose plain-block 0-norm reaches
/// (1 - 2*nu/5) * L / (1 - 2*eps). Throws ExpansionViolated when none does.
std::uint32_t good_seed_det(const Syndrome& syn, std::uint64_t support_estimate,
                            const DecoderParams& params);

/// Samples seeds until one reaches (1 - 2*nu/5) * L / (1 - 2*(1+delta)*eps);
/// throws ExpansionViolated past the attempt cap.
std::uint32_t good_seed_rand(const Syndrome& syn, std::uint64_t support_estimate,
                             const DecoderParams& params, Rng& rng,
                             std::uint32_t* attempts_out = nullptr);

/// Reads one seed's plain and masked blocks and decodes candidate entries:
/// rows with nonzero plain value whose nonzero masked entries all equal it
/// spell out a candidate index in binary, valued at the plain entry.
/// Indices >= n are discarded; on duplicates the first write wins.
SparseVector approximate_from_blocks(std::span<const std::uint64_t> plain,
                                     std::span<const std::uint64_t> masked, BitLayout layout,
                                     const Field& field, std::uint64_t n,
                                     ApproxDiagnostics* diagnostics = nullptr);

/// Iterative syndrome decoder. Estimates the residual weight, picks a seed,
/// approximates, subtracts, and repeats until the estimate reaches zero or
/// the iteration cap is hit. The in-place form consumes `syn` as its
/// residual buffer (zero on a successful exact decode).
DecodeResult decode_syndrome_in_place(Syndrome& syn, const LayeredExpander& g,
                                      const DecoderParams& params, DecodeMode mode,
                                      Rng* rng = nullptr);
DecodeResult decode_syndrome(const Syndrome& syn, const LayeredExpander& g,
                             const DecoderParams& params, DecodeMode mode, Rng* rng = nullptr);

/// Decoder over a received word: per-seed products are computed from the
/// (dense) word on demand. Only sampled seeds' plain blocks and one masked
/// block per iteration are ever formed; the full syndrome never is.
DecodeResult decode_full(std::span<const std::uint64_t> word, const Field& field,
                         const LayeredExpander& g, BitLayout layout, const DecoderParams& params,
                         DecodeMode mode, Rng* rng = nullptr);

}  // namespace bmx
