// SPDX-License-Identifier: Apache-2.0
#include "bmx/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bmx/errors.hpp"

namespace bmx {

std::uint32_t DecoderParams::max_iterations() const {
    if (sparsity <= 1) return 1;
    double iters = 1.0 + std::log2(double(sparsity)) / std::log2(1.0 / contraction);
    return std::uint32_t(std::ceil(iters - 1e-9));
}

std::uint32_t DecoderParams::sample_count() const {
    double log_k = std::log2(double(std::max<std::uint64_t>(sparsity, 2)));
    double r = 1.0 + (std::log2(1.0 / failure_probability) + std::log2(log_k) -
                      std::log2(std::log2(1.0 / contraction))) /
                         std::log2(1.0 + sampling_slack);
    if (!(r >= 1.0)) return 1;
    return std::uint32_t(std::ceil(r - 1e-9));
}

std::uint32_t DecoderParams::effective_goodseed_cap() const {
    if (goodseed_attempt_cap != 0) return goodseed_attempt_cap;
    return std::uint32_t(std::ceil(64.0 * (1.0 + 1.0 / sampling_slack)));
}

void DecoderParams::validate(DecodeMode mode) const {
    if (sparsity < 1) throw std::invalid_argument("DecoderParams: sparsity must be >= 1");
    if (!(contraction > 0.0 && contraction < 1.0))
        throw std::invalid_argument("DecoderParams: contraction must be in (0, 1)");
    const double slack_bound = 1.0 - 2.0 * contraction / 5.0;
    if (mode == DecodeMode::deterministic) {
        if (!(expansion_error > 0.0 && expansion_error < 0.5))
            throw std::invalid_argument("DecoderParams: expansion_error must be in (0, 1/2)");
        double margin = 1.0 - 2.0 * expansion_error;
        if (margin * margin < slack_bound - 1e-12)
            throw std::invalid_argument(
                "DecoderParams: infeasible (1-2*eps)^2 < 1 - 2*nu/5 for deterministic decoding");
    } else {
        if (!(sampling_slack > 0.0))
            throw std::invalid_argument("DecoderParams: sampling_slack must be positive");
        if (!(failure_probability > 0.0 && failure_probability < 1.0))
            throw std::invalid_argument("DecoderParams: failure_probability must be in (0, 1)");
        double relaxed = 1.0 - 2.0 * (1.0 + sampling_slack) * expansion_error;
        if (!(expansion_error > 0.0) || relaxed <= 0.0)
            throw std::invalid_argument(
                "DecoderParams: expansion_error must be in (0, 1/(2*(1+delta)))");
        if (relaxed * relaxed < slack_bound - 1e-12)
            throw std::invalid_argument(
                "DecoderParams: infeasible (1-2*(1+delta)*eps)^2 < 1 - 2*nu/5");
    }
}

DecoderParams DecoderParams::deterministic_defaults(std::uint64_t sparsity) {
    DecoderParams p;
    p.sparsity = sparsity;
    p.contraction = 0.5;
    p.expansion_error = 0.05;
    return p;
}

DecoderParams DecoderParams::randomized_defaults(std::uint64_t sparsity) {
    DecoderParams p;
    p.sparsity = sparsity;
    p.contraction = 0.5;
    p.expansion_error = 0.025;
    p.sampling_slack = 1.0;
    p.failure_probability = 0.1;
    return p;
}

ApproxDiagnostics& ApproxDiagnostics::operator+=(const ApproxDiagnostics& o) noexcept {
    rows_scanned += o.rows_scanned;
    rows_accepted += o.rows_accepted;
    filtered_rows += o.filtered_rows;
    out_of_range += o.out_of_range;
    duplicate_conflicts += o.duplicate_conflicts;
    return *this;
}

void require_ok(const DecodeResult& result) {
    switch (result.status) {
        case DecodeStatus::ok:
            return;
        case DecodeStatus::failed:
            throw DecodeFailed("decode failed: residual weight estimate " +
                                   std::to_string(result.residual_weight_estimate) + " after " +
                                   std::to_string(result.stats.iterations) + " iterations",
                               result.residual_weight_estimate, result.stats.iterations);
        case DecodeStatus::expansion_violated:
            throw ExpansionViolated("no seed met the goodness threshold (non-expanding graph "
                                    "or wrong parameters)");
    }
}

namespace {

std::uint64_t block_weight(std::span<const std::uint64_t> block) {
    std::uint64_t w = 0;
    for (std::uint64_t v : block) w += (v != 0);
    return w;
}

double goodseed_threshold(std::uint64_t estimate, const DecoderParams& p, DecodeMode mode) {
    double numerator = (1.0 - 2.0 * p.contraction / 5.0) * double(estimate);
    double margin = mode == DecodeMode::deterministic
                        ? 1.0 - 2.0 * p.expansion_error
                        : 1.0 - 2.0 * (1.0 + p.sampling_slack) * p.expansion_error;
    return numerator / margin;
}

// Residual backed by a syndrome buffer; subtraction is the sparse update.
class SyndromeResidual {
public:
    SyndromeResidual(Syndrome& syn, const LayeredExpander& g) : syn_(syn), g_(g) {
        const auto& p = g.params();
        if (syn.vector_length() != p.left_count || syn.seed_count() != p.seed_count ||
            syn.layer_size() != p.layer_size)
            throw std::invalid_argument("decode: syndrome dimensions do not match the graph");
    }

    std::uint32_t seed_count() const { return syn_.seed_count(); }
    std::uint64_t length() const { return syn_.vector_length(); }
    Field field() const { return syn_.field(); }
    BitLayout layout() const { return syn_.layout(); }

    std::uint64_t plain_weight(std::uint32_t s) { return block_weight(syn_.plain_block(s)); }
    std::span<const std::uint64_t> plain_view(std::uint32_t s) { return syn_.plain_block(s); }
    std::span<const std::uint64_t> masked_view(std::uint32_t s) { return syn_.masked_block(s); }

    void subtract(const SparseVector& y) { subtract_sparse_in_place(syn_, g_, y, &ops); }

    OpCounters ops;

private:
    Syndrome& syn_;
    const LayeredExpander& g_;
};

// Residual backed by a dense working word; per-seed products on demand.
class WordResidual {
public:
    WordResidual(std::span<const std::uint64_t> word, const Field& field,
                 const LayeredExpander& g, BitLayout layout)
        : word_(word.begin(), word.end()),
          field_(field),
          g_(g),
          layout_(layout),
          plain_buf_(g.params().layer_size),
          masked_buf_(std::uint64_t(g.params().layer_size) * layout.bit_count) {
        if (word.size() != g.params().left_count)
            throw std::invalid_argument("decode: word length does not match the graph");
        if ((std::uint64_t{1} << layout.bit_count) < g.params().left_count)
            throw std::invalid_argument("decode: bit layout too narrow for the graph");
    }

    std::uint32_t seed_count() const { return g_.params().seed_count; }
    std::uint64_t length() const { return g_.params().left_count; }
    Field field() const { return field_; }
    BitLayout layout() const { return layout_; }

    std::uint64_t plain_weight(std::uint32_t s) {
        ensure_plain(s);
        return block_weight(plain_buf_);
    }
    std::span<const std::uint64_t> plain_view(std::uint32_t s) {
        ensure_plain(s);
        return plain_buf_;
    }
    std::span<const std::uint64_t> masked_view(std::uint32_t s) {
        dense_masked_product(g_, layout_, s, word_, field_, masked_buf_, &ops);
        return masked_buf_;
    }

    void subtract(const SparseVector& y) {
        for (const auto& e : y.entries()) word_[e.index] = field_.sub(word_[e.index], e.value);
        ops.field_ops += y.weight();
        cached_seed_ = kNone;
    }

    OpCounters ops;

private:
    static constexpr std::uint32_t kNone = UINT32_MAX;

    void ensure_plain(std::uint32_t s) {
        if (cached_seed_ == s) return;
        dense_plain_product(g_, s, word_, field_, plain_buf_, &ops);
        cached_seed_ = s;
    }

    std::vector<std::uint64_t> word_;
    Field field_;
    const LayeredExpander& g_;
    BitLayout layout_;
    std::vector<std::uint64_t> plain_buf_;
    std::vector<std::uint64_t> masked_buf_;
    std::uint32_t cached_seed_ = kNone;
};

template <typename Residual>
DecodeResult run_decode(Residual& res, const DecoderParams& p, DecodeMode mode, Rng* rng) {
    p.validate(mode);
    if (mode == DecodeMode::randomized && rng == nullptr)
        throw std::invalid_argument("decode: randomized mode requires an rng");

    const std::uint32_t seeds = res.seed_count();
    const std::uint32_t max_iters = p.max_iterations();
    const std::uint32_t samples = p.sample_count();

    DecodeStats st;
    SparseVector acc(res.field());

    for (;;) {
        const OpCounters at_start = res.ops;
        std::uint64_t estimate = 0;
        if (mode == DecodeMode::deterministic) {
            for (std::uint32_t s = 0; s < seeds; ++s)
                estimate = std::max(estimate, res.plain_weight(s));
        } else {
            for (std::uint32_t i = 0; i < samples; ++i)
                estimate = std::max(estimate, res.plain_weight(std::uint32_t(rng->below(seeds))));
        }
        if (estimate == 0) {
            st.terminal = res.ops - at_start;
            st.totals = res.ops;
            return {DecodeStatus::ok, std::move(acc), std::move(st), 0};
        }
        if (st.iterations >= max_iters) {
            st.totals = res.ops;
            return {DecodeStatus::failed, std::move(acc), std::move(st), estimate};
        }

        const double threshold = goodseed_threshold(estimate, p, mode);
        std::uint32_t chosen = 0;
        std::uint32_t attempts = 0;
        bool found = false;
        if (mode == DecodeMode::deterministic) {
            for (std::uint32_t s = 0; s < seeds; ++s) {
                ++attempts;
                if (double(res.plain_weight(s)) >= threshold) {
                    chosen = s;
                    found = true;
                    break;
                }
            }
        } else {
            const std::uint32_t cap = p.effective_goodseed_cap();
            while (attempts < cap) {
                std::uint32_t s = std::uint32_t(rng->below(seeds));
                ++attempts;
                if (double(res.plain_weight(s)) >= threshold) {
                    chosen = s;
                    found = true;
                    break;
                }
            }
        }
        if (!found) {
            st.seeds_tried += attempts;
            st.totals = res.ops;
            return {DecodeStatus::expansion_violated, std::move(acc), std::move(st), estimate};
        }

        SparseVector y = approximate_from_blocks(res.plain_view(chosen), res.masked_view(chosen),
                                                 res.layout(), res.field(), res.length(),
                                                 &st.approx);
        acc = acc + y;
        res.subtract(y);
        ++st.iterations;
        st.seeds_tried += attempts;
        st.per_iteration.push_back({estimate, chosen, attempts, res.ops - at_start});
        if (p.record_iterates) st.iterates.push_back(std::move(y));
    }
}

}  // namespace

std::uint64_t estimate_support_det(const Syndrome& syn) {
    std::uint64_t best = 0;
    for (std::uint32_t s = 0; s < syn.seed_count(); ++s)
        best = std::max(best, block_weight(syn.plain_block(s)));
    return best;
}

std::uint64_t estimate_support_over_seeds(const Syndrome& syn,
                                          std::span<const std::uint32_t> seeds) {
    std::uint64_t best = 0;
    for (std::uint32_t s : seeds) best = std::max(best, block_weight(syn.plain_block(s)));
    return best;
}

std::uint64_t estimate_support_rand(const Syndrome& syn, std::uint32_t samples, Rng& rng) {
    if (samples < 1) throw std::invalid_argument("estimate_support_rand: samples must be >= 1");
    std::uint64_t best = 0;
    for (std::uint32_t i = 0; i < samples; ++i) {
        std::uint32_t s = std::uint32_t(rng.below(syn.seed_count()));
        best = std::max(best, block_weight(syn.plain_block(s)));
    }
    return best;
}

std::uint32_t good_seed_det(const Syndrome& syn, std::uint64_t support_estimate,
                            const DecoderParams& params) {
    if (support_estimate < 1)
        throw std::invalid_argument("good_seed_det: support estimate must be >= 1");
    const double threshold =
        goodseed_threshold(support_estimate, params, DecodeMode::deterministic);
    for (std::uint32_t s = 0; s < syn.seed_count(); ++s)
        if (double(block_weight(syn.plain_block(s))) >= threshold) return s;
    throw ExpansionViolated("good_seed_det: no seed met the threshold");
}

std::uint32_t good_seed_rand(const Syndrome& syn, std::uint64_t support_estimate,
                             const DecoderParams& params, Rng& rng,
                             std::uint32_t* attempts_out) {
    if (support_estimate < 1)
        throw std::invalid_argument("good_seed_rand: support estimate must be >= 1");
    const double threshold = goodseed_threshold(support_estimate, params, DecodeMode::randomized);
    const std::uint32_t cap = params.effective_goodseed_cap();
    for (std::uint32_t attempt = 1; attempt <= cap; ++attempt) {
        std::uint32_t s = std::uint32_t(rng.below(syn.seed_count()));
        if (double(block_weight(syn.plain_block(s))) >= threshold) {
            if (attempts_out) *attempts_out = attempt;
            return s;
        }
    }
    if (attempts_out) *attempts_out = cap;
    throw ExpansionViolated("good_seed_rand: attempt cap exceeded");
}

SparseVector approximate_from_blocks(std::span<const std::uint64_t> plain,
                                     std::span<const std::uint64_t> masked, BitLayout layout,
                                     const Field& field, std::uint64_t n,
                                     ApproxDiagnostics* diagnostics) {
    const std::uint32_t lambda = layout.bit_count;
    if (masked.size() != plain.size() * lambda)
        throw std::invalid_argument("approximate_from_blocks: block size mismatch");
    const bool gf2 = field.is_gf2();
    ApproxDiagnostics local;
    std::vector<SparseEntry> found;  // scan order
    for (std::size_t q = 0; q < plain.size(); ++q) {
        ++local.rows_scanned;
        const std::uint64_t value = plain[q];
        if (value == 0) continue;
        const std::size_t base = q * lambda;
        std::uint64_t index = 0;
        bool consistent = true;
        for (std::uint32_t t = 0; t < lambda; ++t) {
            const std::uint64_t m = masked[base + t];
            if (m == 0) continue;
            if (!gf2 && m != value) {
                consistent = false;
                break;
            }
            index |= std::uint64_t{1} << t;
        }
        if (!consistent) {
            ++local.filtered_rows;
            continue;
        }
        if (index >= n) {
            ++local.out_of_range;
            continue;
        }
        found.push_back({index, value});
    }
    // First write wins on duplicate decoded indices.
    std::stable_sort(found.begin(), found.end(),
                     [](const SparseEntry& a, const SparseEntry& b) { return a.index < b.index; });
    std::vector<std::pair<std::uint64_t, std::uint64_t>> unique;
    unique.reserve(found.size());
    for (const auto& e : found) {
        if (!unique.empty() && unique.back().first == e.index) {
            ++local.duplicate_conflicts;
            continue;
        }
        unique.emplace_back(e.index, e.value);
    }
    local.rows_accepted = unique.size();
    if (diagnostics) *diagnostics += local;
    return SparseVector::from_pairs(field, std::move(unique));
}

DecodeResult decode_syndrome_in_place(Syndrome& syn, const LayeredExpander& g,
                                      const DecoderParams& params, DecodeMode mode, Rng* rng) {
    SyndromeResidual res(syn, g);
    return run_decode(res, params, mode, rng);
}

DecodeResult decode_syndrome(const Syndrome& syn, const LayeredExpander& g,
                             const DecoderParams& params, DecodeMode mode, Rng* rng) {
    Syndrome residual = syn;
    return decode_syndrome_in_place(residual, g, params, mode, rng);
}

DecodeResult decode_full(std::span<const std::uint64_t> word, const Field& field,
                         const LayeredExpander& g, BitLayout layout, const DecoderParams& params,
                         DecodeMode mode, Rng* rng) {
    WordResidual res(word, field, g, layout);
    return run_decode(res, params, mode, rng);
}

}  // namespace bmx
