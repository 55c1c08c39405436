// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "bmx/errors.hpp"

namespace bmx {

/// A prime field given by its modulus: GF(2), or GF(p) for an odd prime
/// p < 2^61. Elements are canonical representatives in [0, p) stored as
/// uint64_t; all operations assume canonical operands and return canonical
/// results. Field values are immutable and freely copyable.
class Field {
public:
    static Field gf2() noexcept { return Field(2); }

    /// Requires an odd prime 3 <= p < 2^61; throws std::invalid_argument otherwise.
    static Field gfp(std::uint64_t p);

    /// Parses "gf2" or "gfp:<p>".
    static Field parse(std::string_view tag);

    std::uint64_t modulus() const noexcept { return p_; }
    bool is_gf2() const noexcept { return p_ == 2; }

    /// Tag used in file headers and CLI flags: "gf2" or "gfp:<p>".
    std::string tag() const;

    std::uint64_t reduce(std::uint64_t v) const noexcept { return v % p_; }
    std::uint64_t reduce_signed(std::int64_t v) const noexcept {
        std::int64_t m = v % std::int64_t(p_);
        return m < 0 ? std::uint64_t(m + std::int64_t(p_)) : std::uint64_t(m);
    }

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const noexcept {
        std::uint64_t s = a + b;  // p < 2^61, so no wraparound
        return s >= p_ ? s - p_ : s;
    }

    std::uint64_t neg(std::uint64_t a) const noexcept { return a == 0 ? 0 : p_ - a; }

    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const noexcept {
        return a >= b ? a - b : a + (p_ - b);
    }

    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const noexcept {
        return std::uint64_t((unsigned __int128)(a)*b % p_);
    }

    /// Multiplicative inverse; throws std::domain_error on zero.
    std::uint64_t inv(std::uint64_t a) const;

    friend bool operator==(const Field&, const Field&) = default;

private:
    explicit Field(std::uint64_t p) noexcept : p_(p) {}
    std::uint64_t p_ = 2;
};

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

/// A field element tagged with its field. Arithmetic between elements of
/// different fields throws FieldMismatch. The bulk data paths use raw
/// uint64_t values with a Field context instead; this wrapper is the
/// element-level contract surface.
class FieldElement {
public:
    FieldElement(Field field, std::uint64_t value) noexcept
        : value_(field.reduce(value)), field_(field) {}

    std::uint64_t value() const noexcept { return value_; }
    const Field& field() const noexcept { return field_; }

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
        check(a, b, "+");
        return raw(a.field_, a.field_.add(a.value_, b.value_));
    }
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
        check(a, b, "-");
        return raw(a.field_, a.field_.sub(a.value_, b.value_));
    }
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
        check(a, b, "*");
        return raw(a.field_, a.field_.mul(a.value_, b.value_));
    }
    FieldElement operator-() const { return raw(field_, field_.neg(value_)); }
    FieldElement inverse() const { return raw(field_, field_.inv(value_)); }

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return a.field_ == b.field_ && a.value_ == b.value_;
    }

private:
    static FieldElement raw(Field f, std::uint64_t v) noexcept {
        FieldElement e(f, 0);
        e.value_ = v;
        return e;
    }
    static void check(const FieldElement& a, const FieldElement& b, const char* op) {
        if (a.field_ != b.field_)
            throw FieldMismatch(std::string("field mismatch in operator") + op);
    }

    std::uint64_t value_;
    Field field_;
};

}  // namespace bmx
