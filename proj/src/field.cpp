// SPDX-License-Identifier: Apache-2.0
#include "bmx/field.hpp"

#include <stdexcept>

namespace bmx {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return std::uint64_t((unsigned __int128)(a)*b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL,
                            29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    // These witnesses decide primality for all n < 3.3e24.
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL,
                            29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 0; i < r - 1; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

Field Field::gfp(std::uint64_t p) {
    if (p < 3 || p >= (std::uint64_t{1} << 61))
        throw std::invalid_argument("Field::gfp: modulus must satisfy 3 <= p < 2^61");
    if ((p & 1) == 0) throw std::invalid_argument("Field::gfp: modulus must be odd");
    if (!is_prime_u64(p)) throw std::invalid_argument("Field::gfp: modulus must be prime");
    return Field(p);
}

Field Field::parse(std::string_view tag) {
    if (tag == "gf2") return gf2();
    constexpr std::string_view prefix = "gfp:";
    if (tag.substr(0, prefix.size()) == prefix) {
        try {
            return gfp(std::stoull(std::string(tag.substr(prefix.size()))));
        } catch (const std::logic_error&) {
            throw std::invalid_argument("Field::parse: bad modulus in '" + std::string(tag) + "'");
        }
    }
    throw std::invalid_argument("Field::parse: unknown field tag '" + std::string(tag) + "'");
}

std::string Field::tag() const {
    return is_gf2() ? "gf2" : "gfp:" + std::to_string(p_);
}

std::uint64_t Field::inv(std::uint64_t a) const {
    if (a == 0) throw std::domain_error("Field::inv: zero has no inverse");
    // Extended Euclid; coefficients stay below p < 2^61, so int64 suffices.
    std::int64_t t = 0, new_t = 1;
    std::uint64_t r = p_, new_r = a;
    while (new_r != 0) {
        std::uint64_t q = r / new_r;
        std::int64_t tmp_t = t - std::int64_t(q) * new_t;
        t = new_t;
        new_t = tmp_t;
        std::uint64_t tmp_r = r - q * new_r;
        r = new_r;
        new_r = tmp_r;
    }
    return t < 0 ? std::uint64_t(t + std::int64_t(p_)) : std::uint64_t(t);
}

}  // namespace bmx
