// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bmx {

/// Exact rational with a signed 64-bit numerator and unsigned denominator,
/// always stored reduced. Used where file headers and reported values must be
/// exact (expansion error, matrix density, rate bounds).
class Rational {
public:
    constexpr Rational() = default;

    Rational(std::int64_t numerator, std::uint64_t denominator) {
        if (denominator == 0) throw std::invalid_argument("Rational: zero denominator");
        std::uint64_t mag = numerator < 0 ? std::uint64_t(-(numerator + 1)) + 1
                                          : std::uint64_t(numerator);
        std::uint64_t g = std::gcd(mag, denominator);
        if (g > 1) {
            mag /= g;
            denominator /= g;
        }
        if (mag > std::uint64_t(INT64_MAX)) throw std::overflow_error("Rational: overflow");
        num_ = numerator < 0 ? -std::int64_t(mag) : std::int64_t(mag);
        den_ = denominator;
    }

    /// Accepts "3", "1/20", and decimal strings like "0.05".
    static Rational parse(std::string_view text);

    std::int64_t num() const noexcept { return num_; }
    std::uint64_t den() const noexcept { return den_; }

    double to_double() const noexcept { return double(num_) / double(den_); }

    std::string str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

    friend bool operator==(const Rational&, const Rational&) = default;

    friend Rational operator-(const Rational& a, const Rational& b) {
        __int128 n = __int128(a.num_) * __int128(b.den_) - __int128(b.num_) * __int128(a.den_);
        unsigned __int128 d = (unsigned __int128)(a.den_) * b.den_;
        __int128 g = gcd128(n < 0 ? -n : n, __int128(d));
        if (g > 1) {
            n /= g;
            d /= (unsigned __int128)g;
        }
        if (d > UINT64_MAX || n > INT64_MAX || n < INT64_MIN)
            throw std::overflow_error("Rational: overflow");
        Rational r;
        r.num_ = std::int64_t(n);
        r.den_ = std::uint64_t(d);
        return r;
    }

    bool less_than(const Rational& other) const {
        return __int128(num_) * other.den_ < __int128(other.num_) * den_;
    }

private:
    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        return a == 0 ? 1 : a;
    }

    std::int64_t num_ = 0;
    std::uint64_t den_ = 1;
};

inline Rational Rational::parse(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("Rational::parse: empty string");
    auto slash = text.find('/');
    try {
        if (slash != std::string_view::npos) {
            std::int64_t n = std::stoll(std::string(text.substr(0, slash)));
            std::uint64_t d = std::stoull(std::string(text.substr(slash + 1)));
            return Rational(n, d);
        }
        auto dot = text.find('.');
        if (dot == std::string_view::npos) return Rational(std::stoll(std::string(text)), 1);
        bool negative = !text.empty() && text.front() == '-';
        std::string_view int_part = text.substr(0, dot);
        std::string_view frac_part = text.substr(dot + 1);
        if (frac_part.size() > 18) throw std::invalid_argument("Rational::parse: too many digits");
        std::int64_t ip = int_part.empty() || int_part == "-" ? 0 : std::stoll(std::string(int_part));
        std::uint64_t den = 1;
        for (std::size_t i = 0; i < frac_part.size(); ++i) den *= 10;
        std::uint64_t fp = frac_part.empty() ? 0 : std::stoull(std::string(frac_part));
        std::int64_t num = ip * std::int64_t(den);
        num = negative ? num - std::int64_t(fp) : num + std::int64_t(fp);
        return Rational(num, den);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("Rational::parse: cannot parse '" + std::string(text) + "'");
    } catch (const std::out_of_range&) {
        throw std::invalid_argument("Rational::parse: out of range '" + std::string(text) + "'");
    }
}

}  // namespace bmx
