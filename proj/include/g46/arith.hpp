#pragma once

// Exact integer/rational substrate. Everything above this layer works in
// Int/Rat and the Valuation type below; nothing touches floating point.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace g46 {

using Int = mpz_class;
using Rat = mpq_class;

/// 2-adic valuation of an exact value. Zero maps to +infinity, which orders
/// above every finite valuation so min-scans skip vanishing coefficients.
class Valuation {
public:
    constexpr Valuation(long v) : value_(v), infinite_(false) {}

    static constexpr Valuation infinity() { return Valuation(); }

    constexpr bool is_infinite() const { return infinite_; }
    constexpr bool is_finite() const { return !infinite_; }

    long value() const {
        if (infinite_) throw std::logic_error("value() of an infinite valuation");
        return value_;
    }

    friend constexpr bool operator==(const Valuation& x, const Valuation& y) {
        return x.infinite_ == y.infinite_ && (x.infinite_ || x.value_ == y.value_);
    }
    friend constexpr std::strong_ordering operator<=>(const Valuation& x, const Valuation& y) {
        if (x.infinite_ || y.infinite_) return x.infinite_ <=> y.infinite_;
        return x.value_ <=> y.value_;
    }

    std::string to_string() const { return infinite_ ? "inf" : std::to_string(value_); }

private:
    constexpr Valuation() : value_(0), infinite_(true) {}
    long value_;
    bool infinite_;
};

/// Builds num/den in lowest terms with a positive denominator.
Rat make_rat(const Int& num, const Int& den);
inline Rat make_rat(long num, long den) { return make_rat(Int(num), Int(den)); }

/// Renders `num/den`, always with an explicit denominator (`1/1`, `0/1`).
std::string to_string(const Rat& q);

/// Parses `num/den` (or a bare integer). When `require_canonical` is set the
/// text must already be in lowest terms with a positive denominator, which
/// is what the on-disk formats promise.
Rat parse_rat(std::string_view text, bool require_canonical = false);

/// C(n, r); zero outside 0 <= r <= n.
Int binomial(long n, long r);

/// n! / prod(parts!). Throws std::invalid_argument if the parts do not sum to n.
Int multinomial(long n, std::span<const long> parts);

/// Exact Bernoulli number B_k for even k >= 0 (memoized, thread-safe).
Rat bernoulli(int k);

Valuation v2(const Int& z);
Valuation v2(const Rat& q);

/// v_2(m!) via Legendre: m - s(m).
long v2_factorial(std::uint64_t m);

}  // namespace g46
