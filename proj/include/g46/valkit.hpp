#pragma once

// Binary digit sums and the small 2-adic combinatorics built on them.

#include <cstdint>

namespace g46 {

/// s(n): number of ones in the binary expansion of n.
int digit_sum(std::uint64_t n);

/// v_2(n) for n > 0.
int v2_int(std::uint64_t n);

bool is_power_of_two(std::uint64_t n);

/// Number of carries when adding x and y in binary; equals s(x)+s(y)-s(x+y).
int carry_count(std::uint64_t x, std::uint64_t y);

/// Target minimal valuation: 0 for powers of 2, s(k)-2 otherwise.
int lambda(std::uint64_t k);

/// Witness G_6-exponent: 0 for powers of 2, 2^(v_2(k)-1) otherwise.
std::uint64_t mu(std::uint64_t k);

struct ValuationProfile {
    int k = 0;
    int s_k = 0;
    int v2_k = 0;
    int lambda_k = 0;
    std::uint64_t mu_k = 0;
    bool power_of_two = false;

    friend bool operator==(const ValuationProfile&, const ValuationProfile&) = default;
};

/// Throws std::invalid_argument unless k is even and >= 4.
ValuationProfile profile(int k);

}  // namespace g46
