#include "g46/valkit.hpp"

#include <bit>
#include <stdexcept>

namespace g46 {

int digit_sum(std::uint64_t n) { return std::popcount(n); }

int v2_int(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("v2_int: zero has infinite valuation");
    return std::countr_zero(n);
}

bool is_power_of_two(std::uint64_t n) { return std::has_single_bit(n); }

int carry_count(std::uint64_t x, std::uint64_t y) {
    int carries = 0;
    std::uint64_t carry = 0;
    while (x != 0 || y != 0 || carry != 0) {
        const std::uint64_t sum = (x & 1) + (y & 1) + carry;
        carry = sum >> 1;
        carries += static_cast<int>(carry);
        x >>= 1;
        y >>= 1;
    }
    return carries;
}

int lambda(std::uint64_t k) { return is_power_of_two(k) ? 0 : digit_sum(k) - 2; }

std::uint64_t mu(std::uint64_t k) {
    return is_power_of_two(k) ? 0 : std::uint64_t{1} << (v2_int(k) - 1);
}

ValuationProfile profile(int k) {
    if (k < 4 || k % 2 != 0) throw std::invalid_argument("profile: weight must be even and >= 4");
    const auto uk = static_cast<std::uint64_t>(k);
    ValuationProfile p;
    p.k = k;
    p.s_k = digit_sum(uk);
    p.v2_k = v2_int(uk);
    p.lambda_k = lambda(uk);
    p.mu_k = mu(uk);
    p.power_of_two = is_power_of_two(uk);
    return p;
}

}  // namespace g46
