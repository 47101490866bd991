#include "g46/arith.hpp"

#include <bit>
#include <mutex>
#include <numeric>
#include <vector>

namespace g46 {

Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

std::string to_string(const Rat& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

bool is_integer_literal(std::string_view s, bool allow_sign) {
    if (s.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') return false;
    return true;
}

}  // namespace

Rat parse_rat(std::string_view text, bool require_canonical) {
    const auto slash = text.find('/');
    const auto num_text = text.substr(0, slash);
    const auto den_text = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!is_integer_literal(num_text, true) || !is_integer_literal(den_text, !require_canonical))
        throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
    Int num(std::string(num_text[0] == '+' ? num_text.substr(1) : num_text));
    Int den(std::string(den_text[0] == '+' ? den_text.substr(1) : den_text));
    if (den == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
    Rat q = make_rat(num, den);
    if (require_canonical) {
        if (slash == std::string_view::npos || q.get_num() != num || q.get_den() != den || num_text[0] == '+')
            throw std::invalid_argument("rational not in lowest terms: '" + std::string(text) + "'");
    }
    return q;
}

Int binomial(long n, long r) {
    if (n < 0) throw std::invalid_argument("binomial: negative upper index");
    if (r < 0 || r > n) return 0;
    Int out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(r));
    return out;
}

Int multinomial(long n, std::span<const long> parts) {
    long total = 0;
    for (long p : parts) {
        if (p < 0) throw std::invalid_argument("multinomial: negative part");
        total += p;
    }
    if (total != n) throw std::invalid_argument("multinomial: parts do not sum to n");
    Int out = 1;
    long remaining = n;
    for (long p : parts) {
        out *= binomial(remaining, p);
        remaining -= p;
    }
    return out;
}

namespace {

class BernoulliTable {
public:
    Rat get(int k) {
        std::lock_guard lock(mutex_);
        while (static_cast<int>(even_.size()) * 2 <= k) extend();
        return even_[k / 2];
    }

private:
    // Appends B_m for the next even m from sum_{j=0}^{m} C(m+1, j) B_j = 0.
    void extend() {
        const long m = 2 * static_cast<long>(even_.size());
        if (m == 0) {
            even_.emplace_back(1);
            return;
        }
        Rat acc = Rat(binomial(m + 1, 1)) * Rat(-1, 2);
        for (long j = 0; j < m; j += 2) acc += Rat(binomial(m + 1, j)) * even_[j / 2];
        Rat bm = -acc / Rat(m + 1);
        bm.canonicalize();
        even_.push_back(bm);
    }

    std::mutex mutex_;
    std::vector<Rat> even_;
};

BernoulliTable& bernoulli_table() {
    static BernoulliTable table;
    return table;
}

}  // namespace

Rat bernoulli(int k) {
    if (k < 0 || k % 2 != 0) throw std::invalid_argument("bernoulli: k must be even and >= 0");
    return bernoulli_table().get(k);
}

Valuation v2(const Int& z) {
    if (z == 0) return Valuation::infinity();
    return static_cast<long>(mpz_scan1(z.get_mpz_t(), 0));
}

Valuation v2(const Rat& q) {
    if (q == 0) return Valuation::infinity();
    return v2(q.get_num()).value() - v2(q.get_den()).value();
}

long v2_factorial(std::uint64_t m) {
    return static_cast<long>(m) - std::popcount(m);
}

}  // namespace g46
