#pragma once

// Truncated q-expansions with exact coefficients. This is the independent
// channel used to confirm expansions and Faber polynomials: it never looks
// at the recurrences.

#include "g46/arith.hpp"
#include "g46/expansion.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace g46 {

/// Laurent series sum_{e=start}^{order} c_e q^e, known exactly through q^order.
class QSeries {
public:
    QSeries(int start, std::vector<Rat> coeffs);

    static QSeries constant(const Rat& c, int order);

    int start() const { return start_; }
    int order() const { return start_ + static_cast<int>(c_.size()) - 1; }

    /// Coefficient of q^e: zero below start, throws std::out_of_range above order.
    Rat coeff(int e) const;

    /// Exponent of the first nonzero known coefficient, if any.
    std::optional<int> valuation() const;

    /// Drops coefficients above `order`.
    QSeries truncated(int order) const;

    QSeries& operator*=(const Rat& c);

    friend QSeries operator+(const QSeries& x, const QSeries& y);
    friend QSeries operator-(const QSeries& x, const QSeries& y);
    friend QSeries operator*(const QSeries& x, const QSeries& y);
    friend QSeries operator*(const Rat& c, QSeries x) { return x *= c; }
    /// Division by leading-coefficient elimination; throws std::domain_error
    /// if the divisor has no nonzero known coefficient.
    friend QSeries operator/(const QSeries& x, const QSeries& y);

    QSeries pow(unsigned e) const;

    const std::vector<Rat>& coefficients() const { return c_; }

private:
    int start_;
    std::vector<Rat> c_;
};

/// sigma_e(n) = sum of d^e over divisors d of n.
Int divisor_sigma(unsigned long n, unsigned e);

/// E_k = 1 - (2k / B_k) sum sigma_{k-1}(n) q^n through q^order.
QSeries eisenstein_q(int k, int order);

/// Delta = (E_4^3 - E_6^2)/1728 and j = E_4^3/Delta, both through q^order.
std::pair<QSeries, QSeries> delta_j_q(int order);

/// 2 zeta(k) / (2 pi)^k = -(-1)^{k/2} B_k / k!, the rational part of the
/// zeta normalization G_k = 2 zeta(k) E_k.
Rat zeta_ratio(int k);

/// Scalar turning W_{k,b} into the coefficient of E_4^a E_6^b in E_k.
Rat e_normalized_factor(int k, int b, const Rat& w);

struct ExpansionCheck {
    int weight = 0;
    int order = 0;
    bool ok = false;
    std::optional<int> first_mismatch;  // q-power of the first disagreement
};

/// Default truncation for verify_expansion: k/12 + 13.
int default_check_order(int k);

/// Compares E_k with sum_b factor_b E_4^a E_6^b through q^order.
ExpansionCheck verify_expansion(const Expansion& e, int order);
inline ExpansionCheck verify_expansion(const Expansion& e) { return verify_expansion(e, default_check_order(e.weight())); }

}  // namespace g46
