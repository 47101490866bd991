#include "g46/qseries.hpp"

#include <algorithm>
#include <stdexcept>

namespace g46 {

QSeries::QSeries(int start, std::vector<Rat> coeffs) : start_(start), c_(std::move(coeffs)) {
    if (c_.empty()) throw std::invalid_argument("QSeries needs at least one known coefficient");
}

QSeries QSeries::constant(const Rat& c, int order) {
    if (order < 0) throw std::invalid_argument("constant series needs order >= 0");
    std::vector<Rat> coeffs(static_cast<std::size_t>(order) + 1, Rat(0));
    coeffs[0] = c;
    return QSeries(0, std::move(coeffs));
}

Rat QSeries::coeff(int e) const {
    if (e < start_) return 0;
    if (e > order()) throw std::out_of_range("coefficient of q^" + std::to_string(e) + " beyond known order");
    return c_[static_cast<std::size_t>(e - start_)];
}

std::optional<int> QSeries::valuation() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0) return start_ + static_cast<int>(i);
    return std::nullopt;
}

QSeries QSeries::truncated(int order) const {
    if (order < start_) throw std::invalid_argument("truncation below series start");
    if (order >= this->order()) return *this;
    return QSeries(start_, std::vector<Rat>(c_.begin(), c_.begin() + (order - start_ + 1)));
}

QSeries& QSeries::operator*=(const Rat& c) {
    for (auto& x : c_) x *= c;
    return *this;
}

namespace {

QSeries add_scaled(const QSeries& x, const QSeries& y, int sign) {
    const int start = std::min(x.start(), y.start());
    const int order = std::min(x.order(), y.order());
    if (order < start) throw std::invalid_argument("series share no known coefficients");
    std::vector<Rat> out;
    out.reserve(static_cast<std::size_t>(order - start + 1));
    for (int e = start; e <= order; ++e) out.push_back(sign > 0 ? Rat(x.coeff(e) + y.coeff(e)) : Rat(x.coeff(e) - y.coeff(e)));
    return QSeries(start, std::move(out));
}

}  // namespace

QSeries operator+(const QSeries& x, const QSeries& y) { return add_scaled(x, y, 1); }
QSeries operator-(const QSeries& x, const QSeries& y) { return add_scaled(x, y, -1); }

QSeries operator*(const QSeries& x, const QSeries& y) {
    const int start = x.start() + y.start();
    const int order = std::min(x.order() + y.start(), y.order() + x.start());
    std::vector<Rat> out(static_cast<std::size_t>(order - start + 1), Rat(0));
    const auto& xc = x.coefficients();
    const auto& yc = y.coefficients();
    for (std::size_t i = 0; i < xc.size() && i < out.size(); ++i) {
        if (xc[i] == 0) continue;
        for (std::size_t j = 0; i + j < out.size() && j < yc.size(); ++j) out[i + j] += xc[i] * yc[j];
    }
    return QSeries(start, std::move(out));
}

QSeries operator/(const QSeries& x, const QSeries& y) {
    const auto vy = y.valuation();
    if (!vy) throw std::domain_error("division by a series with no known nonzero coefficient");
    const Rat lead = y.coeff(*vy);
    const int start = x.start() - *vy;
    const int order = std::min(x.order() - *vy, y.order() + x.start() - 2 * *vy);
    if (order < start) throw std::domain_error("quotient has no determinable coefficients");
    std::vector<Rat> q;
    q.reserve(static_cast<std::size_t>(order - start + 1));
    for (int e = start; e <= order; ++e) {
        Rat acc = x.coeff(e + *vy);
        for (int i = 1; i <= e - start; ++i) {
            const Rat yi = y.coeff(*vy + i);
            if (yi != 0) acc -= yi * q[static_cast<std::size_t>(e - i - start)];
        }
        q.push_back(acc / lead);
    }
    return QSeries(start, std::move(q));
}

QSeries QSeries::pow(unsigned e) const {
    if (e == 0) return constant(1, std::max(0, order() - start_));
    std::optional<QSeries> result;
    QSeries base = *this;
    while (true) {
        if (e & 1u) result = result ? *result * base : base;
        e >>= 1;
        if (e == 0) break;
        base = base * base;
    }
    return *result;
}

Int divisor_sigma(unsigned long n, unsigned e) {
    if (n == 0) throw std::invalid_argument("divisor_sigma: n must be positive");
    Int total = 0;
    Int term;
    for (unsigned long d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        mpz_ui_pow_ui(term.get_mpz_t(), d, e);
        total += term;
        const unsigned long other = n / d;
        if (other != d) {
            mpz_ui_pow_ui(term.get_mpz_t(), other, e);
            total += term;
        }
    }
    return total;
}

QSeries eisenstein_q(int k, int order) {
    if (k < 4 || k % 2 != 0) throw std::invalid_argument("eisenstein_q: k must be even and >= 4");
    if (order < 0) throw std::invalid_argument("eisenstein_q: negative order");
    const Rat factor = -Rat(2 * k) / bernoulli(k);
    std::vector<Rat> c;
    c.reserve(static_cast<std::size_t>(order) + 1);
    c.emplace_back(1);
    for (int n = 1; n <= order; ++n) c.emplace_back(factor * Rat(divisor_sigma(static_cast<unsigned long>(n), k - 1)));
    return QSeries(0, std::move(c));
}

std::pair<QSeries, QSeries> delta_j_q(int order) {
    if (order < 2) throw std::invalid_argument("delta_j_q: order must be >= 2");
    const QSeries e4 = eisenstein_q(4, order + 2);
    const QSeries e6 = eisenstein_q(6, order + 2);
    const QSeries e4_cubed = e4.pow(3);
    QSeries raw = e4_cubed - e6.pow(2);
    raw *= Rat(1, 1728);
    // The constant term cancels; re-anchor at q^1.
    if (raw.coeff(0) != 0) throw std::logic_error("Delta has a nonzero constant term");
    std::vector<Rat> tail(raw.coefficients().begin() + 1, raw.coefficients().end());
    QSeries delta(1, std::move(tail));
    QSeries j = e4_cubed / delta;
    return {delta.truncated(order), j.truncated(order)};
}

Rat zeta_ratio(int k) {
    if (k < 2 || k % 2 != 0) throw std::invalid_argument("zeta_ratio: k must be even and >= 2");
    Int fact;
    mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(k));
    const Rat sign = (k / 2) % 2 == 0 ? Rat(-1) : Rat(1);
    return sign * bernoulli(k) / Rat(fact);
}

Rat e_normalized_factor(int k, int b, const Rat& w) {
    const int a = (k - 6 * b) / 4;
    Rat f = w / zeta_ratio(k);
    Rat z4 = zeta_ratio(4), z6 = zeta_ratio(6);
    for (int i = 0; i < a; ++i) f *= z4;
    for (int i = 0; i < b; ++i) f *= z6;
    return f;
}

int default_check_order(int k) { return k / 12 + 13; }

ExpansionCheck verify_expansion(const Expansion& e, int order) {
    const int k = e.weight();
    if (order < k / 12 + 2)
        throw std::invalid_argument("verify_expansion: order below k/12 + 2 cannot distinguish weight-k forms");
    ExpansionCheck report{k, order, false, std::nullopt};
    const QSeries target = eisenstein_q(k, order);
    const QSeries e4 = eisenstein_q(4, order);
    const QSeries e6 = eisenstein_q(6, order);

    QSeries sum = QSeries::constant(0, order);
    for (int b : e.bs()) {
        const Rat& w = e.at(b);
        if (w == 0) continue;
        QSeries term = e4.pow(static_cast<unsigned>(e.a_of(b))) * e6.pow(static_cast<unsigned>(b));
        term *= e_normalized_factor(k, b, w);
        sum = sum + term;
    }
    for (int q = 0; q <= order; ++q) {
        if (sum.coeff(q) != target.coeff(q)) {
            report.first_mismatch = q;
            return report;
        }
    }
    report.ok = true;
    return report;
}

}  // namespace g46
