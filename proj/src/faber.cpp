#include "g46/faber.hpp"

#include "g46/valkit.hpp"

#include <algorithm>

namespace g46 {

bool FaberPolynomial::is_zero() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](const Rat& c) { return c == 0; });
}

std::vector<Valuation> FaberPolynomial::valuations() const {
    std::vector<Valuation> out;
    out.reserve(coeffs.size());
    for (const auto& c : coeffs) out.push_back(v2(c));
    return out;
}

FaberPolynomial normalize_monic(FaberPolynomial p) {
    while (p.coeffs.size() > 1 && p.coeffs.back() == 0) p.coeffs.pop_back();
    if (p.coeffs.empty() || p.is_zero()) throw std::invalid_argument("cannot normalize the zero polynomial");
    const Rat lead = p.coeffs.back();
    for (auto& c : p.coeffs) c /= lead;
    p.divisor *= lead;
    p.monic_normalized = true;
    return p;
}

long ComboSpec::M() const {
    long total = 0;
    for (long x : m) total += x;
    return total;
}

void validate_structure(const ComboSpec& spec) {
    if (spec.D < 1) throw std::invalid_argument("combo: D must be >= 1");
    if (spec.ell < 0 || spec.ell > 20) throw std::invalid_argument("combo: l must be in [0, 20]");
    if (spec.a.empty()) throw std::invalid_argument("combo: need at least one exponent");
    if (spec.a.size() != spec.m.size()) throw std::invalid_argument("combo: a and m must have equal length");
    for (std::size_t j = 0; j < spec.a.size(); ++j) {
        if (spec.a[j] < 0 || spec.a[j] > spec.ell) throw std::invalid_argument("combo: exponents must lie in [0, l]");
        if (j > 0 && spec.a[j] <= spec.a[j - 1]) throw std::invalid_argument("combo: exponents must be strictly increasing");
    }
    if (spec.M() == 0) throw std::invalid_argument("combo: multipliers sum to zero, cannot normalize");
}

std::optional<std::string> hypothesis_violation(const ComboSpec& spec) {
    if (!is_power_of_two(static_cast<std::uint64_t>(spec.D))) return "D = " + std::to_string(spec.D) + " is not a power of 2";
    if (spec.m.front() % 2 == 0) return "m_1 = " + std::to_string(spec.m.front()) + " is even";
    const long M = spec.M();
    if (M % 2 != 0 || (M / 2) % 2 == 0) return "M/2 = " + std::to_string(M) + "/2 is not an odd integer";
    return std::nullopt;
}

std::pair<int, int> faber_split(int k) {
    if (k < 0 || k % 2 != 0 || k == 2) throw std::invalid_argument("faber_split: weight must be even, >= 4 or 0");
    if (k % 12 == 2) return {(k - 14) / 12, 14};
    return {k / 12, k % 12};
}

Rat pi_power_over_zeta(int k) {
    if (k < 2 || k % 2 != 0) throw std::invalid_argument("pi_power_over_zeta: k must be even and >= 2");
    Int fact;
    mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(k));
    Int four_pow;
    mpz_ui_pow_ui(four_pow.get_mpz_t(), 4, static_cast<unsigned long>(k / 2));
    if ((k / 2) % 2 != 0) four_pow = -four_pow;
    return Rat(-2 * fact) / (Rat(four_pow) * bernoulli(k));
}

namespace {

Rat prime_power(unsigned long p, long e) {
    Int x;
    mpz_ui_pow_ui(x.get_mpz_t(), p, static_cast<unsigned long>(e < 0 ? -e : e));
    return e < 0 ? Rat(1) / Rat(x) : Rat(x);
}

using Poly = std::vector<Rat>;

Poly poly_mul(const Poly& x, const Poly& y) {
    Poly out(x.size() + y.size() - 1, Rat(0));
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < y.size(); ++j) out[i + j] += x[i] * y[j];
    }
    return out;
}

Poly poly_pow(Poly base, long e) {
    Poly result{Rat(1)};
    while (e > 0) {
        if (e & 1) result = poly_mul(result, base);
        e >>= 1;
        if (e > 0) base = poly_mul(base, base);
    }
    return result;
}

void poly_add_scaled(Poly& acc, const Poly& x, const Rat& c) {
    if (acc.size() < x.size()) acc.resize(x.size(), Rat(0));
    for (std::size_t i = 0; i < x.size(); ++i) acc[i] += c * x[i];
}

}  // namespace

Rat t_closed_form(const Expansion& e, int r) {
    const int k = e.weight();
    if (k < 12 || k % 12 != 0) throw std::invalid_argument("t_closed_form: weight must be a positive multiple of 12");
    const long D = k / 12;
    if (r < 0 || r > D) throw std::invalid_argument("t_closed_form: need 0 <= r <= D");
    Rat sum = 0;
    for (long a = 0; a <= r; ++a) {
        // w(3a, k) is the coefficient of G_4^{3a} G_6^{2(D-a)}.
        const Rat& w = e.at(static_cast<int>(2 * (D - a)));
        if (w == 0) continue;
        Rat term = w * Rat(binomial(D - a, D - r));
        term *= prime_power(2, 8 * D - 6 * r - 2 * a - 1);
        term /= prime_power(3, 3 * D + 3 * r) * prime_power(5, 2 * D + a) * prime_power(7, 2 * D - 2 * a);
        sum += term;
    }
    if ((D - r) % 2 != 0) sum = -sum;
    return pi_power_over_zeta(k) * sum;
}

FaberPolynomial faber_general(const QSeries& f, int k) {
    const auto [D, k_rest] = faber_split(k);
    if (f.start() < 0) throw std::invalid_argument("faber_general: form must be holomorphic at the cusp");
    if (f.order() < D + 1) throw std::invalid_argument("faber_general: need q-coefficients through q^(D+1)");
    const int order = f.order();
    const auto [delta, j] = delta_j_q(order + D + 4);

    QSeries denominator = delta.pow(static_cast<unsigned>(D));
    if (k_rest != 0) denominator = denominator * eisenstein_q(k_rest, order + 2);
    QSeries g = f / denominator;

    FaberPolynomial p;
    p.coeffs.assign(static_cast<std::size_t>(D) + 1, Rat(0));
    for (int m = D; m >= 0; --m) {
        const Rat c = g.coeff(-m);
        p.coeffs[static_cast<std::size_t>(m)] = c;
        if (c == 0) continue;
        QSeries jm = j.pow(static_cast<unsigned>(m));
        jm *= c;
        g = g - jm;
    }
    for (int e = g.start(); e <= g.order(); ++e)
        if (g.coeff(e) != 0)
            throw std::invalid_argument("faber_general: nonzero remainder at q^" + std::to_string(e) +
                                        "; input is not a weight-" + std::to_string(k) + " form");
    while (p.coeffs.size() > 1 && p.coeffs.back() == 0) p.coeffs.pop_back();
    p.source = "q-series elimination, weight " + std::to_string(k);
    return p;
}

std::shared_ptr<const std::vector<Rat>> FaberBuilder::t_coeffs(int k) {
    if (k < 12 || k % 12 != 0) throw std::invalid_argument("t_coeffs: weight must be a positive multiple of 12");
    std::lock_guard lock(mutex_);
    if (auto it = t_cache_.find(k); it != t_cache_.end()) return it->second;
    const auto e = engine_.expand(k);
    const int D = k / 12;
    auto t = std::make_shared<std::vector<Rat>>();
    for (int r = 0; r < D; ++r) t->push_back(t_closed_form(*e, r));
    t->emplace_back(1);
    t_cache_.emplace(k, t);
    return t;
}

FaberPolynomial FaberBuilder::eisenstein(int k) {
    if (k % 12 == 0 && k >= 12) {
        FaberPolynomial p;
        p.coeffs = *t_coeffs(k);
        p.monic_normalized = true;
        p.source = "E_" + std::to_string(k);
        return p;
    }
    const auto [D, k_rest] = faber_split(k);
    (void)k_rest;
    FaberPolynomial p = normalize_monic(faber_general(eisenstein_q(k, D + 6), k));
    p.source = "E_" + std::to_string(k);
    return p;
}

FaberPolynomial FaberBuilder::square_combo(int k) {
    if (k < 12 || k % 12 != 0) throw std::invalid_argument("square_combo: weight must be a positive multiple of 12");
    const auto tk = t_coeffs(k);
    const auto t2k = t_coeffs(2 * k);
    FaberPolynomial p;
    p.coeffs = *t2k;
    poly_add_scaled(p.coeffs, poly_mul(*tk, *tk), 1);
    p.source = "E_" + std::to_string(k) + "^2 + E_" + std::to_string(2 * k);
    return normalize_monic(std::move(p));
}

FaberPolynomial FaberBuilder::combo(const ComboSpec& spec, bool force) {
    validate_structure(spec);
    if (auto why = hypothesis_violation(spec); why && !force) throw HypothesisViolation("combo hypothesis violated: " + *why);
    FaberPolynomial p;
    std::string source;
    for (std::size_t j = 0; j < spec.a.size(); ++j) {
        const int weight = static_cast<int>(12 * spec.D_of(j));
        poly_add_scaled(p.coeffs, poly_pow(*t_coeffs(weight), spec.N(j)), Rat(spec.m[j]));
        source += (j ? " + " : "") + std::to_string(spec.m[j]) + "*E_" + std::to_string(weight) + "^" +
                  std::to_string(spec.N(j));
    }
    p.source = source;
    return normalize_monic(std::move(p));
}

}  // namespace g46
