#pragma once

// Faber polynomials: for a weight-k form f with k = 12D + k', the polynomial
// P with f / (Delta^D E_{k'}) = P(j).

#include "g46/arith.hpp"
#include "g46/expansion.hpp"
#include "g46/qseries.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace g46 {

struct FaberPolynomial {
    std::vector<Rat> coeffs;  // c_0 .. c_d
    bool monic_normalized = false;
    Rat divisor = 1;          // leading coefficient divided out by normalization
    std::string source;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    const Rat& leading() const { return coeffs.back(); }
    bool is_monic() const { return !coeffs.empty() && coeffs.back() == 1; }
    bool is_zero() const;
    std::vector<Valuation> valuations() const;
};

/// Divides by the leading coefficient and records it as `divisor`.
/// Throws std::invalid_argument for the zero polynomial.
FaberPolynomial normalize_monic(FaberPolynomial p);

/// Raised when a dyadic combination violates the irreducibility hypotheses.
class HypothesisViolation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Data of a dyadic combination sum_j m_j E_{2^{a_j} 12D}^{2^{l - a_j}}.
struct ComboSpec {
    long D = 1;
    int ell = 0;
    std::vector<int> a;    // 0 <= a_1 < ... < a_t <= ell
    std::vector<long> m;   // one multiplier per exponent

    long M() const;
    long N(std::size_t j) const { return 1L << (ell - a[j]); }
    long D_of(std::size_t j) const { return (1L << a[j]) * D; }
    long d() const { return (1L << ell) * D; }
    int weight() const { return static_cast<int>(12 * d()); }
};

/// Throws std::invalid_argument if the spec is malformed (sizes, ordering, ranges, M = 0).
void validate_structure(const ComboSpec& spec);

/// Reason the irreducibility hypotheses fail (D not a power of 2, m_1 even,
/// M/2 not an odd integer), or nullopt when they hold.
std::optional<std::string> hypothesis_violation(const ComboSpec& spec);

/// Decomposes k = 12D + k' with k' in {0, 4, 6, 8, 10, 14}.
std::pair<int, int> faber_split(int k);

/// pi^k / zeta(k) as the rational -2 k! / ((-4)^{k/2} B_k) (k even).
Rat pi_power_over_zeta(int k);

/// Closed-form coefficient t_{k,r} of j^r in E_k / Delta^D for k = 12D,
/// 0 <= r <= D, built from the expansion of G_k.
Rat t_closed_form(const Expansion& e, int r);

/// Faber polynomial of a weight-k form given by q-coefficients (start at
/// q^0, known through order >= D + 1). Not normalized. Throws
/// std::invalid_argument if elimination leaves a nonzero remainder.
FaberPolynomial faber_general(const QSeries& f, int k);

/// Compute-once cache of t_{k,r} sequences and the constructions built on them.
class FaberBuilder {
public:
    explicit FaberBuilder(ExpansionEngine& engine) : engine_(engine) {}

    /// t_{k,0..D} for k = 12D; t_{k,D} = 1. Throws unless 12 | k and k >= 12.
    std::shared_ptr<const std::vector<Rat>> t_coeffs(int k);

    /// Faber polynomial of E_k: closed form when 12 | k, elimination otherwise.
    FaberPolynomial eisenstein(int k);

    /// Monic Faber polynomial of (E_k^2 + E_{2k}) / 2, degree 2D.
    FaberPolynomial square_combo(int k);

    /// Monic Faber polynomial of (1/M) sum_j m_j E_{2^{a_j} k}^{N_j}. Throws
    /// HypothesisViolation unless the hypotheses hold or `force` is set.
    FaberPolynomial combo(const ComboSpec& spec, bool force = false);

    ExpansionEngine& engine() { return engine_; }

private:
    ExpansionEngine& engine_;
    std::mutex mutex_;
    std::map<int, std::shared_ptr<const std::vector<Rat>>> t_cache_;
};

}  // namespace g46
