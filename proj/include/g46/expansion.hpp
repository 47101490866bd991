#pragma once

// Expansions of G_k as polynomials in G_4, G_6 and the recurrences that
// produce them.
//
// An Expansion of weight k stores the coefficient W_{k,b} of G_4^a G_6^b
// (4a + 6b = k) indexed by the G_6-exponent b. Admissible b share the parity
// of k/2, so storage is dense over b = b_min, b_min + 2, ..., b_max.

#include "g46/arith.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace g46 {

enum class Method { automatic, classical, romik, mr0, mr4 };

/// How an Expansion was obtained. Advisory only: every route agrees.
enum class Provenance { generator, classical, romik, mr0, mr4, product, loaded };

std::string_view to_string(Method m);
std::string_view to_string(Provenance p);
Method parse_method(std::string_view text);

class Expansion {
public:
    /// All admissible coefficients start at zero. Throws unless k is even and >= 0.
    explicit Expansion(int k, Provenance provenance = Provenance::product);

    int weight() const { return k_; }
    Provenance provenance() const { return provenance_; }
    void set_provenance(Provenance p) { provenance_ = p; }

    int min_b() const { return k_ / 2 % 2; }
    int max_b() const { return min_b() + 2 * (static_cast<int>(w_.size()) - 1); }
    std::size_t size() const { return w_.size(); }
    bool admissible(int b) const;

    /// G_4-exponent paired with b.
    int a_of(int b) const { return (k_ - 6 * b) / 4; }

    const Rat& at(int b) const;
    Rat& at(int b);

    /// Admissible b values, ascending.
    std::vector<int> bs() const;

    Expansion& operator+=(const Expansion& other);
    Expansion& operator*=(const Rat& scalar);

    /// Coefficient-wise equality; provenance is ignored.
    friend bool operator==(const Expansion& x, const Expansion& y) {
        return x.k_ == y.k_ && x.w_ == y.w_;
    }

private:
    std::size_t index(int b) const;

    int k_;
    std::vector<Rat> w_;
    Provenance provenance_;
};

/// Graded product: weight adds, terms convolve over b.
Expansion mul(const Expansion& x, const Expansion& y);
inline Expansion operator*(const Expansion& x, const Expansion& y) { return mul(x, y); }

/// Scalar factors of the recurrences, exposed for valuation checks.
/// Romik (k = 6n+2): G_k = sum_j c_j G_{2n+2j} G_{4n-2j+2}.
Rat romik_coefficient(long n, long j);

struct PairCoefficients {
    Rat a;
    Rat b;
};

/// Mertens-Rolen, k = 6n: the a_j, b_j already divided by C(6n+1, 2n).
PairCoefficients mr0_coefficients(long n, long j);

/// Mertens-Rolen, k = 6n+4: the integer a_j, b_j of the right-hand side.
PairCoefficients mr4_coefficients(long n, long j);

/// Left factor C(6n+3, 2n+2) + 2 C(6n+3, 2n) of the k = 6n+4 identity.
Int mr4_left_factor(long n);

/// Method chosen by `automatic` for weight k (k >= 8).
Method auto_method(int k);

/// True when `m` can produce weight k (base weights 4 and 6 accept any method).
bool method_applies(Method m, int k);

/// Memoized expansion engine.
///
/// The automatic cache is keyed by weight and filled strictly in ascending
/// order under one lock, so every weight is computed once and callers share
/// one canonical object. Explicit-route results are memoized separately.
class ExpansionEngine {
public:
    using Ptr = std::shared_ptr<const Expansion>;

    ExpansionEngine() = default;
    ExpansionEngine(const ExpansionEngine&) = delete;
    ExpansionEngine& operator=(const ExpansionEngine&) = delete;

    /// Throws std::invalid_argument for odd k, k < 4, or an inapplicable method.
    Ptr expand(int k, Method method = Method::automatic);

    /// Populates the automatic cache for every even weight in [4, k_max].
    void fill_through(int k_max);

    Expansion classical(int k);
    Expansion romik(int k);
    Expansion mr0(int k);
    Expansion mr4(int k);

    /// Seeds the automatic cache (e.g. from a cache file). Existing entries win.
    void seed(Expansion e);

    /// Snapshot of the automatic cache, ascending by weight.
    std::vector<Ptr> cached() const;
    std::size_t cached_count() const;

private:
    // Same coefficients over one common denominator; the recurrences work
    // in this form so the inner convolution is integer multiply-add only.
    struct IntegralForm;
    using FormPtr = std::shared_ptr<const IntegralForm>;

    struct Entry {
        Ptr expansion;
        FormPtr form;
    };

    const Entry& lookup_locked(int k);
    Expansion compute_locked(int k, Method method);
    Expansion classical_locked(int k);
    Expansion romik_locked(int k);
    Expansion mr0_locked(int k);
    Expansion mr4_locked(int k);
    template <class Terms>
    IntegralForm sum_products_locked(int k, const Terms& terms);

    mutable std::mutex mutex_;
    std::map<int, Entry> auto_;
    std::map<std::pair<int, Method>, Ptr> routed_;
};

/// Generators G_4 and G_6.
Expansion generator(int k);

}  // namespace g46
