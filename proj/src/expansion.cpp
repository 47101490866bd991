#include "g46/expansion.hpp"

#include <algorithm>
#include <stdexcept>

namespace g46 {

std::string_view to_string(Method m) {
    switch (m) {
        case Method::automatic: return "auto";
        case Method::classical: return "classical";
        case Method::romik: return "romik";
        case Method::mr0: return "mr0";
        case Method::mr4: return "mr4";
    }
    return "?";
}

std::string_view to_string(Provenance p) {
    switch (p) {
        case Provenance::generator: return "generator";
        case Provenance::classical: return "classical";
        case Provenance::romik: return "romik";
        case Provenance::mr0: return "mr0";
        case Provenance::mr4: return "mr4";
        case Provenance::product: return "product";
        case Provenance::loaded: return "loaded";
    }
    return "?";
}

Method parse_method(std::string_view text) {
    for (Method m : {Method::automatic, Method::classical, Method::romik, Method::mr0, Method::mr4})
        if (text == to_string(m)) return m;
    throw std::invalid_argument("unknown method '" + std::string(text) + "'");
}

Expansion::Expansion(int k, Provenance provenance) : k_(k), provenance_(provenance) {
    if (k < 4 || k % 2 != 0) throw std::invalid_argument("expansion weight must be even and >= 4");
    const int b0 = k / 2 % 2;
    const int count = (k / 6 - b0) / 2 + 1;
    w_.assign(static_cast<std::size_t>(count), Rat(0));
}

bool Expansion::admissible(int b) const {
    return b >= 0 && 6 * b <= k_ && (k_ - 6 * b) % 4 == 0;
}

std::size_t Expansion::index(int b) const {
    if (!admissible(b))
        throw std::out_of_range("G_6-exponent " + std::to_string(b) + " not admissible at weight " +
                                std::to_string(k_));
    return static_cast<std::size_t>((b - min_b()) / 2);
}

const Rat& Expansion::at(int b) const { return w_[index(b)]; }
Rat& Expansion::at(int b) { return w_[index(b)]; }

std::vector<int> Expansion::bs() const {
    std::vector<int> out;
    out.reserve(w_.size());
    for (std::size_t i = 0; i < w_.size(); ++i) out.push_back(min_b() + 2 * static_cast<int>(i));
    return out;
}

Expansion& Expansion::operator+=(const Expansion& other) {
    if (other.k_ != k_) throw std::invalid_argument("adding expansions of different weight");
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] += other.w_[i];
    return *this;
}

Expansion& Expansion::operator*=(const Rat& scalar) {
    for (auto& w : w_) w *= scalar;
    return *this;
}

Expansion mul(const Expansion& x, const Expansion& y) {
    Expansion out(x.weight() + y.weight());
    if (x.size() == 0 || y.size() == 0) return out;
    // b = b1 + b2; the parity offsets may carry into the output index.
    const int carry = (x.min_b() + y.min_b() - out.min_b()) / 2;
    const auto xs = x.bs();
    const auto ys = y.bs();
    Rat term;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const Rat& xi = x.at(xs[i]);
        if (xi == 0) continue;
        for (std::size_t j = 0; j < ys.size(); ++j) {
            const Rat& yj = y.at(ys[j]);
            if (yj == 0) continue;
            const int b = out.min_b() + 2 * (static_cast<int>(i + j) + carry);
            mpq_mul(term.get_mpq_t(), xi.get_mpq_t(), yj.get_mpq_t());
            out.at(b) += term;
        }
    }
    return out;
}

Expansion generator(int k) {
    if (k != 4 && k != 6) throw std::invalid_argument("generators are G_4 and G_6");
    Expansion e(k, Provenance::generator);
    e.at(k == 4 ? 0 : 1) = 1;
    return e;
}

Rat romik_coefficient(long n, long j) {
    if (n < 1 || j < 1 || j > n) throw std::invalid_argument("romik_coefficient: need 1 <= j <= n");
    // (4n+1)!/((6n+1)((2n)!)^2) * C(2n,2j-1)/C(6n,2n+2j-1), with
    // (4n+1)!/((2n)!)^2 = (4n+1) C(4n,2n).
    Int num = binomial(2 * n, 2 * j - 1) * (4 * n + 1) * binomial(4 * n, 2 * n);
    Int den = Int(6 * n + 1) * binomial(6 * n, 2 * n + 2 * j - 1);
    return make_rat(num, den);
}

PairCoefficients mr0_coefficients(long n, long j) {
    if (n < 2 || j < 1 || j > n) throw std::invalid_argument("mr0_coefficients: need n >= 2, 1 <= j <= n");
    const Int scale = binomial(6 * n + 1, 2 * n);
    const Int left = binomial(2 * n + 2 * j - 1, 2 * n);
    return {make_rat(left * binomial(4 * n - 2 * j - 1, 2 * n), scale),
            make_rat(2 * left * binomial(4 * n - 2 * j - 1, 2 * n - 2), scale)};
}

PairCoefficients mr4_coefficients(long n, long j) {
    if (n < 1 || j < 1 || j > n + 1) throw std::invalid_argument("mr4_coefficients: need 1 <= j <= n+1");
    const Int left = binomial(2 * n + 2 * j - 1, 2 * n);
    return {Rat(left * binomial(4 * n - 2 * j + 3, 2 * n)),
            Rat(2 * left * binomial(4 * n - 2 * j + 3, 2 * n + 2))};
}

Int mr4_left_factor(long n) {
    if (n < 1) throw std::invalid_argument("mr4_left_factor: need n >= 1");
    return binomial(6 * n + 3, 2 * n + 2) + 2 * binomial(6 * n + 3, 2 * n);
}

Method auto_method(int k) {
    if (k == 8) return Method::classical;
    switch (k % 6) {
        case 2: return Method::romik;
        case 0: return Method::mr0;
        default: return Method::mr4;
    }
}

bool method_applies(Method m, int k) {
    if (k < 4 || k % 2 != 0) return false;
    if (k == 4 || k == 6 || m == Method::automatic) return true;
    switch (m) {
        case Method::classical: return k >= 8;
        case Method::romik: return k % 6 == 2 && k >= 8;
        case Method::mr0: return k % 6 == 0 && k >= 12;
        case Method::mr4: return k % 6 == 4 && k >= 10;
        case Method::automatic: return true;
    }
    return false;
}

struct ExpansionEngine::IntegralForm {
    int k = 0;
    std::vector<Int> num;  // coefficient at storage index i is num[i] / den
    Int den = 1;
    bool nonnegative = true;
    std::size_t max_bits = 0;

    void refresh() {
        nonnegative = true;
        max_bits = 0;
        for (const auto& x : num) {
            nonnegative = nonnegative && x >= 0;
            if (x != 0) max_bits = std::max(max_bits, mpz_sizeinbase(x.get_mpz_t(), 2));
        }
    }

    static IntegralForm from(const Expansion& e) {
        IntegralForm f{e.weight(), {}, 1};
        for (int b : e.bs()) mpz_lcm(f.den.get_mpz_t(), f.den.get_mpz_t(), e.at(b).get_den_mpz_t());
        for (int b : e.bs()) f.num.push_back(e.at(b).get_num() * (f.den / e.at(b).get_den()));
        f.refresh();
        return f;
    }

    Expansion to_expansion(Provenance provenance) const {
        Expansion e(k, provenance);
        const auto bs = e.bs();
        for (std::size_t i = 0; i < bs.size(); ++i) e.at(bs[i]) = make_rat(num[i], den);
        return e;
    }

    // Divides out the content shared by den and every numerator, leaving den
    // equal to the lcm of the reduced coefficient denominators.
    void normalize() {
        if (den < 0) {
            den = -den;
            for (auto& x : num) x = -x;
        }
        Int g = den;
        for (const auto& x : num) {
            if (g == 1) return;
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        }
        if (g == 1) return;
        mpz_divexact(den.get_mpz_t(), den.get_mpz_t(), g.get_mpz_t());
        for (auto& x : num) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    }

    void scale(const Rat& c) {
        for (auto& x : num) x *= c.get_num();
        den *= c.get_den();
    }

    void add(const IntegralForm& other) {
        Int l;
        mpz_lcm(l.get_mpz_t(), den.get_mpz_t(), other.den.get_mpz_t());
        const Int mine = l / den;
        const Int theirs = l / other.den;
        if (mine != 1)
            for (auto& x : num) x *= mine;
        for (std::size_t i = 0; i < num.size(); ++i)
            mpz_addmul(num[i].get_mpz_t(), other.num[i].get_mpz_t(), theirs.get_mpz_t());
        den = l;
    }

    static IntegralForm product(const IntegralForm& x, const IntegralForm& y) {
        const Expansion shape(x.k + y.k);
        IntegralForm out{x.k + y.k, std::vector<Int>(shape.size()), x.den * y.den};
        const int carry = (x.k / 2 % 2 + y.k / 2 % 2 - shape.min_b()) / 2;
        for (std::size_t i = 0; i < x.num.size(); ++i) {
            if (x.num[i] == 0) continue;
            for (std::size_t j = 0; j < y.num.size(); ++j)
                mpz_addmul(out.num[i + j + carry].get_mpz_t(), x.num[i].get_mpz_t(), y.num[j].get_mpz_t());
        }
        return out;
    }
};

ExpansionEngine::Ptr ExpansionEngine::expand(int k, Method method) {
    if (!method_applies(method, k))
        throw std::invalid_argument("method " + std::string(to_string(method)) + " does not apply to weight " +
                                    std::to_string(k));
    std::lock_guard lock(mutex_);
    if (method == Method::automatic || k == 4 || k == 6) return lookup_locked(k).expansion;
    const auto key = std::make_pair(k, method);
    if (auto it = routed_.find(key); it != routed_.end()) return it->second;
    auto ptr = std::make_shared<const Expansion>(compute_locked(k, method));
    routed_.emplace(key, ptr);
    return ptr;
}

void ExpansionEngine::fill_through(int k_max) {
    if (k_max < 4) return;
    std::lock_guard lock(mutex_);
    lookup_locked(k_max - k_max % 2);
}

Expansion ExpansionEngine::classical(int k) {
    std::lock_guard lock(mutex_);
    return classical_locked(k);
}
Expansion ExpansionEngine::romik(int k) {
    std::lock_guard lock(mutex_);
    return romik_locked(k);
}
Expansion ExpansionEngine::mr0(int k) {
    std::lock_guard lock(mutex_);
    return mr0_locked(k);
}
Expansion ExpansionEngine::mr4(int k) {
    std::lock_guard lock(mutex_);
    return mr4_locked(k);
}

void ExpansionEngine::seed(Expansion e) {
    if (e.weight() < 4) throw std::invalid_argument("seed: weight must be >= 4");
    std::lock_guard lock(mutex_);
    if (auto_.contains(e.weight())) return;
    auto form = std::make_shared<const IntegralForm>(IntegralForm::from(e));
    auto_.emplace(e.weight(), Entry{std::make_shared<const Expansion>(std::move(e)), std::move(form)});
}

std::vector<ExpansionEngine::Ptr> ExpansionEngine::cached() const {
    std::lock_guard lock(mutex_);
    std::vector<Ptr> out;
    out.reserve(auto_.size());
    for (const auto& [k, entry] : auto_) out.push_back(entry.expansion);
    return out;
}

std::size_t ExpansionEngine::cached_count() const {
    std::lock_guard lock(mutex_);
    return auto_.size();
}

const ExpansionEngine::Entry& ExpansionEngine::lookup_locked(int k) {
    if (k < 4 || k % 2 != 0) throw std::invalid_argument("weight must be even and >= 4");
    if (auto it = auto_.find(k); it != auto_.end()) return it->second;
    // Fill every missing weight up to k in ascending order.
    for (int w = 4; w <= k; w += 2) {
        if (auto_.contains(w)) continue;
        Expansion e = (w == 4 || w == 6) ? generator(w) : compute_locked(w, auto_method(w));
        auto form = std::make_shared<const IntegralForm>(IntegralForm::from(e));
        auto_.emplace(w, Entry{std::make_shared<const Expansion>(std::move(e)), std::move(form)});
    }
    return auto_.at(k);
}

Expansion ExpansionEngine::compute_locked(int k, Method method) {
    switch (method) {
        case Method::classical: return classical_locked(k);
        case Method::romik: return romik_locked(k);
        case Method::mr0: return mr0_locked(k);
        case Method::mr4: return mr4_locked(k);
        case Method::automatic: return compute_locked(k, auto_method(k));
    }
    throw std::logic_error("unreachable");
}

namespace {

struct ProductTerm {
    int a;
    int b;
    Rat coefficient;
};

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

}  // namespace

namespace {

// Kronecker substitution: a nonnegative coefficient vector becomes one integer
// with a fixed number of limbs per slot, so a polynomial product is a single
// big-integer multiplication.
Int pack(const std::vector<Int>& v, std::size_t limbs) {
    Int z;
    const std::size_t total = v.size() * limbs;
    if (total == 0) return z;
    mp_limb_t* out = mpz_limbs_write(z.get_mpz_t(), static_cast<mp_size_t>(total));
    std::fill(out, out + total, mp_limb_t{0});
    for (std::size_t i = 0; i < v.size(); ++i) {
        const std::size_t n = mpz_size(v[i].get_mpz_t());
        const mp_limb_t* src = mpz_limbs_read(v[i].get_mpz_t());
        std::copy(src, src + n, out + i * limbs);
    }
    mpz_limbs_finish(z.get_mpz_t(), static_cast<mp_size_t>(total));
    return z;
}

// Adds slot i of z into out[i + shift].
void unpack_add(const Int& z, std::size_t limbs, std::size_t shift, std::vector<Int>& out) {
    const std::size_t zn = mpz_size(z.get_mpz_t());
    const mp_limb_t* src = mpz_limbs_read(z.get_mpz_t());
    Int slot;
    for (std::size_t i = 0; i * limbs < zn; ++i) {
        if (i + shift >= out.size()) throw std::logic_error("packed product overflows the target weight");
        const std::size_t n = std::min(limbs, zn - i * limbs);
        mp_limb_t* dst = mpz_limbs_write(slot.get_mpz_t(), static_cast<mp_size_t>(n));
        std::copy(src + i * limbs, src + i * limbs + n, dst);
        mpz_limbs_finish(slot.get_mpz_t(), static_cast<mp_size_t>(n));
        out[i + shift] += slot;
    }
}

std::size_t bit_length(const Int& x) { return x == 0 ? 0 : mpz_sizeinbase(x.get_mpz_t(), 2); }

}  // namespace

// Sums coefficient * G_a * G_b, merging terms that name the same unordered
// pair so each product of lower expansions is formed once.
template <class Terms>
ExpansionEngine::IntegralForm ExpansionEngine::sum_products_locked(int k, const Terms& terms) {
    std::map<std::pair<int, int>, Rat> merged;
    for (const auto& t : terms) {
        if (t.coefficient == 0) continue;
        merged[{std::min(t.a, t.b), std::max(t.a, t.b)}] += t.coefficient;
    }
    struct Pair {
        FormPtr x, y;
        Rat c;
    };
    std::vector<Pair> pairs;
    bool nonnegative = true;
    for (const auto& [ab, c] : merged) {
        if (c == 0) continue;
        pairs.push_back({lookup_locked(ab.first).form, lookup_locked(ab.second).form, c});
        nonnegative = nonnegative && c > 0 && pairs.back().x->nonnegative && pairs.back().y->nonnegative;
    }
    const std::size_t size = Expansion(k).size();
    const int min_b = Expansion(k).min_b();

    if (!nonnegative) {
        IntegralForm acc{k, std::vector<Int>(size), 1};
        for (const auto& pr : pairs) {
            IntegralForm p = IntegralForm::product(*pr.x, *pr.y);
            p.scale(pr.c);
            p.normalize();
            acc.add(p);
        }
        acc.normalize();
        return acc;
    }

    // Common denominator and integer multipliers.
    Int den = 1;
    std::vector<Int> pair_den(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        pair_den[i] = pairs[i].c.get_den() * pairs[i].x->den * pairs[i].y->den;
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), pair_den[i].get_mpz_t());
    }
    std::vector<Int> mult(pairs.size());
    std::size_t slot_bits = 0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        mpz_divexact(mult[i].get_mpz_t(), den.get_mpz_t(), pair_den[i].get_mpz_t());
        mult[i] *= pairs[i].c.get_num();
        const std::size_t overlap = std::min(pairs[i].x->num.size(), pairs[i].y->num.size());
        const std::size_t bits = bit_length(mult[i]) + pairs[i].x->max_bits + pairs[i].y->max_bits + bit_length(Int(overlap));
        slot_bits = std::max(slot_bits, bits);
    }
    slot_bits += bit_length(Int(pairs.size())) + 1;
    const std::size_t limbs = (slot_bits + GMP_NUMB_BITS - 1) / GMP_NUMB_BITS;

    // Products whose lower G_6 exponents sum to min_b + 2 land one slot higher.
    Int acc[2];
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const int shift = (pairs[i].x->k / 2 % 2 + pairs[i].y->k / 2 % 2 - min_b) / 2;
        const Int px = pack(pairs[i].x->num, limbs);
        const Int py = pairs[i].x == pairs[i].y ? px : pack(pairs[i].y->num, limbs);
        Int prod;
        mpz_mul(prod.get_mpz_t(), px.get_mpz_t(), py.get_mpz_t());
        mpz_addmul(acc[shift].get_mpz_t(), prod.get_mpz_t(), mult[i].get_mpz_t());
    }
    IntegralForm out{k, std::vector<Int>(size), std::move(den)};
    unpack_add(acc[0], limbs, 0, out.num);
    unpack_add(acc[1], limbs, 1, out.num);
    out.normalize();
    return out;
}

Expansion ExpansionEngine::classical_locked(int k) {
    require(k >= 8 && k % 2 == 0, "classical recurrence needs even k >= 8");
    const long n = k / 2;
    std::vector<ProductTerm> terms;
    for (long p = 2; p + 2 <= n; ++p) {
        const long q = n - p;
        terms.push_back({static_cast<int>(2 * p), static_cast<int>(2 * q), Rat((2 * p - 1) * (2 * q - 1))});
    }
    IntegralForm f = sum_products_locked(k, terms);
    f.scale(make_rat(3, (n - 3) * (2 * n - 1) * (2 * n + 1)));
    f.normalize();
    return f.to_expansion(Provenance::classical);
}

Expansion ExpansionEngine::romik_locked(int k) {
    require(k >= 8 && k % 6 == 2, "Romik identity needs k = 6n+2 with n >= 1");
    const long n = (k - 2) / 6;
    std::vector<ProductTerm> terms;
    for (long j = 1; j <= n; ++j)
        terms.push_back({static_cast<int>(2 * n + 2 * j), static_cast<int>(4 * n - 2 * j + 2), romik_coefficient(n, j)});
    return sum_products_locked(k, terms).to_expansion(Provenance::romik);
}

Expansion ExpansionEngine::mr0_locked(int k) {
    require(k >= 12 && k % 6 == 0, "k = 6n identity needs n >= 2");
    const long n = k / 6;
    std::vector<ProductTerm> terms;
    for (long j = 1; j <= n; ++j) {
        auto [a, b] = mr0_coefficients(n, j);
        terms.push_back({static_cast<int>(2 * n + 2 * j), static_cast<int>(4 * n - 2 * j), a + b});
    }
    return sum_products_locked(k, terms).to_expansion(Provenance::mr0);
}

Expansion ExpansionEngine::mr4_locked(int k) {
    require(k >= 10 && k % 6 == 4, "k = 6n+4 identity needs n >= 1");
    const long n = (k - 4) / 6;
    std::vector<ProductTerm> terms;
    for (long j = 1; j <= n + 1; ++j) {
        auto [a, b] = mr4_coefficients(n, j);
        terms.push_back({static_cast<int>(2 * n + 2 * j), static_cast<int>(4 * n - 2 * j + 4), a + b});
    }
    IntegralForm f = sum_products_locked(k, terms);
    f.scale(Rat(1) / Rat(mr4_left_factor(n)));
    f.normalize();
    return f.to_expansion(Provenance::mr4);
}

}  // namespace g46
