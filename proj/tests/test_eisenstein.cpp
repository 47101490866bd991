#include "g46/analysis.hpp"
#include "g46/expansion.hpp"
#include "g46/qseries.hpp"
#include "g46/valkit.hpp"

#include <doctest.h>

using namespace g46;

namespace {

Int factorial(long m) {
    Int f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(m));
    return f;
}

// c_j straight from the factorial display.
Rat romik_by_factorials(long n, long j) {
    Rat c(factorial(4 * n + 1), factorial(6 * n + 1) * factorial(2 * n));
    c *= Rat(factorial(2 * n + 2 * j - 1) * factorial(4 * n - 2 * j + 1), factorial(2 * j - 1) * factorial(2 * n - 2 * j + 1));
    c.canonicalize();
    return c;
}

Expansion single(int k, int b, Rat w) {
    Expansion e(k);
    e.at(b) = std::move(w);
    return e;
}

}  // namespace

TEST_SUITE("eisenstein") {

TEST_CASE("admissible indices") {
    const Expansion e12(12);
    CHECK(e12.bs() == std::vector<int>{0, 2});
    CHECK(e12.a_of(0) == 3);
    CHECK(e12.a_of(2) == 0);
    CHECK(Expansion(14).bs() == std::vector<int>{1});
    CHECK(Expansion(4).bs() == std::vector<int>{0});
    CHECK(Expansion(6).bs() == std::vector<int>{1});
    CHECK(Expansion(24).bs() == std::vector<int>{0, 2, 4});
    CHECK_FALSE(e12.admissible(1));
    CHECK_FALSE(e12.admissible(4));
    CHECK_THROWS_AS((void)e12.at(1), std::out_of_range);
    CHECK_THROWS(Expansion(7));
    CHECK_THROWS(Expansion(2));
    for (int k = 4; k <= 200; k += 2)
        for (int b : Expansion(k).bs()) {
            REQUIRE(6 * b <= k);
            REQUIRE((k - 6 * b) % 4 == 0);
        }
}

TEST_CASE("graded product") {
    const Expansion g4 = generator(4), g6 = generator(6);
    CHECK(g4 == single(4, 0, 1));
    CHECK(g6 == single(6, 1, 1));
    CHECK(g4 * g6 == single(10, 1, 1));
    CHECK(g4 * g4 == single(8, 0, 1));
    CHECK(single(8, 0, make_rat(3, 7)) * g4 == single(12, 0, make_rat(3, 7)));
    Expansion sum = g4 * g4 * g4;
    sum += g6 * g6;
    CHECK(sum.at(0) == 1);
    CHECK(sum.at(2) == 1);
    CHECK_THROWS(sum += g4 * g4);
}

TEST_CASE("classical route examples and errors") {
    ExpansionEngine engine;
    CHECK(engine.classical(8) == single(8, 0, make_rat(3, 7)));
    CHECK(engine.classical(10) == single(10, 1, make_rat(5, 11)));
    Expansion e12(12);
    e12.at(0) = make_rat(18, 143);
    e12.at(2) = make_rat(25, 143);
    CHECK(engine.classical(12) == e12);
    // 429 G_12 = 54 G_4^3 + 75 G_6^2
    CHECK(429 * engine.classical(12).at(0) == 54);
    CHECK(429 * engine.classical(12).at(2) == 75);
    CHECK_THROWS_AS(engine.classical(6), std::invalid_argument);
    CHECK_THROWS_AS(engine.classical(11), std::invalid_argument);
}

TEST_CASE("romik coefficients") {
    CHECK(romik_coefficient(1, 1) == make_rat(3, 7));
    for (long n = 1; n <= 64; ++n)
        for (long j = 1; j <= n; ++j) REQUIRE(romik_coefficient(n, j) == romik_coefficient(n, n - j + 1));
    for (long n = 1; n <= 20; ++n)
        for (long j = 1; j <= n; ++j) REQUIRE(romik_coefficient(n, j) == romik_by_factorials(n, j));
}

TEST_CASE("romik route") {
    ExpansionEngine engine;
    CHECK(engine.romik(8) == single(8, 0, make_rat(3, 7)));
    CHECK(engine.romik(14) == single(14, 1, make_rat(30, 143)));
    CHECK(engine.romik(14) == engine.classical(14));
    CHECK(engine.romik(8).provenance() == Provenance::romik);
    CHECK_THROWS_AS(engine.romik(12), std::invalid_argument);
    CHECK_THROWS_AS(engine.romik(10), std::invalid_argument);
}

TEST_CASE("mr0 coefficients and route") {
    ExpansionEngine engine;
    // 715 G_12 = 125 G_6^2 + 210 G_8 G_4; j=1 pairs G_6 G_6, j=2 pairs G_8 G_4
    const auto c1 = mr0_coefficients(2, 1), c2 = mr0_coefficients(2, 2);
    CHECK((c1.a + c1.b) * 715 == 125);
    CHECK((c2.a + c2.b) * 715 == 210);
    const auto e12 = engine.mr0(12);
    CHECK(e12.at(0) == make_rat(18, 143));
    CHECK(e12.at(2) == make_rat(25, 143));
    CHECK(engine.mr0(18) == engine.classical(18));
    CHECK_THROWS_AS(engine.mr0(14), std::invalid_argument);
    CHECK_THROWS_AS(engine.mr0(6), std::invalid_argument);
}

TEST_CASE("mr0 middle coefficient valuation") {
    for (long n = 2; n <= 32; n += 2) {
        const auto c = mr0_coefficients(n, n / 2);
        const auto s = [](long x) { return digit_sum(static_cast<std::uint64_t>(x)); };
        REQUIRE(v2(Rat(c.a + c.b)) == Valuation(2 * s(n) - s(3 * n)));
        REQUIRE(v2(c.a) == Valuation(2 * s(n) - s(3 * n)));
    }
}

TEST_CASE("mr4 coefficients and route") {
    ExpansionEngine engine;
    CHECK(mr4_left_factor(1) == 198);
    const auto c1 = mr4_coefficients(1, 1), c2 = mr4_coefficients(1, 2);
    CHECK(c1.a == 30);
    CHECK(c1.b == 30);
    CHECK(c2.a == 30);
    CHECK(c2.b == 0);
    CHECK(engine.mr4(10) == single(10, 1, make_rat(5, 11)));
    CHECK(engine.mr4(16) == engine.classical(16));
    CHECK_THROWS_AS(engine.mr4(12), std::invalid_argument);
    CHECK_THROWS_AS(engine.mr4(8), std::invalid_argument);
}

TEST_CASE("v2 of the mr4 left factor") {
    const auto s = [](long x) { return digit_sum(static_cast<std::uint64_t>(x)); };
    for (long n = 1; n <= 64; ++n) {
        const Int L = mr4_left_factor(n);
        REQUIRE(L == binomial(6 * n + 3, 2 * n) * (6 * n + 5) / (n + 1));
        REQUIRE(v2(L) == Valuation(s(n) + s(n + 1) + 2 - s(6 * n + 4) - v2_int(static_cast<std::uint64_t>(6 * n + 4))));
    }
}

TEST_CASE("dispatcher") {
    CHECK(auto_method(8) == Method::classical);
    CHECK(auto_method(12) == Method::mr0);
    CHECK(auto_method(14) == Method::romik);
    CHECK(auto_method(10) == Method::mr4);
    CHECK(method_applies(Method::classical, 30));
    CHECK_FALSE(method_applies(Method::romik, 30));
    CHECK(method_applies(Method::mr0, 30));
    CHECK(method_applies(Method::romik, 6));
    CHECK(parse_method("auto") == Method::automatic);
    CHECK(parse_method("mr4") == Method::mr4);
    CHECK_THROWS(parse_method("nope"));
    CHECK(to_string(Method::romik) == "romik");
}

TEST_CASE("expand: memoized, base cases and routing") {
    ExpansionEngine engine;
    CHECK(*engine.expand(4) == single(4, 0, 1));
    CHECK(*engine.expand(6) == single(6, 1, 1));
    const auto a = engine.expand(12);
    CHECK(a->provenance() == Provenance::mr0);
    CHECK(engine.expand(12).get() == a.get());
    CHECK(engine.expand(8)->provenance() == Provenance::classical);
    CHECK(*engine.expand(14, Method::classical) == *engine.expand(14, Method::romik));
    CHECK_THROWS_AS(engine.expand(12, Method::romik), std::invalid_argument);
    CHECK_THROWS(engine.expand(13));
    CHECK_THROWS(engine.expand(2));
}

TEST_CASE("route agreement for k <= 120") {
    ExpansionEngine engine;
    for (int k = 8; k <= 120; k += 2) {
        const Expansion reference = engine.classical(k);
        for (Method m : {Method::romik, Method::mr0, Method::mr4})
            if (method_applies(m, k)) REQUIRE(*engine.expand(k, m) == reference);
        REQUIRE(*engine.expand(k) == reference);
    }
}

TEST_CASE("E-normalized weights sum to 1 and raw weights are 2-integral") {
    ExpansionEngine engine;
    for (int k = 4; k <= 200; k += 2) {
        const auto e = engine.expand(k);
        Rat sum = 0;
        for (int b : e->bs()) sum += e_normalized_factor(k, b, e->at(b));
        REQUIRE(sum == 1);
        REQUIRE(min_valuation(*e).value >= 0);
    }
}

TEST_CASE("fill_through, seed and cached") {
    ExpansionEngine engine;
    engine.fill_through(40);
    CHECK(engine.cached_count() == 19);
    const auto all = engine.cached();
    for (std::size_t i = 1; i < all.size(); ++i) CHECK(all[i - 1]->weight() < all[i]->weight());

    ExpansionEngine seeded;
    Expansion fake = single(8, 0, make_rat(1, 2));
    seeded.seed(fake);
    CHECK(seeded.expand(8)->at(0) == make_rat(1, 2));
    seeded.seed(single(8, 0, make_rat(3, 7)));
    CHECK(seeded.expand(8)->at(0) == make_rat(1, 2));
}

}
