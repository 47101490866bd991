#include "g46/arith.hpp"
#include "g46/valkit.hpp"

#include <doctest.h>

#include <random>
#include <vector>

using namespace g46;

namespace {

// Akiyama-Tanigawa: a different algorithm from the library's recurrence.
std::vector<Rat> bernoulli_akiyama_tanigawa(int n_max) {
    std::vector<Rat> a(static_cast<std::size_t>(n_max) + 1);
    std::vector<Rat> out;
    for (int m = 0; m <= n_max; ++m) {
        a[m] = Rat(1, m + 1);
        for (int j = m; j >= 1; --j) {
            a[j - 1] = j * (a[j - 1] - a[j]);
            a[j - 1].canonicalize();
        }
        out.push_back(a[0]);
    }
    return out;
}

}  // namespace

TEST_SUITE("arith") {

TEST_CASE("rationals are canonical") {
    const Rat q = make_rat(6, -4);
    CHECK(q.get_num() == -3);
    CHECK(q.get_den() == 2);
    CHECK(to_string(make_rat(0, 5)) == "0/1");
    CHECK(to_string(Rat(7)) == "7/1");
    CHECK_THROWS_AS(make_rat(1, 0), std::invalid_argument);
}

TEST_CASE("parse_rat accepts canonical text and rejects garbage") {
    CHECK(parse_rat("18/143") == make_rat(18, 143));
    CHECK(parse_rat("-5") == Rat(-5));
    CHECK(parse_rat("4/6") == make_rat(2, 3));
    CHECK_THROWS(parse_rat("4/6", true));
    CHECK_THROWS(parse_rat("1/-2", true));
    CHECK_THROWS(parse_rat("1/0"));
    CHECK_THROWS(parse_rat(""));
    CHECK_THROWS(parse_rat("abc"));
    CHECK_THROWS(parse_rat("1/2x"));
}

TEST_CASE("binomial examples") {
    CHECK(binomial(13, 4) == 13 * 12 * 11 * 10 / 24);
    CHECK(binomial(13, 4) == 715);
    CHECK(binomial(3, 4) == 0);
    CHECK(binomial(5, 0) == 1);
    CHECK(binomial(5, -1) == 0);
    CHECK(binomial(0, 0) == 1);
    CHECK_THROWS(binomial(-1, 0));
}

TEST_CASE("binomial satisfies Pascal's rule for n <= 64") {
    for (long n = 1; n <= 64; ++n)
        for (long r = 0; r <= n; ++r) REQUIRE(binomial(n, r) == binomial(n - 1, r - 1) + binomial(n - 1, r));
}

TEST_CASE("multinomial examples and errors") {
    const std::vector<long> p1{2, 1, 1}, p2{8, 0, 0}, p3{2, 2, 0}, bad{2, 2, 1};
    CHECK(multinomial(4, p1) == 12);
    CHECK(multinomial(8, p2) == 1);
    CHECK(multinomial(4, p3) == 6);
    CHECK(multinomial(4, p3) == binomial(4, 2));
    CHECK_THROWS_AS(multinomial(4, bad), std::invalid_argument);
}

TEST_CASE("bernoulli examples") {
    CHECK(bernoulli(0) == 1);
    CHECK(bernoulli(2) == make_rat(1, 6));
    CHECK(bernoulli(12) == make_rat(-691, 2730));
    CHECK(bernoulli(14) == make_rat(7, 6));
    CHECK_THROWS_AS(bernoulli(3), std::invalid_argument);
    CHECK_THROWS(bernoulli(-2));
}

TEST_CASE("bernoulli agrees with an independent algorithm") {
    const auto oracle = bernoulli_akiyama_tanigawa(120);
    for (int k = 0; k <= 120; k += 2) REQUIRE(bernoulli(k) == oracle[k]);
}

TEST_CASE("v2 of even-index Bernoulli numbers is -1") {
    for (int k = 2; k <= 256; k += 2) REQUIRE(v2(bernoulli(k)) == Valuation(-1));
}

TEST_CASE("v2 of rationals") {
    CHECK(v2(make_rat(18, 143)) == Valuation(1));
    CHECK(v2(make_rat(-691, 2730)) == Valuation(-1));
    CHECK(v2(Rat(0)).is_infinite());
    CHECK(v2(Int(0)).is_infinite());
    CHECK(v2(Int(-96)) == Valuation(5));
}

TEST_CASE("infinite valuation orders above every integer") {
    const Valuation inf = Valuation::infinity();
    CHECK(inf > Valuation(1'000'000));
    CHECK(Valuation(-5) < inf);
    CHECK(inf == Valuation::infinity());
    CHECK(inf.to_string() == "inf");
    CHECK_THROWS_AS((void)inf.value(), std::logic_error);
}

TEST_CASE("factorial valuation is m - s(m)") {
    Int fact = 1;
    for (unsigned long m = 1; m <= 4096; ++m) {
        fact *= m;
        REQUIRE(v2(fact) == Valuation(static_cast<long>(m) - digit_sum(m)));
        REQUIRE(v2_factorial(m) == static_cast<long>(m) - digit_sum(m));
    }
}

TEST_CASE("rational arithmetic: reciprocal product and idempotent normalization") {
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<long> dist(-1'000'000, 1'000'000);
    for (int i = 0; i < 500; ++i) {
        long p = dist(rng), q = dist(rng);
        if (p == 0) p = 1;
        if (q == 0) q = -1;
        const Rat x = make_rat(p, q);
        CHECK(x * make_rat(q, p) == 1);
        Rat y = x;
        y.canonicalize();
        CHECK(y == x);
        CHECK(y.get_den() > 0);
        CHECK(parse_rat(to_string(x), true) == x);
    }
}

}
