#include "g46/faber.hpp"
#include "g46/newton.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cstdlib>
#include <random>

using namespace g46;
using namespace g46::testing;

namespace {

std::vector<Rat> poly(std::initializer_list<long> c) {
    std::vector<Rat> out;
    for (long x : c) out.emplace_back(x);
    return out;
}

std::vector<Int> div_remainder(std::vector<Int> num, const std::vector<Int>& den) {
    // den monic
    const std::size_t dd = den.size() - 1;
    for (std::size_t i = num.size(); i-- > dd;) {
        const Int c = num[i];
        if (c == 0) continue;
        for (std::size_t t = 0; t <= dd; ++t) num[i - dd + t] -= c * den[t];
    }
    num.resize(dd);
    return num;
}

bool has_small_factor(const std::vector<long>& c) {
    const int d = static_cast<int>(c.size()) - 1;
    long bound = 0;
    for (long x : c) bound = std::max(bound, std::labs(x));
    bound += 1;
    std::vector<Int> p(c.begin(), c.end());
    std::vector<long> divisors;
    const long a0 = std::labs(c[0]);
    if (a0 == 0) return true;
    for (long x = 1; x <= a0; ++x)
        if (a0 % x == 0) {
            divisors.push_back(x);
            divisors.push_back(-x);
        }
    for (long root : divisors) {
        Int acc = 0;
        for (int i = d; i >= 0; --i) acc = acc * root + p[i];
        if (acc == 0) return true;
    }
    if (d == 4)
        for (long cc : divisors)
            for (long b = -2 * bound; b <= 2 * bound; ++b) {
                const auto rem = div_remainder(p, {Int(cc), Int(b), Int(1)});
                if (rem[0] == 0 && rem[1] == 0) return true;
            }
    return false;
}

}  // namespace

TEST_SUITE("newton") {

TEST_CASE("polygon examples") {
    const auto p = newton_polygon(poly({2, 2, 1}));
    CHECK(p.hull == std::vector<HullVertex>{{0, 1}, {2, 0}});
    REQUIRE(p.segments.size() == 1);
    CHECK(p.segments[0].slope == make_rat(-1, 2));
    CHECK(p.segments[0].interior_lattice_points == 0);

    const auto q = newton_polygon(poly({-1, 0, 1}));
    CHECK(q.hull == std::vector<HullVertex>{{0, 0}, {2, 0}});
    CHECK(q.segments[0].slope == 0);
    CHECK(q.points[1].v.is_infinite());

    const auto z = newton_polygon(poly({0, 0, 4, 1}));
    CHECK(z.hull.front() == HullVertex{2, 2});
    CHECK(z.hull.back() == HullVertex{3, 0});

    const auto lat = newton_polygon(poly({16, 0, 0, 0, 1}));
    CHECK(lat.hull == std::vector<HullVertex>{{0, 4}, {4, 0}});
    CHECK(lat.segments[0].interior_lattice_points == 3);

    CHECK_THROWS(newton_polygon(poly({1, 2, 0})));
    CHECK_THROWS(newton_polygon(std::vector<Rat>{}));
    CHECK_THROWS(newton_polygon(poly({0, 0})));
}

TEST_CASE("hull equals brute force on 500 random inputs") {
    std::mt19937 rng(77);
    for (int trial = 0; trial < 500; ++trial) {
        const auto [c, vals] = random_poly(rng);
        const auto poly_hull = newton_polygon(c);
        REQUIRE(poly_hull.hull == brute_hull(vals));
        for (std::size_t i = 1; i < poly_hull.segments.size(); ++i)
            REQUIRE(poly_hull.segments[i - 1].slope < poly_hull.segments[i].slope);
        for (const auto& pt : poly_hull.points) {
            if (pt.v.is_infinite()) continue;
            for (const auto& s : poly_hull.segments)
                if (s.from.r <= pt.r && pt.r <= s.to.r)
                    REQUIRE(pt.v.value() * (s.to.r - s.from.r) >= s.from.v * (s.to.r - pt.r) + s.to.v * (pt.r - s.from.r));
        }
    }
}

TEST_CASE("dumas examples") {
    const auto ok = dumas(poly({2, 2, 1}));
    CHECK(ok.verdict == Verdict::irreducible);
    CHECK(ok.h == 1);
    CHECK(ok.d == 2);

    const auto gcd = dumas(poly({4, 0, 1}));
    CHECK(gcd.verdict == Verdict::inconclusive);
    CHECK(gcd.h == 2);
    CHECK(gcd.reason.find("gcd") != std::string::npos);

    const auto zero = dumas(poly({0, 3, 1}));
    CHECK(zero.verdict == Verdict::inconclusive);
    CHECK_FALSE(zero.h.has_value());

    const auto multi = dumas(poly({8, 1, 1}));
    CHECK(multi.verdict == Verdict::inconclusive);
    CHECK(multi.reason.find("multiple segments") != std::string::npos);

    const auto flat = dumas(poly({2, 1, 0, 1}));  // (1,0) lies below the chord
    CHECK(flat.verdict == Verdict::inconclusive);

    CHECK_THROWS(dumas(poly({2, 2})));  // not monic
    CHECK_THROWS(dumas(poly({1})));     // degree 0
    CHECK(to_string(Verdict::inconclusive) == "inconclusive");
}

TEST_CASE("strict-above test with boundary points") {
    // h = 3, d = 3: point (1, 2) is exactly on the segment
    const auto on = dumas(poly({8, 4, 0, 1}));
    CHECK(on.verdict == Verdict::inconclusive);
    // h = 3, d = 2 is coprime; (1, 2) is above the segment at 3/2
    const auto above = dumas(poly({8, 4, 1}));
    CHECK(above.verdict == Verdict::irreducible);
    CHECK(above.witness.hull == std::vector<HullVertex>{{0, 3}, {2, 0}});
}

TEST_CASE("certificate soundness on small integer polynomials") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> deg(2, 4), coef(-64, 64);
    int certified = 0;
    for (int trial = 0; trial < 3000; ++trial) {
        const int d = deg(rng);
        std::vector<long> c;
        for (int r = 0; r < d; ++r) c.push_back(coef(rng));
        c.push_back(1);
        std::vector<Rat> q(c.begin(), c.end());
        if (dumas(q).verdict != Verdict::irreducible) continue;
        ++certified;
        REQUIRE_FALSE(has_small_factor(c));
    }
    CHECK(certified > 20);
}

TEST_CASE("Faber polynomial overloads") {
    ExpansionEngine engine;
    FaberBuilder builder(engine);
    const auto cert = dumas(builder.square_combo(12));
    CHECK(cert.verdict == Verdict::irreducible);
    CHECK(cert.h == 13);
    CHECK(cert.d == 2);
    CHECK(newton_polygon(builder.eisenstein(12)).hull == std::vector<HullVertex>{{0, 7}, {1, 0}});
}

}
