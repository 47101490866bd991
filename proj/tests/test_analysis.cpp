#include "g46/analysis.hpp"
#include "g46/expansion.hpp"
#include "g46/valkit.hpp"

#include <doctest.h>

#include <atomic>

using namespace g46;

namespace {

Valuation at(const WeightReport& r, int b) {
    for (const auto& [bb, v] : r.details)
        if (bb == b) return v;
    FAIL("b not present");
    return Valuation::infinity();
}

}  // namespace

TEST_SUITE("analysis") {

TEST_CASE("min_valuation examples") {
    ExpansionEngine engine;
    const auto m16 = min_valuation(engine, 16);
    CHECK(m16.value == 0);
    CHECK(m16.argmin_bs == std::vector<int>{0});
    const auto m14 = min_valuation(engine, 14);
    CHECK(m14.value == 1);
    CHECK(m14.argmin_bs == std::vector<int>{1});
    const auto m12 = min_valuation(engine, 12);
    CHECK(m12.value == 0);
    CHECK(m12.argmin_bs == std::vector<int>{2});
    CHECK_THROWS_AS(min_valuation(Expansion(12)), std::logic_error);
}

TEST_CASE("zero terms are ignored by the minimum") {
    Expansion e(24);
    e.at(0) = make_rat(4, 3);
    e.at(4) = make_rat(2, 5);
    const auto m = min_valuation(e);
    CHECK(m.value == 1);
    CHECK(m.argmin_bs == std::vector<int>{4});
}

TEST_CASE("check_theorem1") {
    ExpansionEngine engine;
    CHECK(check_theorem1(engine, 12));
    CHECK(check_theorem1(engine, 32));
    CHECK(check_theorem1(engine, 44));
    CHECK(min_valuation(engine, 44).value == 1);
    Expansion wrong(12);
    wrong.at(0) = make_rat(1, 2);
    wrong.at(2) = make_rat(1, 2);
    CHECK_FALSE(check_theorem1(wrong));
    for (int k = 4; k <= 300; k += 2) REQUIRE_MESSAGE(check_theorem1(engine, k), "k=" << k);
}

TEST_CASE("check_powers_of_two") {
    ExpansionEngine engine;
    CHECK(check_powers_of_two(engine, 4));
    CHECK(check_powers_of_two(engine, 8));
    CHECK(check_powers_of_two(engine, 64));
    CHECK_THROWS_AS(check_powers_of_two(engine, 12), std::invalid_argument);
    Expansion wrong(16);
    wrong.at(0) = 1;
    wrong.at(2) = 3;
    CHECK_FALSE(check_powers_of_two(wrong));
}

TEST_CASE("witness dichotomy") {
    CHECK(witness_case_b(12));
    CHECK(witness_case_b(24));
    CHECK(witness_case_b(6));
    CHECK_FALSE(witness_case_b(18));
    CHECK_FALSE(witness_case_b(14));
    for (int k = 4; k <= 4096; k += 2)
        REQUIRE_FALSE((witness_case_b(k) && is_power_of_two(static_cast<std::uint64_t>(k))));
}

TEST_CASE("check_witness examples") {
    ExpansionEngine engine;
    const auto r12 = weight_report(*engine.expand(12));
    CHECK(r12.witness_status == WitnessStatus::case_b_pass);
    CHECK(at(r12, 2) == Valuation(0));
    CHECK(at(r12, 0) == Valuation(1));

    const auto r14 = weight_report(*engine.expand(14));
    CHECK(r14.witness_status == WitnessStatus::case_a_pass);
    CHECK(r14.profile.mu_k == 1);
    CHECK(at(r14, 1) == Valuation(1));

    const auto r24 = weight_report(*engine.expand(24));
    CHECK(r24.witness_status == WitnessStatus::case_b_pass);
    CHECK(at(r24, 4) == Valuation(0));
    CHECK(at(r24, 0) == Valuation(1));
    CHECK(at(r24, 2) > Valuation(1));

    CHECK(check_witness(engine, 6) == WitnessStatus::case_b_pass);
    CHECK(check_witness(engine, 16) == WitnessStatus::not_applicable);
    CHECK(check_witness(engine, 4) == WitnessStatus::not_applicable);

    Expansion wrong(12);
    wrong.at(0) = 1;
    wrong.at(2) = 1;
    CHECK(check_witness(wrong) == WitnessStatus::fail);
    Expansion wrong14(14);
    wrong14.at(1) = 1;
    CHECK(check_witness(wrong14) == WitnessStatus::fail);
}

TEST_CASE("witness holds through k = 300") {
    ExpansionEngine engine;
    for (int k = 6; k <= 300; k += 2) {
        const auto s = check_witness(engine, k);
        if (is_power_of_two(static_cast<std::uint64_t>(k))) {
            REQUIRE(s == WitnessStatus::not_applicable);
        } else {
            REQUIRE_MESSAGE((s == WitnessStatus::case_a_pass || s == WitnessStatus::case_b_pass), "k=" << k);
            REQUIRE((s == WitnessStatus::case_b_pass) == witness_case_b(k));
        }
    }
}

TEST_CASE("middle-term strictness is consistent with the minimum for k = 6n+2, n odd") {
    ExpansionEngine engine;
    for (int n = 1; 6 * n + 2 <= 400; n += 2) {
        const int k = 6 * n + 2;
        if (is_power_of_two(static_cast<std::uint64_t>(k))) continue;
        REQUIRE(min_valuation(engine, k).value == digit_sum(static_cast<std::uint64_t>(k)) - 2);
    }
}

TEST_CASE("parse_checks") {
    const auto all = parse_checks("all");
    CHECK((all.theorem1 && all.witness && all.powers2));
    const auto two = parse_checks("theorem1,powers2");
    CHECK(two.theorem1);
    CHECK_FALSE(two.witness);
    CHECK(two.powers2);
    CHECK(to_string(two) == "theorem1,powers2");
    CHECK_THROWS(parse_checks("theorem2"));
    CHECK_THROWS(parse_checks(""));
}

TEST_CASE("scan_range") {
    ExpansionEngine engine;
    const auto s4 = scan_range(engine, 4, ScanChecks{});
    CHECK(s4.weights_checked == 1);
    CHECK(s4.failures.empty());

    std::atomic<int> ticks = 0;
    const auto s100 = scan_range(engine, 100, ScanChecks{}, 3, [&](int, int) { ++ticks; }, 10);
    CHECK(s100.weights_checked == 49);
    CHECK(s100.failures.empty());
    CHECK(s100.reports.size() == 49);
    CHECK(ticks >= 4);
    for (std::size_t i = 0; i < s100.reports.size(); ++i) CHECK(s100.reports[i].profile.k == 4 + 2 * static_cast<int>(i));

    ExpansionEngine seeded;
    Expansion wrong(12);
    wrong.at(0) = 1;
    wrong.at(2) = 1;
    seeded.seed(wrong);
    const auto bad = scan_range(seeded, 20, ScanChecks{}, 2);
    REQUIRE_FALSE(bad.failures.empty());
    CHECK(bad.failures.front().k == 12);
}

}
