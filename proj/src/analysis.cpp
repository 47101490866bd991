#include "g46/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace g46 {

std::string_view to_string(WitnessStatus s) {
    switch (s) {
        case WitnessStatus::case_a_pass: return "case_a_pass";
        case WitnessStatus::case_b_pass: return "case_b_pass";
        case WitnessStatus::fail: return "fail";
        case WitnessStatus::not_applicable: return "not_applicable";
    }
    return "?";
}

std::vector<std::pair<int, Valuation>> valuation_details(const Expansion& e) {
    std::vector<std::pair<int, Valuation>> out;
    for (int b : e.bs()) out.emplace_back(b, v2(e.at(b)));
    return out;
}

MinValuation min_valuation(const Expansion& e) {
    Valuation best = Valuation::infinity();
    MinValuation out;
    for (const auto& [b, v] : valuation_details(e)) {
        if (v.is_infinite()) continue;
        if (v < best) {
            best = v;
            out.argmin_bs.clear();
        }
        if (v == best) out.argmin_bs.push_back(b);
    }
    if (best.is_infinite()) throw std::logic_error("expansion of weight " + std::to_string(e.weight()) + " is zero");
    out.value = best.value();
    return out;
}

MinValuation min_valuation(ExpansionEngine& engine, int k) { return min_valuation(*engine.expand(k)); }

bool check_theorem1(const Expansion& e) {
    return min_valuation(e).value == lambda(static_cast<std::uint64_t>(e.weight()));
}

bool check_theorem1(ExpansionEngine& engine, int k) { return check_theorem1(*engine.expand(k)); }

bool check_powers_of_two(const Expansion& e) {
    const int k = e.weight();
    if (k < 4 || !is_power_of_two(static_cast<std::uint64_t>(k)))
        throw std::invalid_argument("check_powers_of_two: weight " + std::to_string(k) + " is not a power of 2");
    for (const auto& [b, v] : valuation_details(e)) {
        if (b == 0 ? v != Valuation(0) : v <= Valuation(0)) return false;
    }
    return true;
}

bool check_powers_of_two(ExpansionEngine& engine, int k) {
    if (k < 4 || !is_power_of_two(static_cast<std::uint64_t>(k)))
        throw std::invalid_argument("check_powers_of_two: weight " + std::to_string(k) + " is not a power of 2");
    return check_powers_of_two(*engine.expand(k));
}

bool witness_case_b(int k) {
    return k >= 6 && k % 6 == 0 && is_power_of_two(static_cast<std::uint64_t>(k / 6));
}

WitnessStatus check_witness(const Expansion& e) {
    const int k = e.weight();
    const bool power = is_power_of_two(static_cast<std::uint64_t>(k));
    const bool case_b = witness_case_b(k);
    if (power && case_b) throw std::logic_error("6n is never a power of 2");
    if (power || k < 6) return WitnessStatus::not_applicable;

    const auto val = [&](int b) { return v2(e.at(b)); };
    if (case_b) {
        const int n = k / 6;
        if (val(n) != Valuation(0)) return WitnessStatus::fail;
        // At k = 6 the only admissible b is n = 1.
        if (n >= 2 && val(0) != Valuation(1)) return WitnessStatus::fail;
        for (int b : e.bs())
            if (b != 0 && b != n && val(b) <= Valuation(1)) return WitnessStatus::fail;
        return WitnessStatus::case_b_pass;
    }

    const int lam = lambda(static_cast<std::uint64_t>(k));
    const int m = static_cast<int>(mu(static_cast<std::uint64_t>(k)));
    if (val(m) != Valuation(lam)) return WitnessStatus::fail;
    for (int b : e.bs())
        if (b < m && val(b) <= Valuation(lam)) return WitnessStatus::fail;
    return WitnessStatus::case_a_pass;
}

WitnessStatus check_witness(ExpansionEngine& engine, int k) { return check_witness(*engine.expand(k)); }

WeightReport weight_report(const Expansion& e) {
    WeightReport r;
    r.profile = profile(e.weight());
    const auto mv = min_valuation(e);
    r.min_v2 = mv.value;
    r.argmin_bs = mv.argmin_bs;
    r.witness_status = check_witness(e);
    r.details = valuation_details(e);
    return r;
}

ScanChecks parse_checks(std::string_view text) {
    ScanChecks c{false, false, false};
    std::size_t pos = 0;
    bool any = false;
    while (pos <= text.size()) {
        const auto comma = text.find(',', pos);
        const auto item = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        if (item == "theorem1") c.theorem1 = true;
        else if (item == "witness") c.witness = true;
        else if (item == "powers2") c.powers2 = true;
        else if (item == "all") c = ScanChecks{};
        else throw std::invalid_argument("unknown check '" + std::string(item) + "'");
        any = true;
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    if (!any) throw std::invalid_argument("empty check list");
    return c;
}

std::string to_string(const ScanChecks& checks) {
    std::vector<std::string> names;
    if (checks.theorem1) names.emplace_back("theorem1");
    if (checks.witness) names.emplace_back("witness");
    if (checks.powers2) names.emplace_back("powers2");
    std::string out;
    for (std::size_t i = 0; i < names.size(); ++i) out += (i ? "," : "") + names[i];
    return out;
}

namespace {

std::string describe(const WeightReport& r) {
    std::ostringstream os;
    os << "min_v2=" << r.min_v2 << " expected=" << r.profile.lambda_k << " v2 by b:";
    for (const auto& [b, v] : r.details) os << ' ' << b << ':' << v.to_string();
    return os.str();
}

std::vector<ScanFailure> evaluate(const Expansion& e, const ScanChecks& checks, WeightReport& report) {
    std::vector<ScanFailure> failures;
    report = weight_report(e);
    const int k = e.weight();
    if (checks.theorem1 && report.min_v2 != report.profile.lambda_k)
        failures.push_back({k, "theorem1", describe(report)});
    if (checks.powers2 && report.profile.power_of_two && !check_powers_of_two(e))
        failures.push_back({k, "powers2", describe(report)});
    if (checks.witness && report.witness_status == WitnessStatus::fail)
        failures.push_back({k, "witness", describe(report)});
    return failures;
}

}  // namespace

ScanSummary scan_range(ExpansionEngine& engine, int k_max, const ScanChecks& checks, int jobs,
                       const ScanProgress& progress, int progress_every) {
    if (k_max < 4 || k_max % 2 != 0) throw std::invalid_argument("scan_range: k_max must be even and >= 4");
    if (jobs < 1) throw std::invalid_argument("scan_range: jobs must be >= 1");
    if (progress_every < 1) progress_every = 1;

    std::vector<int> weights;
    for (int k = 4; k <= k_max; k += 2) weights.push_back(k);

    // Sequential fill: every recurrence consumes all lower weights.
    for (std::size_t i = 0; i < weights.size(); ++i) {
        engine.fill_through(weights[i]);
        const int done = static_cast<int>(i) + 1;
        if (progress && (done % progress_every == 0 || i + 1 == weights.size())) progress(weights[i], done);
    }

    std::vector<ExpansionEngine::Ptr> expansions;
    expansions.reserve(weights.size());
    for (int k : weights) expansions.push_back(engine.expand(k));

    ScanSummary summary;
    summary.k_max = k_max;
    summary.checks = checks;
    summary.reports.resize(weights.size());
    std::vector<std::vector<ScanFailure>> per_weight(weights.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < weights.size(); i = next++) {
            try {
                per_weight[i] = evaluate(*expansions[i], checks, summary.reports[i]);
            } catch (const std::exception& ex) {
                per_weight[i] = {{weights[i], "error", ex.what()}};
            }
        }
    };
    const int threads = std::min<int>(jobs, static_cast<int>(weights.size()));
    std::vector<std::jthread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    pool.clear();

    for (auto& f : per_weight)
        summary.failures.insert(summary.failures.end(), std::make_move_iterator(f.begin()), std::make_move_iterator(f.end()));
    summary.weights_checked = static_cast<int>(weights.size());
    return summary;
}

}  // namespace g46
