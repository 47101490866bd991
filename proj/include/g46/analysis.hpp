#pragma once

// Verifiers for the minimal-valuation statements over weight ranges.

#include "g46/arith.hpp"
#include "g46/expansion.hpp"
#include "g46/valkit.hpp"

#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace g46 {

enum class WitnessStatus { case_a_pass, case_b_pass, fail, not_applicable };

std::string_view to_string(WitnessStatus s);

struct MinValuation {
    long value = 0;
    std::vector<int> argmin_bs;  // ascending
};

struct WeightReport {
    ValuationProfile profile;
    long min_v2 = 0;
    std::vector<int> argmin_bs;
    WitnessStatus witness_status = WitnessStatus::not_applicable;
    std::vector<std::pair<int, Valuation>> details;  // (b, v_2(W_{k,b})) ascending in b
};

/// Per-b valuations of an expansion, ascending in b.
std::vector<std::pair<int, Valuation>> valuation_details(const Expansion& e);

/// Minimum of v_2 over the nonzero coefficients and the b attaining it.
MinValuation min_valuation(const Expansion& e);
MinValuation min_valuation(ExpansionEngine& engine, int k);

/// Minimum equals 0 for powers of 2 and s(k)-2 otherwise.
bool check_theorem1(const Expansion& e);
bool check_theorem1(ExpansionEngine& engine, int k);

/// For k = 2^(m+2): the b = 0 coefficient is the unique one of valuation 0.
/// Throws std::invalid_argument if k is not a power of 2 (or k < 4).
bool check_powers_of_two(const Expansion& e);
bool check_powers_of_two(ExpansionEngine& engine, int k);

/// True when k = 6n with n a power of 2 (the second witness case).
bool witness_case_b(int k);

/// Witness-level check; not_applicable for powers of 2.
WitnessStatus check_witness(const Expansion& e);
WitnessStatus check_witness(ExpansionEngine& engine, int k);

/// Full per-weight report (all three checks' raw data).
WeightReport weight_report(const Expansion& e);

struct ScanChecks {
    bool theorem1 = true;
    bool witness = true;
    bool powers2 = true;
};

/// Parses a comma list of {theorem1, witness, powers2, all}.
ScanChecks parse_checks(std::string_view text);
std::string to_string(const ScanChecks& checks);

struct ScanFailure {
    int k = 0;
    std::string check;
    std::string detail;
};

struct ScanSummary {
    int k_max = 0;
    ScanChecks checks;
    int weights_checked = 0;
    std::vector<WeightReport> reports;
    std::vector<ScanFailure> failures;
};

/// Called with (k, weights done so far) every `progress_every` weights.
using ScanProgress = std::function<void(int, int)>;

/// Runs the selected checks for every even 4 <= k <= k_max. The cache is
/// filled sequentially first; per-weight checks then run on `jobs` threads.
ScanSummary scan_range(ExpansionEngine& engine, int k_max, const ScanChecks& checks, int jobs = 1,
                       const ScanProgress& progress = {}, int progress_every = 50);

}  // namespace g46
