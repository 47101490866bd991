#include "g46/report.hpp"

namespace g46 {

using nlohmann::json;

json make_report(const std::string& command, json inputs) {
    return json{{"command", command},
                {"inputs", std::move(inputs)},
                {"results", json::array()},
                {"failures", json::array()},
                {"timing_ms", 0}};
}

json to_json(const Valuation& v) {
    if (v.is_infinite()) return "inf";
    return v.value();
}

json to_json(const Expansion& e) {
    json terms = json::array();
    for (int b : e.bs())
        terms.push_back({{"a", e.a_of(b)}, {"b", b}, {"w", to_string(e.at(b))}, {"v2", to_json(v2(e.at(b)))}});
    return {{"k", e.weight()}, {"provenance", std::string(to_string(e.provenance()))}, {"terms", std::move(terms)}};
}

json to_json(const WeightReport& r) {
    json details = json::array();
    for (const auto& [b, v] : r.details) details.push_back({{"b", b}, {"v2", to_json(v)}});
    return {{"k", r.profile.k},
            {"s", r.profile.s_k},
            {"v2_k", r.profile.v2_k},
            {"lambda", r.profile.lambda_k},
            {"mu", r.profile.mu_k},
            {"min_v2", r.min_v2},
            {"argmin_bs", r.argmin_bs},
            {"witness_status", std::string(to_string(r.witness_status))},
            {"details", std::move(details)}};
}

json to_json(const ScanFailure& f) { return {{"k", f.k}, {"check", f.check}, {"detail", f.detail}}; }

json to_json(const ExpansionCheck& c) {
    json out{{"k", c.weight}, {"order", c.order}, {"ok", c.ok}};
    out["first_mismatch"] = c.first_mismatch ? json(*c.first_mismatch) : json(nullptr);
    return out;
}

json to_json(const FaberPolynomial& p) {
    json coeffs = json::array();
    for (std::size_t r = 0; r < p.coeffs.size(); ++r)
        coeffs.push_back({{"r", r}, {"c", to_string(p.coeffs[r])}, {"v2", to_json(v2(p.coeffs[r]))}});
    return {{"degree", p.degree()},
            {"monic_normalized", p.monic_normalized},
            {"divisor", to_string(p.divisor)},
            {"source", p.source},
            {"coeffs", std::move(coeffs)}};
}

json to_json(const NewtonPolygon& p) {
    json hull = json::array();
    for (const auto& v : p.hull) hull.push_back({v.r, v.v});
    json segments = json::array();
    for (const auto& s : p.segments)
        segments.push_back({{"from", {s.from.r, s.from.v}},
                            {"to", {s.to.r, s.to.v}},
                            {"slope", to_string(s.slope)},
                            {"interior_lattice_points", s.interior_lattice_points}});
    return {{"hull", std::move(hull)}, {"segments", std::move(segments)}};
}

json to_json(const DumasCertificate& c) {
    json out{{"verdict", std::string(to_string(c.verdict))}, {"d", c.d}, {"reason", c.reason}, {"polygon", to_json(c.witness)}};
    out["h"] = c.h ? json(*c.h) : json(nullptr);
    return out;
}

}  // namespace g46
