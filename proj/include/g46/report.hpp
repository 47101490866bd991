#pragma once

// JSON renderings. Every command report has the same envelope:
// {command, inputs, results[], failures[], timing_ms}.

#include "g46/analysis.hpp"
#include "g46/expansion.hpp"
#include "g46/faber.hpp"
#include "g46/newton.hpp"
#include "g46/qseries.hpp"

#include <json.hpp>

#include <string>

namespace g46 {

nlohmann::json make_report(const std::string& command, nlohmann::json inputs);

nlohmann::json to_json(const Valuation& v);
nlohmann::json to_json(const Expansion& e);
nlohmann::json to_json(const WeightReport& r);
nlohmann::json to_json(const ScanFailure& f);
nlohmann::json to_json(const ExpansionCheck& c);
nlohmann::json to_json(const FaberPolynomial& p);
nlohmann::json to_json(const NewtonPolygon& p);
nlohmann::json to_json(const DumasCertificate& c);

}  // namespace g46
