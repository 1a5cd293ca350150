#pragma once

// Text and JSON forms of the library types. Decimals are written as strings
// so that reports are byte-stable; parsers accept what the writers emit.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pisot/core.hpp"
#include "pisot/empirical.hpp"
#include "pisot/spectrum.hpp"
#include "pisot/transform.hpp"

namespace pisot {

using Json = nlohmann::ordered_json;

/// "a0/q0,a1/q1,..." in the theta-power basis; missing trailing entries are 0.
FieldElement parse_field_element(const PisotNumber& P, std::string_view text);
/// "c0,c1,...;c0,c1,..." as elements of Z[theta].
std::vector<RingElement> parse_ring_list(const PisotNumber& P, std::string_view text);

/// A scalar given either exactly in Q(theta) or as a decimal.
struct Scalar {
  std::optional<FieldElement> exact;
  Real value;
  [[nodiscard]] std::string to_string() const;
};
/// Decimal when the text contains '.', 'e' or 'E'; field element otherwise.
Scalar parse_scalar(const PisotNumber& P, std::string_view text);

std::string format_double(double x);
double parse_double(const Json& j);

Json to_json(const PisotNumber& P);
/// Rebuilds from "d" and "precision_bits" and checks theta against the record.
PisotNumber pisot_from_json(const Json& j);

Json to_json(const MuHatResult& m);
MuHatResult mu_hat_from_json(const Json& j);

Json to_json(const ProductResult& p);

Json to_json(const SpectrumCandidate& c);
SpectrumCandidate candidate_from_json(const PisotNumber& P, const Json& j);

Json to_json(const DigitTrace& t);
Json to_json(const ClusterReport& r);
ClusterReport cluster_report_from_json(const Json& j);
Json to_json(const IntervalEstimate& e);
IntervalEstimate interval_from_json(const Json& j);
Json to_json(const TranslatedReport& r);
Json to_json(const DecayReport& r);
DecayReport decay_from_json(const Json& j);

}  // namespace pisot
