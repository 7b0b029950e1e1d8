#pragma once

#include "powerslab/completion.hpp"
#include "powerslab/hecke.hpp"
#include "powerslab/numerics.hpp"
#include "powerslab/powers.hpp"
#include "powerslab/shadow.hpp"

#include "json.hpp"

namespace powerslab::io {

using nlohmann::json;

inline constexpr const char* kSchema = "powers-lab/1";

// Every artifact carries {"schema": kSchema, "kind": ...}.  Readers throw
// Error(Parse) on malformed input or a schema mismatch.

json params_json(const BsParams& p);
BsParams params_from(const json& j);

json boundary_json(const BoundaryPoint& x);
BoundaryPoint boundary_from(const BsParams& p, const json& j);

json shadow_json(const ShadowSet& s);
ShadowSet shadow_from(const BsParams& p, const json& j);

json classification_json(const Classification& c);

json hecke_json(const HeckeElement& x);

json certificate_json(const PowersCertificate& c);
PowersCertificate certificate_from(const json& j);

json powers_report_json(const PowersReport& r);
PowersReport powers_report_from(const json& j);

json condition_star_json(const BsParams& p, const ConditionStarReport& r);
ConditionStarReport condition_star_from(const json& j);

json norm_estimate_json(const NormEstimate& e);
NormEstimate norm_estimate_from(const json& j);

json decay_json(const DecayReport& r);
DecayReport decay_from(const json& j);

json invertible_average_json(const InvertibleAverageCheck& c);
InvertibleAverageCheck invertible_average_from(const json& j);

// Serialized form used for files and stdout: two-space indent, trailing newline.
std::string dump(const json& j);
json parse(const std::string& text);

}  // namespace powerslab::io
