#pragma once

#include <iosfwd>

#include <json.hpp>

#include "solkms/kms.hpp"
#include "solkms/measures.hpp"

namespace solkms {

/// Measure record: {"pieces": [{"start", "end", "coeff", "rate"}, ...]}.
nlohmann::json measure_to_json(const CircleMeasure& m);
CircleMeasure measure_from_json(const nlohmann::json& j);

/// State record: parameter pack plus one measure record per level.
nlohmann::json state_to_json(const KmsState& phi);
KmsState state_from_json(const nlohmann::json& j);

/// CSV density table with header "t,density"; samples evenly spaced in [0,1).
void write_density_csv(std::ostream& out, const CircleMeasure& m, int samples);

}  // namespace solkms
