#pragma once

#include <json.hpp>

#include "ury/domain_rep.hpp"
#include "ury/embedding.hpp"
#include "ury/fin_metric.hpp"
#include "ury/prob_select.hpp"
#include "ury/urysohn.hpp"

namespace ury {

using Json = nlohmann::ordered_json;

Json rat_to_json(const Rat& r);
Rat rat_from_json(const Json& j);

Json fin_metric_to_json(const FinMetric& m);
FinMetric fin_metric_from_json(const Json& j);

Json request_to_json(const ExtensionRequest& r);
ExtensionRequest request_from_json(const Json& j);

// Builder state: the space plus the realized request log and the cursor.
Json builder_to_json(const UrysohnBuilder& b);

Json validation_to_json(const ValidationReport& r);

Json cluster_to_json(const Cluster& k);
Cluster cluster_from_json(const Json& j);

Json dist_to_json(const Dist& d, const std::vector<std::string>& labels);

Json isometry_to_json(const IsometryReport& r);

Json harness_to_json(const HarnessReport& r);

}  // namespace ury
