#include "ury/json_io.hpp"

namespace ury {

Json rat_to_json(const Rat& r) { return rat_str(r); }

Rat rat_from_json(const Json& j) {
  if (j.is_number_integer()) return Rat(j.get<long long>());
  return parse_rat(j.get<std::string>());
}

Json fin_metric_to_json(const FinMetric& m) {
  Json j;
  j["points"] = m.points;
  Json rows = Json::array();
  for (const auto& row : m.dist) {
    Json r = Json::array();
    for (const auto& d : row) r.push_back(rat_to_json(d));
    rows.push_back(r);
  }
  j["dist"] = rows;
  return j;
}

FinMetric fin_metric_from_json(const Json& j) {
  FinMetric m;
  m.points = j.at("points").get<std::vector<int>>();
  for (const auto& row : j.at("dist")) {
    std::vector<Rat> r;
    for (const auto& d : row) r.push_back(rat_from_json(d));
    m.dist.push_back(std::move(r));
  }
  if (m.dist.size() != m.points.size())
    throw std::invalid_argument("fin_metric_from_json: ragged matrix");
  for (const auto& row : m.dist)
    if (row.size() != m.points.size())
      throw std::invalid_argument("fin_metric_from_json: ragged matrix");
  return m;
}

Json request_to_json(const ExtensionRequest& r) {
  Json j;
  j["base"] = r.base;
  Json t = Json::array();
  for (const auto& a : r.targets) t.push_back(rat_to_json(a));
  j["targets"] = t;
  return j;
}

ExtensionRequest request_from_json(const Json& j) {
  ExtensionRequest r;
  r.base = j.at("base").get<std::vector<int>>();
  for (const auto& a : j.at("targets")) r.targets.push_back(rat_from_json(a));
  return r;
}

Json builder_to_json(const UrysohnBuilder& b) {
  Json j;
  j["space"] = fin_metric_to_json(b.space());
  Json log = Json::array();
  for (const auto& e : b.log()) {
    Json entry = request_to_json(e.req);
    entry["point"] = e.point;
    log.push_back(entry);
  }
  j["log"] = log;
  j["cursor"] = {{"round", b.cursor().round},
                 {"universe", b.cursor().universe},
                 {"mask", b.cursor().mask},
                 {"tuple", b.cursor().tuple}};
  return j;
}

Json validation_to_json(const ValidationReport& r) {
  Json j;
  j["ok"] = r.ok();
  Json v = Json::array();
  for (const auto& viol : r.violations) v.push_back(viol.describe());
  j["violations"] = v;
  return j;
}

Json cluster_to_json(const Cluster& k) {
  Json balls = Json::array();
  for (const auto& b : k.balls)
    balls.push_back({{"center", b.center}, {"radius", rat_to_json(b.radius)}});
  return balls;
}

Cluster cluster_from_json(const Json& j) {
  Cluster k;
  for (const auto& b : j) k.balls.push_back({b.at("center").get<int>(), rat_from_json(b.at("radius"))});
  return k;
}

Json dist_to_json(const Dist& d, const std::vector<std::string>& labels) {
  Json j = Json::array();
  for (size_t i = 0; i < d.mass.size(); ++i) {
    Json e;
    e["element"] = i < labels.size() ? labels[i] : std::to_string(i);
    e["mass"] = rat_to_json(d.mass[i]);
    j.push_back(e);
  }
  return j;
}

Json isometry_to_json(const IsometryReport& r) {
  Json j;
  j["precision"] = r.precision;
  j["ok"] = r.ok();
  Json pairs = Json::array();
  for (const auto& e : r.entries) {
    pairs.push_back({{"i", e.i},
                     {"j", e.j},
                     {"embedded", rat_to_json(e.embedded)},
                     {"expected", rat_to_json(e.expected)},
                     {"discrepancy", rat_to_json(e.discrepancy)},
                     {"ok", e.ok}});
  }
  j["pairs"] = pairs;
  return j;
}

Json harness_to_json(const HarnessReport& r) {
  Json j;
  j["all_inside"] = r.all_inside;
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"n", row.n},
                    {"trial", row.trial},
                    {"picked", row.picked},
                    {"sample_dist", rat_to_json(row.sample_dist)},
                    {"envelope", rat_to_json(row.envelope)},
                    {"inside", row.inside}});
  }
  j["rows"] = rows;
  return j;
}

}  // namespace ury
