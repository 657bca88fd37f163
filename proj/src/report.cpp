#include <qgauge/report.hpp>

namespace qgauge {

using nlohmann::json;

json witness_to_json(const Witness& w) {
  json values = json::object();
  for (const auto& [key, value] : w.values) values[key] = value;
  std::vector<double> point(w.point.data(), w.point.data() + w.point.size());
  return json{{"point", point}, {"values", values}};
}

json check_to_json(const CheckReport& r) {
  json j{{"check_name", r.check_name},
         {"samples", r.samples},
         {"worst_violation", r.worst_violation},
         {"threshold", r.threshold},
         {"pass", r.pass},
         {"seed", r.seed},
         {"jet_failures", r.jet_failures}};
  if (r.witness) j["witness"] = witness_to_json(*r.witness);
  return j;
}

json hopf_to_json(const HopfEstimate& h) {
  return json{{"c_hat", h.c_hat},
              {"samples", h.samples},
              {"boundary_mesh_size", h.boundary_mesh_size},
              {"pass", h.pass}};
}

json report_to_json(const VerificationReport& report) {
  json checks = json::array();
  for (const CheckReport& c : report.checks) checks.push_back(check_to_json(c));
  json j{{"domain", config_to_json(report.domain)},
         {"checks", checks},
         {"tool_version", report.tool_version},
         {"overall_pass", report.overall_pass}};
  j["hopf"] = report.hopf ? hopf_to_json(*report.hopf) : json(nullptr);
  return j;
}

std::string dump_report(const VerificationReport& report) {
  return report_to_json(report).dump(2) + "\n";
}

}  // namespace qgauge
