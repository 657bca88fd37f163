#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include <qgauge/config.hpp>
#include <qgauge/verify.hpp>

namespace qgauge {

inline constexpr const char* kToolVersion = "0.1.0";

/// Everything one `verify` run produced. overall_pass requires every
/// executed check (and the Hopf estimate, when run) to pass.
struct VerificationReport {
  DomainConfig domain;
  std::vector<CheckReport> checks;
  std::optional<HopfEstimate> hopf;
  std::string tool_version = kToolVersion;
  bool overall_pass = false;
};

nlohmann::json witness_to_json(const Witness& w);
nlohmann::json check_to_json(const CheckReport& r);
nlohmann::json hopf_to_json(const HopfEstimate& h);
nlohmann::json report_to_json(const VerificationReport& report);

/// Serialized report: 2-space indentation, sorted keys, trailing newline.
/// Doubles print in shortest round-trip form, so identical runs produce
/// byte-identical files.
std::string dump_report(const VerificationReport& report);

}  // namespace qgauge
