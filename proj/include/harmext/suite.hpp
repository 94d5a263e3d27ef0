#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "harmext/exponent.hpp"
#include "harmext/verify.hpp"

namespace harmext {

struct SuiteConfig {
  VerifyConfig verify;
  std::vector<std::string> presets = preset_names();
  std::vector<Exponent> lemma_ft_p{Exponent(1.0), Exponent(1.5), Exponent(2.0),
                                   Exponent(3.0), Exponent::infinity()};
  std::vector<Exponent> lemma_fr_p{Exponent(1.0), Exponent(1.5), Exponent(2.0),
                                   Exponent(3.0)};
  std::vector<Exponent> thm1_p{Exponent(1.0), Exponent(2.0), Exponent(3.0),
                               Exponent(5.0)};
  std::vector<Exponent> thm2_p{Exponent(1.0), Exponent(2.0), Exponent(3.0)};
};

/// A check that threw instead of producing a report.
struct SuiteError {
  std::string statement;
  std::string subject;
  std::string message;
  bool convergence = false;
};

struct SuiteResult {
  std::vector<VerificationReport> reports;
  std::vector<SuiteError> errors;
  std::size_t failures = 0;
  bool degraded = false;
  nlohmann::json config;

  bool all_pass() const noexcept { return failures == 0 && errors.empty(); }
};

/// The fixed (boundary, K, K') triples the second theorem is checked on:
/// z, z + conj(z)^2/2 and z + conj(z)/2.
struct EllipticCase {
  std::string name;
  BoundarySpec spec;
  EllipticConstants constants;
};
std::vector<EllipticCase> elliptic_cases();

/// Every checker over the preset x exponent matrix, the counterexample and
/// the elliptic cases. Throws ConfigError on an empty preset list.
SuiteResult run_suite(const SuiteConfig &config);

/// Aggregate report: config, per-statement summary, reports in statement
/// order, and the errors.
nlohmann::json to_json(const SuiteResult &result);

/// Lossy CSV export: one row per report, no error estimates.
std::string to_csv(const std::vector<VerificationReport> &reports);

} // namespace harmext
