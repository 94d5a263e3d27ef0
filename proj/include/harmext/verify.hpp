#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "harmext/boundary.hpp"
#include "harmext/ellipticity.hpp"
#include "harmext/exponent.hpp"
#include "harmext/extension.hpp"
#include "harmext/norms.hpp"

namespace harmext {

enum class StatementId {
  LemmaFt,
  LemmaFr,
  Thm1Bergman,
  Thm1Counterexample,
  Thm2FiniteP,
  Thm2InfiniteP,
};

std::string to_string(StatementId id);
StatementId parse_statement(const std::string &name);
std::vector<StatementId> all_statements();

struct VerifyConfig {
  ExtensionOptions extension;
  int levels = 12;
  CircleMeanOptions circle;
  std::size_t base_angular = 16;
  std::uint64_t seed = 42;
  std::size_t spot_checks = 100;
  /// Multiplies every right-hand side. Only for forced-failure tests.
  double rhs_scale = 1.0;
};

nlohmann::json to_json(const VerifyConfig &config);

/// A secondary inequality checked alongside the main statement. Non-gating
/// sub-checks are reported but do not affect `pass`.
struct SubCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  double error_estimate = 0.0;
  bool pass = false;
  bool gating = true;
  std::string note;
};

struct VerificationReport {
  StatementId statement = StatementId::LemmaFt;
  nlohmann::json parameters;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  double error_estimate = 0.0;
  double slack = 0.0;
  bool pass = false;
  bool degraded = false;
  std::vector<SubCheck> subchecks;
  std::vector<std::string> notes;
  nlohmann::json diagnostics = nlohmann::json::object();
};

/// Slack added to every error estimate: 1e-6 (1 + |rhs|).
double slack_for(double rhs);
/// margin >= -(error + slack)
bool within_tolerance(double margin, double error, double rhs);

nlohmann::json to_json(const VerificationReport &report);

/// ||f_t||_p <= ||F'||_{L^p}: the left side is the largest circle mean of
/// |f_t| over `radii` (circle maxima for p = inf).
VerificationReport check_lemma_ft(const BoundarySpec &spec, Exponent p,
                                  std::span<const double> radii,
                                  const VerifyConfig &config = {});

/// ||f_r||_{b^p} <= (2 C(p))^{1/p} ||F'||_{L^p}, reading the left norm as the
/// area norm.
VerificationReport check_lemma_fr(const BoundarySpec &spec, Exponent p,
                                  const VerifyConfig &config = {});

/// f_z and conj(f_zbar) have finite area p-norms; checks the pointwise
/// majorant (|f_r|^p + |f_t/r|^p)/2 after integration and the two halves of
/// the split at |z| = 1/2.
VerificationReport check_thm1_bergman(const BoundarySpec &spec, Exponent p,
                                      const VerifyConfig &config = {});

/// |f_z| and |f_zbar| along r = 1 - 2^{-k} for F = |sin theta|.
VerificationReport run_counterexample(int levels,
                                      const VerifyConfig &config = {});

struct EllipticConstants {
  double K = 1.0;
  double Kprime = 0.0;
  std::string source = "supplied";
};

/// K' from the ellipticity grid (extrapolated), inflated by 5%.
EllipticConstants certify_constants(const DiskField &field, double K,
                                    const EllipticityGrid &grid = {});

/// sup_r M_p(r, ||D_f||) <= 2^{(p-1)/p} (K^p ||F'||_p^p + K'^{p/2})^{1/p},
/// plus pointwise lower bounds on l(D_f)^p at seeded grid points. Throws
/// ConfigError when `constants` is empty.
VerificationReport
check_thm2_finite(const BoundarySpec &spec, Exponent p,
                  const std::optional<EllipticConstants> &constants,
                  const VerifyConfig &config = {});

/// sup |z| ||D_f(z)|| <= sqrt(K') + K ||F'||_inf, plus the intermediate chain
/// ||F'||_inf >= |f_t| >= r l(D_f) >= (r/K)(||D_f|| - sqrt(K')) at seeded
/// points.
VerificationReport
check_thm2_infinite(const BoundarySpec &spec,
                    const std::optional<EllipticConstants> &constants,
                    const VerifyConfig &config = {});

} // namespace harmext
