#include "harmext/suite.hpp"

#include <map>
#include <sstream>

#include "harmext/errors.hpp"
#include "harmext/report.hpp"

namespace harmext {

std::vector<EllipticCase> elliptic_cases() {
  std::vector<EllipticCase> out;
  out.push_back({"identity", BoundarySpec::preset("identity"),
                 {1.0, 0.0, "supplied"}});
  out.push_back({"elliptic-trace", BoundarySpec::preset("elliptic-trace"),
                 {1.0, 4.0, "supplied"}});
  const std::pair<int, cplx> half[] = {{1, cplx(1.0, 0.0)}, {-1, cplx(0.5, 0.0)}};
  out.push_back({"z+0.5conj(z)", BoundarySpec::fourier(half),
                 {3.0, 0.0, "supplied"}});
  return out;
}

namespace {

template <class Fn>
void run_one(SuiteResult &result, StatementId id, const std::string &subject,
             Fn &&fn) {
  try {
    VerificationReport rep = fn();
    rep.parameters["subject"] = subject;
    if (!rep.pass) {
      ++result.failures;
    }
    result.degraded = result.degraded || rep.degraded;
    result.reports.push_back(std::move(rep));
  } catch (const ConvergenceFailure &e) {
    result.errors.push_back({to_string(id), subject, e.what(), true});
  } catch (const Error &e) {
    result.errors.push_back({to_string(id), subject, e.what(), false});
  }
}

std::string subject_of(const VerificationReport &rep) {
  if (rep.parameters.contains("subject")) {
    return rep.parameters["subject"].get<std::string>();
  }
  const auto &b = rep.parameters.value("boundary", nlohmann::json::object());
  if (b.value("kind", "") == "preset") {
    return b.value("name", "preset");
  }
  return b.value("kind", "boundary");
}

} // namespace

SuiteResult run_suite(const SuiteConfig &config) {
  if (config.presets.empty()) {
    throw ConfigError("suite needs at least one preset");
  }
  SuiteResult result;
  result.config = to_json(config.verify);
  result.config["presets"] = config.presets;
  auto exps = [](const std::vector<Exponent> &ps) {
    std::vector<std::string> out;
    for (const Exponent &p : ps) {
      out.push_back(p.to_string());
    }
    return out;
  };
  result.config["lemma_ft_p"] = exps(config.lemma_ft_p);
  result.config["lemma_fr_p"] = exps(config.lemma_fr_p);
  result.config["thm1_p"] = exps(config.thm1_p);
  result.config["thm2_p"] = exps(config.thm2_p);

  std::vector<BoundarySpec> specs;
  for (const std::string &name : config.presets) {
    specs.push_back(BoundarySpec::preset(name, config.verify.seed));
  }
  const VerifyConfig &vc = config.verify;
  const std::vector<double> radii = geometric_radii(vc.levels);

  for (std::size_t i = 0; i < specs.size(); ++i) {
    for (const Exponent &p : config.lemma_fr_p) {
      run_one(result, StatementId::LemmaFr, config.presets[i],
              [&] { return check_lemma_fr(specs[i], p, vc); });
    }
  }
  for (std::size_t i = 0; i < specs.size(); ++i) {
    for (const Exponent &p : config.lemma_ft_p) {
      run_one(result, StatementId::LemmaFt, config.presets[i],
              [&] { return check_lemma_ft(specs[i], p, radii, vc); });
    }
  }
  for (std::size_t i = 0; i < specs.size(); ++i) {
    for (const Exponent &p : config.thm1_p) {
      run_one(result, StatementId::Thm1Bergman, config.presets[i],
              [&] { return check_thm1_bergman(specs[i], p, vc); });
    }
  }
  run_one(result, StatementId::Thm1Counterexample, "abs-sin",
          [&] { return run_counterexample(vc.levels, vc); });
  const std::vector<EllipticCase> cases = elliptic_cases();
  for (const EllipticCase &c : cases) {
    for (const Exponent &p : config.thm2_p) {
      run_one(result, StatementId::Thm2FiniteP, c.name, [&] {
        return check_thm2_finite(c.spec, p, c.constants, vc);
      });
    }
  }
  for (const EllipticCase &c : cases) {
    run_one(result, StatementId::Thm2InfiniteP, c.name,
            [&] { return check_thm2_infinite(c.spec, c.constants, vc); });
  }
  return result;
}

nlohmann::json to_json(const SuiteResult &result) {
  nlohmann::json j;
  j["config"] = result.config;
  std::map<std::string, std::pair<int, int>> counts;
  for (StatementId id : all_statements()) {
    counts[to_string(id)] = {0, 0};
  }
  auto reports = nlohmann::json::array();
  auto failed = nlohmann::json::array();
  for (const VerificationReport &rep : result.reports) {
    auto &[runs, passed] = counts[to_string(rep.statement)];
    ++runs;
    if (rep.pass) {
      ++passed;
    } else {
      std::string entry = to_string(rep.statement) + " " + subject_of(rep);
      if (rep.parameters.contains("p")) {
        entry += " p=" + rep.parameters["p"].get<std::string>();
      }
      failed.push_back(entry);
    }
    reports.push_back(to_json(rep));
  }
  auto summary = nlohmann::json::object();
  for (const auto &[name, c] : counts) {
    summary[name] = {{"runs", c.first},
                     {"passed", c.second},
                     {"failed", c.first - c.second}};
  }
  auto errors = nlohmann::json::array();
  for (const SuiteError &e : result.errors) {
    errors.push_back({{"statement", e.statement},
                      {"subject", e.subject},
                      {"message", e.message},
                      {"non_convergence", e.convergence}});
  }
  j["summary"] = summary;
  j["all_pass"] = result.all_pass();
  j["failures"] = failed;
  j["errors"] = errors;
  j["degraded"] = result.degraded;
  j["reports"] = reports;
  return j;
}

std::string to_csv(const std::vector<VerificationReport> &reports) {
  std::ostringstream out;
  out << "statement,boundary,p,K,Kprime,lhs,rhs,margin,pass,degraded\n";
  for (const VerificationReport &rep : reports) {
    const auto &params = rep.parameters;
    std::string K;
    std::string Kp;
    if (params.contains("constants")) {
      K = format_number(params["constants"]["K"].get<double>());
      Kp = format_number(params["constants"]["Kprime"].get<double>());
    }
    out << to_string(rep.statement) << ',' << subject_of(rep) << ','
        << params.value("p", "") << ',' << K << ',' << Kp << ','
        << format_number(rep.lhs) << ',' << format_number(rep.rhs) << ','
        << format_number(rep.margin) << ',' << (rep.pass ? "true" : "false")
        << ',' << (rep.degraded ? "true" : "false") << '\n';
  }
  return out.str();
}

} // namespace harmext
