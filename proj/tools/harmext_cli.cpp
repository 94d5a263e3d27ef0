// Command-line driver: extension, derivatives, norms, constants,
// ellipticity estimates and the inequality checkers.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "harmext/boundary.hpp"
#include "harmext/calculus.hpp"
#include "harmext/constants.hpp"
#include "harmext/ellipticity.hpp"
#include "harmext/errors.hpp"
#include "harmext/extension.hpp"
#include "harmext/norms.hpp"
#include "harmext/report.hpp"
#include "harmext/suite.hpp"
#include "harmext/verify.hpp"

namespace {

using namespace harmext;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNoConvergence = 3;

struct Options {
  std::string input;
  std::string preset;
  std::string p_list;
  std::string K_list;
  std::optional<double> Kprime;
  int levels = 12;
  std::optional<int> N;
  double tol = 1e-8;
  std::uint64_t seed = 42;
  std::string out;
  std::string format = "json";

  // extend / derive
  std::vector<std::string> at;
  double radius = 0.5;
  std::size_t angles = 16;
  bool oracle = false;

  // norm
  std::string scalar = "opnorm";
  std::string kind = "hardy";

  // verify
  std::string statement;
  bool preset_given = false;
};

std::vector<std::string> split(const std::string &text, char sep = ',') {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) {
    if (!item.empty()) {
      parts.push_back(item);
    }
  }
  return parts;
}

double parse_double(const std::string &text, const char *what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) {
      throw std::invalid_argument(text);
    }
    return v;
  } catch (const std::exception &) {
    throw ConfigError(std::string("bad ") + what + " '" + text + "'");
  }
}

std::vector<Exponent> exponents(const std::string &list,
                                std::vector<Exponent> fallback) {
  if (list.empty()) {
    return fallback;
  }
  std::vector<Exponent> ps;
  for (const std::string &s : split(list)) {
    ps.push_back(Exponent::parse(s));
  }
  if (ps.empty()) {
    throw ConfigError("empty exponent list");
  }
  return ps;
}

std::vector<double> numbers(const std::string &list,
                            std::vector<double> fallback, const char *what) {
  if (list.empty()) {
    return fallback;
  }
  std::vector<double> xs;
  for (const std::string &s : split(list)) {
    xs.push_back(parse_double(s, what));
  }
  return xs;
}

BoundarySpec boundary(const Options &o) {
  if (!o.input.empty() && !o.preset.empty()) {
    throw ConfigError("give either --input or --preset, not both");
  }
  if (!o.input.empty()) {
    return load_boundary(o.input, o.seed);
  }
  if (!o.preset.empty()) {
    return BoundarySpec::preset(o.preset, o.seed);
  }
  throw ConfigError("a boundary is required: --input <file> or --preset <name>");
}

ExtensionOptions extension_options(const Options &o) {
  ExtensionOptions e;
  if (!(o.tol > 0.0)) {
    throw ConfigError("--tol must be positive");
  }
  e.tail_tolerance = o.tol;
  if (o.N) {
    if (*o.N < 1) {
      throw ConfigError("--N must be positive");
    }
    e.truncation = *o.N;
    e.adaptive = false;
  }
  return e;
}

VerifyConfig verify_config(const Options &o) {
  if (o.levels < 1) {
    throw ConfigError("--levels must be positive");
  }
  VerifyConfig c;
  c.extension = extension_options(o);
  c.levels = o.levels;
  c.seed = o.seed;
  return c;
}

std::vector<cplx> points(const Options &o) {
  std::vector<cplx> zs;
  for (const std::string &s : o.at) {
    const auto parts = split(s);
    if (parts.size() != 2) {
      throw ConfigError("--at expects x,y");
    }
    zs.emplace_back(parse_double(parts[0], "point"),
                    parse_double(parts[1], "point"));
  }
  if (zs.empty()) {
    if (o.angles == 0) {
      throw ConfigError("--angles must be positive");
    }
    for (std::size_t j = 0; j < o.angles; ++j) {
      zs.push_back(std::polar(o.radius, kTwoPi * static_cast<double>(j) /
                                            static_cast<double>(o.angles)));
    }
  }
  return zs;
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

std::string csv_complex(cplx z) {
  return format_number(z.real()) + ',' + format_number(z.imag());
}

struct Output {
  json doc;
  std::string csv;
  int code = kExitOk;
};

void emit(const Options &o, const Output &out) {
  std::string text;
  if (o.format == "csv") {
    text = out.csv;
  } else {
    text = out.doc.dump(2) + "\n";
  }
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(o.out, std::ios::binary);
  if (!file) {
    throw ConfigError("cannot write '" + o.out + "'");
  }
  file << text;
}

Output run_extend(const Options &o) {
  const BoundarySpec spec = boundary(o);
  DiskField field = extend(spec, extension_options(o));
  Output out;
  json rows = json::array();
  std::string csv = o.oracle ? "x,y,re,im,tail_bound,truncation,degraded,"
                               "oracle_re,oracle_im,oracle_error\n"
                             : "x,y,re,im,tail_bound,truncation,degraded\n";
  for (cplx z : points(o)) {
    PointValue v = field.value(z);
    json row{{"z", complex_json(z)},
             {"f", complex_json(v.value)},
             {"tail_bound", json_number(v.tail_bound)},
             {"truncation", v.truncation},
             {"degraded", v.degraded}};
    csv += csv_complex(z) + ',' + csv_complex(v.value) + ',' +
           format_number(v.tail_bound) + ',' + std::to_string(v.truncation) +
           ',' + (v.degraded ? "true" : "false");
    if (o.oracle) {
      OracleValue ov = extend_oracle(spec, z);
      row["oracle"] = complex_json(ov.value);
      row["oracle_error"] = json_number(ov.error);
      row["difference"] = json_number(std::abs(ov.value - v.value));
      csv += ',' + csv_complex(ov.value) + ',' + format_number(ov.error);
    }
    csv += '\n';
    rows.push_back(std::move(row));
  }
  out.doc = {{"boundary", boundary_to_json(spec)}, {"points", rows}};
  out.csv = csv;
  return out;
}

Output run_derive(const Options &o) {
  const BoundarySpec spec = boundary(o);
  DiskField field = extend(spec, extension_options(o));
  Output out;
  json rows = json::array();
  std::string csv = "x,y,fz_re,fz_im,fzbar_re,fzbar_im,ft_re,ft_im,fr_re,"
                    "fr_im,op_norm,min_stretch,jacobian,degraded\n";
  for (cplx z : points(o)) {
    DerivativePack d = polar(field, z);
    LocalGeometry g = local_geometry(d.fz, d.fzbar);
    json row{{"z", complex_json(z)},
             {"fz", complex_json(d.fz)},
             {"fzbar", complex_json(d.fzbar)},
             {"ft", complex_json(d.ft)},
             {"fr", complex_json(d.fr)},
             {"op_norm", g.op_norm},
             {"min_stretch", g.min_stretch},
             {"jacobian", g.jacobian},
             {"tail_bound", json_number(d.tail_bound)},
             {"degraded", d.degraded}};
    if (g.dilatation) {
      row["dilatation"] = complex_json(*g.dilatation);
    } else {
      row["dilatation"] = nullptr;
    }
    csv += csv_complex(z) + ',' + csv_complex(d.fz) + ',' +
           csv_complex(d.fzbar) + ',' + csv_complex(d.ft) + ',' +
           csv_complex(d.fr) + ',' + format_number(g.op_norm) + ',' +
           format_number(g.min_stretch) + ',' + format_number(g.jacobian) +
           ',' + (d.degraded ? "true" : "false") + '\n';
    rows.push_back(std::move(row));
  }
  out.doc = {{"boundary", boundary_to_json(spec)}, {"points", rows}};
  out.csv = csv;
  return out;
}

Output run_norm(const Options &o) {
  const BoundarySpec spec = boundary(o);
  const auto ps = exponents(o.p_list, {Exponent(2.0)});
  Output out;
  json rows = json::array();
  std::string csv = "kind,scalar,p,value,infinite,degraded\n";
  auto add = [&](const NormReport &rep, const std::string &scalar) {
    json j = to_json(rep);
    j["scalar"] = scalar;
    rows.push_back(j);
    csv += to_string(rep.kind) + ',' + scalar + ',' + rep.p.to_string() + ',' +
           format_number(rep.value) + ',' + (rep.infinite ? "true" : "false") +
           ',' + (rep.degraded ? "true" : "false") + '\n';
  };
  if (o.kind == "boundary") {
    for (const Exponent &p : ps) {
      add(lp_circle_norm(spec, p), "F");
    }
  } else if (o.kind == "boundary-derivative") {
    const BoundarySpec d = boundary_derivative(spec);
    for (const Exponent &p : ps) {
      add(lp_circle_norm(d, p), "F'");
    }
  } else {
    DiskField field = extend(spec, extension_options(o));
    DiskScalar s = scalar_by_name(field, o.scalar);
    for (const Exponent &p : ps) {
      if (o.kind == "hardy") {
        add(hardy_norm(s, p, o.levels), o.scalar);
      } else if (o.kind == "bergman") {
        add(bergman_norm(s, p, o.levels), o.scalar);
      } else if (o.kind == "circle") {
        add(circle_mean(s, o.radius, p), o.scalar);
      } else {
        throw ConfigError("unknown norm kind '" + o.kind + "'");
      }
    }
  }
  out.doc = {{"boundary", boundary_to_json(spec)}, {"norms", rows}};
  out.csv = csv;
  return out;
}

Output run_constants(const Options &o) {
  const auto ps = exponents(
      o.p_list, {Exponent(1.0), Exponent(1.5), Exponent(2.0), Exponent(3.0),
                 Exponent(5.0), Exponent(10.0)});
  Output out;
  json rows = json::array();
  std::string csv = "p,C,bound,margin\n";
  for (const Exponent &p : ps) {
    if (p.is_infinite()) {
      throw UnsupportedExponent("C(p) is defined for finite p only");
    }
    ConstantReport c = c_of_p(p.value());
    rows.push_back(to_json(c));
    csv += p.to_string() + ',' + format_number(c.c_value) + ',' +
           format_number(c.upper_bound) + ',' + format_number(c.margin()) +
           '\n';
  }
  out.doc = {{"constants", rows}};
  out.csv = csv;
  return out;
}

Output run_ellipticity(const Options &o) {
  const BoundarySpec spec = boundary(o);
  DiskField field = extend(spec, extension_options(o));
  const auto Ks = numbers(o.K_list, {1.0}, "K");
  EllipticityGrid grid;
  grid.levels = o.levels;
  EllipticityReport rep = classify(field, Ks, grid);
  Output out;
  out.doc = to_json(rep);
  out.doc["boundary"] = boundary_to_json(spec);
  std::string csv = "K,kprime,qr_constant,sense,classification\n";
  for (const auto &[K, kp] : rep.kprime_scan) {
    csv += format_number(K) + ',' + format_number(kp) + ',' +
           format_number(rep.qr_constant) + ',' + to_string(rep.sense) + ',' +
           rep.classification + '\n';
  }
  out.csv = csv;
  return out;
}

std::optional<EllipticConstants> constants_for(const Options &o,
                                               const BoundarySpec &spec,
                                               const VerifyConfig &vc) {
  const auto Ks = numbers(o.K_list, {}, "K");
  if (Ks.size() > 1) {
    throw ConfigError("verify takes a single --K");
  }
  if (Ks.empty()) {
    if (o.Kprime) {
      throw ConfigError("--Kprime needs --K");
    }
    return std::nullopt;
  }
  if (o.Kprime) {
    return EllipticConstants{Ks.front(), *o.Kprime, "supplied"};
  }
  EllipticityGrid grid;
  grid.levels = vc.levels;
  return certify_constants(extend(spec, vc.extension), Ks.front(), grid);
}

Output run_verify(const Options &o) {
  const StatementId id = parse_statement(o.statement);
  const VerifyConfig vc = verify_config(o);
  std::vector<VerificationReport> reports;
  if (id == StatementId::Thm1Counterexample) {
    reports.push_back(run_counterexample(o.levels, vc));
  } else {
    const BoundarySpec spec = boundary(o);
    if (id == StatementId::Thm2InfiniteP) {
      reports.push_back(check_thm2_infinite(spec, constants_for(o, spec, vc), vc));
    } else {
      const auto ps = exponents(o.p_list, {Exponent(2.0)});
      std::optional<EllipticConstants> ec;
      if (id == StatementId::Thm2FiniteP) {
        ec = constants_for(o, spec, vc);
      }
      const std::vector<double> radii = geometric_radii(o.levels);
      for (const Exponent &p : ps) {
        switch (id) {
        case StatementId::LemmaFt:
          reports.push_back(check_lemma_ft(spec, p, radii, vc));
          break;
        case StatementId::LemmaFr:
          reports.push_back(check_lemma_fr(spec, p, vc));
          break;
        case StatementId::Thm1Bergman:
          reports.push_back(check_thm1_bergman(spec, p, vc));
          break;
        case StatementId::Thm2FiniteP:
          reports.push_back(check_thm2_finite(spec, p, ec, vc));
          break;
        default:
          break;
        }
      }
    }
  }
  Output out;
  bool pass = true;
  json docs = json::array();
  for (const VerificationReport &r : reports) {
    pass = pass && r.pass;
    docs.push_back(to_json(r));
  }
  out.doc = docs.size() == 1 ? docs.front() : json{{"reports", docs}};
  out.csv = to_csv(reports);
  out.code = pass ? kExitOk : kExitFail;
  return out;
}

Output run_suite_command(const Options &o) {
  SuiteConfig config;
  config.verify = verify_config(o);
  if (o.preset_given) {
    config.presets = split(o.preset);
  }
  if (!o.p_list.empty()) {
    const auto ps = exponents(o.p_list, {});
    std::vector<Exponent> finite;
    for (const Exponent &p : ps) {
      if (!p.is_infinite()) {
        finite.push_back(p);
      }
    }
    config.lemma_ft_p = ps;
    config.lemma_fr_p = finite;
    config.thm1_p = finite;
    config.thm2_p = finite;
  }
  SuiteResult result = run_suite(config);
  Output out;
  out.doc = to_json(result);
  out.csv = to_csv(result.reports);
  if (result.failures > 0) {
    out.code = kExitFail;
  } else if (!result.errors.empty()) {
    bool all_convergence = true;
    for (const SuiteError &e : result.errors) {
      all_convergence = all_convergence && e.convergence;
    }
    out.code = all_convergence ? kExitNoConvergence : kExitFail;
  }
  for (const SuiteError &e : result.errors) {
    std::cerr << "error: " << e.statement << " " << e.subject << ": "
              << e.message << "\n";
  }
  return out;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Harmonic extensions of circle data: norms, constants, "
               "ellipticity and inequality checks"};
  app.require_subcommand(1);
  Options o;

  auto boundary_flags = [&](CLI::App *cmd) {
    cmd->add_option("--input", o.input, "Boundary spec JSON file");
    cmd->add_option("--preset", o.preset,
                    "Preset boundary: constant[:v], mode:k, identity, "
                    "conjugate, abs-sin, elliptic-trace, random-trig[:deg]");
  };
  auto common_flags = [&](CLI::App *cmd) {
    cmd->add_option("--N", o.N,
                    "Series truncation; pins N and disables adaptive growth");
    cmd->add_option("--tol", o.tol, "Per-point series tail tolerance")
        ->capture_default_str();
    cmd->add_option("--seed", o.seed, "Seed for random presets and spot checks")
        ->capture_default_str();
    cmd->add_option("--out", o.out, "Write the report to a file");
    cmd->add_option("--format", o.format, "Report format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
  };
  auto point_flags = [&](CLI::App *cmd) {
    cmd->add_option("--at", o.at, "Evaluation point x,y (repeatable)");
    cmd->add_option("--radius", o.radius,
                    "Circle radius when no --at is given")
        ->capture_default_str();
    cmd->add_option("--angles", o.angles,
                    "Equally spaced angles on the circle")
        ->capture_default_str();
  };

  CLI::App *ext = app.add_subcommand("extend", "Evaluate the harmonic extension");
  boundary_flags(ext);
  point_flags(ext);
  common_flags(ext);
  ext->add_flag("--oracle", o.oracle, "Also evaluate the Poisson integral directly");

  CLI::App *der = app.add_subcommand("derive", "Wirtinger and polar derivatives");
  boundary_flags(der);
  point_flags(der);
  common_flags(der);

  CLI::App *nrm = app.add_subcommand("norm", "Circle, Hardy, Bergman and boundary norms");
  boundary_flags(nrm);
  common_flags(nrm);
  nrm->add_option("--p", o.p_list, "Exponents, comma separated, 'inf' allowed");
  nrm->add_option("--scalar", o.scalar, "f, fz, fzbar, ft, ft_over_r, fr, opnorm")
      ->capture_default_str();
  nrm->add_option("--kind", o.kind, "Norm kind")
      ->check(CLI::IsMember(
          {"hardy", "bergman", "circle", "boundary", "boundary-derivative"}))
      ->capture_default_str();
  nrm->add_option("--radius", o.radius, "Radius for --kind circle")
      ->capture_default_str();
  nrm->add_option("--levels", o.levels, "Radial levels r = 1 - 2^-k")
      ->capture_default_str();

  CLI::App *cst = app.add_subcommand("constants", "Table of C(p) and its bound");
  cst->add_option("--p", o.p_list, "Exponents, comma separated");
  cst->add_option("--out", o.out, "Write the report to a file");
  cst->add_option("--format", o.format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();

  CLI::App *ell = app.add_subcommand("ellipticity", "Estimate K' and sup |omega|");
  boundary_flags(ell);
  common_flags(ell);
  ell->add_option("--K", o.K_list, "K values to scan, comma separated");
  ell->add_option("--levels", o.levels, "Grid levels")->capture_default_str();

  CLI::App *ver = app.add_subcommand("verify", "Check one statement");
  ver->add_option("statement", o.statement,
                  "lemma-ft, lemma-fr, thm1-bergman, thm1-counterexample, "
                  "thm2-finite-p, thm2-infinite-p")
      ->required();
  boundary_flags(ver);
  common_flags(ver);
  ver->add_option("--p", o.p_list, "Exponents, comma separated, 'inf' allowed");
  ver->add_option("--K", o.K_list, "Ellipticity constant K");
  ver->add_option("--Kprime", o.Kprime,
                  "Ellipticity constant K'; estimated from a grid when absent");
  ver->add_option("--levels", o.levels, "Radial levels")->capture_default_str();

  CLI::App *sui = app.add_subcommand("suite", "Run every checker");
  sui->add_option("--preset", o.preset, "Presets, comma separated");
  sui->add_option("--p", o.p_list, "Exponents, comma separated, 'inf' allowed");
  sui->add_option("--levels", o.levels, "Radial levels")->capture_default_str();
  common_flags(sui);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    Output out;
    if (*ext) {
      out = run_extend(o);
    } else if (*der) {
      out = run_derive(o);
    } else if (*nrm) {
      out = run_norm(o);
    } else if (*cst) {
      out = run_constants(o);
    } else if (*ell) {
      out = run_ellipticity(o);
    } else if (*ver) {
      out = run_verify(o);
    } else if (*sui) {
      o.preset_given = sui->count("--preset") > 0;
      out = run_suite_command(o);
    }
    emit(o, out);
    return out.code;
  } catch (const ConvergenceFailure &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNoConvergence;
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
