// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "harmext/calculus.hpp"
#include "harmext/constants.hpp"
#include "harmext/ellipticity.hpp"
#include "harmext/norms.hpp"
#include "harmext/suite.hpp"
#include "harmext/verify.hpp"

using namespace harmext;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

void require(Outcome &o, bool ok, const std::string &what) {
  if (!ok) {
    o.pass = false;
    o.detail += (o.detail.empty() ? "" : "; ") + std::string("failed: ") + what;
  }
}

std::string fmt(const char *f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

std::string subject(const VerificationReport &r) {
  return r.parameters.value("subject", std::string{});
}

std::string p_of(const VerificationReport &r) {
  return r.parameters.value("p", std::string{});
}

const SubCheck *find_sub(const VerificationReport &r, const std::string &name) {
  for (const SubCheck &s : r.subchecks) {
    if (s.name == name) {
      return &s;
    }
  }
  return nullptr;
}

std::vector<const VerificationReport *> of(const SuiteResult &s, StatementId id) {
  std::vector<const VerificationReport *> out;
  for (const VerificationReport &r : s.reports) {
    if (r.statement == id) {
      out.push_back(&r);
    }
  }
  return out;
}

Outcome constant_anchor() {
  Outcome o;
  const double c1 = c_of_p(1.0).c_value;
  const double err = std::abs(c1 - 4.0 * std::log(2.0) / kPi);
  require(o, err <= 1e-8, "C(1) = 4 ln2 / pi");
  double min_margin = 1e300;
  for (double p : {1.0, 1.5, 2.0, 3.0, 5.0, 10.0}) {
    const ConstantReport c = c_of_p(p);
    require(o, c.margin() > 0.0, "bound at p = " + fmt("%g", p));
    min_margin = std::min(min_margin, c.margin());
  }
  o.detail = "|C(1) - 4ln2/pi| = " + fmt("%.2e", err) +
             ", smallest bound margin " + fmt("%.6f", min_margin) +
             (o.detail.empty() ? "" : " " + o.detail);
  return o;
}

Outcome oracle_agreement() {
  Outcome o;
  std::mt19937_64 rng(42);
  auto unit = [&] { return static_cast<double>(rng() >> 11) * 0x1p-53; };
  std::vector<cplx> pts;
  for (int i = 0; i < 100; ++i) {
    pts.push_back(std::polar(0.9 * std::sqrt(unit()), kTwoPi * unit()));
  }
  double worst = 0.0;
  double worst_mean = 0.0;
  for (const std::string &name : preset_names()) {
    const BoundarySpec s = BoundarySpec::preset(name);
    const DiskField f = extend(s);
    for (cplx z : pts) {
      worst = std::max(worst, std::abs(f.value(z).value - extend_oracle(s, z).value));
    }
    worst_mean = std::max(worst_mean, std::abs(f.value(0.0).value - s.coefficient(0)));
  }
  const double abs_sin_centre =
      std::abs(extend(BoundarySpec::preset("abs-sin")).value(0.0).value - 2.0 / kPi);
  require(o, worst <= 1e-8, "series vs oracle");
  require(o, worst_mean <= 1e-12, "f(0) = c_0");
  require(o, abs_sin_centre <= 1e-12, "f(0) = 2/pi for |sin|");
  o.detail = "max |series - oracle| = " + fmt("%.2e", worst) +
             " over 100 points x " + std::to_string(preset_names().size()) +
             " presets, max |f(0) - c_0| = " + fmt("%.2e", worst_mean) +
             (o.detail.empty() ? "" : " " + o.detail);
  return o;
}

Outcome lemma_ft(const SuiteResult &s) {
  Outcome o;
  double worst = 1e300;
  std::size_t n = 0;
  for (const VerificationReport *r : of(s, StatementId::LemmaFt)) {
    ++n;
    const double floor = -(r->error_estimate + 1e-6);
    worst = std::min(worst, r->margin);
    require(o, r->margin >= floor, subject(*r) + " p=" + p_of(*r));
  }
  require(o, n == 6 * 5, "30 reports expected");
  o.detail = std::to_string(n) + " reports, smallest margin " + fmt("%.3e", worst) +
             (o.detail.empty() ? "" : " " + o.detail);
  return o;
}

Outcome lemma_fr(const SuiteResult &s) {
  Outcome o;
  std::size_t n = 0;
  double exact_margin = std::nan("");
  for (const VerificationReport *r : of(s, StatementId::LemmaFr)) {
    const std::string p = p_of(*r);
    if (p != "1" && p != "2" && p != "3") {
      continue;
    }
    ++n;
    require(o, r->pass, subject(*r) + " p=" + p);
    if (subject(*r) == "mode:1" && p == "1") {
      exact_margin = r->margin;
      require(o, std::abs(r->lhs - 1.0) <= 1e-6, "lhs = 1");
      require(o, std::abs(r->rhs - 2.0 * c_of_p(1.0).c_value) <= 1e-6, "rhs = 2C(1)");
    }
  }
  const double expected = 8.0 * std::log(2.0) / kPi - 1.0;
  require(o, std::abs(exact_margin - expected) <= 1e-6, "margin ~ 0.765");
  require(o, n == 6 * 3, "18 reports expected");
  o.detail = std::to_string(n) + " reports, e^{it} p=1 margin " +
             fmt("%.9f", exact_margin) + " (expected " + fmt("%.9f", expected) + ")" +
             (o.detail.empty() ? "" : " " + o.detail);
  return o;
}

Outcome thm1_finite(const SuiteResult &s) {
  Outcome o;
  std::size_t n = 0;
  for (const VerificationReport *r : of(s, StatementId::Thm1Bergman)) {
    ++n;
    const std::string tag = subject(*r) + " p=" + p_of(*r);
    const SubCheck *fz = find_sub(*r, "fz-area-norm-finite");
    const SubCheck *fzbar = find_sub(*r, "fzbar-area-norm-finite");
    const SubCheck *outer = find_sub(*r, "outer-ft-over-r-bound");
    require(o, fz && fz->pass && fzbar && fzbar->pass, tag + " finite");
    require(o, outer && outer->pass, tag + " outer bound");
    require(o, r->pass, tag);
  }
  require(o, n == 6 * 4, "24 reports expected");
  o.detail = std::to_string(n) + " reports (p in 1,2,3,5), no divergence flags" +
             (o.detail.empty() ? "" : " " + o.detail);
  return o;
}

Outcome counterexample(const SuiteResult &s) {
  Outcome o;
  const auto reps = of(s, StatementId::Thm1Counterexample);
  if (reps.size() != 1) {
    return {false, "counterexample report missing"};
  }
  const VerificationReport &r = *reps.front();
  const auto seq = r.diagnostics["abs_fz"].get<std::vector<double>>();
  bool increasing = seq.size() >= 12;
  for (std::size_t k = 4; increasing && k < 12; ++k) {
    increasing = seq[k] > seq[k - 1];
  }
  require(o, increasing, "strictly increasing for k = 4..12");
  const SubCheck *crossed = find_sub(r, "threshold-crossed-by-level-14");
  require(o, crossed && crossed->pass, "exceeds 2 by k = 14");
  require(o, r.diagnostics["fz_sup_norm"] == "inf" && r.diagnostics["fzbar_sup_norm"] == "inf",
          "+inf marker");
  double worst = 0.0;
  for (const char *name :
       {"polar-identity-r0.5", "polar-identity-r0.9", "polar-identity-r0.99"}) {
    const SubCheck *id = find_sub(r, name);
    require(o, id && id->pass, name);
    if (id) {
      worst = std::max(worst, id->lhs);
    }
  }
  require(o, r.pass, "report");
  o.detail = "|f_z(1-2^-12)| = " + fmt("%.6f", seq.size() >= 12 ? seq[11] : 0.0) +
             ", sup marker " + r.diagnostics["fz_sup_norm"].get<std::string>() +
             ", polar identity max diff " + fmt("%.1e", worst) +
             (o.detail.empty() ? "" : " " + o.detail);
  return o;
}

Outcome ellipticity_anchors() {
  Outcome o;
  const DiskField trace = extend(BoundarySpec::preset("elliptic-trace"));
  const EllipticityReport e = min_kprime(trace, 1.0);
  const double lo = 4.0 - 8.0 * std::ldexp(1.0, -12);
  require(o, e.kprime_estimate >= lo && e.kprime_estimate <= 4.0, "K' window");
  for (std::size_t i = 1; i < e.kprime_trend.size(); ++i) {
    require(o, e.kprime_trend[i] >= e.kprime_trend[i - 1], "K' monotone");
  }
  const EllipticityReport q = qr_constant(trace);
  require(o, q.qr_trends_to_one, "sup|omega| trend to 1");
  const std::pair<int, cplx> half[] = {{1, 1.0}, {-1, 0.5}};
  const double qh = qr_constant(extend(BoundarySpec::fourier(half))).qr_constant;
  require(o, std::abs(qh - 0.5) <= 1e-10, "z + conj(z)/2");
  o.detail = "K'(K=1) = " + fmt("%.6f", e.kprime_estimate) + " in [" + fmt("%.6f", lo) +
             ", 4], sup|omega| = " + fmt("%.6f", q.qr_constant) +
             ", q(z + conj(z)/2) = " + fmt("%.12f", qh) +
             (o.detail.empty() ? "" : " " + o.detail);
  return o;
}

Outcome thm2_finite(const SuiteResult &s) {
  Outcome o;
  std::size_t n = 0;
  for (const VerificationReport *r : of(s, StatementId::Thm2FiniteP)) {
    ++n;
    const std::string tag = subject(*r) + " p=" + p_of(*r);
    const SubCheck *cpw = find_sub(*r, "min-stretch-lower-bound");
    require(o, r->pass, tag);
    require(o, cpw && cpw->pass, tag + " pointwise");
  }
  require(o, n == 9, "9 reports expected");
  o.detail = std::to_string(n) + " reports, pointwise bound at 100 points each" +
             (o.detail.empty() ? "" : " " + o.detail);
  return o;
}

Outcome thm2_infinite(const SuiteResult &s) {
  Outcome o;
  std::size_t n = 0;
  double tight = std::nan("");
  for (const VerificationReport *r : of(s, StatementId::Thm2InfiniteP)) {
    ++n;
    require(o, r->pass, subject(*r));
    if (subject(*r) == "identity") {
      tight = r->margin;
    }
  }
  require(o, std::abs(tight) <= 1e-6, "f = z margin 0");
  require(o, n == 3, "3 reports expected");
  o.detail = std::to_string(n) + " reports, f = z margin " + fmt("%.2e", tight) +
             (o.detail.empty() ? "" : " " + o.detail);
  return o;
}

Outcome hygiene() {
  Outcome o;
  double parseval = 0.0;
  for (const std::string &name : {"random-trig", "abs-sin", "elliptic-trace"}) {
    const BoundarySpec s = BoundarySpec::preset(name);
    const DiskField f = extend(s);
    for (double r : {0.3, 0.7, 0.9}) {
      double energy = 0.0;
      for (int n = -4000; n <= 4000; ++n) {
        energy += std::norm(s.coefficient(n)) * std::pow(r, 2 * std::abs(n));
      }
      const double m = circle_mean(abs_value(f), r, Exponent(2.0)).value;
      parseval = std::max(parseval, std::abs(m * m - energy));
    }
  }
  require(o, parseval <= 1e-10, "Parseval");

  double wirt = 0.0;
  const double h = 1e-5;
  const cplx i(0.0, 1.0);
  for (const std::string &name : preset_names()) {
    const DiskField f = extend(BoundarySpec::preset(name));
    for (cplx z : {cplx(0.3, 0.2), cplx(-0.5, 0.4), cplx(0.1, -0.85)}) {
      const cplx fx = (f.value(z + h).value - f.value(z - h).value) / (2.0 * h);
      const cplx fy = (f.value(z + i * h).value - f.value(z - i * h).value) / (2.0 * h);
      const auto [fz, fzbar] = wirtinger(f, z);
      wirt = std::max({wirt, std::abs(fz - 0.5 * (fx - i * fy)),
                       std::abs(fzbar - 0.5 * (fx + i * fy))});
    }
  }
  require(o, wirt <= 1e-6, "Wirtinger vs differences");

  SuiteConfig small;
  small.presets = {"abs-sin", "random-trig"};
  small.lemma_ft_p = {Exponent(2.0), Exponent::infinity()};
  small.lemma_fr_p = {Exponent(2.0)};
  small.thm1_p = {Exponent(2.0)};
  small.thm2_p = {Exponent(2.0)};
  small.verify.levels = 8;
  const std::string first = to_json(run_suite(small)).dump();
  const std::string second = to_json(run_suite(small)).dump();
  require(o, first == second, "byte-identical reruns");

  const auto radii = geometric_radii(12);
  const BoundarySpec id = BoundarySpec::preset("identity");
  VerifyConfig scaled;
  scaled.rhs_scale = 0.9;
  const bool before = check_lemma_ft(id, Exponent(2.0), radii).pass;
  const bool after = check_lemma_ft(id, Exponent(2.0), radii, scaled).pass;
  require(o, before && !after, "forced failure");

  o.detail = "Parseval " + fmt("%.1e", parseval) + ", Wirtinger " + fmt("%.1e", wirt) +
             ", reruns " + (first == second ? "identical" : "differ") +
             ", forced failure " + (before && !after ? "flips" : "does not flip") +
             (o.detail.empty() ? "" : " " + o.detail);
  return o;
}

} // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  const SuiteResult suite = run_suite(SuiteConfig{});

  struct Criterion {
    int id;
    const char *name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "constant anchor", constant_anchor},
      {2, "oracle agreement", oracle_agreement},
      {3, "f_t lemma", [&] { return lemma_ft(suite); }},
      {4, "f_r lemma (area norm)", [&] { return lemma_fr(suite); }},
      {5, "first theorem, finite p", [&] { return thm1_finite(suite); }},
      {6, "first theorem, counterexample", [&] { return counterexample(suite); }},
      {7, "ellipticity anchors", ellipticity_anchors},
      {8, "second theorem, finite p", [&] { return thm2_finite(suite); }},
      {9, "second theorem, p = inf", [&] { return thm2_infinite(suite); }},
      {10, "numerical hygiene", hygiene},
  };
  int failed = 0;
  for (const Criterion &c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception &e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::printf("[%s] %2d %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str());
  }
  for (const SuiteError &e : suite.errors) {
    std::printf("suite error: %s %s: %s\n", e.statement.c_str(), e.subject.c_str(),
                e.message.c_str());
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%d/%zu criteria passed in %.1f s\n",
              static_cast<int>(criteria.size()) - failed, criteria.size(), secs);
  return failed == 0 && suite.errors.empty() ? 0 : 1;
}
