#include "harmext/boundary.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <random>
#include <sstream>

#include "harmext/errors.hpp"
#include "harmext/fft.hpp"
#include "harmext/quadrature.hpp"
#include "harmext/summation.hpp"

namespace harmext {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMaxDerivativeOrder = 4;

cplx i_power(int m) {
  switch (((m % 4) + 4) % 4) {
  case 0:
    return {1.0, 0.0};
  case 1:
    return {0.0, 1.0};
  case 2:
    return {-1.0, 0.0};
  default:
    return {0.0, -1.0};
  }
}

/// (i n)^m
cplx derivative_factor(int n, int m) {
  return i_power(m) * std::pow(static_cast<double>(n), m);
}

double abs_sin_coefficient(int n) {
  if (n == 0) {
    return 2.0 / kPi;
  }
  if (n % 2 != 0) {
    return 0.0;
  }
  const double nn = static_cast<double>(n);
  return -(2.0 / kPi) / (nn * nn - 1.0);
}

std::vector<std::pair<int, cplx>> random_trig_coefficients(std::uint64_t seed,
                                                           int degree) {
  std::mt19937_64 rng(seed);
  auto uniform = [&rng]() {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0;
  };
  std::vector<std::pair<int, cplx>> out;
  for (int n = -degree; n <= degree; ++n) {
    const double re = uniform();
    const double im = uniform();
    const double scale = 1.0 / (1.0 + static_cast<double>(n) * n);
    out.emplace_back(n, cplx{re, im} * scale);
  }
  return out;
}

/// Nonzero coefficients of a trigonometric-polynomial preset (order 0).
std::vector<std::pair<int, cplx>> trig_terms(const Preset &p) {
  switch (p.kind) {
  case PresetKind::Constant:
    return {{0, p.constant}};
  case PresetKind::Mode:
    return {{p.mode, cplx{1.0, 0.0}}};
  case PresetKind::EllipticTrace:
    return {{1, cplx{1.0, 0.0}}, {-2, cplx{0.5, 0.0}}};
  case PresetKind::RandomTrig:
    return random_trig_coefficients(p.seed, p.degree);
  case PresetKind::AbsSin:
    break;
  }
  return {};
}

cplx evaluate_terms(std::span<const std::pair<int, cplx>> terms, int order,
                    double theta) {
  std::vector<cplx> parts;
  parts.reserve(terms.size());
  for (const auto &[n, c] : terms) {
    parts.push_back(derivative_factor(n, order) * c *
                    std::polar(1.0, static_cast<double>(n) * theta));
  }
  return pairwise_sum(std::span<const cplx>(parts));
}

int parse_int(std::string_view text, std::string_view what) {
  int value = 0;
  auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw InvalidInput("cannot parse " + std::string(what) + " '" +
                       std::string(text) + "'");
  }
  return value;
}

double parse_double(std::string_view text, std::string_view what) {
  double value = 0.0;
  auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw InvalidInput("cannot parse " + std::string(what) + " '" +
                       std::string(text) + "'");
  }
  return value;
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

} // namespace

// ---------------------------------------------------------------------------
// FourierCoefficients

FourierCoefficients::FourierCoefficients(int truncation,
                                         std::vector<cplx> values,
                                         double tail_estimate)
    : n_(truncation), values_(std::move(values)), tail_(tail_estimate) {
  if (truncation < 0) {
    throw InvalidInput("truncation must be >= 0");
  }
  if (values_.size() != static_cast<std::size_t>(2 * truncation + 1)) {
    throw InvalidInput("coefficient vector must hold 2N+1 values");
  }
  for (const cplx &c : values_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw InvalidInput("non-finite Fourier coefficient");
    }
  }
  if (!(tail_ >= 0.0)) {
    throw InvalidInput("tail estimate must be >= 0");
  }
}

cplx FourierCoefficients::at(int n) const noexcept {
  if (n < -n_ || n > n_) {
    return {};
  }
  return values_[static_cast<std::size_t>(n + n_)];
}

// ---------------------------------------------------------------------------
// Preset

Preset Preset::parse(std::string_view name, std::uint64_t seed) {
  Preset p;
  p.seed = seed;
  auto colon = name.find(':');
  std::string_view head = name.substr(0, colon);
  std::string_view arg =
      colon == std::string_view::npos ? std::string_view{} : name.substr(colon + 1);

  if (head == "constant") {
    p.kind = PresetKind::Constant;
    if (!arg.empty()) {
      p.constant = cplx{parse_double(arg, "constant value"), 0.0};
    }
  } else if (head == "mode") {
    p.kind = PresetKind::Mode;
    if (arg.empty()) {
      throw InvalidInput("preset 'mode' needs a frequency, e.g. mode:2");
    }
    p.mode = parse_int(arg, "mode frequency");
  } else if (head == "identity" && arg.empty()) {
    p.kind = PresetKind::Mode;
    p.mode = 1;
  } else if (head == "conjugate" && arg.empty()) {
    p.kind = PresetKind::Mode;
    p.mode = -1;
  } else if (head == "abs-sin" && arg.empty()) {
    p.kind = PresetKind::AbsSin;
  } else if (head == "elliptic-trace" && arg.empty()) {
    p.kind = PresetKind::EllipticTrace;
  } else if (head == "random-trig") {
    p.kind = PresetKind::RandomTrig;
    if (!arg.empty()) {
      p.degree = parse_int(arg, "random-trig degree");
      if (p.degree < 0) {
        throw InvalidInput("random-trig degree must be >= 0");
      }
    }
  } else {
    throw InvalidInput("unknown preset '" + std::string(name) + "'");
  }
  return p;
}

std::string Preset::name() const {
  std::string base;
  switch (kind) {
  case PresetKind::Constant:
    base = constant == cplx{1.0, 0.0}
               ? "constant"
               : "constant:" + format_double(constant.real());
    break;
  case PresetKind::Mode:
    base = "mode:" + std::to_string(mode);
    break;
  case PresetKind::AbsSin:
    base = "abs-sin";
    break;
  case PresetKind::EllipticTrace:
    base = "elliptic-trace";
    break;
  case PresetKind::RandomTrig:
    base = degree == 6 ? "random-trig" : "random-trig:" + std::to_string(degree);
    break;
  }
  if (derivative_order > 0) {
    return "d" + std::to_string(derivative_order) + "/dtheta " + base;
  }
  return base;
}

std::vector<std::string> preset_names() {
  return {"constant", "mode:1", "mode:-1", "abs-sin", "elliptic-trace",
          "random-trig"};
}

// ---------------------------------------------------------------------------
// BoundarySpec

BoundarySpec BoundarySpec::preset(Preset p) {
  if (p.derivative_order < 0 || p.derivative_order > kMaxDerivativeOrder) {
    throw InvalidInput("unsupported derivative order");
  }
  if (p.kind == PresetKind::AbsSin && p.derivative_order > 1) {
    throw InvalidInput("|sin| is only differentiable once a.e.");
  }
  if (p.kind == PresetKind::RandomTrig && p.degree < 0) {
    throw InvalidInput("random-trig degree must be >= 0");
  }
  return BoundarySpec(std::move(p));
}

BoundarySpec BoundarySpec::preset(std::string_view name, std::uint64_t seed) {
  return preset(Preset::parse(name, seed));
}

BoundarySpec
BoundarySpec::fourier(std::span<const std::pair<int, cplx>> coeffs) {
  int n_max = 0;
  for (const auto &[n, c] : coeffs) {
    n_max = std::max(n_max, std::abs(n));
  }
  std::vector<cplx> values(static_cast<std::size_t>(2 * n_max + 1));
  for (const auto &[n, c] : coeffs) {
    values[static_cast<std::size_t>(n + n_max)] += c;
  }
  return fourier(FourierCoefficients(n_max, std::move(values), 0.0));
}

BoundarySpec BoundarySpec::fourier(FourierCoefficients coeffs) {
  return BoundarySpec(FourierData{std::move(coeffs)});
}

BoundarySpec BoundarySpec::sampled(std::vector<cplx> samples, bool smooth) {
  if (samples.size() < 16 || !fft::is_power_of_two(samples.size())) {
    throw InvalidInput("sampled boundary data needs a power-of-two count >= 16");
  }
  for (const cplx &v : samples) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw InvalidInput("non-finite boundary sample");
    }
  }
  SampledData d;
  d.spectrum = fft::transform(samples, -1);
  const double inv = 1.0 / static_cast<double>(samples.size());
  for (cplx &c : d.spectrum) {
    c *= inv;
  }
  d.samples = std::move(samples);
  d.smooth = smooth;
  return BoundarySpec(std::move(d));
}

SpecKind BoundarySpec::kind() const noexcept {
  switch (data_.index()) {
  case 0:
    return SpecKind::Preset;
  case 1:
    return SpecKind::Fourier;
  default:
    return SpecKind::Sampled;
  }
}

std::string BoundarySpec::describe() const {
  if (const auto *p = std::get_if<Preset>(&data_)) {
    return "preset " + p->name();
  }
  if (const auto *f = std::get_if<FourierData>(&data_)) {
    return "fourier N=" + std::to_string(f->coeffs.truncation());
  }
  return "sampled M=" + std::to_string(std::get<SampledData>(data_).samples.size());
}

const Preset *BoundarySpec::as_preset() const noexcept {
  return std::get_if<Preset>(&data_);
}

std::span<const cplx> BoundarySpec::samples() const {
  if (const auto *s = std::get_if<SampledData>(&data_)) {
    return s->samples;
  }
  return {};
}

bool BoundarySpec::smooth() const noexcept {
  if (const auto *s = std::get_if<SampledData>(&data_)) {
    return s->smooth;
  }
  return true;
}

cplx BoundarySpec::evaluate(double theta) const {
  if (const auto *p = std::get_if<Preset>(&data_)) {
    if (p->kind == PresetKind::AbsSin) {
      const double s = std::sin(theta);
      if (p->derivative_order == 0) {
        return {std::abs(s), 0.0};
      }
      const double sign = s > 0.0 ? 1.0 : (s < 0.0 ? -1.0 : 0.0);
      return {std::cos(theta) * sign, 0.0};
    }
    auto terms = trig_terms(*p);
    return evaluate_terms(terms, p->derivative_order, theta);
  }
  if (const auto *f = std::get_if<FourierData>(&data_)) {
    const int n_max = f->coeffs.truncation();
    std::vector<cplx> parts;
    parts.reserve(static_cast<std::size_t>(2 * n_max + 1));
    for (int n = -n_max; n <= n_max; ++n) {
      parts.push_back(f->coeffs.at(n) *
                      std::polar(1.0, static_cast<double>(n) * theta));
    }
    return pairwise_sum(std::span<const cplx>(parts));
  }
  // Trigonometric interpolant of the samples; the Nyquist term is split.
  const auto &s = std::get<SampledData>(data_);
  const int m = static_cast<int>(s.samples.size());
  std::vector<cplx> parts;
  parts.reserve(s.spectrum.size());
  for (int n = -m / 2; n <= m / 2; ++n) {
    cplx c = s.spectrum[static_cast<std::size_t>((n % m + m) % m)];
    if (std::abs(n) == m / 2) {
      c *= 0.5;
    }
    parts.push_back(c * std::polar(1.0, static_cast<double>(n) * theta));
  }
  return pairwise_sum(std::span<const cplx>(parts));
}

std::vector<double> BoundarySpec::corners() const {
  if (const auto *p = std::get_if<Preset>(&data_)) {
    if (p->kind == PresetKind::AbsSin) {
      return {0.0, kPi};
    }
  }
  return {};
}

bool BoundarySpec::is_real_valued() const {
  if (const auto *p = std::get_if<Preset>(&data_)) {
    switch (p->kind) {
    case PresetKind::Constant:
      return p->constant.imag() == 0.0 || p->derivative_order > 0;
    case PresetKind::AbsSin:
      return true;
    default:
      return false;
    }
  }
  if (const auto *f = std::get_if<FourierData>(&data_)) {
    const int n_max = f->coeffs.truncation();
    for (int n = 0; n <= n_max; ++n) {
      if (f->coeffs.at(-n) != std::conj(f->coeffs.at(n))) {
        return false;
      }
    }
    return true;
  }
  for (const cplx &v : std::get<SampledData>(data_).samples) {
    if (v.imag() != 0.0) {
      return false;
    }
  }
  return true;
}

int BoundarySpec::degree() const {
  if (const auto *p = std::get_if<Preset>(&data_)) {
    if (p->kind == PresetKind::AbsSin) {
      return -1;
    }
    int d = 0;
    for (const auto &[n, c] : trig_terms(*p)) {
      if (c != cplx{} && derivative_factor(n, p->derivative_order) != cplx{}) {
        d = std::max(d, std::abs(n));
      }
    }
    return d;
  }
  if (const auto *f = std::get_if<FourierData>(&data_)) {
    int d = 0;
    for (int n = -f->coeffs.truncation(); n <= f->coeffs.truncation(); ++n) {
      if (f->coeffs.at(n) != cplx{}) {
        d = std::max(d, std::abs(n));
      }
    }
    return d;
  }
  return static_cast<int>(std::get<SampledData>(data_).samples.size() / 2);
}

int BoundarySpec::max_truncation() const {
  if (const auto *s = std::get_if<SampledData>(&data_)) {
    return static_cast<int>(s->samples.size() / 2) - 1;
  }
  return degree();
}

cplx BoundarySpec::coefficient(int n) const {
  if (const auto *p = std::get_if<Preset>(&data_)) {
    if (p->kind == PresetKind::AbsSin) {
      return derivative_factor(n, p->derivative_order) *
             abs_sin_coefficient(n);
    }
    cplx sum{};
    for (const auto &[k, c] : trig_terms(*p)) {
      if (k == n) {
        sum += c;
      }
    }
    return derivative_factor(n, p->derivative_order) * sum;
  }
  if (const auto *f = std::get_if<FourierData>(&data_)) {
    return f->coeffs.at(n);
  }
  const auto &s = std::get<SampledData>(data_);
  const int m = static_cast<int>(s.samples.size());
  if (std::abs(n) >= m / 2) {
    return {};
  }
  return s.spectrum[static_cast<std::size_t>((n % m + m) % m)];
}

double BoundarySpec::coefficient_tail(int truncation, int order,
                                      double r) const {
  if (truncation < 0) {
    throw InvalidInput("truncation must be >= 0");
  }
  auto explicit_tail = [&](int n_hi) {
    std::vector<double> parts;
    for (int n = truncation + 1; n <= n_hi; ++n) {
      for (int sgn : {1, -1}) {
        const double c = std::abs(coefficient(sgn * n));
        if (c != 0.0) {
          parts.push_back(std::pow(static_cast<double>(n), order) * c *
                          std::pow(r, n - order));
        }
      }
    }
    return pairwise_sum(std::span<const double>(parts));
  };

  if (const auto *p = std::get_if<Preset>(&data_)) {
    if (p->kind != PresetKind::AbsSin) {
      return explicit_tail(degree());
    }
    // |c_n| <= (2/pi) n^q / (n^2 - 1) over even n; for q <= 2 the weight is
    // nonincreasing in n >= 2, so the first even index past N dominates.
    const int q = p->derivative_order + order;
    const int n0 = truncation % 2 == 0 ? truncation + 2 : truncation + 1;
    const double nn = static_cast<double>(n0);
    if (r >= 1.0) {
      if (q == 0) {
        return (2.0 / kPi) / (nn - 1.0);
      }
      return kInf;
    }
    if (q > 2) {
      return kInf;
    }
    const double weight = (2.0 / kPi) * std::pow(nn, q) / (nn * nn - 1.0);
    return 2.0 * weight * std::pow(r, n0 - order) / (1.0 - r * r);
  }
  if (std::holds_alternative<FourierData>(data_)) {
    return explicit_tail(degree());
  }
  return explicit_tail(static_cast<int>(std::get<SampledData>(data_).samples.size() / 2));
}

// ---------------------------------------------------------------------------
// Operations

FourierCoefficients fourier_coefficients(const BoundarySpec &spec, int N,
                                         const FourierOptions &opts) {
  if (N < 0) {
    throw InvalidInput("truncation N must be >= 0");
  }
  const bool exact_available = spec.kind() != SpecKind::Sampled;
  CoefficientMethod method = opts.method;
  if (method == CoefficientMethod::Auto) {
    method = exact_available ? CoefficientMethod::Exact
                             : CoefficientMethod::Discrete;
  }
  if (method == CoefficientMethod::Exact && !exact_available) {
    throw InvalidInput("exact coefficients are not available for sampled data");
  }

  std::vector<cplx> values(static_cast<std::size_t>(2 * N + 1));
  if (method == CoefficientMethod::Exact) {
    for (int n = -N; n <= N; ++n) {
      values[static_cast<std::size_t>(n + N)] = spec.coefficient(n);
    }
    return FourierCoefficients(N, std::move(values),
                               spec.coefficient_tail(N, 0, 1.0));
  }

  std::vector<cplx> samples;
  if (spec.kind() == SpecKind::Sampled) {
    auto s = spec.samples();
    samples.assign(s.begin(), s.end());
  } else {
    if (!fft::is_power_of_two(opts.samples) || opts.samples < 16) {
      throw InvalidInput("discrete transform size must be a power of two >= 16");
    }
    samples.resize(opts.samples);
    for (std::size_t j = 0; j < opts.samples; ++j) {
      samples[j] = spec.evaluate(kTwoPi * static_cast<double>(j) /
                                 static_cast<double>(opts.samples));
      if (!std::isfinite(samples[j].real()) ||
          !std::isfinite(samples[j].imag())) {
        throw InvalidInput("non-finite boundary sample");
      }
    }
  }
  const std::size_t m = samples.size();
  if (m < static_cast<std::size_t>(2 * N + 2)) {
    throw InvalidInput("need at least 2N+2 samples for truncation N");
  }
  auto spectrum = fft::transform(samples, -1);
  const double inv = 1.0 / static_cast<double>(m);
  const int mi = static_cast<int>(m);
  for (int n = -N; n <= N; ++n) {
    values[static_cast<std::size_t>(n + N)] =
        spectrum[static_cast<std::size_t>((n % mi + mi) % mi)] * inv;
  }
  std::vector<double> discarded;
  for (int n = N + 1; n <= mi / 2; ++n) {
    discarded.push_back(std::abs(spectrum[static_cast<std::size_t>(n)]) * inv);
    if (n != mi / 2) {
      discarded.push_back(
          std::abs(spectrum[static_cast<std::size_t>(mi - n)]) * inv);
    }
  }
  return FourierCoefficients(N, std::move(values),
                             pairwise_sum(std::span<const double>(discarded)));
}

BoundarySpec boundary_derivative(const BoundarySpec &spec) {
  if (const Preset *p = spec.as_preset()) {
    Preset d = *p;
    d.derivative_order += 1;
    return BoundarySpec::preset(d);
  }
  if (spec.kind() == SpecKind::Sampled) {
    if (!spec.smooth()) {
      throw InvalidInput(
          "refusing to differentiate raw samples not declared smooth");
    }
  }
  const int n_max = spec.max_truncation();
  std::vector<cplx> values(static_cast<std::size_t>(2 * n_max + 1));
  for (int n = -n_max; n <= n_max; ++n) {
    values[static_cast<std::size_t>(n + n_max)] =
        cplx{0.0, static_cast<double>(n)} * spec.coefficient(n);
  }
  return BoundarySpec::fourier(FourierCoefficients(n_max, std::move(values),
                                                   spec.coefficient_tail(n_max, 1, 1.0)));
}

namespace {

/// Golden-section maximisation of g on [a, b].
double golden_max(const std::function<double(double)> &g, double a, double b) {
  const double inv_phi = 0.6180339887498949;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double gc = g(c);
  double gd = g(d);
  double best = std::max(gc, gd);
  for (int it = 0; it < 80 && (b - a) > 1e-15; ++it) {
    if (gc > gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - inv_phi * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + inv_phi * (b - a);
      gd = g(d);
    }
    best = std::max({best, gc, gd});
  }
  return best;
}

} // namespace

NormReport circle_sup(const std::function<double(double)> &g,
                      std::span<const double> corners) {
  NormReport rep;
  rep.kind = NormKind::CircleLp;
  rep.p = Exponent::infinity();

  // One-sided probes at jump points capture the ess sup there.
  double corner_max = 0.0;
  for (double c : corners) {
    corner_max = std::max({corner_max, g(c + 1e-13), g(c - 1e-13 + kTwoPi)});
  }

  std::size_t m = 256;
  double prev = -1.0;
  std::size_t best_j = 0;
  double value = 0.0;
  for (;;) {
    double grid_max = corner_max;
    for (std::size_t j = 0; j < m; ++j) {
      const double v =
          g(kTwoPi * static_cast<double>(j) / static_cast<double>(m));
      if (v > grid_max) {
        grid_max = v;
        best_j = j;
      }
    }
    rep.trend.push_back(grid_max);
    value = grid_max;
    const bool settled =
        prev >= 0.0 && std::abs(grid_max - prev) <= 1e-6 * std::abs(grid_max);
    if (settled || m >= (std::size_t{1} << 22)) {
      break;
    }
    prev = grid_max;
    m *= 2;
  }
  rep.grid.angular_nodes = m;
  rep.grid.levels = rep.trend.size();

  // Polish around the best grid node, staying inside one smooth piece.
  const double h = kTwoPi / static_cast<double>(m);
  double a = kTwoPi * static_cast<double>(best_j) / static_cast<double>(m) - h;
  double b = a + 2.0 * h;
  for (double c : corners) {
    for (double shift : {-kTwoPi, 0.0, kTwoPi}) {
      const double cc = c + shift;
      if (cc > a && cc < b) {
        if (cc < a + h) {
          a = cc;
        } else {
          b = cc;
        }
      }
    }
  }
  const double polished = golden_max(g, a, b);
  rep.value = std::max(value, polished);
  rep.error_estimate = std::max(std::abs(rep.value - value),
                                rep.trend.size() > 1
                                    ? std::abs(rep.trend.back() -
                                               rep.trend[rep.trend.size() - 2])
                                    : 0.0);
  return rep;
}

NormReport lp_circle_norm(const BoundarySpec &spec, Exponent p) {
  NormReport rep;
  rep.kind = NormKind::CircleLp;
  rep.p = p;

  if (spec.kind() == SpecKind::Sampled) {
    auto s = spec.samples();
    const std::size_t m = s.size();
    if (p.is_infinite()) {
      double mx = 0.0;
      for (const cplx &v : s) {
        mx = std::max(mx, std::abs(v));
      }
      rep.value = mx;
      rep.trend = {mx};
      rep.grid.angular_nodes = m;
      rep.note = "maximum over the given samples";
      return rep;
    }
    std::vector<double> full(m);
    std::vector<double> half(m / 2);
    for (std::size_t j = 0; j < m; ++j) {
      full[j] = std::pow(std::abs(s[j]), p.value());
      if (j % 2 == 0) {
        half[j / 2] = full[j];
      }
    }
    const double mean_full =
        pairwise_sum(std::span<const double>(full)) / static_cast<double>(m);
    const double mean_half = pairwise_sum(std::span<const double>(half)) /
                             static_cast<double>(m / 2);
    rep.value = std::pow(mean_full, 1.0 / p.value());
    const double err_mean = std::abs(mean_full - mean_half);
    rep.error_estimate =
        mean_full > 0.0
            ? rep.value * err_mean / (p.value() * mean_full)
            : std::pow(err_mean, 1.0 / p.value());
    rep.grid.angular_nodes = m;
    return rep;
  }

  auto corners = spec.corners();
  if (p.is_infinite()) {
    auto sup = circle_sup([&spec](double t) { return std::abs(spec.evaluate(t)); },
                          corners);
    sup.note = "grid maximum with doubling refinement and local polish";
    return sup;
  }

  std::vector<double> breaks{0.0};
  for (double c : corners) {
    if (c > 0.0 && c < kTwoPi) {
      breaks.push_back(c);
    }
  }
  breaks.push_back(kTwoPi);
  std::sort(breaks.begin(), breaks.end());

  const double pv = p.value();
  quad::AdaptiveOptions opts;
  opts.abs_tol = 1e-14;
  opts.rel_tol = 1e-13;
  opts.max_panels = 20000;
  auto res = quad::integrate_adaptive<double>(
      [&spec, pv](double t) { return std::pow(std::abs(spec.evaluate(t)), pv); },
      breaks, opts);
  const double mean = res.value / kTwoPi;
  const double err_mean = res.error / kTwoPi;
  rep.value = std::pow(mean, 1.0 / pv);
  rep.error_estimate = mean > 0.0 ? rep.value * err_mean / (pv * mean)
                                  : std::pow(err_mean, 1.0 / pv);
  rep.grid.angular_nodes = res.panels * 21;
  if (!res.converged) {
    rep.note = "adaptive quadrature budget exhausted";
  }
  return rep;
}

// ---------------------------------------------------------------------------
// JSON

BoundarySpec boundary_from_json(const nlohmann::json &doc, std::uint64_t seed) {
  try {
    const std::string kind = doc.at("kind").get<std::string>();
    if (kind == "preset") {
      const std::uint64_t s =
          doc.contains("seed") ? doc.at("seed").get<std::uint64_t>() : seed;
      return BoundarySpec::preset(doc.at("name").get<std::string>(), s);
    }
    if (kind == "fourier") {
      std::vector<std::pair<int, cplx>> coeffs;
      for (const auto &row : doc.at("coefficients")) {
        if (!row.is_array() || row.size() != 3) {
          throw InvalidInput("fourier coefficient rows are [n, re, im]");
        }
        coeffs.emplace_back(row[0].get<int>(),
                            cplx{row[1].get<double>(), row[2].get<double>()});
      }
      return BoundarySpec::fourier(coeffs);
    }
    if (kind == "sampled") {
      std::vector<cplx> samples;
      for (const auto &row : doc.at("samples")) {
        if (!row.is_array() || row.size() != 2) {
          throw InvalidInput("samples are [re, im] pairs");
        }
        samples.emplace_back(row[0].get<double>(), row[1].get<double>());
      }
      const bool smooth = doc.value("smooth", false);
      return BoundarySpec::sampled(std::move(samples), smooth);
    }
    throw InvalidInput("unknown boundary kind '" + kind + "'");
  } catch (const nlohmann::json::exception &e) {
    throw InvalidInput(std::string("malformed boundary document: ") + e.what());
  }
}

nlohmann::json boundary_to_json(const BoundarySpec &spec) {
  nlohmann::json doc;
  switch (spec.kind()) {
  case SpecKind::Preset: {
    const Preset *p = spec.as_preset();
    if (p->derivative_order > 0) {
      throw InvalidInput("derivative presets have no JSON form");
    }
    doc["kind"] = "preset";
    doc["name"] = p->name();
    if (p->kind == PresetKind::RandomTrig) {
      doc["seed"] = p->seed;
    }
    break;
  }
  case SpecKind::Fourier: {
    doc["kind"] = "fourier";
    auto rows = nlohmann::json::array();
    const int n_max = spec.max_truncation();
    for (int n = -n_max; n <= n_max; ++n) {
      const cplx c = spec.coefficient(n);
      if (c != cplx{}) {
        rows.push_back({n, c.real(), c.imag()});
      }
    }
    doc["coefficients"] = rows;
    break;
  }
  case SpecKind::Sampled: {
    doc["kind"] = "sampled";
    auto rows = nlohmann::json::array();
    for (const cplx &v : spec.samples()) {
      rows.push_back({v.real(), v.imag()});
    }
    doc["samples"] = rows;
    doc["smooth"] = spec.smooth();
    break;
  }
  }
  return doc;
}

BoundarySpec load_boundary(const std::string &path, std::uint64_t seed) {
  std::ifstream in(path);
  if (!in) {
    throw InvalidInput("cannot open boundary file '" + path + "'");
  }
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception &e) {
    throw InvalidInput("cannot parse '" + path + "': " + e.what());
  }
  return boundary_from_json(doc, seed);
}

std::string to_string(NormKind kind) {
  switch (kind) {
  case NormKind::CircleMean:
    return "circle-mean";
  case NormKind::Hardy:
    return "hardy";
  case NormKind::Bergman:
    return "bergman";
  case NormKind::CircleLp:
    return "circle-Lp";
  }
  return "unknown";
}

} // namespace harmext
