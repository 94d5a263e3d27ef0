#include "harmext/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "harmext/calculus.hpp"
#include "harmext/errors.hpp"
#include "harmext/fft.hpp"
#include "harmext/quadrature.hpp"
#include "harmext/summation.hpp"

namespace harmext {

namespace {

constexpr cplx kI{0.0, 1.0};

cplx circle_point(const CircleValues &c, std::size_t j) {
  const double theta =
      kTwoPi * static_cast<double>(j) / static_cast<double>(c.f.size());
  return std::polar(c.r, theta);
}

/// Mean of v^p over the first `count` entries taken with stride `stride`.
double power_mean(std::span<const double> v, double p, std::size_t stride) {
  std::vector<double> terms;
  terms.reserve(v.size() / stride);
  for (std::size_t j = 0; j < v.size(); j += stride) {
    terms.push_back(p == 1.0 ? v[j] : std::pow(v[j], p));
  }
  return pairwise_sum(std::span<const double>(terms)) /
         static_cast<double>(terms.size());
}

struct PowerMean {
  double mean = 0.0;   // (1/2pi) int s^p dtheta
  double error = 0.0;  // on the mean
  std::size_t nodes = 0;
  bool degraded = false;
};

PowerMean adaptive_power_mean(const DiskScalar &s, double r, double p,
                              const CircleMeanOptions &opts) {
  std::size_t m = std::min(starting_angular_nodes(r), opts.max_angular_nodes);
  PowerMean out;
  for (;;) {
    ScalarCircle c = s.on_circle(r, m);
    const double full = power_mean(c.values, p, 1);
    const double half = power_mean(c.values, p, 2);
    const double diff = std::abs(full - half);
    out.mean = full;
    out.nodes = m;
    out.degraded = c.degraded;
    // Truncation error on s propagates to s^p through p * max(s)^{p-1}.
    double smax = 0.0;
    for (double v : c.values) {
      smax = std::max(smax, v);
    }
    const double tail = c.tail_bound * p * std::pow(smax + c.tail_bound, p - 1.0);
    out.error = diff + tail;
    if (diff <= opts.rel_tol * full || diff <= 1e-300 ||
        m >= opts.max_angular_nodes) {
      return out;
    }
    m *= 2;
  }
}

/// Error of x^{1/p} given an error on x.
double root_error(double x, double err, double p) {
  if (x > 0.0) {
    return std::pow(x, 1.0 / p) * err / (p * x);
  }
  return std::pow(err, 1.0 / p);
}

/// Circle maximum from doubling FFT grids, then a pointwise golden-section
/// polish around the best node.
NormReport circle_max(const DiskScalar &s, double r,
                      const CircleMeanOptions &opts) {
  NormReport rep;
  rep.kind = NormKind::CircleMean;
  rep.p = Exponent::infinity();
  rep.radius = r;
  std::size_t m = std::min(starting_angular_nodes(r), opts.max_angular_nodes);
  double prev = -1.0;
  std::size_t best = 0;
  double tail = 0.0;
  for (;;) {
    ScalarCircle c = s.on_circle(r, m);
    double mx = -1.0;
    for (std::size_t j = 0; j < c.values.size(); ++j) {
      if (c.values[j] > mx) {
        mx = c.values[j];
        best = j;
      }
    }
    tail = c.tail_bound;
    rep.degraded = rep.degraded || c.degraded;
    rep.trend.push_back(mx);
    rep.value = mx;
    if ((prev >= 0.0 && std::abs(mx - prev) <= 1e-6 * mx) ||
        m >= opts.max_angular_nodes) {
      break;
    }
    prev = mx;
    m *= 2;
  }
  rep.grid.angular_nodes = m;
  rep.grid.levels = rep.trend.size();

  const double h = kTwoPi / static_cast<double>(m);
  double a = h * static_cast<double>(best) - h;
  double b = a + 2.0 * h;
  const double inv_phi = 0.6180339887498949;
  auto g = [&](double t) { return s.at(std::polar(r, t)); };
  double c1 = b - inv_phi * (b - a);
  double d1 = a + inv_phi * (b - a);
  double gc = g(c1);
  double gd = g(d1);
  double polished = std::max(gc, gd);
  for (int it = 0; it < 60 && (b - a) > 1e-14; ++it) {
    if (gc > gd) {
      b = d1;
      d1 = c1;
      gd = gc;
      c1 = b - inv_phi * (b - a);
      gc = g(c1);
    } else {
      a = c1;
      c1 = d1;
      gc = gd;
      d1 = a + inv_phi * (b - a);
      gd = g(d1);
    }
    polished = std::max({polished, gc, gd});
  }
  const double grid_value = rep.value;
  rep.value = std::max(grid_value, polished);
  rep.error_estimate = std::abs(rep.value - grid_value) + tail;
  return rep;
}

} // namespace

// ---------------------------------------------------------------------------
// DiskScalar

DiskScalar::DiskScalar(DiskField field, std::string label, CircleMap circle_map,
                       PointMap point_map, int tail_order,
                       bool monotone_certified)
    : field_(std::move(field)), label_(std::move(label)),
      circle_map_(std::move(circle_map)), point_map_(std::move(point_map)),
      tail_order_(tail_order), certified_(monotone_certified) {}

DiskScalar DiskScalar::constant(double c) {
  if (!(c >= 0.0)) {
    throw InvalidInput("scalar fields are nonnegative");
  }
  DiskScalar s(extend(BoundarySpec::preset("constant")), "constant", nullptr,
               nullptr, 0, true);
  s.field_.reset();
  s.constant_ = c;
  return s;
}

ScalarCircle DiskScalar::on_circle(double r, std::size_t m) const {
  ScalarCircle out;
  if (!field_) {
    out.values.assign(m, scale_ * constant_);
    return out;
  }
  CircleValues c = field_->circle(r, m);
  out.values.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    out.values[j] = scale_ * circle_map_(c, j);
  }
  out.tail_bound =
      scale_ * (tail_order_ == 0 ? c.tail_value : c.tail_derivative);
  out.degraded = c.degraded;
  return out;
}

double DiskScalar::at(cplx z) const {
  if (!field_) {
    return scale_ * constant_;
  }
  return scale_ * point_map_(*field_, z);
}

DiskScalar DiskScalar::scaled(double lambda) const {
  if (!(lambda >= 0.0)) {
    throw InvalidInput("scalar fields are nonnegative");
  }
  DiskScalar s = *this;
  s.scale_ *= lambda;
  return s;
}

DiskScalar abs_value(const DiskField &field) {
  return DiskScalar(
      field, "|f|",
      [](const CircleValues &c, std::size_t j) { return std::abs(c.f[j]); },
      [](const DiskField &f, cplx z) { return std::abs(f.value(z).value); }, 0,
      field.analytic());
}

DiskScalar abs_fz(const DiskField &field) {
  return DiskScalar(
      field, "|f_z|",
      [](const CircleValues &c, std::size_t j) { return std::abs(c.fz[j]); },
      [](const DiskField &f, cplx z) { return std::abs(f.wirtinger(z).fz); },
      1, true);
}

DiskScalar abs_fzbar(const DiskField &field) {
  return DiskScalar(
      field, "|f_zbar|",
      [](const CircleValues &c, std::size_t j) { return std::abs(c.fzbar[j]); },
      [](const DiskField &f, cplx z) { return std::abs(f.wirtinger(z).fzbar); },
      1, true);
}

DiskScalar abs_ft(const DiskField &field) {
  return DiskScalar(
      field, "|f_t|",
      [](const CircleValues &c, std::size_t j) {
        const cplx z = circle_point(c, j);
        return std::abs(kI * (z * c.fz[j] - std::conj(z) * c.fzbar[j]));
      },
      [](const DiskField &f, cplx z) { return std::abs(polar(f, z).ft); }, 1,
      false);
}

DiskScalar abs_ft_over_r(const DiskField &field) {
  return DiskScalar(
      field, "|f_t|/r",
      [](const CircleValues &c, std::size_t j) {
        if (c.r == 0.0) {
          throw SingularPoint("f_t / r is undefined at the origin");
        }
        const cplx e = circle_point(c, j) / c.r;
        return std::abs(e * c.fz[j] - std::conj(e) * c.fzbar[j]);
      },
      [](const DiskField &f, cplx z) {
        return std::abs(polar(f, z).ft_over_r());
      },
      1, false);
}

DiskScalar abs_fr(const DiskField &field) {
  return DiskScalar(
      field, "|f_r|",
      [](const CircleValues &c, std::size_t j) {
        const double theta =
            kTwoPi * static_cast<double>(j) / static_cast<double>(c.f.size());
        const cplx e = std::polar(1.0, theta);
        return std::abs(c.fz[j] * e + c.fzbar[j] * std::conj(e));
      },
      [](const DiskField &f, cplx z) { return std::abs(polar(f, z).fr); }, 1,
      false);
}

DiskScalar op_norm(const DiskField &field) {
  return DiskScalar(
      field, "||D_f||",
      [](const CircleValues &c, std::size_t j) {
        return std::abs(c.fz[j]) + std::abs(c.fzbar[j]);
      },
      [](const DiskField &f, cplx z) {
        auto w = f.wirtinger(z);
        return std::abs(w.fz) + std::abs(w.fzbar);
      },
      1, false);
}

DiskScalar scalar_by_name(const DiskField &field, const std::string &name) {
  if (name == "f") {
    return abs_value(field);
  }
  if (name == "fz") {
    return abs_fz(field);
  }
  if (name == "fzbar") {
    return abs_fzbar(field);
  }
  if (name == "ft") {
    return abs_ft(field);
  }
  if (name == "ft_over_r") {
    return abs_ft_over_r(field);
  }
  if (name == "fr") {
    return abs_fr(field);
  }
  if (name == "opnorm") {
    return op_norm(field);
  }
  throw InvalidInput("unknown scalar '" + name + "'");
}

// ---------------------------------------------------------------------------
// Norms

std::size_t starting_angular_nodes(double r) {
  const double want = 16.0 / std::max(1.0 - r, 1e-12);
  const std::size_t n =
      want > 1e9 ? (std::size_t{1} << 30)
                 : fft::next_power_of_two(static_cast<std::size_t>(std::ceil(want)));
  return std::max<std::size_t>(64, n);
}

NormReport circle_mean(const DiskScalar &s, double r, Exponent p,
                       const CircleMeanOptions &opts) {
  if (!(r > 0.0 && r < 1.0)) {
    throw DomainError("circle mean radius must lie in (0, 1)");
  }
  if (p.is_infinite()) {
    return circle_max(s, r, opts);
  }
  PowerMean pm = adaptive_power_mean(s, r, p.value(), opts);
  NormReport rep;
  rep.kind = NormKind::CircleMean;
  rep.p = p;
  rep.radius = r;
  rep.value = std::pow(pm.mean, 1.0 / p.value());
  rep.error_estimate = root_error(pm.mean, pm.error, p.value());
  rep.grid.angular_nodes = pm.nodes;
  rep.grid.radial_nodes = 1;
  rep.degraded = pm.degraded;
  return rep;
}

std::vector<double> geometric_radii(int levels) {
  std::vector<double> radii;
  for (int k = 1; k <= levels; ++k) {
    radii.push_back(1.0 - std::ldexp(1.0, -k));
  }
  return radii;
}

bool detect_divergence(std::span<const double> seq, bool allow_slow) {
  constexpr std::size_t kRun = 4;
  if (seq.size() < kRun + 1) {
    return false;
  }
  const std::size_t n = seq.size();
  for (std::size_t i = n - kRun; i < n; ++i) {
    if (!(seq[i - 1] > 0.0) || !(seq[i] >= 1.05 * seq[i - 1])) {
      return false;
    }
  }
  if (std::isinf(seq.back()) || seq.back() > 1e3) {
    return true;
  }
  if (!allow_slow) {
    return false;
  }
  // Geometric convergence (e.g. 1 - 2^{-k}) halves each increment; growth that
  // keeps its increments is treated as unbounded.
  for (std::size_t i = n - kRun + 1; i < n; ++i) {
    const double prev_inc = seq[i - 1] - seq[i - 2];
    const double inc = seq[i] - seq[i - 1];
    if (!(inc >= 0.75 * prev_inc)) {
      return false;
    }
  }
  return true;
}

NormReport hardy_norm(const DiskScalar &s, Exponent p, int levels,
                      const CircleMeanOptions &opts) {
  if (levels < 2) {
    throw InvalidInput("hardy_norm needs at least two radial levels");
  }
  NormReport rep;
  rep.kind = NormKind::Hardy;
  rep.p = p;
  rep.monotone_certified = s.monotone_certified();
  double error = 0.0;
  std::size_t max_nodes = 0;
  for (double r : geometric_radii(levels)) {
    NormReport c = circle_mean(s, r, p, opts);
    rep.trend.push_back(c.value);
    error = std::max(error, c.error_estimate);
    max_nodes = std::max(max_nodes, c.grid.angular_nodes);
    rep.degraded = rep.degraded || c.degraded;
  }
  rep.value = *std::max_element(rep.trend.begin(), rep.trend.end());
  const double last = rep.trend.back();
  const double before = rep.trend[rep.trend.size() - 2];
  rep.extrapolated = 2.0 * last - before;
  rep.error_estimate = error;
  rep.infinite = detect_divergence(rep.trend, true);
  rep.grid.levels = static_cast<std::size_t>(levels);
  rep.grid.radial_nodes = static_cast<std::size_t>(levels);
  rep.grid.angular_nodes = max_nodes;
  if (rep.infinite) {
    rep.note = "unbounded growth along the radial grid";
  } else if (rep.monotone_certified) {
    rep.note = "circle means nondecreasing in r; extrapolated value is the norm";
  } else {
    rep.note = "grid lower bound of the true sup";
  }
  return rep;
}

NormReport bergman_norm(const DiskScalar &s, Exponent p, int levels,
                        const CircleMeanOptions &opts) {
  if (levels < 2) {
    throw InvalidInput("bergman_norm needs at least two radial levels");
  }
  if (p.is_infinite()) {
    NormReport rep = hardy_norm(s, p, levels, opts);
    rep.kind = NormKind::Bergman;
    rep.note = rep.infinite ? "ess sup unbounded along the radial grid"
                            : "ess sup over the radial grid circles";
    return rep;
  }
  const double pv = p.value();
  NormReport rep;
  rep.kind = NormKind::Bergman;
  rep.p = p;

  std::vector<double> edges{0.0, 0.5};
  for (int k = 2; k <= levels; ++k) {
    edges.push_back(1.0 - std::ldexp(1.0, -k));
  }

  // The radial tail dominates the error; circle means need no more than 1e-7.
  CircleMeanOptions inner_opts = opts;
  inner_opts.rel_tol = std::max(opts.rel_tol, 1e-7);

  std::size_t max_nodes = 0;
  std::size_t radial_nodes = 0;
  bool degraded = false;
  double mean_error_sum = 0.0;
  auto integrand = [&](double rho) {
    PowerMean pm = adaptive_power_mean(s, rho, pv, inner_opts);
    max_nodes = std::max(max_nodes, pm.nodes);
    degraded = degraded || pm.degraded;
    ++radial_nodes;
    mean_error_sum += 2.0 * rho * pm.error;
    return 2.0 * rho * pm.mean;
  };

  std::vector<double> panel_values;
  double quad_error = 0.0;
  double inner = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double before = mean_error_sum;
    auto panel =
        quad::gauss_kronrod_panel<double, 15>(integrand, edges[i], edges[i + 1]);
    const double width = edges[i + 1] - edges[i];
    // The per-node mean errors enter with the panel's average weight.
    quad_error += panel.error + (mean_error_sum - before) * width / 15.0;
    panel_values.push_back(panel.value);
    if (i == 0) {
      inner = panel.value;
    }
    rep.trend.push_back(pairwise_sum(std::span<const double>(panel_values)));
  }
  const double r_last = edges.back();
  PowerMean last = adaptive_power_mean(s, r_last, pv, inner_opts);
  const double tail = last.mean * (1.0 - r_last * r_last);

  const double partial = rep.trend.back();
  const double total = partial + tail;
  const double total_error = quad_error + tail;

  rep.inner_integral = inner;
  rep.outer_integral = total - inner;
  rep.value = std::pow(total, 1.0 / pv);
  rep.error_estimate = root_error(total, total_error, pv);
  rep.infinite = detect_divergence(rep.trend, false);
  rep.degraded = degraded || last.degraded;
  rep.grid.levels = static_cast<std::size_t>(levels);
  rep.grid.radial_nodes = radial_nodes;
  rep.grid.angular_nodes = max_nodes;
  rep.note = "tail beyond r = 1 - 2^-" + std::to_string(levels) +
             " estimated from the last circle mean";
  return rep;
}

} // namespace harmext
