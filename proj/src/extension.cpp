#include "harmext/extension.hpp"

#include <algorithm>
#include <cmath>

#include "harmext/errors.hpp"
#include "harmext/fft.hpp"
#include "harmext/quadrature.hpp"
#include "harmext/summation.hpp"

namespace harmext {

namespace {

void require_interior(cplx z) {
  if (!(std::abs(z) < 1.0)) {
    throw DomainError("point must satisfy |z| < 1");
  }
}

cplx horner(const std::vector<cplx> &coeffs, int truncation, cplx z) {
  cplx acc{};
  for (int n = truncation; n >= 0; --n) {
    acc = acc * z + coeffs[static_cast<std::size_t>(n)];
  }
  return acc;
}

cplx horner_derivative(const std::vector<cplx> &coeffs, int truncation,
                       cplx z) {
  cplx acc{};
  for (int n = truncation; n >= 1; --n) {
    acc = acc * z + static_cast<double>(n) * coeffs[static_cast<std::size_t>(n)];
  }
  return acc;
}

bool spec_is_analytic(const BoundarySpec &spec) {
  const int d = spec.degree();
  if (d < 0) {
    // Only |sin| has unbounded degree, and it is not analytic.
    return false;
  }
  for (int n = 1; n <= d; ++n) {
    if (spec.coefficient(-n) != cplx{}) {
      return false;
    }
  }
  return true;
}

} // namespace

HolomorphicPair holomorphic_pair(const FourierCoefficients &coeffs) {
  HolomorphicPair pair;
  const int n_max = coeffs.truncation();
  pair.truncation = n_max;
  pair.h.resize(static_cast<std::size_t>(n_max + 1));
  pair.g.resize(static_cast<std::size_t>(n_max + 1));
  for (int n = 0; n <= n_max; ++n) {
    pair.h[static_cast<std::size_t>(n)] = coeffs.at(n);
    if (n >= 1) {
      pair.g[static_cast<std::size_t>(n)] = std::conj(coeffs.at(-n));
    }
  }
  pair.tail_bound = coeffs.tail_estimate();
  return pair;
}

double poisson_kernel(cplx z, double theta) {
  require_interior(z);
  const double r = std::abs(z);
  const double t = std::arg(z);
  const double s = std::sin(0.5 * (theta - t));
  // |1 - z e^{-i theta}|^2 = (1-r)^2 + 4 r sin^2((theta - t)/2)
  const double denom = (1.0 - r) * (1.0 - r) + 4.0 * r * s * s;
  return (1.0 - r) * (1.0 + r) / (kTwoPi * denom);
}

DiskField::DiskField(BoundarySpec spec, ExtensionOptions opts) {
  if (opts.truncation < 0 || opts.max_truncation < 0 ||
      !(opts.tail_tolerance > 0.0)) {
    throw InvalidInput("extension options must be positive");
  }
  auto state = std::make_shared<State>(std::move(spec), opts);
  state->analytic = spec_is_analytic(state->spec);
  const int limit = state->spec.max_truncation();
  state->base = limit >= 0 ? std::min(opts.truncation, limit) : opts.truncation;
  state->cap = std::max(state->base, limit >= 0
                                         ? std::min(opts.max_truncation, limit)
                                         : opts.max_truncation);
  state_ = std::move(state);
}

const HolomorphicPair &DiskField::pair_at(int truncation) const {
  std::lock_guard lock(state_->mutex);
  auto &slot = state_->pairs[truncation];
  if (!slot) {
    slot = std::make_shared<const HolomorphicPair>(holomorphic_pair(
        fourier_coefficients(state_->spec, truncation)));
  }
  return *slot;
}

const HolomorphicPair &DiskField::pair() const { return pair_at(state_->base); }

std::pair<int, double> DiskField::truncation_for(double r, int order) const {
  int n = state_->base;
  double tail = state_->spec.coefficient_tail(n, order, r);
  if (!state_->opts.adaptive) {
    return {n, tail};
  }
  while (tail > state_->opts.tail_tolerance && n < state_->cap) {
    n = std::min(std::max(2 * n, 1), state_->cap);
    tail = state_->spec.coefficient_tail(n, order, r);
  }
  return {n, tail};
}

PointValue DiskField::value(cplx z) const {
  require_interior(z);
  const double r = std::abs(z);
  auto [n, tail] = truncation_for(r, 0);
  const HolomorphicPair &pair = pair_at(n);
  PointValue out;
  out.value = horner(pair.h, n, z) + std::conj(horner(pair.g, n, z));
  out.tail_bound = tail;
  out.truncation = n;
  out.degraded = tail > state_->opts.tail_tolerance;
  return out;
}

WirtingerValue DiskField::wirtinger(cplx z) const {
  require_interior(z);
  const double r = std::abs(z);
  auto [n, tail] = truncation_for(r, 1);
  const HolomorphicPair &pair = pair_at(n);
  WirtingerValue out;
  out.fz = horner_derivative(pair.h, n, z);
  out.fzbar = std::conj(horner_derivative(pair.g, n, z));
  out.tail_bound = tail;
  out.truncation = n;
  out.degraded = tail > state_->opts.tail_tolerance;
  return out;
}

CircleValues DiskField::circle(double r, std::size_t m) const {
  if (!(r >= 0.0 && r < 1.0)) {
    throw DomainError("circle radius must lie in [0, 1)");
  }
  if (!fft::is_power_of_two(m)) {
    throw InvalidInput("angular node count must be a power of two");
  }
  auto [n0, tail0] = truncation_for(r, 0);
  auto [n1, tail1] = truncation_for(r, 1);
  const int n = std::max(n0, n1);
  const HolomorphicPair &pair = pair_at(n);

  // Values at the M uniform angles depend only on frequency mod M, so the
  // coefficients are folded before a single length-M transform.
  const long mm = static_cast<long>(m);
  auto slot = [mm](long k) { return static_cast<std::size_t>(((k % mm) + mm) % mm); };
  std::vector<cplx> f_fold(m);
  std::vector<cplx> fz_fold(m);
  std::vector<cplx> fzbar_fold(m);
  f_fold[0] += pair.h[0];
  double rk_minus_1 = 1.0; // r^{k-1}
  for (int k = 1; k <= n; ++k) {
    const double rk = rk_minus_1 * r;
    const cplx a = pair.h[static_cast<std::size_t>(k)];
    const cplx c_neg = std::conj(pair.g[static_cast<std::size_t>(k)]);
    f_fold[slot(k)] += a * rk;
    f_fold[slot(-k)] += c_neg * rk;
    const double w = static_cast<double>(k) * rk_minus_1;
    fz_fold[slot(k - 1)] += a * w;
    fzbar_fold[slot(-(k - 1))] += c_neg * w;
    rk_minus_1 = rk;
  }

  CircleValues out;
  out.r = r;
  out.f = fft::transform(f_fold, +1);
  out.fz = fft::transform(fz_fold, +1);
  out.fzbar = fft::transform(fzbar_fold, +1);
  out.tail_value = state_->spec.coefficient_tail(n, 0, r);
  out.tail_derivative = state_->spec.coefficient_tail(n, 1, r);
  out.truncation = n;
  out.degraded = out.tail_value > state_->opts.tail_tolerance ||
                 out.tail_derivative > state_->opts.tail_tolerance;
  return out;
}

DiskField extend(const BoundarySpec &spec, const ExtensionOptions &opts) {
  return DiskField(spec, opts);
}

OracleValue extend_oracle(const BoundarySpec &spec, cplx z,
                          const OracleOptions &opts) {
  require_interior(z);

  if (spec.kind() == SpecKind::Sampled) {
    auto s = spec.samples();
    const std::size_t m = s.size();
    std::vector<cplx> full(m);
    std::vector<cplx> half(m / 2);
    for (std::size_t j = 0; j < m; ++j) {
      const double theta = kTwoPi * static_cast<double>(j) / static_cast<double>(m);
      full[j] = poisson_kernel(z, theta) * s[j];
      if (j % 2 == 0) {
        half[j / 2] = full[j];
      }
    }
    const cplx v_full = pairwise_sum(std::span<const cplx>(full)) *
                        (kTwoPi / static_cast<double>(m));
    const cplx v_half = pairwise_sum(std::span<const cplx>(half)) *
                        (kTwoPi / static_cast<double>(m / 2));
    return {v_full, std::abs(v_full - v_half), m};
  }

  const double r = std::abs(z);
  double t = std::arg(z);
  if (t < 0.0) {
    t += kTwoPi;
  }
  std::vector<double> breaks{0.0, kTwoPi};
  for (double c : spec.corners()) {
    breaks.push_back(c);
  }
  if (r > 0.0) {
    const double width = 1.0 - r;
    for (double k : {0.0, 1.0, -1.0, 4.0, -4.0, 16.0, -16.0}) {
      double b = t + k * width;
      if (b > 0.0 && b < kTwoPi) {
        breaks.push_back(b);
      }
    }
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  quad::AdaptiveOptions qopts;
  qopts.abs_tol = opts.abs_tol;
  qopts.max_panels = opts.max_panels;
  auto res = quad::integrate_adaptive<cplx>(
      [&](double theta) { return poisson_kernel(z, theta) * spec.evaluate(theta); },
      breaks, qopts);
  if (!res.converged) {
    throw ConvergenceFailure("Poisson quadrature did not reach tolerance",
                             res.value, res.error);
  }
  return {res.value, res.error, res.panels};
}

} // namespace harmext
