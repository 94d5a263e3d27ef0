#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <queue>
#include <span>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "harmext/summation.hpp"

namespace harmext::quad {

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(std::complex<double> v) { return std::abs(v); }

template <class T> struct PanelEstimate {
  double a = 0.0;
  double b = 0.0;
  T value{};
  double error = 0.0;
};

/// Gauss-Kronrod pair on [a, b]. Points is the Kronrod order (15, 21, 31...).
/// The error estimate is |K - G| floored at a few ulps of |K|.
template <class T, unsigned Points = 21, class F>
PanelEstimate<T> gauss_kronrod_panel(F &&f, double a, double b) {
  using Kronrod = boost::math::quadrature::gauss_kronrod<double, Points>;
  using Gauss = boost::math::quadrature::gauss<double, (Points - 1) / 2>;
  const auto &x = Kronrod::abscissa();
  const auto &wk = Kronrod::weights();
  const auto &wg = Gauss::weights();
  constexpr unsigned gauss_order = (Points - 1) / 2;

  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  T f0 = f(mid);
  T kronrod = f0 * wk[0];
  T gauss{};
  unsigned gauss_start = 2;
  unsigned kronrod_start = 1;
  if (gauss_order & 1u) {
    gauss = f0 * wg[0];
  } else {
    gauss_start = 1;
    kronrod_start = 2;
  }
  for (unsigned i = gauss_start; i < x.size(); i += 2) {
    const T fp = f(mid + half * x[i]);
    const T fm = f(mid - half * x[i]);
    kronrod += (fp + fm) * wk[i];
    gauss += (fp + fm) * wg[i / 2];
  }
  for (unsigned i = kronrod_start; i < x.size(); i += 2) {
    const T fp = f(mid + half * x[i]);
    const T fm = f(mid - half * x[i]);
    kronrod += (fp + fm) * wk[i];
  }
  PanelEstimate<T> out;
  out.a = a;
  out.b = b;
  out.value = kronrod * half;
  out.error = std::max(magnitude((kronrod - gauss) * half),
                       4.0 * 2.220446049250313e-16 * magnitude(out.value));
  return out;
}

struct AdaptiveOptions {
  double abs_tol = 1e-11;
  double rel_tol = 0.0;
  std::size_t max_panels = 4000;
};

template <class T> struct AdaptiveResult {
  T value{};
  double error = 0.0;
  std::size_t panels = 0;
  bool converged = false;
};

/// Global adaptive Gauss-Kronrod over the partition given by `breakpoints`
/// (sorted, at least two entries). The panel with the largest error is
/// bisected until the summed error meets the tolerance or the panel budget
/// runs out. Ties are broken by position, so the refinement sequence is
/// deterministic.
template <class T, unsigned Points = 21, class F>
AdaptiveResult<T> integrate_adaptive(F &&f, std::span<const double> breakpoints,
                                     const AdaptiveOptions &opts) {
  struct Order {
    bool operator()(const PanelEstimate<T> &l,
                    const PanelEstimate<T> &r) const {
      if (l.error != r.error) {
        return l.error < r.error;
      }
      return l.a > r.a;
    }
  };
  std::priority_queue<PanelEstimate<T>, std::vector<PanelEstimate<T>>, Order>
      queue;
  double total_error = 0.0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (breakpoints[i + 1] <= breakpoints[i]) {
      continue;
    }
    auto p = gauss_kronrod_panel<T, Points>(f, breakpoints[i],
                                            breakpoints[i + 1]);
    total_error += p.error;
    queue.push(p);
  }

  auto current_value = [&queue]() {
    auto copy = queue;
    std::vector<PanelEstimate<T>> panels;
    panels.reserve(copy.size());
    while (!copy.empty()) {
      panels.push_back(copy.top());
      copy.pop();
    }
    std::sort(panels.begin(), panels.end(),
              [](const auto &l, const auto &r) { return l.a < r.a; });
    std::vector<T> values;
    std::vector<double> errors;
    values.reserve(panels.size());
    errors.reserve(panels.size());
    for (const auto &p : panels) {
      values.push_back(p.value);
      errors.push_back(p.error);
    }
    return std::pair<T, double>{pairwise_sum(std::span<const T>(values)),
                                pairwise_sum(std::span<const double>(errors))};
  };

  AdaptiveResult<T> result;
  for (;;) {
    auto [value, error] = current_value();
    const double target =
        std::max(opts.abs_tol, opts.rel_tol * magnitude(value));
    result.value = value;
    result.error = error;
    result.panels = queue.size();
    if (error <= target) {
      result.converged = true;
      return result;
    }
    if (queue.size() >= opts.max_panels || queue.empty()) {
      return result;
    }
    // Refine a batch of the worst panels before re-summing.
    const std::size_t batch = std::max<std::size_t>(1, queue.size() / 8);
    for (std::size_t k = 0; k < batch && queue.size() < opts.max_panels;
         ++k) {
      PanelEstimate<T> worst = queue.top();
      const double mid = 0.5 * (worst.a + worst.b);
      if (!(mid > worst.a && mid < worst.b)) {
        // Cannot bisect further in double precision.
        return result;
      }
      queue.pop();
      queue.push(gauss_kronrod_panel<T, Points>(f, worst.a, mid));
      queue.push(gauss_kronrod_panel<T, Points>(f, mid, worst.b));
    }
  }
}

} // namespace harmext::quad
