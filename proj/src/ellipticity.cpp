#include "harmext/ellipticity.hpp"

#include <algorithm>
#include <cmath>

#include "harmext/calculus.hpp"
#include "harmext/errors.hpp"
#include "harmext/norms.hpp"

namespace harmext {

namespace {

struct GridSample {
  double kprime_base = 0.0; // ||D||^2, J stored separately
  double op_norm = 0.0;
  double jacobian = 0.0;
  std::optional<double> omega_abs;
};

/// Evaluates every point of the finest grid once. samples[k][j] is radius
/// index k (radius 1 - 2^{-(k+1)}) and angle index j of the finest count.
struct SampledGrid {
  std::vector<std::vector<GridSample>> samples;
  std::vector<double> radii;
  std::size_t finest = 0;
  bool degraded = false;
  Sense sense = Sense::Preserving;
};

SampledGrid sample_grid(const DiskField &field, const EllipticityGrid &grid) {
  if (grid.levels < 1 || grid.base_angular == 0) {
    throw InvalidInput("ellipticity grid needs levels >= 1 and angles > 0");
  }
  SampledGrid out;
  out.radii = geometric_radii(grid.levels);
  out.finest = grid.base_angular << grid.levels;
  bool any_pos = false;
  bool any_nonpos = false;
  std::optional<std::pair<cplx, double>> first_bad;
  for (double r : out.radii) {
    CircleValues c = field.circle(r, out.finest);
    out.degraded = out.degraded || c.degraded;
    std::vector<GridSample> row(out.finest);
    for (std::size_t j = 0; j < out.finest; ++j) {
      LocalGeometry geo = local_geometry(c.fz[j], c.fzbar[j]);
      row[j].op_norm = geo.op_norm;
      row[j].jacobian = geo.jacobian;
      if (geo.dilatation) {
        row[j].omega_abs = std::abs(*geo.dilatation);
      }
      if (geo.jacobian > 0.0) {
        any_pos = true;
      } else {
        any_nonpos = true;
        if (!first_bad) {
          const double theta =
              kTwoPi * static_cast<double>(j) / static_cast<double>(out.finest);
          first_bad = {std::polar(r, theta), geo.jacobian};
        }
      }
    }
    out.samples.push_back(std::move(row));
  }
  if (any_nonpos) {
    out.sense = any_pos ? Sense::Mixed : Sense::Reversing;
    throw SenseViolation("Jacobian is not positive on the sampling grid",
                         first_bad->first, first_bad->second);
  }
  return out;
}

template <class PointFn>
std::vector<double> per_level_max(const SampledGrid &g,
                                  const EllipticityGrid &grid, PointFn value) {
  std::vector<double> trend;
  double running = 0.0;
  for (int level = 1; level <= grid.levels; ++level) {
    const std::size_t stride = std::size_t{1} << (grid.levels - level);
    for (int k = 0; k < level; ++k) {
      const auto &row = g.samples[static_cast<std::size_t>(k)];
      for (std::size_t j = 0; j < g.finest; j += stride) {
        if (auto v = value(row[j])) {
          running = std::max(running, *v);
        }
      }
    }
    trend.push_back(running);
  }
  return trend;
}

EllipticityReport base_report(const SampledGrid &g,
                              const EllipticityGrid &grid) {
  EllipticityReport rep;
  rep.sense = g.sense;
  rep.grid = grid;
  rep.points = g.finest * g.radii.size();
  rep.degraded = g.degraded;
  return rep;
}

void fill_kprime(EllipticityReport &rep, const SampledGrid &g,
                 const EllipticityGrid &grid, double K) {
  rep.K = K;
  rep.kprime_trend = per_level_max(g, grid, [K](const GridSample &s) {
    return std::optional<double>(
        std::max(0.0, s.op_norm * s.op_norm - K * s.jacobian));
  });
  rep.kprime_estimate = rep.kprime_trend.back();
  const std::size_t n = rep.kprime_trend.size();
  rep.kprime_extrapolated =
      n >= 2 ? std::max(rep.kprime_estimate,
                        2.0 * rep.kprime_trend[n - 1] - rep.kprime_trend[n - 2])
             : rep.kprime_estimate;
}

void fill_qr(EllipticityReport &rep, const SampledGrid &g,
             const EllipticityGrid &grid) {
  rep.qr_trend = per_level_max(g, grid, [](const GridSample &s) {
    return s.omega_abs;
  });
  rep.qr_constant = rep.qr_trend.back();
  rep.undefined_points = 0;
  for (const auto &row : g.samples) {
    for (const auto &s : row) {
      if (!s.omega_abs) {
        ++rep.undefined_points;
      }
    }
  }
  // 1 - q_l shrinking by a fixed factor over the last four levels.
  const auto &t = rep.qr_trend;
  bool trending = t.size() >= 5;
  for (std::size_t i = t.size() >= 4 ? t.size() - 4 : 0; trending && i < t.size();
       ++i) {
    const double gap_prev = 1.0 - t[i - 1];
    const double gap = 1.0 - t[i];
    trending = t[i] > t[i - 1] && gap <= 0.75 * gap_prev;
  }
  rep.qr_trends_to_one = trending || rep.qr_constant >= 1.0;
}

} // namespace

std::string to_string(Sense s) {
  switch (s) {
  case Sense::Preserving:
    return "preserving";
  case Sense::Reversing:
    return "reversing";
  case Sense::Mixed:
    return "mixed";
  }
  return "unknown";
}

EllipticityReport min_kprime(const DiskField &field, double K,
                             const EllipticityGrid &grid) {
  if (!(K >= 1.0)) {
    throw InvalidInput("K must be >= 1");
  }
  SampledGrid g = sample_grid(field, grid);
  EllipticityReport rep = base_report(g, grid);
  fill_kprime(rep, g, grid, K);
  return rep;
}

EllipticityReport qr_constant(const DiskField &field,
                              const EllipticityGrid &grid) {
  SampledGrid g = sample_grid(field, grid);
  EllipticityReport rep = base_report(g, grid);
  fill_qr(rep, g, grid);
  return rep;
}

EllipticityReport classify(const DiskField &field,
                           std::span<const double> K_scan,
                           const EllipticityGrid &grid) {
  for (double K : K_scan) {
    if (!(K >= 1.0)) {
      throw InvalidInput("K must be >= 1");
    }
  }
  SampledGrid g = sample_grid(field, grid);
  EllipticityReport rep = base_report(g, grid);
  fill_qr(rep, g, grid);
  for (double K : K_scan) {
    EllipticityReport k_rep = base_report(g, grid);
    fill_kprime(k_rep, g, grid, K);
    rep.kprime_scan.emplace_back(K, k_rep.kprime_estimate);
  }
  if (!K_scan.empty()) {
    fill_kprime(rep, g, grid, K_scan.front());
  }
  if (!rep.qr_trends_to_one && rep.qr_constant < 1.0) {
    rep.qr_K = (1.0 + rep.qr_constant) / (1.0 - rep.qr_constant);
    rep.classification = "quasiregular";
  } else {
    rep.classification = "elliptic candidate";
  }
  return rep;
}

} // namespace harmext
