#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "harmext/boundary.hpp"

namespace harmext {

/// f = h + conj(g) with h = sum_{n>=0} a_n z^n, g = sum_{n>=1} b_n z^n,
/// a_n = c_n and b_n = conj(c_{-n}). g[0] is always 0.
struct HolomorphicPair {
  std::vector<cplx> h;
  std::vector<cplx> g;
  int truncation = 0;
  /// sum_{|n|>N} |c_n|, as reported by the coefficient source.
  double tail_bound = 0.0;
};

HolomorphicPair holomorphic_pair(const FourierCoefficients &coeffs);

/// (1/2pi)(1-|z|^2)/|1 - z e^{-i theta}|^2. Throws DomainError for |z| >= 1.
double poisson_kernel(cplx z, double theta);

struct ExtensionOptions {
  int truncation = 512;
  /// Grow the truncation (doubling) while the per-point tail bound exceeds
  /// `tail_tolerance`, up to `max_truncation`.
  bool adaptive = true;
  int max_truncation = 1 << 16;
  double tail_tolerance = 1e-8;
};

struct PointValue {
  cplx value;
  double tail_bound = 0.0;
  int truncation = 0;
  bool degraded = false;
};

struct WirtingerValue {
  cplx fz;
  cplx fzbar;
  double tail_bound = 0.0;
  int truncation = 0;
  bool degraded = false;
};

/// f, f_z and f_zbar at the M points r e^{2 pi i j / M}.
struct CircleValues {
  double r = 0.0;
  std::vector<cplx> f;
  std::vector<cplx> fz;
  std::vector<cplx> fzbar;
  double tail_value = 0.0;
  double tail_derivative = 0.0;
  int truncation = 0;
  bool degraded = false;
};

/// The harmonic extension P[F] realised through its holomorphic pair.
/// Copies share state; evaluation is const and thread-safe.
class DiskField {
public:
  DiskField(BoundarySpec spec, ExtensionOptions opts);

  const BoundarySpec &spec() const noexcept { return state_->spec; }
  const ExtensionOptions &options() const noexcept { return state_->opts; }
  /// The pair at the base truncation.
  const HolomorphicPair &pair() const;

  PointValue value(cplx z) const;
  WirtingerValue wirtinger(cplx z) const;
  /// M must be a power of two.
  CircleValues circle(double r, std::size_t m) const;

  /// True when every c_n with n < 0 vanishes, i.e. f = h is holomorphic.
  bool analytic() const noexcept { return state_->analytic; }

  /// Truncation chosen for radius r and derivative order (0 or 1), and the
  /// tail bound achieved there.
  std::pair<int, double> truncation_for(double r, int order) const;

private:
  struct State {
    State(BoundarySpec s, ExtensionOptions o)
        : spec(std::move(s)), opts(o) {}
    BoundarySpec spec;
    ExtensionOptions opts;
    bool analytic = false;
    int base = 0;
    int cap = 0;
    mutable std::mutex mutex;
    mutable std::map<int, std::shared_ptr<const HolomorphicPair>> pairs;
  };
  std::shared_ptr<const State> state_;

  const HolomorphicPair &pair_at(int truncation) const;
};

/// Builds the series realisation of P[F].
DiskField extend(const BoundarySpec &spec, const ExtensionOptions &opts = {});

struct OracleOptions {
  double abs_tol = 1e-11;
  std::size_t max_panels = 20000;
};

struct OracleValue {
  cplx value;
  double error = 0.0;
  std::size_t panels = 0;
};

/// Direct adaptive quadrature of the Poisson integral at z. Panels are split
/// at the corners of F and around arg z, where the kernel peaks. Sampled data
/// uses the discrete Poisson sum over the samples instead. Throws
/// ConvergenceFailure when the panel budget runs out.
OracleValue extend_oracle(const BoundarySpec &spec, cplx z,
                          const OracleOptions &opts = {});

} // namespace harmext
