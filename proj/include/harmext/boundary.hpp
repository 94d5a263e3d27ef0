#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

#include "harmext/exponent.hpp"
#include "harmext/norm_report.hpp"

namespace harmext {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Truncated two-sided Fourier series c_{-N}..c_N of a circle function.
class FourierCoefficients {
public:
  FourierCoefficients() = default;
  /// `values` holds 2N+1 entries, index n+N for c_n.
  FourierCoefficients(int truncation, std::vector<cplx> values,
                      double tail_estimate);

  int truncation() const noexcept { return n_; }
  cplx at(int n) const noexcept;
  std::span<const cplx> values() const noexcept { return values_; }
  /// Estimate of sum_{|n|>N} |c_n|, the mass that truncation discards.
  double tail_estimate() const noexcept { return tail_; }

private:
  int n_ = 0;
  std::vector<cplx> values_{cplx{}};
  double tail_ = 0.0;
};

enum class PresetKind { Constant, Mode, AbsSin, EllipticTrace, RandomTrig };

/// Named boundary functions with known coefficients and derivatives.
struct Preset {
  PresetKind kind = PresetKind::Constant;
  cplx constant{1.0, 0.0};
  int mode = 1;
  std::uint64_t seed = 42;
  int degree = 6;
  /// 0 for F itself, m for the m-th angular derivative.
  int derivative_order = 0;

  /// Parses "constant", "constant:3", "mode:2", "identity", "conjugate",
  /// "abs-sin", "elliptic-trace", "random-trig".
  static Preset parse(std::string_view name, std::uint64_t seed = 42);
  std::string name() const;
};

std::vector<std::string> preset_names();

enum class SpecKind { Preset, Fourier, Sampled };

/// A boundary function F on the unit circle in one of three representations.
class BoundarySpec {
public:
  static BoundarySpec preset(Preset p);
  static BoundarySpec preset(std::string_view name, std::uint64_t seed = 42);
  /// Coefficients given as (n, c_n) pairs; duplicates are summed.
  static BoundarySpec fourier(std::span<const std::pair<int, cplx>> coeffs);
  static BoundarySpec fourier(FourierCoefficients coeffs);
  /// Values at 2*pi*j/M, M a power of two >= 16. `smooth` declares the data
  /// smooth enough for spectral differentiation.
  static BoundarySpec sampled(std::vector<cplx> samples, bool smooth = false);

  SpecKind kind() const noexcept;
  std::string describe() const;

  /// F(e^{i theta}); for piecewise presets the value at a corner is the
  /// a.e. formula evaluated there.
  cplx evaluate(double theta) const;

  /// Angles in [0, 2 pi) where F or its derivative has a jump.
  std::vector<double> corners() const;

  bool is_real_valued() const;

  /// Highest frequency that can be nonzero, or -1 when unbounded.
  int degree() const;
  /// Largest truncation for which coefficients are available (sampled data
  /// is limited by its sample count), or -1 when unbounded.
  int max_truncation() const;

  /// Exact c_n for presets and Fourier specs; discrete transform value for
  /// sampled data.
  cplx coefficient(int n) const;

  /// Bound (estimate for sampled data) on
  ///   sum_{|n|>N} |n|^order |c_n| r^{|n|-order}.
  /// Returns +inf when the series does not converge.
  double coefficient_tail(int truncation, int order, double r) const;

  const Preset *as_preset() const noexcept;
  std::span<const cplx> samples() const;
  bool smooth() const noexcept;

private:
  struct FourierData {
    FourierCoefficients coeffs;
  };
  struct SampledData {
    std::vector<cplx> samples;
    std::vector<cplx> spectrum; // c_n at index n mod M
    bool smooth = false;
  };
  std::variant<Preset, FourierData, SampledData> data_;

  explicit BoundarySpec(std::variant<Preset, FourierData, SampledData> d)
      : data_(std::move(d)) {}
};

enum class CoefficientMethod { Auto, Exact, Discrete };

struct FourierOptions {
  std::size_t samples = 4096;
  CoefficientMethod method = CoefficientMethod::Auto;
};

/// Coefficients c_n, |n| <= N. Auto uses exact coefficients when the spec
/// carries them and the discrete transform of samples otherwise.
FourierCoefficients fourier_coefficients(const BoundarySpec &spec, int N,
                                         const FourierOptions &opts = {});

/// The spec of dF/dtheta. Refuses sampled data not declared smooth.
BoundarySpec boundary_derivative(const BoundarySpec &spec);

/// ||F||_{L^p(T)} with respect to dtheta / 2 pi. For p = inf the value is a
/// grid maximum refined until successive grids agree to 1e-6 relative, then
/// polished locally; the per-grid maxima go in `trend`.
NormReport lp_circle_norm(const BoundarySpec &spec, Exponent p);

/// Essential supremum of g over one turn: grid maxima on doubling uniform
/// grids (plus one-sided probes at `corners`) until successive grids agree to
/// 1e-6 relative, then a golden-section polish around the best node.
NormReport circle_sup(const std::function<double(double)> &g,
                      std::span<const double> corners);

BoundarySpec boundary_from_json(const nlohmann::json &doc,
                                std::uint64_t seed = 42);
nlohmann::json boundary_to_json(const BoundarySpec &spec);
BoundarySpec load_boundary(const std::string &path, std::uint64_t seed = 42);

} // namespace harmext
