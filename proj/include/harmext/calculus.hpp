#pragma once

#include <complex>
#include <optional>

#include "harmext/extension.hpp"

namespace harmext {

/// Wirtinger and polar derivatives at z = r e^{it}.
struct DerivativePack {
  cplx z;
  cplx fz;
  cplx fzbar;
  /// d f / d t = i (z f_z - conj(z) f_zbar)
  cplx ft;
  /// d f / d r = f_z e^{it} + f_zbar e^{-it}; at z = 0 the direction t = 0.
  cplx fr;
  double tail_bound = 0.0;
  bool degraded = false;

  /// f_z recovered as (e^{-it}/2)(f_r - i f_t / r). Throws SingularPoint at 0.
  cplx fz_from_polar() const;
  /// conj(f_zbar) recovered as (e^{-it}/2)(conj(f_r) - (i/r) conj(f_t)).
  cplx conj_fzbar_from_polar() const;
  /// f_t / r. Throws SingularPoint at 0.
  cplx ft_over_r() const;
};

struct LocalGeometry {
  double op_norm = 0.0;     // |f_z| + |f_zbar|
  double min_stretch = 0.0; // ||f_z| - |f_zbar||
  double jacobian = 0.0;    // |f_z|^2 - |f_zbar|^2
  /// g'/h'; empty where |h'| <= 1e-14 (1 + |g'|).
  std::optional<cplx> dilatation;
};

std::pair<cplx, cplx> wirtinger(const DiskField &field, cplx z);
DerivativePack polar(const DiskField &field, cplx z);
LocalGeometry local_geometry(const DiskField &field, cplx z);

/// The same quantities from already computed f_z and f_zbar.
LocalGeometry local_geometry(cplx fz, cplx fzbar);

/// d_alpha f = f_z e^{i alpha} + f_zbar e^{-i alpha}
cplx directional_derivative(cplx fz, cplx fzbar, double alpha);

} // namespace harmext
