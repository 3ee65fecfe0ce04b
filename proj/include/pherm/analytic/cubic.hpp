#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "pherm/linalg/matrix.hpp"

namespace pherm {

/// c3 z^3 + c2 z^2 + c1 z + c0 with c3 != 0.
struct CubicCoefficients {
  cplx c3 = 1.0;
  cplx c2 = 0.0;
  cplx c1 = 0.0;
  cplx c0 = 0.0;

  cplx operator()(cplx z) const noexcept { return ((c3 * z + c2) * z + c1) * z + c0; }
  cplx derivative(cplx z) const noexcept { return (3.0 * c3 * z + 2.0 * c2) * z + c1; }

  /// Largest coefficient magnitude.
  double scale() const noexcept { return std::max({std::abs(c3), std::abs(c2), std::abs(c1), std::abs(c0)}); }

  /// Residual scale at z: sum of |c_j z^j|, the natural bound on rounding in p(z).
  double residual_scale(cplx z) const noexcept {
    const double a = std::abs(z);
    return ((std::abs(c3) * a + std::abs(c2)) * a + std::abs(c1)) * a + std::abs(c0);
  }
};

namespace detail {

inline cplx principal_cbrt(cplx z) {
  if (z == 0.0) return 0.0;
  return std::polar(std::cbrt(std::abs(z)), std::arg(z) / 3.0);
}

inline cplx polish_root(const CubicCoefficients& c, cplx z) {
  double r = std::abs(c(z));
  for (int it = 0; it < 8 && r > 0.0; ++it) {
    const cplx d = c.derivative(z);
    if (d == 0.0) break;
    const cplx next = z - c(z) / d;
    const double rn = std::abs(c(next));
    if (!(rn < r)) break;
    z = next;
    r = rn;
  }
  return z;
}

}  // namespace detail

/// The three roots of a cubic, repeated according to multiplicity.
///
/// Cardano on the depressed monic cubic after rescaling z = s y so that the
/// coefficients are O(1). Only the largest root is kept and polished; the
/// other two come from the deflated quadratic, which keeps small roots
/// accurate when the magnitudes are far apart.
inline std::array<cplx, 3> solve_cubic(const CubicCoefficients& c) {
  if (c.c3 == 0.0) throw std::invalid_argument("solve_cubic: leading coefficient is zero");
  const cplx a = c.c2 / c.c3;
  const cplx b = c.c1 / c.c3;
  const cplx d = c.c0 / c.c3;
  double s = std::max({std::abs(a), std::sqrt(std::abs(b)), std::cbrt(std::abs(d))});
  if (!(s > 0.0)) return {cplx{}, cplx{}, cplx{}};
  if (!std::isfinite(s)) throw std::overflow_error("solve_cubic: non-finite coefficients");
  s = std::exp2(std::round(std::log2(s)));

  const cplx an = a / s;
  const cplx bn = b / (s * s);
  const cplx dn = d / (s * s * s);
  const cplx p = bn - an * an / 3.0;
  const cplx q = 2.0 * an * an * an / 27.0 - an * bn / 3.0 + dn;
  const cplx disc = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
  cplx big = -q / 2.0 + disc;
  const cplx alt = -q / 2.0 - disc;
  if (std::abs(alt) > std::abs(big)) big = alt;
  const cplx cr = detail::principal_cbrt(big);

  const cplx omega(-0.5, std::sqrt(3.0) / 2.0);
  std::array<cplx, 3> roots;
  cplx rot = 1.0;
  for (cplx& y : roots) {
    const cplx ck = cr * rot;
    y = (ck == 0.0) ? cplx{} : ck - p / (3.0 * ck);
    rot *= omega;
  }
  for (cplx& y : roots) y = s * (y - an / 3.0);

  // The shift by a/3 loses the small roots when the magnitudes are far apart,
  // so only the largest root is kept and the other two come from the
  // deflated quadratic z^2 + e1 z + e0.
  std::size_t big_i = 0;
  for (std::size_t i = 1; i < 3; ++i)
    if (std::abs(roots[i]) > std::abs(roots[big_i])) big_i = i;
  const cplx r1 = detail::polish_root(c, roots[big_i]);
  if (r1 == 0.0) return {cplx{}, cplx{}, cplx{}};
  const cplx e0 = -d / r1;
  const cplx e1_sum = a + r1;
  const cplx e1_prod = (e0 - b) / r1;
  const double err_sum = std::abs(a) + std::abs(r1);
  const double err_prod = (std::abs(e0) + std::abs(b)) / std::abs(r1);
  const cplx e1 = err_sum <= err_prod ? e1_sum : e1_prod;
  const cplx sq = std::sqrt(e1 * e1 - 4.0 * e0);
  const cplx qq = -0.5 * (std::abs(e1 + sq) >= std::abs(e1 - sq) ? e1 + sq : e1 - sq);
  const cplx r2 = qq;
  const cplx r3 = qq == 0.0 ? cplx{} : e0 / qq;
  return {r1, detail::polish_root(c, r2), detail::polish_root(c, r3)};
}

}  // namespace pherm
