#pragma once

// Eigenvalues of general dense complex matrices.
//
// The native solver follows the classical route: diagonal scaling
// (balancing), Householder reduction to upper Hessenberg form, then
// single-shift complex QR sweeps with Wilkinson shifts and deflation on
// negligible subdiagonal entries. Only eigenvalues are computed, so all
// similarity updates are confined to the active deflation window.

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "pherm/error.hpp"
#include "pherm/linalg/matrix.hpp"

#ifdef PHERM_HAVE_LAPACK
#include "pherm/linalg/lapack_eigen.hpp"
#endif

namespace pherm {

struct EigenOptions {
  bool balance = true;
  /// QR sweeps allowed per deflated eigenvalue, in units of max(10, n).
  std::size_t iteration_factor = 30;
};

namespace detail {

inline double cabs1(cplx z) noexcept { return std::abs(z.real()) + std::abs(z.imag()); }

/// Diagonal similarity by powers of two that equalizes row and column norms.
inline void balance(ComplexMatrix& a) {
  constexpr double radix = 2.0;
  constexpr double radix2 = radix * radix;
  const std::size_t n = a.size();
  for (int pass = 0; pass < 200; ++pass) {
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      double c = 0.0;
      double r = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        c += cabs1(a(j, i));
        r += cabs1(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      const double s = c + r;
      double f = 1.0;
      double g = r / radix;
      for (int guard = 0; c < g && guard < 500; ++guard) {
        f *= radix;
        c *= radix2;
      }
      g = r * radix;
      for (int guard = 0; c >= g && guard < 500; ++guard) {
        f /= radix;
        c /= radix2;
      }
      if ((c + r) / f < 0.95 * s) {
        changed = true;
        const double inv = 1.0 / f;
        for (std::size_t j = 0; j < n; ++j) a(i, j) *= inv;
        for (cplx& z : a.column(i)) z *= f;
      }
    }
    if (!changed) return;
  }
}

inline double scaled_norm2(std::span<const cplx> x) noexcept {
  double scale = 0.0;
  for (const cplx& z : x) scale = std::max({scale, std::abs(z.real()), std::abs(z.imag())});
  if (scale == 0.0) return 0.0;
  double ssq = 0.0;
  for (const cplx& z : x) ssq += std::norm(z / scale);
  return scale * std::sqrt(ssq);
}

/// Elementary reflector H = I - tau v v^H with v[0] = 1 such that
/// H^H x = beta e_0, beta real. On return x[0] = beta and x[1..] holds the
/// tail of v.
inline cplx make_reflector(std::span<cplx> x) noexcept {
  const cplx alpha = x[0];
  const double xnorm = scaled_norm2(x.subspan(1));
  if (xnorm == 0.0 && alpha.imag() == 0.0) return 0.0;
  const double beta = -std::copysign(std::hypot(std::hypot(alpha.real(), alpha.imag()), xnorm), alpha.real());
  const cplx tau((beta - alpha.real()) / beta, -alpha.imag() / beta);
  const cplx scale = 1.0 / (alpha - beta);
  for (std::size_t i = 1; i < x.size(); ++i) x[i] *= scale;
  x[0] = beta;
  return tau;
}

/// Reduce a to upper Hessenberg form in place by unitary similarity.
inline void reduce_to_hessenberg(ComplexMatrix& a) {
  const std::size_t n = a.size();
  if (n < 3) return;
  std::vector<cplx> v(n);
  std::vector<cplx> y(n);
  constexpr std::size_t row_block = 64;

  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t len = n - k - 1;
    std::span<cplx> x = a.column(k).subspan(k + 1, len);
    const cplx tau = make_reflector(x);
    v[0] = 1.0;
    for (std::size_t i = 1; i < len; ++i) {
      v[i] = x[i];
      x[i] = 0.0;
    }
    if (tau == 0.0) continue;

    // A(:, k+1:n) <- A(:, k+1:n) (I - tau v v^H), one row block at a time so
    // that the product and the rank-one update share cache.
    for (std::size_t r0 = 0; r0 < n; r0 += row_block) {
      const std::size_t r1 = std::min(n, r0 + row_block);
      std::fill(y.begin() + static_cast<std::ptrdiff_t>(r0), y.begin() + static_cast<std::ptrdiff_t>(r1), cplx{});
      for (std::size_t j = 0; j < len; ++j) {
        const cplx vj = v[j];
        const cplx* col = a.data() + (k + 1 + j) * n;
        for (std::size_t i = r0; i < r1; ++i) y[i] += col[i] * vj;
      }
      for (std::size_t j = 0; j < len; ++j) {
        const cplx f = tau * std::conj(v[j]);
        cplx* col = a.data() + (k + 1 + j) * n;
        for (std::size_t i = r0; i < r1; ++i) col[i] -= y[i] * f;
      }
    }

    // A(k+1:n, k+1:n) <- (I - conj(tau) v v^H) A(k+1:n, k+1:n)
    const cplx ctau = std::conj(tau);
    for (std::size_t j = k + 1; j < n; ++j) {
      cplx* col = a.data() + j * n + k + 1;
      cplx w = 0.0;
      for (std::size_t i = 0; i < len; ++i) w += std::conj(v[i]) * col[i];
      w *= ctau;
      if (w == 0.0) continue;
      for (std::size_t i = 0; i < len; ++i) col[i] -= w * v[i];
    }
  }
}

/// Eigenvalues of an upper Hessenberg matrix (entries below the subdiagonal
/// are ignored). h is overwritten.
inline std::vector<cplx> hessenberg_eigenvalues(ComplexMatrix& h, std::size_t iteration_factor) {
  const std::size_t n = h.size();
  std::vector<cplx> w(n);
  if (n == 0) return w;
  if (n == 1) {
    w[0] = h(0, 0);
    return w;
  }

  const double ulp = DBL_EPSILON;
  const double smlnum = DBL_MIN * (static_cast<double>(n) / ulp);
  const std::size_t itmax = iteration_factor * std::max<std::size_t>(10, n);
  constexpr double exceptional = 0.75;

  // Active window is [l, i]; i counts down as eigenvalues deflate.
  std::ptrdiff_t i = static_cast<std::ptrdiff_t>(n) - 1;
  while (i >= 0) {
    std::ptrdiff_t l = 0;
    bool deflated = false;
    for (std::size_t its = 0; its <= itmax; ++its) {
      std::ptrdiff_t k = i;
      for (; k > l; --k) {
        const cplx sub = h(k, k - 1);
        if (cabs1(sub) <= smlnum) break;
        double tst = cabs1(h(k - 1, k - 1)) + cabs1(h(k, k));
        if (tst == 0.0) {
          if (k - 2 >= 0) tst += cabs1(h(k - 1, k - 2));
          if (k + 1 < static_cast<std::ptrdiff_t>(n)) tst += cabs1(h(k + 1, k));
        }
        if (cabs1(sub) <= ulp * tst) {
          // Ahues & Tisseur criterion.
          const double ab = std::max(cabs1(sub), cabs1(h(k - 1, k)));
          const double ba = std::min(cabs1(sub), cabs1(h(k - 1, k)));
          const double aa = std::max(cabs1(h(k, k)), cabs1(h(k - 1, k - 1) - h(k, k)));
          const double bb = std::min(cabs1(h(k, k)), cabs1(h(k - 1, k - 1) - h(k, k)));
          const double s = aa + ab;
          if (ba * (ab / s) <= std::max(smlnum, ulp * (bb * (aa / s)))) break;
        }
      }
      l = k;
      if (l > 0) h(l, l - 1) = 0.0;
      if (l >= i) {
        deflated = true;
        break;
      }

      cplx shift;
      if (its == 10) {
        shift = exceptional * cabs1(h(l + 1, l)) + h(l, l);
      } else if (its == 20) {
        shift = exceptional * cabs1(h(i, i - 1)) + h(i, i);
      } else {
        // Wilkinson shift: eigenvalue of the trailing 2x2 block closer to h(i,i).
        shift = h(i, i);
        const cplx u = std::sqrt(h(i - 1, i)) * std::sqrt(h(i, i - 1));
        double s = cabs1(u);
        if (s != 0.0) {
          const cplx x = 0.5 * (h(i - 1, i - 1) - shift);
          const double sx = cabs1(x);
          s = std::max(s, sx);
          cplx y = s * std::sqrt((x / s) * (x / s) + (u / s) * (u / s));
          if (sx > 0.0) {
            const cplx xs = x / sx;
            if (xs.real() * y.real() + xs.imag() * y.imag() < 0.0) y = -y;
          }
          shift -= u * (u / (x + y));
        }
      }

      // Start the bulge at the lowest of two consecutive small subdiagonals.
      std::ptrdiff_t m = i - 1;
      cplx v0;
      cplx v1;
      for (; m > l; --m) {
        const cplx h11 = h(m, m);
        const cplx h22 = h(m + 1, m + 1);
        cplx h11s = h11 - shift;
        cplx h21 = h(m + 1, m);
        const double s = cabs1(h11s) + cabs1(h21);
        h11s /= s;
        h21 /= s;
        v0 = h11s;
        v1 = h21;
        const cplx h10 = h(m, m - 1);
        if (cabs1(h10) * cabs1(h21) <= ulp * (cabs1(h11s) * (cabs1(h11) + cabs1(h22)))) break;
      }
      if (m == l) {
        cplx h11s = h(l, l) - shift;
        cplx h21 = h(l + 1, l);
        const double s = cabs1(h11s) + cabs1(h21);
        v0 = h11s / s;
        v1 = h21 / s;
      }

      for (std::ptrdiff_t kk = m; kk < i; ++kk) {
        cplx pair[2];
        if (kk > m) {
          pair[0] = h(kk, kk - 1);
          pair[1] = h(kk + 1, kk - 1);
        } else {
          pair[0] = v0;
          pair[1] = v1;
        }
        const cplx tau = make_reflector(std::span<cplx>(pair, 2));
        if (kk > m) {
          h(kk, kk - 1) = pair[0];
          h(kk + 1, kk - 1) = 0.0;
        }
        const cplx v2 = pair[1];
        const cplx ctau = std::conj(tau);
        const cplx cv2 = std::conj(v2);
        if (kk == m && m > l) {
          // The fill-in at (m+1, m-1) is negligible by the choice of m.
          h(m, m - 1) *= 1.0 - ctau;
        }
        for (std::ptrdiff_t j = kk; j <= i; ++j) {
          const cplx sum = ctau * (h(kk, j) + cv2 * h(kk + 1, j));
          h(kk, j) -= sum;
          h(kk + 1, j) -= sum * v2;
        }
        const std::ptrdiff_t last = std::min(kk + 2, i);
        cplx* ck = h.data() + kk * static_cast<std::ptrdiff_t>(n);
        cplx* ck1 = ck + n;
        for (std::ptrdiff_t j = l; j <= last; ++j) {
          const cplx sum = tau * (ck[j] + ck1[j] * v2);
          ck[j] -= sum;
          ck1[j] -= sum * cv2;
        }
      }
    }
    if (!deflated) throw ConvergenceError(static_cast<std::size_t>(i), itmax);
    w[static_cast<std::size_t>(i)] = h(i, i);
    i = l - 1;
  }
  return w;
}

}  // namespace detail

/// All eigenvalues of mat via the native QR solver.
inline std::vector<cplx> eigenvalues(const ComplexMatrix& mat, const EigenOptions& opt = {}) {
  if (!mat.all_finite()) throw std::invalid_argument("eigenvalues: matrix has NaN or Inf entries");
  ComplexMatrix h = mat;
  if (opt.balance) detail::balance(h);
  detail::reduce_to_hessenberg(h);
  return detail::hessenberg_eigenvalues(h, opt.iteration_factor);
}

enum class EigenBackend { native, lapack };

constexpr bool lapack_available() noexcept {
#ifdef PHERM_HAVE_LAPACK
  return true;
#else
  return false;
#endif
}

constexpr EigenBackend default_backend() noexcept {
  return lapack_available() ? EigenBackend::lapack : EigenBackend::native;
}

inline std::vector<cplx> eigenvalues(const ComplexMatrix& mat, EigenBackend backend) {
  if (backend == EigenBackend::native) return eigenvalues(mat);
#ifdef PHERM_HAVE_LAPACK
  return lapack::eigenvalues(mat);
#else
  throw std::invalid_argument("eigenvalues: LAPACK backend not compiled in");
#endif
}

}  // namespace pherm
