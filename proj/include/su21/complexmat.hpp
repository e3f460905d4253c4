// Fixed-size complex linear algebra: 3-vectors, 3x3 matrices, determinants,
// pivoted linear solves (3x3 and NxN up to 9x9), complex cross products, and
// closed-form eigenvalue machinery for cubics.  Everything is double-precision
// and allocation-free; all functions are pure.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

#include "su21/errors.hpp"

namespace su21 {

using cx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

[[nodiscard]] inline bool is_finite(cx z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// ============================================================================
// Vec3C
// ============================================================================

/// Column vector (z1, z2, z3) in the fixed basis e1, e2, e3.
struct Vec3C {
  cx z1{}, z2{}, z3{};

  [[nodiscard]] cx operator[](std::size_t i) const {
    return i == 0 ? z1 : (i == 1 ? z2 : z3);
  }
  cx& operator[](std::size_t i) {
    return i == 0 ? z1 : (i == 1 ? z2 : z3);
  }

  [[nodiscard]] Vec3C operator+(const Vec3C& o) const {
    return {z1 + o.z1, z2 + o.z2, z3 + o.z3};
  }
  [[nodiscard]] Vec3C operator-(const Vec3C& o) const {
    return {z1 - o.z1, z2 - o.z2, z3 - o.z3};
  }
  [[nodiscard]] Vec3C operator*(cx s) const { return {z1 * s, z2 * s, z3 * s}; }

  [[nodiscard]] double max_abs() const {
    return std::max({std::abs(z1), std::abs(z2), std::abs(z3)});
  }
  [[nodiscard]] double norm2() const {  // Euclidean norm (not the Hermitian form)
    return std::sqrt(std::norm(z1) + std::norm(z2) + std::norm(z3));
  }
  [[nodiscard]] bool finite() const {
    return is_finite(z1) && is_finite(z2) && is_finite(z3);
  }
};

/// Standard (positive-definite) inner product, conjugate-linear in the second
/// argument.  Used only for projective comparisons, never for the group form.
[[nodiscard]] inline cx dot_std(const Vec3C& a, const Vec3C& b) {
  return a.z1 * std::conj(b.z1) + a.z2 * std::conj(b.z2) + a.z3 * std::conj(b.z3);
}

/// Bilinear cross product: orthogonal to both arguments under the *bilinear*
/// dot (no conjugation), hence in the kernel of any matrix having a and b
/// among its rows.
[[nodiscard]] inline Vec3C cross(const Vec3C& a, const Vec3C& b) {
  return {a.z2 * b.z3 - a.z3 * b.z2,
          a.z3 * b.z1 - a.z1 * b.z3,
          a.z1 * b.z2 - a.z2 * b.z1};
}

// ============================================================================
// Mat3C
// ============================================================================

/// Row-major 3x3 complex matrix.  Indices are 0-based in code; doc comments
/// use the 1-based entry names a_ij.
struct Mat3C {
  std::array<cx, 9> a{};

  [[nodiscard]] cx operator()(std::size_t i, std::size_t j) const {
    return a[3 * i + j];
  }
  cx& operator()(std::size_t i, std::size_t j) { return a[3 * i + j]; }

  [[nodiscard]] static Mat3C identity() {
    Mat3C m;
    m(0, 0) = m(1, 1) = m(2, 2) = 1.0;
    return m;
  }
  [[nodiscard]] static Mat3C diagonal(cx d1, cx d2, cx d3) {
    Mat3C m;
    m(0, 0) = d1;
    m(1, 1) = d2;
    m(2, 2) = d3;
    return m;
  }
  [[nodiscard]] static Mat3C from_rows(const Vec3C& r1, const Vec3C& r2,
                                       const Vec3C& r3) {
    Mat3C m;
    for (std::size_t j = 0; j < 3; ++j) {
      m(0, j) = r1[j];
      m(1, j) = r2[j];
      m(2, j) = r3[j];
    }
    return m;
  }
  [[nodiscard]] static Mat3C from_cols(const Vec3C& c1, const Vec3C& c2,
                                       const Vec3C& c3) {
    Mat3C m;
    for (std::size_t i = 0; i < 3; ++i) {
      m(i, 0) = c1[i];
      m(i, 1) = c2[i];
      m(i, 2) = c3[i];
    }
    return m;
  }

  [[nodiscard]] Vec3C row(std::size_t i) const {
    return {(*this)(i, 0), (*this)(i, 1), (*this)(i, 2)};
  }
  [[nodiscard]] Vec3C col(std::size_t j) const {
    return {(*this)(0, j), (*this)(1, j), (*this)(2, j)};
  }

  [[nodiscard]] Mat3C operator+(const Mat3C& o) const {
    Mat3C m;
    for (std::size_t k = 0; k < 9; ++k) m.a[k] = a[k] + o.a[k];
    return m;
  }
  [[nodiscard]] Mat3C operator-(const Mat3C& o) const {
    Mat3C m;
    for (std::size_t k = 0; k < 9; ++k) m.a[k] = a[k] - o.a[k];
    return m;
  }
  [[nodiscard]] Mat3C operator*(cx s) const {
    Mat3C m;
    for (std::size_t k = 0; k < 9; ++k) m.a[k] = a[k] * s;
    return m;
  }
  [[nodiscard]] Mat3C operator*(const Mat3C& o) const {
    Mat3C m;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        cx s = 0.0;
        for (std::size_t k = 0; k < 3; ++k) s += (*this)(i, k) * o(k, j);
        m(i, j) = s;
      }
    return m;
  }
  [[nodiscard]] Vec3C operator*(const Vec3C& v) const {
    Vec3C out;
    for (std::size_t i = 0; i < 3; ++i) {
      out[i] = (*this)(i, 0) * v.z1 + (*this)(i, 1) * v.z2 + (*this)(i, 2) * v.z3;
    }
    return out;
  }

  [[nodiscard]] bool finite() const {
    for (const cx& z : a)
      if (!is_finite(z)) return false;
    return true;
  }

  [[nodiscard]] double max_abs() const {
    double m = 0.0;
    for (const cx& z : a) m = std::max(m, std::abs(z));
    return m;
  }
};

[[nodiscard]] inline cx trace(const Mat3C& m) {
  return m(0, 0) + m(1, 1) + m(2, 2);
}

[[nodiscard]] inline cx det(const Mat3C& m) {
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
         m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

[[nodiscard]] inline Mat3C transpose(const Mat3C& m) {
  Mat3C t;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) t(i, j) = m(j, i);
  return t;
}

[[nodiscard]] inline Mat3C conj(const Mat3C& m) {
  Mat3C c;
  for (std::size_t k = 0; k < 9; ++k) c.a[k] = std::conj(m.a[k]);
  return c;
}

/// Conjugate transpose.
[[nodiscard]] inline Mat3C adjoint(const Mat3C& m) { return conj(transpose(m)); }

[[nodiscard]] inline double max_abs_diff(const Mat3C& x, const Mat3C& y) {
  double m = 0.0;
  for (std::size_t k = 0; k < 9; ++k) m = std::max(m, std::abs(x.a[k] - y.a[k]));
  return m;
}

/// General 3x3 inverse via the adjugate.  Throws IllConditioned when the
/// determinant is below the conditioning floor relative to the entry scale.
[[nodiscard]] inline Mat3C inverse(const Mat3C& m, double eps_solve = 1e-12) {
  const cx d = det(m);
  const double scale = std::max(1.0, m.max_abs());
  if (std::abs(d) < eps_solve * scale * scale * scale) {
    throw Error(ErrorTag::IllConditioned,
                "3x3 inverse: determinant below conditioning floor",
                std::abs(d));
  }
  Mat3C inv;
  inv(0, 0) = m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
  inv(0, 1) = m(0, 2) * m(2, 1) - m(0, 1) * m(2, 2);
  inv(0, 2) = m(0, 1) * m(1, 2) - m(0, 2) * m(1, 1);
  inv(1, 0) = m(1, 2) * m(2, 0) - m(1, 0) * m(2, 2);
  inv(1, 1) = m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0);
  inv(1, 2) = m(0, 2) * m(1, 0) - m(0, 0) * m(1, 2);
  inv(2, 0) = m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0);
  inv(2, 1) = m(0, 1) * m(2, 0) - m(0, 0) * m(2, 1);
  inv(2, 2) = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  return inv * (1.0 / d);
}

/// Non-negative integer power by repeated squaring.
[[nodiscard]] inline Mat3C pow(const Mat3C& m, unsigned long n) {
  Mat3C result = Mat3C::identity();
  Mat3C base = m;
  while (n > 0) {
    if (n & 1UL) result = result * base;
    base = base * base;
    n >>= 1UL;
  }
  return result;
}

// ============================================================================
// Pivoted linear solves
// ============================================================================

/// Solve an n x n complex system by Gaussian elimination with scaled partial
/// pivoting.  Throws IllConditioned when a pivot falls below eps_solve times
/// the largest initial entry magnitude of its row-scaled column.
template <std::size_t N>
[[nodiscard]] std::array<cx, N> solve_linear(std::array<std::array<cx, N>, N> A,
                                             std::array<cx, N> b,
                                             double eps_solve = 1e-12) {
  // Row scales for pivot comparisons.
  std::array<double, N> scale{};
  for (std::size_t i = 0; i < N; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < N; ++j) s = std::max(s, std::abs(A[i][j]));
    scale[i] = (s > 0.0) ? s : 1.0;
  }
  for (std::size_t k = 0; k < N; ++k) {
    // Select the pivot row maximizing |a_ik| / scale_i.
    std::size_t piv = k;
    double best = std::abs(A[k][k]) / scale[k];
    for (std::size_t i = k + 1; i < N; ++i) {
      const double v = std::abs(A[i][k]) / scale[i];
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (piv != k) {
      std::swap(A[piv], A[k]);
      std::swap(b[piv], b[k]);
      std::swap(scale[piv], scale[k]);
    }
    if (std::abs(A[k][k]) <= eps_solve * scale[k]) {
      throw Error(ErrorTag::IllConditioned,
                  "linear solve: pivot below conditioning floor",
                  std::abs(A[k][k]));
    }
    for (std::size_t i = k + 1; i < N; ++i) {
      const cx f = A[i][k] / A[k][k];
      if (f == cx{}) continue;
      for (std::size_t j = k; j < N; ++j) A[i][j] -= f * A[k][j];
      b[i] -= f * b[k];
    }
  }
  std::array<cx, N> x{};
  for (std::size_t k = N; k-- > 0;) {
    cx s = b[k];
    for (std::size_t j = k + 1; j < N; ++j) s -= A[k][j] * x[j];
    x[k] = s / A[k][k];
  }
  return x;
}

/// Numerical rank by the same scaled-partial-pivot elimination: the count of
/// pivots exceeding rel_tol times the largest scaled entry of the matrix.
template <std::size_t N>
[[nodiscard]] std::size_t pivot_rank(std::array<std::array<cx, N>, N> A,
                                     double rel_tol) {
  double overall = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) overall = std::max(overall, std::abs(A[i][j]));
  if (overall == 0.0) return 0;
  const double floor_ = rel_tol * overall;
  std::size_t rank = 0;
  std::array<bool, N> used_row{};
  for (std::size_t k = 0; k < N; ++k) {
    // Full pivot search over unused rows and remaining columns keeps the rank
    // decision stable for singular inputs.
    std::size_t pr = N, pc = N;
    double best = floor_;
    for (std::size_t i = 0; i < N; ++i) {
      if (used_row[i]) continue;
      for (std::size_t j = 0; j < N; ++j) {
        const double v = std::abs(A[i][j]);
        if (v > best) {
          best = v;
          pr = i;
          pc = j;
        }
      }
    }
    if (pr == N) break;  // no pivot above the floor: rank found
    ++rank;
    used_row[pr] = true;
    for (std::size_t i = 0; i < N; ++i) {
      if (used_row[i]) continue;
      const cx f = A[i][pc] / A[pr][pc];
      if (f == cx{}) continue;
      for (std::size_t j = 0; j < N; ++j) A[i][j] -= f * A[pr][j];
    }
  }
  return rank;
}

// ============================================================================
// Closed-form spectra
// ============================================================================

/// Roots of the monic cubic z^3 + a2 z^2 + a1 z + a0 by the trigonometric /
/// Cardano method on the depressed cubic, followed by one Newton polish step
/// per root (skipped near multiple roots where the derivative underflows,
/// since Newton would amplify the error there).
[[nodiscard]] inline std::array<cx, 3> cubic_roots(cx a2, cx a1, cx a0) {
  // Depress: z = w - a2/3, w^3 + p w + q = 0.
  const cx s = a2 / 3.0;
  const cx p = a1 - a2 * a2 / 3.0;
  const cx q = 2.0 * a2 * a2 * a2 / 27.0 - a2 * a1 / 3.0 + a0;
  std::array<cx, 3> w;
  const double pn = std::abs(p), qn = std::abs(q);
  if (pn == 0.0 && qn == 0.0) {
    w = {cx{}, cx{}, cx{}};
  } else {
    // Cardano: w = u - p/(3u), u^3 = (-q + sqrt(q^2 + 4p^3/27)) / 2.
    const cx disc = std::sqrt(q * q + 4.0 * p * p * p / 27.0);
    // Pick the sign avoiding catastrophic cancellation in -q ± disc.
    cx u3 = (std::abs(-q + disc) >= std::abs(-q - disc)) ? (-q + disc) / 2.0
                                                         : (-q - disc) / 2.0;
    cx u = std::pow(u3, 1.0 / 3.0);
    if (std::abs(u) == 0.0) {
      // q^2 + 4p^3/27 == q^2 case with q == 0: w^3 = -p w.
      const cx r = std::sqrt(-p);
      w = {cx{}, r, -r};
    } else {
      const cx omega{-0.5, std::sqrt(3.0) / 2.0};
      for (int k = 0; k < 3; ++k) {
        const cx uk = u * (k == 0 ? cx{1.0} : (k == 1 ? omega : omega * omega));
        w[k] = uk - p / (3.0 * uk);
      }
    }
  }
  std::array<cx, 3> roots;
  const double scale =
      std::max({1.0, std::abs(a2), std::abs(a1), std::abs(a0)});
  for (int k = 0; k < 3; ++k) {
    cx z = w[k] - s;
    // One Newton step on the original cubic; skip when |f'| is too small
    // (clustered roots) to avoid dividing noise by noise.
    const cx f = ((z + a2) * z + a1) * z + a0;
    const cx fp = (3.0 * z + 2.0 * a2) * z + a1;
    if (std::abs(fp) > 1e-6 * scale) z -= f / fp;
    roots[k] = z;
  }
  return roots;
}

/// Eigenvalues of a group element, i.e. roots of its characteristic cubic
/// mu^3 - t mu^2 + conj(t) mu - 1 where t = tr(g).  Valid whenever
/// det(g) = 1 and tr(g^{-1}) = conj(tr(g)), which the group guarantees.
[[nodiscard]] inline std::array<cx, 3> eigenvalues_from_trace(cx tr) {
  return cubic_roots(-tr, std::conj(tr), cx{-1.0});
}

/// Eigenvalues of the characteristic cubic built from independent traces of
/// g and g^{-1} (for matrices only approximately in the group).
[[nodiscard]] inline std::array<cx, 3> eigenvalues_from_traces(cx tr, cx tr_inv) {
  return cubic_roots(-tr, tr_inv, cx{-1.0});
}

/// Eigenvalues of a Hermitian 3x3 matrix (ascending), via the trigonometric
/// solution of the real characteristic cubic.  Input must be Hermitian to
/// roundoff; only the Hermitian part is consulted.
[[nodiscard]] inline std::array<double, 3> hermitian_eigenvalues(const Mat3C& h) {
  const double q = (h(0, 0).real() + h(1, 1).real() + h(2, 2).real()) / 3.0;
  Mat3C b = h;
  b(0, 0) -= q;
  b(1, 1) -= q;
  b(2, 2) -= q;
  double p2 = 0.0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) p2 += std::norm(b(i, j));
  const double p = std::sqrt(p2 / 6.0);
  if (p < 1e-300) return {q, q, q};
  const Mat3C bn = b * (1.0 / p);
  const double r = std::clamp(det(bn).real() / 2.0, -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  const double e1 = q + 2.0 * p * std::cos(phi);
  const double e3 = q + 2.0 * p * std::cos(phi + 2.0 * kPi / 3.0);
  const double e2 = 3.0 * q - e1 - e3;
  std::array<double, 3> out{e3, e2, e1};
  std::sort(out.begin(), out.end());
  return out;
}

/// Singular values of m (descending), as square roots of the eigenvalues of
/// adjoint(m) * m.  Accuracy floor ~1e-8 for the smallest value (squaring),
/// which suffices for the rank thresholds used in classification.
[[nodiscard]] inline std::array<double, 3> singular_values(const Mat3C& m) {
  const Mat3C h = adjoint(m) * m;
  std::array<double, 3> ev = hermitian_eigenvalues(h);
  std::array<double, 3> sv{};
  for (int i = 0; i < 3; ++i) sv[i] = std::sqrt(std::max(0.0, ev[2 - i]));
  return sv;
}

}  // namespace su21
