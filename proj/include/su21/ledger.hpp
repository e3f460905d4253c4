// Entry recovery from trace data: the three 3x3 linear systems.
//
// Fix a diagonal loxodromic A = diag(l1, l2, l3), l1 l2 l3 = 1, and an
// unknown B in the group.  Traces of short words in A and B are linear in
// certain entries / entry products of B:
//
//   (1) tr(B), tr(AB), tr(A^{-1}B)          ->  b11, b22, b33
//       L1 = [[1,1,1],[l1,l2,l3],[1/l1,1/l2,1/l3]],
//       det L1 = (lambda^{-2} - lambda^2) + 2 (lambda - lambda^{-1}) cos 3phi,
//       nonzero for lambda > 1 since |cos 3phi| <= 1 < (lambda+lambda^{-1})/2.
//
//   (2) with C = B A B: c_ii = l_i b_ii^2 + (two entry products), giving
//       L2 = [[l2,l3,0],[l1,0,l3],[0,l1,l2]]  ->  b12 b21, b13 b31, b23 b32,
//       det L2 = -2 l1 l2 l3 = -2.
//
//   (3) with C = B A B^{-1} and D = B^{-1} A B, using the (1,1) equation of
//       C, the conjugated (3,3) equation of C, and the conjugated (1,1)
//       equation of D (B^{-1} is the Hermitian anti-transpose, so these mix
//       conjugated entries):
//       L3 = [[l2,l3,0],[conj l2,conj l1,0],[0,conj l3,conj l2]]
//          ->  b12 conj(b32), b13 conj(b31), b23 conj(b21),
//       det L3 = e^{2 i phi} (lambda e^{-3 i phi} - lambda^{-1} e^{3 i phi}),
//       |det L3| >= lambda - lambda^{-1}.
//
// Every determinant degenerates as lambda -> 1, so the pipelines refuse
// lambda < 1 + 10 eps_class up front.

#pragma once

#include <array>
#include <cmath>
#include <complex>

#include "su21/classify.hpp"
#include "su21/complexmat.hpp"
#include "su21/errors.hpp"
#include "su21/form.hpp"

namespace su21 {

/// Diagonal loxodromic with eigenvalues ordered (l1, l2, l3) =
/// (lambda e^{i phi}, e^{-2 i phi}, lambda^{-1} e^{i phi}).
struct DiagonalLoxodromic {
  cx l1, l2, l3;

  DiagonalLoxodromic(cx a, cx b, cx c, const Tolerances& tol = {})
      : l1(a), l2(b), l3(c) {
    if (std::abs(l1 * l2 * l3 - 1.0) > 1e4 * tol.eps_form) {
      throw Error(ErrorTag::NotUnimodular,
                  "diagonal eigenvalues must have product 1",
                  std::abs(l1 * l2 * l3 - 1.0));
    }
    if (!(std::abs(l1) > 1.0)) {
      throw Error(ErrorTag::NotLoxodromic,
                  "leading diagonal eigenvalue must exceed 1 in modulus",
                  std::abs(l1));
    }
  }

  [[nodiscard]] static DiagonalLoxodromic from_lambda_phi(double lambda,
                                                          double phi) {
    return DiagonalLoxodromic(std::polar(lambda, phi),
                              std::polar(1.0, -2.0 * phi),
                              std::polar(1.0 / lambda, phi));
  }

  [[nodiscard]] static DiagonalLoxodromic from_data(const LoxodromicData& d) {
    return from_lambda_phi(d.lambda, d.phi);
  }

  [[nodiscard]] double lambda() const { return std::abs(l1); }
  [[nodiscard]] double phi() const { return std::arg(l1); }
  [[nodiscard]] Mat3C matrix() const { return Mat3C::diagonal(l1, l2, l3); }
  [[nodiscard]] Mat3C inverse_matrix() const {
    return Mat3C::diagonal(1.0 / l1, 1.0 / l2, 1.0 / l3);
  }
};

/// All trace-recoverable entry data of a B relative to a fixed diagonal A:
/// the diagonal entries, the opposite products b_ij b_ji, and the mixed
/// conjugated products from the B A B^{-1} system.
struct EntryLedger {
  cx b11, b22, b33;
  cx p12_21, p13_31, p23_32;        // b12*b21, b13*b31, b23*b32
  cx m12_32c, m13_31c, m23_21c;     // b12*conj(b32), b13*conj(b31), b23*conj(b21)
};

// ============================================================================
// System matrices and their closed-form determinants (kept as documented
// cross-checks; the solves themselves use pivoted elimination)
// ============================================================================

[[nodiscard]] inline Mat3C diagonal_system(const DiagonalLoxodromic& a) {
  return Mat3C::from_rows({1.0, 1.0, 1.0}, {a.l1, a.l2, a.l3},
                          {1.0 / a.l1, 1.0 / a.l2, 1.0 / a.l3});
}

[[nodiscard]] inline cx diagonal_system_det_closed(double lambda, double phi) {
  const double il = 1.0 / lambda;
  return (il * il - lambda * lambda) +
         2.0 * (lambda - il) * std::cos(3.0 * phi);
}

[[nodiscard]] inline Mat3C product_system(const DiagonalLoxodromic& a) {
  return Mat3C::from_rows({a.l2, a.l3, 0.0}, {a.l1, 0.0, a.l3},
                          {0.0, a.l1, a.l2});
}

[[nodiscard]] inline cx product_system_det_closed(
    const DiagonalLoxodromic& a) {
  return -2.0 * a.l1 * a.l2 * a.l3;  // = -2 det A = -2
}

[[nodiscard]] inline Mat3C mixed_system(const DiagonalLoxodromic& a) {
  return Mat3C::from_rows({a.l2, a.l3, 0.0},
                          {std::conj(a.l2), std::conj(a.l1), 0.0},
                          {0.0, std::conj(a.l3), std::conj(a.l2)});
}

[[nodiscard]] inline cx mixed_system_det_closed(double lambda, double phi) {
  return std::polar(1.0, 2.0 * phi) *
         (lambda * std::polar(1.0, -3.0 * phi) -
          (1.0 / lambda) * std::polar(1.0, 3.0 * phi));
}

namespace detail {

inline void check_lambda_guard(const DiagonalLoxodromic& a,
                               const Tolerances& tol) {
  if (a.lambda() < 1.0 + 10.0 * tol.eps_class) {
    throw Error(ErrorTag::IllConditioned,
                "stretch factor too close to 1 for entry recovery",
                a.lambda());
  }
}

[[nodiscard]] inline std::array<cx, 3> solve3(const Mat3C& l,
                                              const std::array<cx, 3>& rhs,
                                              const Tolerances& tol) {
  const cx d = det(l);
  if (std::abs(d) < tol.eps_solve * std::max(1.0, l.max_abs())) {
    throw Error(ErrorTag::IllConditioned,
                "entry-recovery system is singular at tolerance", std::abs(d));
  }
  std::array<std::array<cx, 3>, 3> rows;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) rows[i][j] = l(i, j);
  }
  return solve_linear<3>(rows, rhs, tol.eps_solve);
}

}  // namespace detail

// ============================================================================
// Recovery operations
// ============================================================================

/// Diagonal entries of B from t1 = tr(B), t2 = tr(AB), t3 = tr(A^{-1}B).
[[nodiscard]] inline std::array<cx, 3> recover_diagonal(
    const DiagonalLoxodromic& a, cx t1, cx t2, cx t3,
    const Tolerances& tol = {}) {
  detail::check_lambda_guard(a, tol);
  return detail::solve3(diagonal_system(a), {t1, t2, t3}, tol);
}

namespace detail {

/// tr(diag(d) * M) = sum_i d_i m_ii without forming the product.
[[nodiscard]] inline cx diag_weighted_trace(cx d1, cx d2, cx d3,
                                            const Mat3C& m) {
  return d1 * m(0, 0) + d2 * m(1, 1) + d3 * m(2, 2);
}

[[nodiscard]] inline std::array<cx, 3> diagonal_of(
    const DiagonalLoxodromic& a, const Mat3C& m, const Tolerances& tol) {
  const cx t1 = trace(m);
  const cx t2 = diag_weighted_trace(a.l1, a.l2, a.l3, m);
  const cx t3 = diag_weighted_trace(1.0 / a.l1, 1.0 / a.l2, 1.0 / a.l3, m);
  return recover_diagonal(a, t1, t2, t3, tol);
}

}  // namespace detail

/// Opposite entry products (b12 b21, b13 b31, b23 b32) via the B A B system.
/// Uses nothing from B beyond traces of words in {A, B}.
[[nodiscard]] inline std::array<cx, 3> recover_products(
    const DiagonalLoxodromic& a, const Su21Element& b,
    const Tolerances& tol = {}) {
  detail::check_lambda_guard(a, tol);
  const Mat3C& bm = b.matrix();
  const std::array<cx, 3> bd = detail::diagonal_of(a, bm, tol);
  const Mat3C c = bm * a.matrix() * bm;
  const std::array<cx, 3> cd = detail::diagonal_of(a, c, tol);
  const std::array<cx, 3> rhs = {cd[0] - a.l1 * bd[0] * bd[0],
                                 cd[1] - a.l2 * bd[1] * bd[1],
                                 cd[2] - a.l3 * bd[2] * bd[2]};
  return detail::solve3(product_system(a), rhs, tol);
}

/// Mixed conjugated products (b12 conj b32, b13 conj b31, b23 conj b21) via
/// the B A B^{-1} and B^{-1} A B systems.
[[nodiscard]] inline std::array<cx, 3> recover_mixed(
    const DiagonalLoxodromic& a, const Su21Element& b,
    const Tolerances& tol = {}) {
  detail::check_lambda_guard(a, tol);
  const Mat3C& bm = b.matrix();
  const Mat3C bm_inv = anti_transpose_inverse(bm);
  const std::array<cx, 3> bd = detail::diagonal_of(a, bm, tol);
  const Mat3C c = bm * a.matrix() * bm_inv;
  const Mat3C d = bm_inv * a.matrix() * bm;
  const std::array<cx, 3> cd = detail::diagonal_of(a, c, tol);
  const std::array<cx, 3> dd = detail::diagonal_of(a, d, tol);
  // b11 conj(b33) is the product of recovered diagonal entries; the inverse's
  // corner diagonal entries are its conjugate pair.
  const cx corner = bd[0] * std::conj(bd[2]);
  const std::array<cx, 3> rhs = {cd[0] - a.l1 * corner,
                                 std::conj(cd[2] - a.l3 * std::conj(corner)),
                                 std::conj(dd[0] - a.l1 * corner)};
  return detail::solve3(mixed_system(a), rhs, tol);
}

/// Full ledger for B relative to A.
[[nodiscard]] inline EntryLedger build_ledger(const DiagonalLoxodromic& a,
                                              const Su21Element& b,
                                              const Tolerances& tol = {}) {
  EntryLedger led;
  const std::array<cx, 3> bd = detail::diagonal_of(a, b.matrix(), tol);
  led.b11 = bd[0];
  led.b22 = bd[1];
  led.b33 = bd[2];
  const std::array<cx, 3> p = recover_products(a, b, tol);
  led.p12_21 = p[0];
  led.p13_31 = p[1];
  led.p23_32 = p[2];
  const std::array<cx, 3> m = recover_mixed(a, b, tol);
  led.m12_32c = m[0];
  led.m13_31c = m[1];
  led.m23_21c = m[2];
  return led;
}

}  // namespace su21
