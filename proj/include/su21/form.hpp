// The signature-(2,1) Hermitian form in the null basis, SU(2,1) membership
// validation, and the anti-transpose inverse.
//
// The form is <z,w> = z1*conj(w3) + z2*conj(w2) + z3*conj(w1), i.e. the
// Gram matrix is J = antidiag(1,1,1).  The basis vectors satisfy
// <e1,e1> = <e3,e3> = 0, <e2,e2> = 1, <e1,e3> = 1; e1 and e3 are null and
// pair to 1.  A matrix lies in SU(2,1) iff its rows v1, v2, v3 satisfy
// <v1,v1> = 0, <v2,v2> = 1, <v3,v3> = 0, <v1,v2> = 0, <v2,v3> = 0,
// <v1,v3> = 1 and det = 1; equivalently A* J A = J with det A = 1.
// The inverse is then the Hermitian anti-transpose:
// (A^{-1})_{ij} = conj(a_{4-j,4-i}).

#pragma once

#include <array>
#include <cmath>
#include <complex>

#include "su21/complexmat.hpp"
#include "su21/errors.hpp"

namespace su21 {

// ============================================================================
// Tolerances
// ============================================================================

/// Numerical thresholds threaded through every fallible operation.
///   eps_form  — form/membership residual bound,
///   eps_class — classification margins,
///   eps_field — reality and field-membership tests,
///   eps_solve — linear-system conditioning floor.
struct Tolerances {
  double eps_form = 1e-10;
  double eps_class = 1e-8;
  double eps_field = 1e-8;
  double eps_solve = 1e-12;

  /// Enforces positivity and the ordering eps_solve <= eps_form <= eps_class.
  void validate() const {
    if (!(eps_form > 0.0 && eps_class > 0.0 && eps_field > 0.0 &&
          eps_solve > 0.0)) {
      throw Error(ErrorTag::ParseError, "tolerances must be strictly positive");
    }
    if (!(eps_solve <= eps_form && eps_form <= eps_class)) {
      throw Error(ErrorTag::ParseError,
                  "tolerances must satisfy eps_solve <= eps_form <= eps_class");
    }
  }
};

// ============================================================================
// The form
// ============================================================================

/// Hermitian inner product of signature (2,1) in the null basis:
/// <z,w> = z1*conj(w3) + z2*conj(w2) + z3*conj(w1).  Linear in the first
/// argument, conjugate-linear in the second.
[[nodiscard]] inline cx herm_inner(const Vec3C& z, const Vec3C& w) {
  return z.z1 * std::conj(w.z3) + z.z2 * std::conj(w.z2) + z.z3 * std::conj(w.z1);
}

/// Gram matrix of the form: antidiag(1, 1, 1).
[[nodiscard]] inline Mat3C form_matrix() {
  Mat3C j;
  j(0, 2) = j(1, 1) = j(2, 0) = 1.0;
  return j;
}

/// The six row conditions plus |det - 1|, as a residual vector
/// (<v1,v1>, <v2,v2>-1, <v3,v3>, <v1,v2>, <v2,v3>, <v1,v3>-1, det-1).
[[nodiscard]] inline std::array<cx, 7> membership_residuals(const Mat3C& m) {
  const Vec3C v1 = m.row(0), v2 = m.row(1), v3 = m.row(2);
  return {herm_inner(v1, v1),
          herm_inner(v2, v2) - 1.0,
          herm_inner(v3, v3),
          herm_inner(v1, v2),
          herm_inner(v2, v3),
          herm_inner(v1, v3) - 1.0,
          det(m) - 1.0};
}

/// Max-norm of the membership residual vector.
[[nodiscard]] inline double membership_residual(const Mat3C& m) {
  double r = 0.0;
  for (const cx& c : membership_residuals(m)) r = std::max(r, std::abs(c));
  return r;
}

// ============================================================================
// Su21Element
// ============================================================================

/// A validated group element.  Construction goes through validate_su21 (or
/// the unchecked factory for matrices proven valid by construction, e.g.
/// exact normal forms).
class Su21Element {
 public:
  Su21Element() : m_(Mat3C::identity()), residual_(0.0) {}

  [[nodiscard]] const Mat3C& matrix() const noexcept { return m_; }
  [[nodiscard]] double residual() const noexcept { return residual_; }

  [[nodiscard]] static Su21Element unchecked(const Mat3C& m) {
    Su21Element e;
    e.m_ = m;
    e.residual_ = membership_residual(m);
    return e;
  }

 private:
  friend Su21Element validate_su21(const Mat3C&, const Tolerances&);
  Mat3C m_;
  double residual_;
};

/// Validates membership: all six row conditions and det = 1 within eps_form.
/// Throws NotInGroup carrying the max residual otherwise.
[[nodiscard]] inline Su21Element validate_su21(const Mat3C& m,
                                               const Tolerances& tol = {}) {
  if (!m.finite()) {
    throw Error(ErrorTag::NotInGroup, "matrix has non-finite entries");
  }
  const double r = membership_residual(m);
  if (r > tol.eps_form) {
    throw Error(ErrorTag::NotInGroup,
                "matrix fails a form condition or det != 1", r);
  }
  Su21Element e;
  e.m_ = m;
  e.residual_ = r;
  return e;
}

// ============================================================================
// Group operations
// ============================================================================

/// Inverse by the Hermitian anti-transpose: (g^{-1})_{ij} = conj(a_{4-j,4-i}).
/// Exact for exact group elements; no linear solve involved.
[[nodiscard]] inline Mat3C anti_transpose_inverse(const Mat3C& m) {
  Mat3C inv;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) inv(i, j) = std::conj(m(2 - j, 2 - i));
  return inv;
}

[[nodiscard]] inline Su21Element anti_transpose_inverse(const Su21Element& g) {
  return Su21Element::unchecked(anti_transpose_inverse(g.matrix()));
}

[[nodiscard]] inline Su21Element mul(const Su21Element& a, const Su21Element& b) {
  return Su21Element::unchecked(a.matrix() * b.matrix());
}

/// Conjugation s * g * s^{-1} with the inverse taken by anti-transposition,
/// valid when s is (approximately) in the group.
[[nodiscard]] inline Mat3C group_conjugate(const Mat3C& s, const Mat3C& g) {
  return s * g * anti_transpose_inverse(s);
}

[[nodiscard]] inline Su21Element group_conjugate(const Su21Element& s,
                                                 const Su21Element& g) {
  return Su21Element::unchecked(group_conjugate(s.matrix(), g.matrix()));
}

}  // namespace su21
