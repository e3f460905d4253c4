// Corpus constructors: the canonical embeddings and parameterized families
// used throughout the tests and the command-line corpus generator.
//
// For the antidiagonal form z1 conj(w3) + z2 conj(w2) + z3 conj(w1), the
// real points of the group are exactly SO(2,1) (the Gram matrix is real),
// SL(2,R) embeds on the outer coordinate plane with a purely imaginary
// off-diagonal twist, and SU(1,1) embeds as the stabilizer of the complex
// line through (0,1,0).

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "su21/complexmat.hpp"
#include "su21/errors.hpp"
#include "su21/form.hpp"
#include "su21/parabolic.hpp"
#include "su21/random.hpp"
#include "su21/words.hpp"

namespace su21 {

/// Embeds a real 2x2 unimodular matrix [[a,b],[c,d]] as
/// [[a,0,-ib],[0,1,0],[ic,0,d]].  The embedding is faithful and
/// multiplicative, and fixes the complex line of (0,1,0).
[[nodiscard]] inline Su21Element corpus_sl2r_embed(double a, double b,
                                                   double c, double d,
                                                   const Tolerances& tol = {}) {
  if (std::abs(a * d - b * c - 1.0) > tol.eps_form) {
    throw Error(ErrorTag::NotUnimodular,
                "2x2 block determinant is not 1 within the form tolerance",
                a * d - b * c);
  }
  const Mat3C m = Mat3C::from_rows({cx(a, 0.0), cx(0.0, 0.0), cx(0.0, -b)},
                                   {cx(0.0, 0.0), cx(1.0, 0.0), cx(0.0, 0.0)},
                                   {cx(0.0, c), cx(0.0, 0.0), cx(d, 0.0)});
  return validate_su21(m, tol);
}

/// The embedded modular group: images of T = [[1,1],[0,1]] and
/// S = [[0,-1],[1,0]].
[[nodiscard]] inline GroupSpec corpus_sl2z(bool assumed_discrete = true,
                                           const Tolerances& tol = {}) {
  std::vector<Su21Element> gens;
  gens.push_back(corpus_sl2r_embed(1.0, 1.0, 0.0, 1.0, tol));
  gens.push_back(corpus_sl2r_embed(0.0, -1.0, 1.0, 0.0, tol));
  return GroupSpec(std::move(gens), assumed_discrete, tol);
}

/// Real hyperbolic boost diag(lambda, 1, 1/lambda).
[[nodiscard]] inline Su21Element corpus_so21_boost(double lambda,
                                                   const Tolerances& tol = {}) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw Error(ErrorTag::OutOfRange, "boost parameter must be positive",
                lambda);
  }
  return validate_su21(
      Mat3C::diagonal(cx(lambda, 0.0), cx(1.0, 0.0), cx(1.0 / lambda, 0.0)),
      tol);
}

/// A fixed rational rotation: every entry has denominator 3, so words in it
/// have rational (hence real) traces.
[[nodiscard]] inline Su21Element corpus_so21_rotation(
    const Tolerances& tol = {}) {
  const double t = 1.0 / 3.0;
  const Mat3C m = Mat3C::from_rows(
      {cx(2 * t, 0.0), cx(-2 * t, 0.0), cx(-t, 0.0)},
      {cx(2 * t, 0.0), cx(t, 0.0), cx(2 * t, 0.0)},
      {cx(-t, 0.0), cx(-2 * t, 0.0), cx(2 * t, 0.0)});
  return validate_su21(m, tol);
}

/// One-parameter rational family of real rotations: with
/// c = (1-2t^2)/(1+2t^2) and q = 2t/(1+2t^2) (so c^2 + 2q^2 = 1),
/// rational t gives rational entries.  t = 0 is the identity.
[[nodiscard]] inline Su21Element corpus_so21_rational(
    double t, const Tolerances& tol = {}) {
  if (!std::isfinite(t)) {
    throw Error(ErrorTag::OutOfRange, "rotation parameter must be finite", t);
  }
  const double den = 1.0 + 2.0 * t * t;
  const double c = (1.0 - 2.0 * t * t) / den;
  const double q = 2.0 * t / den;
  const Mat3C m = Mat3C::from_rows(
      {cx(0.5 * (1.0 + c), 0.0), cx(-q, 0.0), cx(0.5 * (c - 1.0), 0.0)},
      {cx(q, 0.0), cx(c, 0.0), cx(q, 0.0)},
      {cx(0.5 * (c - 1.0), 0.0), cx(-q, 0.0), cx(0.5 * (1.0 + c), 0.0)});
  return validate_su21(m, tol);
}

namespace detail {

/// Matrix exponential by scaling-and-squaring on a Taylor sum; ample
/// accuracy at these sizes for arguments of moderate norm.
[[nodiscard]] inline Mat3C mat_exp(const Mat3C& k) {
  double norm = 3.0 * k.max_abs();  // crude bound on the operator norm
  int squarings = 0;
  while (norm > 0.5 && squarings < 64) {
    norm *= 0.5;
    ++squarings;
  }
  const Mat3C b = k * cx(std::ldexp(1.0, -squarings), 0.0);
  Mat3C term = Mat3C::identity();
  Mat3C sum = term;
  for (int n = 1; n <= 32; ++n) {
    term = (term * b) * cx(1.0 / n, 0.0);
    sum = sum + term;
    if (term.max_abs() < 1e-18) break;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

}  // namespace detail

/// Pseudo-random real point of the group: exp(J A) with A real
/// antisymmetric, J the form's Gram matrix.  J A lies in the real Lie
/// algebra (its J-adjoint is its negative and it is traceless), so the
/// exponential is a real matrix satisfying all form conditions.
[[nodiscard]] inline Su21Element corpus_so21_random(
    SeededRng& rng, double spread = 1.0, const Tolerances& tol = {}) {
  if (!(spread > 0.0) || !std::isfinite(spread)) {
    throw Error(ErrorTag::OutOfRange, "spread must be positive and finite",
                spread);
  }
  const double a12 = spread * rng.uniform_sym();
  const double a13 = spread * rng.uniform_sym();
  const double a23 = spread * rng.uniform_sym();
  const Mat3C a = Mat3C::from_rows({cx(0.0), cx(a12, 0.0), cx(a13, 0.0)},
                                   {cx(-a12, 0.0), cx(0.0), cx(a23, 0.0)},
                                   {cx(-a13, 0.0), cx(-a23, 0.0), cx(0.0)});
  return validate_su21(detail::mat_exp(form_matrix() * a), tol);
}

/// Embeds an element of SU(1,1) given by its first row (a, b) with
/// |a|^2 - |b|^2 = 1.  The image fixes the complex line of (0,1,0); the
/// map is multiplicative, boosts (a, b real) land on real matrices, and
/// unit a with b = 0 gives the elliptic rotations.
[[nodiscard]] inline Su21Element corpus_su11(cx a, cx b,
                                             const Tolerances& tol = {}) {
  const double defect = std::norm(a) - std::norm(b) - 1.0;
  if (std::abs(defect) > tol.eps_form) {
    throw Error(ErrorTag::NotUnimodular,
                "|a|^2 - |b|^2 is not 1 within the form tolerance", defect);
  }
  const Mat3C m = Mat3C::from_rows(
      {cx(a.real() + b.real(), 0.0), cx(0.0), cx(0.0, a.imag() - b.imag())},
      {cx(0.0), cx(1.0, 0.0), cx(0.0)},
      {cx(0.0, a.imag() + b.imag()), cx(0.0), cx(a.real() - b.real(), 0.0)});
  return validate_su21(m, tol);
}

/// Canonical diagonal loxodromic diag(l e^{i phi}, e^{-2 i phi}, e^{i phi}/l).
[[nodiscard]] inline Su21Element corpus_loxodromic(double lambda, double phi,
                                                   const Tolerances& tol = {}) {
  if (!(lambda > 1.0) || !std::isfinite(lambda)) {
    throw Error(ErrorTag::OutOfRange,
                "loxodromic modulus must exceed 1", lambda);
  }
  const cx u = std::polar(1.0, phi);
  return validate_su21(
      Mat3C::diagonal(lambda * u, std::polar(1.0, -2.0 * phi), u / lambda),
      tol);
}

/// Unipotent parabolic normal form at Heisenberg parameter s.
[[nodiscard]] inline Su21Element corpus_unipotent(double s,
                                                  const Tolerances& tol = {}) {
  return validate_su21(tau_form(s), tol);
}

/// Rotational (screw) parabolic normal form.
[[nodiscard]] inline Su21Element corpus_rotational_parabolic(
    double phi, double r, const Tolerances& tol = {}) {
  return validate_su21(screw_form(phi, r), tol);
}

}  // namespace su21
