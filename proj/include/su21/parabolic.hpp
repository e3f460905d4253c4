// Parabolic normal forms and their closed-form powers.
//
// Every parabolic element fixes exactly one boundary point, i.e. one
// isotropic line.  Conjugating that line to the e1-axis makes the element
// upper triangular (an element fixing the e1-line has first column (mu,0,0)
// and the form's column pairings kill the (3,2) entry), with diagonal
// (e^{i phi}, e^{-2 i phi}, e^{i phi}).  The row conditions then force one of
// two shapes:
//
//   b12 = 0 (one-step Jordan):   [[e^{i phi}, 0, r i e^{i phi}],
//                                 [0, e^{-2 i phi}, 0],
//                                 [0, 0, e^{i phi}]]      (screw / rotational)
//
//   b12 != 0 (two-step Jordan, unipotent after the central lift), scaled by
//   the one-parameter diagonal X to b12 = 1:
//                                [[1, 1, tau],
//                                 [0, 1, -1],
//                                 [0, 0, 1]],  tau = -1/2 + s i
//
// because <v1,v2> = 0 forces b23 = -conj(b12) and <v1,v1> = 0 forces
// Re(b13) = -|b12|^2 / 2.  The parameter s is *not* a conjugacy invariant:
// conjugating by the unipotent stabilizer [[1,u,w],[0,1,-conj(u)],[0,0,1]]
// shifts tau by conj(u) - u, i.e. s by -2 Im(u), while preserving the exact
// normal-form shape.  The value reported is the one read off in the frame
// this routine constructs (deterministic, and the identity frame whenever the
// input already is a normal form).

#pragma once

#include <array>
#include <cmath>
#include <complex>

#include "su21/classify.hpp"
#include "su21/complexmat.hpp"
#include "su21/errors.hpp"
#include "su21/form.hpp"

namespace su21 {

// ============================================================================
// Normal-form builders and closed-form powers
// ============================================================================

/// Screw-parabolic (rotational) normal form.  r = 0 degenerates to an
/// elliptic diagonal; phi = 0 is the one-step unipotent vertical translation.
[[nodiscard]] inline Mat3C screw_form(double phi, double r) {
  const cx e = std::polar(1.0, phi);
  Mat3C m;
  m(0, 0) = e;
  m(0, 2) = cx{0.0, r} * e;
  m(1, 1) = std::polar(1.0, -2.0 * phi);
  m(2, 2) = e;
  return m;
}

/// n-th power of the screw form: phases add, the translation part is linear
/// in n because the (1,3) corner accumulates along a fixed eigen-direction.
[[nodiscard]] inline Mat3C screw_power(double phi, double r, long n) {
  const double nd = static_cast<double>(n);
  const cx e = std::polar(1.0, nd * phi);
  Mat3C m;
  m(0, 0) = e;
  m(0, 2) = cx{0.0, nd * r} * e;
  m(1, 1) = std::polar(1.0, -2.0 * nd * phi);
  m(2, 2) = e;
  return m;
}

/// Two-step unipotent normal form with tau = -1/2 + s i.
[[nodiscard]] inline Mat3C tau_form(double s) {
  Mat3C m = Mat3C::identity();
  m(0, 1) = 1.0;
  m(0, 2) = cx{-0.5, s};
  m(1, 2) = -1.0;
  return m;
}

/// n-th power of the tau form: [[1, n, n tau + f(n)], [0, 1, -n], [0, 0, 1]]
/// with f(n) = (1-n) n / 2, by induction on the band structure.
[[nodiscard]] inline Mat3C tau_power(double s, long n) {
  const double nd = static_cast<double>(n);
  const double f = (1.0 - nd) * nd / 2.0;
  Mat3C m = Mat3C::identity();
  m(0, 1) = nd;
  m(0, 2) = cx{-0.5, s} * nd + f;
  m(1, 2) = -nd;
  return m;
}

// ============================================================================
// ParabolicForm
// ============================================================================

/// Result of the parabolic reduction.  `conjugator` maps the (lift-adjusted)
/// input to the exact normal form: conjugator * (conj(omega_k) g) *
/// conjugator^{-1} = normal_form() within the reported residual, where
/// omega_k is the cube root of unity with index `lift_index` (always 0 for
/// the rotational branch).
struct ParabolicForm {
  enum class Kind { EllipticRotational, UnipotentTau };

  Kind kind{};
  double phi = 0.0;  // rotational branch: rotation angle
  double r = 0.0;    // rotational branch: translation parameter (signed)
  double s = 0.0;    // unipotent branch: Im(tau)
  Su21Element conjugator;
  int lift_index = 0;
  double residual = 0.0;

  [[nodiscard]] Mat3C normal_form() const {
    return kind == Kind::EllipticRotational ? screw_form(phi, r) : tau_form(s);
  }
};

[[nodiscard]] inline const char* to_string(ParabolicForm::Kind k) {
  return k == ParabolicForm::Kind::EllipticRotational ? "EllipticRotational"
                                                      : "UnipotentTau";
}

namespace detail {

/// Deterministic completion of an isotropic line to an SU(2,1) frame
/// T = [v1 | u2 | u3] with <v1,v1> = <u3,u3> = 0, <v1,u3> = 1, <u2,u2> = 1,
/// <v1,u2> = <u2,u3> = 0 and det T = 1.  Exact (T = I) when v1 = e1.
[[nodiscard]] inline Mat3C complete_isotropic_frame(const Vec3C& v1) {
  const Vec3C e1{1.0, 0.0, 0.0}, e2{0.0, 1.0, 0.0}, e3{0.0, 0.0, 1.0};

  // Third column: w + beta v1 is isotropic for beta = -<w,w> / (2 conj(c)),
  // c = <w,v1> (the cross terms cancel against the real <w,w>), and dividing
  // by c sets <v1,u3> = 1.  The candidate pairings are the conjugated
  // coordinates of v1, so the best exceeds its max-norm.
  const std::array<Vec3C, 3> u3_candidates = {e3, e1, e2};
  Vec3C u3{};
  bool have_u3 = false;
  for (const Vec3C& w : u3_candidates) {
    const cx c = herm_inner(w, v1);
    if (std::abs(c) < 1e-6) continue;
    const double ww = herm_inner(w, w).real();
    const cx beta = (ww == 0.0) ? cx{} : cx{-ww} / (2.0 * std::conj(c));
    u3 = (w + v1 * beta) * (1.0 / c);
    have_u3 = true;
    break;
  }
  if (!have_u3) {
    throw Error(ErrorTag::FrameDegenerate,
                "isotropic frame completion: no usable pairing vector");
  }

  // Middle column: project out the null pair, normalize by the (positive)
  // self-pairing.
  const std::array<Vec3C, 3> u2_candidates = {e2, e1, e3};
  Vec3C u2{};
  bool have_u2 = false;
  for (const Vec3C& t : u2_candidates) {
    const Vec3C p = t - v1 * herm_inner(t, u3) - u3 * herm_inner(t, v1);
    const double n2 = herm_inner(p, p).real();
    if (n2 < 1e-2) continue;
    u2 = p * (1.0 / std::sqrt(n2));
    have_u2 = true;
    break;
  }
  if (!have_u2) {
    throw Error(ErrorTag::FrameDegenerate,
                "isotropic frame completion: positive direction degenerate");
  }

  Mat3C t = Mat3C::from_cols(v1, u2, u3);
  const cx d = det(t);
  if (std::abs(d) < 0.5) {
    throw Error(ErrorTag::FrameDegenerate,
                "isotropic frame determinant collapsed", std::abs(d));
  }
  const double ang = std::arg(d);
  if (ang != 0.0) t = t * std::polar(1.0, -ang / 3.0);
  return t;
}

/// Largest column of m, unit-normalized with the dominant coordinate made
/// real positive (exact for exact inputs).
[[nodiscard]] inline Vec3C dominant_column(const Mat3C& m, double& quality) {
  Vec3C best{};
  double bn = -1.0;
  for (std::size_t j = 0; j < 3; ++j) {
    const Vec3C c = m.col(j);
    const double n = c.norm2();
    if (n > bn) {
      bn = n;
      best = c;
    }
  }
  quality = bn;
  if (bn <= 0.0) return best;
  std::size_t k = 0;
  double ka = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    if (std::abs(best[i]) > ka) {
      ka = std::abs(best[i]);
      k = i;
    }
  }
  best = best * (std::conj(best[k]) / ka);
  return best * (1.0 / best.norm2());
}

}  // namespace detail

// ============================================================================
// parabolic_normal_form
// ============================================================================

/// Reduces a parabolic element to its normal form.  Throws NotParabolic when
/// classification disagrees, FrameDegenerate when the fixed-line frame or the
/// resulting shape fails its residual gate.
[[nodiscard]] inline ParabolicForm parabolic_normal_form(
    const Su21Element& g, const Tolerances& tol = {}) {
  const ElementClass cls = classify_element(g, tol);
  if (cls.tag != ElementTag::ParabolicUnipotent &&
      cls.tag != ElementTag::EllipticParabolic) {
    throw Error(ErrorTag::NotParabolic,
                std::string("element classified as ") + to_string(cls.tag));
  }
  const Mat3C& m = g.matrix();
  const double scale = std::max(1.0, m.max_abs());

  // Repeated eigenvalue and Jordan shape (same decisions as classification).
  const std::array<cx, 3> mu = eigenvalues_from_trace(trace(m));
  cx rep;           // repeated eigenvalue
  int lift_index = 0;
  bool two_step = false;  // b12 != 0 branch
  if (cls.tag == ElementTag::EllipticParabolic) {
    const double d01 = std::abs(mu[0] - mu[1]);
    const double d02 = std::abs(mu[0] - mu[2]);
    const double d12 = std::abs(mu[1] - mu[2]);
    cx pair_mean;
    if (d01 <= d02 && d01 <= d12) pair_mean = (mu[0] + mu[1]) / 2.0;
    else if (d02 <= d12) pair_mean = (mu[0] + mu[2]) / 2.0;
    else pair_mean = (mu[1] + mu[2]) / 2.0;
    rep = pair_mean / std::abs(pair_mean);
  } else {
    // Triple eigenvalue: the nearest cube root of unity.  The Jordan shape
    // comes from the rank of g - omega I.
    const cx mean = (mu[0] + mu[1] + mu[2]) / 3.0;
    const auto& omegas = detail::cube_roots_of_unity();
    for (int k = 1; k < 3; ++k) {
      if (std::abs(mean - omegas[static_cast<std::size_t>(k)]) <
          std::abs(mean - omegas[static_cast<std::size_t>(lift_index)])) {
        lift_index = k;
      }
    }
    rep = omegas[static_cast<std::size_t>(lift_index)];
    Mat3C shifted = m;
    shifted(0, 0) -= rep;
    shifted(1, 1) -= rep;
    shifted(2, 2) -= rep;
    // Jordan step size from the exact square: (g - omega I)^2 vanishes
    // identically for a one-step block, whereas Gram-based singular values
    // near a double zero carry sqrt-of-eps noise at the floor scale and
    // would misroute vertical translations into the two-step branch.
    const double sq_norm = (shifted * shifted).max_abs();
    two_step = sq_norm >= detail::rank_gap_floor(m, tol.eps_class) *
                              std::max(1.0, m.max_abs());
  }

  // Fixed isotropic line.
  Mat3C shifted = m;
  shifted(0, 0) -= rep;
  shifted(1, 1) -= rep;
  shifted(2, 2) -= rep;
  Vec3C v1;
  double quality = 0.0;
  if (cls.tag == ElementTag::EllipticParabolic) {
    // One-dimensional kernel of g - rep*I.
    v1 = detail::kernel_vector(shifted, quality);
  } else if (two_step) {
    // Image of (g - rep I)^2 is the fixed line for a two-step block.
    v1 = detail::dominant_column(shifted * shifted, quality);
  } else {
    // Image of (g - rep I) is the fixed line for a one-step block.
    v1 = detail::dominant_column(shifted, quality);  // quality ~ entry scale
  }
  if (quality < 1e-9 * scale * scale) {
    throw Error(ErrorTag::FrameDegenerate,
                "fixed-line extraction degenerate", quality);
  }
  const double iso = std::abs(herm_inner(v1, v1));
  if (iso > 1e-6) {
    throw Error(ErrorTag::FrameDegenerate,
                "fixed line is not isotropic at tolerance", iso);
  }

  // Triangularize.
  const Mat3C frame = detail::complete_isotropic_frame(v1);
  const Mat3C s_mat = anti_transpose_inverse(frame);
  const cx lift = std::conj(rep);  // scalar bringing the eigenvalue to 1
  const Mat3C b =
      (cls.tag == ElementTag::EllipticParabolic)
          ? s_mat * m * frame
          : (s_mat * m * frame) * lift;
  const double cond_scale =
      std::max(1.0, frame.max_abs() * s_mat.max_abs()) * scale;
  const double lower = std::max(
      {std::abs(b(1, 0)), std::abs(b(2, 0)), std::abs(b(2, 1))});
  if (lower > 1e3 * tol.eps_class * cond_scale) {
    throw Error(ErrorTag::FrameDegenerate,
                "triangularization left a lower-triangular residue", lower);
  }

  ParabolicForm out;
  out.lift_index = (cls.tag == ElementTag::EllipticParabolic) ? 0 : lift_index;

  if (!two_step) {
    // Rotational branch: read phi from the corner diagonal, r from the
    // rotated (1,3) entry.  For the lift-normalized unipotent case the
    // diagonal is 1 and phi comes out (near) zero.
    out.kind = ParabolicForm::Kind::EllipticRotational;
    out.phi = std::arg(b(0, 0));
    Mat3C bc = b;
    Mat3C left = s_mat;
    if (cls.tag == ElementTag::EllipticParabolic) {
      // The frame pinned only the fixed line, so a (1,2) entry survives.
      // Conjugating by the unipotent stabilizer N(a) = [[1, a, -|a|^2/2],
      // [0, 1, -conj a], [0, 0, 1]] of that line adds a*(e^{-2i phi} -
      // e^{i phi}) to the (1,2) entry exactly; solve for the a that kills it.
      // (In the triple-eigenvalue case the multiplier vanishes, but there the
      // form conditions already force the entry to zero.)
      const cx den = std::polar(1.0, -2.0 * out.phi) - std::polar(1.0, out.phi);
      if (std::abs(den) < 1e3 * tol.eps_class) {
        throw Error(ErrorTag::FrameDegenerate,
                    "eigenvalue separation too small to clear the shear",
                    std::abs(den));
      }
      const cx a = -b(0, 1) / den;
      Mat3C n = Mat3C::identity();
      n(0, 1) = a;
      n(0, 2) = cx{-0.5 * std::norm(a), 0.0};
      n(1, 2) = -std::conj(a);
      bc = n * b * anti_transpose_inverse(n);
      left = n * s_mat;
    }
    const cx corner = bc(0, 2) * std::polar(1.0, -out.phi);
    out.r = corner.imag();
    out.conjugator = Su21Element::unchecked(left);
    out.residual = max_abs_diff(bc, screw_form(out.phi, out.r));
  } else {
    // Unipotent two-step branch: scale b12 to exactly 1 with the diagonal
    // X = diag(r e^{i a}, e^{-2 i a}, e^{i a}/r), whose (1,2) conjugation
    // multiplier is r e^{3 i a}; r = 1/|b12| and 3a = -arg(b12) with the
    // principal a in (-pi/3, pi/3].  The remaining entries then satisfy
    // b23 = -1 and Re(b13) = -1/2 automatically.
    const cx b12 = b(0, 1);
    if (std::abs(b12) < 1e3 * tol.eps_class * cond_scale) {
      throw Error(ErrorTag::FrameDegenerate,
                  "two-step block with vanishing superdiagonal",
                  std::abs(b12));
    }
    const double r = 1.0 / std::abs(b12);
    double a = -std::arg(b12) / 3.0;
    if (a <= -kPi / 3.0) a += 2.0 * kPi / 3.0;
    if (a > kPi / 3.0) a -= 2.0 * kPi / 3.0;
    const Mat3C x = Mat3C::diagonal(r * std::polar(1.0, a),
                                    std::polar(1.0, -2.0 * a),
                                    std::polar(1.0, a) / r);
    const Mat3C bt = x * b * anti_transpose_inverse(x);
    out.kind = ParabolicForm::Kind::UnipotentTau;
    out.s = bt(0, 2).imag();
    out.conjugator = Su21Element::unchecked(x * s_mat);
    out.residual = max_abs_diff(bt, tau_form(out.s));
  }

  if (out.residual > 1e3 * tol.eps_class * cond_scale) {
    throw Error(ErrorTag::FrameDegenerate,
                "normal-form residual exceeded its gate", out.residual);
  }
  return out;
}

}  // namespace su21
