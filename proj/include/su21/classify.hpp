// Conjugacy classification of group elements and loxodromic eigen-data.
//
// An element's type is decided from its spectrum.  Eigenvalues come from the
// characteristic cubic mu^3 - t mu^2 + conj(t) mu - 1 (t = trace), whose
// coefficients are exact given the trace, so the roots are far more accurate
// than generic eigensolver output.  The decision procedure must be robust to
// the cube-root sensitivity of multiple eigenvalues: a triple eigenvalue
// perturbed by entry noise eta splits by ~eta^{1/3} (a double by ~eta^{1/2}),
// so raw modulus thresholds at eta-scale misclassify conjugated parabolics.
// The procedure therefore clusters the roots with an adaptive radius, then
// refines multiple-eigenvalue patterns with singular-value rank tests on
// g - mu*I, which see the Jordan structure directly and are immune to the
// root splitting.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

#include "su21/complexmat.hpp"
#include "su21/errors.hpp"
#include "su21/form.hpp"

namespace su21 {

// ============================================================================
// ElementClass
// ============================================================================

/// Conjugacy type tags.  Identity covers the three central elements
/// (cube-root-of-unity multiples of I); ParabolicUnipotent covers elements
/// that are unipotent after dividing by the central cube root of unity
/// nearest their triple eigenvalue (both one- and two-step Jordan shapes);
/// EllipticParabolic is the screw-parabolic case (repeated unit eigenvalue,
/// non-diagonalizable, distinct third eigenvalue).
enum class ElementTag {
  Identity,
  Elliptic,
  ParabolicUnipotent,
  EllipticParabolic,
  Loxodromic,
};

[[nodiscard]] inline const char* to_string(ElementTag t) {
  switch (t) {
    case ElementTag::Identity: return "Identity";
    case ElementTag::Elliptic: return "Elliptic";
    case ElementTag::ParabolicUnipotent: return "ParabolicUnipotent";
    case ElementTag::EllipticParabolic: return "EllipticParabolic";
    case ElementTag::Loxodromic: return "Loxodromic";
  }
  return "Unknown";
}

/// Classification result: the tag plus a non-negative margin — the distance
/// of the deciding quantity from the decision boundary (eigenvalue-gap or
/// rank-gap scale depending on the branch).  Elements whose margin is large
/// keep their tag under small perturbations and under conjugation.
struct ElementClass {
  ElementTag tag{};
  double margin = 0.0;
};

namespace detail {

/// Cube roots of unity, exactly representable components where possible.
inline const std::array<cx, 3>& cube_roots_of_unity() {
  static const std::array<cx, 3> roots = {
      cx{1.0, 0.0},
      cx{-0.5, std::sqrt(3.0) / 2.0},
      cx{-0.5, -std::sqrt(3.0) / 2.0},
  };
  return roots;
}

/// Single-linkage clustering of the three eigenvalues at radius tau.
/// Returns cluster sizes as a sorted pattern plus the member indices:
///   pattern 3  -> {3}        (all merged)
///   pattern 21 -> {2,1}      (pair[0..1] merged, single)
///   pattern 111-> {1,1,1}
struct RootClusters {
  int pattern;                 // 3, 21, or 111
  std::array<int, 3> order;    // pattern 21: order[0],order[1] = pair, order[2] = single
  double min_pairwise;         // smallest pairwise root distance
};

[[nodiscard]] inline RootClusters cluster_roots(const std::array<cx, 3>& mu,
                                                double tau) {
  const double d01 = std::abs(mu[0] - mu[1]);
  const double d02 = std::abs(mu[0] - mu[2]);
  const double d12 = std::abs(mu[1] - mu[2]);
  RootClusters rc{};
  rc.min_pairwise = std::min({d01, d02, d12});
  if (rc.min_pairwise > tau) {
    rc.pattern = 111;
    rc.order = {0, 1, 2};
    return rc;
  }
  // Merge the closest pair, then attach the third if it is within tau of
  // either member (single linkage).
  int a = 0, b = 1, c = 2;
  if (d02 <= d01 && d02 <= d12) {
    a = 0; b = 2; c = 1;
  } else if (d12 <= d01 && d12 <= d02) {
    a = 1; b = 2; c = 0;
  }
  const double dc = std::min(std::abs(mu[a] - mu[c]), std::abs(mu[b] - mu[c]));
  rc.pattern = (dc <= tau) ? 3 : 21;
  rc.order = {a, b, c};
  return rc;
}

/// Scale for the singular-value rank tests, tied to the matrix magnitude so
/// the decision is invariant under the trivial rescalings the pipelines use.
[[nodiscard]] inline double rank_gap_floor(const Mat3C& g, double eps_class) {
  return std::max(1e-5, 1000.0 * eps_class) * std::max(1.0, g.max_abs());
}

}  // namespace detail

// ============================================================================
// classify_element
// ============================================================================

/// Classifies a validated element.  Throws BoundaryCase (with the offending
/// distance) when the deciding quantity sits inside the ambiguity band around
/// a threshold — near-identity elements that are not central, moduli drifting
/// off the unit circle, or rank decisions without a clear gap.
[[nodiscard]] inline ElementClass classify_element(const Su21Element& g,
                                                   const Tolerances& tol = {}) {
  const Mat3C& m = g.matrix();
  const double eps = tol.eps_class;

  // ---- central elements -----------------------------------------------
  {
    double best = 1e300;
    for (const cx& w : detail::cube_roots_of_unity()) {
      Mat3C d = m;
      d(0, 0) -= w;
      d(1, 1) -= w;
      d(2, 2) -= w;
      best = std::min(best, d.max_abs());
    }
    if (best < eps) return {ElementTag::Identity, eps - best};
  }

  const cx tr = trace(m);
  const std::array<cx, 3> mu = eigenvalues_from_trace(tr);
  std::array<double, 3> mod{std::abs(mu[0]), std::abs(mu[1]), std::abs(mu[2])};
  const double mmax = *std::max_element(mod.begin(), mod.end());
  const double mmin = *std::min_element(mod.begin(), mod.end());

  // ---- fast path: |tr| > 3 certifies loxodromic ------------------------
  // On the unit-modulus locus |tr| <= 3 always (equality only at the
  // unipotent-type points), so a trace of modulus beyond 3 forces an
  // eigenvalue off the unit circle.
  if (std::abs(tr) > 3.0 + eps) {
    return {ElementTag::Loxodromic, mmax - 1.0 - eps};
  }

  // ---- adaptive clustering ---------------------------------------------
  // A perturbed multiple eigenvalue splays its roots by far more than the
  // perturbation (cube-root law), but the modulus spread mmax - mmin grows
  // at the same rate, so a radius of a few times the spread re-merges those
  // clusters while genuinely separated spectra (gap >= 1e-3) stay apart.
  const double tau =
      std::min(1e-3, std::max(2000.0 * eps, 4.0 * (mmax - mmin)));
  const detail::RootClusters rc = detail::cluster_roots(mu, tau);

  if (rc.pattern == 111) {
    // Three distinct eigenvalues: diagonalizable.  Loxodromic iff the
    // modulus pattern is (lambda, 1, 1/lambda) with lambda > 1.
    if (mmax > 1.0 + eps) {
      std::array<double, 3> sorted_mod = mod;
      std::sort(sorted_mod.begin(), sorted_mod.end());
      const double mid_dev = std::abs(sorted_mod[1] - 1.0);
      const double allowance =
          std::max(10.0 * eps, (mmax - 1.0 / mmax) / 8.0);
      if (mid_dev <= allowance) {
        return {ElementTag::Loxodromic, mmax - 1.0 - eps};
      }
      throw Error(ErrorTag::BoundaryCase,
                  "separated spectrum with middle modulus off the unit circle",
                  mid_dev);
    }
    double dev = 0.0;
    for (double v : mod) dev = std::max(dev, std::abs(v - 1.0));
    if (dev <= eps) {
      return {ElementTag::Elliptic, rc.min_pairwise - tau};
    }
    throw Error(ErrorTag::BoundaryCase,
                "unit-modulus deviation inside the ambiguity band", dev);
  }

  if (rc.pattern == 21) {
    const cx pair_mean = (mu[rc.order[0]] + mu[rc.order[1]]) / 2.0;
    const cx single = mu[rc.order[2]];
    const double d_pair = std::abs(mu[rc.order[0]] - mu[rc.order[1]]);
    const double mod_dev = std::max(std::abs(std::abs(pair_mean) - 1.0),
                                    std::abs(std::abs(single) - 1.0));
    if (mod_dev > eps) {
      throw Error(ErrorTag::BoundaryCase,
                  "repeated-eigenvalue pattern off the unit circle", mod_dev);
    }
    // Jordan test at the repeated eigenvalue.  For a diagonalizable matrix
    // the second singular value of g - mu*I scales with the pair's own
    // splitting; a genuine 2-step Jordan block keeps it at entry scale.
    Mat3C shifted = m;
    shifted(0, 0) -= pair_mean;
    shifted(1, 1) -= pair_mean;
    shifted(2, 2) -= pair_mean;
    const std::array<double, 3> sv = singular_values(shifted);
    const double cut =
        std::max(detail::rank_gap_floor(m, eps), 10.0 * d_pair);
    if (sv[1] < cut) {
      const double sep = std::abs(pair_mean - single);
      return {ElementTag::Elliptic, sep - tau};
    }
    return {ElementTag::EllipticParabolic, sv[1] - cut};
  }

  // ---- single cluster: triple eigenvalue -------------------------------
  // A genuine triple eigenvalue in the group is a cube root of unity
  // (eigenvalue product is 1).  The Jordan shape then separates the
  // unipotent one-step and two-step classes.
  const cx mean = (mu[0] + mu[1] + mu[2]) / 3.0;
  if (std::abs(mean * mean * mean - 1.0) > 100.0 * eps) {
    throw Error(ErrorTag::BoundaryCase,
                "clustered spectrum whose cube is off unity",
                std::abs(mean * mean * mean - 1.0));
  }
  const cx* wbest = &detail::cube_roots_of_unity()[0];
  for (const cx& w : detail::cube_roots_of_unity()) {
    if (std::abs(mean - w) < std::abs(mean - *wbest)) wbest = &w;
  }
  Mat3C shifted = m;
  shifted(0, 0) -= *wbest;
  shifted(1, 1) -= *wbest;
  shifted(2, 2) -= *wbest;
  const std::array<double, 3> sv = singular_values(shifted);
  const double cut = detail::rank_gap_floor(m, eps);
  if (sv[0] < cut) {
    // Within rank scale of a central element yet not within eps of one.
    throw Error(ErrorTag::BoundaryCase,
                "near-central element outside the identity tolerance", sv[0]);
  }
  if (sv[1] < cut) {
    // rank 1: one-step unipotent (vertical-translation type).
    return {ElementTag::ParabolicUnipotent,
            std::min(sv[0] - cut, cut - sv[1])};
  }
  if (sv[2] < cut) {
    // rank 2: two-step unipotent.
    return {ElementTag::ParabolicUnipotent,
            std::min(sv[1] - cut, cut - sv[2])};
  }
  throw Error(ErrorTag::BoundaryCase,
              "clustered spectrum with full-rank shift", sv[2]);
}

// ============================================================================
// LoxodromicData
// ============================================================================

/// Canonical eigen-data of a loxodromic element: eigenvalues
/// lambda*e^{i phi}, e^{-2 i phi}, e^{i phi}/lambda with lambda > 1, and the
/// eigenvector frame as columns (attracting, neutral, repelling) scaled to
/// <c1,c3> = 1, <c2,c2> = 1, det = 1.
struct LoxodromicData {
  double lambda = 1.0;
  double phi = 0.0;
  Mat3C frame;

  [[nodiscard]] std::array<cx, 3> eigenvalues() const {
    const cx e = std::polar(1.0, phi);
    return {lambda * e, std::polar(1.0, -2.0 * phi), e / lambda};
  }
  [[nodiscard]] Mat3C diagonal() const {
    const auto l = eigenvalues();
    return Mat3C::diagonal(l[0], l[1], l[2]);
  }
};

namespace detail {

/// Unit kernel vector of a (numerically) rank-2 matrix: the largest bilinear
/// cross product of a row pair, normalized and phase-canonicalized so its
/// largest-modulus coordinate is real positive.  Returns the cross norm
/// through `quality` for degeneracy detection.
[[nodiscard]] inline Vec3C kernel_vector(const Mat3C& m, double& quality) {
  const std::array<std::pair<int, int>, 3> pairs = {{{0, 1}, {0, 2}, {1, 2}}};
  Vec3C best{};
  double bn = -1.0;
  for (const auto& [i, j] : pairs) {
    const Vec3C v = cross(m.row(static_cast<std::size_t>(i)),
                          m.row(static_cast<std::size_t>(j)));
    const double n = v.norm2();
    if (n > bn) {
      bn = n;
      best = v;
    }
  }
  quality = bn;
  if (bn <= 0.0) return best;
  // Phase canonicalization keeps exact inputs exact (diagonal matrices map
  // to exact basis vectors).
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

/// Extracts the canonical eigen-data of a loxodromic element.  Throws
/// NotLoxodromic when classification disagrees, InconsistentSpectrum when the
/// unit eigenvalue fails to match e^{-2 i phi} (the input was not in the
/// group to sufficient accuracy), FrameDegenerate when eigenvectors are
/// numerically dependent or a frame pairing degenerates.
[[nodiscard]] inline LoxodromicData loxodromic_data(const Su21Element& g,
                                                    const Tolerances& tol = {}) {
  const ElementClass cls = classify_element(g, tol);
  if (cls.tag != ElementTag::Loxodromic) {
    throw Error(ErrorTag::NotLoxodromic,
                std::string("element classified as ") + to_string(cls.tag));
  }
  const Mat3C& m = g.matrix();
  std::array<cx, 3> mu = eigenvalues_from_trace(trace(m));
  // Order by modulus: attracting, neutral, repelling.
  std::sort(mu.begin(), mu.end(),
            [](cx a, cx b) { return std::abs(a) > std::abs(b); });
  const double lambda = std::abs(mu[0]);
  const double phi = std::arg(mu[0]);
  const cx unit_expected = std::polar(1.0, -2.0 * phi);
  if (std::abs(mu[1] - unit_expected) > tol.eps_class) {
    throw Error(ErrorTag::InconsistentSpectrum,
                "unit eigenvalue does not match e^{-2 i phi}",
                std::abs(mu[1] - unit_expected));
  }

  // Eigenvectors from cross products; quality guards near-dependence.
  const double scale = std::max(1.0, m.max_abs());
  std::array<Vec3C, 3> w;
  for (int i = 0; i < 3; ++i) {
    Mat3C shifted = m;
    shifted(0, 0) -= mu[static_cast<std::size_t>(i)];
    shifted(1, 1) -= mu[static_cast<std::size_t>(i)];
    shifted(2, 2) -= mu[static_cast<std::size_t>(i)];
    double quality = 0.0;
    w[static_cast<std::size_t>(i)] = detail::kernel_vector(shifted, quality);
    if (quality < 1e-10 * scale * scale) {
      throw Error(ErrorTag::FrameDegenerate,
                  "eigenvector extraction degenerate (near-multiple spectrum)",
                  quality);
    }
  }

  // Scale to the frame conditions.  The neutral eigenvector is positive for
  // a genuine loxodromic; the attracting/repelling pair is null and pairs to
  // a nonzero value.
  const double n2 = herm_inner(w[1], w[1]).real();
  if (n2 < 1e-10) {
    throw Error(ErrorTag::FrameDegenerate,
                "neutral eigenvector is not positive", n2);
  }
  const Vec3C u2 = w[1] * (1.0 / std::sqrt(n2));
  const cx gamma = herm_inner(w[0], w[2]);
  if (std::abs(gamma) < 1e-10) {
    throw Error(ErrorTag::FrameDegenerate,
                "null eigenvector pairing degenerate", std::abs(gamma));
  }
  const double a = 1.0 / std::sqrt(std::abs(gamma));
  const cx b = 1.0 / (a * std::conj(gamma));
  const Vec3C u1 = w[0] * a;
  const Vec3C u3 = w[2] * b;

  Mat3C frame = Mat3C::from_cols(u1, u2, u3);
  // Unit-modulus determinant fix: columns already satisfy the form-frame
  // conditions, so |det| = 1 up to roundoff and a cube-root phase makes the
  // determinant exactly 1 without disturbing the pairings.
  const cx d = det(frame);
  if (std::abs(d) < 0.5) {
    throw Error(ErrorTag::FrameDegenerate, "frame determinant collapsed",
                std::abs(d));
  }
  const double ang = std::arg(d);
  if (ang != 0.0) frame = frame * std::polar(1.0, -ang / 3.0);

  LoxodromicData data;
  data.lambda = lambda;
  data.phi = phi;
  data.frame = frame;
  return data;
}

/// SU(2,1) conjugator S with S g S^{-1} = diag(lambda1, lambda2, lambda3):
/// the inverse of the eigenvector frame.  Throws FrameDegenerate when the
/// frame fails group membership or the conjugated matrix is not diagonal
/// within 10 * eps_form at the frame's conditioning scale.
[[nodiscard]] inline Su21Element diagonalizing_conjugator(
    const Su21Element& g, const LoxodromicData& d, const Tolerances& tol = {}) {
  const Mat3C& frame = d.frame;
  const double frame_residual = membership_residual(frame);
  if (frame_residual > 10.0 * tol.eps_form) {
    throw Error(ErrorTag::FrameDegenerate,
                "eigenvector frame fails group membership", frame_residual);
  }
  const Mat3C s = anti_transpose_inverse(frame);
  const Mat3C conjugated = s * g.matrix() * frame;
  Mat3C offdiag = conjugated;
  offdiag(0, 0) = offdiag(1, 1) = offdiag(2, 2) = 0.0;
  // The off-diagonal residual scales with the frame conditioning, so allow
  // that factor before declaring degeneracy.
  const double cond_scale = std::max(1.0, frame.max_abs() * s.max_abs());
  if (offdiag.max_abs() > 10.0 * tol.eps_form * cond_scale * d.lambda) {
    throw Error(ErrorTag::FrameDegenerate,
                "conjugated matrix is not diagonal at tolerance",
                offdiag.max_abs());
  }
  return Su21Element::unchecked(s);
}

}  // namespace su21
