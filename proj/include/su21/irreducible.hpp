// Irreducibility: a subgroup is irreducible exactly when it has no invariant
// complex line.  Invariant 2-planes reduce to the same test because the
// group preserves the form: a plane W is invariant iff its polar line
// W-perp is, so a complete common-eigenvector search already covers both.
// The dual pass below nevertheless runs the search a second time on the
// dual action (g acting on covectors by (g^{-1})^T = J conj(g) J) and
// reports invariant planes through their polar points, as an independent
// numerical witness.

#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "su21/classify.hpp"
#include "su21/complexmat.hpp"
#include "su21/errors.hpp"
#include "su21/form.hpp"
#include "su21/words.hpp"

namespace su21 {

struct IrreducibilityReport {
  enum class WitnessType { Isotropic, Positive, Negative };

  bool irreducible = true;
  std::optional<Vec3C> witness;            // common eigenvector, unit norm
  std::optional<WitnessType> witness_type;
  std::optional<Vec3C> dual_witness;       // polar point of invariant plane
  std::optional<WitnessType> dual_witness_type;
};

[[nodiscard]] inline const char* to_string(IrreducibilityReport::WitnessType t) {
  switch (t) {
    case IrreducibilityReport::WitnessType::Isotropic: return "isotropic";
    case IrreducibilityReport::WitnessType::Positive: return "positive";
    default: return "negative";
  }
}

namespace detail {

/// Sign classification of a unit vector under the form.
[[nodiscard]] inline IrreducibilityReport::WitnessType witness_type_of(
    const Vec3C& v) {
  const double q = herm_inner(v, v).real();
  if (std::abs(q) < 1e-6) return IrreducibilityReport::WitnessType::Isotropic;
  return q > 0.0 ? IrreducibilityReport::WitnessType::Positive
                 : IrreducibilityReport::WitnessType::Negative;
}

/// Distinct eigenvalues of a group element, largest modulus first (ties by
/// descending real then imaginary part), merged within a fixed cluster
/// width so repeated eigenvalues yield one representative.
[[nodiscard]] inline std::vector<cx> distinct_eigenvalues(const Mat3C& m) {
  std::array<cx, 3> mu = eigenvalues_from_trace(trace(m));
  std::sort(mu.begin(), mu.end(), [](cx a, cx b) {
    const double ma = std::abs(a), mb = std::abs(b);
    if (std::abs(ma - mb) > 1e-12) return ma > mb;
    if (std::abs(a.real() - b.real()) > 1e-12) return a.real() > b.real();
    return a.imag() > b.imag();
  });
  std::vector<cx> out;
  for (const cx& z : mu) {
    bool merged = false;
    for (cx& rep : out) {
      if (std::abs(rep - z) < 1e-6) {
        merged = true;
        break;
      }
    }
    if (!merged) out.push_back(z);
  }
  return out;
}

/// Approximate kernel dimension of a shifted matrix and one kernel vector.
struct EigenSpace {
  cx eigenvalue;
  std::size_t dim = 0;
  Vec3C vector{};  // one unit kernel vector (valid when dim >= 1)
};

/// Kernel vector of a (near) rank-1 matrix: the bilinear cross of the
/// dominant row with the best coordinate vector lies in the kernel, since
/// all rows are proportional and the cross annihilates its first argument.
[[nodiscard]] inline Vec3C rank1_kernel_vector(const Mat3C& m,
                                               double& quality) {
  Vec3C r{};
  double rn = -1.0;
  for (std::size_t i = 0; i < 3; ++i) {
    const Vec3C row = m.row(i);
    if (row.norm2() > rn) {
      rn = row.norm2();
      r = row;
    }
  }
  const Vec3C e1{1.0, 0.0, 0.0}, e2{0.0, 1.0, 0.0}, e3{0.0, 0.0, 1.0};
  Vec3C best{};
  quality = -1.0;
  for (const Vec3C& e : {e1, e2, e3}) {
    const Vec3C c = cross(r, e);
    const double n = c.norm2();
    if (n > quality) {
      quality = n;
      best = c;
    }
  }
  if (best.norm2() > 0.0) best = best * (1.0 / best.norm2());
  return best;
}

[[nodiscard]] inline std::vector<EigenSpace> eigen_spaces(const Mat3C& m,
                                                          double eps_class) {
  std::vector<EigenSpace> spaces;
  const double cut = rank_gap_floor(m, eps_class);
  for (const cx& mu : distinct_eigenvalues(m)) {
    Mat3C shifted = m;
    shifted(0, 0) -= mu;
    shifted(1, 1) -= mu;
    shifted(2, 2) -= mu;
    const std::array<double, 3> sv = singular_values(shifted);
    EigenSpace es;
    es.eigenvalue = mu;
    if (sv[2] < cut) es.dim = 1;
    if (sv[1] < cut) es.dim = 2;
    if (sv[0] < cut) es.dim = 3;
    double quality = 0.0;
    if (es.dim == 1) {
      es.vector = kernel_vector(shifted, quality);
      if (quality < 1e-12) es.dim = 0;  // numerically unusable direction
    } else if (es.dim == 2) {
      es.vector = rank1_kernel_vector(shifted, quality);
      if (quality < 1e-12) es.dim = 0;
    }
    if (es.dim >= 1) spaces.push_back(es);
  }
  return spaces;
}

/// One unit vector in ker(A1) cap ker(A2), via the smallest eigenvector of
/// A1* A1 + A2* A2; empty when the smallest eigenvalue is not separated.
[[nodiscard]] inline std::optional<Vec3C> kernel_intersection(
    const Mat3C& a1, const Mat3C& a2) {
  const Mat3C m = adjoint(a1) * a1 + adjoint(a2) * a2;
  const std::array<double, 3> ev = hermitian_eigenvalues(m);  // ascending
  const double scale = std::max(1.0, m.max_abs());
  if (ev[0] > 1e-10 * scale) return std::nullopt;  // empty intersection
  Mat3C shifted = m;
  shifted(0, 0) -= ev[0];
  shifted(1, 1) -= ev[0];
  shifted(2, 2) -= ev[0];
  double quality = 0.0;
  const Vec3C v = kernel_vector(shifted, quality);
  if (quality < 1e-12 * scale * scale) return std::nullopt;
  return v;
}

/// Complete common-eigenline search over a list of matrices.  Candidates:
/// every 1- or 2-dimensional eigenspace's kernel vector, plus pairwise
/// intersections of multi-dimensional eigenspaces.  A candidate passes when
/// every matrix maps it to a scalar multiple of itself (relative rejection
/// below the threshold).
[[nodiscard]] inline std::optional<Vec3C> common_eigenline(
    const std::vector<Mat3C>& mats, double eps_class) {
  constexpr double kRejectTol = 1e-7;
  std::vector<std::pair<Mat3C, EigenSpace>> shifted_spaces;
  std::vector<Vec3C> candidates;
  for (const Mat3C& m : mats) {
    for (const EigenSpace& es : eigen_spaces(m, eps_class)) {
      if (es.dim == 3) continue;  // central: constrains nothing
      candidates.push_back(es.vector);
      if (es.dim == 2) {
        Mat3C sh = m;
        sh(0, 0) -= es.eigenvalue;
        sh(1, 1) -= es.eigenvalue;
        sh(2, 2) -= es.eigenvalue;
        shifted_spaces.emplace_back(sh, es);
      }
    }
  }
  // Pairwise intersections of 2-dimensional eigenspaces (needed when no
  // single matrix pins the common line on its own).
  for (std::size_t i = 0; i < shifted_spaces.size(); ++i) {
    for (std::size_t j = i + 1; j < shifted_spaces.size(); ++j) {
      if (const auto v = kernel_intersection(shifted_spaces[i].first,
                                             shifted_spaces[j].first)) {
        candidates.push_back(*v);
      }
    }
  }
  for (const Vec3C& cand : candidates) {
    const double n2 = cand.norm2();
    if (n2 < 1e-12) continue;
    const Vec3C v = cand * (1.0 / n2);
    bool ok = true;
    for (const Mat3C& m : mats) {
      const Vec3C gv = m * v;
      const double gn = gv.norm2();
      if (gn < 1e-14) {
        ok = false;  // group elements are invertible; this is noise
        break;
      }
      const cx coef = dot_std(gv, v);  // v has unit norm
      const Vec3C rej = gv - v * coef;
      if (rej.norm2() > kRejectTol * gn) {
        ok = false;
        break;
      }
    }
    if (ok) return v;
  }
  return std::nullopt;
}

}  // namespace detail

/// Decides irreducibility of the group generated by the spec's generators
/// and reports witnesses: a common eigenvector (invariant line) and/or the
/// polar point of an invariant plane found through the dual action.
[[nodiscard]] inline IrreducibilityReport irreducibility(
    const GroupSpec& spec, const Tolerances& tol = {}) {
  std::vector<Mat3C> primal;
  std::vector<Mat3C> dual;
  const Mat3C j = form_matrix();
  for (const Su21Element& g : spec.generators) {
    primal.push_back(g.matrix());
    dual.push_back(j * conj(g.matrix()) * j);  // covector action (g^{-1})^T
  }

  IrreducibilityReport report;
  if (const auto v = detail::common_eigenline(primal, tol.eps_class)) {
    report.witness = *v;
    report.witness_type = detail::witness_type_of(*v);
    report.irreducible = false;
  }
  if (const auto phi = detail::common_eigenline(dual, tol.eps_class)) {
    // phi is the covector; the invariant plane is its kernel and the polar
    // point is p = J conj(phi).
    Vec3C p = Vec3C{std::conj((*phi)[2]), std::conj((*phi)[1]),
                    std::conj((*phi)[0])};
    p = p * (1.0 / p.norm2());
    report.dual_witness = p;
    report.dual_witness_type = detail::witness_type_of(p);
    report.irreducible = false;
  }
  return report;
}

}  // namespace su21
