// Two-conjugation normal form for a pair (A loxodromic, B), and the
// certificate type shared by all conjugation pipelines.
//
// Step 1 diagonalizes A.  Step 2 applies the remaining diagonal freedom
// X = diag(r e^{i a}, e^{-2 i a}, r^{-1} e^{i a}) — the stabilizer of
// diag(A) — to scale one off-diagonal entry of B to exactly 1: entry (1,2)
// when it is nonzero, entry (3,2) otherwise.  If both vanish, A and B share
// the invariant structure spanned by coordinate lines and the pair is
// reducible.  Afterwards every entry of the transformed B is recomputed
// from trace data alone (the entry ledgers plus the form's orthogonality
// relations between rows), which is what makes the normal form a statement
// about the trace field: each entry is a rational expression in traces and
// lambda.  The certificate's residual is the maximum mismatch between the
// trace-reconstructed entries and the actually transformed matrix.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <vector>

#include "su21/classify.hpp"
#include "su21/complexmat.hpp"
#include "su21/errors.hpp"
#include "su21/form.hpp"
#include "su21/ledger.hpp"
#include "su21/words.hpp"

namespace su21 {

/// Outcome of a conjugation pipeline.  `conjugator` maps the original
/// generators to `transformed_generators` (within eps_form); `residual` is
/// the kind-specific quality measure: the maximum trace-reconstruction
/// mismatch (FieldRealization) or the maximum imaginary part (RealForm).
struct Certificate {
  enum class Kind { FieldRealization, RealForm };

  Kind kind = Kind::FieldRealization;
  Su21Element conjugator;
  std::vector<Mat3C> transformed_generators;
  double residual = 0.0;
  std::optional<std::vector<Word>> basis_words;
};

[[nodiscard]] inline const char* to_string(Certificate::Kind k) {
  return k == Certificate::Kind::FieldRealization ? "FieldRealization"
                                                  : "RealForm";
}

namespace detail {

/// The diagonal stabilizer element X with X * b * X^{-1} having entry 1 at
/// (1,2) (branch12 = true) or (3,2) (false).  The conjugation multiplier of
/// entry (1,2) is r e^{3ia} and of (3,2) is r^{-1} e^{3ia}; r > 0 and the
/// principal a in (-pi/3, pi/3] solve multiplier * entry = 1 uniquely.
[[nodiscard]] inline Mat3C branch_scaling(cx entry, bool branch12) {
  const double r = branch12 ? 1.0 / std::abs(entry) : std::abs(entry);
  double a = -std::arg(entry) / 3.0;
  if (a <= -kPi / 3.0) a += 2.0 * kPi / 3.0;
  if (a > kPi / 3.0) a -= 2.0 * kPi / 3.0;
  return Mat3C::diagonal(r * std::polar(1.0, a), std::polar(1.0, -2.0 * a),
                         std::polar(1.0, a) / r);
}

/// Entry-wise reconstruction of the normalized B from its ledger, following
/// the case analysis on vanishing entries.  `branch12` tells which entry was
/// scaled to 1; that exact unit entry makes one column-orthogonality
/// relation division-free.  Throws Reducible when the vanishing pattern
/// implies a common invariant line/plane with the diagonal A, IllConditioned
/// when a division has no usable pivot (impossible for exact group
/// elements — the form conditions rule those patterns out).
[[nodiscard]] inline Mat3C reconstruct_from_ledger(const EntryLedger& led,
                                                   bool branch12,
                                                   double theta) {
  Mat3C b;
  b(0, 0) = led.b11;
  b(1, 1) = led.b22;
  b(2, 2) = led.b33;

  const auto need = [&](cx denom, const char* what) {
    if (std::abs(denom) <= theta) {
      throw Error(ErrorTag::IllConditioned,
                  std::string("entry reconstruction pivot vanished: ") + what,
                  std::abs(denom));
    }
    return denom;
  };

  if (branch12) {
    b(0, 1) = 1.0;                       // scaled to 1 by construction
    b(1, 0) = led.p12_21;                // b21 = (b12 b21) / b12
    b(2, 1) = std::conj(led.m12_32c);    // b32 = conj(b12 conj b32)
    // b23: the mixed product over b21, the opposite product over b32; when
    // both lower neighbors vanish, <v1,v2> = 0 with b21 ~ 0 gives
    // b23 = conj(-conj(b22)/b11).
    if (std::abs(b(1, 0)) > theta) {
      b(1, 2) = led.m23_21c / std::conj(b(1, 0));
    } else if (std::abs(b(2, 1)) > theta) {
      b(1, 2) = led.p23_32 / b(2, 1);
    } else {
      b(1, 2) = std::conj(-std::conj(b(1, 1)) / need(b(0, 0), "b11"));
    }
    // b31: the column relation <c1,c2> = b11 conj(b32) + b21 conj(b22)
    // + b31 conj(b12) = 0 is division-free since b12 = 1.
    b(2, 0) = -(b(0, 0) * std::conj(b(2, 1)) + b(1, 0) * std::conj(b(1, 1)));
    // b13: row relation <v1,v2> over b21, mixed product over b31, column
    // relation <c2,c3> over b32; all three gone means the first column is
    // (b11,0,0) and B is upper triangular: invariant e1-line.
    if (std::abs(b(1, 0)) > theta) {
      b(0, 2) = -(b(0, 0) * std::conj(b(1, 2)) + std::conj(b(1, 1))) /
                std::conj(b(1, 0));
    } else if (std::abs(b(2, 0)) > theta) {
      b(0, 2) = led.m13_31c / std::conj(b(2, 0));
    } else if (std::abs(b(2, 1)) > theta) {
      // <c2,c3> = b12 conj(b33) + b22 conj(b23) + b32 conj(b13) = 0
      b(0, 2) = std::conj(
          -(std::conj(b(2, 2)) + b(1, 1) * std::conj(b(1, 2))) / b(2, 1));
    } else {
      throw Error(ErrorTag::Reducible,
                  "vanishing lower entries: common invariant line");
    }
  } else {
    b(2, 1) = 1.0;                       // scaled to 1 by construction
    b(1, 2) = led.p23_32;                // b23 = (b23 b32) / b32
    b(0, 1) = led.m12_32c;               // b12 = (b12 conj b32) / conj(b32)
    // b21: mixed product over b23, opposite product over b12, else
    // <v2,v3> = b21 conj(b33) + b22 conj(b32) + b23 conj(b31) = 0 with
    // b23 ~ 0 and b32 = 1 gives b21 = -b22 / conj(b33).
    if (std::abs(b(1, 2)) > theta) {
      b(1, 0) = std::conj(led.m23_21c / b(1, 2));
    } else if (std::abs(b(0, 1)) > theta) {
      b(1, 0) = led.p12_21 / b(0, 1);
    } else {
      b(1, 0) = -b(1, 1) / std::conj(need(b(2, 2), "b33"));
    }
    // b13: the column relation <c2,c3> = b12 conj(b33) + b22 conj(b23)
    // + b32 conj(b13) = 0 is division-free since b32 = 1.
    b(0, 2) = std::conj(
        -(b(0, 1) * std::conj(b(2, 2)) + b(1, 1) * std::conj(b(1, 2))));
    // b31: opposite product over b13, row relation <v2,v3> over b23, column
    // relation <c1,c2> over b12; all three gone means row 1 is (b11,0,0):
    // invariant plane spanned by e2, e3.
    if (std::abs(b(0, 2)) > theta) {
      b(2, 0) = led.p13_31 / b(0, 2);
    } else if (std::abs(b(1, 2)) > theta) {
      b(2, 0) = std::conj(
          -(b(1, 0) * std::conj(b(2, 2)) + b(1, 1)) / b(1, 2));
    } else if (std::abs(b(0, 1)) > theta) {
      // <c1,c2> = b11 conj(b32) + b21 conj(b22) + b31 conj(b12) = 0
      b(2, 0) = -(b(0, 0) + b(1, 0) * std::conj(b(1, 1))) / std::conj(b(0, 1));
    } else {
      throw Error(ErrorTag::Reducible,
                  "vanishing entries: common invariant plane");
    }
  }
  return b;
}

}  // namespace detail

/// Normalizes the pair (A, B): conjugates A to its exact diagonal, scales
/// one entry of B to 1 with the residual diagonal freedom, and certifies by
/// reconstructing the transformed B from trace data alone.
[[nodiscard]] inline Certificate normalize_pair(const Su21Element& a,
                                                const Su21Element& b,
                                                const Tolerances& tol = {}) {
  const ElementClass cls = classify_element(a, tol);
  if (cls.tag != ElementTag::Loxodromic) {
    throw Error(ErrorTag::NotLoxodromic,
                std::string("pair normalization requires a loxodromic first "
                            "element, got ") +
                    to_string(cls.tag));
  }
  const LoxodromicData ld = loxodromic_data(a, tol);
  if (ld.lambda < 1.0 + 10.0 * tol.eps_class) {
    throw Error(ErrorTag::IllConditioned,
                "stretch factor too close to 1 for pair normalization",
                ld.lambda);
  }

  const Su21Element s1 = diagonalizing_conjugator(a, ld, tol);
  const Mat3C bp = group_conjugate(s1.matrix(), b.matrix());

  // Branch selection on the two scalable entries.
  const double scale_b = std::max(1.0, bp.max_abs());
  const double delta = 1e3 * tol.eps_class * scale_b;
  const cx b12 = bp(0, 1);
  const cx b32 = bp(2, 1);
  bool branch12;
  if (std::abs(b12) > delta) {
    branch12 = true;
  } else if (std::abs(b32) > delta) {
    branch12 = false;
  } else {
    throw Error(ErrorTag::Reducible,
                "both scalable entries vanish: common invariant line",
                std::max(std::abs(b12), std::abs(b32)));
  }
  const cx pivot_entry = branch12 ? b12 : b32;
  const double stretch =
      branch12 ? 1.0 / std::abs(pivot_entry) : std::abs(pivot_entry);
  if (stretch + 1.0 / stretch > 1e4) {
    throw Error(ErrorTag::IllConditioned,
                "normalizing scale is extreme; certificate would be garbage",
                stretch);
  }

  const Mat3C x = detail::branch_scaling(pivot_entry, branch12);
  const Mat3C f_mat = x * s1.matrix();
  const Su21Element f = Su21Element::unchecked(f_mat);
  const Mat3C a_t = group_conjugate(f_mat, a.matrix());
  const Mat3C b_t = group_conjugate(f_mat, b.matrix());

  // Reconstruct the transformed B from trace data only.
  const DiagonalLoxodromic a_diag = DiagonalLoxodromic::from_data(ld);
  const EntryLedger led =
      build_ledger(a_diag, Su21Element::unchecked(b_t), tol);
  const double theta = 1e-6 * std::max(1.0, b_t.max_abs());
  const Mat3C b_rec = detail::reconstruct_from_ledger(led, branch12, theta);

  Certificate cert;
  cert.kind = Certificate::Kind::FieldRealization;
  cert.conjugator = f;
  cert.transformed_generators = {a_t, b_t};
  cert.residual = max_abs_diff(b_rec, b_t);
  if (cert.residual > 10.0 * tol.eps_class * std::max(1.0, b_t.max_abs())) {
    throw Error(ErrorTag::IllConditioned,
                "trace reconstruction residual exceeded its gate",
                cert.residual);
  }
  return cert;
}

}  // namespace su21
