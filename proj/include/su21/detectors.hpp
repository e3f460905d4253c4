// Structural detectors: loxodromic search (with the parabolic power boost),
// the non-elementarity screen, and the screw-motion test.
//
// The boost handles groups whose short words are all elliptic/parabolic: if
// B is parabolic and C does not fix B's fixed point, then B^n C is
// eventually loxodromic.  In B's normal-form frame the trace of B^n C has
// the closed form
//
//   rotational:  e^{i n phi} (c11 + c33 + i n r c31) + e^{-2 i n phi} c22
//   unipotent:   tr C + n (c21 - c32) + (n tau + (1-n) n / 2) c31
//
// so |tr| grows linearly (rate r |c31|) or quadratically (rate |c31| / 2)
// and eventually exceeds 3, the sufficient loxodromy threshold.  The c31
// entry in the normal frame is exactly the transversality measure.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "su21/classify.hpp"
#include "su21/complexmat.hpp"
#include "su21/errors.hpp"
#include "su21/form.hpp"
#include "su21/parabolic.hpp"
#include "su21/tracefield.hpp"
#include "su21/words.hpp"

namespace su21 {

/// Result of the loxodromic search.  `boost_exponent` is 0 when a plain
/// word was loxodromic, otherwise the least n with |tr(B^n C)| > 3 found by
/// the boost (the returned word is then b_word^n * c_word).
struct LoxodromicFind {
  Word word;
  Su21Element element;
  long boost_exponent = 0;
};

namespace detail {

/// Fubini-Study chordal distance between the lines spanned by u and v.
[[nodiscard]] inline double line_distance(const Vec3C& u, const Vec3C& v) {
  const double nu = u.norm2(), nv = v.norm2();
  if (nu == 0.0 || nv == 0.0) return 0.0;
  const double c = std::abs(dot_std(u, v)) / (nu * nv);
  return std::sqrt(std::max(0.0, 1.0 - c * c));
}

/// The three fixed points of a loxodromic in P(V): attracting, repelling,
/// polar — the columns of its eigen-frame.
[[nodiscard]] inline std::array<Vec3C, 3> loxodromic_fixed_points(
    const LoxodromicData& d) {
  return {d.frame.col(0), d.frame.col(1), d.frame.col(2)};
}

/// Classification that treats a boundary-ambiguous element as "no tag".
[[nodiscard]] inline std::optional<ElementTag> try_classify(
    const Mat3C& m, const Tolerances& tol) {
  try {
    return classify_element(Su21Element::unchecked(m), tol).tag;
  } catch (const Error& e) {
    if (e.tag() == ErrorTag::BoundaryCase) return std::nullopt;
    throw;
  }
}

/// w^n by binary doubling on freely reduced words (seam cancellation is
/// handled by Word's concatenation).
[[nodiscard]] inline Word word_power(const Word& w, long n) {
  Word acc;      // identity
  Word base = w;
  long k = n;
  while (k > 0) {
    if (k & 1) acc = acc * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return acc;
}

/// Closed-form tr(N^n C) in the parabolic normal frame.
[[nodiscard]] inline cx boost_trace(const ParabolicForm& form, const Mat3C& c,
                                    long n) {
  const double nd = static_cast<double>(n);
  if (form.kind == ParabolicForm::Kind::EllipticRotational) {
    const cx e = std::polar(1.0, nd * form.phi);
    const cx e2 = std::polar(1.0, -2.0 * nd * form.phi);
    return e * (c(0, 0) + c(2, 2) + cx{0.0, nd * form.r} * c(2, 0)) +
           e2 * c(1, 1);
  }
  const cx tau{-0.5, form.s};
  const double f = (1.0 - nd) * nd / 2.0;
  return trace(c) + nd * (c(1, 0) - c(2, 1)) + (nd * tau + f) * c(2, 0);
}

}  // namespace detail

/// First loxodromic word in enumeration order; when the enumeration has
/// none, boosts a parabolic word B against a transversal word C through the
/// closed-form trace of B^n C (n doubling up to 2^20, then bisected to the
/// least n exceeding the |tr| > 3 threshold).
[[nodiscard]] inline LoxodromicFind find_loxodromic(const GroupSpec& spec,
                                                    const WordSampler& sampler,
                                                    const Tolerances& tol = {}) {
  (void)spec;
  const std::vector<Word>& words = sampler.words();

  // Phase 1: plain scan.
  std::vector<std::size_t> parabolic_indices;
  for (std::size_t i = 0; i < words.size(); ++i) {
    const Mat3C m = sampler.evaluate(words[i]);
    const auto tag = detail::try_classify(m, tol);
    if (!tag) continue;
    if (*tag == ElementTag::Loxodromic) {
      return {words[i], Su21Element::unchecked(m), 0};
    }
    if (*tag == ElementTag::ParabolicUnipotent ||
        *tag == ElementTag::EllipticParabolic) {
      parabolic_indices.push_back(i);
    }
  }

  // Phase 2: parabolic boost.
  constexpr long kNMax = 1L << 20;
  constexpr std::size_t kMaxB = 4, kMaxC = 8;
  std::size_t b_tried = 0;
  for (std::size_t bi : parabolic_indices) {
    if (b_tried++ >= kMaxB) break;
    const Word& wb = words[bi];
    const Mat3C b = sampler.evaluate(wb);
    ParabolicForm form;
    try {
      form = parabolic_normal_form(Su21Element::unchecked(b), tol);
    } catch (const Error&) {
      continue;  // degenerate frame; try the next parabolic word
    }
    if (form.kind == ParabolicForm::Kind::EllipticRotational &&
        std::abs(form.r) < 1e-9) {
      continue;  // no translation part: powers of B stay elliptic
    }
    const Mat3C s = form.conjugator.matrix();
    const Mat3C s_inv = anti_transpose_inverse(s);
    std::size_t c_tried = 0;
    for (const Word& wc : words) {
      if (c_tried >= kMaxC) break;
      if (wc.empty()) continue;
      const Mat3C c_orig = sampler.evaluate(wc);
      const Mat3C c = s * c_orig * s_inv;
      const double c_scale = std::max(1.0, c.max_abs());
      if (std::abs(c(2, 0)) <= 1e3 * tol.eps_class * c_scale) {
        continue;  // C fixes B's fixed point; no growth
      }
      ++c_tried;
      // Doubling search for |tr(B^n C)| > 3.
      long hit = -1;
      for (long n = 1; n <= kNMax; n *= 2) {
        if (std::abs(detail::boost_trace(form, c, n)) > 3.0 + 1e-9) {
          hit = n;
          break;
        }
      }
      if (hit < 0) continue;
      // Bisect to the least such n in (hit/2, hit].
      long lo = hit / 2 + 1, hi = hit;
      while (lo < hi) {
        const long mid = lo + (hi - lo) / 2;
        if (std::abs(detail::boost_trace(form, c, mid)) > 3.0 + 1e-9) {
          hi = mid;
        } else {
          lo = mid + 1;
        }
      }
      const long n = lo;
      const Mat3C element =
          pow(b, static_cast<unsigned long>(n)) * c_orig;
      const auto tag = detail::try_classify(element, tol);
      if (!tag || *tag != ElementTag::Loxodromic) continue;
      const Word found = detail::word_power(wb, n) * wc;
      return {found, Su21Element::unchecked(element), n};
    }
  }
  throw Error(ErrorTag::NoLoxodromicFound,
              "no loxodromic element found in the bounded search",
              static_cast<double>(words.size()),
              static_cast<long>(words.size()));
}

/// Conservative elementarity screen: false ("certified non-elementary")
/// exactly when two loxodromic words with disjoint fixed-point triples are
/// found; true means "possibly elementary" and certifies nothing.
[[nodiscard]] inline bool elementary_screen(const GroupSpec& spec,
                                            const WordSampler& sampler,
                                            const Tolerances& tol = {}) {
  (void)spec;
  constexpr std::size_t kMaxStored = 64;
  std::vector<std::array<Vec3C, 3>> seen;
  for (const Word& w : sampler.words()) {
    if (w.empty()) continue;
    const Mat3C m = sampler.evaluate(w);
    const auto tag = detail::try_classify(m, tol);
    if (!tag || *tag != ElementTag::Loxodromic) continue;
    LoxodromicData data;
    try {
      data = loxodromic_data(Su21Element::unchecked(m), tol);
    } catch (const Error&) {
      continue;
    }
    const std::array<Vec3C, 3> fixed = detail::loxodromic_fixed_points(data);
    for (const auto& other : seen) {
      double min_d = 2.0;
      for (const Vec3C& p : fixed) {
        for (const Vec3C& q : other) {
          min_d = std::min(min_d, detail::line_distance(p, q));
        }
      }
      if (min_d > tol.eps_class) return false;  // disjoint fixed sets
    }
    if (seen.size() < kMaxStored) seen.push_back(fixed);
  }
  return true;
}

/// Screw-motion test: g is a screw motion exactly when every scalar lift
/// omega^k g has non-real trace.  The minimum |Im| over the three lifts is
/// compared against eps_field, with an explicit ambiguity band [eps_field,
/// 2 eps_field] surfaced as BoundaryCase rather than decided.
[[nodiscard]] inline bool is_screw_motion(const Su21Element& g,
                                          const Tolerances& tol = {}) {
  const cx t = trace(g.matrix());
  double min_imag = std::abs(t.imag());
  for (int k = 1; k < 3; ++k) {
    const cx lift = detail::cube_roots_of_unity()[static_cast<std::size_t>(k)];
    min_imag = std::min(min_imag, std::abs((lift * t).imag()));
  }
  if (min_imag < tol.eps_field) return false;
  if (min_imag <= 2.0 * tol.eps_field) {
    throw Error(ErrorTag::BoundaryCase,
                "trace imaginary part too close to the reality threshold",
                min_imag);
  }
  return true;
}

}  // namespace su21
