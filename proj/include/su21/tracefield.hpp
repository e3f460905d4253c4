// Trace sampling over words, phase recovery from (trace, lambda) data, and
// invariant-trace sampling via the cube identity.
//
// For g in the group, g^{-1} is the Hermitian anti-transpose, so
// tr(g^{-1}) = conj(tr(g)); the characteristic polynomial is
// mu^3 - t mu^2 + conj(t) mu - 1 with t = tr(g).  For a loxodromic element
// with eigenvalues lambda e^{i phi}, e^{-2 i phi}, lambda^{-1} e^{i phi}
// the rotation phase phi is a rational expression in (tr, conj(tr), lambda):
//
//   |tr|^2           = lambda^2 + lambda^{-2} + 2 (lambda + lambda^{-1}) cos 3phi + 3
//   cos phi          = (cos 3phi + (Re tr + 1)(lambda + lambda^{-1}))
//                      / (2 Re tr + (lambda + lambda^{-1})^2 - 1)
//   sin phi          = Im tr / (lambda + lambda^{-1} - 2 cos phi)
//
// The sin-phi denominator is lambda + lambda^{-1} - 2 cos phi >= lambda +
// lambda^{-1} - 2 > 0: expanding Im tr = (lambda + lambda^{-1}) sin phi -
// sin 2phi = sin phi (lambda + lambda^{-1} - 2 cos phi) shows the minus sign
// is forced (the plus variant fails the unit-modulus invariant on any
// loxodromic with phi != 0 mod pi).

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <tuple>
#include <vector>
#include <set>

#include "su21/classify.hpp"
#include "su21/complexmat.hpp"
#include "su21/errors.hpp"
#include "su21/form.hpp"
#include "su21/words.hpp"

namespace su21 {

// ============================================================================
// Phase recovery (rational expressions in trace data and lambda)
// ============================================================================

[[nodiscard]] inline double recover_cos3phi(cx tr, double lambda,
                                            const Tolerances& tol = {}) {
  if (!(lambda > 1.0)) {
    throw Error(ErrorTag::OutOfRange, "phase recovery requires lambda > 1",
                lambda);
  }
  const double t = lambda + 1.0 / lambda;
  const double c3 = (std::norm(tr) - lambda * lambda -
                     1.0 / (lambda * lambda) - 3.0) /
                    (2.0 * t);
  if (c3 < -1.0 - tol.eps_field || c3 > 1.0 + tol.eps_field) {
    throw Error(ErrorTag::OutOfRange,
                "trace modulus inconsistent with lambda (|cos 3phi| > 1)", c3);
  }
  return std::clamp(c3, -1.0, 1.0);
}

[[nodiscard]] inline double recover_cosphi(cx tr, double lambda,
                                           double cos3phi,
                                           const Tolerances& tol = {}) {
  const double t = lambda + 1.0 / lambda;
  const double den = 2.0 * tr.real() + t * t - 1.0;
  if (std::abs(den) < tol.eps_solve) {
    throw Error(ErrorTag::DenominatorUnderflow,
                "cos-phi denominator vanished (lambda <= 1 leakage?)", den);
  }
  const double c = (cos3phi + (tr.real() + 1.0) * t) / den;
  return std::clamp(c, -1.0, 1.0);
}

[[nodiscard]] inline double recover_sinphi(cx tr, double lambda, double cosphi,
                                           const Tolerances& tol = {}) {
  const double t = lambda + 1.0 / lambda;
  const double den = t - 2.0 * cosphi;
  if (std::abs(den) < tol.eps_solve) {
    throw Error(ErrorTag::DenominatorUnderflow,
                "sin-phi denominator vanished (lambda <= 1 leakage?)", den);
  }
  return tr.imag() / den;
}

/// Composed recovery of the full phase from one (trace, lambda) pair.
struct PhaseRecovery {
  double cos3phi = 1.0;
  double cosphi = 1.0;
  double sinphi = 0.0;

  [[nodiscard]] cx unit() const { return {cosphi, sinphi}; }
  /// Deviation of cos^2 + sin^2 from 1 (consistency diagnostic).
  [[nodiscard]] double unit_defect() const {
    return std::abs(cosphi * cosphi + sinphi * sinphi - 1.0);
  }
  /// Deviation of the triple-angle identity (consistency diagnostic).
  [[nodiscard]] double triple_angle_defect() const {
    return std::abs(4.0 * cosphi * cosphi * cosphi - 3.0 * cosphi - cos3phi);
  }
};

[[nodiscard]] inline PhaseRecovery recover_phase(cx tr, double lambda,
                                                 const Tolerances& tol = {}) {
  PhaseRecovery p;
  p.cos3phi = recover_cos3phi(tr, lambda, tol);
  p.cosphi = recover_cosphi(tr, lambda, p.cos3phi, tol);
  p.sinphi = recover_sinphi(tr, lambda, p.cosphi, tol);
  return p;
}

// ============================================================================
// Cube identity
// ============================================================================

/// tr(g^3) from tr(g) and tr(g^{-1}) alone:
/// tr(g^3) = tr(g)^3 - 3 tr(g) tr(g^{-1}) + 3 (Newton's identities with
/// det = 1 and e2 = tr(g^{-1})).
[[nodiscard]] inline cx cube_trace(cx tr, cx tr_inv) {
  return tr * tr * tr - 3.0 * tr * tr_inv + 3.0;
}

// ============================================================================
// Trace reports
// ============================================================================

struct TraceSample {
  Word word;
  cx tr;
};

/// Sampled surrogate for "the field generated by the traces": the list of
/// (word, trace) pairs up to the sampler's length bound, a reality verdict,
/// and the stretch factor of the first loxodromic word found (if any).
struct TraceReport {
  std::vector<TraceSample> samples;
  bool is_real = true;
  double max_imag = 0.0;
  std::optional<double> lambda_witness;
  std::optional<Word> witness_word;
};

namespace detail {

/// Quantized dedup key for a (tr, tr_inv) pair.  Deduplication is an
/// optimization only; collisions merely drop a redundant sample.
[[nodiscard]] inline std::array<std::int64_t, 4> trace_key(cx tr, cx tr_inv,
                                                           double step) {
  const double q = std::max(step, 1e-14);
  const auto qz = [q](double x) {
    return static_cast<std::int64_t>(std::llround(x / q));
  };
  return {qz(tr.real()), qz(tr.imag()), qz(tr_inv.real()), qz(tr_inv.imag())};
}

/// Largest eigenvalue modulus of the element with this trace pair; used as
/// a cheap loxodromic screen (mmax > 1 + margin).
[[nodiscard]] inline double max_eigen_modulus(cx tr, cx tr_inv) {
  const std::array<cx, 3> mu = eigenvalues_from_traces(tr, tr_inv);
  double m = 0.0;
  for (const cx& z : mu) m = std::max(m, std::abs(z));
  return m;
}

}  // namespace detail

/// Traces of all words up to the sampler bound, deduplicated on quantized
/// trace pairs; reality decided by max |Im| against eps_field.
[[nodiscard]] inline TraceReport sample_traces(const GroupSpec& spec,
                                               const WordSampler& sampler) {
  const Tolerances& tol = spec.tolerances;
  TraceReport report;
  std::set<std::array<std::int64_t, 4>> seen;
  for (const Word& w : sampler.words()) {
    const Mat3C m = sampler.evaluate(w);
    const cx tr = trace(m);
    const cx tr_inv = std::conj(tr);
    if (!seen.insert(detail::trace_key(tr, tr_inv, tol.eps_field)).second) {
      continue;
    }
    report.samples.push_back({w, tr});
    report.max_imag = std::max(report.max_imag, std::abs(tr.imag()));
    if (!report.lambda_witness.has_value()) {
      const double mmax = detail::max_eigen_modulus(tr, tr_inv);
      if (mmax > 1.0 + 1e-6) {
        try {
          const ElementClass cls =
              classify_element(Su21Element::unchecked(m), tol);
          if (cls.tag == ElementTag::Loxodromic) {
            report.lambda_witness = mmax;
            report.witness_word = w;
          }
        } catch (const Error& e) {
          if (e.tag() != ErrorTag::BoundaryCase) throw;
        }
      }
    }
  }
  report.is_real = report.max_imag < tol.eps_field;
  return report;
}

/// Traces of cubes of all sampled words, computed through the cube identity
/// (so the result is independent of the scalar lift: (omega g)^3 = g^3) and
/// cross-checked against explicit matrix cubes on a subsample.
[[nodiscard]] inline TraceReport invariant_trace_report(
    const GroupSpec& spec, const WordSampler& sampler) {
  const Tolerances& tol = spec.tolerances;
  TraceReport report;
  std::set<std::array<std::int64_t, 4>> seen;
  std::size_t index = 0;
  for (const Word& w : sampler.words()) {
    const Mat3C m = sampler.evaluate(w);
    const cx tr = trace(m);
    const cx tr_inv = std::conj(tr);
    const cx tr3 = cube_trace(tr, tr_inv);
    const cx tr3_inv = std::conj(tr3);
    if (index++ % 16 == 0) {
      const Mat3C cube = m * m * m;
      const double dev = std::abs(trace(cube) - tr3);
      const double scale = std::max(1.0, m.max_abs());
      if (dev > 1e-6 * scale * scale * scale) {
        throw Error(ErrorTag::OutOfRange,
                    "cube-trace identity cross-check failed", dev);
      }
    }
    if (!seen.insert(detail::trace_key(tr3, tr3_inv, tol.eps_field)).second) {
      continue;
    }
    report.samples.push_back({w, tr3});
    report.max_imag = std::max(report.max_imag, std::abs(tr3.imag()));
    if (!report.lambda_witness.has_value()) {
      const double mmax = detail::max_eigen_modulus(tr, tr_inv);
      if (mmax > 1.0 + 1e-6) {
        try {
          const ElementClass cls =
              classify_element(Su21Element::unchecked(m), tol);
          if (cls.tag == ElementTag::Loxodromic) {
            report.lambda_witness = mmax * mmax * mmax;  // lambda of the cube
            report.witness_word = w;
          }
        } catch (const Error& e) {
          if (e.tag() != ErrorTag::BoundaryCase) throw;
        }
      }
    }
  }
  report.is_real = report.max_imag < tol.eps_field;
  return report;
}

}  // namespace su21
