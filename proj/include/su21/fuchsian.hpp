// R-/C-Fuchsian classification for discrete subgroups.
//
// The dichotomy being operationalized: a discrete nonelementary subgroup
// preserving a totally geodesic plane is R-Fuchsian (real plane: conjugate
// into SO(2,1)) or C-Fuchsian (complex geodesic: fixes a positive polar
// point).  An irreducible group is R-Fuchsian exactly when its invariant
// trace field — the traces of the subgroup generated by cubes — is real, so
// the classifier samples cube traces and hands the cube-generated subgroup
// to the real-form pipeline.  A reducible group with a positive common
// fixed point p preserves the complex geodesic polar to p.
//
// Discreteness is never decided here; it is a caller assertion echoed into
// every verdict, and without it the classifier stays Inconclusive.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "su21/classify.hpp"
#include "su21/complexmat.hpp"
#include "su21/errors.hpp"
#include "su21/form.hpp"
#include "su21/irreducible.hpp"
#include "su21/realize.hpp"
#include "su21/tracefield.hpp"
#include "su21/words.hpp"

namespace su21 {

struct FuchsianVerdict {
  enum class Verdict {
    RFuchsian,
    CFuchsian,
    NotFuchsianOfEitherKind,
    Inconclusive,
  };

  Verdict verdict = Verdict::Inconclusive;
  /// Echo of the caller's discreteness assertion.
  bool assumed_discrete = false;
  /// RealForm certificate for the cube-generated subgroup (RFuchsian only).
  std::optional<Certificate> certificate;
  /// Positive common fixed point, polar to the invariant complex geodesic
  /// (CFuchsian only).
  std::optional<Vec3C> polar_witness;
  /// Human-readable reason when the verdict is Inconclusive.
  std::string cause;
};

[[nodiscard]] inline const char* to_string(FuchsianVerdict::Verdict v) {
  switch (v) {
    case FuchsianVerdict::Verdict::RFuchsian:
      return "r-fuchsian";
    case FuchsianVerdict::Verdict::CFuchsian:
      return "c-fuchsian";
    case FuchsianVerdict::Verdict::NotFuchsianOfEitherKind:
      return "not-fuchsian-of-either-kind";
    case FuchsianVerdict::Verdict::Inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

namespace detail {

/// Sample of the cube-generated subgroup: cubes of the generators and of
/// their pairwise products, skipping near-central cubes (within a scalar
/// cube root of unity of the identity), capped for cost.
[[nodiscard]] inline std::vector<Su21Element> cube_sample(
    const GroupSpec& spec, const Tolerances& tol) {
  constexpr std::size_t kCap = 8;
  const std::array<cx, 3> omegas = cube_roots_of_unity();
  std::vector<Su21Element> out;
  const auto push_cube = [&](const Mat3C& g) {
    if (out.size() >= kCap) return;
    const Mat3C c = g * g * g;
    for (const cx& w : omegas) {
      if (max_abs_diff(c, Mat3C::diagonal(w, w, w)) <=
          100.0 * tol.eps_class) {
        return;  // central cube carries no information
      }
    }
    out.push_back(Su21Element::unchecked(c));
  };
  for (const Su21Element& g : spec.generators) push_cube(g.matrix());
  const std::size_t n = spec.generators.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      push_cube(spec.generators[i].matrix() * spec.generators[j].matrix());
    }
  }
  return out;
}

[[nodiscard]] inline FuchsianVerdict inconclusive(bool assumed_discrete,
                                                  std::string cause) {
  FuchsianVerdict v;
  v.verdict = FuchsianVerdict::Verdict::Inconclusive;
  v.assumed_discrete = assumed_discrete;
  v.cause = std::move(cause);
  return v;
}

}  // namespace detail

/// Classifies the group as R-Fuchsian, C-Fuchsian, neither, or Inconclusive.
/// `assumed_discrete` is the caller's assertion that the group is discrete;
/// the dichotomy theorems require it and nothing here verifies it.
[[nodiscard]] inline FuchsianVerdict classify_fuchsian(
    const GroupSpec& spec, bool assumed_discrete, const WordSampler& sampler,
    const Tolerances& tol = {}) {
  if (!assumed_discrete) {
    return detail::inconclusive(
        false, "discreteness not asserted; the classification theorems "
               "require a discrete group");
  }
  try {
    const IrreducibilityReport irr = irreducibility(spec, tol);

    if (!irr.irreducible) {
      // A positive common fixed point (of the generators, or polar to a
      // common invariant plane) is the polar point of an invariant complex
      // geodesic.
      using WT = IrreducibilityReport::WitnessType;
      if (irr.witness && irr.witness_type == WT::Positive) {
        FuchsianVerdict v;
        v.verdict = FuchsianVerdict::Verdict::CFuchsian;
        v.assumed_discrete = true;
        v.polar_witness = *irr.witness;
        return v;
      }
      if (irr.dual_witness && irr.dual_witness_type == WT::Positive) {
        FuchsianVerdict v;
        v.verdict = FuchsianVerdict::Verdict::CFuchsian;
        v.assumed_discrete = true;
        v.polar_witness = *irr.dual_witness;
        return v;
      }
      return detail::inconclusive(
          true, "reducible without a positive common fixed point");
    }

    const TraceReport cubes = invariant_trace_report(spec, sampler);
    if (!cubes.is_real) {
      // Non-real invariant trace field refutes the real case, and an
      // irreducible group preserves no complex geodesic.
      FuchsianVerdict v;
      v.verdict = FuchsianVerdict::Verdict::NotFuchsianOfEitherKind;
      v.assumed_discrete = true;
      return v;
    }

    const std::vector<Su21Element> cube_gens = detail::cube_sample(spec, tol);
    if (cube_gens.empty()) {
      return detail::inconclusive(
          true, "every sampled cube is central; the cube-generated subgroup "
                "sample is empty");
    }
    const GroupSpec cube_spec(cube_gens, true, tol);
    FuchsianVerdict v;
    v.verdict = FuchsianVerdict::Verdict::RFuchsian;
    v.assumed_discrete = true;
    v.certificate = conjugate_into_so21(cube_spec, tol, 4);
    return v;
  } catch (const Error& e) {
    return detail::inconclusive(true, e.what());
  }
}

}  // namespace su21
