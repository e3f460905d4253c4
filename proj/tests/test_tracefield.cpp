// Word-trace sampling, phase recovery from (trace, stretch), the cube-trace
// identity, and invariant-field reality reports.
#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "su21/su21.hpp"

namespace {

using namespace su21;

Su21Element canonical_loxodromic(double lambda, double phi) {
  const cx e = std::polar(1.0, phi);
  return validate_su21(
      Mat3C::diagonal(lambda * e, std::polar(1.0, -2.0 * phi), e / lambda));
}

// Tolerance multiset equality: every trace in `a` must pair off with a
// distinct trace in `b` (exact sorting is unusable here because conjugate
// pairs share a real part up to roundoff and would swap between runs).
bool trace_multisets_match(const TraceReport& a, const TraceReport& b,
                           double tol) {
  if (a.samples.size() != b.samples.size()) return false;
  std::vector<bool> used(b.samples.size(), false);
  for (const TraceSample& s : a.samples) {
    bool matched = false;
    for (std::size_t j = 0; j < b.samples.size(); ++j) {
      if (!used[j] && std::abs(s.tr - b.samples[j].tr) < tol) {
        used[j] = true;
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("trace sampling and reality verdicts", "[tracefield]") {
  const Tolerances tol{};

  const GroupSpec cyc({validate_su21(Mat3C::diagonal(2.0, 1.0, 0.5))}, false,
                      tol);
  const TraceReport r1 = sample_traces(cyc, WordSampler::for_spec(cyc, 3));
  CHECK(r1.is_real);
  CHECK(r1.lambda_witness.has_value());
  CHECK(std::abs(*r1.lambda_witness - 2.0) < 1e-9);

  const GroupSpec z = corpus_sl2z(true, tol);
  const TraceReport r2 = sample_traces(z, WordSampler::for_spec(z, 4));
  CHECK(r2.is_real);
  CHECK(r2.max_imag < 1e-12);

  const GroupSpec nr({canonical_loxodromic(2.0, kPi / 5.0), random_su21(4)},
                     false, tol);
  const TraceReport r3 = sample_traces(nr, WordSampler::for_spec(nr, 2));
  CHECK_FALSE(r3.is_real);
  CHECK(r3.max_imag > 0.5);
}

TEST_CASE("phase recovery from trace and stretch", "[tracefield]") {
  const Tolerances tol{};

  // Frozen rational points of the recovery formulas.
  CHECK(recover_cos3phi(cx(3.5, 0.0), 2.0, tol) ==
        Catch::Approx(1.0).margin(1e-12));
  CHECK(recover_cos3phi(cx(-1.5, 0.0), 2.0, tol) ==
        Catch::Approx(-1.0).margin(1e-12));
  CHECK_THROWS_AS(recover_cos3phi(cx(10.0, 0.0), 2.0, tol), Error);

  CHECK(recover_cosphi(cx(3.5, 0.0), 2.0, 1.0, tol) ==
        Catch::Approx(1.0).margin(1e-12));
  CHECK(recover_cosphi(cx(-1.5, 0.0), 2.0, -1.0, tol) ==
        Catch::Approx(-1.0).margin(1e-12));

  // Real trace forces a vanishing sine.
  CHECK(recover_sinphi(cx(3.5, 0.0), 2.0, 1.0, tol) == 0.0);

  // Constructed generic phase: lambda = 2, phi = pi/5.
  const cx tr = 2.5 * std::polar(1.0, kPi / 5.0) +
                std::polar(1.0, -2.0 * kPi / 5.0);
  const PhaseRecovery p = recover_phase(tr, 2.0, tol);
  CHECK(std::abs(p.cosphi - std::cos(kPi / 5.0)) < 1e-12);
  CHECK(std::abs(p.sinphi - std::sin(kPi / 5.0)) < 1e-12);
  CHECK(p.unit_defect() < 1e-12);
  CHECK(p.triple_angle_defect() < 1e-12);

  // Random loxodromics: recovery matches the eigen-derived phase.
  for (unsigned seed = 1; seed <= 40; ++seed) {
    const Su21Element g = random_su21(seed);
    if (classify_element(g, tol).tag != ElementTag::Loxodromic) continue;
    const LoxodromicData ld = loxodromic_data(g, tol);
    const PhaseRecovery q = recover_phase(trace(g.matrix()), ld.lambda, tol);
    CHECK(std::abs(q.cosphi - std::cos(ld.phi)) < 1e-9);
    CHECK(std::abs(q.sinphi - std::sin(ld.phi)) < 1e-9);
  }
}

TEST_CASE("cube-trace identity", "[tracefield]") {
  CHECK(std::abs(cube_trace(cx(3.0, 0.0), cx(3.0, 0.0)) - cx(3.0, 0.0)) <
        1e-14);
  CHECK(std::abs(cube_trace(cx(3.5, 0.0), cx(3.5, 0.0)) - cx(9.125, 0.0)) <
        1e-12);

  for (unsigned seed = 1; seed <= 100; ++seed) {
    const Su21Element g = random_su21(seed);
    const Mat3C m = g.matrix();
    const cx tr = trace(m);
    const cx tr_inv = trace(anti_transpose_inverse(m));
    CHECK(std::abs(cube_trace(tr, tr_inv) - trace(m * m * m)) < 1e-10);
  }
}

TEST_CASE("invariant-field reports", "[tracefield]") {
  const Tolerances tol{};

  SeededRng rng(6);
  const GroupSpec real_spec(
      {corpus_so21_random(rng), corpus_so21_random(rng)}, true, tol);
  CHECK(invariant_trace_report(real_spec,
                               WordSampler::for_spec(real_spec, 3))
            .is_real);

  // Scalar lifts are invisible to the cube traces.
  const Su21Element g = random_su21(12);
  const cx omega{-0.5, std::sqrt(3.0) / 2.0};
  const Su21Element gw = validate_su21(g.matrix() * omega);
  const GroupSpec s1({g}, false, tol);
  const GroupSpec s2({gw}, false, tol);
  const TraceReport a = invariant_trace_report(s1, WordSampler::for_spec(s1, 3));
  const TraceReport b = invariant_trace_report(s2, WordSampler::for_spec(s2, 3));
  REQUIRE(a.samples.size() == b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    CHECK(std::abs(a.samples[i].tr - b.samples[i].tr) < 1e-12);
  }

  // The embedded modular group has a real invariant field even though it is
  // not conjugate into the real form.
  const GroupSpec z = corpus_sl2z(true, tol);
  CHECK(invariant_trace_report(z, WordSampler::for_spec(z, 4)).is_real);
}

TEST_CASE("trace-field invariants on a seeded corpus", "[tracefield][invariants]") {
  const Tolerances tol{};

  // Reality and the sampled trace multiset are conjugation invariants.
  for (unsigned seed : {1u, 2u, 3u, 4u, 5u}) {
    const GroupSpec spec({random_su21(seed), random_su21(seed + 100)}, false,
                         tol);
    const Su21Element s = random_su21(seed + 7000);
    std::vector<Su21Element> conj_gens;
    for (const Su21Element& g : spec.generators) {
      conj_gens.push_back(group_conjugate(s, g));
    }
    const GroupSpec spec_c(conj_gens, false, tol);

    const TraceReport ra = sample_traces(spec, WordSampler::for_spec(spec, 3));
    const TraceReport rb =
        sample_traces(spec_c, WordSampler::for_spec(spec_c, 3));
    CHECK(ra.is_real == rb.is_real);
    CHECK(trace_multisets_match(ra, rb, 1e-10));
  }

  // Every sampled loxodromic word admits a faithful phase recovery.
  int lox_words = 0;
  for (unsigned seed : {11u, 12u, 13u}) {
    const GroupSpec spec({random_su21(seed), random_su21(seed + 300)}, false,
                         tol);
    const WordSampler sampler = WordSampler::for_spec(spec, 3);
    for (const Word& w : sampler.words()) {
      const Mat3C m = sampler.evaluate(w);
      const Su21Element e = Su21Element::unchecked(m);
      ElementClass cls;
      try {
        cls = classify_element(e, tol);
      } catch (const Error&) {
        continue;
      }
      if (cls.tag != ElementTag::Loxodromic ||
          cls.margin < 10.0 * tol.eps_class) {
        continue;
      }
      ++lox_words;
      const LoxodromicData ld = loxodromic_data(e, tol);
      const PhaseRecovery p = recover_phase(trace(m), ld.lambda, tol);
      const cx expected = std::polar(1.0, ld.phi);
      CHECK(std::abs(p.unit() - expected) < 1e-8);
      CHECK(p.triple_angle_defect() < tol.eps_field);
    }
  }
  CHECK(lox_words > 100);
}
