// Irreducibility screening with typed witnesses, the loxodromic word search
// and its parabolic boost fallback, the elementarity screen, screw-motion
// detection, and the two-sided Fuchsian classification.
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "su21/su21.hpp"

namespace {

using namespace su21;

const Vec3C kE1{1.0, 0.0, 0.0};
const Vec3C kE2{0.0, 1.0, 0.0};
const Vec3C kE3{0.0, 0.0, 1.0};

Su21Element diag_boost() {
  return validate_su21(Mat3C::diagonal(2.0, 1.0, 0.5));
}

GroupSpec hide(const GroupSpec& spec, unsigned seed) {
  const Su21Element h = random_su21(seed);
  std::vector<Su21Element> gens;
  gens.reserve(spec.generators.size());
  for (const Su21Element& g : spec.generators) {
    gens.push_back(group_conjugate(h, g));
  }
  return GroupSpec(gens, spec.assumed_discrete, spec.tolerances);
}

double cert_max_imag(const Certificate& c) {
  double m = 0.0;
  for (const Mat3C& g : c.transformed_generators) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) m = std::max(m, std::abs(g(i, j).imag()));
    }
  }
  return m;
}

}  // namespace

TEST_CASE("irreducibility witnesses", "[irreducible]") {
  const Tolerances tol{};

  SECTION("a single diagonal generator is reducible with an isotropic line") {
    const IrreducibilityReport r = irreducibility(GroupSpec({diag_boost()}), tol);
    REQUIRE_FALSE(r.irreducible);
    REQUIRE(r.witness.has_value());
    REQUIRE(r.witness_type.has_value());
    CHECK(*r.witness_type == IrreducibilityReport::WitnessType::Isotropic);
    CHECK(detail::line_distance(*r.witness, kE1) < 1e-8);
  }

  SECTION("the modular group embeds reducibly with a positive fixed line") {
    const IrreducibilityReport r = irreducibility(corpus_sl2z(), tol);
    REQUIRE_FALSE(r.irreducible);
    REQUIRE(r.witness.has_value());
    CHECK(*r.witness_type == IrreducibilityReport::WitnessType::Positive);
    CHECK(detail::line_distance(*r.witness, kE2) < 1e-8);
  }

  SECTION("a hidden real pair is irreducible") {
    const GroupSpec spec =
        hide(GroupSpec({corpus_so21_boost(2.0), corpus_so21_rotation()}), 77);
    const IrreducibilityReport r = irreducibility(spec, tol);
    CHECK(r.irreducible);
    CHECK_FALSE(r.witness.has_value());
  }
}

TEST_CASE("loxodromic word search", "[detect]") {
  const Tolerances tol{};

  SECTION("a loxodromic generator is found immediately") {
    const GroupSpec spec({diag_boost()});
    WordSampler sampler = WordSampler::for_spec(spec, 3);
    const LoxodromicFind f = find_loxodromic(spec, sampler, tol);
    CHECK(f.boost_exponent == 0);
    CHECK(f.word.length() == 1);
    CHECK(classify_element(f.element, tol).tag == ElementTag::Loxodromic);
  }

  SECTION("parabolic boost when no short word is loxodromic") {
    // A unipotent translation and an elliptic rotation: at word length one
    // nothing is loxodromic, so the search must boost B^n C until the trace
    // leaves the compact range.
    const GroupSpec spec({corpus_unipotent(1.0),
                          corpus_su11(std::polar(1.0, 2.0 * kPi / 3.0),
                                      cx{0.0, 0.0})});
    WordSampler sampler(spec.generators, 1);
    const LoxodromicFind f = find_loxodromic(spec, sampler, tol);
    CHECK(f.boost_exponent == 3);
    CHECK(f.word.length() ==
          static_cast<std::size_t>(f.boost_exponent) + 1);
    CHECK(std::abs(trace(f.element.matrix())) > 3.0);
    CHECK(classify_element(f.element, tol).tag == ElementTag::Loxodromic);
    // The returned element is the evaluation of the returned word.
    CHECK(max_abs_diff(f.element.matrix(), sampler.evaluate(f.word)) < 1e-12);
  }

  SECTION("an elliptic cyclic group has nothing to find") {
    const GroupSpec spec({corpus_su11(std::polar(1.0, 2.0 * kPi / 3.0),
                                      cx{0.0, 0.0})});
    WordSampler sampler = WordSampler::for_spec(spec, 4);
    try {
      (void)find_loxodromic(spec, sampler, tol);
      FAIL("expected the search to fail");
    } catch (const Error& e) {
      CHECK(e.tag() == ErrorTag::NoLoxodromicFound);
    }
  }
}

TEST_CASE("conservative elementarity screen", "[detect]") {
  const Tolerances tol{};
  const GroupSpec single({diag_boost()});
  WordSampler ws1 = WordSampler::for_spec(single, 4);
  CHECK(elementary_screen(single, ws1, tol));  // possibly elementary

  const GroupSpec pair({corpus_so21_boost(2.0), corpus_so21_rotation()});
  WordSampler ws2 = WordSampler::for_spec(pair, 4);
  CHECK_FALSE(elementary_screen(pair, ws2, tol));  // certified non-elementary
}

TEST_CASE("screw-motion detection", "[detect]") {
  const Tolerances tol{};
  CHECK_FALSE(is_screw_motion(diag_boost(), tol));
  CHECK_FALSE(is_screw_motion(validate_su21(tau_form(1.0)), tol));
  const cx e5 = std::polar(1.0, kPi / 5.0);
  CHECK(is_screw_motion(
      validate_su21(Mat3C::diagonal(2.0 * e5, std::polar(1.0, -2.0 * kPi / 5.0),
                                    e5 / 2.0)),
      tol));
}

TEST_CASE("two-sided fuchsian classification", "[fuchsian]") {
  const Tolerances tol{};

  SECTION("hidden real pair with a loxodromic generator") {
    const GroupSpec spec = hide(
        GroupSpec({corpus_so21_boost(2.0), corpus_so21_rational(0.6)}), 404);
    WordSampler sampler = WordSampler::for_spec(spec, 4);
    const FuchsianVerdict v = classify_fuchsian(spec, true, sampler, tol);
    REQUIRE(v.verdict == FuchsianVerdict::Verdict::RFuchsian);
    REQUIRE(v.certificate.has_value());
    CHECK(v.certificate->kind == Certificate::Kind::RealForm);
    CHECK(cert_max_imag(*v.certificate) < 1e-8);
    for (const Mat3C& g : v.certificate->transformed_generators) {
      REQUIRE_NOTHROW(validate_su21(g, tol));
    }
  }

  SECTION("the modular group stabilizes a complex geodesic") {
    const GroupSpec spec = corpus_sl2z();
    WordSampler sampler = WordSampler::for_spec(spec, 4);
    const FuchsianVerdict v = classify_fuchsian(spec, true, sampler, tol);
    REQUIRE(v.verdict == FuchsianVerdict::Verdict::CFuchsian);
    REQUIRE(v.polar_witness.has_value());
    CHECK(detail::line_distance(*v.polar_witness, kE2) < 1e-8);
  }

  SECTION("a non-real field rules out both kinds") {
    const cx e5 = std::polar(1.0, kPi / 5.0);
    const Su21Element g = validate_su21(Mat3C::diagonal(
        2.0 * e5, std::polar(1.0, -2.0 * kPi / 5.0), e5 / 2.0));
    const GroupSpec spec({g, random_su21(4)});
    WordSampler sampler = WordSampler::for_spec(spec, 4);
    const FuchsianVerdict v = classify_fuchsian(spec, true, sampler, tol);
    CHECK(v.verdict == FuchsianVerdict::Verdict::NotFuchsianOfEitherKind);
  }

  SECTION("no discreteness assertion, no theorem") {
    const GroupSpec spec = hide(
        GroupSpec({corpus_so21_boost(2.0), corpus_so21_rational(0.6)}), 404);
    WordSampler sampler = WordSampler::for_spec(spec, 4);
    const FuchsianVerdict v = classify_fuchsian(spec, false, sampler, tol);
    CHECK(v.verdict == FuchsianVerdict::Verdict::Inconclusive);
    CHECK_FALSE(v.cause.empty());
  }

  SECTION("conservative on ill-conditioned real input: never a wrong claim") {
    // Two random real rotations hidden by a generic conjugator: the cube
    // stage can amplify roundoff past the absolute reality tolerance, in
    // which case the verdict must degrade to Inconclusive, never to a
    // positive misclassification.
    SeededRng r1(41), r2(42);
    const GroupSpec spec = hide(
        GroupSpec({corpus_so21_random(r1), corpus_so21_random(r2)}), 404);
    WordSampler sampler = WordSampler::for_spec(spec, 4);
    const FuchsianVerdict v = classify_fuchsian(spec, true, sampler, tol);
    CHECK((v.verdict == FuchsianVerdict::Verdict::RFuchsian ||
           v.verdict == FuchsianVerdict::Verdict::Inconclusive));
  }
}

TEST_CASE("detector invariants on a seeded corpus", "[detect][corpus]") {
  const Tolerances tol{};

  SECTION("irreducibility verdicts and witnesses transform with conjugation") {
    for (unsigned seed = 0; seed < 20; ++seed) {
      const Su21Element s = random_su21(6000 + seed);
      const GroupSpec base = corpus_sl2z();
      std::vector<Su21Element> gens;
      for (const Su21Element& g : base.generators) {
        gens.push_back(group_conjugate(s, g));
      }
      const IrreducibilityReport r = irreducibility(GroupSpec(gens), tol);
      REQUIRE_FALSE(r.irreducible);
      REQUIRE(r.witness.has_value());
      CHECK(*r.witness_type == IrreducibilityReport::WitnessType::Positive);
      const Vec3C expected = s.matrix() * kE2;
      CHECK(detail::line_distance(*r.witness, expected) < 1e-6);
    }
    for (unsigned seed = 0; seed < 10; ++seed) {
      const GroupSpec spec = hide(
          GroupSpec({corpus_so21_boost(2.0), corpus_so21_rotation()}),
          6100 + seed);
      CHECK(irreducibility(spec, tol).irreducible);
    }
  }

  SECTION("the loxodromic search succeeds on every irreducible spec") {
    std::vector<GroupSpec> specs;
    specs.push_back(GroupSpec({corpus_so21_boost(2.0), corpus_so21_rotation()}));
    for (unsigned seed : {71u, 72u, 73u}) {
      specs.push_back(hide(
          GroupSpec({corpus_so21_boost(2.0), corpus_so21_rotation()}), seed));
    }
    specs.push_back(GroupSpec({corpus_unipotent(1.0),
                               corpus_su11(std::polar(1.0, 2.0 * kPi / 3.0),
                                           cx{0.0, 0.0})}));
    {
      std::vector<Su21Element> gens;
      for (unsigned s : {301u, 302u, 303u}) {
        SeededRng r(s);
        gens.push_back(corpus_so21_random(r, 0.8));
      }
      specs.push_back(GroupSpec(gens));
    }
    for (const GroupSpec& spec : specs) {
      REQUIRE(irreducibility(spec, tol).irreducible);
      WordSampler sampler = WordSampler::for_spec(spec, 4);
      const LoxodromicFind f = find_loxodromic(spec, sampler, tol);
      CHECK(classify_element(f.element, tol).tag == ElementTag::Loxodromic);
    }
  }

  SECTION("boosted traces grow monotonically past the compact range") {
    const Mat3C b = corpus_unipotent(1.0).matrix();
    const Mat3C c =
        corpus_su11(std::polar(1.0, 2.0 * kPi / 3.0), cx{0.0, 0.0}).matrix();
    Mat3C bp = b;
    double prev = std::abs(trace(bp * c));
    bool crossed = prev > 3.0;
    for (int n = 2; n <= 100; ++n) {
      bp = bp * b;
      const double t = std::abs(trace(bp * c));
      REQUIRE(t > prev);
      prev = t;
      if (t > 3.0) crossed = true;
    }
    CHECK(crossed);
    CHECK(prev > 100.0);
  }

  SECTION("real-form certificates are real and form-valid") {
    for (unsigned seed : {404u, 505u, 606u, 707u, 808u}) {
      const GroupSpec spec = hide(
          GroupSpec({corpus_so21_boost(2.0), corpus_so21_rational(0.6)}),
          seed);
      WordSampler sampler = WordSampler::for_spec(spec, 4);
      const FuchsianVerdict v = classify_fuchsian(spec, true, sampler, tol);
      REQUIRE(v.verdict == FuchsianVerdict::Verdict::RFuchsian);
      REQUIRE(v.certificate.has_value());
      CHECK(cert_max_imag(*v.certificate) < 1e-8);
      for (const Mat3C& g : v.certificate->transformed_generators) {
        REQUIRE_NOTHROW(validate_su21(g, tol));
      }
    }
  }

  SECTION("screw-motion verdicts are conjugation-invariant") {
    for (unsigned seed = 0; seed < 30; ++seed) {
      SeededRng rng(6200 + seed);
      const double lambda = rng.uniform(1.5, 3.0);
      // Keep phi away from multiples of pi/3, where a scalar lift of the
      // element acquires a real trace and the verdict legitimately flips.
      const double phi = (seed % 2 == 0) ? 0.0 : rng.uniform(0.15, 0.85);
      const Su21Element g = corpus_loxodromic(lambda, phi);
      const Su21Element gc = group_conjugate(random_su21(6300 + seed), g);
      const bool s1 = is_screw_motion(g, tol);
      const bool s2 = is_screw_motion(gc, tol);
      CHECK(s1 == s2);
      CHECK(s1 == (seed % 2 != 0));
    }
  }
}
