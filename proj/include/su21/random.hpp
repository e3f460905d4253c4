// Seeded pseudo-random group elements.
//
// Construction is Gram–Schmidt against the Hermitian form: draw a random
// isotropic first row, complete with a unit-positive second row and an
// isotropic third row pairing to 1 with the first, then correct the
// determinant to exactly 1 with a scalar.  The scalar correction preserves
// all six row conditions because the form conditions are invariant under
// multiplication of the matrix by any unit-modulus scalar, and the modulus
// part of the correction is 1 up to roundoff by construction.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

#include "su21/complexmat.hpp"
#include "su21/errors.hpp"
#include "su21/form.hpp"

namespace su21 {

/// Deterministic uniform double in [-1, 1), identical across platforms:
/// 53 high bits of the mt19937_64 output mapped affinely.  (The standard
/// distribution objects are implementation-defined, so they are avoided.)
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : gen_(seed) {}

  [[nodiscard]] double uniform_sym() {
    const double u = static_cast<double>(gen_() >> 11) * 0x1.0p-53;  // [0,1)
    return 2.0 * u - 1.0;
  }
  [[nodiscard]] double uniform(double lo, double hi) {
    const double u = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }
  [[nodiscard]] cx uniform_complex(double spread) {
    // Evaluation order of the two draws must not depend on the compiler.
    const double re = uniform_sym();
    const double im = uniform_sym();
    return {spread * re, spread * im};
  }

 private:
  std::mt19937_64 gen_;
};

/// Pseudo-random validated element.  `spread` bounds the magnitude of the
/// raw draws (entry magnitudes of the result are of that order but not
/// strictly bounded by it).  Deterministic for a fixed seed.  Throws
/// DegenerateSample if the bounded retry budget is exhausted (practically
/// unreachable for spread in [0.1, 10]).
[[nodiscard]] inline Su21Element random_su21(std::uint64_t seed,
                                             double spread = 1.0,
                                             const Tolerances& tol = {}) {
  if (!(spread > 0.0) || !std::isfinite(spread)) {
    throw Error(ErrorTag::DegenerateSample, "spread must be positive and finite");
  }
  SeededRng rng(seed);
  constexpr int kMaxRetries = 64;
  for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
    // Isotropic first row: given z1, z2 the condition <v1,v1> = 0 reads
    // 2 Re(z1 conj(z3)) + |z2|^2 = 0, solved exactly by
    // z3 = (-|z2|^2/2 + i b) / conj(z1) for any real b.
    const cx z1 = rng.uniform_complex(spread);
    if (std::abs(z1) < 0.3 * spread) continue;
    const cx z2 = rng.uniform_complex(spread);
    const double b = spread * rng.uniform_sym();
    const cx z3 = (cx{-0.5 * std::norm(z2), b}) / std::conj(z1);
    const Vec3C v1{z1, z2, z3};

    // Isotropic third row pairing to 1: starting from a random t3, the
    // combination u3' = t3 + beta v1 with beta = -<t3,t3> / (2 conj(c)),
    // c = <t3,v1>, is isotropic (the cross terms cancel because v1 is
    // isotropic), and dividing by c normalizes <u3,v1> = 1.
    const Vec3C t3{rng.uniform_complex(1.0), rng.uniform_complex(1.0),
                   rng.uniform_complex(1.0)};
    const cx c = herm_inner(t3, v1);
    if (std::abs(c) < 0.3) continue;
    const cx beta = -herm_inner(t3, t3) / (2.0 * std::conj(c));
    const Vec3C u3 = (t3 + v1 * beta) * (1.0 / c);

    // Unit positive middle row, orthogonal to both null rows: project a
    // random t2 against the pair (v1, u3) using the form's pairing
    // <v1,u3'> pattern, then normalize by the (necessarily positive, else
    // retry) self-pairing.
    const Vec3C t2{rng.uniform_complex(1.0), rng.uniform_complex(1.0),
                   rng.uniform_complex(1.0)};
    const Vec3C u2p = t2 - v1 * herm_inner(t2, u3) - u3 * herm_inner(t2, v1);
    const double n2 = herm_inner(u2p, u2p).real();
    if (n2 < 0.1) continue;
    const Vec3C u2 = u2p * (1.0 / std::sqrt(n2));

    Mat3C m = Mat3C::from_rows(v1, u2, u3);
    // Determinant correction: |det| = 1 already holds up to roundoff, so
    // multiplying by the principal cube root of det^{-1} rotates the phase
    // away while preserving the row conditions.
    const cx d = det(m);
    if (std::abs(d) < 0.5) continue;
    m = m * std::pow(d, -1.0 / 3.0);
    const double r = membership_residual(m);
    if (r > tol.eps_form) continue;
    return validate_su21(m, tol);
  }
  throw Error(ErrorTag::DegenerateSample,
              "random element generation exhausted its retry budget");
}

}  // namespace su21
