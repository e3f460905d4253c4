// Trace-form machinery: an irreducible subgroup spans all of M(3,C), the
// bilinear pairing (A,B) = tr(AB) is nondegenerate on that span, and any
// matrix is determined by its nine pairings against a basis.  The greedy
// scan below extracts a 9-word basis from the word enumeration; decomposing
// a group element against it needs only traces, which is why a group whose
// traces lie in a field can be realized over (a quadratic extension of)
// that field.

#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "su21/complexmat.hpp"
#include "su21/errors.hpp"
#include "su21/form.hpp"
#include "su21/words.hpp"

namespace su21 {

/// A Burnside basis: nine words, their matrix values, and the Gram matrix
/// of the trace form gram[i][j] = tr(S_i S_j) (complex symmetric).
struct TraceForm {
  std::vector<Word> words;
  std::vector<Mat3C> elements;
  std::array<std::array<cx, 9>, 9> gram{};
};

namespace detail {

/// Rank of the leading k x k block of a Gram matrix via full-pivot
/// elimination at relative threshold eps.
[[nodiscard]] inline std::size_t gram_rank(
    const std::array<std::array<cx, 9>, 9>& gram, std::size_t k, double eps) {
  std::array<std::array<cx, 9>, 9> work{};
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) work[i][j] = gram[i][j];
  }
  return pivot_rank<9>(work, eps);
}

}  // namespace detail

/// Scans the word enumeration in canonical order, keeping a word exactly
/// when it increases the rank of the trace-form Gram matrix.  Terminates
/// with nine words or throws BasisNotFound carrying the rank reached.
[[nodiscard]] inline TraceForm burnside_basis(const WordSampler& sampler,
                                              const Tolerances& tol = {}) {
  TraceForm basis;
  std::size_t rank = 0;
  for (const Word& w : sampler.words()) {
    const Mat3C s = sampler.evaluate(w);
    const std::size_t k = basis.elements.size();
    // Tentatively append row/column k.
    for (std::size_t i = 0; i < k; ++i) {
      const cx pairing = trace(basis.elements[i] * s);
      basis.gram[i][k] = pairing;
      basis.gram[k][i] = pairing;  // tr(AB) = tr(BA)
    }
    basis.gram[k][k] = trace(s * s);
    const std::size_t new_rank =
        detail::gram_rank(basis.gram, k + 1, tol.eps_solve);
    if (new_rank > rank) {
      rank = new_rank;
      basis.words.push_back(w);
      basis.elements.push_back(s);
      if (rank == 9) return basis;
    } else {
      // Roll the tentative row/column back.
      for (std::size_t i = 0; i <= k; ++i) {
        basis.gram[i][k] = cx{};
        basis.gram[k][i] = cx{};
      }
    }
  }
  throw Error(ErrorTag::BasisNotFound,
              "word enumeration exhausted below full trace-form rank",
              static_cast<double>(rank), static_cast<long>(rank));
}

/// Decomposition from externally supplied pairings tr(g S_i); used when g
/// itself lives in a different frame and only its traces are available.
template <typename PairingFn>
[[nodiscard]] inline std::array<cx, 9> trace_form_decompose_rhs(
    PairingFn&& pairing, const TraceForm& basis, const Tolerances& tol = {}) {
  if (basis.elements.size() != 9) {
    throw Error(ErrorTag::BasisNotFound,
                "trace-form decomposition requires a full 9-element basis",
                static_cast<double>(basis.elements.size()),
                static_cast<long>(basis.elements.size()));
  }
  std::array<std::array<cx, 9>, 9> m = basis.gram;
  std::array<cx, 9> rhs{};
  for (std::size_t i = 0; i < 9; ++i) rhs[i] = pairing(basis.elements[i]);
  return solve_linear<9>(m, rhs, tol.eps_solve);
}

/// Coefficients of g against the basis: solves gram * c = rhs with
/// rhs_i = tr(g S_i).  Only traces of g enter.
[[nodiscard]] inline std::array<cx, 9> trace_form_decompose(
    const Su21Element& g, const TraceForm& basis, const Tolerances& tol = {}) {
  return trace_form_decompose_rhs(
      [&](const Mat3C& s) { return trace(g.matrix() * s); }, basis, tol);
}

/// Sum of c_i S_i.
[[nodiscard]] inline Mat3C trace_form_reconstruct(
    const std::array<cx, 9>& coeffs, const TraceForm& basis) {
  Mat3C acc;
  for (std::size_t i = 0; i < 9; ++i) {
    acc = acc + basis.elements[i] * coeffs[i];
  }
  return acc;
}

}  // namespace su21
