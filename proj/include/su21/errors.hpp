// Error taxonomy for the su21 library.
//
// Every fallible operation throws su21::Error carrying a machine-readable
// tag, a human-readable message, and (where meaningful) a numeric detail:
// a residual magnitude, a rank, or a search bound.  Callers that need to
// branch on failure kind should switch on tag(), not parse messages.

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace su21 {

// ============================================================================
// Tags
// ============================================================================

enum class ErrorTag {
  NotInGroup,         // matrix fails a form condition or det != 1
  DegenerateSample,   // random generator exhausted its retry budget
  BoundaryCase,       // deciding quantity within tolerance of a threshold
  NotLoxodromic,      // loxodromic-only operation on a non-loxodromic element
  InconsistentSpectrum, // eigenvalue pattern violates the group's constraints
  FrameDegenerate,    // eigenvectors numerically dependent
  NotParabolic,       // parabolic-only operation on a non-parabolic element
  OutOfRange,         // scalar invariant outside its provable range
  DenominatorUnderflow, // closed-form denominator below the conditioning floor
  IllConditioned,     // linear solve or pipeline below conditioning threshold
  Reducible,          // group has an invariant complex line
  BasisNotFound,      // word enumeration exhausted below full matrix-algebra rank
  NoLoxodromicFound,  // loxodromic search (including the parabolic boost) exhausted
  TraceFieldNotReal,  // sampled traces have imaginary parts above tolerance
  NotUnimodular,      // 2x2 input with determinant != 1
  ParseError,         // malformed input file or unknown field
};

[[nodiscard]] inline const char* to_string(ErrorTag t) {
  switch (t) {
    case ErrorTag::NotInGroup: return "NotInGroup";
    case ErrorTag::DegenerateSample: return "DegenerateSample";
    case ErrorTag::BoundaryCase: return "BoundaryCase";
    case ErrorTag::NotLoxodromic: return "NotLoxodromic";
    case ErrorTag::InconsistentSpectrum: return "InconsistentSpectrum";
    case ErrorTag::FrameDegenerate: return "FrameDegenerate";
    case ErrorTag::NotParabolic: return "NotParabolic";
    case ErrorTag::OutOfRange: return "OutOfRange";
    case ErrorTag::DenominatorUnderflow: return "DenominatorUnderflow";
    case ErrorTag::IllConditioned: return "IllConditioned";
    case ErrorTag::Reducible: return "Reducible";
    case ErrorTag::BasisNotFound: return "BasisNotFound";
    case ErrorTag::NoLoxodromicFound: return "NoLoxodromicFound";
    case ErrorTag::TraceFieldNotReal: return "TraceFieldNotReal";
    case ErrorTag::NotUnimodular: return "NotUnimodular";
    case ErrorTag::ParseError: return "ParseError";
  }
  return "Unknown";
}

// ============================================================================
// Error
// ============================================================================

/// Library-wide exception.  `value()` carries the tag-specific numeric detail:
/// NotInGroup -> max residual, BoundaryCase -> distance to threshold,
/// TraceFieldNotReal -> max imaginary part; `count()` carries integer details:
/// BasisNotFound -> achieved rank, NoLoxodromicFound -> words searched.
class Error : public std::runtime_error {
 public:
  Error(ErrorTag tag, std::string message,
        double value = std::nan(""), long count = -1)
      : std::runtime_error(std::string(to_string(tag)) + ": " + message),
        tag_(tag), message_(std::move(message)), value_(value),
        count_(count) {}

  [[nodiscard]] ErrorTag tag() const noexcept { return tag_; }
  /// Message without the tag prefix that what() prepends.
  [[nodiscard]] const std::string& message() const noexcept { return message_; }
  [[nodiscard]] double value() const noexcept { return value_; }
  [[nodiscard]] long count() const noexcept { return count_; }

 private:
  ErrorTag tag_;
  std::string message_;
  double value_;
  long count_;
};

}  // namespace su21
