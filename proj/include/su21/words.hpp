// Finitely generated subgroups and deterministic word enumeration.
//
// A Word is a freely reduced string in the generators and their inverses,
// stored as signed 1-based letters: +k means generator k, -k its inverse.
// Enumeration is breadth-first by length; within a length, words extend in
// lexicographic letter order (generator index first, then inverse flag), so
// the alphabet order is g1, g1^-1, g2, g2^-1, ...  The empty word (identity)
// comes first.  The order is part of the library's contract: every
// "first word such that ..." search below depends on it.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "su21/complexmat.hpp"
#include "su21/errors.hpp"
#include "su21/form.hpp"

namespace su21 {

/// A finitely generated subgroup: validated generators plus the metadata
/// needed downstream.  `assumed_discrete` is an external assertion (nothing
/// here can certify discreteness); detectors that need it say so.
struct GroupSpec {
  std::vector<Su21Element> generators;
  bool assumed_discrete = false;
  Tolerances tolerances{};

  GroupSpec() = default;
  GroupSpec(std::vector<Su21Element> gens, bool discrete_flag = false,
            Tolerances tol = {})
      : generators(std::move(gens)),
        assumed_discrete(discrete_flag),
        tolerances(tol) {
    tolerances.validate();
    if (generators.empty()) {
      throw Error(ErrorTag::ParseError, "group spec has no generators");
    }
  }
};

/// Freely reduced word; letters are +k / -k for generator k (1-based).
struct Word {
  std::vector<int> letters;

  [[nodiscard]] std::size_t length() const { return letters.size(); }
  [[nodiscard]] bool empty() const { return letters.empty(); }

  [[nodiscard]] Word inverse() const {
    Word w;
    w.letters.reserve(letters.size());
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
      w.letters.push_back(-*it);
    }
    return w;
  }

  /// Concatenation with free reduction at the seam.
  [[nodiscard]] Word operator*(const Word& rhs) const {
    Word w = *this;
    for (int letter : rhs.letters) {
      if (!w.letters.empty() && w.letters.back() == -letter) {
        w.letters.pop_back();
      } else {
        w.letters.push_back(letter);
      }
    }
    return w;
  }

  [[nodiscard]] std::string str() const {
    if (letters.empty()) return "e";
    std::string s;
    for (std::size_t i = 0; i < letters.size(); ++i) {
      if (i > 0) s += ' ';
      const int a = letters[i];
      s += 'g';
      s += std::to_string(a > 0 ? a : -a);
      if (a < 0) s += "^-1";
    }
    return s;
  }

  friend bool operator==(const Word& a, const Word& b) {
    return a.letters == b.letters;
  }
};

/// Deterministic breadth-first word enumeration over a generator list.
class WordSampler {
 public:
  explicit WordSampler(std::vector<Su21Element> generators, int max_length = 6,
                       bool include_inverses = true)
      : gens_(std::move(generators)),
        max_length_(max_length),
        include_inverses_(include_inverses) {
    if (gens_.empty()) {
      throw Error(ErrorTag::ParseError, "word sampler has no generators");
    }
    if (max_length_ < 1) {
      throw Error(ErrorTag::ParseError, "word sampler max_length must be >= 1",
                  static_cast<double>(max_length_));
    }
    for (const Su21Element& g : gens_) {
      gen_matrices_.push_back(g.matrix());
      inv_matrices_.push_back(anti_transpose_inverse(g.matrix()));
    }
    build_alphabet();
  }

  [[nodiscard]] static WordSampler for_spec(const GroupSpec& spec,
                                            int max_length = 6) {
    return WordSampler(spec.generators, max_length);
  }

  [[nodiscard]] int max_length() const { return max_length_; }
  [[nodiscard]] std::size_t generator_count() const { return gens_.size(); }
  [[nodiscard]] const std::vector<Su21Element>& generators() const {
    return gens_;
  }

  /// All freely reduced words of length <= max_length in canonical order,
  /// starting with the identity.
  [[nodiscard]] const std::vector<Word>& words() const {
    if (words_.empty()) enumerate();
    return words_;
  }

  /// Matrix value of a word (letters need not come from this enumeration,
  /// but must reference valid generator indices).
  [[nodiscard]] Mat3C evaluate(const Word& w) const {
    Mat3C m = Mat3C::identity();
    for (int letter : w.letters) {
      const int k = letter > 0 ? letter : -letter;
      if (k < 1 || static_cast<std::size_t>(k) > gens_.size()) {
        throw Error(ErrorTag::ParseError, "word letter out of range",
                    static_cast<double>(letter));
      }
      const std::size_t i = static_cast<std::size_t>(k - 1);
      m = m * (letter > 0 ? gen_matrices_[i] : inv_matrices_[i]);
    }
    return m;
  }

 private:
  void build_alphabet() {
    alphabet_.clear();
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      alphabet_.push_back(static_cast<int>(i) + 1);
      if (include_inverses_) alphabet_.push_back(-(static_cast<int>(i) + 1));
    }
  }

  void enumerate() const {
    words_.push_back(Word{});  // identity first
    std::size_t level_begin = 0;
    std::size_t level_end = 1;
    for (int len = 1; len <= max_length_; ++len) {
      for (std::size_t w = level_begin; w < level_end; ++w) {
        for (int letter : alphabet_) {
          const Word& base = words_[w];
          if (!base.letters.empty() && base.letters.back() == -letter) {
            continue;  // not freely reduced
          }
          Word next = base;
          next.letters.push_back(letter);
          words_.push_back(std::move(next));
        }
      }
      level_begin = level_end;
      level_end = words_.size();
    }
  }

  std::vector<Su21Element> gens_;
  std::vector<Mat3C> gen_matrices_;
  std::vector<Mat3C> inv_matrices_;
  int max_length_;
  bool include_inverses_;
  std::vector<int> alphabet_;
  mutable std::vector<Word> words_;
};

}  // namespace su21
