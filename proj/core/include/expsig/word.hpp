// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace expsig {

/// A word over the alphabet {1, ..., d}: the multi-index (i_1, ..., i_k)
/// labelling one coefficient of a level-k tensor. Letters are 1-based.
class Word {
public:
  Word() = default;
  Word(std::initializer_list<int> letters) : letters_(letters) {}
  explicit Word(std::vector<int> letters) : letters_(std::move(letters)) {}

  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  int operator[](std::size_t pos) const { return letters_[pos]; }
  std::span<const int> letters() const noexcept { return letters_; }

  /// Flat position of this word in the dense level-k array for alphabet size
  /// d. Lexicographic rank, the last letter varying fastest:
  ///   index = sum_j (i_j - 1) * d^(k - 1 - j),  j = 0-based position.
  /// Throws ArgumentError when a letter falls outside 1..d.
  std::size_t flat_index(int dimension) const;

  /// Inverse of flat_index.
  static Word from_flat_index(int dimension, int length, std::size_t index);

  /// Letters joined by commas: "1,1,2,2". Empty word gives "".
  std::string to_string() const;

  friend bool operator==(const Word&, const Word&) = default;
  friend std::strong_ordering operator<=>(const Word&, const Word&) = default;

private:
  std::vector<int> letters_;
};

}  // namespace expsig
