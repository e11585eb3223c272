// SPDX-License-Identifier: Apache-2.0
#include "expsig/word.hpp"

#include <string>

#include "expsig/errors.hpp"

namespace expsig {

std::size_t Word::flat_index(int dimension) const {
  if (dimension < 1) {
    throw ArgumentError("word: alphabet size must be >= 1");
  }
  std::size_t index = 0;
  for (int letter : letters_) {
    if (letter < 1 || letter > dimension) {
      throw ArgumentError("word: letter " + std::to_string(letter) +
                          " outside alphabet 1.." + std::to_string(dimension));
    }
    index = index * static_cast<std::size_t>(dimension) +
            static_cast<std::size_t>(letter - 1);
  }
  return index;
}

Word Word::from_flat_index(int dimension, int length, std::size_t index) {
  if (dimension < 1 || length < 0) {
    throw ArgumentError("word: bad alphabet size or length");
  }
  std::vector<int> letters(static_cast<std::size_t>(length));
  for (int pos = length - 1; pos >= 0; --pos) {
    letters[static_cast<std::size_t>(pos)] =
        static_cast<int>(index % static_cast<std::size_t>(dimension)) + 1;
    index /= static_cast<std::size_t>(dimension);
  }
  if (index != 0) {
    throw ArgumentError("word: flat index out of range for level");
  }
  return Word(std::move(letters));
}

std::string Word::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(letters_[i]);
  }
  return out;
}

}  // namespace expsig
