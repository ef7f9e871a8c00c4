#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "symnet/errors.hpp"
#include "symnet/ndcore/tensor.hpp"

namespace symnet {

using WordId = std::size_t;

// The twelve syllables of the rule task, in input-row order, and the four
// disjoint groups sequences are built from.
struct Vocabulary {
  static constexpr std::size_t kSize = 12;
  static constexpr std::size_t kTimesteps = 3;

  std::array<std::string_view, kSize> words{"ga", "ti", "wo", "na", "gi", "la",
                                            "li", "fe", "ko", "ni", "ta", "de"};
  std::array<std::string_view, 4> train_a{"ga", "li", "ni", "ta"};
  std::array<std::string_view, 4> train_b{"ti", "na", "gi", "la"};
  std::array<std::string_view, 2> test_a{"wo", "de"};
  std::array<std::string_view, 2> test_b{"fe", "ko"};

  static const Vocabulary& standard() {
    static const Vocabulary vocab;
    return vocab;
  }

  std::size_t size() const noexcept { return words.size(); }

  WordId id(std::string_view word) const {
    const auto it = std::find(words.begin(), words.end(), word);
    if (it == words.end()) throw VocabularyError("unknown word '" + std::string(word) + "'");
    return static_cast<WordId>(it - words.begin());
  }

  std::string_view word(WordId id) const {
    if (id >= words.size()) throw VocabularyError("word id " + std::to_string(id) + " out of range");
    return words[id];
  }
};

/// One-hot encodes a three-word sequence as a [12 words x 3 timesteps] grid:
/// column t holds a single 1 in the row of word t.
inline Tensor encode_sequence(std::span<const WordId> sequence,
                              const Vocabulary& vocab = Vocabulary::standard()) {
  if (sequence.size() != Vocabulary::kTimesteps) {
    throw ShapeError("encode_sequence: expected 3 words, got " + std::to_string(sequence.size()));
  }
  Tensor grid({vocab.size(), Vocabulary::kTimesteps});
  for (std::size_t t = 0; t < sequence.size(); ++t) {
    if (sequence[t] >= vocab.size()) {
      throw VocabularyError("word id " + std::to_string(sequence[t]) + " not in vocabulary");
    }
    grid.at(sequence[t], t) = 1.0;
  }
  return grid;
}

inline Tensor encode_sequence(std::span<const std::string_view> words,
                              const Vocabulary& vocab = Vocabulary::standard()) {
  std::vector<WordId> ids;
  ids.reserve(words.size());
  for (auto w : words) ids.push_back(vocab.id(w));
  return encode_sequence(std::span<const WordId>(ids), vocab);
}

/// Inverse of encode_sequence for well-formed grids.
inline std::vector<WordId> decode_sequence(const Tensor& grid,
                                           const Vocabulary& vocab = Vocabulary::standard()) {
  if (grid.shape() != Shape{vocab.size(), Vocabulary::kTimesteps}) {
    throw ShapeError("decode_sequence: bad grid shape " + shape_to_string(grid.shape()));
  }
  std::vector<WordId> ids;
  for (std::size_t t = 0; t < Vocabulary::kTimesteps; ++t) {
    std::size_t hits = 0;
    for (std::size_t w = 0; w < vocab.size(); ++w) {
      if (grid.at(w, t) == 1.0) {
        ids.push_back(w);
        ++hits;
      }
    }
    if (hits != 1) throw VocabularyError("decode_sequence: column is not one-hot");
  }
  return ids;
}

}  // namespace symnet
