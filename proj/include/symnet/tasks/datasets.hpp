#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "symnet/ndcore/tensor.hpp"
#include "symnet/tasks/vocabulary.hpp"
#include "symnet/training/example.hpp"

namespace symnet {

enum class TaskId { identity, rule };

inline std::string_view to_string(TaskId t) {
  return t == TaskId::identity ? "identity" : "rule";
}

struct Dataset {
  TaskId task = TaskId::identity;
  Shape input_shape;
  Shape target_shape;
  std::vector<Example> train;
  std::vector<Example> test;

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

inline constexpr std::size_t kIdentityDigits = 5;

/// Most-significant digit first: 2 -> [0,0,0,1,0].
inline Tensor binary_digits(unsigned value, std::size_t digits = kIdentityDigits) {
  Tensor t({digits});
  for (std::size_t i = 0; i < digits; ++i) {
    t[digits - 1 - i] = static_cast<double>((value >> i) & 1U);
  }
  return t;
}

/// All 32 five-digit numerals mapped to themselves; evens train, odds test.
inline Dataset make_identity_dataset() {
  Dataset ds{TaskId::identity, {kIdentityDigits}, {kIdentityDigits}, {}, {}};
  for (unsigned v = 0; v < (1U << kIdentityDigits); ++v) {
    Tensor bits = binary_digits(v);
    auto& split = (v % 2 == 0) ? ds.train : ds.test;
    split.push_back({bits, bits});
  }
  return ds;
}

enum class RuleStructure { aba, abb };

inline std::string_view to_string(RuleStructure s) { return s == RuleStructure::aba ? "ABA" : "ABB"; }

/// ABA -> [1, 0], ABB -> [0, 1].
inline Tensor rule_target(RuleStructure s) {
  return s == RuleStructure::aba ? Tensor::vector({1.0, 0.0}) : Tensor::vector({0.0, 1.0});
}

inline std::array<WordId, 3> rule_sequence(WordId a, WordId b, RuleStructure s) {
  return s == RuleStructure::aba ? std::array<WordId, 3>{a, b, a}
                                 : std::array<WordId, 3>{a, b, b};
}

/// Training: every train-A x train-B pair as ABA, then the same pairs as
/// ABB (32 sequences). Test: the paired test words in both structures.
inline Dataset make_rule_dataset(const Vocabulary& vocab = Vocabulary::standard()) {
  Dataset ds{TaskId::rule, {vocab.size(), Vocabulary::kTimesteps}, {2}, {}, {}};
  auto add = [&](std::vector<Example>& split, std::string_view a, std::string_view b,
                 RuleStructure s) {
    const auto seq = rule_sequence(vocab.id(a), vocab.id(b), s);
    split.push_back({encode_sequence(std::span<const WordId>(seq), vocab), rule_target(s)});
  };
  for (RuleStructure s : {RuleStructure::aba, RuleStructure::abb}) {
    for (auto a : vocab.train_a)
      for (auto b : vocab.train_b) add(ds.train, a, b, s);
  }
  for (RuleStructure s : {RuleStructure::aba, RuleStructure::abb}) {
    for (std::size_t i = 0; i < vocab.test_a.size(); ++i) {
      add(ds.test, vocab.test_a[i], vocab.test_b[i], s);
    }
  }
  return ds;
}

}  // namespace symnet
