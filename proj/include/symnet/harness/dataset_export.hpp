#pragma once

#include <string>

#include "symnet/errors.hpp"
#include "symnet/harness/report.hpp"
#include "symnet/tasks/datasets.hpp"
#include "symnet/tasks/vocabulary.hpp"

namespace symnet {

inline constexpr std::string_view kDatasetCsvHeader = "split,input,target";

namespace detail {

inline std::string bits_string(const Tensor& t) {
  std::string s;
  for (double v : t.data()) s += v >= 0.5 ? '1' : '0';
  return s;
}

inline std::string render_example(TaskId task, const Example& ex) {
  if (task == TaskId::identity) return bits_string(ex.input) + ',' + bits_string(ex.target);
  const auto& vocab = Vocabulary::standard();
  std::string words;
  for (WordId id : decode_sequence(ex.input, vocab)) {
    if (!words.empty()) words += ' ';
    words += vocab.word(id);
  }
  const bool aba = ex.target[0] >= 0.5;
  return words + ',' + (aba ? "ABA" : "ABB");
}

}  // namespace detail

/// CSV with one instance per line. Identity rows hold the digit strings
/// (e.g. `train,00010,00010`); rule rows hold the words and the structure
/// (e.g. `test,wo fe wo,ABA`).
inline std::string dataset_to_csv(const Dataset& ds) {
  std::string out(kDatasetCsvHeader);
  out += '\n';
  for (const auto& ex : ds.train) out += "train," + detail::render_example(ds.task, ex) + '\n';
  for (const auto& ex : ds.test) out += "test," + detail::render_example(ds.task, ex) + '\n';
  return out;
}

inline void write_dataset_csv(const Dataset& ds, const std::string& path) {
  write_text_file(path, dataset_to_csv(ds));
}

}  // namespace symnet
