#ifndef RDRSEG_EVALUATION_HPP
#define RDRSEG_EVALUATION_HPP

#include <cstddef>
#include <string>

#include "rdrseg/corpus.hpp"
#include "rdrseg/lexicon.hpp"
#include "rdrseg/scrdr.hpp"

namespace rdrseg {

struct ScoreReport {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t matched = 0;
  std::size_t predicted = 0;
  std::size_t gold = 0;
};

// Word-level scoring: a word is a maximal B,I,...,I span identified by its
// sentence and syllable positions; matched counts spans present in both
// corpora.
ScoreReport score(const Corpus& gold, const Corpus& pred);

struct BenchReport {
  double words_per_second = 0.0;
  double syllables_per_second = 0.0;
  std::size_t repetitions = 0;
  std::size_t sentences = 0;
  std::size_t syllables = 0;  // per repetition
  std::size_t words = 0;      // per repetition
  double seconds = 0.0;       // total over all repetitions
};

// Repeated single-threaded segmentation of pre-loaded raw text; model and
// data loading are excluded from the timed region.
BenchReport benchmark(const std::string& raw_path, const Lexicon& lex,
                      const ScrdrTree& tree, int repetitions);

}  // namespace rdrseg

#endif  // RDRSEG_EVALUATION_HPP
