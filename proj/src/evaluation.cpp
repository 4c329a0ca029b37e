#include "rdrseg/evaluation.hpp"

#include <chrono>
#include <fstream>

#include "rdrseg/errors.hpp"
#include "rdrseg/pipeline.hpp"
#include "rdrseg/unicode.hpp"

namespace rdrseg {

namespace {

// Word spans of one sentence as (start << 32) | end, sorted by start.
std::vector<std::uint64_t> word_spans(const TaggedSentence& s) {
  std::vector<std::uint64_t> spans;
  std::size_t start = 0;
  for (std::size_t i = 1; i <= s.size(); ++i) {
    if (i == s.size() || s.items[i].tag == SegTag::B) {
      spans.push_back((static_cast<std::uint64_t>(start) << 32) | i);
      start = i;
    }
  }
  return spans;
}

}  // namespace

ScoreReport score(const Corpus& gold, const Corpus& pred) {
  if (gold.sentences.size() != pred.sentences.size())
    throw AlignmentError(0, "corpora differ in sentence count: " +
                                std::to_string(gold.sentences.size()) +
                                " vs " +
                                std::to_string(pred.sentences.size()));

  ScoreReport report;
  for (std::size_t si = 0; si < gold.sentences.size(); ++si) {
    const auto& gs = gold.sentences[si];
    const auto& ps = pred.sentences[si];
    if (gs.size() != ps.size())
      throw AlignmentError(si, "sentence " + std::to_string(si) +
                                   " differs in length between corpora");
    for (std::size_t p = 0; p < gs.size(); ++p) {
      if (uni::fold(gs.items[p].surface) != uni::fold(ps.items[p].surface))
        throw AlignmentError(si, "sentence " + std::to_string(si) +
                                     " differs in surface at position " +
                                     std::to_string(p));
    }

    const auto gspans = word_spans(gs);
    const auto pspans = word_spans(ps);
    report.gold += gspans.size();
    report.predicted += pspans.size();
    // Both lists are sorted by construction; count the intersection.
    std::size_t gi = 0, pi = 0;
    while (gi < gspans.size() && pi < pspans.size()) {
      if (gspans[gi] == pspans[pi]) {
        ++report.matched;
        ++gi;
        ++pi;
      } else if (gspans[gi] < pspans[pi]) {
        ++gi;
      } else {
        ++pi;
      }
    }
  }

  report.precision =
      report.predicted ? static_cast<double>(report.matched) / report.predicted
                       : 0.0;
  report.recall =
      report.gold ? static_cast<double>(report.matched) / report.gold : 0.0;
  const double pr = report.precision + report.recall;
  report.f1 = pr > 0 ? 2.0 * report.precision * report.recall / pr : 0.0;
  return report;
}

BenchReport benchmark(const std::string& raw_path, const Lexicon& lex,
                      const ScrdrTree& tree, int repetitions) {
  if (repetitions < 1) throw ConfigError("repetitions must be >= 1");

  std::ifstream in(raw_path);
  if (!in) throw IoError("cannot open input file: " + raw_path);
  std::vector<std::vector<std::string>> sentences;
  std::string line;
  while (std::getline(in, line)) {
    auto syllables = split_syllables(line);
    if (!syllables.empty()) sentences.push_back(std::move(syllables));
  }

  BenchReport report;
  report.repetitions = static_cast<std::size_t>(repetitions);
  report.sentences = sentences.size();

  const auto started = std::chrono::steady_clock::now();
  for (int rep = 0; rep < repetitions; ++rep) {
    std::size_t syllables = 0;
    std::size_t words = 0;
    for (const auto& raw : sentences) {
      const auto sentence = segment_sentence(raw, lex, tree);
      syllables += sentence.size();
      for (const auto& item : sentence.items)
        if (item.tag == SegTag::B) ++words;
      // The underscore rendering is part of the measured pipeline.
      volatile auto size = to_underscore(sentence).size();
      (void)size;
    }
    report.syllables = syllables;
    report.words = words;
  }
  report.seconds = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - started)
                       .count();

  const double per_rep =
      report.seconds / static_cast<double>(report.repetitions);
  if (per_rep > 0) {
    report.syllables_per_second =
        static_cast<double>(report.syllables) / per_rep;
    report.words_per_second = static_cast<double>(report.words) / per_rep;
  }
  return report;
}

}  // namespace rdrseg
