#include "rdrseg/pipeline.hpp"

#include <chrono>
#include <fstream>
#include <thread>

#include "rdrseg/errors.hpp"

namespace rdrseg {

std::vector<SegTag> correct_tags(const TaggedSentence& init,
                                 const ScrdrTree& tree) {
  const auto tuples = make_tuples(init);
  std::vector<SegTag> tags(tuples.size());
  for (std::size_t i = 0; i < tuples.size(); ++i)
    tags[i] = tree.evaluate_tag(tuples[i]);
  if (!tags.empty()) tags[0] = SegTag::B;
  return tags;
}

TaggedSentence segment_sentence(std::span<const std::string> raw,
                                const Lexicon& lex, const ScrdrTree& tree) {
  TaggedSentence out = longest_match(raw, lex);
  const auto tags = correct_tags(out, tree);
  for (std::size_t i = 0; i < tags.size(); ++i) out.items[i].tag = tags[i];
  return out;
}

namespace {

std::string segment_line(const std::string& line, const Lexicon& lex,
                         const ScrdrTree& tree, SegmentStats& stats) {
  const auto syllables = split_syllables(line);
  if (syllables.empty()) return "";
  const auto sentence = segment_sentence(syllables, lex, tree);
  ++stats.sentences;
  stats.syllables += sentence.size();
  for (const auto& item : sentence.items)
    if (item.tag == SegTag::B) ++stats.words;
  return to_underscore(sentence);
}

}  // namespace

SegmentStats segment_file(const std::string& in_path,
                          const std::string& out_path, const Lexicon& lex,
                          const ScrdrTree& tree, int jobs) {
  std::ifstream in(in_path);
  if (!in) throw IoError("cannot open input file: " + in_path);
  std::ofstream out(out_path);
  if (!out) throw IoError("cannot write output file: " + out_path);
  if (jobs < 1) throw ConfigError("jobs must be >= 1");

  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(std::move(line));

  SegmentStats stats;
  std::vector<std::string> results(lines.size());
  const auto started = std::chrono::steady_clock::now();

  if (jobs == 1 || lines.size() < 2) {
    for (std::size_t i = 0; i < lines.size(); ++i)
      results[i] = segment_line(lines[i], lex, tree, stats);
  } else {
    const auto workers =
        std::min<std::size_t>(jobs, std::max<std::size_t>(lines.size(), 1));
    std::vector<SegmentStats> partial(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < lines.size(); i += workers)
          results[i] = segment_line(lines[i], lex, tree, partial[w]);
      });
    }
    for (auto& t : pool) t.join();
    for (const auto& p : partial) {
      stats.sentences += p.sentences;
      stats.syllables += p.syllables;
      stats.words += p.words;
    }
  }

  stats.seconds = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - started)
                      .count();

  for (const auto& result : results) out << result << '\n';
  if (!out) throw IoError("write failed: " + out_path);
  return stats;
}

}  // namespace rdrseg
