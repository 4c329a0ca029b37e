#ifndef RDRSEG_PIPELINE_HPP
#define RDRSEG_PIPELINE_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "rdrseg/corpus.hpp"
#include "rdrseg/lexicon.hpp"
#include "rdrseg/scrdr.hpp"

namespace rdrseg {

// Tree-corrected tags for an initialized sentence. Every tuple is built
// from the initializer's tags, never from already-corrected ones, and the
// first tag is forced to B.
std::vector<SegTag> correct_tags(const TaggedSentence& init,
                                 const ScrdrTree& tree);

// Full per-sentence pipeline: longest matching, window tuples, tree
// correction. Surfaces pass through unchanged.
TaggedSentence segment_sentence(std::span<const std::string> raw,
                                const Lexicon& lex, const ScrdrTree& tree);

struct SegmentStats {
  std::size_t sentences = 0;
  std::size_t syllables = 0;
  std::size_t words = 0;
  double seconds = 0.0;

  double syllables_per_second() const {
    return seconds > 0 ? static_cast<double>(syllables) / seconds : 0.0;
  }
  double words_per_second() const {
    return seconds > 0 ? static_cast<double>(words) / seconds : 0.0;
  }
};

// Segments a raw file (one sentence per line, space-separated syllables)
// into underscore format, preserving blank lines and line order. jobs > 1
// fans sentences out over a worker pool with an ordered merge.
SegmentStats segment_file(const std::string& in_path,
                          const std::string& out_path, const Lexicon& lex,
                          const ScrdrTree& tree, int jobs = 1);

}  // namespace rdrseg

#endif  // RDRSEG_PIPELINE_HPP
