#ifndef RDRSEG_CORPUS_HPP
#define RDRSEG_CORPUS_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace rdrseg {

// Per-syllable segmentation tag: B opens a word, I continues one.
enum class SegTag : std::uint8_t { B, I };

inline char seg_tag_char(SegTag t) { return t == SegTag::B ? 'B' : 'I'; }

// A syllable surface is non-empty and contains neither whitespace nor
// underscores. Surfaces keep their original bytes; comparisons go through
// uni::fold.
struct TaggedSyllable {
  std::string surface;
  SegTag tag;

  bool operator==(const TaggedSyllable&) const = default;
};

// Non-empty sequence of tagged syllables; the first tag is always B.
struct TaggedSentence {
  std::vector<TaggedSyllable> items;

  std::size_t size() const { return items.size(); }
  bool empty() const { return items.empty(); }
  bool operator==(const TaggedSentence&) const = default;
};

struct Corpus {
  std::vector<TaggedSentence> sentences;
  std::string source_path;
};

// "a_b c" -> [(a,B),(b,I),(c,B)]. Whitespace runs separate words,
// underscores separate syllables inside a word.
TaggedSentence parse_underscore(std::string_view line);

// Inverse of parse_underscore for sentences in single-space form.
std::string to_underscore(const TaggedSentence& s);

// Drops tags, keeping surfaces and order.
std::vector<std::string> to_raw(const TaggedSentence& s);

// Splits a raw line on whitespace runs. Returns an empty vector for a
// blank line.
std::vector<std::string> split_syllables(std::string_view line);

// Reads an underscore-format corpus, one sentence per line; blank lines
// are skipped.
Corpus read_corpus(const std::string& path);

void write_corpus(const Corpus& corpus, const std::string& path);

}  // namespace rdrseg

#endif  // RDRSEG_CORPUS_HPP
