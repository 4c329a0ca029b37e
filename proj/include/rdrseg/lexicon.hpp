#ifndef RDRSEG_LEXICON_HPP
#define RDRSEG_LEXICON_HPP

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "rdrseg/corpus.hpp"

namespace rdrseg {

// Word lexicon indexed by a syllable-level prefix trie. Entries are folded
// (NFC + lowercase) on load; matching is case-insensitive.
class Lexicon {
 public:
  // One word per line, syllables separated by spaces or underscores;
  // lines starting with '#' are ignored.
  static Lexicon load(const std::string& path);

  // Builds from in-memory words (each a syllable sequence). Folds and
  // deduplicates.
  static Lexicon from_words(const std::vector<std::vector<std::string>>& words);

  std::size_t size() const { return words_.size(); }

  // Folded, sorted, deduplicated entries.
  const std::vector<std::vector<std::string>>& words() const { return words_; }

  bool contains(std::span<const std::string> word) const;

  // Length in syllables of the longest lexicon word matching
  // folded[pos..]; 0 when no word matches.
  std::size_t longest_match_at(std::span<const std::string> folded,
                               std::size_t pos) const;

 private:
  struct TrieNode {
    std::unordered_map<std::int32_t, std::int32_t> next;
    bool terminal = false;
  };

  void insert(const std::vector<std::string>& folded_word);
  std::int32_t syllable_id(const std::string& folded) const;

  std::vector<std::vector<std::string>> words_;
  std::vector<TrieNode> trie_{1};
  std::unordered_map<std::string, std::int32_t> syllable_ids_;
};

// Greedy left-to-right segmentation: at each position take the longest
// lexicon word; an unmatched syllable becomes a single-syllable word.
// Surfaces keep their original case.
TaggedSentence longest_match(std::span<const std::string> sentence,
                             const Lexicon& lex);

}  // namespace rdrseg

#endif  // RDRSEG_LEXICON_HPP
