#include "rdrseg/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "rdrseg/errors.hpp"
#include "rdrseg/unicode.hpp"

namespace rdrseg {

std::int32_t Lexicon::syllable_id(const std::string& folded) const {
  auto it = syllable_ids_.find(folded);
  return it == syllable_ids_.end() ? -1 : it->second;
}

void Lexicon::insert(const std::vector<std::string>& folded_word) {
  std::int32_t node = 0;
  for (const auto& syllable : folded_word) {
    auto [it, added] = syllable_ids_.try_emplace(
        syllable, static_cast<std::int32_t>(syllable_ids_.size()));
    const std::int32_t sid = it->second;
    (void)added;
    auto child = trie_[node].next.find(sid);
    if (child == trie_[node].next.end()) {
      const auto fresh = static_cast<std::int32_t>(trie_.size());
      trie_[node].next.emplace(sid, fresh);
      trie_.emplace_back();
      node = fresh;
    } else {
      node = child->second;
    }
  }
  trie_[node].terminal = true;
}

Lexicon Lexicon::from_words(
    const std::vector<std::vector<std::string>>& words) {
  std::set<std::vector<std::string>> folded;
  for (const auto& word : words) {
    if (word.empty()) continue;
    std::vector<std::string> f;
    f.reserve(word.size());
    for (const auto& syllable : word) f.push_back(uni::fold(syllable));
    folded.insert(std::move(f));
  }

  Lexicon lex;
  lex.words_.assign(folded.begin(), folded.end());
  for (const auto& word : lex.words_) lex.insert(word);
  return lex;
}

Lexicon Lexicon::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open lexicon file: " + path);

  std::vector<std::vector<std::string>> words;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.front() == '#') continue;
    std::replace(line.begin(), line.end(), '_', ' ');
    auto syllables = split_syllables(line);
    if (!syllables.empty()) words.push_back(std::move(syllables));
  }
  if (words.empty()) throw EmptyLexicon("lexicon has no entries: " + path);
  return from_words(words);
}

bool Lexicon::contains(std::span<const std::string> word) const {
  std::int32_t node = 0;
  for (const auto& syllable : word) {
    const auto sid = syllable_id(uni::fold(syllable));
    if (sid < 0) return false;
    auto it = trie_[node].next.find(sid);
    if (it == trie_[node].next.end()) return false;
    node = it->second;
  }
  return trie_[node].terminal;
}

std::size_t Lexicon::longest_match_at(std::span<const std::string> folded,
                                      std::size_t pos) const {
  std::int32_t node = 0;
  std::size_t best = 0;
  for (std::size_t k = pos; k < folded.size(); ++k) {
    const auto sid = syllable_id(folded[k]);
    if (sid < 0) break;
    auto it = trie_[node].next.find(sid);
    if (it == trie_[node].next.end()) break;
    node = it->second;
    if (trie_[node].terminal) best = k - pos + 1;
  }
  return best;
}

TaggedSentence longest_match(std::span<const std::string> sentence,
                             const Lexicon& lex) {
  if (sentence.empty()) throw EmptyInput("cannot segment an empty sentence");

  std::vector<std::string> folded;
  folded.reserve(sentence.size());
  for (const auto& syllable : sentence) folded.push_back(uni::fold(syllable));

  TaggedSentence out;
  out.items.reserve(sentence.size());
  std::size_t i = 0;
  while (i < sentence.size()) {
    std::size_t len = lex.longest_match_at(folded, i);
    if (len == 0) len = 1;  // out-of-vocabulary syllable
    for (std::size_t k = 0; k < len; ++k) {
      out.items.push_back(
          {sentence[i + k], k == 0 ? SegTag::B : SegTag::I});
    }
    i += len;
  }
  return out;
}

}  // namespace rdrseg
