#include "rdrseg/corpus.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "rdrseg/errors.hpp"

namespace rdrseg {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' ||
         c == '\f';
}

}  // namespace

std::vector<std::string> split_syllables(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    std::size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    if (i > start) out.emplace_back(line.substr(start, i - start));
  }
  return out;
}

TaggedSentence parse_underscore(std::string_view line) {
  const auto tokens = split_syllables(line);
  if (tokens.empty()) throw EmptyInput("empty sentence line");

  TaggedSentence sentence;
  for (const auto& token : tokens) {
    if (token.front() == '_' || token.back() == '_' ||
        token.find("__") != std::string::npos) {
      throw MalformedWord("malformed word token \"" + token + "\"");
    }
    std::size_t pos = 0;
    bool first = true;
    while (pos <= token.size()) {
      const std::size_t next = token.find('_', pos);
      const std::size_t end = (next == std::string::npos) ? token.size() : next;
      sentence.items.push_back(
          {token.substr(pos, end - pos), first ? SegTag::B : SegTag::I});
      first = false;
      if (next == std::string::npos) break;
      pos = next + 1;
    }
  }
  return sentence;
}

std::string to_underscore(const TaggedSentence& s) {
  if (s.empty()) throw EmptyInput("empty sentence");
  if (s.items.front().tag != SegTag::B)
    throw InvalidTagSequence("sentence opens inside a word");

  std::string out;
  for (std::size_t i = 0; i < s.items.size(); ++i) {
    if (i > 0) out += (s.items[i].tag == SegTag::I) ? '_' : ' ';
    out += s.items[i].surface;
  }
  return out;
}

std::vector<std::string> to_raw(const TaggedSentence& s) {
  std::vector<std::string> out;
  out.reserve(s.items.size());
  for (const auto& item : s.items) out.push_back(item.surface);
  return out;
}

Corpus read_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open corpus file: " + path);

  Corpus corpus;
  corpus.source_path = path;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (split_syllables(line).empty()) continue;
    try {
      corpus.sentences.push_back(parse_underscore(line));
    } catch (const MalformedWord& e) {
      throw MalformedWord(path + ":" + std::to_string(line_no) + ": " +
                          e.what());
    }
  }
  return corpus;
}

void write_corpus(const Corpus& corpus, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write corpus file: " + path);
  for (const auto& sentence : corpus.sentences)
    out << to_underscore(sentence) << '\n';
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace rdrseg
