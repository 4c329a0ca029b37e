#include "rdrseg/context.hpp"

#include <functional>

#include "rdrseg/errors.hpp"
#include "rdrseg/unicode.hpp"

namespace rdrseg {

CtxTag ctx_tag_of(SegTag t) {
  return t == SegTag::B ? CtxTag::B : CtxTag::I;
}

std::string_view ctx_tag_text(CtxTag t) {
  switch (t) {
    case CtxTag::B:
      return "B";
    case CtxTag::I:
      return "I";
    default:
      return "";
  }
}

SegTag ContextTuple::center_tag() const {
  if (tags[2] == CtxTag::Empty)
    throw InternalError("context tuple with empty center slot");
  return tags[2] == CtxTag::B ? SegTag::B : SegTag::I;
}

std::size_t ContextTupleHash::operator()(const ContextTuple& t) const {
  // FNV-1a over all ten fields; deterministic across runs.
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](const char* data, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
      h ^= static_cast<unsigned char>(data[i]);
      h *= 1099511628211ull;
    }
  };
  for (int i = 0; i < 5; ++i) {
    mix(t.syllables[i].data(), t.syllables[i].size());
    const char tag = static_cast<char>(t.tags[i]);
    mix(&tag, 1);
    const char sep = '\x1F';
    mix(&sep, 1);
  }
  return static_cast<std::size_t>(h);
}

bool is_tag_field(Field f) { return static_cast<int>(f) % 2 == 1; }

int field_window_index(Field f) { return static_cast<int>(f) / 2; }

namespace {

constexpr std::string_view kFieldNames[kFieldCount] = {
    "prev2_syllable", "prev2_tag", "prev1_syllable", "prev1_tag",
    "syllable",       "tag",       "next1_syllable", "next1_tag",
    "next2_syllable", "next2_tag",
};

}  // namespace

std::string_view field_name(Field f) {
  return kFieldNames[static_cast<int>(f)];
}

bool parse_field_name(std::string_view name, Field& out) {
  for (int i = 0; i < kFieldCount; ++i) {
    if (kFieldNames[i] == name) {
      out = static_cast<Field>(i);
      return true;
    }
  }
  return false;
}

std::string_view field_text(const ContextTuple& t, Field f) {
  const int w = field_window_index(f);
  return is_tag_field(f) ? ctx_tag_text(t.tags[w])
                         : std::string_view(t.syllables[w]);
}

std::vector<ContextTuple> make_tuples(const TaggedSentence& s) {
  const auto n = static_cast<std::ptrdiff_t>(s.size());
  std::vector<std::string> folded(n);
  for (std::ptrdiff_t i = 0; i < n; ++i)
    folded[i] = uni::fold(s.items[i].surface);

  std::vector<ContextTuple> out(n);
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    ContextTuple& t = out[i];
    for (int w = 0; w < 5; ++w) {
      const std::ptrdiff_t j = i + w - 2;
      if (j < 0 || j >= n) continue;
      t.syllables[w] = folded[j];
      t.tags[w] = ctx_tag_of(s.items[j].tag);
    }
  }
  return out;
}

const DictEntry* ContextDictionary::find(const ContextTuple& t) const {
  auto it = index_.find(t);
  return it == index_.end() ? nullptr : &entries_[it->second];
}

ContextDictionary build_context_dictionary(const Corpus& init,
                                           const Corpus& gold) {
  if (init.sentences.size() != gold.sentences.size())
    throw AlignmentError(0, "corpora differ in sentence count: " +
                                std::to_string(init.sentences.size()) +
                                " vs " +
                                std::to_string(gold.sentences.size()));

  struct Tally {
    std::uint32_t gold_b = 0;
    std::uint32_t gold_i = 0;
  };
  std::vector<Tally> tallies;

  ContextDictionary dict;
  for (std::size_t si = 0; si < init.sentences.size(); ++si) {
    const auto& is = init.sentences[si];
    const auto& gs = gold.sentences[si];
    if (is.size() != gs.size())
      throw AlignmentError(si, "sentence " + std::to_string(si) +
                                   " differs in length between corpora");
    for (std::size_t p = 0; p < is.size(); ++p) {
      if (uni::fold(is.items[p].surface) != uni::fold(gs.items[p].surface))
        throw AlignmentError(si, "sentence " + std::to_string(si) +
                                     " differs in surface at position " +
                                     std::to_string(p));
    }

    auto tuples = make_tuples(is);
    for (std::size_t p = 0; p < tuples.size(); ++p) {
      auto [it, added] =
          dict.index_.try_emplace(tuples[p], dict.entries_.size());
      if (added) {
        dict.entries_.push_back({std::move(tuples[p]), SegTag::B, 0});
        tallies.emplace_back();
      }
      auto& tally = tallies[it->second];
      if (gs.items[p].tag == SegTag::B)
        ++tally.gold_b;
      else
        ++tally.gold_i;
    }
  }

  for (std::size_t i = 0; i < dict.entries_.size(); ++i) {
    auto& entry = dict.entries_[i];
    const auto& tally = tallies[i];
    entry.count = tally.gold_b + tally.gold_i;
    if (tally.gold_b > tally.gold_i)
      entry.gold = SegTag::B;
    else if (tally.gold_i > tally.gold_b)
      entry.gold = SegTag::I;
    else
      entry.gold = entry.tuple.center_tag();  // tie: keep the initial tag
  }
  return dict;
}

}  // namespace rdrseg
