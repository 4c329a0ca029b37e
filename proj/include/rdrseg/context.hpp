#ifndef RDRSEG_CONTEXT_HPP
#define RDRSEG_CONTEXT_HPP

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "rdrseg/corpus.hpp"

namespace rdrseg {

// Tuple slot tag: B/I copied from the tagged text, or Empty for window
// positions outside the sentence.
enum class CtxTag : std::uint8_t { Empty, B, I };

CtxTag ctx_tag_of(SegTag t);
std::string_view ctx_tag_text(CtxTag t);  // "", "B" or "I"

// 5-syllable window around one position. Index 0..4 covers window offsets
// -2..+2; syllables are folded (NFC + lowercase); out-of-range slots hold
// the empty marker "" with CtxTag::Empty. The center slot (index 2) is
// never empty.
struct ContextTuple {
  std::array<std::string, 5> syllables{};
  std::array<CtxTag, 5> tags{CtxTag::Empty, CtxTag::Empty, CtxTag::Empty,
                             CtxTag::Empty, CtxTag::Empty};

  SegTag center_tag() const;
  bool operator==(const ContextTuple&) const = default;
};

struct ContextTupleHash {
  std::size_t operator()(const ContextTuple& t) const;
};

// The ten addressable tuple fields, in window order.
enum class Field : std::uint8_t {
  Prev2Syllable = 0,
  Prev2Tag,
  Prev1Syllable,
  Prev1Tag,
  Syllable,
  Tag,
  Next1Syllable,
  Next1Tag,
  Next2Syllable,
  Next2Tag,
};

inline constexpr int kFieldCount = 10;

bool is_tag_field(Field f);
int field_window_index(Field f);  // 0..4
std::string_view field_name(Field f);
bool parse_field_name(std::string_view name, Field& out);

// Value of one field as text: the folded syllable, "B", "I", or "".
std::string_view field_text(const ContextTuple& t, Field f);

// One tuple per sentence position.
std::vector<ContextTuple> make_tuples(const TaggedSentence& s);

struct DictEntry {
  ContextTuple tuple;
  SegTag gold;
  std::uint32_t count = 0;
};

// Mapping from context tuple to resolved gold tag with occurrence counts.
// Entries iterate in first-seen corpus order, which keeps downstream
// processing deterministic.
class ContextDictionary {
 public:
  const std::vector<DictEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  const DictEntry* find(const ContextTuple& t) const;

  friend ContextDictionary build_context_dictionary(const Corpus& init,
                                                    const Corpus& gold);

 private:
  std::vector<DictEntry> entries_;
  std::unordered_map<ContextTuple, std::size_t, ContextTupleHash> index_;
};

// Aligns the initialized corpus against the gold corpus position by
// position. When one tuple occurs with conflicting gold tags, the majority
// tag wins; ties keep the tuple's own center tag.
ContextDictionary build_context_dictionary(const Corpus& init,
                                           const Corpus& gold);

}  // namespace rdrseg

#endif  // RDRSEG_CONTEXT_HPP
