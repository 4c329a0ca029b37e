#ifndef RDRSEG_SYNTHETIC_HPP
#define RDRSEG_SYNTHETIC_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "rdrseg/corpus.hpp"
#include "rdrseg/lexicon.hpp"

namespace rdrseg {

struct SynthConfig {
  std::uint64_t seed = 1;
  int vocab_size = 50;
  int lexicon_size = 200;
  // Fraction of lexicon words that take part in boundary-ambiguous
  // groups; 0 makes greedy matching exact on the generated text.
  double overlap_rate = 0.3;
  int sentences = 1000;
  double mean_len = 8.0;  // mean words per sentence
};

struct SynthResult {
  Corpus gold;
  Lexicon lexicon;
};

// Deterministic generator: a fixed seed reproduces the corpus byte for
// byte. Every gold word is drawn from the returned lexicon, so all
// initializer errors stem from ambiguity rather than coverage. Ambiguity
// is injected through word triples ([a b], [b c], [a]) that trap greedy
// matching on the sequence "a b c".
SynthResult generate(const SynthConfig& cfg);

}  // namespace rdrseg

#endif  // RDRSEG_SYNTHETIC_HPP
