#include "rdrseg/synthetic.hpp"

#include <cmath>
#include <set>
#include <string>

#include "rdrseg/errors.hpp"

namespace rdrseg {

namespace {

// Hand-rolled splitmix64 so identical seeds give identical corpora on any
// platform; standard-library distributions are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t below(std::uint64_t n) { return next() % n; }

  double unit() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  std::size_t poisson(double lambda) {
    const double limit = std::exp(-lambda);
    std::size_t k = 0;
    double p = 1.0;
    do {
      ++k;
      p *= unit();
    } while (p > limit);
    return k - 1;
  }

 private:
  std::uint64_t state_;
};

std::vector<std::string> make_vocab(int size) {
  static const char* kOnsets[] = {"b",  "c",  "ch", "d",  "g",  "h",
                                  "k",  "kh", "l",  "m",  "n",  "ng",
                                  "nh", "p",  "ph", "r",  "s",  "t",
                                  "th", "tr", "v",  "x"};
  static const char* kRimes[] = {"a",  "ai", "am", "an", "ang", "ao", "e",
                                 "em", "en", "eo", "i",  "ia",  "im", "in",
                                 "o",  "oi", "om", "on", "u",   "ua", "ui",
                                 "um", "un", "uo", "y"};
  constexpr int kOnsetCount = 22;
  constexpr int kRimeCount = 25;

  std::vector<std::string> vocab;
  vocab.reserve(size);
  for (int i = 0; i < size; ++i) {
    const int combo = i % (kOnsetCount * kRimeCount);
    std::string syllable =
        std::string(kOnsets[combo / kRimeCount]) + kRimes[combo % kRimeCount];
    const int round = i / (kOnsetCount * kRimeCount);
    if (round > 0) syllable += std::to_string(round);
    vocab.push_back(std::move(syllable));
  }
  return vocab;
}

using Word = std::vector<std::string>;

}  // namespace

SynthResult generate(const SynthConfig& cfg) {
  if (cfg.vocab_size < 2) throw ConfigError("vocab_size must be >= 2");
  if (cfg.lexicon_size < 1) throw ConfigError("lexicon_size must be >= 1");
  if (cfg.overlap_rate < 0.0 || cfg.overlap_rate > 1.0)
    throw ConfigError("overlap_rate must be within [0, 1]");
  if (cfg.sentences < 1) throw ConfigError("sentences must be >= 1");
  if (cfg.mean_len <= 0.0 || cfg.mean_len > 1000.0)
    throw ConfigError("mean_len must be within (0, 1000]");

  Rng rng(cfg.seed);
  const auto vocab = make_vocab(cfg.vocab_size);
  const auto pick_syllable = [&] { return vocab[rng.below(vocab.size())]; };

  std::set<Word> word_set;
  std::set<Word> proper_prefixes;

  const auto accept = [&](const Word& w) {
    word_set.insert(w);
    for (std::size_t len = 1; len < w.size(); ++len)
      proper_prefixes.insert(Word(w.begin(), w.begin() + len));
  };
  const auto prefix_conflict = [&](const Word& w) {
    if (proper_prefixes.contains(w)) return true;  // w prefixes a word
    for (std::size_t len = 1; len < w.size(); ++len) {
      if (word_set.contains(Word(w.begin(), w.begin() + len))) return true;
    }
    return false;
  };

  struct TrapGroup {
    Word single;  // [a]
    Word right;   // [b c]
  };
  std::vector<TrapGroup> traps;

  // Saturation shows up as a long run of rejected samples; a bound on
  // consecutive failures detects it without scaling with the request.
  std::size_t consecutive_failures = 0;
  const auto spend = [&] {
    if (++consecutive_failures > 20000)
      throw ConfigError(
          "lexicon_size is infeasible for the requested vocabulary");
  };
  const auto accepted = [&] { consecutive_failures = 0; };

  const auto group_target = static_cast<std::size_t>(
      cfg.overlap_rate * cfg.lexicon_size / 3.0);
  while (traps.size() < group_target) {
    spend();
    const std::string a = pick_syllable();
    const std::string b = pick_syllable();
    const std::string c = pick_syllable();
    if (a == b || b == c || a == c) continue;
    const Word left{a, b}, right{b, c}, single{a};
    if (word_set.contains(left) || word_set.contains(right) ||
        word_set.contains(single))
      continue;
    // Keep the ambiguity exactly the designed one: [a] < [a b].
    if (proper_prefixes.contains(left) || proper_prefixes.contains(right) ||
        proper_prefixes.contains(single))
      continue;
    if (word_set.contains(Word{b})) continue;
    accept(single);
    accept(left);
    accept(right);
    traps.push_back({single, right});
    accepted();
  }

  while (word_set.size() < static_cast<std::size_t>(cfg.lexicon_size)) {
    spend();
    const double r = rng.unit();
    const std::size_t len = r < 0.35 ? 1 : (r < 0.85 ? 2 : 3);
    Word w;
    w.reserve(len);
    for (std::size_t i = 0; i < len; ++i) w.push_back(pick_syllable());
    if (word_set.contains(w) || prefix_conflict(w)) continue;
    accept(w);
    accepted();
  }

  const std::vector<Word> lexicon_words(word_set.begin(), word_set.end());
  const double trap_prob = traps.empty() ? 0.0 : 0.35 * cfg.overlap_rate;

  SynthResult result;
  result.gold.sentences.reserve(cfg.sentences);
  for (int s = 0; s < cfg.sentences; ++s) {
    const std::size_t target = std::max<std::size_t>(
        1, rng.poisson(cfg.mean_len));
    TaggedSentence sentence;
    std::size_t words = 0;
    while (words < target) {
      const Word* emit[2] = {nullptr, nullptr};
      if (!traps.empty() && rng.unit() < trap_prob) {
        const auto& g = traps[rng.below(traps.size())];
        emit[0] = &g.single;
        emit[1] = &g.right;
      } else {
        emit[0] = &lexicon_words[rng.below(lexicon_words.size())];
      }
      for (const Word* w : emit) {
        if (!w) break;
        for (std::size_t i = 0; i < w->size(); ++i)
          sentence.items.push_back(
              {(*w)[i], i == 0 ? SegTag::B : SegTag::I});
        ++words;
      }
    }
    result.gold.sentences.push_back(std::move(sentence));
  }

  result.lexicon = Lexicon::from_words(lexicon_words);
  return result;
}

}  // namespace rdrseg
