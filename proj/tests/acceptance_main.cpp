// Acceptance suite: exercises the toolkit end to end and prints one
// PASS/FAIL line per criterion. Exits nonzero when a hard criterion fails;
// SKIP and WARN lines do not fail the run.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "rdrseg/corpus.hpp"
#include "rdrseg/errors.hpp"
#include "rdrseg/evaluation.hpp"
#include "rdrseg/learner.hpp"
#include "rdrseg/lexicon.hpp"
#include "rdrseg/pipeline.hpp"
#include "rdrseg/scrdr.hpp"
#include "rdrseg/synthetic.hpp"
#include "rdrseg/templates.hpp"
#include "rdrseg/unicode.hpp"
#include "test_util.hpp"

using namespace rdrseg;

namespace {

enum class Status { Pass, Fail, Skip, Warn };

struct CriterionResult {
  std::string name;
  Status status = Status::Fail;
  std::string detail;
  double seconds = 0.0;
};

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

std::string format_rate(double v) {
  char buf[64];
  if (v >= 1e6)
    std::snprintf(buf, sizeof(buf), "%.2fM", v / 1e6);
  else
    std::snprintf(buf, sizeof(buf), "%.0fk", v / 1e3);
  return buf;
}

Corpus segment_corpus(const Corpus& gold, const Lexicon& lex,
                      const ScrdrTree& tree) {
  Corpus pred;
  pred.sentences.reserve(gold.sentences.size());
  for (const auto& s : gold.sentences)
    pred.sentences.push_back(segment_sentence(to_raw(s), lex, tree));
  return pred;
}

Corpus baseline_corpus(const Corpus& gold, const Lexicon& lex) {
  Corpus pred;
  pred.sentences.reserve(gold.sentences.size());
  for (const auto& s : gold.sentences)
    pred.sentences.push_back(longest_match(to_raw(s), lex));
  return pred;
}

// ---------------------------------------------------------------------------
// 1. Corpus round-trip property

CriterionResult criterion_roundtrip() {
  CriterionResult r{"corpus round-trip", Status::Fail, "", 0};
  Timer timer;
  std::mt19937 rng(11);
  for (int i = 0; i < 1000; ++i) {
    const auto line = testutil::random_underscore_line(rng);
    if (to_underscore(parse_underscore(line)) != line) {
      r.detail = "line changed after parse/serialize: \"" + line + "\"";
      return r;
    }
  }
  r.seconds = timer.seconds();
  if (r.seconds >= 1.0) {
    r.detail = "exceeded the 1 s budget";
    return r;
  }
  r.status = Status::Pass;
  r.detail = "1000 randomized sentences survive parse/serialize unchanged";
  return r;
}

// ---------------------------------------------------------------------------
// 2. Longest-matching oracle equivalence

CriterionResult criterion_matcher_oracle() {
  CriterionResult r{"longest-matching oracle equivalence", Status::Fail, "",
                    0};
  Timer timer;
  std::mt19937 rng(22);
  static const std::vector<std::string> kAlphabet = {"sa", "to", "vi", "ne",
                                                     "ko", "ra"};
  std::uniform_int_distribution<std::size_t> syl(0, kAlphabet.size() - 1);
  std::uniform_int_distribution<int> n_words(0, 20);
  std::uniform_int_distribution<int> word_len(1, 4);
  std::uniform_int_distribution<int> sent_len(1, 12);

  for (int iter = 0; iter < 10000; ++iter) {
    std::vector<std::vector<std::string>> words;
    const int w = n_words(rng);
    for (int i = 0; i < w; ++i) {
      std::vector<std::string> word;
      const int len = word_len(rng);
      for (int k = 0; k < len; ++k) word.push_back(kAlphabet[syl(rng)]);
      words.push_back(std::move(word));
    }
    const auto lex = Lexicon::from_words(words);

    std::vector<std::string> sentence;
    const int n = sent_len(rng);
    for (int k = 0; k < n; ++k) sentence.push_back(kAlphabet[syl(rng)]);

    const auto got = longest_match(sentence, lex);
    const auto want = testutil::oracle_greedy_tags(sentence, lex.words());
    for (std::size_t p = 0; p < sentence.size(); ++p) {
      if (got.items[p].tag != want[p] || got.items[p].surface != sentence[p]) {
        r.detail = "mismatch at iteration " + std::to_string(iter) +
                   ", position " + std::to_string(p);
        return r;
      }
    }
  }
  r.seconds = timer.seconds();
  if (r.seconds >= 10.0) {
    r.detail = "exceeded the 10 s budget";
    return r;
  }
  r.status = Status::Pass;
  r.detail = "10000 randomized cases match the brute-force greedy oracle";
  return r;
}

// ---------------------------------------------------------------------------
// 3. Rule-tree evaluation oracle equivalence

CriterionResult criterion_scrdr_oracle() {
  CriterionResult r{"rule-tree evaluation oracle equivalence", Status::Fail,
                    "", 0};
  Timer timer;
  std::mt19937 rng(33);
  for (int iter = 0; iter < 10000; ++iter) {
    const auto tree = testutil::random_tree(rng, 50);
    const auto tuple = testutil::random_tuple(rng);
    const auto got = tree.evaluate(tuple);
    if (got.tag != testutil::oracle_tag(tree, tuple) ||
        got.firing_node != testutil::oracle_firing(tree, tuple) ||
        got.path != testutil::oracle_path(tree, tuple)) {
      r.detail = "descent mismatch at iteration " + std::to_string(iter);
      return r;
    }
  }
  r.status = Status::Pass;
  r.detail =
      "10000 randomized (tree, tuple) cases match the naive descent "
      "interpreter";
  r.seconds = timer.seconds();
  return r;
}

// ---------------------------------------------------------------------------
// 4. Worked micro-example reproduction

CriterionResult criterion_micro(std::vector<TrainStats>& audit_log) {
  CriterionResult r{"worked-example reproduction", Status::Fail, "", 0};
  Timer timer;

  const Corpus gold{{parse_underscore("thuế_thu_nhập cá_nhân")}, ""};
  const auto lex =
      Lexicon::from_words({{"thuế"}, {"thu", "nhập"}, {"cá", "nhân"}});

  Corpus init;
  init.sentences.push_back(longest_match(to_raw(gold.sentences[0]), lex));
  const auto dict = build_context_dictionary(init, gold);
  if (dict.size() != 5) {
    r.detail =
        "expected 5 dictionary rows, got " + std::to_string(dict.size());
    return r;
  }

  const auto tuples = make_tuples(init.sentences[0]);
  std::size_t error_rows = 0;
  for (std::size_t p = 0; p < tuples.size(); ++p) {
    const auto* entry = dict.find(tuples[p]);
    if (entry == nullptr) {
      r.detail =
          "dictionary is missing the tuple of position " + std::to_string(p);
      return r;
    }
    const bool is_error = entry->gold != entry->tuple.center_tag();
    if (is_error) {
      ++error_rows;
      if (p != 1 || entry->gold != SegTag::I) {
        r.detail = "the error row is not position 1 with gold I";
        return r;
      }
    }
  }
  if (error_rows != 1) {
    r.detail =
        "expected exactly one error row, got " + std::to_string(error_rows);
    return r;
  }

  LearnerConfig cfg;
  cfg.threshold = 1;
  const auto lr = learn(gold, lex, cfg);
  audit_log.push_back(lr.stats);
  if (lr.stats.rules_learned() < 1) {
    r.detail = "no rule was learned at threshold 1";
    return r;
  }
  const auto segmented =
      to_underscore(segment_sentence(to_raw(gold.sentences[0]), lex, lr.tree));
  if (segmented != "thuế_thu_nhập cá_nhân") {
    r.detail = "re-segmentation produced \"" + segmented + "\"";
    return r;
  }

  r.status = Status::Pass;
  r.detail = "5 dictionary rows with position 1 as the only error; " +
             std::to_string(lr.stats.rules_learned()) +
             " rules learned; training sentence re-segmented to gold";
  r.seconds = timer.seconds();
  return r;
}

// ---------------------------------------------------------------------------
// 6. Synthetic end-to-end improvement (computed before 5 so its stats join
//    the audit)

struct SynthArtifacts {
  Lexicon lexicon;
  ScrdrTree tree = ScrdrTree::make_initial();
  bool valid = false;
};

CriterionResult criterion_synthetic(std::vector<TrainStats>& audit_log,
                                    SynthArtifacts& artifacts) {
  CriterionResult r{"synthetic end-to-end improvement", Status::Fail, "", 0};
  Timer timer;

  SynthConfig scfg;
  scfg.seed = 1;
  scfg.vocab_size = 50;
  scfg.lexicon_size = 200;
  scfg.overlap_rate = 0.3;
  scfg.sentences = 5500;
  scfg.mean_len = 8.0;
  const auto data = generate(scfg);

  Corpus train, test;
  train.sentences.assign(data.gold.sentences.begin(),
                         data.gold.sentences.begin() + 5000);
  test.sentences.assign(data.gold.sentences.begin() + 5000,
                        data.gold.sentences.end());

  LearnerConfig cfg;
  cfg.threshold = 2;
  const auto lr = learn(train, data.lexicon, cfg);
  audit_log.push_back(lr.stats);

  const auto base_train = score(train, baseline_corpus(train, data.lexicon));
  const auto corr_train =
      score(train, segment_corpus(train, data.lexicon, lr.tree));
  const auto base_test = score(test, baseline_corpus(test, data.lexicon));
  const auto corr_test =
      score(test, segment_corpus(test, data.lexicon, lr.tree));

  r.seconds = timer.seconds();
  char detail[256];
  std::snprintf(detail, sizeof(detail),
                "test F1 %.2f vs baseline %.2f; train F1 %.2f vs baseline "
                "%.2f; %zu rules",
                corr_test.f1 * 100, base_test.f1 * 100, corr_train.f1 * 100,
                base_train.f1 * 100, lr.stats.rules_learned());
  r.detail = detail;

  if (corr_test.f1 < base_test.f1) {
    r.detail += "; corrected test F1 fell below the baseline";
    return r;
  }
  if (corr_train.f1 <= base_train.f1) {
    r.detail += "; corrected train F1 is not strictly higher";
    return r;
  }
  if (r.seconds >= 60.0) {
    r.detail += "; exceeded the 60 s budget";
    return r;
  }

  artifacts.lexicon = data.lexicon;
  artifacts.tree = lr.tree;
  artifacts.valid = true;
  r.status = Status::Pass;
  return r;
}

// ---------------------------------------------------------------------------
// 5. Learner soundness audit over every training run of this suite

CriterionResult criterion_audit(std::vector<TrainStats>& audit_log) {
  CriterionResult r{"learner soundness audit", Status::Fail, "", 0};
  Timer timer;

  // Additional configurations beyond the runs already logged.
  SynthConfig scfg;
  scfg.seed = 5;
  scfg.sentences = 1500;
  const auto data = generate(scfg);
  for (const auto& [threshold, mode] :
       std::vector<std::pair<int, CountingMode>>{
           {1, CountingMode::Types},
           {3, CountingMode::Types},
           {2, CountingMode::Tokens}}) {
    LearnerConfig cfg;
    cfg.threshold = threshold;
    cfg.counting_mode = mode;
    audit_log.push_back(learn(data.gold, data.lexicon, cfg).stats);
  }

  std::size_t attachments = 0;
  for (std::size_t i = 0; i < audit_log.size(); ++i) {
    const auto& stats = audit_log[i];
    attachments += stats.attachments.size();
    if (const auto reason = audit_training(stats)) {
      r.detail = "run " + std::to_string(i) + ": " + *reason;
      return r;
    }
    if (stats.rule_cap_hit) {
      r.detail = "run " + std::to_string(i) + " hit the rule cap";
      return r;
    }
  }

  r.status = Status::Pass;
  r.detail = std::to_string(audit_log.size()) + " training runs, " +
             std::to_string(attachments) +
             " attachments: a-b >= threshold everywhere, zero collisions "
             "past the initial nodes, error strictly reduced";
  r.seconds = timer.seconds();
  return r;
}

// ---------------------------------------------------------------------------
// 7. Paper-scale reproduction (needs the licensed VLSP treebank)

CriterionResult criterion_paper_scale() {
  CriterionResult r{"paper-scale reproduction", Status::Fail, "", 0};
  const char* train_path = std::getenv("RDRSEG_VLSP_TRAIN");
  const char* test_path = std::getenv("RDRSEG_VLSP_TEST");
  const char* lexicon_path = std::getenv("RDRSEG_VLSP_LEXICON");
  if (!train_path || !test_path || !lexicon_path) {
    r.status = Status::Skip;
    r.detail =
        "licensed VLSP treebank not available; set RDRSEG_VLSP_TRAIN, "
        "RDRSEG_VLSP_TEST and RDRSEG_VLSP_LEXICON to run";
    return r;
  }

  Timer timer;
  const auto lex = Lexicon::load(lexicon_path);
  const auto train = read_corpus(train_path);
  const auto test = read_corpus(test_path);

  LearnerConfig cfg;
  cfg.threshold = 2;
  const auto lr = learn(train, lex, cfg);
  const auto rules = lr.stats.rules_learned();

  const auto report = score(test, segment_corpus(test, lex, lr.tree));
  const double f1_pct = report.f1 * 100.0;

  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "%zu rules (expected 1447 +/- 10%%), test F1 %.2f "
                "(expected 97.90 +/- 0.30)",
                rules, f1_pct);
  r.detail = detail;
  r.seconds = timer.seconds();

  const double rule_gap =
      std::abs(static_cast<double>(rules) - 1447.0) / 1447.0;
  if (rule_gap <= 0.10 && std::abs(f1_pct - 97.90) <= 0.30)
    r.status = Status::Pass;
  return r;
}

// ---------------------------------------------------------------------------
// 8. Throughput sanity (warning only)

CriterionResult criterion_throughput(const SynthArtifacts& artifacts) {
  CriterionResult r{"throughput sanity", Status::Fail, "", 0};
  Timer timer;

  // Same seed as the end-to-end criterion: the lexicon matches the text,
  // so trie walks and rule lookups run at realistic depth.
  SynthConfig scfg;
  scfg.seed = 1;
  scfg.sentences = 7000;  // ~110k syllables
  const auto data = generate(scfg);

  std::size_t syllables = 0;
  for (const auto& s : data.gold.sentences) syllables += s.size();
  if (syllables < 100000) {
    r.detail = "generated corpus is too small: " + std::to_string(syllables);
    return r;
  }

  testutil::TempDir dir;
  const auto raw_path = dir.file("raw.txt");
  {
    std::string text;
    for (const auto& s : data.gold.sentences) {
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (i > 0) text += ' ';
        text += s.items[i].surface;
      }
      text += '\n';
    }
    testutil::write_file(raw_path, text);
  }

  // Segment with the tree learned in the end-to-end criterion when
  // available, so the walk includes a realistic rule set.
  const Lexicon& lex = artifacts.valid ? artifacts.lexicon : data.lexicon;
  const ScrdrTree tree =
      artifacts.valid ? artifacts.tree : ScrdrTree::make_initial();

  const auto report = benchmark(raw_path, lex, tree, 3);
  r.seconds = timer.seconds();

  char detail[200];
  std::snprintf(detail, sizeof(detail),
                "%s syllables/s, %s words/s single-threaded over %zu "
                "syllables (floor 50k syllables/s; reference 62k words/s)",
                format_rate(report.syllables_per_second).c_str(),
                format_rate(report.words_per_second).c_str(),
                report.syllables);
  r.detail = detail;
  r.status =
      report.syllables_per_second >= 50000.0 ? Status::Pass : Status::Warn;
  return r;
}

// ---------------------------------------------------------------------------
// 9. Determinism of the train command

CriterionResult criterion_determinism() {
  CriterionResult r{"train determinism", Status::Fail, "", 0};
  Timer timer;
  testutil::TempDir dir;

  SynthConfig scfg;
  scfg.seed = 9;
  scfg.sentences = 500;
  const auto data = generate(scfg);

  const auto gold_path = dir.file("gold.txt");
  write_corpus(data.gold, gold_path);
  const auto lex_path = dir.file("lexicon.txt");
  {
    std::string text;
    for (const auto& word : data.lexicon.words()) {
      for (std::size_t i = 0; i < word.size(); ++i) {
        if (i > 0) text += ' ';
        text += word[i];
      }
      text += '\n';
    }
    testutil::write_file(lex_path, text);
  }

  const std::string cli = RDRSEG_CLI_PATH;
  for (const char* model : {"m1.rdr", "m2.rdr"}) {
    const std::string cmd = cli + " train --gold " + gold_path +
                            " --lexicon " + lex_path + " --model " +
                            dir.file(model) + " --threshold 2 > /dev/null";
    if (std::system(cmd.c_str()) != 0) {
      r.detail = "train invocation failed";
      return r;
    }
  }

  const auto m1 = testutil::read_file(dir.file("m1.rdr"));
  const auto m2 = testutil::read_file(dir.file("m2.rdr"));
  r.seconds = timer.seconds();
  if (m1.empty() || m1 != m2) {
    r.detail = "model files differ between identical invocations";
    return r;
  }

  // The written model also matches an in-process training run.
  const auto reloaded = ScrdrTree::load(dir.file("m1.rdr"));
  LearnerConfig cfg;
  cfg.threshold = 2;
  if (learn(data.gold, data.lexicon, cfg).tree != reloaded) {
    r.detail = "written model does not match an in-process training run";
    return r;
  }

  r.status = Status::Pass;
  r.detail = "two identical train invocations wrote byte-identical models (" +
             std::to_string(m1.size()) + " bytes)";
  return r;
}

}  // namespace

int main() {
  std::vector<TrainStats> audit_log;
  SynthArtifacts artifacts;

  std::vector<CriterionResult> results(9);
  results[0] = criterion_roundtrip();
  results[1] = criterion_matcher_oracle();
  results[2] = criterion_scrdr_oracle();
  results[3] = criterion_micro(audit_log);
  results[5] = criterion_synthetic(audit_log, artifacts);
  results[4] = criterion_audit(audit_log);
  results[6] = criterion_paper_scale();
  results[7] = criterion_throughput(artifacts);
  results[8] = criterion_determinism();

  int failed = 0, passed = 0, skipped = 0, warned = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    const char* label = nullptr;
    switch (r.status) {
      case Status::Pass:
        label = "PASS";
        ++passed;
        break;
      case Status::Fail:
        label = "FAIL";
        ++failed;
        break;
      case Status::Skip:
        label = "SKIP";
        ++skipped;
        break;
      case Status::Warn:
        label = "WARN";
        ++warned;
        break;
    }
    std::printf("[%zu/9] %s  %s: %s (%.2fs)\n", i + 1, label, r.name.c_str(),
                r.detail.c_str(), r.seconds);
  }
  std::printf("acceptance: %d passed, %d failed, %d skipped, %d warnings\n",
              passed, failed, skipped, warned);
  return failed == 0 ? 0 : 1;
}
