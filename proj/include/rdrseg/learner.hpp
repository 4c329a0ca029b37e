#ifndef RDRSEG_LEARNER_HPP
#define RDRSEG_LEARNER_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rdrseg/context.hpp"
#include "rdrseg/corpus.hpp"
#include "rdrseg/lexicon.hpp"
#include "rdrseg/scrdr.hpp"

namespace rdrseg {

// Whether rule scores count distinct tuples or their corpus occurrences.
enum class CountingMode : std::uint8_t { Types, Tokens };

struct LearnerConfig {
  int threshold = 2;
  CountingMode counting_mode = CountingMode::Types;
  // Safety cap on learned rules; training stops and reports if reached.
  std::size_t max_rules = 100000;
};

struct Case {
  ContextTuple tuple;
  SegTag gold;
  std::uint32_t count = 1;
};

// Dictionary entries that fire at one node with a wrong conclusion.
struct NodeErrorSet {
  std::int32_t node_id = -1;
  std::vector<Case> cases;
};

struct RuleScore {
  Rule rule;
  std::uint32_t a = 0;  // covered cases the rule corrects
  std::uint32_t b = 0;  // covered cases the rule still gets wrong
  int template_idx = -1;
};

// One learned rule, with the evidence recorded at attach time.
struct Attachment {
  std::int32_t node_id;      // the new node
  std::int32_t attached_at;  // the node whose errors it corrects
  Rule rule;
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  int threshold = 0;
  // Constraint on clashing with already-correct cases does not apply to
  // the three initial nodes; `collisions` is meaningful when !exempt.
  bool exempt = false;
  std::uint32_t collisions = 0;
};

struct TrainStats {
  std::size_t sentences = 0;
  std::size_t positions = 0;
  std::size_t dictionary_entries = 0;
  std::size_t initial_errors = 0;  // initializer tag errors vs gold
  std::size_t final_errors = 0;    // corrected tag errors vs gold
  std::vector<Attachment> attachments;
  bool rule_cap_hit = false;
  double seconds = 0.0;

  std::size_t rules_learned() const { return attachments.size(); }
};

struct LearnResult {
  ScrdrTree tree;
  TrainStats stats;
};

NodeErrorSet compute_error_set(const ScrdrTree& tree, std::int32_t node_id,
                               const ContextDictionary& dict);

// Candidate pool = template instantiations over the error cases. Rules
// colliding with any correctly handled case are dropped unless the node is
// one of the three initial nodes; survivors need a - b >= threshold. Ties
// break toward larger a, fewer clauses, earlier template, then smaller
// field values.
std::optional<RuleScore> select_rule(const ScrdrTree& tree,
                                     std::int32_t node_id,
                                     const NodeErrorSet& errors,
                                     std::span<const Case> correct,
                                     const LearnerConfig& cfg);

// Error-driven tree construction: initialize, then repeatedly grow
// exception rules under each node until no candidate meets the threshold.
LearnResult learn(const Corpus& gold, const Lexicon& lex,
                  const LearnerConfig& cfg);

struct ThresholdRun {
  int threshold = 0;
  double f1 = 0.0;
  std::size_t rules = 0;
};

struct TuneReport {
  std::vector<ThresholdRun> runs;
  int best = 0;
};

// Learns one tree per candidate threshold on `train`, scores each on
// `dev`, and picks the best F1 (smallest threshold on ties).
TuneReport tune_threshold(const Corpus& train, const Corpus& dev,
                          const Lexicon& lex, std::span<const int> candidates,
                          CountingMode mode = CountingMode::Types);

// Re-checks the evidence recorded in the stats: every attachment met the
// threshold, non-exempt attachments collided with nothing, and training
// error went down whenever a rule was learned. Returns a reason string on
// failure.
std::optional<std::string> audit_training(const TrainStats& stats);

}  // namespace rdrseg

#endif  // RDRSEG_LEARNER_HPP
