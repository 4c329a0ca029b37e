#include "rdrseg/learner.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <unordered_map>
#include <unordered_set>

#include "rdrseg/errors.hpp"
#include "rdrseg/evaluation.hpp"
#include "rdrseg/pipeline.hpp"
#include "rdrseg/templates.hpp"

namespace rdrseg {

namespace {

constexpr char kKeySep = '\x1F';

struct CaseView {
  const ContextTuple* tuple;
  SegTag gold;
  std::uint32_t weight;
};

std::string projection_key(const ContextTuple& t, int template_idx) {
  std::string key;
  for (Field f : template_fields(template_idx)) {
    key += field_text(t, f);
    key += kKeySep;
  }
  return key;
}

struct Candidate {
  std::int64_t score = 0;
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  int template_idx = 0;
  int arity = 0;
  std::string key;
  Conclusion conclusion = Conclusion::B;
};

// Strict total order over distinct candidates, so the choice does not
// depend on hash iteration order.
bool better(const Candidate& x, const Candidate& y) {
  if (x.score != y.score) return x.score > y.score;
  if (x.a != y.a) return x.a > y.a;
  if (x.arity != y.arity) return x.arity < y.arity;
  if (x.template_idx != y.template_idx) return x.template_idx < y.template_idx;
  if (x.key != y.key) return x.key < y.key;
  return x.conclusion < y.conclusion;
}

Rule materialize(const Candidate& c) {
  const auto fields = template_fields(c.template_idx);
  std::vector<Clause> clauses;
  clauses.reserve(fields.size());
  std::size_t pos = 0;
  for (Field f : fields) {
    const std::size_t sep = c.key.find(kKeySep, pos);
    clauses.push_back({f, c.key.substr(pos, sep - pos)});
    pos = sep + 1;
  }
  return Rule{Condition{std::move(clauses)}, c.conclusion};
}

// Per-node candidate state: grouped (a, b) tallies per template over the
// current error cases, plus the projections of correctly handled cases
// when the collision constraint applies. Kept incrementally while a node
// is being processed, so each selection only walks surviving groups.
class TemplateIndex {
 public:
  explicit TemplateIndex(bool constrained) : constrained_(constrained) {}

  void add_wrong(const ContextTuple& t, SegTag gold, std::uint32_t w) {
    for (int tmpl = 0; tmpl < kTemplateCount; ++tmpl) {
      auto& tally = groups_[tmpl][projection_key(t, tmpl)];
      (gold == SegTag::B ? tally.first : tally.second) += w;
    }
  }

  void remove_wrong(const ContextTuple& t, SegTag gold, std::uint32_t w) {
    for (int tmpl = 0; tmpl < kTemplateCount; ++tmpl) {
      auto it = groups_[tmpl].find(projection_key(t, tmpl));
      if (it == groups_[tmpl].end()) continue;
      (gold == SegTag::B ? it->second.first : it->second.second) -= w;
      if (it->second.first == 0 && it->second.second == 0)
        groups_[tmpl].erase(it);
    }
  }

  void add_correct(const ContextTuple& t) {
    for (int tmpl = 0; tmpl < kTemplateCount; ++tmpl)
      blocked_[tmpl].insert(projection_key(t, tmpl));
  }

  bool blocks(int tmpl, const std::string& key) const {
    return constrained_ && blocked_[tmpl].contains(key);
  }

  std::optional<Candidate> best(int threshold) const {
    std::optional<Candidate> found;
    for (int tmpl = 0; tmpl < kTemplateCount; ++tmpl) {
      const int arity = static_cast<int>(template_fields(tmpl).size());
      for (const auto& [key, tally] : groups_[tmpl]) {
        if (blocks(tmpl, key)) continue;
        for (const Conclusion concl : {Conclusion::B, Conclusion::I}) {
          const std::uint32_t a =
              concl == Conclusion::B ? tally.first : tally.second;
          const std::uint32_t b =
              concl == Conclusion::B ? tally.second : tally.first;
          if (a == 0) continue;  // no case instantiates this conclusion
          const std::int64_t score =
              static_cast<std::int64_t>(a) - static_cast<std::int64_t>(b);
          if (score < threshold) continue;
          Candidate cand{score, a, b, tmpl, arity, key, concl};
          if (!found || better(cand, *found)) found = std::move(cand);
        }
      }
    }
    return found;
  }

 private:
  bool constrained_;
  std::array<
      std::unordered_map<std::string, std::pair<std::uint32_t, std::uint32_t>>,
      kTemplateCount>
      groups_;
  std::array<std::unordered_set<std::string>, kTemplateCount> blocked_;
};

std::optional<Candidate> pick_rule(std::span<const CaseView> wrong,
                                   std::span<const CaseView> correct,
                                   bool constrain, int threshold) {
  TemplateIndex index(constrain);
  for (const auto& view : wrong)
    index.add_wrong(*view.tuple, view.gold, view.weight);
  if (constrain) {
    for (const auto& view : correct) index.add_correct(*view.tuple);
  }
  return index.best(threshold);
}

std::uint32_t case_weight(const LearnerConfig& cfg, std::uint32_t count) {
  return cfg.counting_mode == CountingMode::Tokens ? count : 1u;
}

}  // namespace

NodeErrorSet compute_error_set(const ScrdrTree& tree, std::int32_t node_id,
                               const ContextDictionary& dict) {
  const Node& node = tree.node(node_id);
  NodeErrorSet out;
  out.node_id = node_id;
  for (const auto& entry : dict.entries()) {
    if (tree.evaluate_firing(entry.tuple) != node_id) continue;
    if (apply_conclusion(node.rule.conclusion, entry.tuple) == entry.gold)
      continue;
    out.cases.push_back({entry.tuple, entry.gold, entry.count});
  }
  return out;
}

std::optional<RuleScore> select_rule(const ScrdrTree& tree,
                                     std::int32_t node_id,
                                     const NodeErrorSet& errors,
                                     std::span<const Case> correct,
                                     const LearnerConfig& cfg) {
  tree.node(node_id);  // existence check
  if (errors.cases.empty()) return std::nullopt;

  std::vector<CaseView> wrong_views;
  wrong_views.reserve(errors.cases.size());
  for (const auto& c : errors.cases)
    wrong_views.push_back({&c.tuple, c.gold, case_weight(cfg, c.count)});

  std::vector<CaseView> correct_views;
  correct_views.reserve(correct.size());
  for (const auto& c : correct)
    correct_views.push_back({&c.tuple, c.gold, case_weight(cfg, c.count)});

  auto cand = pick_rule(wrong_views, correct_views, node_id > 2,
                        cfg.threshold);
  if (!cand) return std::nullopt;
  return RuleScore{materialize(*cand), cand->a, cand->b, cand->template_idx};
}

LearnResult learn(const Corpus& gold, const Lexicon& lex,
                  const LearnerConfig& cfg) {
  if (gold.sentences.empty()) throw EmptyInput("training corpus is empty");
  if (lex.size() == 0) throw EmptyLexicon("lexicon is empty");
  if (cfg.threshold < 1) throw ConfigError("threshold must be >= 1");
  if (cfg.max_rules < 1) throw ConfigError("max_rules must be >= 1");

  const auto started = std::chrono::steady_clock::now();
  LearnResult result{ScrdrTree::make_initial(), {}};
  auto& tree = result.tree;
  auto& stats = result.stats;
  stats.sentences = gold.sentences.size();

  Corpus init;
  init.sentences.reserve(gold.sentences.size());
  for (const auto& sentence : gold.sentences) {
    init.sentences.push_back(longest_match(to_raw(sentence), lex));
    const auto& is = init.sentences.back();
    stats.positions += is.size();
    for (std::size_t p = 0; p < is.size(); ++p) {
      if (is.items[p].tag != sentence.items[p].tag) ++stats.initial_errors;
    }
  }

  const ContextDictionary dict = build_context_dictionary(init, gold);
  stats.dictionary_entries = dict.size();

  const auto& entries = dict.entries();
  const auto entry_count = entries.size();
  std::vector<std::int32_t> firing(entry_count);
  std::vector<std::uint8_t> wrong(entry_count);
  std::vector<std::vector<std::uint32_t>> buckets(tree.node_count());
  for (std::size_t i = 0; i < entry_count; ++i) {
    const auto f = tree.evaluate_firing(entries[i].tuple);
    firing[i] = f;
    wrong[i] =
        apply_conclusion(tree.node(f).rule.conclusion, entries[i].tuple) !=
        entries[i].gold;
    buckets[f].push_back(static_cast<std::uint32_t>(i));
  }

  std::deque<std::int32_t> queue{1, 2};

  while (!queue.empty() && !stats.rule_cap_hit) {
    const std::int32_t n = queue.front();
    queue.pop_front();
    const bool exempt = n <= 2;

    TemplateIndex index(!exempt);
    for (const auto idx : buckets[n]) {
      const auto& entry = entries[idx];
      if (wrong[idx])
        index.add_wrong(entry.tuple, entry.gold, case_weight(cfg, entry.count));
      else if (!exempt)
        index.add_correct(entry.tuple);
    }

    for (;;) {
      auto cand = index.best(cfg.threshold);
      if (!cand) break;
      if (stats.attachments.size() >= cfg.max_rules) {
        stats.rule_cap_hit = true;
        break;
      }
      if (index.blocks(cand->template_idx, cand->key))
        throw InternalError("selected a rule blocked by correct cases");

      Rule rule = materialize(*cand);
      const Conclusion concl = rule.conclusion;
      const std::int32_t fresh = tree.attach_exception(n, rule);
      buckets.resize(tree.node_count());

      // Re-home the covered entries; everything else keeps firing at n.
      auto& bucket = buckets[n];
      std::size_t keep = 0;
      for (const auto idx : bucket) {
        const auto& entry = entries[idx];
        if (satisfies(entry.tuple, rule.condition)) {
          if (wrong[idx]) {
            index.remove_wrong(entry.tuple, entry.gold,
                               case_weight(cfg, entry.count));
          } else if (!exempt) {
            // Impossible by construction: the winner shares no projection
            // with a correct case at a constrained node.
            throw InternalError("correct case captured at constrained node");
          }
          firing[idx] = fresh;
          wrong[idx] = apply_conclusion(concl, entry.tuple) != entry.gold;
          buckets[fresh].push_back(idx);
        } else {
          bucket[keep++] = idx;
        }
      }
      bucket.resize(keep);

      stats.attachments.push_back({fresh, n, std::move(rule), cand->a,
                                   cand->b, cfg.threshold, exempt,
                                   /*collisions=*/0});
      queue.push_back(fresh);
    }
  }

  for (std::size_t si = 0; si < init.sentences.size(); ++si) {
    const auto corrected = correct_tags(init.sentences[si], tree);
    const auto& gs = gold.sentences[si];
    for (std::size_t p = 0; p < corrected.size(); ++p) {
      if (corrected[p] != gs.items[p].tag) ++stats.final_errors;
    }
  }

  stats.seconds = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - started)
                      .count();
  return result;
}

TuneReport tune_threshold(const Corpus& train, const Corpus& dev,
                          const Lexicon& lex, std::span<const int> candidates,
                          CountingMode mode) {
  if (candidates.empty())
    throw ConfigError("no threshold candidates to tune over");
  if (dev.sentences.empty()) throw EmptyInput("development corpus is empty");

  TuneReport report;
  for (const int threshold : candidates) {
    LearnerConfig cfg;
    cfg.threshold = threshold;
    cfg.counting_mode = mode;
    auto lr = learn(train, lex, cfg);

    Corpus pred;
    pred.sentences.reserve(dev.sentences.size());
    for (const auto& sentence : dev.sentences)
      pred.sentences.push_back(
          segment_sentence(to_raw(sentence), lex, lr.tree));

    const auto rep = score(dev, pred);
    report.runs.push_back({threshold, rep.f1, lr.stats.rules_learned()});
  }

  const ThresholdRun* best = &report.runs.front();
  for (const auto& run : report.runs) {
    if (run.f1 > best->f1 ||
        (run.f1 == best->f1 && run.threshold < best->threshold))
      best = &run;
  }
  report.best = best->threshold;
  return report;
}

std::optional<std::string> audit_training(const TrainStats& stats) {
  for (const auto& att : stats.attachments) {
    const std::int64_t score =
        static_cast<std::int64_t>(att.a) - static_cast<std::int64_t>(att.b);
    if (score < att.threshold)
      return "rule at node " + std::to_string(att.node_id) +
             " was attached with a-b=" + std::to_string(score) +
             " below threshold " + std::to_string(att.threshold);
    if (att.exempt != (att.attached_at <= 2))
      return "rule at node " + std::to_string(att.node_id) +
             " has an inconsistent exemption flag";
    if (!att.exempt && att.collisions != 0)
      return "rule at node " + std::to_string(att.node_id) + " collides with " +
             std::to_string(att.collisions) + " correct cases";
  }
  if (!stats.attachments.empty() &&
      stats.final_errors >= stats.initial_errors) {
    return "training error did not improve: " +
           std::to_string(stats.initial_errors) + " -> " +
           std::to_string(stats.final_errors);
  }
  return std::nullopt;
}

}  // namespace rdrseg
