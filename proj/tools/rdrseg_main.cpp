#include <algorithm>
#include <cstdio>
#include <exception>
#include <fstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rdrseg/corpus.hpp"
#include "rdrseg/errors.hpp"
#include "rdrseg/evaluation.hpp"
#include "rdrseg/learner.hpp"
#include "rdrseg/lexicon.hpp"
#include "rdrseg/pipeline.hpp"
#include "rdrseg/scrdr.hpp"
#include "rdrseg/synthetic.hpp"

namespace {

using nlohmann::json;
using namespace rdrseg;

CountingMode parse_mode(const std::string& mode) {
  if (mode == "types") return CountingMode::Types;
  if (mode == "tokens") return CountingMode::Tokens;
  throw ConfigError("counting mode must be 'types' or 'tokens'");
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

// Key-value learner settings file: `threshold`, `counting-mode` and
// `max-rules` (underscores accepted). Explicit command-line flags win.
void apply_config_file(const std::string& path, bool take_threshold,
                       int& threshold, bool take_mode, std::string& mode,
                       bool take_max_rules, std::size_t& max_rules) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = trim(line);
    if (text.empty() || text.front() == '#' || text.front() == '[') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(line_no) +
                        ": expected key=value");
    auto key = trim(text.substr(0, eq));
    const auto value = trim(text.substr(eq + 1));
    std::replace(key.begin(), key.end(), '_', '-');
    try {
      if (key == "threshold") {
        if (take_threshold) threshold = std::stoi(value);
      } else if (key == "counting-mode") {
        if (take_mode) mode = value;
      } else if (key == "max-rules") {
        if (take_max_rules) max_rules = std::stoul(value);
      } else {
        throw ConfigError(path + ":" + std::to_string(line_no) +
                          ": unknown key \"" + key + "\"");
      }
    } catch (const std::invalid_argument&) {
      throw ConfigError(path + ":" + std::to_string(line_no) +
                        ": bad value for " + key);
    } catch (const std::out_of_range&) {
      throw ConfigError(path + ":" + std::to_string(line_no) +
                        ": bad value for " + key);
    }
  }
}

json attachment_json(const Attachment& att) {
  json j{{"node", att.node_id},
         {"attached_at", att.attached_at},
         {"rule", rule_to_string(att.rule)},
         {"a", att.a},
         {"b", att.b},
         {"threshold", att.threshold},
         {"exempt", att.exempt}};
  if (!att.exempt) j["collisions"] = att.collisions;
  return j;
}

json stats_json(const TrainStats& stats, const ScrdrTree& tree) {
  json attachments = json::array();
  for (const auto& att : stats.attachments)
    attachments.push_back(attachment_json(att));
  return json{{"sentences", stats.sentences},
              {"positions", stats.positions},
              {"dictionary_entries", stats.dictionary_entries},
              {"initial_errors", stats.initial_errors},
              {"final_errors", stats.final_errors},
              {"rules_learned", stats.rules_learned()},
              {"nodes", tree.node_count()},
              {"rule_cap_hit", stats.rule_cap_hit},
              {"seconds", stats.seconds},
              {"attachments", attachments}};
}

int cmd_train(const std::string& gold_path, const std::string& lexicon_path,
              const std::string& model_path, int threshold,
              const std::string& mode, std::size_t max_rules, bool as_json) {
  LearnerConfig cfg;
  cfg.threshold = threshold;
  cfg.counting_mode = parse_mode(mode);
  cfg.max_rules = max_rules;

  const auto lexicon = Lexicon::load(lexicon_path);
  const auto gold = read_corpus(gold_path);
  auto result = learn(gold, lexicon, cfg);
  result.tree.save(model_path);

  if (as_json) {
    auto j = stats_json(result.stats, result.tree);
    j["model"] = model_path;
    std::printf("%s\n", j.dump().c_str());
  } else {
    const auto& s = result.stats;
    std::printf("lexicon entries:    %zu\n", lexicon.size());
    std::printf("training sentences: %zu (%zu syllables)\n", s.sentences,
                s.positions);
    std::printf("dictionary entries: %zu\n", s.dictionary_entries);
    std::printf("initial tag errors: %zu\n", s.initial_errors);
    std::printf("rules learned:      %zu%s\n", s.rules_learned(),
                s.rule_cap_hit ? " (rule cap hit)" : "");
    std::printf("final tag errors:   %zu\n", s.final_errors);
    std::printf("elapsed:            %.3fs\n", s.seconds);
    std::printf("model written:      %s (%d nodes)\n", model_path.c_str(),
                result.tree.node_count());
  }
  return 0;
}

int cmd_segment(const std::string& input, const std::string& lexicon_path,
                const std::string& model_path, const std::string& output,
                int jobs, bool as_json) {
  const auto lexicon = Lexicon::load(lexicon_path);
  const auto tree = ScrdrTree::load(model_path);
  const auto stats = segment_file(input, output, lexicon, tree, jobs);

  if (as_json) {
    json j{{"sentences", stats.sentences},
           {"syllables", stats.syllables},
           {"words", stats.words},
           {"seconds", stats.seconds},
           {"syllables_per_second", stats.syllables_per_second()},
           {"words_per_second", stats.words_per_second()},
           {"output", output}};
    std::printf("%s\n", j.dump().c_str());
  } else {
    std::printf("segmented %zu sentences (%zu syllables, %zu words) in %.3fs\n",
                stats.sentences, stats.syllables, stats.words, stats.seconds);
    std::printf("throughput: %.0f syllables/s, %.0f words/s\n",
                stats.syllables_per_second(), stats.words_per_second());
  }
  return 0;
}

int cmd_eval(const std::string& gold_path, const std::string& pred_path,
             bool as_json) {
  const auto gold = read_corpus(gold_path);
  const auto pred = read_corpus(pred_path);
  const auto report = score(gold, pred);

  if (as_json) {
    json j{{"precision", report.precision}, {"recall", report.recall},
           {"f1", report.f1},               {"matched", report.matched},
           {"predicted", report.predicted}, {"gold", report.gold}};
    std::printf("%s\n", j.dump().c_str());
  } else {
    std::printf("precision: %.2f\n", report.precision * 100.0);
    std::printf("recall:    %.2f\n", report.recall * 100.0);
    std::printf("f1:        %.2f\n", report.f1 * 100.0);
    std::printf("matched %zu of %zu predicted / %zu gold words\n",
                report.matched, report.predicted, report.gold);
  }
  return 0;
}

int cmd_tune(const std::string& train_path, const std::string& dev_path,
             const std::string& lexicon_path, std::vector<int> thresholds,
             const std::string& mode, bool as_json) {
  const auto lexicon = Lexicon::load(lexicon_path);
  const auto train = read_corpus(train_path);
  const auto dev = read_corpus(dev_path);
  const auto report =
      tune_threshold(train, dev, lexicon, thresholds, parse_mode(mode));

  if (as_json) {
    json runs = json::array();
    for (const auto& run : report.runs)
      runs.push_back(json{{"threshold", run.threshold},
                          {"f1", run.f1},
                          {"rules", run.rules}});
    json j{{"runs", runs}, {"best", report.best}};
    std::printf("%s\n", j.dump().c_str());
  } else {
    std::printf("threshold   dev-f1   rules\n");
    for (const auto& run : report.runs)
      std::printf("%9d   %6.2f   %zu\n", run.threshold, run.f1 * 100.0,
                  run.rules);
    std::printf("best threshold: %d\n", report.best);
  }
  return 0;
}

int cmd_bench(const std::string& input, const std::string& lexicon_path,
              const std::string& model_path, int reps, bool as_json) {
  const auto lexicon = Lexicon::load(lexicon_path);
  const auto tree = ScrdrTree::load(model_path);
  const auto report = benchmark(input, lexicon, tree, reps);

  if (as_json) {
    json j{{"repetitions", report.repetitions},
           {"sentences", report.sentences},
           {"syllables", report.syllables},
           {"words", report.words},
           {"seconds", report.seconds},
           {"syllables_per_second", report.syllables_per_second},
           {"words_per_second", report.words_per_second}};
    std::printf("%s\n", j.dump().c_str());
  } else {
    std::printf("%zu repetitions over %zu sentences in %.3fs\n",
                report.repetitions, report.sentences, report.seconds);
    std::printf("mean throughput: %.0f words/s, %.0f syllables/s\n",
                report.words_per_second, report.syllables_per_second);
  }
  return 0;
}

int cmd_synth(std::uint64_t seed, int vocab, int lexicon_size, double overlap,
              int sentences, double mean_len, const std::string& gold_path,
              const std::string& lexicon_path, const std::string& raw_path,
              bool as_json) {
  SynthConfig cfg;
  cfg.seed = seed;
  cfg.vocab_size = vocab;
  cfg.lexicon_size = lexicon_size;
  cfg.overlap_rate = overlap;
  cfg.sentences = sentences;
  cfg.mean_len = mean_len;

  const auto result = generate(cfg);
  write_corpus(result.gold, gold_path);

  std::FILE* lex_out = std::fopen(lexicon_path.c_str(), "wb");
  if (!lex_out) throw IoError("cannot write lexicon file: " + lexicon_path);
  for (const auto& word : result.lexicon.words()) {
    std::string line;
    for (std::size_t i = 0; i < word.size(); ++i) {
      if (i > 0) line += ' ';
      line += word[i];
    }
    line += '\n';
    std::fwrite(line.data(), 1, line.size(), lex_out);
  }
  std::fclose(lex_out);

  std::size_t syllables = 0;
  for (const auto& s : result.gold.sentences) syllables += s.size();

  if (!raw_path.empty()) {
    std::FILE* raw_out = std::fopen(raw_path.c_str(), "wb");
    if (!raw_out) throw IoError("cannot write raw file: " + raw_path);
    for (const auto& s : result.gold.sentences) {
      std::string line;
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (i > 0) line += ' ';
        line += s.items[i].surface;
      }
      line += '\n';
      std::fwrite(line.data(), 1, line.size(), raw_out);
    }
    std::fclose(raw_out);
  }

  if (as_json) {
    json j{{"sentences", result.gold.sentences.size()},
           {"syllables", syllables},
           {"lexicon_words", result.lexicon.size()},
           {"gold", gold_path},
           {"lexicon", lexicon_path}};
    if (!raw_path.empty()) j["raw"] = raw_path;
    std::printf("%s\n", j.dump().c_str());
  } else {
    std::printf("wrote %zu sentences (%zu syllables) to %s\n",
                result.gold.sentences.size(), syllables, gold_path.c_str());
    std::printf("wrote %zu lexicon words to %s\n", result.lexicon.size(),
                lexicon_path.c_str());
    if (!raw_path.empty())
      std::printf("wrote raw corpus to %s\n", raw_path.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "rdrseg - ripple-down-rule corrected word segmentation toolkit"};
  app.require_subcommand(1);

  // train
  std::string gold_path, lexicon_path, model_path;
  int threshold = 2;
  std::string mode = "types";
  std::size_t max_rules = 100000;
  bool train_json = false;
  auto* train_cmd =
      app.add_subcommand("train", "Learn a rule tree from a gold corpus");
  train_cmd->add_option("--gold", gold_path, "Gold corpus (underscore format)")
      ->required();
  train_cmd->add_option("--lexicon", lexicon_path, "Lexicon file")->required();
  train_cmd->add_option("--model", model_path, "Output model file")
      ->required();
  train_cmd->add_option("--threshold", threshold, "Score threshold (>= 1)");
  train_cmd->add_option("--counting-mode", mode, "types|tokens");
  train_cmd->add_option("--max-rules", max_rules, "Safety cap on rules");
  train_cmd->add_flag("--json", train_json, "Machine-readable report");
  std::string train_config;
  train_cmd->add_option("--config", train_config,
                        "Key-value settings file (flags take precedence)");

  // segment
  std::string seg_input, seg_lexicon, seg_model, seg_output;
  int jobs = 1;
  bool seg_json = false;
  auto* segment_cmd =
      app.add_subcommand("segment", "Segment raw text with a trained model");
  segment_cmd->add_option("--input", seg_input, "Raw input file")->required();
  segment_cmd->add_option("--lexicon", seg_lexicon, "Lexicon file")
      ->required();
  segment_cmd->add_option("--model", seg_model, "Model file")->required();
  segment_cmd->add_option("--output", seg_output, "Output file")->required();
  segment_cmd->add_option("--jobs", jobs, "Worker threads (default 1)");
  segment_cmd->add_flag("--json", seg_json, "Machine-readable report");

  // eval
  std::string eval_gold, eval_pred;
  bool eval_json = false;
  auto* eval_cmd =
      app.add_subcommand("eval", "Score a segmentation against gold");
  eval_cmd->add_option("--gold", eval_gold, "Gold corpus")->required();
  eval_cmd->add_option("--pred", eval_pred, "Predicted corpus")->required();
  eval_cmd->add_flag("--json", eval_json, "Machine-readable report");

  // tune
  std::string tune_train, tune_dev, tune_lexicon;
  std::vector<int> tune_thresholds;
  std::string tune_mode = "types";
  bool tune_json = false;
  auto* tune_cmd =
      app.add_subcommand("tune", "Pick the best threshold on a dev set");
  tune_cmd->add_option("--train", tune_train, "Training corpus")->required();
  tune_cmd->add_option("--dev", tune_dev, "Development corpus")->required();
  tune_cmd->add_option("--lexicon", tune_lexicon, "Lexicon file")->required();
  tune_cmd
      ->add_option("--thresholds", tune_thresholds,
                   "Comma-separated candidate thresholds")
      ->required()
      ->delimiter(',');
  tune_cmd->add_option("--counting-mode", tune_mode, "types|tokens");
  tune_cmd->add_flag("--json", tune_json, "Machine-readable report");
  std::string tune_config;
  tune_cmd->add_option("--config", tune_config,
                       "Key-value settings file (flags take precedence)");

  // bench
  std::string bench_input, bench_lexicon, bench_model;
  int reps = 100;
  bool bench_json = false;
  auto* bench_cmd =
      app.add_subcommand("bench", "Measure segmentation throughput");
  bench_cmd->add_option("--input", bench_input, "Raw input file")->required();
  bench_cmd->add_option("--lexicon", bench_lexicon, "Lexicon file")
      ->required();
  bench_cmd->add_option("--model", bench_model, "Model file")->required();
  bench_cmd->add_option("--reps", reps, "Repetitions (default 100)");
  bench_cmd->add_flag("--json", bench_json, "Machine-readable report");

  // synth
  std::uint64_t seed = 1;
  int vocab = 50, lexicon_size = 200, sentences = 1000;
  double overlap = 0.3, mean_len = 8.0;
  std::string synth_gold, synth_lexicon, synth_raw;
  bool synth_json = false;
  auto* synth_cmd =
      app.add_subcommand("synth", "Generate a synthetic gold corpus");
  synth_cmd->add_option("--seed", seed, "Random seed");
  synth_cmd->add_option("--vocab", vocab, "Syllable vocabulary size");
  synth_cmd->add_option("--lexicon-size", lexicon_size, "Lexicon word count");
  synth_cmd->add_option("--overlap", overlap, "Ambiguity rate in [0, 1]");
  synth_cmd->add_option("--sentences", sentences, "Sentence count");
  synth_cmd->add_option("--mean-len", mean_len, "Mean words per sentence");
  synth_cmd->add_option("--gold", synth_gold, "Output gold corpus")
      ->required();
  synth_cmd->add_option("--lexicon-out", synth_lexicon, "Output lexicon")
      ->required();
  synth_cmd->add_option("--raw", synth_raw, "Optional raw corpus output");
  synth_cmd->add_flag("--json", synth_json, "Machine-readable report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (train_cmd->parsed()) {
      if (!train_config.empty()) {
        apply_config_file(train_config, train_cmd->count("--threshold") == 0,
                          threshold, train_cmd->count("--counting-mode") == 0,
                          mode, train_cmd->count("--max-rules") == 0,
                          max_rules);
      }
      return cmd_train(gold_path, lexicon_path, model_path, threshold, mode,
                       max_rules, train_json);
    }
    if (segment_cmd->parsed())
      return cmd_segment(seg_input, seg_lexicon, seg_model, seg_output, jobs,
                         seg_json);
    if (eval_cmd->parsed()) return cmd_eval(eval_gold, eval_pred, eval_json);
    if (tune_cmd->parsed()) {
      if (!tune_config.empty()) {
        int unused_threshold = 0;
        std::size_t unused_cap = 0;
        apply_config_file(tune_config, false, unused_threshold,
                          tune_cmd->count("--counting-mode") == 0, tune_mode,
                          false, unused_cap);
      }
      return cmd_tune(tune_train, tune_dev, tune_lexicon, tune_thresholds,
                      tune_mode, tune_json);
    }
    if (bench_cmd->parsed())
      return cmd_bench(bench_input, bench_lexicon, bench_model, reps,
                       bench_json);
    if (synth_cmd->parsed())
      return cmd_synth(seed, vocab, lexicon_size, overlap, sentences, mean_len,
                       synth_gold, synth_lexicon, synth_raw, synth_json);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    switch (e.kind()) {
      case ErrorKind::Usage:
        return 1;
      case ErrorKind::Data:
        return 2;
      default:
        return 3;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 3;
  }
  return 0;
}
