#ifndef RDRSEG_SCRDR_HPP
#define RDRSEG_SCRDR_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rdrseg/context.hpp"

namespace rdrseg {

// One equality test against a tuple field. Tag fields compare against
// "B", "I" or the empty marker "".
struct Clause {
  Field field;
  std::string value;

  bool operator==(const Clause&) const = default;
};

// Conjunction of clauses, at most one per field, kept sorted by field.
// The empty condition is always true and is reserved for the root rule.
struct Condition {
  std::vector<Clause> clauses;

  bool empty() const { return clauses.empty(); }
  bool operator==(const Condition&) const = default;
};

// Builds a condition from unsorted clauses, enforcing one clause per field.
Condition make_condition(std::vector<Clause> clauses);

bool satisfies(const ContextTuple& t, const Condition& c);

// IDENTITY echoes the tuple's own current tag; it is legal only at the
// root node.
enum class Conclusion : std::uint8_t { B, I, Identity };

SegTag apply_conclusion(Conclusion c, const ContextTuple& t);

struct Rule {
  Condition condition;
  Conclusion conclusion = Conclusion::Identity;

  bool operator==(const Rule&) const = default;
};

// `COND f=="v" && ... : CONCLUSION B|I|IDENTITY`, the model-file body.
std::string rule_to_string(const Rule& r);

struct Node {
  std::int32_t id = 0;
  Rule rule;
  std::int32_t except_child = -1;
  std::int32_t ifnot_child = -1;
  std::int32_t parent = -1;
  // Number of "except" edges from the root; members of one if-not chain
  // share their parent's depth + 1.
  std::int32_t depth = 0;

  bool operator==(const Node&) const = default;
};

struct EvalResult {
  SegTag tag;
  std::int32_t firing_node;
  std::vector<std::int32_t> path;
};

// Binary rule tree with "except" and "if-not" edges. Nodes are stored by
// id in creation order; the root has id 0.
class ScrdrTree {
 public:
  // Default rule at the root plus its two tag-echoing exception rules:
  // node 1 fires on tag I, node 2 on tag B.
  static ScrdrTree make_initial();

  std::int32_t node_count() const {
    return static_cast<std::int32_t>(nodes_.size());
  }
  const Node& node(std::int32_t id) const;
  const std::vector<Node>& nodes() const { return nodes_; }

  // Ripple-down descent: a satisfied node passes the case to its except
  // child, an unsatisfied one to its if-not child; the answer comes from
  // the last satisfied rule on the path.
  EvalResult evaluate(const ContextTuple& t) const;
  SegTag evaluate_tag(const ContextTuple& t) const;
  std::int32_t evaluate_firing(const ContextTuple& t) const;

  // Attaches an exception rule under `at`: as its except child when that
  // slot is free, otherwise at the end of the except child's if-not
  // chain. Returns the new node's id (== previous node_count).
  std::int32_t attach_exception(std::int32_t at, Rule rule);

  // Text model format: one node per line, `(id) COND f=="v" && ... :
  // CONCLUSION B|I|IDENTITY`, depth encoded as leading tabs. The first
  // deeper line under a node is its except child; later lines at that
  // depth are the if-not chain.
  std::string serialize() const;
  static ScrdrTree deserialize(std::string_view text);

  void save(const std::string& path) const;
  static ScrdrTree load(const std::string& path);

  bool operator==(const ScrdrTree&) const = default;

 private:
  ScrdrTree() = default;

  std::vector<Node> nodes_;
};

}  // namespace rdrseg

#endif  // RDRSEG_SCRDR_HPP
