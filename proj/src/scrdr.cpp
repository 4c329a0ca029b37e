#include "rdrseg/scrdr.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "rdrseg/errors.hpp"

namespace rdrseg {

Condition make_condition(std::vector<Clause> clauses) {
  std::sort(clauses.begin(), clauses.end(),
            [](const Clause& a, const Clause& b) { return a.field < b.field; });
  for (std::size_t i = 1; i < clauses.size(); ++i) {
    if (clauses[i].field == clauses[i - 1].field)
      throw InternalError("condition with duplicate field");
  }
  return Condition{std::move(clauses)};
}

bool satisfies(const ContextTuple& t, const Condition& c) {
  for (const auto& clause : c.clauses) {
    if (field_text(t, clause.field) != clause.value) return false;
  }
  return true;
}

SegTag apply_conclusion(Conclusion c, const ContextTuple& t) {
  switch (c) {
    case Conclusion::B:
      return SegTag::B;
    case Conclusion::I:
      return SegTag::I;
    default:
      return t.center_tag();
  }
}

ScrdrTree ScrdrTree::make_initial() {
  ScrdrTree tree;
  tree.nodes_.push_back(Node{0, Rule{Condition{}, Conclusion::Identity}, -1,
                             -1, -1, 0});
  tree.attach_exception(
      0, Rule{make_condition({{Field::Tag, "I"}}), Conclusion::I});
  tree.attach_exception(
      0, Rule{make_condition({{Field::Tag, "B"}}), Conclusion::B});
  return tree;
}

const Node& ScrdrTree::node(std::int32_t id) const {
  if (id < 0 || id >= node_count())
    throw InvalidNode("node id " + std::to_string(id) + " not in tree");
  return nodes_[id];
}

EvalResult ScrdrTree::evaluate(const ContextTuple& t) const {
  EvalResult result{SegTag::B, 0, {}};
  std::int32_t current = 0;
  std::int32_t last_satisfied = 0;  // the root is always satisfied
  for (;;) {
    result.path.push_back(current);
    const Node& n = nodes_[current];
    std::int32_t next;
    if (satisfies(t, n.rule.condition)) {
      last_satisfied = current;
      next = n.except_child;
    } else {
      next = n.ifnot_child;
    }
    if (next < 0) break;
    current = next;
  }
  result.firing_node = last_satisfied;
  result.tag = apply_conclusion(nodes_[last_satisfied].rule.conclusion, t);
  return result;
}

std::int32_t ScrdrTree::evaluate_firing(const ContextTuple& t) const {
  std::int32_t current = 0;
  std::int32_t last_satisfied = 0;
  for (;;) {
    const Node& n = nodes_[current];
    std::int32_t next;
    if (satisfies(t, n.rule.condition)) {
      last_satisfied = current;
      next = n.except_child;
    } else {
      next = n.ifnot_child;
    }
    if (next < 0) return last_satisfied;
    current = next;
  }
}

SegTag ScrdrTree::evaluate_tag(const ContextTuple& t) const {
  return apply_conclusion(nodes_[evaluate_firing(t)].rule.conclusion, t);
}

std::int32_t ScrdrTree::attach_exception(std::int32_t at, Rule rule) {
  if (at < 0 || at >= node_count())
    throw InvalidNode("cannot attach under node " + std::to_string(at) +
                      ": not in tree");
  if (rule.conclusion == Conclusion::Identity)
    throw InternalError("exception rules must conclude B or I");

  const auto fresh = static_cast<std::int32_t>(nodes_.size());
  Node n;
  n.id = fresh;
  n.rule = std::move(rule);
  if (nodes_[at].except_child < 0) {
    n.parent = at;
    n.depth = nodes_[at].depth + 1;
    nodes_.push_back(std::move(n));
    nodes_[at].except_child = fresh;
  } else {
    std::int32_t tail = nodes_[at].except_child;
    while (nodes_[tail].ifnot_child >= 0) tail = nodes_[tail].ifnot_child;
    n.parent = tail;
    n.depth = nodes_[tail].depth;
    nodes_.push_back(std::move(n));
    nodes_[tail].ifnot_child = fresh;
  }
  return fresh;
}

namespace {

std::string escape_value(std::string_view v) {
  std::string out;
  out.reserve(v.size());
  for (char c : v) {
    if (c == '\\' || c == '"') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

std::string_view conclusion_text(Conclusion c) {
  switch (c) {
    case Conclusion::B:
      return "B";
    case Conclusion::I:
      return "I";
    default:
      return "IDENTITY";
  }
}

}  // namespace

std::string rule_to_string(const Rule& r) {
  std::string out = "COND";
  for (std::size_t i = 0; i < r.condition.clauses.size(); ++i) {
    const auto& clause = r.condition.clauses[i];
    out += (i == 0) ? " " : " && ";
    out += field_name(clause.field);
    out += "==\"";
    out += escape_value(clause.value);
    out += '"';
  }
  out += " : CONCLUSION ";
  out += conclusion_text(r.conclusion);
  return out;
}

std::string ScrdrTree::serialize() const {
  std::string out;
  std::vector<std::int32_t> stack{0};
  while (!stack.empty()) {
    const std::int32_t id = stack.back();
    stack.pop_back();
    const Node& n = nodes_[id];

    out.append(static_cast<std::size_t>(n.depth), '\t');
    out += '(';
    out += std::to_string(n.id);
    out += ") ";
    out += rule_to_string(n.rule);
    out += '\n';

    // Push the except child's if-not chain in reverse so the chain is
    // emitted head first, each member followed by its own subtree.
    std::vector<std::int32_t> chain;
    for (std::int32_t c = n.except_child; c >= 0; c = nodes_[c].ifnot_child)
      chain.push_back(c);
    for (auto it = chain.rbegin(); it != chain.rend(); ++it)
      stack.push_back(*it);
  }
  return out;
}

namespace {

struct ParsedLine {
  std::int32_t depth = 0;
  std::int32_t id = 0;
  Rule rule;
};

ParsedLine parse_model_line(std::string_view line, std::size_t line_no) {
  ParsedLine parsed;
  std::size_t pos = 0;
  while (pos < line.size() && line[pos] == '\t') ++pos;
  parsed.depth = static_cast<std::int32_t>(pos);

  auto fail = [line_no](const std::string& what) -> ModelParseError {
    return ModelParseError(line_no,
                           "line " + std::to_string(line_no) + ": " + what);
  };

  if (pos >= line.size() || line[pos] != '(') throw fail("expected '(id)'");
  ++pos;
  std::size_t id_end = line.find(')', pos);
  if (id_end == std::string_view::npos) throw fail("unterminated node id");
  {
    const auto id_text = line.substr(pos, id_end - pos);
    if (id_text.empty() || id_text.size() > 9 ||
        id_text.find_first_not_of("0123456789") != std::string_view::npos)
      throw fail("bad node id");
    parsed.id = static_cast<std::int32_t>(std::stol(std::string(id_text)));
  }
  pos = id_end + 1;

  constexpr std::string_view kCond = " COND";
  if (line.substr(pos, kCond.size()) != kCond) throw fail("expected COND");
  pos += kCond.size();

  constexpr std::string_view kConclusion = " : CONCLUSION ";
  const std::size_t concl_at = line.find(kConclusion, pos);
  if (concl_at == std::string_view::npos)
    throw fail("expected ': CONCLUSION'");

  // Clause list between COND and the conclusion marker.
  std::string_view body = line.substr(pos, concl_at - pos);
  std::vector<Clause> clauses;
  std::size_t bp = 0;
  while (bp < body.size()) {
    if (body[bp] == ' ') {
      ++bp;
      continue;
    }
    if (!clauses.empty()) {
      if (body.substr(bp, 3) != "&& ") throw fail("expected '&&'");
      bp += 3;
    }
    const std::size_t eq = body.find("==\"", bp);
    if (eq == std::string_view::npos) throw fail("expected '==\"'");
    Field field;
    if (!parse_field_name(body.substr(bp, eq - bp), field))
      throw fail("unknown field \"" + std::string(body.substr(bp, eq - bp)) +
                 "\"");
    bp = eq + 3;
    std::string value;
    bool closed = false;
    while (bp < body.size()) {
      const char c = body[bp++];
      if (c == '\\') {
        if (bp >= body.size()) throw fail("dangling escape");
        value.push_back(body[bp++]);
      } else if (c == '"') {
        closed = true;
        break;
      } else {
        value.push_back(c);
      }
    }
    if (!closed) throw fail("unterminated value");
    if (is_tag_field(field) && value != "B" && value != "I" && !value.empty())
      throw fail("tag field must be B, I or empty");
    clauses.push_back({field, std::move(value)});
  }
  try {
    parsed.rule.condition = make_condition(std::move(clauses));
  } catch (const InternalError&) {
    throw fail("duplicate field in condition");
  }

  std::string_view concl = line.substr(concl_at + kConclusion.size());
  while (!concl.empty() && (concl.back() == '\r' || concl.back() == ' '))
    concl.remove_suffix(1);
  if (concl == "B")
    parsed.rule.conclusion = Conclusion::B;
  else if (concl == "I")
    parsed.rule.conclusion = Conclusion::I;
  else if (concl == "IDENTITY")
    parsed.rule.conclusion = Conclusion::Identity;
  else
    throw fail("unknown conclusion \"" + std::string(concl) + "\"");
  return parsed;
}

}  // namespace

ScrdrTree ScrdrTree::deserialize(std::string_view text) {
  struct Pending {
    std::int32_t file_id;
    Rule rule;
    std::int32_t except_child = -1;
    std::int32_t ifnot_child = -1;
    std::int32_t parent = -1;
    std::int32_t depth = 0;
  };
  std::vector<Pending> pending;
  std::vector<std::size_t> last_at_depth;  // index into pending per depth
  std::int32_t prev_depth = -1;

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    if (end == text.size() && line.empty()) break;
    ++line_no;
    if (line.empty() || line == "\r") continue;

    auto parsed = parse_model_line(line, line_no);
    const std::int32_t d = parsed.depth;
    if (pending.empty()) {
      if (d != 0)
        throw ModelParseError(line_no, "line " + std::to_string(line_no) +
                                           ": first node must be at depth 0");
    } else if (d == 0) {
      throw ModelParseError(line_no, "line " + std::to_string(line_no) +
                                         ": multiple root nodes");
    } else if (d > prev_depth + 1) {
      throw ModelParseError(line_no, "line " + std::to_string(line_no) +
                                         ": indentation jumps by more than "
                                         "one level");
    }

    Pending node;
    node.file_id = parsed.id;
    node.rule = std::move(parsed.rule);
    node.depth = d;
    const auto idx = pending.size();
    if (!pending.empty()) {
      if (d == prev_depth + 1) {
        auto& parent = pending[last_at_depth[d - 1]];
        parent.except_child = static_cast<std::int32_t>(idx);
        node.parent = static_cast<std::int32_t>(last_at_depth[d - 1]);
      } else {
        auto& sibling = pending[last_at_depth[d]];
        sibling.ifnot_child = static_cast<std::int32_t>(idx);
        node.parent = static_cast<std::int32_t>(last_at_depth[d]);
      }
    }
    pending.push_back(std::move(node));
    last_at_depth.resize(d + 1);
    last_at_depth[d] = idx;
    prev_depth = d;
  }

  if (pending.empty()) throw ModelParseError(0, "empty model file");

  // File ids must be a permutation of 0..n-1 with the root at 0.
  const auto n = pending.size();
  std::vector<std::int32_t> position_of(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const auto id = pending[i].file_id;
    if (id < 0 || static_cast<std::size_t>(id) >= n || position_of[id] >= 0)
      throw ModelParseError(0, "node ids must be unique and cover 0.." +
                                   std::to_string(n - 1));
    position_of[id] = static_cast<std::int32_t>(i);
  }
  if (pending[0].file_id != 0)
    throw ModelParseError(1, "root node must have id 0");

  ScrdrTree tree;
  tree.nodes_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = pending[i];
    if (p.rule.conclusion == Conclusion::Identity && p.file_id != 0)
      throw ModelParseError(0, "IDENTITY conclusion outside the root");
    Node& node = tree.nodes_[p.file_id];
    node.id = p.file_id;
    node.rule = p.rule;
    node.depth = p.depth;
    node.except_child =
        p.except_child < 0 ? -1 : pending[p.except_child].file_id;
    node.ifnot_child = p.ifnot_child < 0 ? -1 : pending[p.ifnot_child].file_id;
    node.parent = p.parent < 0 ? -1 : pending[p.parent].file_id;
  }
  return tree;
}

void ScrdrTree::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write model file: " + path);
  out << serialize();
  if (!out) throw IoError("write failed: " + path);
}

ScrdrTree ScrdrTree::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open model file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return deserialize(buf.str());
}

}  // namespace rdrseg
