#include "rdrseg/scrdr.hpp"

#include <random>

#include "doctest.h"
#include "rdrseg/errors.hpp"
#include "test_util.hpp"

using namespace rdrseg;

namespace {

ContextTuple tuple_with(std::string syllable, CtxTag tag) {
  ContextTuple t;
  t.syllables[2] = std::move(syllable);
  t.tags[2] = tag;
  return t;
}

// Worked-example tuples (window rows 2 and 3 of the initialized text).
ContextTuple row2_tuple() {
  ContextTuple t;
  t.syllables = {"", "thuế", "thu", "nhập", "cá"};
  t.tags = {CtxTag::Empty, CtxTag::B, CtxTag::B, CtxTag::I, CtxTag::B};
  return t;
}

ContextTuple row3_tuple() {
  ContextTuple t;
  t.syllables = {"thuế", "thu", "nhập", "cá", "nhân"};
  t.tags = {CtxTag::B, CtxTag::B, CtxTag::I, CtxTag::B, CtxTag::I};
  return t;
}

}  // namespace

TEST_CASE("satisfies checks every clause against the tuple") {
  const auto cond = make_condition(
      {{Field::Prev1Syllable, "thuế"}, {Field::Next1Syllable, "nhập"}});
  CHECK(satisfies(row2_tuple(), cond));
  CHECK_FALSE(satisfies(row3_tuple(),
                        make_condition({{Field::Prev1Syllable, "thuế"}})));
  CHECK(satisfies(row3_tuple(), Condition{}));  // empty condition: always true
  CHECK(satisfies(row2_tuple(), Condition{}));
}

TEST_CASE("conditions reject duplicate fields") {
  CHECK_THROWS_AS(
      make_condition({{Field::Tag, "B"}, {Field::Tag, "I"}}),
      InternalError);
}

TEST_CASE("the initial tree echoes the input tag") {
  const auto tree = ScrdrTree::make_initial();
  REQUIRE(tree.node_count() == 3);
  CHECK(tree.node(0).rule.conclusion == Conclusion::Identity);
  CHECK(tree.node(0).rule.condition.empty());
  CHECK(tree.node(0).except_child == 1);
  CHECK(tree.node(1).ifnot_child == 2);
  CHECK(tree.node(1).depth == 1);
  CHECK(tree.node(2).depth == 1);

  const auto b_case = tuple_with("xin", CtxTag::B);
  auto result = tree.evaluate(b_case);
  CHECK(result.tag == SegTag::B);
  CHECK(result.firing_node == 2);
  CHECK(result.path == std::vector<std::int32_t>{0, 1, 2});

  const auto i_case = tuple_with("xin", CtxTag::I);
  result = tree.evaluate(i_case);
  CHECK(result.tag == SegTag::I);
  CHECK(result.firing_node == 1);
  CHECK(result.path == std::vector<std::int32_t>{0, 1});
}

TEST_CASE("descent takes the if-not edge out of an unsatisfied node") {
  // root -> except [syllable=="thu" => I] -> if-not [tag=="B" => B]
  auto tree = ScrdrTree::make_initial();
  // Rebuild the documented 3-node chain from scratch instead of the
  // initial tree: root, one except child, one if-not child of it.
  tree = ScrdrTree::deserialize(
      "(0) COND : CONCLUSION IDENTITY\n"
      "\t(1) COND syllable==\"thu\" : CONCLUSION I\n"
      "\t(2) COND tag==\"B\" : CONCLUSION B\n");

  const auto result = tree.evaluate(tuple_with("xin", CtxTag::B));
  CHECK(result.tag == SegTag::B);
  CHECK(result.firing_node == 2);
  CHECK(result.path == std::vector<std::int32_t>{0, 1, 2});

  // A case that satisfies node 1 fires there instead.
  const auto hit = tree.evaluate(tuple_with("thu", CtxTag::B));
  CHECK(hit.tag == SegTag::I);
  CHECK(hit.firing_node == 1);
}

TEST_CASE("attach_exception fills the except slot, then the if-not chain") {
  auto tree = ScrdrTree::make_initial();
  const Rule r1{make_condition({{Field::Syllable, "thu"}}), Conclusion::I};
  const Rule r2{make_condition({{Field::Syllable, "cá"}}), Conclusion::B};
  const Rule r3{make_condition({{Field::Syllable, "xin"}}), Conclusion::B};

  const auto n3 = tree.attach_exception(2, r1);
  CHECK(n3 == 3);
  CHECK(tree.node(2).except_child == 3);
  CHECK(tree.node(3).depth == 2);

  const auto n4 = tree.attach_exception(2, r2);
  CHECK(n4 == 4);
  CHECK(tree.node(3).ifnot_child == 4);
  CHECK(tree.node(4).depth == 2);

  const auto n5 = tree.attach_exception(2, r3);
  CHECK(n5 == 5);
  CHECK(tree.node(4).ifnot_child == 5);
  CHECK(tree.node_count() == 6);

  // A case that satisfied node 2 and the new rule now fires at the child.
  const auto result = tree.evaluate(tuple_with("thu", CtxTag::B));
  CHECK(result.firing_node == 3);
  CHECK(result.tag == SegTag::I);

  // One that matches none of the chain still fires at node 2.
  const auto fallback = tree.evaluate(tuple_with("zzz", CtxTag::B));
  CHECK(fallback.firing_node == 2);
  CHECK(fallback.tag == SegTag::B);
}

TEST_CASE("attach_exception rejects bad arguments") {
  auto tree = ScrdrTree::make_initial();
  const Rule rule{make_condition({{Field::Tag, "B"}}), Conclusion::B};
  CHECK_THROWS_AS(tree.attach_exception(99, rule), InvalidNode);
  CHECK_THROWS_AS(tree.attach_exception(-1, rule), InvalidNode);
  CHECK_THROWS_AS(
      tree.attach_exception(
          2, Rule{make_condition({{Field::Tag, "B"}}), Conclusion::Identity}),
      InternalError);
  CHECK_THROWS_AS(tree.node(3), InvalidNode);
}

TEST_CASE("the initial tree serializes to three lines and round-trips") {
  const auto tree = ScrdrTree::make_initial();
  const auto text = tree.serialize();
  CHECK(text ==
        "(0) COND : CONCLUSION IDENTITY\n"
        "\t(1) COND tag==\"I\" : CONCLUSION I\n"
        "\t(2) COND tag==\"B\" : CONCLUSION B\n");
  CHECK(ScrdrTree::deserialize(text) == tree);
}

TEST_CASE("a learned tree serializes one line per node") {
  auto tree = ScrdrTree::make_initial();
  tree.attach_exception(2, {make_condition({{Field::Prev1Syllable, "thuế"},
                                            {Field::Next1Syllable, "nhập"}}),
                            Conclusion::I});
  tree.attach_exception(3, {make_condition({{Field::Syllable, "thu"}}),
                            Conclusion::B});
  tree.attach_exception(2, {make_condition({{Field::Prev1Tag, ""}}),
                            Conclusion::B});

  const auto text = tree.serialize();
  std::size_t lines = 0;
  for (char c : text)
    if (c == '\n') ++lines;
  CHECK(lines == 6);  // 3 rules + 3 initial nodes

  const auto copy = ScrdrTree::deserialize(text);
  CHECK(copy == tree);
  CHECK(copy.serialize() == text);
}

TEST_CASE("serialization escapes quotes and backslashes") {
  auto tree = ScrdrTree::make_initial();
  tree.attach_exception(2, {make_condition({{Field::Syllable, "a\"b\\c"}}),
                            Conclusion::B});
  const auto copy = ScrdrTree::deserialize(tree.serialize());
  CHECK(copy == tree);
  CHECK(copy.node(3).rule.condition.clauses[0].value == "a\"b\\c");
}

TEST_CASE("deserialize reports malformed input with a line number") {
  CHECK_THROWS_AS(ScrdrTree::deserialize(""), ModelParseError);

  // Indentation jumping two levels at once.
  try {
    ScrdrTree::deserialize(
        "(0) COND : CONCLUSION IDENTITY\n"
        "\t\t(1) COND tag==\"I\" : CONCLUSION I\n");
    FAIL("expected ModelParseError");
  } catch (const ModelParseError& e) {
    CHECK(e.line == 2);
  }

  // Unknown field name.
  CHECK_THROWS_AS(ScrdrTree::deserialize(
                      "(0) COND : CONCLUSION IDENTITY\n"
                      "\t(1) COND bogus==\"I\" : CONCLUSION I\n"),
                  ModelParseError);

  // Duplicate ids.
  CHECK_THROWS_AS(ScrdrTree::deserialize(
                      "(0) COND : CONCLUSION IDENTITY\n"
                      "\t(0) COND tag==\"I\" : CONCLUSION I\n"),
                  ModelParseError);

  // Two roots.
  CHECK_THROWS_AS(ScrdrTree::deserialize(
                      "(0) COND : CONCLUSION IDENTITY\n"
                      "(1) COND tag==\"I\" : CONCLUSION I\n"),
                  ModelParseError);

  // IDENTITY below the root.
  CHECK_THROWS_AS(ScrdrTree::deserialize(
                      "(0) COND : CONCLUSION IDENTITY\n"
                      "\t(1) COND tag==\"I\" : CONCLUSION IDENTITY\n"),
                  ModelParseError);

  // Missing conclusion marker.
  CHECK_THROWS_AS(ScrdrTree::deserialize("(0) COND\n"), ModelParseError);
}

TEST_CASE("model files save and load") {
  testutil::TempDir dir;
  auto tree = ScrdrTree::make_initial();
  tree.attach_exception(1, {make_condition({{Field::Next1Tag, "B"}}),
                            Conclusion::B});
  const auto path = dir.file("model.rdr");
  tree.save(path);
  CHECK(ScrdrTree::load(path) == tree);
  CHECK_THROWS_AS(ScrdrTree::load(dir.file("missing.rdr")), IoError);
}

TEST_CASE("random trees round-trip through the text format") {
  std::mt19937 rng(99);
  for (int iter = 0; iter < 200; ++iter) {
    const auto tree = testutil::random_tree(rng, 50);
    CAPTURE(iter);
    const auto text = tree.serialize();
    CHECK(ScrdrTree::deserialize(text) == tree);
  }
}

TEST_CASE("evaluate matches the naive descent interpreter") {
  std::mt19937 rng(123);
  for (int iter = 0; iter < 2000; ++iter) {
    const auto tree = testutil::random_tree(rng, 50);
    const auto tuple = testutil::random_tuple(rng);
    CAPTURE(iter);

    const auto got = tree.evaluate(tuple);
    CHECK(got.path == testutil::oracle_path(tree, tuple));
    CHECK(got.firing_node == testutil::oracle_firing(tree, tuple));
    CHECK(got.tag == testutil::oracle_tag(tree, tuple));

    // The firing rule is satisfied, and the path stays within bounds.
    CHECK(satisfies(tuple, tree.node(got.firing_node).rule.condition));
    CHECK(got.path.size() <= static_cast<std::size_t>(tree.node_count()));
    CHECK(got.tag == tree.evaluate_tag(tuple));
    CHECK(got.firing_node == tree.evaluate_firing(tuple));
  }
}

TEST_CASE("attachment keeps prior nodes reachable and retargets fired cases") {
  std::mt19937 rng(321);
  for (int iter = 0; iter < 100; ++iter) {
    auto tree = testutil::random_tree(rng, 20);
    const auto tuple = testutil::random_tuple(rng);
    const auto before = tree.evaluate(tuple);

    std::uniform_int_distribution<std::int32_t> at(0, tree.node_count() - 1);
    const auto target = at(rng);
    const Rule rule{testutil::random_condition(rng), Conclusion::B};
    const auto before_count = tree.node_count();
    const auto fresh = tree.attach_exception(target, rule);
    CHECK(tree.node_count() == before_count + 1);
    CHECK(fresh == before_count);

    // Every node is still reachable exactly once.
    std::vector<bool> seen(tree.node_count(), false);
    std::vector<std::int32_t> stack{0};
    while (!stack.empty()) {
      const auto id = stack.back();
      stack.pop_back();
      REQUIRE_FALSE(seen[id]);
      seen[id] = true;
      if (tree.node(id).except_child >= 0)
        stack.push_back(tree.node(id).except_child);
      if (tree.node(id).ifnot_child >= 0)
        stack.push_back(tree.node(id).ifnot_child);
    }
    for (bool s : seen) CHECK(s);

    // A case that fired at the attach target and satisfies the new rule
    // now fires at the new node.
    if (before.firing_node == target && satisfies(tuple, rule.condition)) {
      CHECK(tree.evaluate(tuple).firing_node == fresh);
    }
  }
}
