#include "rdrseg/templates.hpp"

#include <array>

#include "rdrseg/errors.hpp"

namespace rdrseg {

namespace {

using F = Field;

struct TemplateDef {
  std::array<F, 3> fields;
  int arity;
};

constexpr std::array<TemplateDef, kTemplateCount> kTemplates{{
    // syllable singles
    {{F::Prev2Syllable}, 1},
    {{F::Prev1Syllable}, 1},
    {{F::Syllable}, 1},
    {{F::Next1Syllable}, 1},
    {{F::Next2Syllable}, 1},
    // syllable pairs
    {{F::Prev2Syllable, F::Syllable}, 2},
    {{F::Prev1Syllable, F::Syllable}, 2},
    {{F::Prev1Syllable, F::Next1Syllable}, 2},
    {{F::Syllable, F::Next1Syllable}, 2},
    {{F::Syllable, F::Next2Syllable}, 2},
    // syllable triples
    {{F::Prev2Syllable, F::Prev1Syllable, F::Syllable}, 3},
    {{F::Prev1Syllable, F::Syllable, F::Next1Syllable}, 3},
    {{F::Syllable, F::Next1Syllable, F::Next2Syllable}, 3},
    // tag singles
    {{F::Prev2Tag}, 1},
    {{F::Prev1Tag}, 1},
    {{F::Tag}, 1},
    {{F::Next1Tag}, 1},
    {{F::Next2Tag}, 1},
    // tag pairs
    {{F::Prev2Tag, F::Prev1Tag}, 2},
    {{F::Prev1Tag, F::Next1Tag}, 2},
    {{F::Next1Tag, F::Next2Tag}, 2},
    // syllable & tag
    {{F::Prev1Tag, F::Syllable}, 2},
    {{F::Syllable, F::Next1Tag}, 2},
    {{F::Prev1Tag, F::Syllable, F::Next1Tag}, 3},
    {{F::Prev2Tag, F::Prev1Tag, F::Syllable}, 3},
    {{F::Syllable, F::Next1Tag, F::Next2Tag}, 3},
}};

}  // namespace

std::span<const Field> template_fields(int template_idx) {
  if (template_idx < 0 || template_idx >= kTemplateCount)
    throw InternalError("template index out of range");
  const auto& def = kTemplates[template_idx];
  return {def.fields.data(), static_cast<std::size_t>(def.arity)};
}

std::vector<Rule> instantiate_rules(const ContextTuple& t, SegTag gold) {
  const Conclusion conclusion =
      gold == SegTag::B ? Conclusion::B : Conclusion::I;
  std::vector<Rule> rules;
  rules.reserve(kTemplateCount);
  for (int i = 0; i < kTemplateCount; ++i) {
    std::vector<Clause> clauses;
    for (Field f : template_fields(i))
      clauses.push_back({f, std::string(field_text(t, f))});
    rules.push_back({Condition{std::move(clauses)}, conclusion});
  }
  return rules;
}

}  // namespace rdrseg
