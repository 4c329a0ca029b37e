#ifndef RDRSEG_TEMPLATES_HPP
#define RDRSEG_TEMPLATES_HPP

#include <span>
#include <vector>

#include "rdrseg/context.hpp"
#include "rdrseg/scrdr.hpp"

namespace rdrseg {

// Fixed rule-template table: 5 single-syllable, 5 syllable pairs,
// 3 syllable triples, 5 single-tag, 3 tag pairs and 5 mixed templates.
inline constexpr int kTemplateCount = 26;

// Fields a template binds, in window order.
std::span<const Field> template_fields(int template_idx);

// Applies every template to the tuple: each condition binds the template
// fields to the tuple's values (empty markers bind literally) and
// concludes `gold`. Returns one rule per template, in template order;
// distinct field sets make them pairwise distinct.
std::vector<Rule> instantiate_rules(const ContextTuple& t, SegTag gold);

}  // namespace rdrseg

#endif  // RDRSEG_TEMPLATES_HPP
