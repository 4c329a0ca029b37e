#ifndef RDRSEG_UNICODE_HPP
#define RDRSEG_UNICODE_HPP

#include <string>
#include <string_view>
#include <vector>

namespace rdrseg::uni {

// Lenient UTF-8 decode: an invalid byte is passed through as its own
// code point so that folding never throws on dirty input.
std::vector<char32_t> decode_utf8(std::string_view s);
std::string encode_utf8(const std::vector<char32_t>& cps);

// Composes combining diacritics into precomposed code points for the
// Vietnamese alphabet (tone and shape marks in canonical order).
// Sequences outside that repertoire are left untouched.
void compose_nfc(std::vector<char32_t>& cps);

// Lowercase for ASCII plus the Latin ranges used by Vietnamese.
char32_t to_lower(char32_t cp);

// Canonical matching form of a syllable: NFC-composed and lowercased.
// Surfaces are kept verbatim everywhere; folding is only for comparison,
// lexicon lookup and context-tuple keys.
std::string fold(std::string_view s);

// Lowercase only, preserving the original code point sequence.
std::string lower(std::string_view s);

}  // namespace rdrseg::uni

#endif  // RDRSEG_UNICODE_HPP
