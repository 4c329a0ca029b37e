#include "rdrseg/unicode.hpp"

#include <algorithm>
#include <array>
#include <unordered_map>

namespace rdrseg::uni {

std::vector<char32_t> decode_utf8(std::string_view s) {
  std::vector<char32_t> out;
  out.reserve(s.size());
  std::size_t i = 0;
  const auto n = s.size();
  while (i < n) {
    const unsigned char b0 = static_cast<unsigned char>(s[i]);
    if (b0 < 0x80) {
      out.push_back(b0);
      ++i;
      continue;
    }
    int len = 0;
    char32_t cp = 0;
    if ((b0 & 0xE0) == 0xC0) {
      len = 2;
      cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
      len = 3;
      cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
      len = 4;
      cp = b0 & 0x07;
    } else {
      out.push_back(b0);  // stray byte
      ++i;
      continue;
    }
    if (i + len > n) {
      out.push_back(b0);
      ++i;
      continue;
    }
    bool ok = true;
    char32_t acc = cp;
    for (int k = 1; k < len; ++k) {
      const unsigned char bk = static_cast<unsigned char>(s[i + k]);
      if ((bk & 0xC0) != 0x80) {
        ok = false;
        break;
      }
      acc = (acc << 6) | (bk & 0x3F);
    }
    if (!ok) {
      out.push_back(b0);
      ++i;
      continue;
    }
    out.push_back(acc);
    i += len;
  }
  return out;
}

std::string encode_utf8(const std::vector<char32_t>& cps) {
  std::string out;
  out.reserve(cps.size() * 2);
  for (char32_t cp : cps) {
    if (cp < 0x80) {
      out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
      out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
      out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
      out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
  }
  return out;
}

namespace {

constexpr char32_t kGrave = 0x0300;
constexpr char32_t kAcute = 0x0301;
constexpr char32_t kCircumflex = 0x0302;
constexpr char32_t kTilde = 0x0303;
constexpr char32_t kBreve = 0x0306;
constexpr char32_t kHookAbove = 0x0309;
constexpr char32_t kHorn = 0x031B;
constexpr char32_t kDotBelow = 0x0323;

struct ToneRow {
  char32_t base, grave, acute, tilde, hook, dot;
};

// Precomposed tone forms for each Vietnamese vowel shape.
constexpr std::array<ToneRow, 24> kToneRows{{
    {U'a', 0x00E0, 0x00E1, 0x00E3, 0x1EA3, 0x1EA1},
    {0x0103, 0x1EB1, 0x1EAF, 0x1EB5, 0x1EB3, 0x1EB7},  // ă
    {0x00E2, 0x1EA7, 0x1EA5, 0x1EAB, 0x1EA9, 0x1EAD},  // â
    {U'e', 0x00E8, 0x00E9, 0x1EBD, 0x1EBB, 0x1EB9},
    {0x00EA, 0x1EC1, 0x1EBF, 0x1EC5, 0x1EC3, 0x1EC7},  // ê
    {U'i', 0x00EC, 0x00ED, 0x0129, 0x1EC9, 0x1ECB},
    {U'o', 0x00F2, 0x00F3, 0x00F5, 0x1ECF, 0x1ECD},
    {0x00F4, 0x1ED3, 0x1ED1, 0x1ED7, 0x1ED5, 0x1ED9},  // ô
    {0x01A1, 0x1EDD, 0x1EDB, 0x1EE1, 0x1EDF, 0x1EE3},  // ơ
    {U'u', 0x00F9, 0x00FA, 0x0169, 0x1EE7, 0x1EE5},
    {0x01B0, 0x1EEB, 0x1EE9, 0x1EEF, 0x1EED, 0x1EF1},  // ư
    {U'y', 0x1EF3, 0x00FD, 0x1EF9, 0x1EF7, 0x1EF5},
    {U'A', 0x00C0, 0x00C1, 0x00C3, 0x1EA2, 0x1EA0},
    {0x0102, 0x1EB0, 0x1EAE, 0x1EB4, 0x1EB2, 0x1EB6},  // Ă
    {0x00C2, 0x1EA6, 0x1EA4, 0x1EAA, 0x1EA8, 0x1EAC},  // Â
    {U'E', 0x00C8, 0x00C9, 0x1EBC, 0x1EBA, 0x1EB8},
    {0x00CA, 0x1EC0, 0x1EBE, 0x1EC4, 0x1EC2, 0x1EC6},  // Ê
    {U'I', 0x00CC, 0x00CD, 0x0128, 0x1EC8, 0x1ECA},
    {U'O', 0x00D2, 0x00D3, 0x00D5, 0x1ECE, 0x1ECC},
    {0x00D4, 0x1ED2, 0x1ED0, 0x1ED6, 0x1ED4, 0x1ED8},  // Ô
    {0x01A0, 0x1EDC, 0x1EDA, 0x1EE0, 0x1EDE, 0x1EE2},  // Ơ
    {U'U', 0x00D9, 0x00DA, 0x0168, 0x1EE6, 0x1EE4},
    {0x01AF, 0x1EEA, 0x1EE8, 0x1EEE, 0x1EEC, 0x1EF0},  // Ư
    {U'Y', 0x1EF2, 0x00DD, 0x1EF8, 0x1EF6, 0x1EF4},
}};

struct ShapePair {
  char32_t base, mark, composed;
};

constexpr std::array<ShapePair, 12> kShapePairs{{
    {U'a', kBreve, 0x0103},      {U'a', kCircumflex, 0x00E2},
    {U'e', kCircumflex, 0x00EA}, {U'o', kCircumflex, 0x00F4},
    {U'o', kHorn, 0x01A1},       {U'u', kHorn, 0x01B0},
    {U'A', kBreve, 0x0102},      {U'A', kCircumflex, 0x00C2},
    {U'E', kCircumflex, 0x00CA}, {U'O', kCircumflex, 0x00D4},
    {U'O', kHorn, 0x01A0},       {U'U', kHorn, 0x01AF},
}};

std::uint64_t pair_key(char32_t base, char32_t mark) {
  return (static_cast<std::uint64_t>(base) << 32) | mark;
}

const std::unordered_map<std::uint64_t, char32_t>& composition_table() {
  static const std::unordered_map<std::uint64_t, char32_t> table = [] {
    std::unordered_map<std::uint64_t, char32_t> t;
    for (const auto& r : kToneRows) {
      t.emplace(pair_key(r.base, kGrave), r.grave);
      t.emplace(pair_key(r.base, kAcute), r.acute);
      t.emplace(pair_key(r.base, kTilde), r.tilde);
      t.emplace(pair_key(r.base, kHookAbove), r.hook);
      t.emplace(pair_key(r.base, kDotBelow), r.dot);
    }
    for (const auto& p : kShapePairs) {
      t.emplace(pair_key(p.base, p.mark), p.composed);
    }
    return t;
  }();
  return table;
}

}  // namespace

void compose_nfc(std::vector<char32_t>& cps) {
  const auto& table = composition_table();
  std::size_t w = 0;
  for (std::size_t r = 0; r < cps.size(); ++r) {
    if (w > 0) {
      auto it = table.find(pair_key(cps[w - 1], cps[r]));
      if (it != table.end()) {
        cps[w - 1] = it->second;
        continue;
      }
    }
    cps[w++] = cps[r];
  }
  cps.resize(w);
}

char32_t to_lower(char32_t cp) {
  if (cp >= U'A' && cp <= U'Z') return cp + 0x20;
  if ((cp >= 0x00C0 && cp <= 0x00D6) || (cp >= 0x00D8 && cp <= 0x00DE))
    return cp + 0x20;
  if (cp >= 0x0100 && cp <= 0x0137) return (cp % 2 == 0) ? cp + 1 : cp;
  if (cp >= 0x0139 && cp <= 0x0148) return (cp % 2 == 1) ? cp + 1 : cp;
  if (cp >= 0x014A && cp <= 0x0177) return (cp % 2 == 0) ? cp + 1 : cp;
  if (cp == 0x0178) return 0x00FF;
  if (cp == 0x0179 || cp == 0x017B || cp == 0x017D) return cp + 1;
  if (cp == 0x01A0) return 0x01A1;  // Ơ
  if (cp == 0x01AF) return 0x01B0;  // Ư
  if (cp >= 0x1E00 && cp <= 0x1EFF) return (cp % 2 == 0) ? cp + 1 : cp;
  return cp;
}

std::string fold(std::string_view s) {
  auto cps = decode_utf8(s);
  compose_nfc(cps);
  for (auto& cp : cps) cp = to_lower(cp);
  return encode_utf8(cps);
}

std::string lower(std::string_view s) {
  auto cps = decode_utf8(s);
  for (auto& cp : cps) cp = to_lower(cp);
  return encode_utf8(cps);
}

}  // namespace rdrseg::uni
