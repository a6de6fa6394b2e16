#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lzlfs {

// Alphabet layout: input bytes occupy 0..255, the end-of-string sentinel is
// stored as 256, and the step-k placeholder introduced by the k-th
// substitution is 256+k (k >= 1).  Pad cells use a reserved value that never
// participates in symbol comparisons.
using Symbol = std::uint32_t;

inline constexpr Symbol SENTINEL = 256;
inline constexpr Symbol PAD = 0xFFFFFFFFu;

constexpr Symbol hash_symbol(std::uint32_t step) { return 256 + step; }

constexpr bool is_byte(Symbol s) { return s < 256; }
constexpr bool is_sentinel(Symbol s) { return s == SENTINEL; }
constexpr bool is_hash(Symbol s) { return s > 256 && s != PAD; }
constexpr bool is_pad(Symbol s) { return s == PAD; }

constexpr std::uint32_t hash_step(Symbol s) { return s - 256; }

// Canonical ordering ranks the sentinel below every byte, while placeholders
// sort above bytes by step.  Every ordered structure (child maps, suffix
// arrays) must use this rank, not the raw encoding.
constexpr std::int64_t sym_rank(Symbol s) {
  return is_sentinel(s) ? -1 : static_cast<std::int64_t>(s);
}

struct SymRankLess {
  bool operator()(Symbol a, Symbol b) const { return sym_rank(a) < sym_rank(b); }
};

inline std::string render_symbol(Symbol s) {
  if (is_pad(s)) return "*";
  if (is_sentinel(s)) return "$";
  if (is_hash(s)) return "#" + std::to_string(hash_step(s));
  if (s >= 0x21 && s <= 0x7e) return std::string(1, static_cast<char>(s));
  char buf[8];
  std::snprintf(buf, sizeof buf, "\\x%02x", s);
  return buf;
}

inline std::string render_symbols(const std::vector<Symbol>& v) {
  std::string out;
  for (Symbol s : v) out += render_symbol(s);
  return out;
}

}  // namespace lzlfs
