#pragma once

#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lzlfs/canonical.hpp"
#include "lzlfs/oracle.hpp"
#include "lzlfs/suffix_tree.hpp"
#include "lzlfs/symbols.hpp"
#include "lzlfs/working_string.hpp"

namespace lzlfs::testing {

// "$" is the sentinel, "#k" (single digit k) a placeholder, everything else
// a byte.
inline std::vector<Symbol> sv(std::string_view s) {
  std::vector<Symbol> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '$')
      out.push_back(SENTINEL);
    else if (s[i] == '#')
      out.push_back(hash_symbol(static_cast<std::uint32_t>(s[++i] - '0')));
    else
      out.push_back(static_cast<unsigned char>(s[i]));
  }
  return out;
}

inline CanonicalTree ct(std::vector<std::pair<std::string, std::uint32_t>> leaves,
                        std::vector<std::string> internals) {
  CanonicalTree out;
  for (auto& [p, id] : leaves) out.leaves.emplace_back(sv(p), id);
  for (auto& p : internals) out.internals.push_back(sv(p));
  out.normalize();
  return out;
}

// First-principles tree of the current live string, with leaf ids mapped
// back to original positions so it compares against a maintained tree.
inline CanonicalTree naive_of(const WorkingString& w) {
  auto [view, pos] = w.shrunk();
  auto t = oracle::naive_canonical_tree(view);
  for (auto& leaf : t.leaves) leaf.second = pos[leaf.second - 1];
  t.normalize();
  return t;
}

// Fast rebuilt reference: a fresh tree of the live string, leaf ids mapped
// back to original positions.  Quicker than naive_of for per-step sweeps.
inline CanonicalTree rebuilt_of(const WorkingString& w) {
  auto [view, pos] = w.shrunk();
  WorkingString fresh = WorkingString::from_symbols(std::move(view));
  SuffixTree ft(fresh);
  auto t = ft.canonicalize();
  for (auto& leaf : t.leaves) leaf.second = pos[leaf.second - 1];
  t.normalize();
  return t;
}

inline void require_same(const SuffixTree& t, const WorkingString& w) {
  auto got = t.canonicalize();
  auto want = naive_of(w);
  INFO("tree:\n" << describe(got) << "reference:\n" << describe(want));
  REQUIRE(got == want);
}

// Independent replay of an encoding: literal runs interleaved with factor
// copies, self-referential copies filled left to right, one shared factor
// per group code.  Kept separate from the production decoder so the two
// can check each other.
inline std::string decode_reference(const Encoding& e) {
  std::string out;
  out.reserve(e.original_len);
  std::size_t fi = 0;
  std::map<std::uint32_t, Factor> groups;
  for (std::size_t t = 0; t < e.f_codes.size(); ++t) {
    out += e.literal_runs.at(t);
    std::uint32_t code = e.f_codes[t];
    Factor f{};
    if (code <= 2) {
      f = e.factors.at(fi++);
    } else {
      auto it = groups.find(code);
      if (it == groups.end()) it = groups.emplace(code, e.factors.at(fi++)).first;
      f = it->second;
    }
    std::size_t src = code == 1 ? out.size() - static_cast<std::size_t>(f.value)
                                : static_cast<std::size_t>(f.value) - 1;
    for (std::uint64_t j = 0; j < f.length; ++j) out += out.at(src + j);
  }
  out += e.literal_runs.back();
  if (fi != e.factors.size())
    throw std::logic_error("encoding carries unused factors");
  return out;
}

inline std::string rand_word(std::mt19937& rng, std::size_t len, int sigma) {
  std::string s;
  s.reserve(len);
  for (std::size_t i = 0; i < len; ++i)
    s += static_cast<char>('a' + rng() % sigma);
  return s;
}

inline std::vector<Symbol> keys_of(
    const std::map<Symbol, std::uint32_t, SymRankLess>& m) {
  std::vector<Symbol> out;
  for (const auto& [k, v] : m) out.push_back(k);
  return out;
}

inline std::vector<std::uint32_t> sorted_removed_depths(
    const SuffixTree::SurgeryReport& r) {
  std::vector<std::uint32_t> out;
  for (const auto& [node, depth] : r.removed) out.push_back(depth);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace lzlfs::testing
