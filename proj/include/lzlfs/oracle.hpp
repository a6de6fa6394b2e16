#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

#include "lzlfs/canonical.hpp"
#include "lzlfs/encoding.hpp"
#include "lzlfs/symbols.hpp"

// Brute-force reference implementations for the test suite: repeat
// enumeration, maximal repeats, a quadratic restatement of the substitution
// loop, and directly sorted suffix structures.  Everything here favors
// clarity over speed; callers keep inputs small.

namespace lzlfs::oracle {

namespace detail {

// lce[i * (n + 1) + j] is the longest common extension of the 0-based
// suffixes starting at i and j; row and column n stay zero.
inline std::vector<std::uint32_t> lce_table(const std::vector<Symbol>& s) {
  const std::size_t n = s.size();
  std::vector<std::uint32_t> lce((n + 1) * (n + 1), 0);
  for (std::size_t i = n; i-- > 0;)
    for (std::size_t j = n; j-- > 0;)
      if (s[i] == s[j]) lce[i * (n + 1) + j] = lce[(i + 1) * (n + 1) + j + 1] + 1;
  return lce;
}

// Sorts the length-`len` windows of s and hands each group of equal windows
// to `fn` as a span of ascending 0-based start positions.
template <typename Fn>
void for_each_window_group(const std::vector<Symbol>& s,
                           const std::vector<std::uint32_t>& lce, std::size_t len,
                           Fn&& fn) {
  const std::size_t n = s.size(), w = n + 1;
  std::vector<std::uint32_t> starts(n - len + 1);
  std::iota(starts.begin(), starts.end(), 0);
  std::sort(starts.begin(), starts.end(), [&](std::uint32_t a, std::uint32_t b) {
    std::size_t c = std::min<std::size_t>(lce[a * w + b], len);
    if (c == len) return false;
    return sym_rank(s[a + c]) < sym_rank(s[b + c]);
  });
  for (std::size_t g = 0; g < starts.size();) {
    std::size_t h = g + 1;
    while (h < starts.size() &&
           std::min<std::size_t>(lce[starts[g] * w + starts[h]], len) == len)
      ++h;
    std::vector<std::uint32_t> group(starts.begin() + g, starts.begin() + h);
    std::sort(group.begin(), group.end());
    fn(group);
    g = h;
  }
}

}  // namespace detail

// All length-maximal substrings occurring at least twice.  Returns length 0
// and an empty set when no repeat of length >= 2 exists.
inline std::pair<std::uint32_t, std::set<std::vector<Symbol>>> longest_repeats(
    const std::vector<Symbol>& s) {
  const std::size_t n = s.size();
  std::set<std::vector<Symbol>> out;
  if (n < 2) return {0, out};
  const auto lce = detail::lce_table(s);
  const std::size_t w = n + 1;
  std::uint32_t best = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) best = std::max(best, lce[i * w + j]);
  if (best < 2) return {0, out};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (lce[i * w + j] >= best)
        out.insert(std::vector<Symbol>(s.begin() + i, s.begin() + i + best));
  return {best, out};
}

// Exact definition check: a repeat is maximal when extending it one symbol
// left or right, with string boundaries counting as extensions distinct
// from every symbol, loses at least one occurrence on each side.
inline std::set<std::vector<Symbol>> maximal_repeats(const std::vector<Symbol>& s) {
  const std::size_t n = s.size();
  std::set<std::vector<Symbol>> out;
  if (n < 2) return out;
  const auto lce = detail::lce_table(s);
  constexpr std::int64_t boundary = std::numeric_limits<std::int64_t>::min();
  for (std::size_t len = 1; len + 1 <= n; ++len) {
    detail::for_each_window_group(
        s, lce, len, [&](const std::vector<std::uint32_t>& group) {
          if (group.size() < 2) return;
          std::set<std::int64_t> left, right;
          for (std::uint32_t a : group) {
            left.insert(a == 0 ? boundary : sym_rank(s[a - 1]));
            right.insert(a + len == n ? boundary : sym_rank(s[a + len]));
          }
          if (left.size() >= 2 && right.size() >= 2)
            out.insert(
                std::vector<Symbol>(s.begin() + group[0], s.begin() + group[0] + len));
        });
  }
  return out;
}

// True when no substring of length >= 2 made purely of input bytes occurs
// twice.  Any such repeat contains a repeated byte pair, so scanning
// adjacent pairs suffices.
inline bool no_repeat_check(const std::vector<Symbol>& s) {
  std::set<std::pair<Symbol, Symbol>> seen;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    if (!is_byte(s[i]) || !is_byte(s[i + 1])) continue;
    if (!seen.insert({s[i], s[i + 1]}).second) return false;
  }
  return true;
}

namespace detail {

struct ViewCell {
  Symbol sym;
  std::uint32_t pos;  // original 1-based position
};

struct ViewClassification {
  bool has_t1 = false;
  std::size_t t1 = 0;           // view index of the type1 occurrence
  std::vector<std::size_t> lg;  // left-greedy view indices past e
};

// occ holds the ascending view indices of every occurrence.  The second
// occurrence becomes type1 exactly when it overlaps the first; e is the end
// of the type1 occurrence if present, else of the first; past e the
// left-greedy rule picks a maximal non-overlapping chain.
inline ViewClassification classify_view(const std::vector<std::size_t>& occ,
                                        std::size_t len) {
  ViewClassification c;
  const std::size_t l = occ.front();
  if (occ.size() >= 2 && l + len - 1 >= occ[1]) {
    c.has_t1 = true;
    c.t1 = occ[1];
  }
  const std::size_t e = (c.has_t1 ? occ[1] : l) + len - 1;
  std::size_t last_end = 0;
  for (std::size_t v : occ) {
    if (v <= e) continue;
    if (c.lg.empty() || v > last_end) {
      c.lg.push_back(v);
      last_end = v + len - 1;
    }
  }
  return c;
}

}  // namespace detail

// The substitution loop restated on the shrunk view: each round finds the
// longest repeat made of plain bytes, replaces its type 1/2/3 occurrences
// with the round's placeholder, and drops the swallowed cells.  Ties go to
// the repeat with the leftmost occurrence; structure-order tie breaking has
// no string-level definition, so it is rejected here.
inline CompressResult naive_compress(std::string_view input, TieBreak policy) {
  if (policy != TieBreak::leftmost)
    throw std::logic_error("oracle supports the leftmost tie break only");
  std::vector<detail::ViewCell> view;
  view.reserve(input.size() + 1);
  for (std::size_t i = 0; i < input.size(); ++i)
    view.push_back({static_cast<unsigned char>(input[i]),
                    static_cast<std::uint32_t>(i + 1)});
  view.push_back({SENTINEL, static_cast<std::uint32_t>(input.size() + 1)});

  CompressResult res;
  std::map<std::uint32_t, TokenInfo> tokens;
  for (std::uint32_t k = 1;; ++k) {
    const std::size_t m = view.size(), w = m + 1;
    std::vector<Symbol> vs(m);
    for (std::size_t i = 0; i < m; ++i) vs[i] = view[i].sym;
    const auto lce = detail::lce_table(vs);
    std::vector<std::size_t> clean_run(m + 1, 0);
    for (std::size_t i = m; i-- > 0;)
      clean_run[i] = is_byte(vs[i]) ? clean_run[i + 1] + 1 : 0;
    std::size_t best = 0, best_at = 0;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) {
        std::size_t c = std::min<std::size_t>(lce[i * w + j], clean_run[i]);
        if (c > best) {
          best = c;
          best_at = i;
        }
      }
    if (best < 2) break;
    if (k > input.size()) throw std::logic_error("substitution failed to terminate");

    const std::size_t len = best;
    std::vector<std::size_t> occ;
    for (std::size_t i = 0; i + len <= m; ++i)
      if (lce[i * w + best_at] >= len) occ.push_back(i);

    auto cls = detail::classify_view(occ, len);
    std::vector<std::pair<std::size_t, OccType>> sel;
    if (cls.has_t1) sel.push_back({cls.t1, OccType::type1});
    if (cls.lg.size() == 1)
      sel.push_back({cls.lg[0], OccType::type2});
    else
      for (std::size_t v : cls.lg) sel.push_back({v, OccType::type3});

    StepRecord rec;
    rec.step = k;
    rec.lr.assign(vs.begin() + best_at, vs.begin() + best_at + len);
    rec.len = static_cast<std::uint32_t>(len);
    const std::uint32_t lpos = view[occ.front()].pos;
    for (auto [v, ty] : sel) {
      Factor f{ty == OccType::type1 ? view[v].pos - lpos : lpos,
               static_cast<std::uint64_t>(len)};
      tokens[view[v].pos] = {ty, k, f};
      rec.replaced.push_back({view[v].pos, ty});
    }
    res.steps.push_back(std::move(rec));

    for (std::size_t t = sel.size(); t-- > 0;) {
      std::size_t v = sel[t].first;
      view[v].sym = hash_symbol(k);
      view.erase(view.begin() + v + 1, view.begin() + v + len);
    }
  }

  std::vector<Symbol> fs(view.size());
  std::vector<std::uint32_t> fp(view.size());
  for (std::size_t i = 0; i < view.size(); ++i) {
    fs[i] = view[i].sym;
    fp[i] = view[i].pos;
  }
  res.encoding = build_encoding(input.size(), fs, fp, tokens);
  return res;
}

// Suffix array (1-based start positions) and lcp array by direct sorting;
// lcp[t] is the common prefix length of the suffixes at sa[t-1] and sa[t],
// with lcp[0] = 0.
inline std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>> naive_sa_lcp(
    const std::vector<Symbol>& s) {
  const std::size_t n = s.size();
  std::vector<std::uint32_t> sa(n);
  std::iota(sa.begin(), sa.end(), 1);
  std::sort(sa.begin(), sa.end(), [&](std::uint32_t a, std::uint32_t b) {
    std::size_t i = a - 1, j = b - 1;
    while (i < n && j < n) {
      if (s[i] != s[j]) return sym_rank(s[i]) < sym_rank(s[j]);
      ++i, ++j;
    }
    return i == n && j < n;  // proper prefix sorts first
  });
  std::vector<std::uint32_t> lcp(n, 0);
  for (std::size_t t = 1; t < n; ++t) {
    std::size_t i = sa[t - 1] - 1, j = sa[t] - 1, c = 0;
    while (i + c < n && j + c < n && s[i + c] == s[j + c]) ++c;
    lcp[t] = static_cast<std::uint32_t>(c);
  }
  return {sa, lcp};
}

// Canonical tree from first principles: leaves are the suffixes with their
// 1-based start positions, internal nodes the substrings with at least two
// distinct continuations.  Requires a terminal symbol occurring exactly
// once so all suffixes are distinct.
inline CanonicalTree naive_canonical_tree(const std::vector<Symbol>& s) {
  const std::size_t n = s.size();
  if (n == 0 || std::count(s.begin(), s.end(), s.back()) != 1)
    throw std::logic_error("canonical tree needs a unique terminal symbol");
  CanonicalTree t;
  for (std::size_t i = 0; i < n; ++i)
    t.leaves.emplace_back(std::vector<Symbol>(s.begin() + i, s.end()),
                          static_cast<std::uint32_t>(i + 1));
  const auto lce = detail::lce_table(s);
  constexpr std::int64_t boundary = std::numeric_limits<std::int64_t>::min();
  for (std::size_t len = 1; len + 1 <= n; ++len) {
    detail::for_each_window_group(
        s, lce, len, [&](const std::vector<std::uint32_t>& group) {
          if (group.size() < 2) return;
          std::set<std::int64_t> right;
          for (std::uint32_t a : group)
            right.insert(a + len == n ? boundary : sym_rank(s[a + len]));
          if (right.size() >= 2)
            t.internals.emplace_back(s.begin() + group[0], s.begin() + group[0] + len);
        });
  }
  t.normalize();
  return t;
}

}  // namespace lzlfs::oracle
