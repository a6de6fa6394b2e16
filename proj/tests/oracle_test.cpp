#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>
#include <string>
#include <vector>

#include "lzlfs/oracle.hpp"
#include "lzlfs/working_string.hpp"

using namespace lzlfs;

namespace {

std::vector<Symbol> bytes(std::string_view s) {
  std::vector<Symbol> v;
  for (unsigned char c : s) v.push_back(c);
  return v;
}

std::vector<Symbol> text(std::string_view s) {
  auto v = bytes(s);
  v.push_back(SENTINEL);
  return v;
}

std::set<std::vector<Symbol>> strset(std::initializer_list<std::string_view> xs) {
  std::set<std::vector<Symbol>> out;
  for (auto x : xs) out.insert(bytes(x));
  return out;
}

}  // namespace

TEST_CASE("longest repeats over small strings", "[oracle]") {
  auto [l1, s1] = oracle::longest_repeats(text("abcabcaabcdabcacabc"));
  CHECK(l1 == 4);
  CHECK(s1 == strset({"abca", "cabc"}));

  // abc repeats at 8 and 14 alongside baa at 3 and 12; the length-3 tie is
  // broken toward baa only by the leftmost rule during compression.
  auto [l2, s2] = oracle::longest_repeats(text("abbaaccabccbaabcb"));
  CHECK(l2 == 3);
  CHECK(s2 == strset({"abc", "baa"}));

  auto [l3, s3] = oracle::longest_repeats(text("xyz"));
  CHECK(l3 == 0);
  CHECK(s3.empty());

  auto [l4, s4] = oracle::longest_repeats(text("aaaa"));
  CHECK(l4 == 3);
  CHECK(s4 == strset({"aaa"}));

  auto [l5, s5] = oracle::longest_repeats({});
  CHECK(l5 == 0);
  CHECK(s5.empty());

  auto [l6, s6] = oracle::longest_repeats(text("abab"));
  CHECK(l6 == 2);
  CHECK(s6 == strset({"ab"}));
}

TEST_CASE("maximal repeats by definition check", "[oracle]") {
  CHECK(oracle::maximal_repeats(text("abab")) == strset({"ab"}));

  // Two-sided family: segments aXab_i with X = xyz and fresh b_i each time.
  // The full aXa block extends differently on both sides at every segment,
  // while aX, Xa, and X alone always continue the same way.
  auto family = oracle::maximal_repeats(text("axyza0axyza1axyza2"));
  CHECK(family.count(bytes("axyza")) == 1);
  CHECK(family.count(bytes("axyz")) == 0);
  CHECK(family.count(bytes("xyza")) == 0);
  CHECK(family.count(bytes("xyz")) == 0);

  CHECK(oracle::maximal_repeats(text("aaaaa")) ==
        strset({"a", "aa", "aaa", "aaaa"}));
}

TEST_CASE("byte-pair repeat termination check", "[oracle]") {
  // Placeholder-broken string: every adjacent pair touches a non-byte.
  std::vector<Symbol> v = {'a', 'b', 'c', hash_symbol(1), hash_symbol(2),
                           'd', hash_symbol(1), 'c', hash_symbol(2), SENTINEL};
  CHECK(oracle::no_repeat_check(v));

  CHECK_FALSE(oracle::no_repeat_check(text("abab")));
  CHECK(oracle::no_repeat_check({}));
  CHECK(oracle::no_repeat_check(text("")));

  std::vector<Symbol> alternating = {'a', hash_symbol(1), 'b', hash_symbol(1),
                                     'a', hash_symbol(1), 'b', SENTINEL};
  CHECK(oracle::no_repeat_check(alternating));
}

TEST_CASE("substitution loop golden outputs", "[oracle]") {
  SECTION("self-overlap plus shared group") {
    auto r = oracle::naive_compress("abcabcaabcdabcacabc", TieBreak::leftmost);
    CHECK(r.encoding.original_len == 19);
    CHECK(r.encoding.literal_runs ==
          std::vector<std::string>({"abc", "", "d", "c", ""}));
    CHECK(r.encoding.factors == std::vector<Factor>({{3, 4}, {1, 3}, {1, 4}}));
    CHECK(r.encoding.f_codes == std::vector<std::uint32_t>({1, 3, 2, 3}));

    REQUIRE(r.steps.size() == 2);
    CHECK(r.steps[0].lr == bytes("abca"));
    CHECK(r.steps[0].replaced ==
          std::vector<Replacement>({{4, OccType::type1}, {12, OccType::type2}}));
    CHECK(r.steps[1].lr == bytes("abc"));
    CHECK(r.steps[1].replaced ==
          std::vector<Replacement>({{8, OccType::type3}, {17, OccType::type3}}));
  }

  SECTION("three singleton replacements") {
    auto r = oracle::naive_compress("abbaaccabccbaabcb", TieBreak::leftmost);
    CHECK(r.encoding.original_len == 17);
    CHECK(r.encoding.literal_runs ==
          std::vector<std::string>({"abbaacc", "", "", "bcb"}));
    CHECK(r.encoding.factors == std::vector<Factor>({{1, 2}, {6, 2}, {3, 3}}));
    CHECK(r.encoding.f_codes == std::vector<std::uint32_t>({2, 2, 2}));

    REQUIRE(r.steps.size() == 3);
    CHECK(r.steps[0].lr == bytes("baa"));
    CHECK(r.steps[0].replaced ==
          std::vector<Replacement>({{12, OccType::type2}}));
    CHECK(r.steps[1].lr == bytes("ab"));
    CHECK(r.steps[1].replaced == std::vector<Replacement>({{8, OccType::type2}}));
    CHECK(r.steps[2].lr == bytes("cc"));
    CHECK(r.steps[2].replaced ==
          std::vector<Replacement>({{10, OccType::type2}}));
  }

  SECTION("pure self-overlap run") {
    auto r = oracle::naive_compress("aaaa", TieBreak::leftmost);
    CHECK(r.encoding.original_len == 4);
    CHECK(r.encoding.literal_runs == std::vector<std::string>({"a", ""}));
    CHECK(r.encoding.factors == std::vector<Factor>({{1, 3}}));
    CHECK(r.encoding.f_codes == std::vector<std::uint32_t>({1}));
    REQUIRE(r.steps.size() == 1);
    CHECK(r.steps[0].replaced == std::vector<Replacement>({{2, OccType::type1}}));
  }

  SECTION("repeat-free inputs pass through") {
    auto r = oracle::naive_compress("xyz", TieBreak::leftmost);
    CHECK(r.encoding.original_len == 3);
    CHECK(r.encoding.literal_runs == std::vector<std::string>({"xyz"}));
    CHECK(r.encoding.factors.empty());
    CHECK(r.encoding.f_codes.empty());
    CHECK(r.steps.empty());

    auto e = oracle::naive_compress("", TieBreak::leftmost);
    CHECK(e.encoding.original_len == 0);
    CHECK(e.encoding.literal_runs == std::vector<std::string>({""}));
  }

  SECTION("structure-order tie break is refused") {
    CHECK_THROWS_AS(oracle::naive_compress("abab", TieBreak::bucket_order),
                    std::logic_error);
  }
}

TEST_CASE("suffix array and lcp by direct sort", "[oracle]") {
  auto [sa1, lcp1] = oracle::naive_sa_lcp(text("abab"));
  CHECK(sa1 == std::vector<std::uint32_t>({5, 3, 1, 4, 2}));
  CHECK(lcp1 == std::vector<std::uint32_t>({0, 0, 2, 0, 1}));

  auto [sa2, lcp2] = oracle::naive_sa_lcp(text("aaa"));
  CHECK(sa2 == std::vector<std::uint32_t>({4, 3, 2, 1}));
  CHECK(lcp2 == std::vector<std::uint32_t>({0, 0, 1, 2}));

  auto [sa3, lcp3] = oracle::naive_sa_lcp(text("banana"));
  CHECK(sa3 == std::vector<std::uint32_t>({7, 6, 4, 2, 1, 5, 3}));
  CHECK(lcp3 == std::vector<std::uint32_t>({0, 0, 1, 3, 0, 0, 2}));

  // Sentinel sorts below bytes, placeholders above them.
  std::vector<Symbol> mixed = {'a', hash_symbol(1), 'a', SENTINEL};
  auto [sa4, lcp4] = oracle::naive_sa_lcp(mixed);
  CHECK(sa4 == std::vector<std::uint32_t>({4, 3, 1, 2}));
  CHECK(lcp4 == std::vector<std::uint32_t>({0, 0, 1, 0}));
}

TEST_CASE("canonical tree from sorted suffixes", "[oracle]") {
  CanonicalTree expected;
  expected.leaves = {{text(""), 5},
                     {text("ab"), 3},
                     {text("abab"), 1},
                     {text("b"), 4},
                     {text("bab"), 2}};
  expected.internals = {bytes("ab"), bytes("b")};
  CHECK(oracle::naive_canonical_tree(text("abab")) == expected);

  CanonicalTree aab;
  aab.leaves = {{text(""), 4}, {text("aab"), 1}, {text("ab"), 2}, {text("b"), 3}};
  aab.internals = {bytes("a")};
  CHECK(oracle::naive_canonical_tree(text("aab")) == aab);

  CHECK_THROWS_AS(oracle::naive_canonical_tree(bytes("aa")), std::logic_error);
}

TEST_CASE("substitution loop properties on random strings", "[oracle]") {
  std::mt19937_64 rng(0xAB12CD34);
  for (int c = 0; c < 200; ++c) {
    const int alpha = 1 << (rng() % 3);
    const std::size_t len = 1 + rng() % 80;
    std::string in;
    for (std::size_t i = 0; i < len; ++i)
      in.push_back(static_cast<char>('a' + rng() % alpha));

    auto r = oracle::naive_compress(in, TieBreak::leftmost);
    CAPTURE(in);

    // Replayed on the padded working string, the steps must reproduce the
    // final view and leave no byte-pair repeats.
    auto ws = WorkingString::from_bytes(in);
    std::uint32_t prev_len = 0xFFFFFFFFu;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> intervals;
    for (const auto& st : r.steps) {
      REQUIRE(st.len >= 2);
      REQUIRE(st.len <= prev_len);
      prev_len = st.len;
      REQUIRE_FALSE(st.replaced.empty());

      int t1 = 0, t2 = 0, t3 = 0;
      for (const auto& rep : st.replaced) {
        switch (rep.type) {
          case OccType::type1: ++t1; break;
          case OccType::type2: ++t2; break;
          case OccType::type3: ++t3; break;
        }
        intervals.push_back({rep.pos, rep.pos + st.len - 1});
        ws.replace_occurrence(rep.pos, st.len, st.step);
      }
      CHECK(t1 <= 1);
      CHECK(t2 <= 1);
      CHECK(!(t2 > 0 && t3 > 0));
      CHECK(t3 != 1);
      if (t1 == 1) CHECK(st.replaced[0].type == OccType::type1);
    }
    CHECK(2 * r.steps.size() <= in.size() + 1);

    std::sort(intervals.begin(), intervals.end());
    for (std::size_t i = 1; i < intervals.size(); ++i)
      CHECK(intervals[i - 1].second < intervals[i].first);

    auto view = ws.live_view();
    CHECK(oracle::no_repeat_check(view));

    // Literal runs of the encoding match the replayed view.
    std::vector<std::string> runs(1);
    for (Symbol s : view) {
      if (is_sentinel(s)) continue;
      if (is_hash(s))
        runs.emplace_back();
      else
        runs.back().push_back(static_cast<char>(s));
    }
    CHECK(runs == r.encoding.literal_runs);
    CHECK(r.encoding.f_codes.size() + 1 == r.encoding.literal_runs.size());
  }
}
