#include <catch2/catch_amalgamated.hpp>

#include "lzlfs/working_string.hpp"

using namespace lzlfs;

TEST_CASE("from_bytes appends the sentinel and starts fully live", "[workstr]") {
  auto w = WorkingString::from_bytes("abcab");
  REQUIRE(w.n() == 6);
  REQUIRE(w.live_count() == 6);
  REQUIRE(w.cell(1) == Symbol{'a'});
  REQUIRE(w.cell(5) == Symbol{'b'});
  REQUIRE(is_sentinel(w.cell(6)));
  REQUIRE(w.first_live() == 1);
  REQUIRE(w.last_live() == 6);
  for (std::uint32_t p = 1; p <= 6; ++p) {
    REQUIRE(w.is_live(p));
    REQUIRE(w.next_live(p) == p + 1);
    REQUIRE(w.prev_live(p) == p - 1);
  }
}

TEST_CASE("substitution pads the tail of the interval and splices it out", "[workstr]") {
  auto w = WorkingString::from_bytes("abcab");
  w.replace_occurrence(4, 2, 1);
  REQUIRE(w.n() == 6);
  REQUIRE(w.live_count() == 5);
  REQUIRE(w.cell(4) == hash_symbol(1));
  REQUIRE(is_pad(w.cell(5)));
  REQUIRE(w.is_live(4));
  REQUIRE(!w.is_live(5));
  REQUIRE(w.next_live(4) == 6);
  REQUIRE(w.prev_live(6) == 4);
  REQUIRE(w.live_view() ==
          std::vector<Symbol>{'a', 'b', 'c', hash_symbol(1), SENTINEL});
  auto [shr, pos] = w.shrunk();
  REQUIRE(shr == w.live_view());
  REQUIRE(pos == std::vector<std::uint32_t>{1, 2, 3, 4, 6});
}

TEST_CASE("pad skipping is O(1) through long dead zones", "[workstr]") {
  std::string s(64, 'x');
  auto w = WorkingString::from_bytes(s);
  w.replace_occurrence(2, 60, 1);
  REQUIRE(w.next_live(2) == 62);
  REQUIRE(w.prev_live(62) == 2);
  REQUIRE(w.live_view() ==
          std::vector<Symbol>{'x', hash_symbol(1), 'x', 'x', 'x', SENTINEL});
}

TEST_CASE("substitution preconditions are enforced", "[workstr]") {
  auto w = WorkingString::from_bytes("abcabcab");
  REQUIRE_THROWS_AS(w.replace_occurrence(8, 2, 1), std::logic_error);  // sentinel
  REQUIRE_THROWS_AS(w.replace_occurrence(8, 3, 1), std::logic_error);  // past end
  REQUIRE_THROWS_AS(w.replace_occurrence(3, 1, 1), std::logic_error);  // too short
  REQUIRE_THROWS_AS(w.replace_occurrence(0, 2, 1), std::logic_error);  // before start
  w.replace_occurrence(4, 3, 1);
  REQUIRE_THROWS_AS(w.replace_occurrence(5, 2, 2), std::logic_error);  // pad cell
  REQUIRE_THROWS_AS(w.replace_occurrence(4, 2, 2), std::logic_error);  // placeholder
  REQUIRE(w.live_view() == std::vector<Symbol>{'a', 'b', 'c', hash_symbol(1),
                                               'a', 'b', SENTINEL});
}

TEST_CASE("from_symbols demands a trailing sentinel", "[workstr]") {
  REQUIRE_THROWS_AS(WorkingString::from_symbols({'a', 'b'}), std::logic_error);
  auto w = WorkingString::from_symbols({'a', hash_symbol(2), SENTINEL});
  REQUIRE(w.n() == 3);
  REQUIRE(is_hash(w.cell(2)));
}

TEST_CASE("overlapping substitutions of different steps coexist", "[workstr]") {
  auto w = WorkingString::from_bytes("abcdefgh");
  w.replace_occurrence(5, 3, 1);
  w.replace_occurrence(2, 3, 2);
  REQUIRE(w.live_view() == std::vector<Symbol>{'a', hash_symbol(2), hash_symbol(1),
                                               'h', SENTINEL});
  auto lp = w.live_positions();
  REQUIRE(lp == std::vector<std::uint32_t>{1, 2, 5, 8, 9});
}
