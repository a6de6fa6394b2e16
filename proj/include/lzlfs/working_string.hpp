#pragma once

#include <cstdint>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

#include "lzlfs/symbols.hpp"

namespace lzlfs {

// Length-preserving working string.  Substituting an occurrence writes the
// step placeholder at its first cell and pads the remainder, so original
// 1-based coordinates stay valid for the whole run.  A doubly linked list
// over live (non-pad) cells gives O(1) pad skipping in either direction;
// virtual boundary nodes 0 and n+1 terminate the list.
class WorkingString {
 public:
  static WorkingString from_bytes(std::string_view bytes) {
    std::vector<Symbol> syms;
    syms.reserve(bytes.size() + 1);
    for (unsigned char c : bytes) syms.push_back(c);
    syms.push_back(SENTINEL);
    return WorkingString(std::move(syms));
  }

  static WorkingString from_symbols(std::vector<Symbol> syms) {
    if (syms.empty() || !is_sentinel(syms.back()))
      throw std::logic_error("working string must end with the sentinel");
    return WorkingString(std::move(syms));
  }

  std::uint32_t n() const { return static_cast<std::uint32_t>(cells_.size()); }
  std::uint32_t live_count() const { return live_count_; }

  Symbol cell(std::uint32_t p) const { return cells_[p - 1]; }
  bool is_live(std::uint32_t p) const { return !is_pad(cells_[p - 1]); }

  // next_live(0) is the first live position; next_live past the last live
  // cell yields n+1.  prev_live mirrors this with 0 as the left boundary.
  std::uint32_t next_live(std::uint32_t p) const { return next_live_[p]; }
  std::uint32_t prev_live(std::uint32_t p) const { return prev_live_[p]; }
  std::uint32_t first_live() const { return next_live_[0]; }
  std::uint32_t last_live() const { return prev_live_[n() + 1]; }

  void replace_occurrence(std::uint32_t i, std::uint32_t len, std::uint32_t step) {
    if (i < 1 || len < 2 || i + len - 1 > n())
      throw std::logic_error("substitution interval out of range");
    for (std::uint32_t p = i; p < i + len; ++p) {
      Symbol s = cells_[p - 1];
      if (is_pad(s)) throw std::logic_error("substitution hits a pad cell");
      if (is_hash(s)) throw std::logic_error("substitution hits a placeholder");
      if (is_sentinel(s)) throw std::logic_error("substitution hits the sentinel");
    }
    cells_[i - 1] = hash_symbol(step);
    for (std::uint32_t p = i + 1; p < i + len; ++p) {
      cells_[p - 1] = PAD;
      std::uint32_t prv = prev_live_[p], nxt = next_live_[p];
      next_live_[prv] = nxt;
      prev_live_[nxt] = prv;
    }
    live_count_ -= len - 1;
  }

  std::vector<Symbol> live_view() const {
    std::vector<Symbol> out;
    out.reserve(live_count_);
    for (std::uint32_t p = first_live(); p <= n(); p = next_live_[p])
      out.push_back(cells_[p - 1]);
    return out;
  }

  std::vector<std::uint32_t> live_positions() const {
    std::vector<std::uint32_t> out;
    out.reserve(live_count_);
    for (std::uint32_t p = first_live(); p <= n(); p = next_live_[p]) out.push_back(p);
    return out;
  }

  // Shrunk string plus the map from its 0-based indices back to original
  // 1-based positions.
  std::pair<std::vector<Symbol>, std::vector<std::uint32_t>> shrunk() const {
    std::pair<std::vector<Symbol>, std::vector<std::uint32_t>> out;
    out.first.reserve(live_count_);
    out.second.reserve(live_count_);
    for (std::uint32_t p = first_live(); p <= n(); p = next_live_[p]) {
      out.first.push_back(cells_[p - 1]);
      out.second.push_back(p);
    }
    return out;
  }

 private:
  explicit WorkingString(std::vector<Symbol> syms)
      : cells_(std::move(syms)),
        live_count_(static_cast<std::uint32_t>(cells_.size())) {
    std::uint32_t size = n();
    next_live_.resize(size + 2);
    prev_live_.resize(size + 2);
    for (std::uint32_t p = 0; p <= size; ++p) next_live_[p] = p + 1;
    next_live_[size + 1] = size + 1;
    for (std::uint32_t p = 1; p <= size + 1; ++p) prev_live_[p] = p - 1;
    prev_live_[0] = 0;
  }

  std::vector<Symbol> cells_;
  std::vector<std::uint32_t> next_live_;
  std::vector<std::uint32_t> prev_live_;
  std::uint32_t live_count_;
};

}  // namespace lzlfs
