#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lzlfs/symbols.hpp"

namespace lzlfs {

// Structure-free description of a suffix tree: every root-to-leaf path with
// its leaf id, and the root-to-node path of every proper internal node (the
// root itself is left implicit).  Two trees over the same string are equal
// exactly when their canonical forms are, which is what the rebuild
// comparisons rely on.
struct CanonicalTree {
  std::vector<std::pair<std::vector<Symbol>, std::uint32_t>> leaves;
  std::vector<std::vector<Symbol>> internals;

  friend bool operator==(const CanonicalTree&, const CanonicalTree&) = default;

  void normalize() {
    auto lex = [](const std::vector<Symbol>& a, const std::vector<Symbol>& b) {
      return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                          SymRankLess{});
    };
    std::sort(leaves.begin(), leaves.end(), [&](const auto& x, const auto& y) {
      if (x.first != y.first) return lex(x.first, y.first);
      return x.second < y.second;
    });
    std::sort(internals.begin(), internals.end(), lex);
  }
};

inline std::string describe(const CanonicalTree& t) {
  std::string out;
  for (const auto& [path, id] : t.leaves)
    out += "leaf " + render_symbols(path) + " @" + std::to_string(id) + "\n";
  for (const auto& path : t.internals) out += "node " + render_symbols(path) + "\n";
  return out;
}

}  // namespace lzlfs
