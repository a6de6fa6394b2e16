#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "lzlfs/encoding.hpp"
#include "lzlfs/suffix_tree.hpp"

namespace lzlfs {

// Candidate index for the substitution loop.  bucket[d] chains every live
// internal node of string depth d >= 2, doubly linked for O(1) unlink; the
// cursor tracks the deepest non-empty bucket and only ever moves down,
// mirroring the non-increasing lengths of the chosen repeats.  Node id 0
// terminates every chain (the root never enters a bucket).
class DepthBuckets {
 public:
  DepthBuckets(const SuffixTree& t, std::uint32_t n)
      : heads_(static_cast<std::size_t>(n) + 2, 0),
        tails_(static_cast<std::size_t>(n) + 2, 0),
        cursor_(n + 1) {
    // Preorder walk with children in symbol order fixes the initial chain
    // order inside each bucket.
    std::vector<std::uint32_t> stack{t.root()};
    std::vector<std::uint32_t> tmp;
    while (!stack.empty()) {
      std::uint32_t u = stack.back();
      stack.pop_back();
      if (u != t.root() && t.depth(u) >= 2) append(u, t.depth(u));
      tmp.clear();
      for (const auto& [key, c] : t.children(u)) {
        (void)key;
        if (!t.is_leaf(c)) tmp.push_back(c);
      }
      for (auto it = tmp.rbegin(); it != tmp.rend(); ++it) stack.push_back(*it);
    }
    while (cursor_ >= 2 && heads_[cursor_] == 0) --cursor_;
  }

  // Deepest candidate under the policy, or 0 when none remain at depth >= 2.
  // The winner leaves its bucket for good: the substitution that follows
  // destroys the node, so it must never be picked twice.
  std::uint32_t select(TieBreak policy, const SuffixTree& t) {
    while (cursor_ >= 2 && heads_[cursor_] == 0) --cursor_;
    if (cursor_ < 2) return 0;
    std::uint32_t pick = heads_[cursor_];
    if (policy == TieBreak::leftmost) {
      // Every chained node's children are leaves at selection time, so its
      // witness is already the leftmost occurrence start.
      for (std::uint32_t v = links_[pick].next; v != 0; v = links_[v].next)
        if (t.witness(v) < t.witness(pick)) pick = v;
    }
    remove(pick);
    return pick;
  }

  void append(std::uint32_t v, std::uint32_t d) {
    if (d < 2 || d > cursor_)
      throw std::logic_error("bucket append outside the cursor range");
    if (v >= links_.size()) links_.resize(static_cast<std::size_t>(v) + 1);
    Link& l = links_[v];
    if (l.in) throw std::logic_error("node is already bucketed");
    l.in = true;
    l.depth = d;
    l.next = 0;
    l.prev = tails_[d];
    if (tails_[d] != 0)
      links_[tails_[d]].next = v;
    else
      heads_[d] = v;
    tails_[d] = v;
  }

  // Unlinks v if present; unknown ids are a no-op so the caller can feed
  // surgery reports without tracking which removals were bucketed.
  void remove(std::uint32_t v) {
    if (v >= links_.size() || !links_[v].in) return;
    Link& l = links_[v];
    std::uint32_t d = l.depth;
    if (l.prev != 0)
      links_[l.prev].next = l.next;
    else
      heads_[d] = l.next;
    if (l.next != 0)
      links_[l.next].prev = l.prev;
    else
      tails_[d] = l.prev;
    l.in = false;
    l.prev = l.next = 0;
  }

  bool bucketed(std::uint32_t v) const {
    return v < links_.size() && links_[v].in;
  }

  std::uint32_t cursor() const { return cursor_; }

  std::vector<std::uint32_t> bucket_nodes(std::uint32_t d) const {
    std::vector<std::uint32_t> out;
    if (d >= heads_.size()) return out;
    for (std::uint32_t v = heads_[d]; v != 0; v = links_[v].next)
      out.push_back(v);
    return out;
  }

 private:
  struct Link {
    std::uint32_t prev = 0;
    std::uint32_t next = 0;
    std::uint32_t depth = 0;
    bool in = false;
  };

  std::vector<std::uint32_t> heads_;
  std::vector<std::uint32_t> tails_;
  std::vector<Link> links_;
  std::uint32_t cursor_;
};

}  // namespace lzlfs
