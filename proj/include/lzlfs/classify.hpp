#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

namespace lzlfs {

// Occurrence partition of one substitution step, in original coordinates.
// leftmost is never replaced; type1 is the second occurrence when it
// overlaps the first; e is the guard cell: replacements other than type1
// start strictly past it.  Exactly one of type2 / type3 is populated when
// anything survives past e, and type4 collects the occurrences the step
// leaves alone.
struct OccurrenceReport {
  std::uint32_t lr_length = 0;
  std::uint32_t leftmost = 0;
  std::optional<std::uint32_t> type1;
  std::uint32_t e = 0;
  std::optional<std::uint32_t> type2;
  std::vector<std::uint32_t> type3;
  std::vector<std::uint32_t> type4;
};

// Full classification over ascending occurrence starts: left-greedy chain
// past e, a singleton chain degrading to type2.
inline OccurrenceReport classify(const std::vector<std::uint32_t>& ids,
                                 std::uint32_t len) {
  if (ids.size() < 2)
    throw std::logic_error("classification needs at least two occurrences");
  if (!std::is_sorted(ids.begin(), ids.end()))
    throw std::logic_error("occurrence ids must be ascending");
  OccurrenceReport r;
  r.lr_length = len;
  r.leftmost = ids[0];
  if (ids[0] + len - 1 >= ids[1]) r.type1 = ids[1];
  r.e = (r.type1 ? *r.type1 : ids[0]) + len - 1;
  std::vector<std::uint32_t> chain;
  std::uint32_t chain_end = 0;
  for (std::uint32_t id : ids) {
    if (id == r.leftmost || (r.type1 && id == *r.type1)) continue;
    if (id <= r.e) {
      r.type4.push_back(id);
      continue;
    }
    if (chain.empty() || id > chain_end) {
      chain.push_back(id);
      chain_end = id + len - 1;
    } else {
      r.type4.push_back(id);
    }
  }
  if (chain.size() == 1)
    r.type2 = chain[0];
  else if (!chain.empty())
    r.type3 = std::move(chain);
  return r;
}

// Reusable state for the block filter below; version stamps spare a clear
// per call.
struct Type3Scratch {
  std::vector<std::uint32_t> stamp;
  std::vector<std::uint32_t> taken;
  std::uint32_t round = 0;
};

// Maximal non-overlapping subset of equal-length candidate intervals,
// scanned in the order given: a start is taken iff it overlaps nothing
// taken so far.  Starts land in length-len blocks; two starts in one block
// always overlap, so at most one taken start lives per block and the
// overlap test probes three blocks.  The scan order decides which maximal
// subset comes out.
inline std::vector<std::uint32_t> select_type3_simplified(
    const std::vector<std::uint32_t>& candidates, std::uint32_t len,
    Type3Scratch& s) {
  if (len == 0) throw std::logic_error("candidate intervals need a length");
  if (s.round == std::numeric_limits<std::uint32_t>::max()) {
    std::fill(s.stamp.begin(), s.stamp.end(), 0);
    s.round = 0;
  }
  ++s.round;
  std::vector<std::uint32_t> out;
  for (std::uint32_t p : candidates) {
    if (p == 0) throw std::logic_error("candidate starts are 1-based");
    std::uint32_t b = (p - 1) / len;
    if (b + 2 > s.stamp.size()) {
      s.stamp.resize(b + 2, 0);
      s.taken.resize(b + 2, 0);
    }
    bool clash = false;
    for (std::uint32_t bb = (b == 0 ? 0 : b - 1); bb <= b + 1; ++bb) {
      if (s.stamp[bb] != s.round) continue;
      std::uint32_t q = s.taken[bb];
      if ((p > q ? p - q : q - p) < len) {
        clash = true;
        break;
      }
    }
    if (!clash) {
      out.push_back(p);
      s.stamp[b] = s.round;
      s.taken[b] = p;
    }
  }
  return out;
}

inline std::vector<std::uint32_t> select_type3_simplified(
    const std::vector<std::uint32_t>& candidates, std::uint32_t len) {
  Type3Scratch s;
  return select_type3_simplified(candidates, len, s);
}

// Same partition boundaries as classify (leftmost, type1, e, and the
// type2 condition all agree) computed with single-pass minimum scans and
// no comparison sort.  ids arrive in the child-structure order of the
// selected node and keep that order through the type-3 scan, so the
// replaced set may differ from the left-greedy chain while staying a
// maximal non-overlapping choice.
inline OccurrenceReport classify_simplified(
    const std::vector<std::uint32_t>& ids, std::uint32_t len,
    Type3Scratch& s) {
  if (ids.size() < 2)
    throw std::logic_error("classification needs at least two occurrences");
  OccurrenceReport r;
  r.lr_length = len;
  std::uint32_t lo = std::min(ids[0], ids[1]);
  std::uint32_t lo2 = std::max(ids[0], ids[1]);
  for (std::size_t j = 2; j < ids.size(); ++j) {
    std::uint32_t id = ids[j];
    if (id < lo) {
      lo2 = lo;
      lo = id;
    } else if (id < lo2) {
      lo2 = id;
    }
  }
  r.leftmost = lo;
  if (lo + len - 1 >= lo2) r.type1 = lo2;
  r.e = (r.type1 ? lo2 : lo) + len - 1;
  std::vector<std::uint32_t> after;
  std::uint32_t amin = 0, amax = 0;
  for (std::uint32_t id : ids) {
    if (id == lo || (r.type1 && id == lo2)) continue;
    if (id <= r.e) {
      r.type4.push_back(id);
      continue;
    }
    if (after.empty() || id < amin) amin = id;
    if (after.empty() || id > amax) amax = id;
    after.push_back(id);
  }
  if (after.empty()) return r;
  if (amax <= amin + len - 1) {
    // Every survivor overlaps the earliest one, so one replacement is all
    // the step gets.
    r.type2 = amin;
    for (std::uint32_t id : after)
      if (id != amin) r.type4.push_back(id);
    return r;
  }
  r.type3 = select_type3_simplified(after, len, s);
  for (std::uint32_t id : after) {
    std::uint32_t b = (id - 1) / len;
    if (!(s.stamp[b] == s.round && s.taken[b] == id)) r.type4.push_back(id);
  }
  return r;
}

}  // namespace lzlfs
