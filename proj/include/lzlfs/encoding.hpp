#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "lzlfs/symbols.hpp"

namespace lzlfs {

enum class Mode : std::uint8_t { full = 0, simplified = 1, baseline = 2 };

enum class TieBreak { leftmost, bucket_order };

// How a replaced occurrence is reconstructed.  type1 copies from an
// overlapping occurrence immediately to its left, type2 copies from the
// leftmost occurrence, type3 is a group of occurrences sharing one pointer
// to the leftmost occurrence.
enum class OccType : std::uint8_t { type1 = 1, type2 = 2, type3 = 3 };

// (value, length) pair describing one copy source.  A type1 replacement
// stores the back-distance i - l from the replaced start i to the leftmost
// occurrence l; types 2 and 3 store l itself.  Coordinates are 1-based
// positions in the original input.
struct Factor {
  std::uint64_t value = 0;
  std::uint64_t length = 0;
  friend bool operator==(const Factor&, const Factor&) = default;
};

struct Replacement {
  std::uint32_t pos = 0;  // original 1-based start of the replaced occurrence
  OccType type = OccType::type1;
  friend bool operator==(const Replacement&, const Replacement&) = default;
};

struct StepRecord {
  std::uint32_t step = 0;             // substitutions are numbered from 1
  std::vector<Symbol> lr;             // the repeat chosen at this step
  std::uint32_t len = 0;              // == lr.size()
  std::vector<Replacement> replaced;  // ascending by pos
  friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

// A candidate the gated variant declined: the repeat, its length, and how
// many occurrences a substitution would have replaced.
struct SkipRecord {
  std::vector<Symbol> lr;
  std::uint32_t len = 0;
  std::uint32_t substitutable = 0;
  friend bool operator==(const SkipRecord&, const SkipRecord&) = default;
};

// Compressed form: the final string as placeholder-delimited literal runs
// plus the factor list and one reference code per placeholder.
//
// f_codes[t] describes the t-th placeholder in left to right order:
//   1    self-referential copy (type1),
//   2    copy from the leftmost occurrence (type2),
//   2+j  member of shared group j, groups numbered from 1 by first
//        appearance, so the first group reads as code 3.
// Codes 1 and 2 each consume the next entry of `factors`; a group consumes
// one entry, claimed at its first appearance and reused afterwards.
struct Encoding {
  std::uint64_t original_len = 0;         // input bytes, sentinel excluded
  std::vector<std::string> literal_runs;  // always f_codes.size() + 1 runs
  std::vector<Factor> factors;            // consumption order, see above
  std::vector<std::uint32_t> f_codes;
  friend bool operator==(const Encoding&, const Encoding&) = default;
};

struct CompressResult {
  Encoding encoding;
  std::vector<StepRecord> steps;
  std::vector<SkipRecord> skipped;  // gated variant only
};

// Everything known about one placeholder cell, keyed by its original
// position: which step wrote it, how it reconstructs, and its factor.
struct TokenInfo {
  OccType type = OccType::type1;
  std::uint32_t step = 0;
  Factor factor;
};

// Builds the Encoding by sweeping the final shrunk view left to right.
// `syms`/`pos` are the parallel symbol and original-position arrays of the
// view, sentinel included; `tokens` maps each placeholder position to its
// reconstruction info.  Group codes are assigned in order of first
// appearance, one shared factor per group.
inline Encoding build_encoding(std::uint64_t original_len,
                               const std::vector<Symbol>& syms,
                               const std::vector<std::uint32_t>& pos,
                               const std::map<std::uint32_t, TokenInfo>& tokens) {
  Encoding e;
  e.original_len = original_len;
  std::string run;
  std::map<std::uint32_t, std::uint32_t> group_code;  // step -> assigned code
  std::uint32_t next_code = 3;
  std::uint64_t covered = 0;
  for (std::size_t idx = 0; idx < syms.size(); ++idx) {
    Symbol s = syms[idx];
    if (is_sentinel(s)) continue;
    if (is_hash(s)) {
      e.literal_runs.push_back(std::move(run));
      run.clear();
      const TokenInfo& t = tokens.at(pos[idx]);
      switch (t.type) {
        case OccType::type1:
          e.f_codes.push_back(1);
          e.factors.push_back(t.factor);
          break;
        case OccType::type2:
          e.f_codes.push_back(2);
          e.factors.push_back(t.factor);
          break;
        case OccType::type3: {
          auto it = group_code.find(t.step);
          if (it == group_code.end()) {
            it = group_code.emplace(t.step, next_code++).first;
            e.factors.push_back(t.factor);
          }
          e.f_codes.push_back(it->second);
          break;
        }
      }
      covered += t.factor.length;
      continue;
    }
    run.push_back(static_cast<char>(s));
    ++covered;
  }
  e.literal_runs.push_back(std::move(run));
  if (covered != original_len)
    throw std::logic_error("view does not cover the original length");
  return e;
}

}  // namespace lzlfs
