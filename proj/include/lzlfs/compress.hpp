#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lzlfs/classify.hpp"
#include "lzlfs/depth_buckets.hpp"
#include "lzlfs/encoding.hpp"
#include "lzlfs/suffix_tree.hpp"
#include "lzlfs/symbols.hpp"
#include "lzlfs/working_string.hpp"

namespace lzlfs {

struct CompressOptions {
  Mode mode = Mode::full;
  TieBreak tiebreak = TieBreak::leftmost;
};

// Called after each completed step, once the string, tree, and candidate
// index all reflect it.
using StepObserver = std::function<void(
    const StepRecord&, const WorkingString&, const SuffixTree&)>;

inline void append_json_escaped(std::string& out, Symbol s) {
  if (!is_byte(s)) throw std::logic_error("trace strings are byte-only");
  auto c = static_cast<unsigned char>(s);
  if (c >= 0x20 && c <= 0x7e && c != '"' && c != '\\') {
    out.push_back(static_cast<char>(c));
    return;
  }
  static const char hex[] = "0123456789abcdef";
  out += "\\u00";
  out.push_back(hex[c >> 4]);
  out.push_back(hex[c & 15]);
}

// One JSON line per step; the simplified pipeline tags its lines.
inline std::string render_trace_line(const StepRecord& rec,
                                     Mode mode = Mode::full) {
  std::string out = "{\"k\":" + std::to_string(rec.step) + ",\"lr\":\"";
  for (Symbol s : rec.lr) append_json_escaped(out, s);
  out += "\",\"len\":" + std::to_string(rec.len) + ",\"replaced\":[";
  bool first = true;
  for (const Replacement& r : rec.replaced) {
    if (!first) out.push_back(',');
    first = false;
    out += "[" + std::to_string(r.pos) + ",\"";
    out += r.type == OccType::type1 ? "T1"
           : r.type == OccType::type2 ? "T2"
                                      : "T3";
    out += "\"]";
  }
  out += "]";
  if (mode == Mode::simplified) out += ",\"mode\":\"simplified\"";
  out += "}";
  return out;
}

// Repeat-substitution engine.  Each step takes the deepest live internal
// node of the maintained suffix tree, replaces the selected occurrences of
// its path with the step placeholder plus pads, and patches the tree in
// place; the candidate index absorbs the nodes each surgery creates and
// removes.  Original coordinates never shift, so the final token map and
// the shrunk string assemble the encoding directly.
class Compressor {
 public:
  explicit Compressor(std::string_view input, CompressOptions opt = {})
      : opt_(opt),
        original_len_(input.size()),
        w_(WorkingString::from_bytes(input)),
        t_(w_),
        buckets_(t_, w_.n()) {
    if (opt_.mode != Mode::full && opt_.mode != Mode::simplified)
      throw std::logic_error("compressor handles the tree-driven modes only");
  }

  CompressResult run(const StepObserver& observer = {}) {
    if (ran_) throw std::logic_error("compressor instances run once");
    ran_ = true;
    CompressResult res;
    std::uint32_t limit = w_.n() / 2 + 1;
    for (std::uint32_t k = 1;; ++k) {
      std::uint32_t x = buckets_.select(opt_.tiebreak, t_);
      if (x == 0) break;
      if (k > limit) throw std::logic_error("substitution failed to terminate");
      res.steps.push_back(step(k, x));
      if (observer) observer(res.steps.back(), w_, t_);
    }
    auto [view, pos] = w_.shrunk();
    res.encoding = build_encoding(original_len_, view, pos, tokens_);
    return res;
  }

  const WorkingString& text() const { return w_; }
  const SuffixTree& tree() const { return t_; }
  const DepthBuckets& buckets() const { return buckets_; }

 private:
  StepRecord step(std::uint32_t k, std::uint32_t x) {
    std::uint32_t len = t_.depth(x);
    std::uint32_t first = t_.witness(x);
    if (len < 2 || len > prev_len_)
      throw std::logic_error("selected depth breaks monotonicity");
    prev_len_ = len;

    // The chosen repeat is placeholder-free, so its leftmost occurrence is
    // one live block and the label reads straight off the cells.
    std::vector<Symbol> lr;
    lr.reserve(len);
    for (std::uint32_t p = first; p < first + len; ++p) {
      if (!w_.is_live(p) || !is_byte(w_.cell(p)))
        throw std::logic_error("selected repeat is not a live byte block");
      lr.push_back(w_.cell(p));
    }

    std::vector<std::uint32_t> ids;
    for (const auto& [key, c] : t_.children(x)) {
      (void)key;
      if (!t_.is_leaf(c))
        throw std::logic_error("selected node has an internal child");
      ids.push_back(t_.leaf_id(c));
    }

    OccurrenceReport rep;
    if (opt_.mode == Mode::full) {
      std::sort(ids.begin(), ids.end());
      rep = classify(ids, len);
    } else {
      rep = classify_simplified(ids, len, scratch_);
    }

    std::vector<Replacement> sel;
    if (rep.type1) sel.push_back({*rep.type1, OccType::type1});
    if (rep.type2) sel.push_back({*rep.type2, OccType::type2});
    for (std::uint32_t p : rep.type3) sel.push_back({p, OccType::type3});
    if (sel.empty())
      throw std::logic_error("a selected repeat always replaces something");

    umbrella_ = 0;
    auto q = static_cast<std::uint32_t>(sel.size());
    for (const Replacement& r : sel) replace_one(r.pos, k, len, lr[0], q);

    for (const Replacement& r : sel) {
      Factor f = r.type == OccType::type1 ? Factor{r.pos - first, len}
                                          : Factor{first, len};
      tokens_.emplace(r.pos, TokenInfo{r.type, k, f});
    }

    StepRecord rec;
    rec.step = k;
    rec.lr = std::move(lr);
    rec.len = len;
    // Replacements happen in selection order; the record reports them by
    // position.
    std::sort(sel.begin(), sel.end(),
              [](const Replacement& a, const Replacement& b) {
                return a.pos < b.pos;
              });
    rec.replaced = std::move(sel);
    return rec;
  }

  void replace_one(std::uint32_t i, std::uint32_t k, std::uint32_t len,
                   Symbol x0, std::uint32_t q) {
    t_.begin_surgery();

    // Collect the swallowed cells and the affected zone before the string
    // changes.  The zone scan walks left over live cells and stops at the
    // first placeholder: a dead run's left boundary is always a live
    // placeholder, so the scan gathers one contiguous live block ending at
    // i-1, and the suffixes it cuts off contain a placeholder, occur once,
    // and need no patching.
    dead_.clear();
    for (std::uint32_t p = i + 1; p < i + len; ++p) {
      if (!w_.is_live(p))
        throw std::logic_error("replaced occurrence crosses a pad");
      dead_.push_back(p);
    }
    zpos_.clear();
    zsym_.clear();
    std::uint32_t zlo = i > len ? i - len : 1;
    for (std::uint32_t p = i - 1; p >= zlo && p >= 1; --p) {
      if (!w_.is_live(p)) continue;
      Symbol s = w_.cell(p);
      if (is_hash(s)) break;
      zpos_.push_back(p);
      zsym_.push_back(s);
    }
    std::reverse(zpos_.begin(), zpos_.end());
    std::reverse(zsym_.begin(), zsym_.end());

    // (a) the string: placeholder at i, pads behind it
    w_.replace_occurrence(i, len, k);

    // A live placeholder just left of i whose leaf edge began at cell i was
    // keyed by the old first symbol; the key moves with the cell.
    std::uint32_t ps = w_.prev_live(i);
    if (ps >= 1 && is_hash(w_.cell(ps))) {
      std::uint32_t lf = t_.leaf_of(ps);
      if (lf != 0 && t_.pstart(lf) == i) t_.rekey_child(lf, hash_symbol(k));
    }

    // (b) the occurrence leaf moves under the placeholder child
    std::uint32_t lv = t_.leaf_of(i);
    if (lv == 0) throw std::logic_error("replaced occurrence lost its leaf");
    t_.detach_leaf(lv);
    if (q >= 2) {
      if (umbrella_ == 0)
        umbrella_ = t_.make_hash_root_child(hash_symbol(k), i);
      std::uint32_t nl = w_.next_live(i);
      t_.attach_leaf(lv, umbrella_, w_.cell(nl), nl);
    } else {
      t_.attach_leaf(lv, t_.root(), hash_symbol(k), i);
    }

    // (c) suffix leaves swallowed by the pads
    for (std::uint32_t p : dead_) {
      std::uint32_t dl = t_.leaf_of(p);
      if (dl == 0) throw std::logic_error("pad cell lost its leaf");
      t_.detach_leaf(dl);
    }

    // (d) zone suffixes pick up the placeholder
    walk_zone(i, k, x0);

    auto rep = t_.finish_surgery();
    for (auto [v, d] : rep.created)
      if (d >= 2 && t_.alive(v)) buckets_.append(v, d);
    for (auto [v, d] : rep.removed) {
      (void)d;
      buckets_.remove(v);
    }
  }

  // Walks the affected-zone suffixes left to right.  Each one previously
  // continued with the replaced occurrence and now continues with the
  // placeholder; the walk finds its branch point by suffix links and keyed
  // descents (never reading edge cells, which may have just died) and
  // either re-keys the suffix's own leaf edge in place or moves the leaf
  // under the branch point keyed by the placeholder.
  void walk_zone(std::uint32_t i, std::uint32_t k, Symbol x0) {
    Symbol hk = hash_symbol(k);
    std::uint32_t pending = 0;
    Locus prev{};
    bool have_prev = false;
    std::size_t zn = zpos_.size();
    for (std::size_t idx = 0; idx < zn; ++idx) {
      std::uint32_t p = zpos_[idx];
      auto ylen = static_cast<std::uint32_t>(zn - idx);
      auto sym = [this, idx](std::uint32_t d) { return zsym_[idx + d]; };
      Locus cur;
      if (!have_prev) {
        cur = t_.descend_keyed(t_.root(), ylen, sym);
      } else if (prev.at_node() && t_.slink(prev.node) != 0) {
        cur = Locus{t_.slink(prev.node), 0, 0};
      } else {
        std::uint32_t u1 = prev.at_node() ? t_.parent(prev.node) : prev.node;
        cur = u1 == t_.root() ? t_.descend_keyed(t_.root(), ylen, sym)
                              : t_.descend_from_slink(u1, ylen, sym);
      }

      std::uint32_t locus_node = 0;
      std::uint32_t fresh = 0;
      if (cur.at_node()) {
        if (t_.depth(cur.node) != ylen)
          throw std::logic_error("zone walk landed at the wrong depth");
        const auto& ch = t_.children(cur.node);
        auto it = ch.find(x0);
        if (it == ch.end())
          throw std::logic_error("zone suffix lost its continuation");
        std::uint32_t c = it->second;
        if (t_.is_leaf(c)) {
          // A leaf child means exactly one suffix continues with the old
          // first symbol, and it is this one: moving its key rewrites the
          // whole tail at once.
          if (c != t_.leaf_of(p) || t_.pstart(c) != i)
            throw std::logic_error("zone leaf does not own its edge");
          t_.rekey_child(c, hk);
        } else {
          std::uint32_t lf = t_.leaf_of(p);
          if (lf == 0) throw std::logic_error("zone suffix lost its leaf");
          t_.detach_leaf(lf);
          t_.attach_leaf(lf, cur.node, hk, i);
        }
        locus_node = cur.node;
        prev = cur;
      } else if (t_.is_leaf(cur.child)) {
        // Inside a leaf edge only the edge's own suffix passes, and its
        // label rewrites itself.
        if (cur.child != t_.leaf_of(p))
          throw std::logic_error("zone point inside a foreign leaf edge");
        prev = cur;
      } else {
        // Splitting first keeps the leaf in the lower subtree while the
        // fresh node inherits its witness, so the attach guard stays valid.
        fresh = t_.split_edge(cur.node, cur.child, cur.offset, x0);
        std::uint32_t lf = t_.leaf_of(p);
        if (lf == 0) throw std::logic_error("zone suffix lost its leaf");
        t_.detach_leaf(lf);
        t_.attach_leaf(lf, fresh, hk, i);
        locus_node = fresh;
        prev = Locus{fresh, 0, 0};
      }

      if (pending != 0) {
        if (locus_node == 0)
          throw std::logic_error("suffix link pending at an in-leaf point");
        t_.set_slink(pending, locus_node);
        pending = 0;
      }
      if (fresh != 0) {
        if (t_.depth(fresh) >= 2)
          pending = fresh;
        else
          t_.set_slink(fresh, t_.root());
      }
      have_prev = true;
    }
    if (pending != 0)
      throw std::logic_error("suffix link pending at the zone end");
  }

  CompressOptions opt_;
  std::uint64_t original_len_;
  WorkingString w_;
  SuffixTree t_;
  DepthBuckets buckets_;
  std::map<std::uint32_t, TokenInfo> tokens_;
  Type3Scratch scratch_;
  std::vector<std::uint32_t> dead_;
  std::vector<std::uint32_t> zpos_;
  std::vector<Symbol> zsym_;
  std::uint32_t umbrella_ = 0;
  std::uint32_t prev_len_ = std::numeric_limits<std::uint32_t>::max();
  bool ran_ = false;
};

inline CompressResult compress(std::string_view input, CompressOptions opt = {},
                               const StepObserver& observer = {}) {
  return Compressor(input, opt).run(observer);
}

}  // namespace lzlfs
