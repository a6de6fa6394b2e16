#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lzlfs/canonical.hpp"
#include "lzlfs/symbols.hpp"
#include "lzlfs/working_string.hpp"

namespace lzlfs {

// A position in the tree: either an explicit node (child == 0) or a point
// `offset` live symbols down the edge from `node` to `child`.
struct Locus {
  std::uint32_t node = 0;
  std::uint32_t child = 0;
  std::uint32_t offset = 0;
  bool at_node() const { return child == 0; }
  friend bool operator==(const Locus&, const Locus&) = default;
};

// Suffix tree over a working string.  Edge labels are windows (pstart, pend)
// of raw cells; a label is read as `depth(v) - depth(parent)` live cells
// starting at pstart (to the end of the string for leaves), skipping pads.
// Window invariant: every node's window references the cells of the
// occurrence at `witness`, the smallest leaf id in its subtree, so labels
// survive later substitutions to the right of that occurrence.
//
// Construction is online left to right; a normalization pass then assigns
// leaf ids (= suffix start positions), string depths, witnesses, and
// witness-based windows.
//
// Structural edits are grouped into surgeries: detach/attach/split run
// eagerly, while splices of one-child parents and window repairs are
// deferred to finish_surgery.  Deferral matters because a suffix-link chain
// may pass through a node that just went unary; splicing it immediately
// would dangle the link.  The public remove_leaf and redirect_leaf_edge run
// a whole surgery each, so callers see eager splicing.
class SuffixTree {
 public:
  static constexpr std::uint32_t nil = 0;

  struct SurgeryReport {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> created;  // (node, depth)
    std::vector<std::pair<std::uint32_t, std::uint32_t>> removed;  // internal only
  };

  struct RemoveReport {
    std::uint32_t spliced_node = 0;  // 0 when the old parent kept >= 2 children
    std::uint32_t spliced_depth = 0;
  };

  explicit SuffixTree(const WorkingString& w) : w_(&w) {
    if (w.live_count() != w.n())
      throw std::logic_error("tree construction needs a fully live string");
    build();
    normalize();
  }

  std::uint32_t root() const { return root_; }
  std::uint32_t node_count() const { return static_cast<std::uint32_t>(nodes_.size()) - 1; }
  bool alive(std::uint32_t v) const { return nodes_[v].alive; }
  bool is_leaf(std::uint32_t v) const { return nodes_[v].is_leaf; }
  std::uint32_t parent(std::uint32_t v) const { return nodes_[v].parent; }
  std::uint32_t depth(std::uint32_t v) const { return nodes_[v].depth; }
  std::uint32_t slink(std::uint32_t v) const { return nodes_[v].slink; }
  std::uint32_t witness(std::uint32_t v) const { return nodes_[v].witness; }
  std::uint32_t leaf_id(std::uint32_t v) const { return nodes_[v].leaf_id; }
  std::uint32_t pstart(std::uint32_t v) const { return nodes_[v].pstart; }
  std::uint32_t pend(std::uint32_t v) const { return nodes_[v].pend; }
  Symbol key_in_parent(std::uint32_t v) const { return nodes_[v].key_in_parent; }
  const std::map<Symbol, std::uint32_t, SymRankLess>& children(std::uint32_t v) const {
    return nodes_[v].children;
  }
  std::uint32_t leaf_of(std::uint32_t pos) const {
    std::uint32_t v = leaf_of_[pos];
    return (v != nil && nodes_[v].alive) ? v : nil;
  }

  // Edges entered by descend walks; the telescoping bound on suffix-link
  // descents across one affected zone is asserted against this.
  std::uint64_t descend_edges() const { return descend_edges_; }
  void reset_descend_edges() { descend_edges_ = 0; }

  // ---- queries ----

  // Walks `s` from the root comparing label cells; pads are skipped by the
  // live-cell reader.  Returns the locus spelling s, or nothing.
  std::optional<Locus> locate(const std::vector<Symbol>& s) const {
    std::uint32_t u = root_;
    std::size_t d = 0;
    while (d < s.size()) {
      auto it = nodes_[u].children.find(s[d]);
      if (it == nodes_[u].children.end()) return std::nullopt;
      std::uint32_t c = it->second;
      std::uint32_t cell = nodes_[c].pstart;
      std::uint32_t len = edge_live_len(c);
      std::uint32_t off = 0;
      while (off < len && d < s.size()) {
        if (w_->cell(cell) != s[d]) return std::nullopt;
        ++off, ++d;
        cell = w_->next_live(cell);
      }
      if (d == s.size())
        return off == len ? Locus{c, 0, 0} : Locus{u, c, off};
      u = c;
    }
    return Locus{u, 0, 0};
  }

  // Follows slink(from) and then walks down to string depth target_len
  // along the path whose symbols sym_at(d) supplies (d = current depth).
  // Only child keys are compared; explicit jumps use stored depths, so no
  // label cells are read.  Missing children are contract errors.
  template <typename F>
  Locus descend_from_slink(std::uint32_t from, std::uint32_t target_len, F&& sym_at) {
    if (from == root_ || nodes_[from].is_leaf)
      throw std::logic_error("suffix-link walk needs an internal non-root start");
    return descend(nodes_[from].slink, target_len, sym_at, true);
  }

  // Same walk with the path symbols read from the witness occurrence of
  // `from` (symbol d of the target is symbol d + 1 of from's path).
  Locus slink_descend(std::uint32_t from, std::uint32_t target_len) {
    if (from == root_ || nodes_[from].is_leaf)
      throw std::logic_error("suffix-link walk needs an internal non-root start");
    std::vector<Symbol> syms;
    syms.reserve(target_len);
    std::uint32_t cell = w_->next_live(nodes_[from].witness);
    for (std::uint32_t d = 0; d < target_len; ++d) {
      syms.push_back(w_->cell(cell));
      cell = w_->next_live(cell);
    }
    return descend(nodes_[from].slink, target_len,
                   [&](std::uint32_t d) { return syms[d]; }, true);
  }

  // Key-jump walk from an arbitrary node (no cell reads); used for the
  // first suffix of an affected zone.
  template <typename F>
  Locus descend_keyed(std::uint32_t start, std::uint32_t target_len, F&& sym_at) {
    return descend(start, target_len, sym_at, false);
  }

  // ---- test and diagnostic surface ----

  CanonicalTree canonicalize() const {
    CanonicalTree out;
    std::vector<Symbol> path;
    canonicalize_rec(root_, path, out);
    out.normalize();
    return out;
  }

  // Structural diagnostics; empty means every invariant holds and each
  // leaf's root path spells its live suffix.
  std::vector<std::string> validate() const {
    std::vector<std::string> out;
    std::vector<Symbol> path;
    validate_rec(root_, path, out);
    std::uint32_t leaves = 0;
    for (std::uint32_t p = w_->first_live(); p <= w_->n(); p = w_->next_live(p)) {
      std::uint32_t v = leaf_of(p);
      if (v == nil)
        out.push_back("live position " + std::to_string(p) + " has no leaf");
      else
        ++leaves;
    }
    std::uint32_t found = 0;
    for (std::uint32_t v = 1; v < nodes_.size(); ++v)
      if (nodes_[v].alive && nodes_[v].is_leaf) ++found;
    if (found != leaves)
      out.push_back("leaf count " + std::to_string(found) + " != live suffix count " +
                    std::to_string(leaves));
    return out;
  }

  // One line per node: depth, tab, path string, tab, leaf id or "-";
  // preorder with children in canonical symbol order.
  std::string debug_dump() const {
    std::string out;
    std::vector<Symbol> path;
    dump_rec(root_, path, out);
    return out;
  }

  // ---- standalone mutations (each is one whole surgery) ----

  RemoveReport remove_leaf(std::uint32_t id) {
    std::uint32_t v = leaf_of(id);
    if (v == nil) throw std::logic_error("unknown leaf id");
    begin_surgery();
    detach_leaf(v);
    SurgeryReport r = finish_surgery();
    RemoveReport rr;
    if (!r.removed.empty()) {
      rr.spliced_node = r.removed[0].first;
      rr.spliced_depth = r.removed[0].second;
    }
    return rr;
  }

  // Re-hangs the leaf at `target`, splitting the edge when the target is
  // implicit; the leaf's new edge label starts at new_pstart.  The new
  // node's suffix link is resolved when its target is already explicit and
  // left unresolved otherwise (a validate diagnostic until the caller's
  // next edit resolves it).
  std::optional<std::uint32_t> redirect_leaf_edge(std::uint32_t id, Locus target,
                                                  std::uint32_t new_pstart) {
    std::uint32_t v = leaf_of(id);
    if (v == nil) throw std::logic_error("unknown leaf id");
    begin_surgery();
    std::uint32_t dest;
    std::optional<std::uint32_t> fresh;
    if (target.at_node()) {
      dest = target.node;
    } else {
      Symbol below = symbol_at_edge_offset(target.child, target.offset);
      dest = split_edge(target.node, target.child, target.offset, below);
      fresh = dest;
    }
    detach_leaf(v);
    attach_leaf(v, dest, w_->cell(new_pstart), new_pstart);
    if (fresh) {
      std::vector<Symbol> tail;
      read_root_path(dest, tail);
      tail.erase(tail.begin());
      if (auto l = locate(tail); l && l->at_node()) nodes_[dest].slink = l->node;
    }
    finish_surgery();
    return fresh;
  }

  // ---- surgical interface (one surgery per replaced occurrence) ----

  void begin_surgery() {
    report_ = SurgeryReport{};
  }

  // Detaches a leaf node.  Ancestors whose witness was this leaf get their
  // windows repaired at finish_surgery; the old parent is queued for the
  // deferred splice check.  Returns the old parent.
  std::uint32_t detach_leaf(std::uint32_t v) {
    Node& t = nodes_[v];
    if (!t.alive || !t.is_leaf) throw std::logic_error("detach needs a live leaf");
    std::uint32_t po = t.parent;
    nodes_[po].children.erase(t.key_in_parent);
    t.alive = false;
    t.parent = nil;
    for (std::uint32_t a = po; a != root_ && nodes_[a].witness == t.leaf_id;
         a = nodes_[a].parent)
      mark_dirty(a);
    queue_splice(po);
    return po;
  }

  void attach_leaf(std::uint32_t v, std::uint32_t parent, Symbol key,
                   std::uint32_t ps) {
    Node& t = nodes_[v];
    if (t.alive) throw std::logic_error("attach needs a detached leaf");
    if (parent != root_ && nodes_[parent].witness > t.leaf_id) {
      // A depth-1 root child labelled by a single cell may adopt a smaller
      // minimum when occurrences arrive out of order: any member's own cell
      // spells the key, so the window just moves to the new leaf.
      Node& pn = nodes_[parent];
      if (!pn.is_leaf && pn.parent == root_ && pn.depth == 1 &&
          w_->cell(t.leaf_id) == pn.key_in_parent) {
        pn.witness = t.leaf_id;
        pn.pstart = pn.pend = t.leaf_id;
      } else {
        throw std::logic_error("attach target does not dominate the leaf");
      }
    }
    if (!nodes_[parent].children.emplace(key, v).second)
      throw std::logic_error("duplicate first symbol among siblings");
    t.alive = true;
    t.parent = parent;
    t.key_in_parent = key;
    t.pstart = ps;
    t.pend = w_->n();
  }

  // Splits the edge parent->child at `offset` live symbols, keying the
  // lower half with below_key (supplied, never read from cells: the
  // witness cell at that offset may be the freshly written placeholder).
  // For an internal child the label cells are contiguous raw positions
  // (its path is placeholder-free, so every occurrence is an unbroken live
  // block) and plain arithmetic splits the window; a leaf edge may cross
  // pads and is walked.  The new node inherits the child's witness, which
  // is the subtree minimum by construction.
  std::uint32_t split_edge(std::uint32_t u, std::uint32_t c, std::uint32_t offset,
                           Symbol below_key) {
    if (offset == 0 || nodes_[c].parent != u)
      throw std::logic_error("split needs a proper edge offset");
    std::uint32_t nn = new_node();
    Node& N = nodes_[nn];
    Node& cn = nodes_[c];
    bool stale = !cn.is_leaf && cn.dirty;
    N.alive = true;
    N.depth = nodes_[u].depth + offset;
    N.parent = u;
    N.key_in_parent = cn.key_in_parent;
    N.witness = cn.is_leaf ? cn.leaf_id : cn.witness;
    N.slink = nil;
    N.pstart = cn.pstart;
    if (cn.is_leaf) {
      std::uint32_t cell = cn.pstart;
      for (std::uint32_t k = 1; k < offset; ++k) cell = w_->next_live(cell);
      N.pend = cell;
      cn.pstart = w_->next_live(cell);
    } else {
      if (nodes_[u].depth + offset >= cn.depth)
        throw std::logic_error("split offset reaches the child");
      N.pend = cn.pstart + offset - 1;
      cn.pstart += offset;
    }
    nodes_[u].children[N.key_in_parent] = nn;
    cn.parent = nn;
    cn.key_in_parent = below_key;
    N.children.emplace(below_key, c);
    if (!cn.is_leaf) mark_dirty(c);
    // A stale child window means the inherited witness may be stale too.
    if (stale) mark_dirty(nn);
    report_.created.emplace_back(nn, N.depth);
    return nn;
  }

  // Fresh depth-1 child of the root for the placeholder of the current
  // step; window and witness are the first replaced position itself.
  std::uint32_t make_hash_root_child(Symbol key, std::uint32_t cell_pos) {
    std::uint32_t nn = new_node();
    Node& N = nodes_[nn];
    N.alive = true;
    N.depth = 1;
    N.parent = root_;
    N.key_in_parent = key;
    N.witness = cell_pos;
    N.slink = root_;
    N.pstart = N.pend = cell_pos;
    if (!nodes_[root_].children.emplace(key, nn).second)
      throw std::logic_error("duplicate placeholder child at the root");
    report_.created.emplace_back(nn, 1);
    return nn;
  }

  void rekey_child(std::uint32_t v, Symbol key) {
    Node& t = nodes_[v];
    std::uint32_t p = t.parent;
    nodes_[p].children.erase(t.key_in_parent);
    if (!nodes_[p].children.emplace(key, v).second)
      throw std::logic_error("duplicate first symbol among siblings");
    t.key_in_parent = key;
  }

  void set_slink(std::uint32_t v, std::uint32_t target) { nodes_[v].slink = target; }

  // Runs deferred splices and deletions, then repairs the windows of every
  // node marked dirty (deepest first, so repairs read already repaired
  // children).  Reports created and removed internal nodes for bucket
  // maintenance.
  SurgeryReport finish_surgery() {
    flush_splices();
    repair_dirty();
    return std::move(report_);
  }

 private:
  struct Node {
    std::map<Symbol, std::uint32_t, SymRankLess> children;
    std::uint32_t parent = 0;
    std::uint32_t slink = 0;
    std::uint32_t pstart = 0;
    std::uint32_t pend = 0;
    std::uint32_t depth = 0;
    std::uint32_t witness = 0;
    std::uint32_t leaf_id = 0;
    Symbol key_in_parent = 0;
    bool is_leaf = false;
    bool alive = false;
    bool dirty = false;
    bool queued = false;
  };

  friend struct SuffixTreeTestAccess;

  static constexpr std::uint32_t kOpenEnd = std::numeric_limits<std::uint32_t>::max();

  const WorkingString* w_;
  std::vector<Node> nodes_;
  std::uint32_t root_ = 1;
  std::vector<std::uint32_t> leaf_of_;
  std::vector<std::uint32_t> dirty_;
  std::vector<std::uint32_t> splice_q_;
  SurgeryReport report_;
  std::uint64_t descend_edges_ = 0;

  std::uint32_t new_node() {
    nodes_.emplace_back();
    return static_cast<std::uint32_t>(nodes_.size()) - 1;
  }

  void mark_dirty(std::uint32_t v) {
    if (!nodes_[v].dirty) {
      nodes_[v].dirty = true;
      dirty_.push_back(v);
    }
  }

  void queue_splice(std::uint32_t v) {
    if (v != root_ && !nodes_[v].queued) {
      nodes_[v].queued = true;
      splice_q_.push_back(v);
    }
  }

  // Label length of the edge into v in live symbols.  Leaf edges run to the
  // end of the string and are counted by walking.
  std::uint32_t edge_live_len(std::uint32_t v) const {
    if (!nodes_[v].is_leaf) return nodes_[v].depth - nodes_[nodes_[v].parent].depth;
    std::uint32_t len = 0;
    for (std::uint32_t cell = nodes_[v].pstart; cell <= w_->n();
         cell = w_->next_live(cell))
      ++len;
    return len;
  }

  void append_label(std::uint32_t v, std::vector<Symbol>& out) const {
    std::uint32_t cell = nodes_[v].pstart;
    if (nodes_[v].is_leaf) {
      for (; cell <= w_->n(); cell = w_->next_live(cell)) out.push_back(w_->cell(cell));
    } else {
      std::uint32_t len = nodes_[v].depth - nodes_[nodes_[v].parent].depth;
      for (std::uint32_t k = 0; k < len; ++k, cell = w_->next_live(cell))
        out.push_back(w_->cell(cell));
    }
  }

  void canonicalize_rec(std::uint32_t v, std::vector<Symbol>& path,
                        CanonicalTree& out) const {
    if (v != root_) {
      if (nodes_[v].is_leaf) {
        out.leaves.emplace_back(path, nodes_[v].leaf_id);
        return;
      }
      out.internals.push_back(path);
    }
    std::size_t base = path.size();
    for (const auto& [key, c] : nodes_[v].children) {
      path.resize(base);
      append_label(c, path);
      canonicalize_rec(c, path, out);
    }
    path.resize(base);
  }

  void read_root_path(std::uint32_t v, std::vector<Symbol>& out) const {
    std::vector<std::uint32_t> chain;
    for (std::uint32_t a = v; a != root_; a = nodes_[a].parent) chain.push_back(a);
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) append_label(*it, out);
  }

  Symbol symbol_at_edge_offset(std::uint32_t child, std::uint32_t off) const {
    std::uint32_t cell = nodes_[child].pstart;
    for (; off > 0; --off) cell = w_->next_live(cell);
    return w_->cell(cell);
  }

  template <typename F>
  Locus descend(std::uint32_t start, std::uint32_t target_len, F&& sym_at,
                bool count) {
    std::uint32_t u = start;
    if (nodes_[u].depth > target_len)
      throw std::logic_error("descend start below the target depth");
    while (nodes_[u].depth < target_len) {
      Symbol s = sym_at(nodes_[u].depth);
      auto it = nodes_[u].children.find(s);
      if (it == nodes_[u].children.end())
        throw std::logic_error("suffix path missing from the tree");
      std::uint32_t c = it->second;
      if (count) ++descend_edges_;
      if (!nodes_[c].is_leaf && nodes_[c].depth <= target_len) {
        u = c;
        continue;
      }
      return Locus{u, c, target_len - nodes_[u].depth};
    }
    return Locus{u, 0, 0};
  }

  // ---- deferred maintenance ----

  void flush_splices() {
    while (!splice_q_.empty()) {
      std::uint32_t u = splice_q_.back();
      splice_q_.pop_back();
      nodes_[u].queued = false;
      Node& un = nodes_[u];
      if (!un.alive || un.is_leaf || u == root_) continue;
      if (un.children.size() >= 2) continue;
      std::uint32_t p = un.parent;
      if (un.children.empty()) {
        nodes_[p].children.erase(un.key_in_parent);
        un.alive = false;
        report_.removed.emplace_back(u, un.depth);
        queue_splice(p);
        continue;
      }
      std::uint32_t c = un.children.begin()->second;
      nodes_[c].key_in_parent = un.key_in_parent;
      nodes_[c].parent = p;
      nodes_[p].children[un.key_in_parent] = c;
      if (nodes_[c].is_leaf) {
        // A live leaf's window head never dies, so walking left along the
        // live list lands on the absorbed label cells.
        std::uint32_t delta = un.depth - nodes_[p].depth;
        std::uint32_t cell = nodes_[c].pstart;
        for (std::uint32_t k = 0; k < delta; ++k) cell = w_->prev_live(cell);
        nodes_[c].pstart = cell;
      } else {
        // An internal child may carry a stale window; the deferred repair
        // rebuilds it from the children against the new parent depth.
        mark_dirty(c);
      }
      un.alive = false;
      un.children.clear();
      report_.removed.emplace_back(u, un.depth);
    }
  }

  // Rewrites each dirty node's witness and window from its minimum-witness
  // child, whose own window is valid by the deepest-first order.
  void repair_dirty() {
    std::sort(dirty_.begin(), dirty_.end(), [&](std::uint32_t a, std::uint32_t b) {
      return nodes_[a].depth > nodes_[b].depth;
    });
    for (std::uint32_t v : dirty_) {
      Node& vn = nodes_[v];
      vn.dirty = false;
      if (!vn.alive || vn.is_leaf || v == root_) continue;
      std::uint32_t best = nil;
      std::uint32_t best_w = std::numeric_limits<std::uint32_t>::max();
      for (const auto& [key, c] : vn.children) {
        std::uint32_t wv = nodes_[c].is_leaf ? nodes_[c].leaf_id : nodes_[c].witness;
        if (wv < best_w) best_w = wv, best = c;
      }
      if (best == nil) continue;  // emptied node, handled by a later splice
      vn.witness = best_w;
      std::uint32_t cell = w_->prev_live(nodes_[best].pstart);
      vn.pend = cell;
      std::uint32_t steps = vn.depth - nodes_[vn.parent].depth;
      for (std::uint32_t k = 1; k < steps; ++k) cell = w_->prev_live(cell);
      vn.pstart = cell;
      if (w_->cell(vn.pstart) != vn.key_in_parent)
        throw std::logic_error("repaired window contradicts the stored key");
    }
    dirty_.clear();
  }

  // ---- construction ----

  void build() {
    const std::uint32_t n = w_->n();
    std::vector<Symbol> s(n + 1, 0);
    for (std::uint32_t p = 1; p <= n; ++p) s[p] = w_->cell(p);
    nodes_.clear();
    nodes_.resize(2);
    root_ = 1;
    nodes_[root_].alive = true;
    nodes_[root_].slink = root_;

    auto edge_len = [&](std::uint32_t v, std::uint32_t i) {
      return (nodes_[v].pend == kOpenEnd ? i : nodes_[v].pend) - nodes_[v].pstart + 1;
    };

    std::uint32_t active_node = root_, active_edge = 0, active_len = 0;
    std::uint32_t remainder = 0;
    for (std::uint32_t i = 1; i <= n; ++i) {
      std::uint32_t last_new = nil;
      ++remainder;
      while (remainder > 0) {
        if (active_len == 0) active_edge = i;
        auto it = nodes_[active_node].children.find(s[active_edge]);
        if (it == nodes_[active_node].children.end()) {
          std::uint32_t leaf = new_node();
          nodes_[leaf].alive = true;
          nodes_[leaf].is_leaf = true;
          nodes_[leaf].pstart = i;
          nodes_[leaf].pend = kOpenEnd;
          nodes_[leaf].parent = active_node;
          nodes_[active_node].children.emplace(s[i], leaf);
          if (last_new != nil) {
            nodes_[last_new].slink = active_node;
            last_new = nil;
          }
        } else {
          std::uint32_t nxt = it->second;
          std::uint32_t el = edge_len(nxt, i);
          if (active_len >= el) {
            active_node = nxt;
            active_edge += el;
            active_len -= el;
            continue;
          }
          if (s[nodes_[nxt].pstart + active_len] == s[i]) {
            if (last_new != nil && active_node != root_)
              nodes_[last_new].slink = active_node;
            ++active_len;
            break;
          }
          std::uint32_t sp = new_node();
          nodes_[sp].alive = true;
          nodes_[sp].pstart = nodes_[nxt].pstart;
          nodes_[sp].pend = nodes_[nxt].pstart + active_len - 1;
          nodes_[sp].parent = active_node;
          nodes_[sp].slink = root_;
          nodes_[active_node].children[s[active_edge]] = sp;
          nodes_[nxt].pstart += active_len;
          nodes_[nxt].parent = sp;
          nodes_[sp].children.emplace(s[nodes_[nxt].pstart], nxt);
          std::uint32_t leaf = new_node();
          nodes_[leaf].alive = true;
          nodes_[leaf].is_leaf = true;
          nodes_[leaf].pstart = i;
          nodes_[leaf].pend = kOpenEnd;
          nodes_[leaf].parent = sp;
          nodes_[sp].children.emplace(s[i], leaf);
          if (last_new != nil) nodes_[last_new].slink = sp;
          last_new = sp;
        }
        if (active_node == root_ && active_len > 0) {
          --active_len;
          active_edge = i - remainder + 2;
        } else if (active_node != root_) {
          active_node = nodes_[active_node].slink;
        }
        --remainder;
      }
    }
    if (remainder != 0)
      throw std::logic_error("construction left pending suffixes");
  }

  // Assigns depths, leaf ids, witnesses, keys, and witness-based windows.
  // All cells are live here, so witness windows are plain offsets.
  void normalize() {
    const std::uint32_t n = w_->n();
    leaf_of_.assign(n + 2, nil);
    struct Frame {
      std::uint32_t node;
      std::map<Symbol, std::uint32_t, SymRankLess>::iterator it;
    };
    nodes_[root_].depth = 0;
    nodes_[root_].witness = 0;
    std::vector<Frame> st{{root_, nodes_[root_].children.begin()}};
    while (!st.empty()) {
      Frame& f = st.back();
      Node& un = nodes_[f.node];
      if (f.it == un.children.end()) {
        if (f.node != root_) {
          std::uint32_t w = std::numeric_limits<std::uint32_t>::max();
          for (const auto& [key, c] : un.children)
            w = std::min(w, nodes_[c].is_leaf ? nodes_[c].leaf_id : nodes_[c].witness);
          un.witness = w;
          un.pstart = w + nodes_[un.parent].depth;
          un.pend = w + un.depth - 1;
          if (w_->cell(un.pstart) != un.key_in_parent)
            throw std::logic_error("normalized window contradicts the stored key");
        }
        st.pop_back();
        continue;
      }
      std::uint32_t c = f.it->second;
      Symbol key = f.it->first;
      ++f.it;
      nodes_[c].key_in_parent = key;
      if (nodes_[c].is_leaf) {
        std::uint32_t id = nodes_[c].pstart - un.depth;
        if (id < 1 || id > n || leaf_of_[id] != nil)
          throw std::logic_error("leaf id assignment failed");
        nodes_[c].leaf_id = id;
        leaf_of_[id] = c;
        nodes_[c].pstart = id + un.depth;
        nodes_[c].pend = n;
        nodes_[c].depth = 0;
      } else {
        nodes_[c].depth = un.depth + (nodes_[c].pend - nodes_[c].pstart + 1);
        st.push_back({c, nodes_[c].children.begin()});
      }
    }
    for (std::uint32_t p = 1; p <= n; ++p)
      if (leaf_of_[p] == nil) throw std::logic_error("missing suffix leaf");
    // Link depths are only checkable once every depth is assigned.
    for (std::uint32_t v = 2; v < nodes_.size(); ++v) {
      const Node& vn = nodes_[v];
      if (!vn.is_leaf && nodes_[vn.slink].depth + 1 != vn.depth)
        throw std::logic_error("suffix link depth mismatch");
    }
  }

  void validate_rec(std::uint32_t v, std::vector<Symbol>& path,
                    std::vector<std::string>& out) const {
    const Node& vn = nodes_[v];
    if (v != root_) {
      std::size_t base = path.size();
      append_label(v, path);
      if (path.size() == base)
        out.push_back("empty edge label into node " + std::to_string(v));
      else if (path[base] != vn.key_in_parent)
        out.push_back("node " + std::to_string(v) + " label starts " +
                      render_symbol(path[base]) + " but is keyed " +
                      render_symbol(vn.key_in_parent));
      if (!vn.is_leaf) {
        if (vn.children.size() < 2)
          out.push_back("internal node " + std::to_string(v) + " has " +
                        std::to_string(vn.children.size()) + " children");
        if (path.size() != vn.depth)
          out.push_back("node " + std::to_string(v) + " spells " +
                        std::to_string(path.size()) + " symbols but has depth " +
                        std::to_string(vn.depth));
        if (vn.slink == nil) {
          out.push_back("node " + std::to_string(v) + " has no suffix link");
        } else {
          std::vector<Symbol> tail(path.begin() + 1, path.end());
          std::vector<Symbol> linked;
          read_root_path(vn.slink, linked);
          if (linked != tail)
            out.push_back("suffix link of node " + std::to_string(v) +
                          " spells the wrong string");
        }
        std::uint32_t w = std::numeric_limits<std::uint32_t>::max();
        for (const auto& [key, c] : vn.children) {
          if (nodes_[c].parent != v)
            out.push_back("child parent link broken at node " + std::to_string(v));
          if (nodes_[c].key_in_parent != key)
            out.push_back("child key field mismatch at node " + std::to_string(v));
          w = std::min(w, nodes_[c].is_leaf ? nodes_[c].leaf_id : nodes_[c].witness);
        }
        if (w != vn.witness)
          out.push_back("witness of node " + std::to_string(v) + " is " +
                        std::to_string(vn.witness) + ", subtree minimum is " +
                        std::to_string(w));
      } else {
        std::vector<Symbol> suffix;
        for (std::uint32_t cell = vn.leaf_id; cell <= w_->n();
             cell = w_->next_live(cell))
          suffix.push_back(w_->cell(cell));
        if (path != suffix)
          out.push_back("leaf " + std::to_string(vn.leaf_id) +
                        " path does not spell its suffix");
      }
      for (const auto& [key, c] : vn.children) validate_rec(c, path, out);
      path.resize(base);
    } else {
      for (const auto& [key, c] : vn.children) validate_rec(c, path, out);
    }
  }

  void dump_rec(std::uint32_t v, std::vector<Symbol>& path, std::string& out) const {
    std::size_t base = path.size();
    if (v != root_) append_label(v, path);
    out += std::to_string(path.size());
    out += '\t';
    out += render_symbols(path);
    out += '\t';
    out += nodes_[v].is_leaf ? std::to_string(nodes_[v].leaf_id) : std::string("-");
    out += '\n';
    for (const auto& [key, c] : nodes_[v].children) dump_rec(c, path, out);
    path.resize(base);
  }
};

}  // namespace lzlfs
