/// \file bdd.hpp
/// \brief Reduced ordered binary decision diagrams with hash consing.
///
/// A bdd_manager owns an append-only pool of nodes, a unique table that
/// enforces one stored node per (var, low, high) triple, and a computed
/// table memoizing ite results. All synthesis operations are expressed
/// through the ternary ite operator. Complement edges are not used, so
/// node counts are directly comparable across construction routes.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace adderverify {

/// Position of a variable in the global order; 0 is the topmost level.
using var_id = std::uint32_t;

namespace detail {

/// Open-addressing hash map from a key triple to a node id. The unique
/// and computed tables only ever insert and look up (no erasure), so a
/// flat linear-probing layout with 16-byte entries keeps both tables
/// allocation-free on the hot path.
class triple_map {
public:
  triple_map() { rehash(1u << 10); }

  std::size_t size() const noexcept { return count_; }

  /// Returns the mapped value or `absent`.
  std::uint32_t find(std::uint32_t a, std::uint32_t b, std::uint32_t c) const {
    std::size_t i = slot(a, b, c);
    while (true) {
      const entry& e = entries_[i];
      if (e.val == absent) return absent;
      if (e.k0 == a && e.k1 == b && e.k2 == c) return e.val;
      i = (i + 1) & mask_;
    }
  }

  /// Key must not be present yet.
  void insert(std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t v) {
    if ((count_ + 1) * 10 >= entries_.size() * 7) rehash(entries_.size() * 2);
    std::size_t i = slot(a, b, c);
    while (entries_[i].val != absent) i = (i + 1) & mask_;
    entries_[i] = {a, b, c, v};
    ++count_;
  }

  void clear() {
    for (entry& e : entries_) e.val = absent;
    count_ = 0;
  }

  static constexpr std::uint32_t absent = 0xffffffffu;

private:
  struct entry {
    std::uint32_t k0, k1, k2;
    std::uint32_t val = absent;
  };

  static std::uint64_t mix(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ull;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebull;
    x ^= x >> 31;
    return x;
  }

  std::size_t slot(std::uint32_t a, std::uint32_t b, std::uint32_t c) const {
    std::uint64_t x = (std::uint64_t(a) << 32) | b;
    return static_cast<std::size_t>(mix(x + 0x9e3779b97f4a7c15ull * c)) & mask_;
  }

  void rehash(std::size_t cap) {
    std::vector<entry> old = std::move(entries_);
    entries_.assign(cap, entry{});
    mask_ = cap - 1;
    count_ = 0;
    for (const entry& e : old)
      if (e.val != absent) insert(e.k0, e.k1, e.k2, e.val);
  }

  std::vector<entry> entries_;
  std::size_t mask_ = 0;
  std::size_t count_ = 0;
};

} // namespace detail

class bdd_manager;

/// Handle to a node inside one manager. Because stored nodes are hash
/// consed, two handles compare equal iff they denote the same Boolean
/// function under the manager's variable order.
class node_ref {
public:
  constexpr node_ref() noexcept = default;

  constexpr std::uint32_t id() const noexcept { return id_; }
  friend constexpr bool operator==(node_ref, node_ref) noexcept = default;

private:
  friend class bdd_manager;
  constexpr explicit node_ref(std::uint32_t id) noexcept : id_(id) {}

  std::uint32_t id_ = 0;
};

/// One internal node: Shannon decomposition at `var`, with `low` holding
/// the cofactor for var=0 and `high` the cofactor for var=1.
struct bdd_node {
  var_id var;
  node_ref low;
  node_ref high;
};

class bdd_manager {
public:
  static constexpr node_ref zero() noexcept { return node_ref{0}; }
  static constexpr node_ref one() noexcept { return node_ref{1}; }

  explicit bdd_manager(var_id num_vars) : num_vars_(num_vars) {
    nodes_.reserve(1024);
    nodes_.push_back({terminal_var, zero(), zero()});
    nodes_.push_back({terminal_var, one(), one()});
    unique_next_.assign(2, nil);
    unique_buckets_.assign(1u << 10, nil);
  }

  var_id num_vars() const noexcept { return num_vars_; }

  bool is_terminal(node_ref f) const { return f.id() < 2; }

  /// Variable level of a node; terminals sit below every variable.
  var_id level(node_ref f) const { return nodes_[f.id()].var; }

  const bdd_node& node(node_ref f) const { return nodes_[f.id()]; }

  /// View of all internal nodes ever created (terminals excluded).
  std::span<const bdd_node> internal_nodes() const {
    return {nodes_.data() + 2, nodes_.size() - 2};
  }

  /// Total internal nodes ever created and retained. The pool is
  /// append-only, so this is also the peak over the manager's lifetime.
  std::uint64_t live_nodes() const noexcept { return nodes_.size() - 2; }

  /// Count of ite entries, including recursive and memoized ones.
  std::uint64_t ite_invocations() const noexcept { return ite_calls_; }

  /// Raw reduced-node constructor: applies the redundant-test rule and
  /// the unique table. Children must already respect the variable order.
  /// The unique table chains through the node pool, so a lookup touches
  /// the same cache lines later traversals will.
  node_ref make_node(var_id v, node_ref low, node_ref high) {
    if (low == high) return low;
    if (v >= num_vars_)
      throw std::out_of_range("make_node: variable " + std::to_string(v) +
                              " not declared (num_vars=" + std::to_string(num_vars_) + ")");
    if (level(low) <= v || level(high) <= v)
      throw std::invalid_argument("make_node: children must lie below variable " +
                                  std::to_string(v));
    std::size_t h = node_hash(v, low.id(), high.id()) & (unique_buckets_.size() - 1);
    for (std::uint32_t i = unique_buckets_[h]; i != nil; i = unique_next_[i]) {
      const bdd_node& nd = nodes_[i];
      if (nd.var == v && nd.low == low && nd.high == high) return node_ref{i};
    }
    if (nodes_.size() >= unique_buckets_.size()) {
      grow_unique_buckets();
      h = node_hash(v, low.id(), high.id()) & (unique_buckets_.size() - 1);
    }
    auto id = static_cast<std::uint32_t>(nodes_.size());
    nodes_.push_back({v, low, high});
    unique_next_.push_back(unique_buckets_[h]);
    unique_buckets_[h] = id;
    return node_ref{id};
  }

  /// Projection function for variable v.
  node_ref var(var_id v) {
    if (v >= num_vars_)
      throw std::out_of_range("var: variable " + std::to_string(v) +
                              " not declared (num_vars=" + std::to_string(num_vars_) + ")");
    return make_node(v, zero(), one());
  }

  /// Canonical BDD of (f AND g) OR (NOT f AND h).
  node_ref ite(node_ref f, node_ref g, node_ref h) {
    ++ite_calls_;
    if (f == one()) return g;
    if (f == zero()) return h;
    if (g == h) return g;
    if (g == one() && h == zero()) return f;

    std::uint32_t hit = computed_.find(f.id(), g.id(), h.id());
    if (hit != detail::triple_map::absent) return node_ref{hit};

    var_id x = std::min(level(f), std::min(level(g), level(h)));
    auto [f0, f1] = cofactors_at(f, x);
    auto [g0, g1] = cofactors_at(g, x);
    auto [h0, h1] = cofactors_at(h, x);
    node_ref r1 = ite(f1, g1, h1);
    node_ref r0 = ite(f0, g0, h0);
    node_ref r = (r1 == r0) ? r1 : make_node(x, r0, r1);
    computed_.insert(f.id(), g.id(), h.id(), r.id());
    return r;
  }

  node_ref apply_not(node_ref f) { return ite(f, zero(), one()); }

  /// The two-input wrappers order their operands before calling ite:
  /// and/or are symmetric, so a canonical order lets both call
  /// directions share one computed-table entry.
  node_ref apply_and(node_ref f, node_ref g) {
    if (g.id() < f.id()) std::swap(f, g);
    return ite(f, g, zero());
  }
  node_ref apply_or(node_ref f, node_ref g) {
    if (g.id() < f.id()) std::swap(f, g);
    return ite(f, one(), g);
  }

  /// xor is symmetric and the result canonical either way, so the smaller
  /// operand is the one that gets negated.
  node_ref apply_xor(node_ref f, node_ref g) {
    if (size(f) < size(g)) std::swap(f, g);
    return ite(f, apply_not(g), g);
  }

  /// Restriction of f with variable v fixed to `value`; the result never
  /// tests v.
  node_ref cofactor(node_ref f, var_id v, bool value) {
    if (v >= num_vars_)
      throw std::out_of_range("cofactor: variable " + std::to_string(v) + " not declared");
    detail::triple_map memo;
    return cofactor_rec(f, v, value, memo);
  }

  /// Substitution of g for every test of v inside f, carried out as
  /// ite(g, f|v=1, f|v=0).
  node_ref compose(node_ref f, var_id v, node_ref g) {
    return ite(g, cofactor(f, v, true), cofactor(f, v, false));
  }

  /// Evaluate under a partial assignment. Every variable actually tested
  /// on the walked path must be assigned.
  bool eval(node_ref f, const std::unordered_map<var_id, bool>& assignment) const {
    while (!is_terminal(f)) {
      const bdd_node& nd = nodes_[f.id()];
      auto it = assignment.find(nd.var);
      if (it == assignment.end())
        throw std::invalid_argument("eval: no value for tested variable " +
                                    std::to_string(nd.var));
      f = it->second ? nd.high : nd.low;
    }
    return f == one();
  }

  /// Evaluate under a complete assignment indexed by variable.
  bool eval(node_ref f, std::span<const std::uint8_t> assignment) const {
    while (!is_terminal(f)) {
      const bdd_node& nd = nodes_[f.id()];
      f = assignment[nd.var] ? nd.high : nd.low;
    }
    return f == one();
  }

  /// Number of distinct internal nodes reachable from f; terminals are
  /// not counted.
  std::uint64_t size(node_ref f) const {
    if (is_terminal(f)) return 0;
    if (++epoch_ == 0) { // epoch wrapped; stale marks must not alias it
      std::fill(mark_.begin(), mark_.end(), 0);
      epoch_ = 1;
    }
    if (mark_.size() < nodes_.size())
      mark_.resize(std::max(nodes_.size(), 2 * mark_.size()), 0); // amortize regrowth
    std::uint64_t count = 0;
    stack_.clear();
    stack_.push_back(f.id());
    mark_[f.id()] = epoch_;
    while (!stack_.empty()) {
      std::uint32_t id = stack_.back();
      stack_.pop_back();
      ++count;
      const bdd_node& nd = nodes_[id];
      for (node_ref child : {nd.low, nd.high}) {
        if (!is_terminal(child) && mark_[child.id()] != epoch_) {
          mark_[child.id()] = epoch_;
          stack_.push_back(child.id());
        }
      }
    }
    return count;
  }

  /// Drop all memoized ite results. Canonicity does not depend on the
  /// computed table, only construction speed does.
  void clear_computed_table() { computed_.clear(); }

  std::uint64_t computed_table_entries() const noexcept { return computed_.size(); }

private:
  static constexpr var_id terminal_var = std::numeric_limits<var_id>::max();
  static constexpr std::uint32_t nil = 0xffffffffu;

  static std::size_t node_hash(var_id v, std::uint32_t lo, std::uint32_t hi) {
    std::uint64_t x = (std::uint64_t(lo) << 32) | hi;
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ull;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebull;
    x ^= x >> 31;
    return static_cast<std::size_t>(x + 0x9e3779b97f4a7c15ull * v);
  }

  void grow_unique_buckets() {
    unique_buckets_.assign(unique_buckets_.size() * 2, nil);
    std::size_t mask = unique_buckets_.size() - 1;
    for (std::uint32_t i = 2; i < nodes_.size(); ++i) {
      const bdd_node& nd = nodes_[i];
      std::size_t h = node_hash(nd.var, nd.low.id(), nd.high.id()) & mask;
      unique_next_[i] = unique_buckets_[h];
      unique_buckets_[h] = i;
    }
  }

  std::pair<node_ref, node_ref> cofactors_at(node_ref f, var_id x) const {
    const bdd_node& nd = nodes_[f.id()];
    if (nd.var == x) return {nd.low, nd.high};
    return {f, f};
  }

  node_ref cofactor_rec(node_ref f, var_id v, bool value, detail::triple_map& memo) {
    if (level(f) > v) return f; // terminals and nodes entirely below v
    const bdd_node nd = nodes_[f.id()];
    if (nd.var == v) return value ? nd.high : nd.low;
    std::uint32_t hit = memo.find(f.id(), 0, 0);
    if (hit != detail::triple_map::absent) return node_ref{hit};
    node_ref r = make_node(nd.var, cofactor_rec(nd.low, v, value, memo),
                           cofactor_rec(nd.high, v, value, memo));
    memo.insert(f.id(), 0, 0, r.id());
    return r;
  }

  var_id num_vars_;
  std::vector<bdd_node> nodes_;
  std::vector<std::uint32_t> unique_buckets_; // heads into the pool
  std::vector<std::uint32_t> unique_next_;    // chains, parallel to nodes_
  detail::triple_map computed_;
  std::uint64_t ite_calls_ = 0;

  // scratch for size(); a manager is a single mutation domain, so plain
  // mutable state is safe here
  mutable std::vector<std::uint32_t> mark_;
  mutable std::vector<std::uint32_t> stack_;
  mutable std::uint32_t epoch_ = 0;
};

} // namespace adderverify

template <>
struct std::hash<adderverify::node_ref> {
  std::size_t operator()(adderverify::node_ref f) const noexcept { return f.id(); }
};
