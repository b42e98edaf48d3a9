#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace majdyn {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

/// Simple undirected graph on nodes 0..n-1 in canonical form: adjacency
/// lists are sorted ascending, symmetric, and free of loops and duplicates.
/// Stored as CSR; immutable after construction.
class Graph {
 public:
  Graph() = default;

  /// Builds from an edge list in any order and orientation. Throws
  /// Errc::invalid_parameter on out-of-range endpoints, self-loops or
  /// duplicate edges.
  Graph(std::size_t n, std::span<const Edge> edges);
  Graph(std::size_t n, const std::vector<Edge>& edges)
      : Graph(n, std::span<const Edge>(edges.data(), edges.size())) {}

  std::size_t n() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t m() const noexcept { return neighbors_.size() / 2; }

  std::span<const NodeId> neighbors(NodeId v) const noexcept {
    return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeId v) const noexcept { return offsets_[v + 1] - offsets_[v]; }
  bool has_edge(NodeId u, NodeId v) const noexcept;

  /// Edges with u < v, sorted lexicographically.
  std::vector<Edge> edges() const;

  bool is_connected() const;

  /// True iff the edge set is exactly {i, i+1 mod n} for n >= 3, i.e. the
  /// graph is C_n with the canonical labeling.
  bool is_canonical_cycle() const noexcept { return canonical_cycle_; }

  friend bool operator==(const Graph& a, const Graph& b) noexcept {
    return a.offsets_ == b.offsets_ && a.neighbors_ == b.neighbors_;
  }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> neighbors_;
  bool canonical_cycle_ = false;
};

/// Membership bit set over 0..n-1.
class NodeSet {
 public:
  NodeSet() = default;
  explicit NodeSet(std::size_t n) : bits_(n, false) {}
  NodeSet(std::size_t n, std::span<const NodeId> members);
  NodeSet(std::size_t n, std::initializer_list<NodeId> members)
      : NodeSet(n, std::span<const NodeId>(members.begin(), members.size())) {}

  static NodeSet all(std::size_t n);
  static NodeSet from_mask(std::size_t n, std::uint64_t mask);

  std::size_t universe() const noexcept { return bits_.size(); }
  std::size_t size() const noexcept { return count_; }
  bool empty() const noexcept { return count_ == 0; }
  bool contains(NodeId v) const noexcept { return v < bits_.size() && bits_[v]; }

  void insert(NodeId v);
  void erase(NodeId v);

  NodeSet complement() const;
  std::vector<NodeId> members() const;
  /// Bit v set iff v is a member; requires universe() <= 64.
  std::uint64_t mask() const;

  friend bool operator==(const NodeSet& a, const NodeSet& b) noexcept {
    return a.bits_ == b.bits_;
  }

 private:
  std::vector<bool> bits_;
  std::size_t count_ = 0;
};

// ---- generators -------------------------------------------------------------

Graph make_cycle(std::size_t n);

/// Cycle plus chords to every node at distance two; 4-regular for n >= 5.
Graph make_two_cycle(std::size_t n);

/// Cycle on n >= 8 nodes; then, for each node v in index order, two extra
/// neighbors drawn uniformly without replacement from the current
/// non-neighbors of v.
Graph make_cycle_plus_random(std::size_t n, std::uint64_t seed);

/// Two stars joined through an independent set. Node labels:
///   S_b = [0, kappa)        center v_b = 0
///   S_w = [kappa, n-kappa)  center v_w = kappa
///   I   = [n-kappa, n)
/// with kappa = floor(n/3) - 1. Requires n >= 9.
struct ExpStabilizationGraph {
  Graph graph;
  std::size_t kappa = 0;
  NodeId v_b = 0;
  NodeId v_w = 0;
  NodeSet s_b;
  NodeSet s_w;
  NodeSet independent;
};
ExpStabilizationGraph make_exp_stabilization_graph(std::size_t n);

/// Path bridging a white 3-clique and a blue clique. Node labels:
///   P   = [0, kappa)            path v_0 .. v_{kappa-1}
///   C_w = [kappa, kappa+3)      u_w = kappa, joined to v_0
///   C_b = [kappa+3, n)          u_b = kappa+3, joined to v_{kappa-1}
/// kappa is the largest multiple of 4 strictly below n-6. Requires n >= 11.
struct ExpPeriodicityGraph {
  Graph graph;
  std::size_t kappa = 0;
  NodeId u_w = 0;
  NodeId u_b = 0;
  NodeSet path;
  NodeSet clique_w;
  NodeSet clique_b;
};
ExpPeriodicityGraph make_exp_periodicity_graph(std::size_t n);

/// Two disjoint copies (copy 1 on [0,n), copy 2 on [n,2n)) with the cross
/// edge {i, n+i} added exactly when deg(i) is even. Every degree of the
/// result is odd.
Graph double_graph(const Graph& g);

}  // namespace majdyn
