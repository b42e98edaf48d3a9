#include "majdyn/graph.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "majdyn/error.hpp"
#include "majdyn/rng.hpp"

namespace majdyn {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_size: return "invalid-size";
    case Errc::invalid_parameter: return "invalid-parameter";
    case Errc::undefined_partition: return "undefined-partition";
    case Errc::size_cap: return "size-cap";
    case Errc::parse: return "parse";
    case Errc::io: return "io";
  }
  return "unknown";
}

Graph::Graph(std::size_t n, std::span<const Edge> edges) {
  std::vector<std::size_t> degree(n, 0);
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) {
      throw Error(Errc::invalid_parameter, "edge {" + std::to_string(u) + "," + std::to_string(v) +
                                               "} out of range for n=" + std::to_string(n));
    }
    if (u == v) {
      throw Error(Errc::invalid_parameter, "self-loop at node " + std::to_string(u));
    }
    ++degree[u];
    ++degree[v];
  }
  offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) offsets_[v + 1] = offsets_[v] + degree[v];
  neighbors_.resize(offsets_[n]);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const auto& [u, v] : edges) {
    neighbors_[fill[u]++] = v;
    neighbors_[fill[v]++] = u;
  }
  for (std::size_t v = 0; v < n; ++v) {
    auto first = neighbors_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]);
    auto last = neighbors_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]);
    std::sort(first, last);
    if (auto dup = std::adjacent_find(first, last); dup != last) {
      throw Error(Errc::invalid_parameter,
                  "duplicate edge {" + std::to_string(v) + "," + std::to_string(*dup) + "}");
    }
  }

  canonical_cycle_ = n >= 3 && neighbors_.size() == 2 * n;
  for (std::size_t v = 0; canonical_cycle_ && v < n; ++v) {
    const auto nb = neighbors(static_cast<NodeId>(v));
    const NodeId prev = static_cast<NodeId>((v + n - 1) % n);
    const NodeId next = static_cast<NodeId>((v + 1) % n);
    canonical_cycle_ = nb.size() == 2 && nb[0] == std::min(prev, next) && nb[1] == std::max(prev, next);
  }
}

bool Graph::has_edge(NodeId u, NodeId v) const noexcept {
  if (u >= n() || v >= n()) return false;
  const auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(m());
  for (NodeId u = 0; u < n(); ++u) {
    for (NodeId v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

bool Graph::is_connected() const {
  const std::size_t count = n();
  if (count == 0) return true;
  std::vector<char> seen(count, 0);
  std::vector<NodeId> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    for (NodeId u : neighbors(v)) {
      if (!seen[u]) {
        seen[u] = 1;
        ++reached;
        stack.push_back(u);
      }
    }
  }
  return reached == count;
}

NodeSet::NodeSet(std::size_t n, std::span<const NodeId> members) : bits_(n, false) {
  for (NodeId v : members) insert(v);
}

NodeSet NodeSet::all(std::size_t n) {
  NodeSet s(n);
  s.bits_.assign(n, true);
  s.count_ = n;
  return s;
}

NodeSet NodeSet::from_mask(std::size_t n, std::uint64_t mask) {
  NodeSet s(n);
  for (std::size_t v = 0; v < n && v < 64; ++v) {
    if ((mask >> v) & 1U) s.insert(static_cast<NodeId>(v));
  }
  return s;
}

void NodeSet::insert(NodeId v) {
  if (v >= bits_.size()) {
    throw Error(Errc::invalid_parameter, "node " + std::to_string(v) + " outside node set universe");
  }
  if (!bits_[v]) {
    bits_[v] = true;
    ++count_;
  }
}

void NodeSet::erase(NodeId v) {
  if (v < bits_.size() && bits_[v]) {
    bits_[v] = false;
    --count_;
  }
}

NodeSet NodeSet::complement() const {
  NodeSet out(bits_.size());
  for (std::size_t v = 0; v < bits_.size(); ++v) {
    if (!bits_[v]) out.insert(static_cast<NodeId>(v));
  }
  return out;
}

std::vector<NodeId> NodeSet::members() const {
  std::vector<NodeId> out;
  out.reserve(count_);
  for (std::size_t v = 0; v < bits_.size(); ++v) {
    if (bits_[v]) out.push_back(static_cast<NodeId>(v));
  }
  return out;
}

std::uint64_t NodeSet::mask() const {
  if (bits_.size() > 64) throw Error(Errc::size_cap, "node set mask needs universe <= 64");
  std::uint64_t out = 0;
  for (std::size_t v = 0; v < bits_.size(); ++v) {
    if (bits_[v]) out |= std::uint64_t{1} << v;
  }
  return out;
}

// ---- generators -------------------------------------------------------------

namespace {

void require_size(bool ok, const char* what, std::size_t n) {
  if (!ok) throw Error(Errc::invalid_size, std::string(what) + ": unsupported n=" + std::to_string(n));
}

void add_clique(std::vector<Edge>& edges, NodeId first, NodeId last) {
  for (NodeId u = first; u < last; ++u) {
    for (NodeId v = u + 1; v < last; ++v) edges.emplace_back(u, v);
  }
}

}  // namespace

Graph make_cycle(std::size_t n) {
  require_size(n >= 3, "cycle", n);
  std::vector<Edge> edges;
  edges.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>((i + 1) % n));
  }
  return Graph(n, edges);
}

Graph make_two_cycle(std::size_t n) {
  require_size(n >= 5, "two-cycle", n);
  std::vector<Edge> edges;
  edges.reserve(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>((i + 1) % n));
    edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>((i + 2) % n));
  }
  return Graph(n, edges);
}

Graph make_cycle_plus_random(std::size_t n, std::uint64_t seed) {
  require_size(n >= 8, "cycle-plus-random", n);
  // Sorted adjacency during construction; degrees stay small so linear
  // inserts are cheap.
  std::vector<std::vector<NodeId>> adj(n);
  auto connect = [&adj](NodeId u, NodeId v) {
    adj[u].insert(std::upper_bound(adj[u].begin(), adj[u].end(), v), v);
    adj[v].insert(std::upper_bound(adj[v].begin(), adj[v].end(), u), u);
  };
  auto adjacent = [&adj](NodeId u, NodeId v) {
    return std::binary_search(adj[u].begin(), adj[u].end(), v);
  };
  std::vector<Edge> edges;
  edges.reserve(3 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto u = static_cast<NodeId>(i);
    const auto v = static_cast<NodeId>((i + 1) % n);
    connect(u, v);
    edges.emplace_back(u, v);
  }
  Sampler rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const auto v = static_cast<NodeId>(i);
    for (int pick = 0; pick < 2; ++pick) {
      if (adj[v].size() + 1 >= n) break;  // no non-neighbor left
      NodeId u;
      do {
        u = static_cast<NodeId>(rng.below(n));
      } while (u == v || adjacent(v, u));
      connect(v, u);
      edges.emplace_back(v, u);
    }
  }
  return Graph(n, edges);
}

ExpStabilizationGraph make_exp_stabilization_graph(std::size_t n) {
  require_size(n >= 9, "exp-stabilization construction", n);
  ExpStabilizationGraph out;
  const std::size_t kappa = n / 3 - 1;
  out.kappa = kappa;
  out.v_b = 0;
  out.v_w = static_cast<NodeId>(kappa);
  const auto i_first = static_cast<NodeId>(n - kappa);

  std::vector<Edge> edges;
  for (NodeId leaf = 1; leaf < kappa; ++leaf) edges.emplace_back(out.v_b, leaf);
  for (NodeId leaf = out.v_w + 1; leaf < i_first; ++leaf) edges.emplace_back(out.v_w, leaf);
  for (NodeId x = i_first; x < n; ++x) {
    edges.emplace_back(out.v_b, x);
    edges.emplace_back(out.v_w, x);
  }
  out.graph = Graph(n, edges);

  out.s_b = NodeSet(n);
  out.s_w = NodeSet(n);
  out.independent = NodeSet(n);
  for (NodeId v = 0; v < n; ++v) {
    if (v < kappa) out.s_b.insert(v);
    else if (v < i_first) out.s_w.insert(v);
    else out.independent.insert(v);
  }
  return out;
}

ExpPeriodicityGraph make_exp_periodicity_graph(std::size_t n) {
  require_size(n >= 11, "exp-periodicity construction", n);
  ExpPeriodicityGraph out;
  const std::size_t kappa = ((n - 7) / 4) * 4;  // largest multiple of 4 below n-6
  out.kappa = kappa;
  out.u_w = static_cast<NodeId>(kappa);
  out.u_b = static_cast<NodeId>(kappa + 3);

  std::vector<Edge> edges;
  for (NodeId v = 0; v + 1 < kappa; ++v) edges.emplace_back(v, v + 1);
  add_clique(edges, out.u_w, out.u_w + 3);
  add_clique(edges, out.u_b, static_cast<NodeId>(n));
  edges.emplace_back(0, out.u_w);
  edges.emplace_back(static_cast<NodeId>(kappa - 1), out.u_b);
  out.graph = Graph(n, edges);

  out.path = NodeSet(n);
  out.clique_w = NodeSet(n);
  out.clique_b = NodeSet(n);
  for (NodeId v = 0; v < n; ++v) {
    if (v < kappa) out.path.insert(v);
    else if (v < out.u_b) out.clique_w.insert(v);
    else out.clique_b.insert(v);
  }
  return out;
}

Graph double_graph(const Graph& g) {
  const std::size_t n = g.n();
  std::vector<Edge> edges;
  edges.reserve(2 * g.m() + n);
  for (const auto& [u, v] : g.edges()) {
    edges.emplace_back(u, v);
    edges.emplace_back(static_cast<NodeId>(u + n), static_cast<NodeId>(v + n));
  }
  for (NodeId v = 0; v < n; ++v) {
    if (g.degree(v) % 2 == 0) edges.emplace_back(v, static_cast<NodeId>(v + n));
  }
  return Graph(2 * n, edges);
}

}  // namespace majdyn
