#include "majdyn/exact.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "majdyn/dynamics.hpp"
#include "majdyn/error.hpp"

namespace majdyn {

namespace {

constexpr std::uint64_t kMaxTransitions = 64'000'000;
constexpr std::size_t kDirectSolveLimit = 3000;

void require_nodes(const Graph& g, std::size_t cap, const char* what) {
  if (g.n() > cap) {
    throw Error(Errc::size_cap, std::string(what) + " supports n <= " + std::to_string(cap) + ", got n=" +
                                    std::to_string(g.n()));
  }
}

/// Neighborhood masks for popcount-based votes.
struct MaskGraph {
  std::size_t n = 0;
  std::vector<State> nb;
  std::vector<std::uint32_t> degree;

  explicit MaskGraph(const Graph& g) : n(g.n()), nb(g.n(), 0), degree(g.n()) {
    for (NodeId v = 0; v < g.n(); ++v) {
      for (NodeId u : g.neighbors(v)) nb[v] |= State{1} << u;
      degree[v] = static_cast<std::uint32_t>(g.degree(v));
    }
  }

  /// Deterministic part of the RMM step and the set of tied nodes.
  std::pair<State, State> split(State s, Color tie_default = Color::white) const {
    State det = 0;
    State tied = 0;
    for (std::size_t v = 0; v < n; ++v) {
      const auto b = static_cast<std::uint32_t>(std::popcount(s & nb[v]));
      if (2 * b > degree[v]) det |= State{1} << v;
      else if (2 * b == degree[v]) tied |= State{1} << v;
    }
    if (tie_default == Color::blue) det |= tied;
    return {det, tied};
  }

  State mm_step(State s) const {
    State out = 0;
    for (std::size_t v = 0; v < n; ++v) {
      const auto b = static_cast<std::uint32_t>(std::popcount(s & nb[v]));
      if (2 * b > degree[v] || (2 * b == degree[v] && ((s >> v) & 1U))) out |= State{1} << v;
    }
    return out;
  }
};

template <class Emit>
void for_each_successor(State det, State tied, Emit emit) {
  State sub = 0;
  do {
    emit(det | sub);
    sub = (sub - tied) & tied;
  } while (sub != 0);
}

/// Transition structure over a subset of states, indexed locally.
struct LocalChain {
  std::vector<State> states;
  std::vector<std::uint64_t> offsets{0};
  std::vector<std::uint32_t> succ;
  std::vector<std::uint8_t> tied;

  std::size_t size() const noexcept { return states.size(); }
  double prob(std::size_t i) const noexcept { return std::ldexp(1.0, -static_cast<int>(tied[i])); }
};

/// Explores everything reachable from roots. States matching stop get a
/// single self-loop instead of their real successors. With all_states the
/// local index of a state equals the state itself.
template <class Stop>
LocalChain explore(const MaskGraph& mg, const std::vector<State>& roots, Stop stop, bool all_states) {
  const std::size_t total = std::size_t{1} << mg.n;
  std::vector<std::int32_t> index(total, -1);
  LocalChain chain;
  auto visit = [&](State s) {
    if (index[s] < 0) {
      index[s] = static_cast<std::int32_t>(chain.states.size());
      chain.states.push_back(s);
    }
    return static_cast<std::uint32_t>(index[s]);
  };
  if (all_states) {
    for (std::size_t s = 0; s < total; ++s) visit(static_cast<State>(s));
  } else {
    for (State s : roots) visit(s);
  }
  for (std::size_t i = 0; i < chain.states.size(); ++i) {
    const State s = chain.states[i];
    if (stop(s)) {
      chain.succ.push_back(static_cast<std::uint32_t>(i));
      chain.tied.push_back(0);
    } else {
      const auto [det, tied] = mg.split(s);
      const int ties = std::popcount(tied);
      if (chain.succ.size() + (std::uint64_t{1} << ties) > kMaxTransitions) {
        throw Error(Errc::size_cap, "transition budget exceeded while building the RMM chain");
      }
      for_each_successor(det, tied, [&](State t) { chain.succ.push_back(visit(t)); });
      chain.tied.push_back(static_cast<std::uint8_t>(ties));
    }
    chain.offsets.push_back(chain.succ.size());
  }
  return chain;
}

/// Strongly connected components; members listed in Tarjan emission order,
/// which is reverse topological (every edge leaving a component points to an
/// earlier one).
struct Sccs {
  std::vector<std::uint32_t> comp;
  std::vector<std::vector<std::uint32_t>> members;
  std::vector<char> closed;
};

Sccs tarjan(const LocalChain& chain) {
  const std::size_t n = chain.size();
  constexpr std::uint32_t kUnseen = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> index(n, kUnseen);
  std::vector<std::uint32_t> low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<std::uint32_t> stack;
  std::vector<std::pair<std::uint32_t, std::uint64_t>> call;  // node, next edge
  Sccs out;
  out.comp.assign(n, kUnseen);
  std::uint32_t counter = 0;

  for (std::uint32_t root = 0; root < n; ++root) {
    if (index[root] != kUnseen) continue;
    call.emplace_back(root, chain.offsets[root]);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      auto& [v, edge] = call.back();
      if (edge < chain.offsets[v + 1]) {
        const std::uint32_t w = chain.succ[edge++];
        if (index[w] == kUnseen) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.emplace_back(w, chain.offsets[w]);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const std::uint32_t done = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
      if (low[done] == index[done]) {
        const auto id = static_cast<std::uint32_t>(out.members.size());
        out.members.emplace_back();
        std::uint32_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          out.comp[w] = id;
          out.members.back().push_back(w);
        } while (w != done);
      }
    }
  }

  out.closed.assign(out.members.size(), 1);
  for (std::uint32_t v = 0; v < n; ++v) {
    for (std::uint64_t e = chain.offsets[v]; e < chain.offsets[v + 1]; ++e) {
      if (out.comp[chain.succ[e]] != out.comp[v]) {
        out.closed[out.comp[v]] = 0;
        break;
      }
    }
  }
  return out;
}

/// Solves x = c + P x on all states outside closed components, with x given
/// on closed components by fixed(local, column). Columns are independent
/// right-hand sides. Returns x (row-major, size * columns) and stores the max
/// equation residual.
template <class Fixed>
std::vector<double> solve_chain(const LocalChain& chain, const Sccs& sccs, std::size_t columns, double c,
                                Fixed fixed, double& residual) {
  const std::size_t n = chain.size();
  std::vector<double> x(n * columns, 0.0);
  std::vector<std::int32_t> pos(n, -1);

  for (std::size_t id = 0; id < sccs.members.size(); ++id) {
    const auto& block = sccs.members[id];
    if (sccs.closed[id]) {
      for (std::uint32_t v : block) {
        for (std::size_t k = 0; k < columns; ++k) x[v * columns + k] = fixed(v, k);
      }
      continue;
    }
    const std::size_t b = block.size();
    for (std::size_t i = 0; i < b; ++i) pos[block[i]] = static_cast<std::int32_t>(i);

    Eigen::MatrixXd rhs = Eigen::MatrixXd::Constant(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(columns), c);
    std::vector<Eigen::Triplet<double>> triplets;
    std::vector<double> diagonal(b, 1.0);
    for (std::size_t i = 0; i < b; ++i) {
      const std::uint32_t v = block[i];
      const double p = chain.prob(v);
      for (std::uint64_t e = chain.offsets[v]; e < chain.offsets[v + 1]; ++e) {
        const std::uint32_t w = chain.succ[e];
        if (sccs.comp[w] == id) {
          if (w == v) diagonal[i] -= p;
          else triplets.emplace_back(static_cast<int>(i), pos[w], -p);
        } else {
          for (std::size_t k = 0; k < columns; ++k) rhs(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) += p * x[w * columns + k];
        }
      }
    }

    Eigen::MatrixXd sol;
    if (b == 1) {
      sol = rhs / diagonal[0];
    } else {
      for (std::size_t i = 0; i < b; ++i) triplets.emplace_back(static_cast<int>(i), static_cast<int>(i), diagonal[i]);
      Eigen::SparseMatrix<double> a(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(b));
      a.setFromTriplets(triplets.begin(), triplets.end());
      a.makeCompressed();
      if (b <= kDirectSolveLimit) {
        Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
        lu.compute(a);
        if (lu.info() != Eigen::Success) throw Error(Errc::invalid_parameter, "singular hitting-time system");
        sol = lu.solve(rhs);
      } else {
        Eigen::BiCGSTAB<Eigen::SparseMatrix<double>, Eigen::IncompleteLUT<double>> solver;
        solver.setTolerance(1e-15);
        solver.setMaxIterations(20000);
        solver.preconditioner().setDroptol(1e-4);
        solver.preconditioner().setFillfactor(4);
        solver.compute(a);
        sol.resize(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(columns));
        for (std::size_t k = 0; k < columns; ++k) {
          Eigen::VectorXd col = rhs.col(static_cast<Eigen::Index>(k));
          Eigen::VectorXd guess = solver.solve(col);
          // a few refinement sweeps push the residual to machine level
          for (int sweep = 0; sweep < 3; ++sweep) {
            Eigen::VectorXd r = col - a * guess;
            if (r.lpNorm<Eigen::Infinity>() < 1e-12) break;
            guess += solver.solve(r);
          }
          sol.col(static_cast<Eigen::Index>(k)) = guess;
        }
      }
    }
    for (std::size_t i = 0; i < b; ++i) {
      for (std::size_t k = 0; k < columns; ++k) {
        x[block[i] * columns + k] = sol(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
      }
    }
  }

  residual = 0.0;
  for (std::uint32_t v = 0; v < n; ++v) {
    if (sccs.closed[sccs.comp[v]]) continue;
    const double p = chain.prob(v);
    for (std::size_t k = 0; k < columns; ++k) {
      double acc = c;
      for (std::uint64_t e = chain.offsets[v]; e < chain.offsets[v + 1]; ++e) acc += p * x[chain.succ[e] * columns + k];
      residual = std::max(residual, std::abs(acc - x[v * columns + k]));
    }
  }
  return x;
}

State state_of(const Coloring& c) { return static_cast<State>(c.to_index()); }

}  // namespace

double MarkovAnalysis::probability(State s) const noexcept {
  return std::ldexp(1.0, -static_cast<int>(tied[s]));
}

MarkovAnalysis rmm_markov(const Graph& g, std::size_t max_nodes) {
  require_nodes(g, std::min<std::size_t>(max_nodes, 24), "rmm_markov");
  const MaskGraph mg(g);
  LocalChain chain = explore(mg, {}, [](State) { return false; }, true);
  const Sccs sccs = tarjan(chain);

  MarkovAnalysis out;
  out.n = g.n();
  out.component_of.assign(chain.size(), -1);
  for (std::size_t id = 0; id < sccs.members.size(); ++id) {
    if (!sccs.closed[id]) continue;
    std::vector<State> comp(sccs.members[id].begin(), sccs.members[id].end());
    std::sort(comp.begin(), comp.end());
    out.absorbing.push_back(std::move(comp));
  }
  std::sort(out.absorbing.begin(), out.absorbing.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  for (std::size_t k = 0; k < out.absorbing.size(); ++k) {
    for (State s : out.absorbing[k]) out.component_of[s] = static_cast<std::int32_t>(k);
  }

  out.hitting = solve_chain(chain, sccs, 1, 1.0, [](std::uint32_t, std::size_t) { return 0.0; }, out.residual);
  out.offsets = std::move(chain.offsets);
  out.successors = std::move(chain.succ);
  out.tied = std::move(chain.tied);
  return out;
}

double expected_stabilization_exact(const Graph& g, const Coloring& c0, std::size_t max_nodes) {
  require_nodes(g, std::min<std::size_t>(max_nodes, 24), "expected_stabilization_exact");
  if (c0.size() != g.n()) throw Error(Errc::invalid_parameter, "coloring size does not match graph");
  const MaskGraph mg(g);
  const LocalChain chain = explore(mg, {state_of(c0)}, [](State) { return false; }, false);
  const Sccs sccs = tarjan(chain);
  double residual = 0.0;
  const auto x = solve_chain(chain, sccs, 1, 1.0, [](std::uint32_t, std::size_t) { return 0.0; }, residual);
  return x[0];
}

HittingTime expected_hitting_time(const Graph& g, const Coloring& c0, const std::function<bool(State)>& target,
                                  std::size_t max_nodes) {
  require_nodes(g, std::min<std::size_t>(max_nodes, 24), "expected_hitting_time");
  if (c0.size() != g.n()) throw Error(Errc::invalid_parameter, "coloring size does not match graph");
  const MaskGraph mg(g);
  const LocalChain chain = explore(mg, {state_of(c0)}, target, false);
  const Sccs sccs = tarjan(chain);

  HittingTime out;
  double residual = 0.0;
  const auto reach = solve_chain(chain, sccs, 1, 0.0,
                                 [&](std::uint32_t v, std::size_t) { return target(chain.states[v]) ? 1.0 : 0.0; },
                                 residual);
  out.reach_probability = reach[0];
  out.residual = residual;
  if (reach[0] < 1.0 - 1e-9) {
    out.expected = std::numeric_limits<double>::infinity();
    return out;
  }
  const auto h = solve_chain(chain, sccs, 1, 1.0, [](std::uint32_t, std::size_t) { return 0.0; }, residual);
  out.expected = h[0];
  out.residual = std::max(out.residual, residual);
  return out;
}

std::vector<double> absorption_distribution(const MarkovAnalysis& m, State s) {
  if (s >= m.states()) throw Error(Errc::invalid_parameter, "state out of range");
  // Restrict to states reachable from s, reusing the stored transitions.
  LocalChain chain;
  std::vector<std::int32_t> index(m.states(), -1);
  auto visit = [&](State t) {
    if (index[t] < 0) {
      index[t] = static_cast<std::int32_t>(chain.states.size());
      chain.states.push_back(t);
    }
    return static_cast<std::uint32_t>(index[t]);
  };
  visit(s);
  for (std::size_t i = 0; i < chain.states.size(); ++i) {
    const State t = chain.states[i];
    for (std::uint64_t e = m.offsets[t]; e < m.offsets[t + 1]; ++e) chain.succ.push_back(visit(m.successors[e]));
    chain.tied.push_back(m.tied[t]);
    chain.offsets.push_back(chain.succ.size());
  }
  const Sccs sccs = tarjan(chain);
  const std::size_t k = m.absorbing.size();
  double residual = 0.0;
  const auto x = solve_chain(chain, sccs, k, 0.0,
                             [&](std::uint32_t v, std::size_t col) {
                               return m.component_of[chain.states[v]] == static_cast<std::int32_t>(col) ? 1.0 : 0.0;
                             },
                             residual);
  return {x.begin(), x.begin() + static_cast<std::ptrdiff_t>(k)};
}

double birth_death_hitting_time(std::int64_t k, std::int64_t i) {
  if (k < 0 || i < 0 || i > k) throw Error(Errc::invalid_parameter, "birth-death hitting time needs 0 <= i <= k");
  return 2.0 * static_cast<double>(i) * static_cast<double>(k - i);
}

std::vector<double> birth_death_hitting_solve(std::int64_t k) {
  if (k < 0) throw Error(Errc::invalid_parameter, "birth-death chain needs k >= 0");
  std::vector<double> h(static_cast<std::size_t>(k) + 1, 0.0);
  if (k < 2) return h;
  // Interior equations: (1/2) h_i - (1/4) h_{i-1} - (1/4) h_{i+1} = 1.
  const auto m = static_cast<Eigen::Index>(k - 1);
  Eigen::SparseMatrix<double> a(m, m);
  std::vector<Eigen::Triplet<double>> t;
  for (Eigen::Index i = 0; i < m; ++i) {
    t.emplace_back(i, i, 0.5);
    if (i > 0) t.emplace_back(i, i - 1, -0.25);
    if (i + 1 < m) t.emplace_back(i, i + 1, -0.25);
  }
  a.setFromTriplets(t.begin(), t.end());
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(a);
  const Eigen::VectorXd x = lu.solve(Eigen::VectorXd::Ones(m));
  for (Eigen::Index i = 0; i < m; ++i) h[static_cast<std::size_t>(i) + 1] = x(i);
  return h;
}

// ---- stable colorings --------------------------------------------------------

namespace {

bool stable_state(const MaskGraph& mg, State s, Model model) {
  for (std::size_t v = 0; v < mg.n; ++v) {
    const auto b = static_cast<std::uint32_t>(std::popcount(s & mg.nb[v]));
    const std::uint32_t d = mg.degree[v];
    const bool blue = (s >> v) & 1U;
    if (2 * b == d) {
      if (model == Model::rmm) return false;
    } else if ((2 * b > d) != blue) {
      return false;
    }
  }
  return true;
}

}  // namespace

std::uint64_t count_stable_colorings(const Graph& g, Model model) {
  require_nodes(g, kStableCountMaxNodes, "count_stable_colorings");
  const MaskGraph mg(g);
  std::uint64_t count = 0;
  const std::uint64_t total = std::uint64_t{1} << g.n();
  for (std::uint64_t s = 0; s < total; ++s) count += stable_state(mg, static_cast<State>(s), model);
  return count;
}

std::vector<State> list_stable_colorings(const Graph& g, Model model) {
  require_nodes(g, kStableListMaxNodes, "list_stable_colorings");
  const MaskGraph mg(g);
  std::vector<State> out;
  const std::uint64_t total = std::uint64_t{1} << g.n();
  for (std::uint64_t s = 0; s < total; ++s) {
    if (stable_state(mg, static_cast<State>(s), model)) out.push_back(static_cast<State>(s));
  }
  return out;
}

// ---- winning and resilient sets ------------------------------------------------

namespace {

Coloring seeded(std::size_t n, const NodeSet& s, Color color) {
  Coloring c(n, opposite(color));
  for (NodeId v : s.members()) c.set(v, color);
  return c;
}

std::uint64_t mm_cap(const Graph& g) { return 4 * static_cast<std::uint64_t>(g.m()) + 2 * g.n() + 8; }

bool forces_shortcut(const Graph& g, const NodeSet& s, Model model, Color color) {
  const Coloring c0 = seeded(g.n(), s, color);
  const RunResult r = model == Model::mm ? run(Model::mm, g, c0, mm_cap(g))
                                         : run_biased(g, c0, opposite(color), mm_cap(g));
  if (r.outcome != Outcome::fixed_coloring) return false;
  return color == Color::blue ? r.final_coloring.blue_count() == g.n() : r.final_coloring.blue_count() == 0;
}

// Exhaustive checks are phrased for the blue direction; the white direction
// flips every state.
bool forces_exhaustive(const Graph& g, const NodeSet& s, Model model, Color color) {
  const MaskGraph mg(g);
  const std::size_t n = g.n();
  const State all = n == 32 ? ~State{0} : (State{1} << n) - 1;
  const State flip = color == Color::blue ? 0 : all;
  const State seed = static_cast<State>(s.mask());
  const State free = all & ~seed;

  std::vector<State> starts;
  State sub = 0;
  do {
    starts.push_back(seed | sub);
    sub = (sub - free) & free;
  } while (sub != 0);

  if (model == Model::mm) {
    const std::uint64_t cap = mm_cap(g);
    for (State start : starts) {
      State cur = start ^ flip;
      for (std::uint64_t t = 0; t <= cap; ++t) {
        const State next = mg.mm_step(cur);
        if (next == cur) break;
        cur = next;
      }
      if ((cur ^ flip) != all || mg.mm_step(cur) != cur) return false;
    }
    return true;
  }

  // RMM: the support graph reachable from every start, with the target
  // state removed, must be acyclic.
  const State target = all ^ flip;
  std::vector<std::uint8_t> mark(std::size_t{1} << n, 0);  // 0 new, 1 on path, 2 done
  std::vector<std::pair<State, std::vector<State>>> stack;
  auto successors = [&](State x) {
    const auto [det, tied] = mg.split(x);
    std::vector<State> out;
    for_each_successor(det, tied, [&](State y) { out.push_back(y); });
    return out;
  };
  for (State start0 : starts) {
    const State start = start0 ^ flip;
    if (start == target || mark[start] == 2) continue;
    mark[start] = 1;
    stack.emplace_back(start, successors(start));
    while (!stack.empty()) {
      auto& [x, pending] = stack.back();
      if (pending.empty()) {
        mark[x] = 2;
        stack.pop_back();
        continue;
      }
      const State y = pending.back();
      pending.pop_back();
      if (y == target || mark[y] == 2) continue;
      if (mark[y] == 1) return false;
      mark[y] = 1;
      stack.emplace_back(y, successors(y));
    }
  }
  return true;
}

}  // namespace

WinningReport winning_set_report(const Graph& g, const NodeSet& s, Model model, WinningMode mode) {
  if (s.universe() != g.n()) throw Error(Errc::invalid_parameter, "node set universe does not match graph");
  WinningReport out;
  if (mode == WinningMode::shortcut) {
    out.blue = forces_shortcut(g, s, model, Color::blue);
    out.white = forces_shortcut(g, s, model, Color::white);
  } else {
    require_nodes(g, kWinningExhaustiveMaxNodes, "exhaustive winning-set verification");
    out.blue = forces_exhaustive(g, s, model, Color::blue);
    out.white = forces_exhaustive(g, s, model, Color::white);
  }
  return out;
}

bool is_winning_set(const Graph& g, const NodeSet& s, Model model, WinningMode mode) {
  return winning_set_report(g, s, model, mode).winning();
}

bool is_resilient(const Graph& g, const NodeSet& s, Model model) {
  if (s.universe() != g.n()) throw Error(Errc::invalid_parameter, "node set universe does not match graph");
  for (NodeId v : s.members()) {
    std::size_t inside = 0;
    for (NodeId u : g.neighbors(v)) inside += s.contains(u);
    const std::size_t d = g.degree(v);
    const bool ok = model == Model::mm ? 2 * inside >= d : 2 * inside > d;
    if (!ok) return false;
  }
  return true;
}

NodeSet largest_resilient_subset(const Graph& g, const NodeSet& within, Model model) {
  if (within.universe() != g.n()) throw Error(Errc::invalid_parameter, "node set universe does not match graph");
  NodeSet r = within;
  std::vector<std::size_t> inside(g.n(), 0);
  for (NodeId v : r.members()) {
    for (NodeId u : g.neighbors(v)) inside[u] += 1;
  }
  auto ok = [&](NodeId v) {
    const std::size_t d = g.degree(v);
    return model == Model::mm ? 2 * inside[v] >= d : 2 * inside[v] > d;
  };
  std::vector<NodeId> queue;
  for (NodeId v : r.members()) {
    if (!ok(v)) queue.push_back(v);
  }
  while (!queue.empty()) {
    const NodeId v = queue.back();
    queue.pop_back();
    if (!r.contains(v)) continue;
    r.erase(v);
    for (NodeId u : g.neighbors(v)) {
      inside[u] -= 1;
      if (r.contains(u) && !ok(u)) queue.push_back(u);
    }
  }
  return r;
}

MinWinningSet min_winning_set(const Graph& g, Model model, std::size_t max_nodes) {
  require_nodes(g, std::min<std::size_t>(max_nodes, 30), "min_winning_set");
  const std::size_t n = g.n();
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  for (std::size_t k = 0; k <= n; ++k) {
    std::uint64_t mask = k == 0 ? 0 : (std::uint64_t{1} << k) - 1;
    while (true) {
      const NodeSet s = NodeSet::from_mask(n, mask);
      if (largest_resilient_subset(g, s.complement(), model).empty() && is_winning_set(g, s, model)) {
        return {k, s};
      }
      if (k == 0 || mask == (full ^ ((std::uint64_t{1} << (n - k)) - 1))) break;
      // Gosper's hack: next mask with the same popcount.
      const std::uint64_t low = mask & (~mask + 1);
      const std::uint64_t ripple = mask + low;
      mask = ripple | (((mask ^ ripple) >> 2) / low);
    }
  }
  throw Error(Errc::invalid_parameter, "no winning set found");
}

}  // namespace majdyn
