#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "majdyn/dynamics.hpp"
#include "majdyn/error.hpp"
#include "majdyn/exact.hpp"
#include "oracles.hpp"

using namespace majdyn;

namespace {

oracle::Adj to_adj(const Graph& g) {
  oracle::Adj a(g.n());
  for (NodeId v = 0; v < g.n(); ++v) {
    for (NodeId u : g.neighbors(v)) a[v].push_back(static_cast<int>(u));
  }
  return a;
}

Graph random_graph(int n, double p, std::mt19937_64& rng) {
  std::vector<Edge> edges;
  for (auto [u, v] : oracle::random_connected_edges(n, p, rng)) edges.emplace_back(u, v);
  return Graph(static_cast<std::size_t>(n), edges);
}

std::set<std::set<std::uint64_t>> class_set(const MarkovAnalysis& m) {
  std::set<std::set<std::uint64_t>> out;
  for (const auto& comp : m.absorbing) out.insert(std::set<std::uint64_t>(comp.begin(), comp.end()));
  return out;
}

void compare_chain(const Graph& g) {
  const MarkovAnalysis m = rmm_markov(g);
  const oracle::DenseChain chain(to_adj(g));
  REQUIRE(class_set(m) == std::set<std::set<std::uint64_t>>(chain.classes.begin(), chain.classes.end()));
  for (std::size_t i = 0; i + 1 < m.absorbing.size(); ++i) CHECK(m.absorbing[i].front() < m.absorbing[i + 1].front());
  const auto h = chain.hitting();
  double worst = 0.0;
  for (State s = 0; s < m.states(); ++s) {
    worst = std::max(worst, std::abs(h[s] - m.hitting[s]) / std::max(1.0, h[s]));
    CHECK((m.component_of[s] == -1) == (chain.closed_class[s] == -1));
    CHECK(m.offsets[s + 1] - m.offsets[s] == chain.next[s].size());
    CHECK(m.probability(s) == doctest::Approx(chain.next[s].front().second));
  }
  CHECK(worst < 1e-9);
  CHECK(m.residual < 1e-8);

  // Absorption distribution from a few states against the dense solve.
  std::vector<std::vector<double>> per_class;
  for (std::size_t cls = 0; cls < chain.classes.size(); ++cls) per_class.push_back(chain.absorption(static_cast<int>(cls)));
  for (State s = 0; s < m.states(); s += 7) {
    const auto dist = absorption_distribution(m, s);
    REQUIRE(dist.size() == m.absorbing.size());
    double total = 0.0;
    for (std::size_t c = 0; c < dist.size(); ++c) {
      const int oc = chain.closed_class[m.absorbing[c].front()];
      CHECK(std::abs(dist[c] - per_class[oc][s]) < 1e-9);
      total += dist[c];
    }
    CHECK(total == doctest::Approx(1.0));
  }
}

}  // namespace

TEST_CASE("RMM chain on cycles matches the dense oracle") {
  for (std::size_t n = 3; n <= 9; ++n) compare_chain(make_cycle(n));
}

TEST_CASE("RMM chain on random graphs matches the dense oracle") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 25; ++trial) compare_chain(random_graph(3 + static_cast<int>(rng() % 6), 0.35, rng));
  compare_chain(make_two_cycle(8));
}

TEST_CASE("RMM chain structure on small cycles") {
  const MarkovAnalysis m4 = rmm_markov(make_cycle(4));
  REQUIRE(m4.absorbing.size() == 3);
  CHECK(m4.absorbing[0] == std::vector<State>{0});
  CHECK(m4.absorbing[1] == std::vector<State>{0b0101, 0b1010});
  CHECK(m4.absorbing[2] == std::vector<State>{0b1111});
  const MarkovAnalysis m5 = rmm_markov(make_cycle(5));
  CHECK(m5.absorbing.size() == 2);
  CHECK(expected_stabilization_exact(make_cycle(5), Coloring::parse("BBBBB")) == 0.0);
  CHECK_THROWS_AS(rmm_markov(make_cycle(15)), Error);
  try {
    rmm_markov(make_cycle(15));
  } catch (const Error& e) {
    CHECK(e.code() == Errc::size_cap);
  }
  CHECK(rmm_markov(make_cycle(15), 15).absorbing.size() == 2);
}

TEST_CASE("targeted hitting times") {
  const Graph g = make_cycle(8);
  const MarkovAnalysis m = rmm_markov(g);
  std::vector<char> absorbing(m.states(), 0);
  for (const auto& comp : m.absorbing) {
    for (State s : comp) absorbing[s] = 1;
  }
  for (State s = 0; s < m.states(); s += 5) {
    const auto h = expected_hitting_time(g, Coloring::from_index(8, s), [&](State x) { return absorbing[x] != 0; });
    CHECK(h.reach_probability == doctest::Approx(1.0));
    CHECK(std::abs(h.expected - m.hitting[s]) < 1e-8 * std::max(1.0, m.hitting[s]));
  }
  // All-white is missed whenever blue can win.
  const auto miss = expected_hitting_time(g, Coloring::parse("BBBBWWWW"), [](State x) { return x == 0; });
  CHECK(std::isinf(miss.expected));
  CHECK(miss.reach_probability > 0.0);
  CHECK(miss.reach_probability < 1.0);
  const auto hit = expected_hitting_time(g, Coloring::parse("BBBBWWWW"), [](State) { return true; });
  CHECK(hit.expected == 0.0);
}

TEST_CASE("birth-death hitting times") {
  for (std::int64_t k = 0; k <= 64; ++k) {
    const auto lib = birth_death_hitting_solve(k);
    const auto ref = oracle::birth_death(static_cast<int>(k));
    REQUIRE(lib.size() == static_cast<std::size_t>(k + 1));
    for (std::int64_t i = 0; i <= k; ++i) {
      CHECK(std::abs(birth_death_hitting_time(k, i) - ref[i]) < 1e-9 * std::max(1.0, ref[i]));
      CHECK(std::abs(lib[i] - ref[i]) < 1e-9 * std::max(1.0, ref[i]));
    }
  }
  CHECK_THROWS_AS(birth_death_hitting_time(4, 5), Error);
  CHECK_THROWS_AS(birth_death_hitting_time(4, -1), Error);
}

TEST_CASE("stable colorings against brute force") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 10);
    const Graph g = trial < 10 ? make_cycle(static_cast<std::size_t>(n)) : random_graph(n, 0.3, rng);
    const auto adj = to_adj(g);
    std::vector<State> mm, rmm;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
      const auto c = oracle::from_bits(n, s);
      if (oracle::mm_step(adj, c) != c) continue;
      mm.push_back(static_cast<State>(s));
      bool tie = false;
      for (int v = 0; v < n; ++v) tie = tie || oracle::vote(adj, c, v) == 0;
      if (!tie) rmm.push_back(static_cast<State>(s));
    }
    CHECK(list_stable_colorings(g, Model::mm) == mm);
    CHECK(list_stable_colorings(g, Model::rmm) == rmm);
    CHECK(count_stable_colorings(g, Model::mm) == mm.size());
    CHECK(count_stable_colorings(g, Model::rmm) == rmm.size());
  }
  CHECK(count_stable_colorings(make_cycle(4), Model::mm) == 6);
  CHECK_THROWS_AS(list_stable_colorings(make_cycle(25), Model::mm), Error);
}

TEST_CASE("resilient sets") {
  const Graph c6 = make_cycle(6);
  CHECK(is_resilient(c6, NodeSet(6, {0, 1}), Model::mm));
  CHECK_FALSE(is_resilient(c6, NodeSet(6, {0, 1}), Model::rmm));
  CHECK(is_resilient(c6, NodeSet::all(6), Model::rmm));
  CHECK(is_resilient(c6, NodeSet(6), Model::rmm));

  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 8);
    const Graph g = random_graph(n, 0.3, rng);
    const NodeSet within = NodeSet::from_mask(g.n(), rng() & ((1U << n) - 1));
    for (Model model : {Model::mm, Model::rmm}) {
      // Union of every resilient subset of `within`.
      std::uint64_t expect = 0;
      const std::uint64_t w = within.mask();
      for (std::uint64_t sub = w;; sub = (sub - 1) & w) {
        if (is_resilient(g, NodeSet::from_mask(g.n(), sub), model)) expect |= sub;
        if (sub == 0) break;
      }
      CHECK(largest_resilient_subset(g, within, model).mask() == expect);
    }
  }
}

TEST_CASE("winning sets: shortcut, exhaustive and the oracle agree") {
  std::mt19937_64 rng(77);
  int winners = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 5);
    const Graph g = trial < 5 ? make_cycle(static_cast<std::size_t>(n)) : random_graph(n, 0.4, rng);
    const auto adj = to_adj(g);
    const oracle::DenseChain chain(adj);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      const NodeSet s = NodeSet::from_mask(g.n(), mask);
      const WinningReport mm_fast = winning_set_report(g, s, Model::mm);
      const WinningReport mm_full = winning_set_report(g, s, Model::mm, WinningMode::exhaustive);
      CHECK(mm_fast.blue == oracle::mm_forces(adj, mask, 1));
      CHECK(mm_fast.white == oracle::mm_forces(adj, mask, 0));
      CHECK(mm_full.blue == mm_fast.blue);
      CHECK(mm_full.white == mm_fast.white);
      const WinningReport rmm_fast = winning_set_report(g, s, Model::rmm);
      const WinningReport rmm_full = winning_set_report(g, s, Model::rmm, WinningMode::exhaustive);
      CHECK(rmm_fast.blue == oracle::rmm_forces(chain, mask, 1));
      CHECK(rmm_fast.white == oracle::rmm_forces(chain, mask, 0));
      CHECK(rmm_full.blue == rmm_fast.blue);
      CHECK(rmm_full.white == rmm_fast.white);
      winners += rmm_fast.winning();
    }
  }
  CHECK(winners > 0);
}

TEST_CASE("minimum winning sets on cycles") {
  for (std::size_t n = 4; n <= 12; ++n) {
    const MinWinningSet w = min_winning_set(make_cycle(n), Model::mm);
    CHECK(w.size == n / 2 + 1);
    CHECK(w.witness.size() == w.size);
    CHECK(is_winning_set(make_cycle(n), w.witness, Model::mm, WinningMode::exhaustive));
  }
  const MinWinningSet c8 = min_winning_set(make_cycle(8), Model::mm);
  CHECK(c8.witness.members() == std::vector<NodeId>{0, 1, 2, 4, 6});
  for (std::size_t n = 3; n <= 8; ++n) CHECK(min_winning_set(make_cycle(n), Model::rmm).size == n);
  CHECK_THROWS_AS(min_winning_set(make_cycle(17), Model::mm), Error);
}
