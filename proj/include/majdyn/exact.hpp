#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "majdyn/coloring.hpp"
#include "majdyn/graph.hpp"

namespace majdyn {

/// Default node-count cap for the exhaustive RMM chain.
inline constexpr std::size_t kMarkovMaxNodes = 14;

using State = std::uint32_t;

/// The RMM Markov chain over all 2^n colorings. State s encodes the coloring
/// with node v blue iff bit v of s is set.
///
/// Successors of s are stored in CSR form. Every successor of s has
/// probability 2^-tied[s] (tie outcomes are distinct subsets, so successors
/// never repeat).
struct MarkovAnalysis {
  std::size_t n = 0;
  std::vector<std::uint64_t> offsets;
  std::vector<State> successors;
  std::vector<std::uint8_t> tied;
  /// Absorbing components (closed SCCs), each sorted ascending; components
  /// are ordered by their smallest state.
  std::vector<std::vector<State>> absorbing;
  /// Index into absorbing, or -1 for transient states.
  std::vector<std::int32_t> component_of;
  /// Expected rounds to enter an absorbing component, per state.
  std::vector<double> hitting;
  /// max |(I-Q)h - 1| over transient states.
  double residual = 0.0;

  std::size_t states() const noexcept { return std::size_t{1} << n; }
  double probability(State s) const noexcept;
};

/// Builds the chain, its absorbing components and hitting times.
/// Throws Errc::size_cap when n > max_nodes.
MarkovAnalysis rmm_markov(const Graph& g, std::size_t max_nodes = kMarkovMaxNodes);

/// hitting time of c0 in rmm_markov(g).
double expected_stabilization_exact(const Graph& g, const Coloring& c0, std::size_t max_nodes = kMarkovMaxNodes);

struct HittingTime {
  /// Infinite when the target is missed with positive probability.
  double expected = 0.0;
  /// Probability that the target is ever reached.
  double reach_probability = 0.0;
  double residual = 0.0;
};

/// Expected rounds until the RMM chain started at c0 first enters a state
/// satisfying target. Only states reachable from c0 are expanded.
HittingTime expected_hitting_time(const Graph& g, const Coloring& c0, const std::function<bool(State)>& target,
                                  std::size_t max_nodes = kMarkovMaxNodes);

/// Probability of ending in each absorbing component of m, starting from s.
std::vector<double> absorption_distribution(const MarkovAnalysis& m, State s);

/// 2 i (k - i). Throws Errc::invalid_parameter unless 0 <= i <= k.
double birth_death_hitting_time(std::int64_t k, std::int64_t i);

/// Hitting times of {0, k} for the lazy walk on 0..k (stay 1/2, step +-1
/// w.p. 1/4 each), by direct linear solve. Entry i is the time from i.
std::vector<double> birth_death_hitting_solve(std::int64_t k);

// ---- stable colorings --------------------------------------------------------

inline constexpr std::size_t kStableCountMaxNodes = 28;
inline constexpr std::size_t kStableListMaxNodes = 24;

std::uint64_t count_stable_colorings(const Graph& g, Model model);
/// State indices of all stable colorings, ascending.
std::vector<State> list_stable_colorings(const Graph& g, Model model);

// ---- winning and resilient sets ------------------------------------------------

enum class WinningMode {
  /// Monotone single simulation per color direction.
  shortcut,
  /// MM: every coloring of the complement. RMM: every tie-resolution path of
  /// the reachable support graph.
  exhaustive,
};

inline constexpr std::size_t kWinningExhaustiveMaxNodes = 20;

struct WinningReport {
  bool blue = false;   // S blue forces all-blue
  bool white = false;  // S white forces all-white
  bool winning() const noexcept { return blue && white; }
};

WinningReport winning_set_report(const Graph& g, const NodeSet& s, Model model,
                                 WinningMode mode = WinningMode::shortcut);
bool is_winning_set(const Graph& g, const NodeSet& s, Model model, WinningMode mode = WinningMode::shortcut);

inline constexpr std::size_t kMinWinningMaxNodes = 16;

struct MinWinningSet {
  std::size_t size = 0;
  NodeSet witness;
};

/// Smallest winning set by increasing cardinality; the witness is the first
/// winner in colexicographic mask order.
MinWinningSet min_winning_set(const Graph& g, Model model, std::size_t max_nodes = kMinWinningMaxNodes);

/// MM: |N_S(v)| >= d(v)/2 for all v in S. RMM: strict.
bool is_resilient(const Graph& g, const NodeSet& s, Model model);

/// Largest resilient subset of within (unique: resilient sets are closed
/// under union). Empty when none exists.
NodeSet largest_resilient_subset(const Graph& g, const NodeSet& within, Model model);

}  // namespace majdyn
