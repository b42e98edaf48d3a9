#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "majdyn/coloring.hpp"
#include "majdyn/graph.hpp"

namespace majdyn {

/// Counter-based source of tie coins. The coin for (round t, node v) is a
/// pure function of (seed, t, v), so every scheduler that consumes it sees
/// the same randomness regardless of evaluation order.
///
/// With the default fair coin, the 64 coins of nodes 64w..64w+63 in a round
/// are the bits of a single hash of (seed, t, w); with a biased coin each node
/// hashes separately and compares against blue_probability.
class TieRng {
 public:
  explicit TieRng(std::uint64_t seed, double blue_probability = 0.5);

  std::uint64_t seed() const noexcept { return seed_; }
  double blue_probability() const noexcept { return q_; }
  bool fair() const noexcept { return q_ == 0.5; }

  std::uint64_t round_key(std::uint64_t round) const noexcept;
  /// Fair-coin bits for the nodes of word w. Only meaningful when fair().
  std::uint64_t word_bits(std::uint64_t round_key, std::size_t w) const noexcept;
  bool blue_with_key(std::uint64_t round_key, NodeId v) const noexcept;
  bool blue(std::uint64_t round, NodeId v) const noexcept { return blue_with_key(round_key(round), v); }

 private:
  std::uint64_t seed_;
  std::uint64_t seed_key_;
  double q_;
};

enum class Outcome {
  fixed_coloring,
  period_two,
  blue,
  white,
  blinking,
  undetermined,
  cap_exceeded,
};

const char* to_string(Outcome outcome) noexcept;

struct RunResult {
  /// First round index whose coloring already lies on the eventual cycle (MM)
  /// or in an absorbing component (RMM). Empty when cap-exceeded/undetermined.
  std::optional<std::uint64_t> rounds;
  Outcome outcome = Outcome::undetermined;
  Coloring final_coloring;
  /// The other coloring of a period-two cycle or blinking pair.
  std::optional<Coloring> partner;
  std::uint64_t trace_len = 0;
  /// b_0, b_1, ... for every recorded round, when requested.
  std::vector<std::size_t> blue_counts;

  friend bool operator==(const RunResult&, const RunResult&) = default;
};

enum class Engine {
  automatic,
  /// Any graph: evaluates nodes with a disagreeing neighbor.
  frontier,
  /// Canonical cycles: 64 nodes per word.
  cycle_words,
  /// RMM on canonical cycles: tied nodes only.
  cycle_sparse,
};

struct RunOptions {
  bool record_blue_counts = false;
  /// Called with (t, C_t) for every recorded round t = 0, 1, ...
  std::function<void(std::uint64_t, const Coloring&)> on_state;
  /// All engines produce identical results; automatic picks the fastest.
  Engine engine = Engine::automatic;
};

/// MM: 4m. RMM: 64 n^2 + 64.
std::uint64_t default_max_rounds(Model model, const Graph& g);

/// Synchronous MM update: strict neighborhood majority, ties keep their color.
Coloring mm_step(const Graph& g, const Coloring& c);

/// Synchronous RMM update producing C_round from c = C_{round-1}. Tied nodes
/// take rng.blue(round, v).
Coloring rmm_step(const Graph& g, const Coloring& c, const TieRng& rng, std::uint64_t round);

/// Majority update where every tie resolves to tie_color. Deterministic.
Coloring biased_step(const Graph& g, const Coloring& c, Color tie_color);

/// Runs the dynamics from c0.
///
/// MM (any graph): stops once the eventual fixed coloring or 2-cycle is
/// certified; outcome fixed-coloring or period-two.
/// RMM on a canonical cycle: stops on a monochromatic coloring (blue/white)
/// or an alternating one (blinking).
/// RMM elsewhere: stops on an RMM-stable coloring (blue/white when
/// monochromatic, else fixed-coloring); otherwise undetermined at the cap.
///
/// A stabilization time is reported only if it is <= max_rounds; up to two
/// extra rounds may be evaluated to certify it. rng is required for RMM.
RunResult run(Model model, const Graph& g, const Coloring& c0, std::uint64_t max_rounds,
              const std::optional<TieRng>& rng = std::nullopt, const RunOptions& options = {});

/// Deterministic run where ties always resolve to tie_color; used as the
/// adversarial schedule of RMM. Outcome is fixed-coloring, period-two or
/// cap-exceeded as for MM.
RunResult run_biased(const Graph& g, const Coloring& c0, Color tie_color, std::uint64_t max_rounds,
                     const RunOptions& options = {});

/// One pass of lazy RMM on a canonical cycle: every extended alternating
/// path is updated by the RMM rule into a buffer, which is committed once
/// all paths are processed. Equals rmm_step(cycle, c, rng, round) exactly.
/// Throws Errc::undefined_partition on an alternating coloring.
Coloring lazy_rmm_pass(const Graph& cycle, const Coloring& c, const TieRng& rng, std::uint64_t round);

}  // namespace majdyn
