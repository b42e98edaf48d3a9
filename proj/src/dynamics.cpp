#include "majdyn/dynamics.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>

#include "majdyn/error.hpp"
#include "majdyn/rng.hpp"

namespace majdyn {

// ---- TieRng ------------------------------------------------------------------

TieRng::TieRng(std::uint64_t seed, double blue_probability)
    : seed_(seed), seed_key_(mix64(seed ^ 0x6a09e667f3bcc909ULL)), q_(blue_probability) {
  if (!(q_ > 0.0 && q_ < 1.0)) throw Error(Errc::invalid_parameter, "tie blue probability must lie in (0,1)");
}

std::uint64_t TieRng::round_key(std::uint64_t round) const noexcept {
  return mix64(seed_key_ ^ mix64(round));
}

std::uint64_t TieRng::word_bits(std::uint64_t key, std::size_t w) const noexcept {
  return mix64(key ^ (static_cast<std::uint64_t>(w) * 0xd1b54a32d192ed03ULL));
}

bool TieRng::blue_with_key(std::uint64_t key, NodeId v) const noexcept {
  if (fair()) return (word_bits(key, v >> 6) >> (v & 63)) & 1U;
  const std::uint64_t h = mix64(key + (static_cast<std::uint64_t>(v) + 1) * 0x9e3779b97f4a7c15ULL);
  return static_cast<double>(h >> 11) * 0x1.0p-53 < q_;
}

const char* to_string(Outcome outcome) noexcept {
  switch (outcome) {
    case Outcome::fixed_coloring: return "fixed-coloring";
    case Outcome::period_two: return "period-two-cycle";
    case Outcome::blue: return "blue";
    case Outcome::white: return "white";
    case Outcome::blinking: return "blinking";
    case Outcome::undetermined: return "undetermined";
    case Outcome::cap_exceeded: return "cap-exceeded";
  }
  return "unknown";
}

std::uint64_t default_max_rounds(Model model, const Graph& g) {
  if (model == Model::mm) return 4 * static_cast<std::uint64_t>(g.m());
  const auto n = static_cast<std::uint64_t>(g.n());
  return 64 * n * n + 64;
}

// ---- single steps ------------------------------------------------------------

namespace {

void require_sized(const Graph& g, const Coloring& c) {
  if (g.n() != c.size()) throw Error(Errc::invalid_parameter, "coloring size does not match graph");
}

template <class TieFn>
Coloring step_with(const Graph& g, const Coloring& c, TieFn on_tie) {
  require_sized(g, c);
  Coloring next(c.size());
  for (NodeId v = 0; v < g.n(); ++v) {
    switch (majority_vote(g, c, v)) {
      case Vote::blue: next.set(v, Color::blue); break;
      case Vote::white: break;
      case Vote::tie: next.set(v, on_tie(v)); break;
    }
  }
  return next;
}

}  // namespace

Coloring mm_step(const Graph& g, const Coloring& c) {
  return step_with(g, c, [&c](NodeId v) { return c[v]; });
}

Coloring rmm_step(const Graph& g, const Coloring& c, const TieRng& rng, std::uint64_t round) {
  const std::uint64_t key = rng.round_key(round);
  return step_with(g, c, [&](NodeId v) { return rng.blue_with_key(key, v) ? Color::blue : Color::white; });
}

Coloring biased_step(const Graph& g, const Coloring& c, Color tie_color) {
  return step_with(g, c, [tie_color](NodeId) { return tie_color; });
}

// ---- engines -----------------------------------------------------------------

namespace {

enum class TieRule { keep, random, white, blue };

enum class StopMode {
  deterministic,  // fixed point or 2-cycle via change sets
  rmm_cycle,      // monochromatic or alternating cycle coloring
  rmm_general,    // round with neither ties nor changes
};

struct StepStats {
  std::size_t changed = 0;
  std::size_t ties = 0;
  bool repeats_previous_changes = false;
};

std::optional<Outcome> cycle_outcome_from_counts(std::size_t n, std::size_t bichromatic, std::size_t blue) {
  if (bichromatic == 0) return blue == n ? Outcome::blue : Outcome::white;
  if (n % 2 == 0 && bichromatic == n) return Outcome::blinking;
  return std::nullopt;
}

/// Evaluates only nodes that have a neighbor of the other color (plus
/// isolated nodes under non-keeping tie rules); nobody else can change.
class FrontierEngine {
 public:
  FrontierEngine(const Graph& g, const Coloring& c0, TieRule rule, const TieRng* rng)
      : g_(g), rule_(rule), rng_(rng), color_(g.n()), seen_(g.n(), 0), changed_mark_(g.n(), 0) {
    for (NodeId v = 0; v < g.n(); ++v) color_[v] = c0.is_blue(v);
    blue_ = c0.blue_count();
    for (NodeId v = 0; v < g.n(); ++v) {
      for (NodeId u : g.neighbors(v)) {
        if (u > v && color_[u] != color_[v]) ++bichromatic_;
      }
      if (is_active(v)) active_.push_back(v);
    }
  }

  std::size_t blue() const noexcept { return blue_; }
  std::optional<Outcome> cycle_outcome() const { return cycle_outcome_from_counts(color_.size(), bichromatic_, blue_); }

  StepStats step(std::uint64_t t) {
    StepStats stats;
    const std::uint64_t key = rng_ != nullptr ? rng_->round_key(t) : 0;
    changes_.clear();
    for (NodeId v : active_) {
      std::size_t b = 0;
      const auto nb = g_.neighbors(v);
      for (NodeId u : nb) b += color_[u];
      const std::size_t d = nb.size();
      std::uint8_t next = color_[v];
      if (2 * b > d) {
        next = 1;
      } else if (2 * b < d) {
        next = 0;
      } else {
        ++stats.ties;
        switch (rule_) {
          case TieRule::keep: next = color_[v]; break;
          case TieRule::random: next = rng_->blue_with_key(key, v); break;
          case TieRule::white: next = 0; break;
          case TieRule::blue: next = 1; break;
        }
      }
      if (next != color_[v]) changes_.push_back(v);
    }
    stats.changed = changes_.size();

    ++epoch_;
    for (NodeId v : changes_) changed_mark_[v] = epoch_;
    for (NodeId v : changes_) {
      color_[v] ^= 1U;
      if (color_[v]) ++blue_; else --blue_;
    }
    for (NodeId v : changes_) {
      for (NodeId u : g_.neighbors(v)) {
        if (changed_mark_[u] == epoch_) continue;
        if (color_[u] != color_[v]) ++bichromatic_; else --bichromatic_;
      }
    }

    next_active_.clear();
    auto consider = [this](NodeId v) {
      if (seen_[v] == epoch_) return;
      seen_[v] = epoch_;
      if (is_active(v)) next_active_.push_back(v);
    };
    for (NodeId v : active_) consider(v);
    for (NodeId v : changes_) {
      consider(v);
      for (NodeId u : g_.neighbors(v)) consider(u);
    }
    active_.swap(next_active_);

    std::sort(changes_.begin(), changes_.end());
    stats.repeats_previous_changes = has_previous_ && !changes_.empty() && changes_ == previous_changes_;
    previous_changes_.swap(changes_);
    has_previous_ = true;
    return stats;
  }

  Coloring snapshot() const {
    Coloring c(color_.size());
    for (std::size_t v = 0; v < color_.size(); ++v) {
      if (color_[v]) c.set(v, Color::blue);
    }
    return c;
  }

  /// The coloring before the last step.
  Coloring previous() const {
    Coloring c = snapshot();
    for (NodeId v : previous_changes_) c.flip(v);
    return c;
  }

 private:
  bool is_active(NodeId v) const {
    const auto nb = g_.neighbors(v);
    if (nb.empty()) return rule_ != TieRule::keep;
    for (NodeId u : nb) {
      if (color_[u] != color_[v]) return true;
    }
    return false;
  }

  const Graph& g_;
  TieRule rule_;
  const TieRng* rng_;
  std::vector<std::uint8_t> color_;
  std::size_t blue_ = 0;
  std::size_t bichromatic_ = 0;
  std::vector<NodeId> active_;
  std::vector<NodeId> next_active_;
  std::vector<NodeId> changes_;
  std::vector<NodeId> previous_changes_;
  bool has_previous_ = false;
  std::vector<std::uint64_t> seen_;
  std::vector<std::uint64_t> changed_mark_;
  std::uint64_t epoch_ = 0;
};

/// Word-parallel engine for the canonical cycle: 64 nodes per machine word,
/// and only words containing a bichromatic edge are evaluated.
class CycleWordEngine {
 public:
  CycleWordEngine(const Coloring& c0, TieRule rule, const TieRng* rng)
      : n_(c0.size()),
        words_count_((n_ + 63) / 64),
        x_(c0.words().begin(), c0.words().end()),
        rule_(rule),
        rng_(rng),
        edge_count_(words_count_, 0),
        seen_(words_count_, 0) {
    const std::size_t rem = n_ % 64;
    last_mask_ = rem == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << rem) - 1;
    blue_ = c0.blue_count();
    for (std::size_t w = 0; w < words_count_; ++w) {
      edge_count_[w] = edges_in(w);
      bichromatic_ += edge_count_[w];
      if (disagrees(w)) active_.push_back(static_cast<std::uint32_t>(w));
    }
  }

  std::size_t blue() const noexcept { return blue_; }
  std::optional<Outcome> cycle_outcome() const { return cycle_outcome_from_counts(n_, bichromatic_, blue_); }

  StepStats step(std::uint64_t t) {
    StepStats stats;
    const std::uint64_t key = rng_ != nullptr ? rng_->round_key(t) : 0;
    pending_.clear();
    for (std::uint32_t w : active_) {
      const std::uint64_t cur = x_[w];
      const std::uint64_t left = left_of(w);
      const std::uint64_t right = right_of(w);
      const std::uint64_t tied = (left ^ right) & valid(w);
      std::uint64_t tie_value = 0;
      switch (rule_) {
        case TieRule::keep: tie_value = cur; break;
        case TieRule::random: tie_value = rng_->word_bits(key, w); break;
        case TieRule::white: tie_value = 0; break;
        case TieRule::blue: tie_value = ~std::uint64_t{0}; break;
      }
      const std::uint64_t next = ((~tied & left) | (tied & tie_value)) & valid(w);
      stats.ties += static_cast<std::size_t>(std::popcount(tied));
      if (next != cur) pending_.push_back({w, next ^ cur});
    }

    for (const auto& [w, diff] : pending_) {
      const std::uint64_t next = x_[w] ^ diff;
      blue_ = blue_ + static_cast<std::size_t>(std::popcount(next)) -
              static_cast<std::size_t>(std::popcount(x_[w]));
      x_[w] = next;
      stats.changed += static_cast<std::size_t>(std::popcount(diff));
    }

    ++epoch_;
    for (const auto& change : pending_) {
      const std::uint32_t w = change.first;
      refresh_edges(w);
      refresh_edges(prev_word(w));
    }

    ++epoch_;
    next_active_.clear();
    auto consider = [this](std::uint32_t w) {
      if (seen_[w] == epoch_) return;
      seen_[w] = epoch_;
      if (disagrees(w)) next_active_.push_back(w);
    };
    for (std::uint32_t w : active_) consider(w);
    for (const auto& change : pending_) {
      consider(prev_word(change.first));
      consider(change.first);
      consider(next_word(change.first));
    }
    active_.swap(next_active_);

    std::sort(pending_.begin(), pending_.end());
    stats.repeats_previous_changes = has_previous_ && !pending_.empty() && pending_ == previous_;
    previous_.swap(pending_);
    has_previous_ = true;
    return stats;
  }

  Coloring snapshot() const { return Coloring::from_words(n_, x_); }

  Coloring previous() const {
    std::vector<std::uint64_t> words = x_;
    for (const auto& [w, diff] : previous_) words[w] ^= diff;
    return Coloring::from_words(n_, std::move(words));
  }

 private:
  std::uint64_t valid(std::size_t w) const noexcept { return w + 1 == words_count_ ? last_mask_ : ~std::uint64_t{0}; }
  bool bit(std::size_t v) const noexcept { return (x_[v >> 6] >> (v & 63)) & 1U; }
  std::uint32_t prev_word(std::uint32_t w) const noexcept {
    return w == 0 ? static_cast<std::uint32_t>(words_count_ - 1) : w - 1;
  }
  std::uint32_t next_word(std::uint32_t w) const noexcept {
    return w + 1 == words_count_ ? 0 : w + 1;
  }

  // Bit i = color of the node preceding node 64w+i.
  std::uint64_t left_of(std::size_t w) const noexcept {
    const std::size_t before = w == 0 ? n_ - 1 : 64 * w - 1;
    return (x_[w] << 1) | static_cast<std::uint64_t>(bit(before));
  }

  // Bit i = color of the node following node 64w+i.
  std::uint64_t right_of(std::size_t w) const noexcept {
    const std::size_t count = w + 1 == words_count_ ? n_ - 64 * w : 64;
    const std::size_t after = (64 * w + count) % n_;
    return (x_[w] >> 1) | (static_cast<std::uint64_t>(bit(after)) << (count - 1));
  }

  // Bichromatic edges {i, i+1} with i in word w.
  std::size_t edges_in(std::size_t w) const noexcept {
    return static_cast<std::size_t>(std::popcount((x_[w] ^ right_of(w)) & valid(w)));
  }

  bool disagrees(std::size_t w) const noexcept {
    return (((x_[w] ^ left_of(w)) | (x_[w] ^ right_of(w))) & valid(w)) != 0;
  }

  void refresh_edges(std::uint32_t w) {
    if (seen_[w] == epoch_) return;
    seen_[w] = epoch_;
    const std::size_t now = edges_in(w);
    bichromatic_ = bichromatic_ + now - edge_count_[w];
    edge_count_[w] = now;
  }

  std::size_t n_;
  std::size_t words_count_;
  std::uint64_t last_mask_ = 0;
  std::vector<std::uint64_t> x_;
  TieRule rule_;
  const TieRng* rng_;
  std::size_t blue_ = 0;
  std::size_t bichromatic_ = 0;
  std::vector<std::size_t> edge_count_;
  std::vector<std::uint32_t> active_;
  std::vector<std::uint32_t> next_active_;
  std::vector<std::pair<std::uint32_t, std::uint64_t>> pending_;
  std::vector<std::pair<std::uint32_t, std::uint64_t>> previous_;
  bool has_previous_ = false;
  std::vector<std::uint64_t> seen_;
  std::uint64_t epoch_ = 0;
};

/// RMM on the canonical cycle, tracking tied nodes only. A node is tied iff
/// its two neighbors differ; every other node either keeps its color (both
/// edges monochromatic) or flips every round (both bichromatic), and keeps
/// doing so until a tied node comes within distance one. Colors are stored
/// lazily as (value, stamp, flipping) and resolved on read.
class SparseCycleEngine {
 public:
  SparseCycleEngine(const Coloring& c0, const TieRng* rng)
      : n_(c0.size()), rng_(rng), value_(n_), flipping_(n_), stamp_(n_, 0), mark_(n_, 0) {
    for (std::size_t v = 0; v < n_; ++v) value_[v] = c0.is_blue(v);
    for (std::size_t v = 0; v < n_; ++v) {
      const std::uint8_t l = value_[prev(v)];
      const std::uint8_t r = value_[next(v)];
      flipping_[v] = l != value_[v] && r != value_[v];
      if (l != r) tied_.push_back(static_cast<NodeId>(v));
    }
  }

  std::size_t blue() const {
    std::size_t b = 0;
    for (std::size_t v = 0; v < n_; ++v) b += color(v);
    return b;
  }

  std::optional<Outcome> cycle_outcome() const {
    if (!tied_.empty()) return std::nullopt;
    const std::uint8_t a = color(0);
    if (a == color(1)) return a ? Outcome::blue : Outcome::white;
    return Outcome::blinking;
  }

  StepStats step(std::uint64_t t) {
    StepStats stats;
    stats.ties = tied_.size();
    const std::uint64_t key = rng_->round_key(t);
    // A node that is not tied moves to x(v-1) = x(v+1), which is exactly its
    // lazy color one round later; only tied nodes need a coin.
    now_ = t;
    ++epoch_;
    region_.clear();
    std::size_t cached_word = SIZE_MAX;
    std::uint64_t bits = 0;
    for (NodeId u : tied_) {
      std::uint8_t coin;
      if (rng_->fair()) {
        if ((u >> 6) != cached_word) {
          cached_word = u >> 6;
          bits = rng_->word_bits(key, cached_word);
        }
        coin = static_cast<std::uint8_t>((bits >> (u & 63)) & 1U);
      } else {
        coin = static_cast<std::uint8_t>(rng_->blue_with_key(key, u));
      }
      stats.changed += coin != value_[u];
      value_[u] = coin;
      stamp_[u] = t;
      mark_[u] = epoch_;
      region_.push_back(u);
    }
    for (NodeId u : tied_) {
      for (std::size_t w : {prev(u), next(u)}) {
        if (mark_[w] == epoch_) continue;
        mark_[w] = epoch_;
        value_[w] = color(w);
        stamp_[w] = t;
        region_.push_back(static_cast<NodeId>(w));
      }
    }
    tied_.clear();
    for (NodeId w : region_) {
      const std::uint8_t l = color(prev(w));
      const std::uint8_t r = color(next(w));
      flipping_[w] = l != value_[w] && r != value_[w];
      if (l != r) tied_.push_back(w);
    }
    return stats;
  }

  Coloring snapshot() const {
    Coloring c(n_);
    for (std::size_t v = 0; v < n_; ++v) {
      if (color(v)) c.set(v, Color::blue);
    }
    return c;
  }

  Coloring previous() const { throw Error(Errc::invalid_parameter, "sparse engine keeps no previous coloring"); }

 private:
  std::size_t prev(std::size_t v) const noexcept { return v == 0 ? n_ - 1 : v - 1; }
  std::size_t next(std::size_t v) const noexcept { return v + 1 == n_ ? 0 : v + 1; }
  std::uint8_t color(std::size_t v) const noexcept {
    return value_[v] ^ (flipping_[v] & static_cast<std::uint8_t>((now_ - stamp_[v]) & 1U));
  }

  std::size_t n_;
  const TieRng* rng_;
  std::vector<std::uint8_t> value_;
  std::vector<std::uint8_t> flipping_;
  std::vector<std::uint64_t> stamp_;
  std::vector<std::uint64_t> mark_;
  std::uint64_t epoch_ = 0;
  std::uint64_t now_ = 0;
  std::vector<NodeId> tied_;
  std::vector<NodeId> region_;
};

Coloring complement(const Coloring& c) {
  Coloring out(c.size(), Color::blue);
  for (std::size_t v = 0; v < c.size(); ++v) {
    if (c.is_blue(v)) out.set(v, Color::white);
  }
  return out;
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return a > std::numeric_limits<std::uint64_t>::max() - b ? std::numeric_limits<std::uint64_t>::max() : a + b;
}

template <class E>
RunResult drive(E& engine, std::size_t n, StopMode mode, std::uint64_t max_rounds, const RunOptions& options) {
  RunResult result;
  std::optional<Coloring> at_cap;

  auto record = [&](std::uint64_t t) {
    if (t > max_rounds) return;
    ++result.trace_len;
    if (options.record_blue_counts) result.blue_counts.push_back(engine.blue());
    if (options.on_state) options.on_state(t, engine.snapshot());
    if (t == max_rounds) at_cap = engine.snapshot();
  };
  auto finish = [&](std::uint64_t rounds, Outcome outcome) {
    result.rounds = rounds;
    result.outcome = outcome;
    result.final_coloring = engine.snapshot();
    return result;
  };
  auto cycle_absorbed = [&] { return engine.cycle_outcome(); };

  record(0);
  if (mode == StopMode::rmm_cycle) {
    if (auto outcome = cycle_absorbed()) {
      finish(0, *outcome);
      if (*outcome == Outcome::blinking) result.partner = complement(result.final_coloring);
      return result;
    }
  }

  const std::uint64_t lookahead = mode == StopMode::deterministic ? 2 : mode == StopMode::rmm_general ? 1 : 0;
  const std::uint64_t last_step = saturating_add(max_rounds, lookahead);
  for (std::uint64_t t = 1; t <= last_step; ++t) {
    const StepStats stats = engine.step(t);
    record(t);
    switch (mode) {
      case StopMode::deterministic:
        if (stats.changed == 0) {
          if (t - 1 > max_rounds) break;
          return finish(t - 1, Outcome::fixed_coloring);
        }
        if (stats.repeats_previous_changes && t - 2 <= max_rounds) {
          finish(t - 2, Outcome::period_two);
          result.partner = engine.previous();
          return result;
        }
        break;
      case StopMode::rmm_cycle:
        if (auto outcome = cycle_absorbed()) {
          finish(t, *outcome);
          if (*outcome == Outcome::blinking) result.partner = complement(result.final_coloring);
          return result;
        }
        break;
      case StopMode::rmm_general:
        if (stats.changed == 0 && stats.ties == 0) {
          const bool mono = engine.blue() == 0 || engine.blue() == n;
          const Outcome outcome = !mono ? Outcome::fixed_coloring
                                        : engine.blue() == n ? Outcome::blue : Outcome::white;
          return finish(t - 1, outcome);
        }
        break;
    }
    if (t == std::numeric_limits<std::uint64_t>::max()) break;
  }

  result.rounds.reset();
  result.outcome = mode == StopMode::rmm_general ? Outcome::undetermined : Outcome::cap_exceeded;
  result.final_coloring = at_cap ? *at_cap : engine.snapshot();
  return result;
}

RunResult run_with_rule(const Graph& g, const Coloring& c0, TieRule rule, const TieRng* rng, StopMode mode,
                        std::uint64_t max_rounds, const RunOptions& options) {
  require_sized(g, c0);
  const bool words_ok = g.is_canonical_cycle() && (rule != TieRule::random || rng->fair());
  const bool sparse_ok = g.is_canonical_cycle() && mode == StopMode::rmm_cycle;
  Engine choice = options.engine;
  if (choice == Engine::automatic) {
    const bool observed = options.record_blue_counts || static_cast<bool>(options.on_state);
    choice = sparse_ok && !observed ? Engine::cycle_sparse : words_ok ? Engine::cycle_words : Engine::frontier;
  }
  switch (choice) {
    case Engine::cycle_sparse: {
      if (!sparse_ok) throw Error(Errc::invalid_parameter, "sparse engine runs RMM on canonical cycles only");
      SparseCycleEngine engine(c0, rng);
      return drive(engine, g.n(), mode, max_rounds, options);
    }
    case Engine::cycle_words: {
      if (!words_ok) throw Error(Errc::invalid_parameter, "word engine needs a canonical cycle and a fair tie coin");
      CycleWordEngine engine(c0, rule, rng);
      return drive(engine, g.n(), mode, max_rounds, options);
    }
    default: {
      FrontierEngine engine(g, c0, rule, rng);
      return drive(engine, g.n(), mode, max_rounds, options);
    }
  }
}

}  // namespace

RunResult run(Model model, const Graph& g, const Coloring& c0, std::uint64_t max_rounds,
              const std::optional<TieRng>& rng, const RunOptions& options) {
  if (model == Model::mm) {
    return run_with_rule(g, c0, TieRule::keep, nullptr, StopMode::deterministic, max_rounds, options);
  }
  if (!rng) throw Error(Errc::invalid_parameter, "RMM runs need a tie RNG");
  const StopMode mode = g.is_canonical_cycle() ? StopMode::rmm_cycle : StopMode::rmm_general;
  return run_with_rule(g, c0, TieRule::random, &*rng, mode, max_rounds, options);
}

RunResult run_biased(const Graph& g, const Coloring& c0, Color tie_color, std::uint64_t max_rounds,
                     const RunOptions& options) {
  const TieRule rule = tie_color == Color::blue ? TieRule::blue : TieRule::white;
  return run_with_rule(g, c0, rule, nullptr, StopMode::deterministic, max_rounds, options);
}

Coloring lazy_rmm_pass(const Graph& cycle, const Coloring& c, const TieRng& rng, std::uint64_t round) {
  require_sized(cycle, c);
  if (!cycle.is_canonical_cycle()) throw Error(Errc::invalid_parameter, "lazy RMM runs on canonical cycles only");
  const auto paths = extended_alternating_paths(c);
  const std::uint64_t key = rng.round_key(round);
  Coloring buffer = c;
  for (const auto& path : paths) {
    for (NodeId v : path.nodes) {
      switch (majority_vote(cycle, c, v)) {
        case Vote::blue: buffer.set(v, Color::blue); break;
        case Vote::white: buffer.set(v, Color::white); break;
        case Vote::tie: buffer.set(v, rng.blue_with_key(key, v) ? Color::blue : Color::white); break;
      }
    }
  }
  return buffer;
}

}  // namespace majdyn
