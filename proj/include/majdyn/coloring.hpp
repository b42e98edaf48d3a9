#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "majdyn/graph.hpp"

namespace majdyn {

enum class Color : std::uint8_t { white = 0, blue = 1 };

constexpr Color opposite(Color c) noexcept { return c == Color::blue ? Color::white : Color::blue; }

enum class Model { mm, rmm };

const char* to_string(Model model) noexcept;

/// Blue/white assignment stored as a packed bit vector (1 = blue). Padding
/// bits past n are always zero and the blue count is cached.
class Coloring {
 public:
  Coloring() = default;
  explicit Coloring(std::size_t n, Color fill = Color::white);

  static Coloring from_words(std::size_t n, std::vector<std::uint64_t> words);
  /// Node v blue iff bit v of index is set (node 0 = least significant bit).
  static Coloring from_index(std::size_t n, std::uint64_t index);
  /// Accepts 'b'/'B' and 'w'/'W'.
  static Coloring parse(std::string_view bw);

  std::size_t size() const noexcept { return n_; }
  std::size_t blue_count() const noexcept { return blue_; }
  std::size_t white_count() const noexcept { return n_ - blue_; }

  Color operator[](std::size_t v) const noexcept {
    return static_cast<Color>((words_[v >> 6] >> (v & 63)) & 1U);
  }
  bool is_blue(std::size_t v) const noexcept { return (words_[v >> 6] >> (v & 63)) & 1U; }
  void set(std::size_t v, Color c) noexcept;
  void flip(std::size_t v) noexcept { set(v, opposite((*this)[v])); }

  bool is_monochromatic() const noexcept { return blue_ == 0 || blue_ == n_; }

  std::span<const std::uint64_t> words() const noexcept { return words_; }
  std::uint64_t to_index() const;
  std::string to_string() const;

  friend bool operator==(const Coloring& a, const Coloring& b) noexcept {
    return a.n_ == b.n_ && a.words_ == b.words_;
  }

 private:
  std::size_t n_ = 0;
  std::size_t blue_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Pointwise order with blue = 1.
bool dominated_by(const Coloring& lower, const Coloring& upper);

/// Neighborhood vote at v: the strict majority color, or nullopt-like tie.
enum class Vote { white, blue, tie };
Vote majority_vote(const Graph& g, const Coloring& c, NodeId v) noexcept;

// ---- samplers and structured colorings --------------------------------------

Coloring p_random_coloring(std::size_t n, double p, std::uint64_t seed);
Coloring exact_density_coloring(std::size_t n, std::size_t blue, std::uint64_t seed);

/// Even cycles only: the alternating coloring whose node 0 has the given color.
Coloring alternating_coloring(std::size_t n, Color node0);

/// White run of length 2 (n odd) or 3 (n even) at 0.., the rest one maximal
/// alternating path that starts and ends blue.
Coloring extreme_tight_coloring(std::size_t n);

/// Blue run of length n-k at 0..n-k-1, then an alternating run of odd length
/// k starting and ending white. Requires 5 <= k <= n-4.
Coloring k_alternating_coloring(std::size_t n, std::size_t k);

// ---- cycle structure ---------------------------------------------------------

struct MonoRun {
  std::size_t start;
  std::size_t length;
  Color color;
  friend bool operator==(const MonoRun&, const MonoRun&) = default;
};

struct AltRun {
  std::size_t start;
  std::size_t length;
  friend bool operator==(const AltRun&, const AltRun&) = default;
};

/// Decomposition of a cycle coloring into maximal monochromatic runs of
/// length >= 2 and the maximal alternating runs between them.
struct PathPartition {
  std::size_t n = 0;
  std::vector<MonoRun> mono_runs;  // sorted by start; a wrapping run starts at its first node
  std::vector<AltRun> alt_runs;    // non-empty alternating runs only, sorted by start

  /// One entry per gap between cyclically consecutive mono runs, including
  /// zero-length gaps where two opposite-colored runs touch. Entry i is the
  /// gap following mono_runs[i].
  std::vector<AltRun> gaps() const;
};

/// Returned instead of a partition for the two alternating colorings of an
/// even cycle, where no monochromatic run exists.
struct AlternatingFlag {};

using PartitionResult = std::variant<PathPartition, AlternatingFlag>;

PartitionResult path_partition(const Coloring& c);

/// Throws Errc::undefined_partition on an alternating coloring.
PathPartition require_partition(const Coloring& c);

std::size_t longest_alternating_run(const Coloring& c);

/// An extended alternating path: a gap plus the mono-run node on each side.
/// Nodes are listed in cyclic order.
struct ExtendedPath {
  std::vector<NodeId> nodes;
};

/// The extended alternating paths of a cycle coloring (empty when
/// monochromatic). Throws Errc::undefined_partition on alternating input.
std::vector<ExtendedPath> extended_alternating_paths(const Coloring& c);

/// Nodes whose two cycle neighbors both carry the opposite color.
NodeSet solitary_nodes(const Coloring& c);

bool is_stable(const Graph& g, const Coloring& c, Model model);

}  // namespace majdyn
