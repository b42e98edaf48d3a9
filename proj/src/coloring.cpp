#include "majdyn/coloring.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "majdyn/error.hpp"
#include "majdyn/rng.hpp"

namespace majdyn {

const char* to_string(Model model) noexcept { return model == Model::mm ? "mm" : "rmm"; }

namespace {

std::size_t word_count(std::size_t n) { return (n + 63) / 64; }

std::uint64_t tail_mask(std::size_t n) {
  const std::size_t rem = n % 64;
  return rem == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << rem) - 1;
}

}  // namespace

Coloring::Coloring(std::size_t n, Color fill) : n_(n), words_(word_count(n), 0) {
  if (fill == Color::blue && n > 0) {
    std::fill(words_.begin(), words_.end(), ~std::uint64_t{0});
    words_.back() &= tail_mask(n);
    blue_ = n;
  }
}

Coloring Coloring::from_words(std::size_t n, std::vector<std::uint64_t> words) {
  if (words.size() != word_count(n)) {
    throw Error(Errc::invalid_parameter, "word count does not match coloring size");
  }
  if (n > 0 && (words.back() & ~tail_mask(n)) != 0) {
    throw Error(Errc::invalid_parameter, "padding bits past n must be zero");
  }
  Coloring c;
  c.n_ = n;
  c.words_ = std::move(words);
  for (auto w : c.words_) c.blue_ += static_cast<std::size_t>(std::popcount(w));
  return c;
}

Coloring Coloring::from_index(std::size_t n, std::uint64_t index) {
  if (n > 64) throw Error(Errc::size_cap, "state index colorings need n <= 64");
  if (n < 64 && (index >> n) != 0) throw Error(Errc::invalid_parameter, "state index out of range");
  std::vector<std::uint64_t> words(word_count(n), 0);
  if (n > 0) words[0] = index;
  return from_words(n, std::move(words));
}

Coloring Coloring::parse(std::string_view bw) {
  Coloring c(bw.size());
  for (std::size_t v = 0; v < bw.size(); ++v) {
    switch (bw[v]) {
      case 'b': case 'B': c.set(v, Color::blue); break;
      case 'w': case 'W': break;
      default:
        throw Error(Errc::parse, std::string("coloring strings use only 'b'/'w', got '") + bw[v] + "'");
    }
  }
  return c;
}

void Coloring::set(std::size_t v, Color c) noexcept {
  const std::uint64_t bit = std::uint64_t{1} << (v & 63);
  std::uint64_t& w = words_[v >> 6];
  const bool was = (w & bit) != 0;
  const bool now = c == Color::blue;
  if (was == now) return;
  w ^= bit;
  if (now) ++blue_; else --blue_;
}

std::uint64_t Coloring::to_index() const {
  if (n_ > 64) throw Error(Errc::size_cap, "state index needs n <= 64");
  return n_ == 0 ? 0 : words_[0];
}

std::string Coloring::to_string() const {
  std::string out(n_, 'w');
  for (std::size_t v = 0; v < n_; ++v) {
    if (is_blue(v)) out[v] = 'b';
  }
  return out;
}

bool dominated_by(const Coloring& lower, const Coloring& upper) {
  if (lower.size() != upper.size()) throw Error(Errc::invalid_parameter, "coloring sizes differ");
  const auto a = lower.words();
  const auto b = upper.words();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if ((a[i] & ~b[i]) != 0) return false;
  }
  return true;
}

Vote majority_vote(const Graph& g, const Coloring& c, NodeId v) noexcept {
  std::size_t blue = 0;
  const auto nb = g.neighbors(v);
  for (NodeId u : nb) blue += c.is_blue(u);
  const std::size_t white = nb.size() - blue;
  if (blue > white) return Vote::blue;
  if (white > blue) return Vote::white;
  return Vote::tie;
}

// ---- samplers and structured colorings --------------------------------------

Coloring p_random_coloring(std::size_t n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(Errc::invalid_parameter, "p must lie in [0,1]");
  Sampler rng(seed);
  Coloring c(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (rng.unit() < p) c.set(v, Color::blue);
  }
  return c;
}

Coloring exact_density_coloring(std::size_t n, std::size_t blue, std::uint64_t seed) {
  if (blue > n) throw Error(Errc::invalid_parameter, "blue count exceeds n");
  Sampler rng(seed);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Coloring c(n);
  for (std::size_t i = 0; i < blue; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(order[i], order[j]);
    c.set(order[i], Color::blue);
  }
  return c;
}

Coloring alternating_coloring(std::size_t n, Color node0) {
  if (n < 4 || n % 2 != 0) throw Error(Errc::invalid_size, "alternating colorings exist on even cycles only");
  Coloring c(n);
  for (std::size_t v = 0; v < n; ++v) {
    if ((v % 2 == 0) == (node0 == Color::blue)) c.set(v, Color::blue);
  }
  return c;
}

Coloring extreme_tight_coloring(std::size_t n) {
  if (n < 5) throw Error(Errc::invalid_size, "extreme coloring needs n >= 5");
  const std::size_t white_run = n % 2 == 1 ? 2 : 3;
  Coloring c(n);
  for (std::size_t v = white_run; v < n; ++v) {
    if ((v - white_run) % 2 == 0) c.set(v, Color::blue);
  }
  return c;
}

Coloring k_alternating_coloring(std::size_t n, std::size_t k) {
  if (k % 2 == 0 || k < 5 || k + 4 > n) {
    throw Error(Errc::invalid_parameter, "k-alternating coloring needs odd k with 5 <= k <= n-4");
  }
  Coloring c(n, Color::blue);
  for (std::size_t i = 0; i < k; ++i) {
    if (i % 2 == 0) c.set(n - k + i, Color::white);
  }
  return c;
}

// ---- cycle structure ---------------------------------------------------------

namespace {

// 0/1 for the color of a node on a mono run, 2 for a node on an alternating run.
std::vector<std::uint8_t> segment_keys(const Coloring& c) {
  const std::size_t n = c.size();
  std::vector<std::uint8_t> key(n);
  for (std::size_t v = 0; v < n; ++v) {
    const bool here = c.is_blue(v);
    const bool mono = c.is_blue((v + n - 1) % n) == here || c.is_blue((v + 1) % n) == here;
    key[v] = mono ? static_cast<std::uint8_t>(here) : std::uint8_t{2};
  }
  return key;
}

}  // namespace

std::vector<AltRun> PathPartition::gaps() const {
  std::vector<AltRun> out;
  if (mono_runs.size() == 1 && mono_runs[0].length == n) return out;
  out.reserve(mono_runs.size());
  for (std::size_t i = 0; i < mono_runs.size(); ++i) {
    const auto& run = mono_runs[i];
    const auto& next = mono_runs[(i + 1) % mono_runs.size()];
    const std::size_t gap_start = (run.start + run.length) % n;
    const std::size_t gap_len = (next.start + n - gap_start) % n;
    out.push_back({gap_start, gap_len});
  }
  return out;
}

PartitionResult path_partition(const Coloring& c) {
  const std::size_t n = c.size();
  if (n < 3) throw Error(Errc::invalid_size, "path partition needs a cycle with n >= 3");
  const auto key = segment_keys(c);

  std::size_t first_boundary = n;
  for (std::size_t v = 0; v < n; ++v) {
    if (key[v] != key[(v + n - 1) % n]) {
      first_boundary = v;
      break;
    }
  }

  PathPartition part;
  part.n = n;
  if (first_boundary == n) {
    if (key[0] == 2) return AlternatingFlag{};
    part.mono_runs.push_back({0, n, static_cast<Color>(key[0])});
    return part;
  }

  std::size_t pos = first_boundary;
  std::size_t walked = 0;
  while (walked < n) {
    const std::size_t start = pos;
    const std::uint8_t k = key[start];
    std::size_t len = 0;
    do {
      ++len;
      pos = (pos + 1) % n;
    } while (walked + len < n && key[pos] == k);
    walked += len;
    if (k == 2) part.alt_runs.push_back({start, len});
    else part.mono_runs.push_back({start, len, static_cast<Color>(k)});
  }
  auto by_start = [](const auto& a, const auto& b) { return a.start < b.start; };
  std::sort(part.mono_runs.begin(), part.mono_runs.end(), by_start);
  std::sort(part.alt_runs.begin(), part.alt_runs.end(), by_start);
  return part;
}

PathPartition require_partition(const Coloring& c) {
  auto result = path_partition(c);
  if (std::holds_alternative<AlternatingFlag>(result)) {
    throw Error(Errc::undefined_partition, "path partition is undefined for an alternating coloring");
  }
  return std::get<PathPartition>(std::move(result));
}

std::size_t longest_alternating_run(const Coloring& c) {
  const auto part = require_partition(c);
  std::size_t best = 0;
  for (const auto& run : part.alt_runs) best = std::max(best, run.length);
  return best;
}

std::vector<ExtendedPath> extended_alternating_paths(const Coloring& c) {
  const auto part = require_partition(c);
  const std::size_t n = part.n;
  std::vector<ExtendedPath> out;
  for (const auto& gap : part.gaps()) {
    ExtendedPath path;
    path.nodes.reserve(gap.length + 2);
    for (std::size_t i = 0; i < gap.length + 2; ++i) {
      path.nodes.push_back(static_cast<NodeId>((gap.start + n - 1 + i) % n));
    }
    out.push_back(std::move(path));
  }
  return out;
}

NodeSet solitary_nodes(const Coloring& c) {
  const std::size_t n = c.size();
  if (n < 3) throw Error(Errc::invalid_size, "solitary nodes are defined on cycles with n >= 3");
  NodeSet out(n);
  for (std::size_t v = 0; v < n; ++v) {
    const bool here = c.is_blue(v);
    if (c.is_blue((v + n - 1) % n) != here && c.is_blue((v + 1) % n) != here) {
      out.insert(static_cast<NodeId>(v));
    }
  }
  return out;
}

bool is_stable(const Graph& g, const Coloring& c, Model model) {
  if (g.n() != c.size()) throw Error(Errc::invalid_parameter, "coloring size does not match graph");
  for (NodeId v = 0; v < g.n(); ++v) {
    const Vote vote = majority_vote(g, c, v);
    if (vote == Vote::tie) {
      if (model == Model::rmm) return false;
      continue;
    }
    if ((vote == Vote::blue) != c.is_blue(v)) return false;
  }
  return true;
}

}  // namespace majdyn
