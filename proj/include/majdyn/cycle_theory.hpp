#pragma once

#include <cstddef>
#include <cstdint>

#include <boost/multiprecision/cpp_int.hpp>

#include "majdyn/coloring.hpp"
#include "majdyn/graph.hpp"

namespace majdyn {

using BigInt = boost::multiprecision::cpp_int;

/// ceil(l/2) for the longest alternating run l of a cycle coloring.
/// Throws Errc::undefined_partition on an alternating coloring.
std::uint64_t predicted_mm_stabilization(const Coloring& c);

/// Number of MM-stable colorings of C_n (no solitary node), by a run-length
/// count over compositions. n >= 3.
BigInt stable_count_exact(std::size_t n);

/// p(n) = p(n-1) + p(n-4) + p(n-5) + ... + p(1) + 2 with p(1..4) = 1, 1, 2, 4:
/// red/green strings of length n with no two adjacent reds and an even number
/// of reds.
BigInt stable_count_path_recursion(std::size_t n);

struct DensityPrediction {
  double p = 0.0;
  double p_f = 0.0;
};

/// (2p^2 - p^3) / (1 - p + p^2). The expression satisfies
/// f(1-p) = 1 - f(p), so it serves both sides of 1/2.
DensityPrediction predicted_final_density(double p);

/// Finite-n series for the final blue probability of a node: monochromatic
/// term, odd alternating paths, even alternating paths (lengths <= n-4).
double eq1_series(double p, std::size_t n);

struct CycleWinningSize {
  std::size_t size = 0;
  /// MM: {v_i : i odd} plus v_0. RMM: every node.
  NodeSet witness;
};

CycleWinningSize min_winning_size_cycle(std::size_t n, Model model);

struct AbsorptionProbabilities {
  double blue = 0.0;
  double white = 0.0;
  double blinking = 0.0;
};

/// RMM on C_n from b0 blue nodes, p = b0/n. Odd n: (p, 1-p, 0). Even n:
/// (p^2, (1-p)^2, 2p(1-p)), which treats both parity classes as having
/// density p.
AbsorptionProbabilities absorption_probabilities(std::size_t n, std::size_t b0);

/// Exact version for a concrete coloring. On even n the blue count of each
/// parity class is a martingale, so P(blue) = p_even * p_odd with per-class
/// densities.
AbsorptionProbabilities absorption_probabilities(const Coloring& c0);

/// k_alternating_coloring(n, k') with l = n - 4 and k' the odd integer
/// closest to l/2. n odd, n >= 13.
Coloring rmm_quadratic_witness(std::size_t n);
std::size_t rmm_quadratic_witness_k(std::size_t n);

/// 2 ((k'-5)/2) ((l-5)/2 - (k'-5)/2).
double rmm_quadratic_lower_bound(std::size_t n);

}  // namespace majdyn
