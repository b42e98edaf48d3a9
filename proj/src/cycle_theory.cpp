#include "majdyn/cycle_theory.hpp"

#include <bit>
#include <cmath>
#include <vector>

#include "majdyn/error.hpp"

namespace majdyn {

std::uint64_t predicted_mm_stabilization(const Coloring& c) {
  const std::size_t l = longest_alternating_run(c);
  return (l + 1) / 2;
}

BigInt stable_count_exact(std::size_t n) {
  if (n < 3) throw Error(Errc::invalid_size, "stable_count_exact needs n >= 3");
  // odd_parts[m]: compositions of m into an odd number of parts, each >= 2.
  std::vector<BigInt> even_parts(n + 1, 0);
  std::vector<BigInt> odd_parts(n + 1, 0);
  even_parts[0] = 1;
  for (std::size_t m = 2; m <= n; ++m) {
    for (std::size_t part = 2; part <= m; ++part) {
      even_parts[m] += odd_parts[m - part];
      odd_parts[m] += even_parts[m - part];
    }
  }
  // Two monochromatic colorings; otherwise node 0 lies in a run of length
  // l1 at one of l1 offsets, of either color, followed by an odd number of
  // further runs.
  BigInt total = 2;
  for (std::size_t l1 = 2; l1 + 2 <= n; ++l1) total += 2 * BigInt(l1) * odd_parts[n - l1];
  return total;
}

BigInt stable_count_path_recursion(std::size_t n) {
  if (n < 1) throw Error(Errc::invalid_size, "stable_count_path_recursion needs n >= 1");
  std::vector<BigInt> p(std::max<std::size_t>(n, 4) + 1, 0);
  for (std::size_t len = 1; len <= 4; ++len) {
    std::uint64_t count = 0;
    for (std::uint32_t reds = 0; reds < (1U << len); ++reds) {
      if ((reds & (reds >> 1)) == 0 && std::popcount(reds) % 2 == 0) ++count;
    }
    p[len] = count;
  }
  for (std::size_t m = 5; m <= n; ++m) {
    BigInt value = p[m - 1] + 2;
    for (std::size_t j = 1; j + 4 <= m; ++j) value += p[j];
    p[m] = value;
  }
  return p[n];
}

DensityPrediction predicted_final_density(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(Errc::invalid_parameter, "p must lie in [0,1]");
  return {p, (2 * p * p - p * p * p) / (1 - p + p * p)};
}

double eq1_series(double p, std::size_t n) {
  if (!(p > 0.0 && p < 1.0)) throw Error(Errc::invalid_parameter, "eq1_series needs 0 < p < 1");
  if (n < 9) throw Error(Errc::invalid_size, "eq1_series needs n >= 9");
  const double q = 1.0 - p;
  double odd = 0.0;
  double even = 0.0;
  for (std::size_t k = 1; k + 4 <= n; ++k) {
    const double kk = static_cast<double>(k);
    if (k % 2 == 1) {
      odd += kk * std::pow(p, static_cast<double>(k / 2)) * std::pow(q, static_cast<double>((k + 1) / 2));
    } else {
      even += kk * std::pow(p * q, static_cast<double>(k / 2));
    }
  }
  return (2 * p * p - p * p * p) + std::pow(p, 4) * odd + p * p * q * q * even;
}

CycleWinningSize min_winning_size_cycle(std::size_t n, Model model) {
  if (n < 3) throw Error(Errc::invalid_size, "cycle winning sets need n >= 3");
  CycleWinningSize out;
  if (model == Model::rmm) {
    out.size = n;
    out.witness = NodeSet::all(n);
    return out;
  }
  out.size = n / 2 + 1;
  out.witness = NodeSet(n);
  out.witness.insert(0);
  for (NodeId v = 1; v < n; v += 2) out.witness.insert(v);
  return out;
}

AbsorptionProbabilities absorption_probabilities(std::size_t n, std::size_t b0) {
  if (n < 3) throw Error(Errc::invalid_size, "absorption probabilities need n >= 3");
  if (b0 > n) throw Error(Errc::invalid_parameter, "b0 exceeds n");
  const double p = static_cast<double>(b0) / static_cast<double>(n);
  if (n % 2 == 1) return {p, 1 - p, 0.0};
  return {p * p, (1 - p) * (1 - p), 2 * p * (1 - p)};
}

AbsorptionProbabilities absorption_probabilities(const Coloring& c0) {
  const std::size_t n = c0.size();
  if (n % 2 == 1) return absorption_probabilities(n, c0.blue_count());
  if (n < 4) throw Error(Errc::invalid_size, "absorption probabilities need n >= 3");
  std::size_t even_blue = 0;
  for (std::size_t v = 0; v < n; v += 2) even_blue += c0.is_blue(v);
  const double half = static_cast<double>(n / 2);
  const double pe = static_cast<double>(even_blue) / half;
  const double po = static_cast<double>(c0.blue_count() - even_blue) / half;
  const double blue = pe * po;
  const double white = (1 - pe) * (1 - po);
  return {blue, white, 1 - blue - white};
}

std::size_t rmm_quadratic_witness_k(std::size_t n) {
  if (n < 13 || n % 2 == 0) throw Error(Errc::invalid_parameter, "quadratic witness needs odd n >= 13");
  const std::size_t l = n - 4;
  const std::size_t m = (l - 1) / 2;  // l/2 = m + 1/2
  return m % 2 == 1 ? m : m + 1;
}

Coloring rmm_quadratic_witness(std::size_t n) {
  return k_alternating_coloring(n, rmm_quadratic_witness_k(n));
}

double rmm_quadratic_lower_bound(std::size_t n) {
  const std::size_t k = rmm_quadratic_witness_k(n);
  const double a = static_cast<double>(k - 5) / 2.0;
  const double b = static_cast<double>(n - 4 - 5) / 2.0;
  return 2.0 * a * (b - a);
}

}  // namespace majdyn
