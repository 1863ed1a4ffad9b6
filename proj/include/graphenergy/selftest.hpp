#ifndef GRAPHENERGY_SELFTEST_HPP_
#define GRAPHENERGY_SELFTEST_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "graphenergy/graph.hpp"
#include "graphenergy/quadrature.hpp"
#include "graphenergy/rng.hpp"
#include "graphenergy/semicircle.hpp"
#include "graphenergy/spectral.hpp"
#include "graphenergy/weights.hpp"

namespace graphenergy {

/// Every labeled simple graph on n vertices (2^(n(n-1)/2) of them); n <= 6.
inline std::vector<Graph> all_graphs(std::size_t n) {
  if (n == 0 || n > 6) throw std::invalid_argument("all_graphs: n must be in [1, 6]");
  std::vector<Edge> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.push_back({i, j});
  std::vector<Graph> out;
  const std::uint64_t count = std::uint64_t{1} << pairs.size();
  out.reserve(count);
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    std::vector<Edge> edges;
    for (std::size_t b = 0; b < pairs.size(); ++b)
      if (mask >> b & 1U) edges.push_back(pairs[b]);
    out.emplace_back(n, std::move(edges));
  }
  return out;
}

/// Symmetric matrix with independent uniform(-1, 1) entries on and below the diagonal.
inline SymmetricMatrix random_symmetric(std::size_t n, TrialRng& rng) {
  SymmetricMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) m.set(i, j, 2.0 * rng.uniform() - 1.0);
  return m;
}

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

namespace detail {

inline std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

inline CheckResult check_walk_moments() {
  CheckResult r{"walk_moment_equals_trace_moment", true, {}};
  double worst = 0.0;
  const WeightFunctionSpec unit(WeightId::unit);
  for (std::size_t n = 1; n <= 5; ++n) {
    for (const Graph& g : all_graphs(n)) {
      const Spectrum s = eigenvalues_symmetric(center_scale(build_weighted_adjacency(g, unit), 1.0, 0.5));
      for (unsigned k = 1; k <= 4; ++k) {
        worst = std::max(worst, std::abs(walk_moment(g, unit, 1.0, 0.5, k) - trace_moment(s, k)));
      }
    }
  }
  TrialRng rng(Seed{0x5e1f, 1});
  const WeightFunctionSpec randic(WeightId::randic);
  for (int c = 0; c < 10; ++c) {
    const std::size_t n = 3 + rng.next_u64() % 5;
    const Graph g = sample_gnp(n, 0.6, Seed{0x5e1f, static_cast<std::uint64_t>(100 + c)});
    const double fc = 0.4;
    const Spectrum s = eigenvalues_symmetric(center_scale(build_weighted_adjacency(g, randic), fc, 0.6));
    for (unsigned k = 1; k <= 5; ++k) {
      worst = std::max(worst, std::abs(walk_moment(g, randic, fc, 0.6, k) - trace_moment(s, k)));
    }
  }
  r.passed = worst <= 1e-9;
  r.detail = "max |walk - trace| = " + sci(worst);
  return r;
}

inline CheckResult check_ky_fan() {
  CheckResult r{"ky_fan_inequality", true, {}};
  TrialRng rng(Seed{0x4bfa, 0});
  int held = 0;
  constexpr int kPairs = 20;
  for (int c = 0; c < kPairs; ++c) {
    const auto x = random_symmetric(30, rng);
    const auto y = random_symmetric(30, rng);
    if (ky_fan_check(x, y).holds) ++held;
  }
  const auto x = random_symmetric(30, rng);
  const bool opposite = ky_fan_check(x, -x).holds;
  const bool zero = ky_fan_check(SymmetricMatrix(30), SymmetricMatrix(30)).holds;
  r.passed = held == kPairs && opposite && zero;
  r.detail = std::to_string(held) + "/" + std::to_string(kPairs) + " random pairs";
  return r;
}

inline CheckResult check_semicircle_quadrature() {
  CheckResult r{"semicircle_quadrature", true, {}};
  double worst = 0.0;
  for (double sigma : {0.1, 0.3, 0.5, 1.0}) {
    const SemicircleLaw law(sigma);
    const double R = law.radius();
    auto phi = [&](double x) { return density(law, x); };
    worst = std::max(worst, std::abs(adaptive_simpson(phi, -R, R) - 1.0));
    worst = std::max(worst, std::abs(adaptive_simpson([&](double x) { return std::abs(x) * phi(x); }, -R, R) -
                                     abs_first_moment(law)));
    for (double t : {-0.9, -0.4, 0.0, 0.3, 0.75}) {
      worst = std::max(worst, std::abs(adaptive_simpson(phi, -R, t * R) - cdf(law, t * R)));
    }
  }
  const SemicircleLaw unit(1.0);
  for (unsigned k = 0; k <= 5; ++k) {
    const double q = adaptive_simpson([&](double x) { return std::pow(x, 2.0 * k) * density(unit, x); }, -2.0, 2.0);
    worst = std::max(worst, std::abs(q - even_moment(unit, k)) / even_moment(unit, k));
  }
  r.passed = worst <= 1e-8;
  r.detail = "max deviation = " + sci(worst);
  return r;
}

inline CheckResult check_complete_graph_spectrum() {
  CheckResult r{"complete_graph_spectrum", true, {}};
  double worst = 0.0;
  for (std::size_t n : {3u, 10u, 50u}) {
    const Spectrum s = eigenvalues_symmetric(build_weighted_adjacency(make_named(NamedGraph::complete, n),
                                                                      WeightFunctionSpec(WeightId::unit)));
    for (std::size_t i = 0; i + 1 < n; ++i) worst = std::max(worst, std::abs(s[i] + 1.0));
    worst = std::max(worst, std::abs(s.max() - static_cast<double>(n - 1)));
  }
  r.passed = worst <= 1e-9;
  r.detail = "max eigenvalue error = " + sci(worst);
  return r;
}

}  // namespace detail

/// Oracle checks run by `graphenergy selftest`.
inline std::vector<CheckResult> run_selftest() {
  return {detail::check_walk_moments(), detail::check_ky_fan(), detail::check_semicircle_quadrature(),
          detail::check_complete_graph_spectrum()};
}

}  // namespace graphenergy

#endif  // GRAPHENERGY_SELFTEST_HPP_
