#ifndef GRAPHENERGY_WEIGHTS_HPP_
#define GRAPHENERGY_WEIGHTS_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "graphenergy/graph.hpp"
#include "graphenergy/symmetric_matrix.hpp"

namespace graphenergy {

/// Degree-based edge weights of the chemical-index catalog.
enum class WeightId {
  unit,
  zagreb_m1,
  zagreb_m2,
  randic,
  general_randic,
  abc,
  azi,
  ag1,
  harmonic,
  sci,
  mzagreb1,
  mzagreb1_star,
  mzagreb2,
  lanzhou,
};

inline constexpr std::array<WeightId, 14> kAllWeightIds = {
    WeightId::unit,     WeightId::zagreb_m1, WeightId::zagreb_m2, WeightId::randic,
    WeightId::general_randic, WeightId::abc, WeightId::azi,      WeightId::ag1,
    WeightId::harmonic, WeightId::sci,       WeightId::mzagreb1, WeightId::mzagreb1_star,
    WeightId::mzagreb2, WeightId::lanzhou,
};

inline constexpr std::string_view to_string(WeightId id) noexcept {
  switch (id) {
    case WeightId::unit: return "unit";
    case WeightId::zagreb_m1: return "zagreb_m1";
    case WeightId::zagreb_m2: return "zagreb_m2";
    case WeightId::randic: return "randic";
    case WeightId::general_randic: return "general_randic";
    case WeightId::abc: return "abc";
    case WeightId::azi: return "azi";
    case WeightId::ag1: return "ag1";
    case WeightId::harmonic: return "harmonic";
    case WeightId::sci: return "sci";
    case WeightId::mzagreb1: return "mzagreb1";
    case WeightId::mzagreb1_star: return "mzagreb1_star";
    case WeightId::mzagreb2: return "mzagreb2";
    case WeightId::lanzhou: return "lanzhou";
  }
  return "?";
}

inline std::optional<WeightId> parse_weight_id(std::string_view name) noexcept {
  for (WeightId id : kAllWeightIds)
    if (to_string(id) == name) return id;
  return std::nullopt;
}

/// Raised when a weight formula is undefined (zero denominators, log of zero)
/// or when f(np,np) vanishes.
class WeightDomainError : public std::domain_error {
 public:
  explicit WeightDomainError(const std::string& what) : std::domain_error(what) {}
  WeightDomainError(const std::string& what, Edge edge)
      : std::domain_error(what), edge_(edge) {}

  const std::optional<Edge>& edge() const noexcept { return edge_; }

 private:
  std::optional<Edge> edge_;
};

/// Constants (C, m) with |f(d,d)| <= C n^m and 1/|f(d,d)| <= C n^m for
/// d = ceil(np) >= 2 and d <= n - 2.
struct GrowthBound {
  double c = 1.0;
  double m = 1.0;
};

/// Admissible range for the general Randic exponent.
inline constexpr double kAlphaMin = -3.0;
inline constexpr double kAlphaMax = 3.0;

/// A catalog entry. Only general_randic carries a parameter.
class WeightFunctionSpec {
 public:
  explicit WeightFunctionSpec(WeightId id, double alpha = 0.0) : id_(id), alpha_(alpha) {
    if (id_ == WeightId::general_randic) {
      if (!std::isfinite(alpha_) || alpha_ < kAlphaMin || alpha_ > kAlphaMax) {
        throw std::invalid_argument("general_randic: alpha must be finite and within [" +
                                    std::to_string(kAlphaMin) + ", " + std::to_string(kAlphaMax) + "]");
      }
    } else {
      alpha_ = 0.0;
    }
  }

  WeightId id() const noexcept { return id_; }
  std::string_view name() const noexcept { return to_string(id_); }
  double alpha() const noexcept { return alpha_; }
  bool has_alpha() const noexcept { return id_ == WeightId::general_randic; }
  bool needs_n() const noexcept { return id_ == WeightId::lanzhou; }

  /// f(x, y) at real arguments; n is only read by lanzhou. Returns NaN or
  /// +-inf where the formula is undefined.
  double evaluate(double x, double y, double n) const noexcept {
    switch (id_) {
      case WeightId::unit: return 1.0;
      case WeightId::zagreb_m1: return x + y;
      case WeightId::zagreb_m2: return x * y;
      case WeightId::randic: return 1.0 / std::sqrt(x * y);
      case WeightId::general_randic: return std::pow(x * y, alpha_);
      case WeightId::abc: return std::sqrt(x + y - 2.0) / std::sqrt(x * y);
      case WeightId::azi: {
        const double r = (x * y) / (x + y - 2.0);
        return r * r * r;
      }
      case WeightId::ag1: return 2.0 * std::sqrt(x * y) / (x + y);
      case WeightId::harmonic: return 2.0 / (x + y);
      case WeightId::sci: return 1.0 / std::sqrt(x + y);
      case WeightId::mzagreb1: return std::log(x) / x + std::log(y) / y;
      case WeightId::mzagreb1_star: return std::log(x + y);
      case WeightId::mzagreb2: return std::log(x) + std::log(y);
      case WeightId::lanzhou: return (n - 1.0) * (x + y) - (x * x + y * y);
    }
    return std::nan("");
  }

  GrowthBound growth_bound() const noexcept {
    switch (id_) {
      case WeightId::zagreb_m1:
      case WeightId::sci:
      case WeightId::mzagreb1_star:
      case WeightId::mzagreb2: return {2.0, 1.0};
      case WeightId::zagreb_m2:
      case WeightId::lanzhou: return {1.0, 2.0};
      case WeightId::azi: return {1.0, 3.0};
      case WeightId::general_randic: return {1.0, std::max(1.0, 2.0 * std::abs(alpha_))};
      default: return {1.0, 1.0};
    }
  }

  friend bool operator==(const WeightFunctionSpec&, const WeightFunctionSpec&) = default;

 private:
  WeightId id_;
  double alpha_;
};

/// "general_randic(0.5)" for parameterized entries, the plain identifier otherwise.
inline std::string describe(const WeightFunctionSpec& spec) {
  std::string s(spec.name());
  if (spec.has_alpha()) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "(%g)", spec.alpha());
    s += buf;
  }
  return s;
}

/// f(d_i, d_j) for an edge; n is the graph order (used by lanzhou).
inline double eval_weight(const WeightFunctionSpec& spec, std::size_t d_i, std::size_t d_j, std::size_t n) {
  if (d_i == 0 || d_j == 0) {
    throw WeightDomainError(describe(spec) + ": degree must be at least 1");
  }
  if (spec.id() == WeightId::azi && d_i + d_j == 2) {
    throw WeightDomainError("azi: undefined for d_i + d_j = 2");
  }
  const double v = spec.evaluate(static_cast<double>(d_i), static_cast<double>(d_j), static_cast<double>(n));
  if (!std::isfinite(v)) {
    throw WeightDomainError(describe(spec) + ": undefined at degrees (" + std::to_string(d_i) + "," +
                            std::to_string(d_j) + ")");
  }
  return v;
}

/// f(np, np), the normalizer of the weighted model.
inline double center_value(const WeightFunctionSpec& spec, std::size_t n, double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("center_value: p must lie in (0,1)");
  const double nd = static_cast<double>(n);
  const double x = nd * p;
  const double v = spec.evaluate(x, x, nd);
  if (!std::isfinite(v) || v == 0.0) {
    throw WeightDomainError(describe(spec) + ": f(np,np) is zero or undefined at n=" + std::to_string(n) +
                            ", p=" + std::to_string(p));
  }
  return v;
}

/// A(G(f)): f(d_i, d_j) on edges, zero elsewhere.
inline SymmetricMatrix build_weighted_adjacency(const Graph& g, const WeightFunctionSpec& spec) {
  SymmetricMatrix a(g.order());
  const auto& deg = g.degrees();
  for (const auto& e : g.edges()) {
    double w = 0.0;
    try {
      w = eval_weight(spec, deg[e.first], deg[e.second], g.order());
    } catch (const WeightDomainError& err) {
      throw WeightDomainError(std::string(err.what()) + " on edge " + std::to_string(e.first) + "-" +
                                  std::to_string(e.second) + " (degrees " + std::to_string(deg[e.first]) +
                                  "," + std::to_string(deg[e.second]) + ")",
                              e);
    }
    a.set(e.first, e.second, w);
  }
  return a;
}

/// A / fc - p (J - I). The diagonal is divided by fc only.
inline SymmetricMatrix center_scale(const SymmetricMatrix& a, double fc, double p) {
  if (fc == 0.0 || !std::isfinite(fc)) throw std::invalid_argument("center_scale: fc must be finite and nonzero");
  const std::size_t n = a.order();
  SymmetricMatrix out(n);
  const double inv = 1.0 / fc;
  for (std::size_t i = 0; i < n; ++i) {
    out.set(i, i, a(i, i) * inv);
    for (std::size_t j = 0; j < i; ++j) out.set(i, j, a(i, j) * inv - p);
  }
  return out;
}

/// Inverse of center_scale: (X + p (J - I)) * fc.
inline SymmetricMatrix uncenter_scale(const SymmetricMatrix& centered, double fc, double p) {
  const std::size_t n = centered.order();
  SymmetricMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.set(i, i, centered(i, i) * fc);
    for (std::size_t j = 0; j < i; ++j) out.set(i, j, (centered(i, j) + p) * fc);
  }
  return out;
}

}  // namespace graphenergy

#endif  // GRAPHENERGY_WEIGHTS_HPP_
