#ifndef GRAPHENERGY_PREDICT_HPP_
#define GRAPHENERGY_PREDICT_HPP_

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string_view>

#include "graphenergy/semicircle.hpp"
#include "graphenergy/weights.hpp"

namespace graphenergy {

enum class PredictionSource {
  /// f(np,np) * (8 / 3 pi) sqrt(p(1-p)) n^(3/2) with the exact center value.
  theorem3_general,
  /// The per-index closed form with f(np,np) replaced by its leading term.
  corollary_closed_form,
};

inline constexpr std::string_view to_string(PredictionSource s) noexcept {
  return s == PredictionSource::theorem3_general ? "theorem3_general" : "corollary_closed_form";
}

struct Prediction {
  WeightFunctionSpec spec{WeightId::unit};
  std::size_t n = 0;
  double p = 0.0;
  double predicted_energy = 0.0;
  /// Power of n in the leading term; `log_factor` marks an extra ln n.
  double leading_exponent = 0.0;
  bool log_factor = false;
  PredictionSource source = PredictionSource::theorem3_general;
  /// Set only where the published closed form disagrees with the general
  /// formula by more than lower-order terms (sum-connectivity: factor 2).
  std::optional<double> paper_displayed;
};

namespace detail {

inline constexpr double kSemicircleAbsMoment = 8.0 / (3.0 * std::numbers::pi);

inline void require_prediction_domain(std::size_t n, double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("predict_energy: p must lie in (0,1)");
  if (n < 2) throw std::invalid_argument("predict_energy: n must be at least 2");
}

inline double leading_exponent(const WeightFunctionSpec& spec) noexcept {
  switch (spec.id()) {
    case WeightId::zagreb_m1: return 2.5;
    case WeightId::zagreb_m2:
    case WeightId::lanzhou: return 3.5;
    case WeightId::randic:
    case WeightId::harmonic:
    case WeightId::mzagreb1: return 0.5;
    case WeightId::general_randic: return 1.5 + 2.0 * spec.alpha();
    case WeightId::abc:
    case WeightId::sci: return 1.0;
    case WeightId::azi: return 4.5;
    default: return 1.5;
  }
}

inline bool has_log_factor(const WeightFunctionSpec& spec) noexcept {
  return spec.id() == WeightId::mzagreb1 || spec.id() == WeightId::mzagreb1_star ||
         spec.id() == WeightId::mzagreb2;
}

}  // namespace detail

/// Per-index closed form as a function of (n, p). For sci this is the value
/// implied by the general formula, 4 sqrt(2) / (3 pi) sqrt(1-p) n.
inline double corollary_energy(const WeightFunctionSpec& spec, double n, double p) {
  constexpr double pi = std::numbers::pi;
  const double k = detail::kSemicircleAbsMoment;
  const double s = std::sqrt(p * (1.0 - p));
  const double q = std::sqrt((1.0 - p) / p);
  const double ln = std::log(n);
  switch (spec.id()) {
    case WeightId::unit:
    case WeightId::ag1: return k * s * std::pow(n, 1.5);
    case WeightId::zagreb_m1: return p * 16.0 / (3.0 * pi) * s * std::pow(n, 2.5);
    case WeightId::zagreb_m2: return p * p * k * s * std::pow(n, 3.5);
    case WeightId::randic:
    case WeightId::harmonic: return k * q * std::sqrt(n);
    case WeightId::general_randic:
      return std::pow(p, 2.0 * spec.alpha()) * k * s * std::pow(n, 1.5 + 2.0 * spec.alpha());
    case WeightId::abc: return 8.0 * std::numbers::sqrt2 / (3.0 * pi) * std::sqrt(1.0 - p) * n;
    case WeightId::azi: return p * p * p * s / (3.0 * pi) * std::pow(n, 4.5);
    case WeightId::sci: return 4.0 * std::numbers::sqrt2 / (3.0 * pi) * std::sqrt(1.0 - p) * n;
    case WeightId::mzagreb1: return 16.0 / (3.0 * pi) * q * std::sqrt(n) * ln;
    case WeightId::mzagreb1_star: return k * s * std::pow(n, 1.5) * ln;
    case WeightId::mzagreb2: return 16.0 / (3.0 * pi) * s * std::pow(n, 1.5) * ln;
    case WeightId::lanzhou: return 16.0 / (3.0 * pi) * std::pow(p * (1.0 - p), 1.5) * std::pow(n, 3.5);
  }
  return std::nan("");
}

/// The sum-connectivity constant as printed alongside its corollary.
inline double sci_paper_displayed(double n, double p) {
  return 2.0 * std::numbers::sqrt2 / (3.0 * std::numbers::pi) * std::sqrt(1.0 - p) * n;
}

inline Prediction predict_energy(const WeightFunctionSpec& spec, std::size_t n, double p,
                                 PredictionSource source = PredictionSource::theorem3_general) {
  detail::require_prediction_domain(n, p);
  Prediction out;
  out.spec = spec;
  out.n = n;
  out.p = p;
  out.source = source;
  out.leading_exponent = detail::leading_exponent(spec);
  out.log_factor = detail::has_log_factor(spec);
  const double nd = static_cast<double>(n);
  if (source == PredictionSource::theorem3_general) {
    const double fc = center_value(spec, n, p);
    out.predicted_energy = fc * abs_first_moment(std::sqrt(p * (1.0 - p))) * std::pow(nd, 1.5);
  } else {
    out.predicted_energy = corollary_energy(spec, nd, p);
    if (spec.id() == WeightId::sci) out.paper_displayed = sci_paper_displayed(nd, p);
  }
  return out;
}

enum class Trend { interior_maximum, decreasing, increasing };

inline constexpr std::string_view to_string(Trend t) noexcept {
  switch (t) {
    case Trend::interior_maximum: return "interior_maximum";
    case Trend::decreasing: return "decreasing";
    case Trend::increasing: return "increasing";
  }
  return "?";
}

struct ArgmaxResult {
  Trend trend = Trend::interior_maximum;
  /// Maximizer when trend is interior_maximum.
  std::optional<double> p_star;
  /// Stationary point in closed form, where the index has one.
  std::optional<double> closed_form;
  /// For general_randic: whether alpha lies in the range (alpha >= -1/4 or
  /// alpha < -1/2) where the closed form is stated. Always true otherwise.
  bool closed_form_in_stated_range = true;
};

inline std::optional<double> argmax_closed_form(const WeightFunctionSpec& spec) {
  switch (spec.id()) {
    case WeightId::zagreb_m1: return 0.75;
    case WeightId::zagreb_m2: return 5.0 / 6.0;
    case WeightId::azi: return 0.875;
    case WeightId::unit:
    case WeightId::ag1:
    case WeightId::mzagreb1_star:
    case WeightId::mzagreb2:
    case WeightId::lanzhou: return 0.5;
    case WeightId::general_randic: {
      const double a = spec.alpha();
      if (4.0 * a + 2.0 == 0.0) return std::nullopt;
      return (4.0 * a + 1.0) / (4.0 * a + 2.0);
    }
    default: return std::nullopt;
  }
}

inline constexpr double kArgmaxGridStep = 1e-3;
inline constexpr double kArgmaxTolerance = 1e-6;

/// Maximizes the predictor over p in (0,1): grid search with step 1e-3,
/// then golden-section refinement around the best grid point. A maximum on
/// the first or last grid point is reported as a monotone trend.
inline ArgmaxResult argmax_p(const WeightFunctionSpec& spec, std::size_t n,
                             PredictionSource source = PredictionSource::corollary_closed_form) {
  if (n < 2) throw std::invalid_argument("argmax_p: n must be at least 2");
  auto objective = [&](double p) {
    try {
      return predict_energy(spec, n, p, source).predicted_energy;
    } catch (const WeightDomainError&) {
      return -std::numeric_limits<double>::infinity();
    }
  };

  ArgmaxResult out;
  out.closed_form = argmax_closed_form(spec);
  if (spec.id() == WeightId::general_randic) {
    const double a = spec.alpha();
    out.closed_form_in_stated_range = a >= -0.25 || a < -0.5;
  }

  const int steps = static_cast<int>(std::lround(1.0 / kArgmaxGridStep));
  int best = 1;
  double best_val = -std::numeric_limits<double>::infinity();
  for (int k = 1; k < steps; ++k) {
    const double v = objective(k * kArgmaxGridStep);
    if (v > best_val) {
      best_val = v;
      best = k;
    }
  }
  if (best == 1) {
    out.trend = Trend::decreasing;
    return out;
  }
  if (best == steps - 1) {
    out.trend = Trend::increasing;
    return out;
  }

  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = (best - 1) * kArgmaxGridStep;
  double b = (best + 1) * kArgmaxGridStep;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = objective(c);
  double fd = objective(d);
  while (b - a > 0.1 * kArgmaxTolerance) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = objective(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = objective(d);
    }
  }
  out.trend = Trend::interior_maximum;
  out.p_star = 0.5 * (a + b);
  return out;
}

}  // namespace graphenergy

#endif  // GRAPHENERGY_PREDICT_HPP_
