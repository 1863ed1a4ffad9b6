#ifndef GRAPHENERGY_SEMICIRCLE_HPP_
#define GRAPHENERGY_SEMICIRCLE_HPP_

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "graphenergy/spectral.hpp"

namespace graphenergy {

/// Semicircle law with density sqrt(4 sigma^2 - x^2) / (2 pi sigma^2) on
/// [-2 sigma, 2 sigma]. For G(n,p), sigma = sqrt(p (1 - p)).
class SemicircleLaw {
 public:
  explicit SemicircleLaw(double sigma) : sigma_(sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw std::invalid_argument("SemicircleLaw: sigma must be positive");
  }

  static SemicircleLaw for_probability(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("SemicircleLaw: p must lie in (0,1)");
    return SemicircleLaw(std::sqrt(p * (1.0 - p)));
  }

  double sigma() const noexcept { return sigma_; }
  double radius() const noexcept { return 2.0 * sigma_; }

 private:
  double sigma_;
};

inline double density(const SemicircleLaw& law, double x) noexcept {
  const double s2 = law.sigma() * law.sigma();
  const double r2 = 4.0 * s2 - x * x;
  if (r2 <= 0.0) return 0.0;
  return std::sqrt(r2) / (2.0 * std::numbers::pi * s2);
}

/// Closed form: 1/2 + x sqrt(4 sigma^2 - x^2) / (4 pi sigma^2) + asin(x / 2 sigma) / pi.
inline double cdf(const SemicircleLaw& law, double x) noexcept {
  const double r = law.radius();
  if (x <= -r) return 0.0;
  if (x >= r) return 1.0;
  const double s2 = law.sigma() * law.sigma();
  const double v = 0.5 + x * std::sqrt(4.0 * s2 - x * x) / (4.0 * std::numbers::pi * s2) +
                   std::asin(x / r) / std::numbers::pi;
  return std::clamp(v, 0.0, 1.0);
}

/// Integral of |x| against the law: 8 sigma / (3 pi).
inline double abs_first_moment(double sigma) {
  if (!(sigma >= 0.0)) throw std::invalid_argument("abs_first_moment: sigma must be nonnegative");
  return 8.0 / (3.0 * std::numbers::pi) * sigma;
}

inline double abs_first_moment(const SemicircleLaw& law) { return abs_first_moment(law.sigma()); }

inline double catalan(unsigned k) noexcept {
  // C_{k+1} = C_k * 2(2k+1)/(k+2)
  double c = 1.0;
  for (unsigned i = 0; i < k; ++i) c = c * 2.0 * (2.0 * i + 1.0) / (i + 2.0);
  return c;
}

inline constexpr unsigned kMaxEvenMoment = 10;

/// Integral of x^(2k): Catalan(k) sigma^(2k).
inline double even_moment(const SemicircleLaw& law, unsigned k) {
  if (k > kMaxEvenMoment) throw std::invalid_argument("even_moment: k above 10");
  return catalan(k) * std::pow(law.sigma(), 2.0 * k);
}

/// sup_x |ESD(x) - Phi(x)| for the spectrum scaled by `scale`, taking both
/// one-sided limits at each jump.
inline double ks_distance(const Spectrum& s, double scale, const SemicircleLaw& law) {
  if (!(scale > 0.0)) throw std::invalid_argument("ks_distance: scale must be positive");
  if (s.order() == 0) throw std::invalid_argument("ks_distance: empty spectrum");
  const double n = static_cast<double>(s.order());
  double worst = 0.0;
  for (std::size_t i = 0; i < s.order(); ++i) {
    const double phi = cdf(law, scale * s[i]);
    const double below = static_cast<double>(i) / n;
    const double upto = static_cast<double>(i + 1) / n;
    worst = std::max({worst, phi - below, upto - phi});
  }
  return worst;
}

}  // namespace graphenergy

#endif  // GRAPHENERGY_SEMICIRCLE_HPP_
