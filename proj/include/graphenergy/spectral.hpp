#ifndef GRAPHENERGY_SPECTRAL_HPP_
#define GRAPHENERGY_SPECTRAL_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "graphenergy/graph.hpp"
#include "graphenergy/symmetric_matrix.hpp"
#include "graphenergy/weights.hpp"

namespace graphenergy {

/// Eigenvalues of a real symmetric matrix, sorted ascending.
class Spectrum {
 public:
  Spectrum() = default;
  explicit Spectrum(std::vector<double> values) : values_(std::move(values)) {
    std::sort(values_.begin(), values_.end());
  }

  std::size_t order() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double min() const { return values_.front(); }
  double max() const { return values_.back(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

 private:
  std::vector<double> values_;
};

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Iteration cap per eigenvalue in the tridiagonal QL sweep.
inline constexpr int kQlMaxSweeps = 50;
/// Off-diagonal e_m is deflated once |e_m| <= tol * (|d_m| + |d_{m+1}|).
inline constexpr double kQlRelativeTolerance = 1e-12;

namespace detail {

// Householder reduction of a packed lower triangle (row i starts at
// i(i+1)/2) to tridiagonal form. The rank-two update of step k is deferred
// and applied in the same pass over the trailing rows that forms the
// symmetric product for step k+1, so each step streams the trailing
// triangle once.
inline void tridiagonalize_packed(std::vector<double>& lower, std::size_t n, std::vector<double>& diag,
                                  std::vector<double>& offdiag) {
  diag.assign(n, 0.0);
  offdiag.assign(n, 0.0);
  if (n == 0) return;
  auto row_ptr = [&](std::size_t i) { return lower.data() + i * (i + 1) / 2; };
  if (n == 1) {
    diag[0] = row_ptr(0)[0];
    return;
  }

  std::vector<double> v(n, 0.0), w(n, 0.0), vp(n, 0.0), wp(n, 0.0), prod(n, 0.0);
  bool pending = false;

  for (std::size_t k = 0; k + 2 < n; ++k) {
    diag[k] = row_ptr(k)[k];

    const double alpha = row_ptr(k + 1)[k];
    double tail = 0.0;
    for (std::size_t i = k + 2; i < n; ++i) {
      const double x = row_ptr(i)[k];
      tail += x * x;
    }
    double tau = 0.0;
    double beta = alpha;
    if (tail != 0.0) {
      beta = -std::copysign(std::sqrt(alpha * alpha + tail), alpha);
      tau = (beta - alpha) / beta;
      const double scale = 1.0 / (alpha - beta);
      v[k + 1] = 1.0;
      for (std::size_t i = k + 2; i < n; ++i) v[i] = row_ptr(i)[k] * scale;
    }
    offdiag[k] = beta;

    std::fill(prod.begin() + static_cast<std::ptrdiff_t>(k + 1), prod.end(), 0.0);
    const std::size_t lo = k + 1;
    double* __restrict pr = prod.data();
    const double* __restrict vv = v.data();
    const double* __restrict vpp = vp.data();
    const double* __restrict wpp = wp.data();
    for (std::size_t i = lo; i < n; ++i) {
      double* __restrict row = row_ptr(i);
      if (pending) {
        const double vi = vpp[i];
        const double wi = wpp[i];
#pragma omp simd
        for (std::size_t j = lo; j <= i; ++j) row[j] -= vi * wpp[j] + wi * vpp[j];
      }
      if (tau != 0.0) {
        const double ui = vv[i];
        double acc = 0.0;
#pragma omp simd reduction(+ : acc)
        for (std::size_t j = lo; j < i; ++j) {
          acc += row[j] * vv[j];
          pr[j] += row[j] * ui;
        }
        pr[i] += acc + row[i] * ui;
      }
    }

    if (tau != 0.0) {
      double dot = 0.0;
      for (std::size_t i = lo; i < n; ++i) {
        prod[i] *= tau;
        dot += prod[i] * v[i];
      }
      const double half = 0.5 * tau * dot;
      for (std::size_t i = lo; i < n; ++i) w[i] = prod[i] - half * v[i];
      // Column k+1 becomes the next pivot column, so it gets this step's
      // update now; the rest of the trailing block receives it next pass.
      const double v0 = v[lo];
      const double w0 = w[lo];
      for (std::size_t i = lo; i < n; ++i) row_ptr(i)[lo] -= v[i] * w0 + w[i] * v0;
      std::swap(v, vp);
      std::swap(w, wp);
      pending = true;
    } else {
      // H = I: nothing to defer.
      pending = false;
    }
  }

  double last = row_ptr(n - 1)[n - 1];
  if (pending) last -= 2.0 * vp[n - 1] * wp[n - 1];
  diag[n - 2] = row_ptr(n - 2)[n - 2];
  offdiag[n - 2] = row_ptr(n - 1)[n - 2];
  diag[n - 1] = last;
  offdiag[n - 1] = 0.0;
}

// Implicit-shift QL on a symmetric tridiagonal matrix, eigenvalues only.
// offdiag[i] couples i and i+1; offdiag[n-1] must be zero.
inline void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e) {
  const std::size_t n = d.size();
  if (n < 2) return;
  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= kQlRelativeTolerance * dd) break;
      }
      if (m != l) {
        if (iter++ == kQlMaxSweeps) {
          throw ConvergenceError("eigenvalues_symmetric: no convergence after " + std::to_string(kQlMaxSweeps) +
                                 " sweeps for eigenvalue " + std::to_string(l));
        }
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        bool underflow = false;
        for (std::size_t i = m; i-- > l;) {
          const double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

}  // namespace detail

/// All eigenvalues of a dense symmetric matrix: Householder tridiagonal
/// reduction followed by implicit QL. Eigenvectors are not formed.
inline Spectrum eigenvalues_symmetric(const SymmetricMatrix& a) {
  const std::size_t n = a.order();
  std::vector<double> lower(n * (n + 1) / 2);
  for (std::size_t i = 0, off = 0; i < n; off += ++i) {
    const auto r = a.row(i);
    std::copy(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(i + 1), lower.begin() + static_cast<std::ptrdiff_t>(off));
  }
  std::vector<double> d, e;
  detail::tridiagonalize_packed(lower, n, d, e);
  lower.clear();
  lower.shrink_to_fit();
  detail::tridiagonal_ql(d, e);
  return Spectrum(std::move(d));
}

/// Rejects a row-major array whose triangles differ by more than 1e-12
/// before solving.
inline Spectrum eigenvalues_symmetric(std::size_t n, std::span<const double> rows) {
  return eigenvalues_symmetric(SymmetricMatrix::from_dense(n, rows, 1e-12));
}

/// Sum of |lambda_i|.
inline double energy(const Spectrum& s) noexcept {
  double total = 0.0;
  for (double x : s.values()) total += std::abs(x);
  return total;
}

/// Fraction of eigenvalues with scale * lambda <= x (right-continuous).
inline double esd(const Spectrum& s, double x, double scale = 1.0) {
  if (!(scale > 0.0)) throw std::invalid_argument("esd: scale must be positive");
  if (s.order() == 0) return 0.0;
  const auto vals = s.values();
  const auto it = std::partition_point(vals.begin(), vals.end(), [&](double l) { return scale * l <= x; });
  return static_cast<double>(it - vals.begin()) / static_cast<double>(s.order());
}

/// sup_x |F_a(x) - F_b(x)| between two empirical spectral distributions of
/// equal order, both scaled by `scale`.
inline double esd_distance(const Spectrum& a, const Spectrum& b, double scale = 1.0) {
  if (a.order() != b.order()) throw std::invalid_argument("esd_distance: order mismatch");
  double worst = 0.0;
  for (const Spectrum* s : {&a, &b}) {
    for (double l : s->values()) {
      const double x = scale * l;
      worst = std::max(worst, std::abs(esd(a, x, scale) - esd(b, x, scale)));
    }
  }
  return worst;
}

inline constexpr unsigned kMaxMomentOrder = 12;

/// (1/n) Tr(A^k) = (1/n) sum lambda_i^k.
inline double trace_moment(const Spectrum& s, unsigned k) {
  if (k > kMaxMomentOrder) throw std::invalid_argument("trace_moment: order above " + std::to_string(kMaxMomentOrder));
  if (s.order() == 0) throw std::invalid_argument("trace_moment: empty spectrum");
  double total = 0.0;
  for (double l : s.values()) {
    double term = 1.0;
    for (unsigned i = 0; i < k; ++i) term *= l;
    total += term;
  }
  return total / static_cast<double>(s.order());
}

inline double trace_moment(const SymmetricMatrix& a, unsigned k) {
  return trace_moment(eigenvalues_symmetric(a), k);
}

inline constexpr std::size_t kWalkMaxOrder = 8;
inline constexpr unsigned kWalkMaxLength = 6;

/// (1/n) times the sum, over all closed walks i_1 ... i_k i_1, of the product
/// of the centered entries f(d_i,d_j)/fc - p on edges and -p on non-edges.
/// Entries are formed from the graph directly, not from a matrix.
inline double walk_moment(const Graph& g, const WeightFunctionSpec& spec, double fc, double p, unsigned k) {
  const std::size_t n = g.order();
  if (n > kWalkMaxOrder) throw std::invalid_argument("walk_moment: n above " + std::to_string(kWalkMaxOrder));
  if (k == 0 || k > kWalkMaxLength) {
    throw std::invalid_argument("walk_moment: walk length must be in [1, " + std::to_string(kWalkMaxLength) + "]");
  }
  if (fc == 0.0) throw std::invalid_argument("walk_moment: fc must be nonzero");

  std::vector<double> entry(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      entry[i * n + j] =
          g.has_edge(i, j) ? eval_weight(spec, g.degree(i), g.degree(j), n) / fc - p : -p;
    }
  }

  std::vector<std::size_t> walk(k, 0);
  double total = 0.0;
  while (true) {
    double prod = 1.0;
    for (unsigned s = 0; s < k; ++s) prod *= entry[walk[s] * n + walk[(s + 1) % k]];
    total += prod;
    unsigned pos = 0;
    while (pos < k && ++walk[pos] == n) walk[pos++] = 0;
    if (pos == k) break;
  }
  return total / static_cast<double>(n);
}

struct KyFanResult {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

/// energy(X+Y) against energy(X)+energy(Y), with relative slack 1e-8.
inline KyFanResult ky_fan_check(const SymmetricMatrix& x, const SymmetricMatrix& y) {
  if (x.order() != y.order()) throw std::invalid_argument("ky_fan_check: order mismatch");
  KyFanResult r;
  r.lhs = energy(eigenvalues_symmetric(x + y));
  r.rhs = energy(eigenvalues_symmetric(x)) + energy(eigenvalues_symmetric(y));
  r.holds = r.lhs <= r.rhs + 1e-8 * r.rhs;
  return r;
}

}  // namespace graphenergy

#endif  // GRAPHENERGY_SPECTRAL_HPP_
