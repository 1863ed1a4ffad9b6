#ifndef GRAPHENERGY_SYMMETRIC_MATRIX_HPP_
#define GRAPHENERGY_SYMMETRIC_MATRIX_HPP_

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace graphenergy {

/// Dense real symmetric matrix, full row-major storage. Every write goes to
/// both (i,j) and (j,i), so the two triangles are bit-identical.
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;
  explicit SymmetricMatrix(std::size_t n, double fill = 0.0) : n_(n), a_(n * n, fill) {}

  /// Accepts a row-major n*n array whose triangles agree to `tol` (absolute)
  /// and mirrors the lower triangle into the upper one.
  static SymmetricMatrix from_dense(std::size_t n, std::span<const double> rows, double tol = 1e-12) {
    if (rows.size() != n * n) throw std::invalid_argument("SymmetricMatrix: expected n*n entries");
    SymmetricMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        const double lo = rows[i * n + j];
        const double up = rows[j * n + i];
        if (!(std::abs(lo - up) <= tol)) {
          throw std::invalid_argument("SymmetricMatrix: asymmetric at (" + std::to_string(i) + "," +
                                      std::to_string(j) + ")");
        }
        m.set(i, j, lo);
      }
    }
    return m;
  }

  std::size_t order() const noexcept { return n_; }

  double operator()(std::size_t i, std::size_t j) const noexcept { return a_[i * n_ + j]; }

  void set(std::size_t i, std::size_t j, double v) noexcept {
    a_[i * n_ + j] = v;
    a_[j * n_ + i] = v;
  }

  std::span<const double> row(std::size_t i) const noexcept { return {a_.data() + i * n_, n_}; }
  std::span<const double> data() const noexcept { return a_; }

  double trace() const noexcept {
    double t = 0.0;
    for (std::size_t i = 0; i < n_; ++i) t += a_[i * n_ + i];
    return t;
  }

  /// Sum of squared entries, i.e. Tr(A^2).
  double frobenius_squared() const noexcept {
    double s = 0.0;
    for (double x : a_) s += x * x;
    return s;
  }

  SymmetricMatrix& operator*=(double c) noexcept {
    for (double& x : a_) x *= c;
    return *this;
  }

  SymmetricMatrix& operator+=(const SymmetricMatrix& o) {
    require_same_order(o);
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
  }

  friend SymmetricMatrix operator+(SymmetricMatrix a, const SymmetricMatrix& b) { return a += b; }
  friend SymmetricMatrix operator*(double c, SymmetricMatrix a) { return a *= c; }
  friend SymmetricMatrix operator-(SymmetricMatrix a) { return a *= -1.0; }

  friend bool operator==(const SymmetricMatrix&, const SymmetricMatrix&) = default;

 private:
  void require_same_order(const SymmetricMatrix& o) const {
    if (o.n_ != n_) throw std::invalid_argument("SymmetricMatrix: order mismatch");
  }

  std::size_t n_ = 0;
  std::vector<double> a_;
};

/// c * (J - I): the constant off-diagonal matrix.
inline SymmetricMatrix constant_offdiagonal(std::size_t n, double c) {
  SymmetricMatrix m(n, c);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 0.0);
  return m;
}

}  // namespace graphenergy

#endif  // GRAPHENERGY_SYMMETRIC_MATRIX_HPP_
