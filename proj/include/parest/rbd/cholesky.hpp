#ifndef PAREST_RBD_CHOLESKY_HPP_
#define PAREST_RBD_CHOLESKY_HPP_

#include <Eigen/Core>
#include <cmath>

namespace parest {

template <typename S>
double value_of(const S& x) {
  return x.value();
}
inline double value_of(double x) { return x; }

/// Plain dense Cholesky factorization with unconditional arithmetic. Eigen's
/// triangular kernels skip zero-valued entries, which silently drops the
/// derivative part of autodiff scalars whose value happens to be zero; this
/// implementation has no such shortcuts and works for any scalar type.
template <typename S>
class DenseCholesky {
 public:
  using Matrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

  DenseCholesky() = default;
  explicit DenseCholesky(const Matrix& a) { compute(a); }

  void compute(const Matrix& a) {
    using std::sqrt;
    const int n = static_cast<int>(a.rows());
    l_ = Matrix::Zero(n, n);
    ok_ = true;
    for (int j = 0; j < n; ++j) {
      S d = a(j, j);
      for (int k = 0; k < j; ++k) d -= l_(j, k) * l_(j, k);
      if (!(value_of(d) > 0.0) || !std::isfinite(value_of(d))) {
        ok_ = false;
        return;
      }
      l_(j, j) = sqrt(d);
      for (int i = j + 1; i < n; ++i) {
        S s = a(i, j);
        for (int k = 0; k < j; ++k) s -= l_(i, k) * l_(j, k);
        l_(i, j) = s / l_(j, j);
      }
    }
  }

  bool ok() const { return ok_; }
  int size() const { return static_cast<int>(l_.rows()); }

  Matrix solve(const Matrix& b) const {
    const int n = size();
    Matrix x = b;
    for (int c = 0; c < x.cols(); ++c) {
      for (int i = 0; i < n; ++i) {
        S s = x(i, c);
        for (int k = 0; k < i; ++k) s -= l_(i, k) * x(k, c);
        x(i, c) = s / l_(i, i);
      }
      for (int i = n - 1; i >= 0; --i) {
        S s = x(i, c);
        for (int k = i + 1; k < n; ++k) s -= l_(k, i) * x(k, c);
        x(i, c) = s / l_(i, i);
      }
    }
    return x;
  }

 private:
  Matrix l_;
  bool ok_ = false;
};

}  // namespace parest

#endif  // PAREST_RBD_CHOLESKY_HPP_
