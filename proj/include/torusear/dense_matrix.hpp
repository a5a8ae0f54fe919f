#pragma once

#include <cstddef>
#include <vector>

#include "torusear/errors.hpp"

namespace torusear {

/// Square dense matrix, row-major, templated on the scalar type.
///
/// Used with exact scalars (BigInt) where Eigen's scalar requirements do not
/// fit; numeric work converts to Eigen matrices instead.
template <typename Scalar>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t n, const Scalar& fill = Scalar(0)) : n_(n), data_(n * n, fill) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar(1);
    return m;
  }

  std::size_t dimension() const { return n_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }

  bool is_symmetric() const {
    for (std::size_t r = 0; r < n_; ++r)
      for (std::size_t c = r + 1; c < n_; ++c)
        if (!((*this)(r, c) == (*this)(c, r))) return false;
    return true;
  }

  Scalar trace() const {
    Scalar t(0);
    for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
  }

  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
    return a.n_ == b.n_ && a.data_ == b.data_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Scalar> data_;
};

template <typename Scalar>
DenseMatrix<Scalar> operator*(const DenseMatrix<Scalar>& a, const DenseMatrix<Scalar>& b) {
  if (a.dimension() != b.dimension()) throw InvalidParameter("matrix product: dimension mismatch");
  const std::size_t n = a.dimension();
  DenseMatrix<Scalar> out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Scalar& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

}  // namespace torusear
