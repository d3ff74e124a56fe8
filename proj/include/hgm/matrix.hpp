#pragma once

#include "hgm/error.hpp"
#include "hgm/numtheory.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace hgm {

template <class T> class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : r_(r), c_(c), a_(r * c, T(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  T &operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const T &operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  Matrix operator*(const Matrix &o) const {
    if (c_ != o.r_) throw Error(ErrorKind::InvalidArgument, "matrix shape mismatch");
    Matrix m(r_, o.c_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t k = 0; k < c_; ++k) {
        if ((*this)(i, k) == 0) continue;
        for (std::size_t j = 0; j < o.c_; ++j) m(i, j) += (*this)(i, k) * o(k, j);
      }
    return m;
  }
  Matrix operator-(const Matrix &o) const {
    Matrix m = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] -= o.a_[i];
    return m;
  }
  bool operator==(const Matrix &o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }

  Matrix transpose() const {
    Matrix m(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
    return m;
  }

  Matrix pow(unsigned long e) const {
    Matrix r = identity(r_), b = *this;
    while (e) {
      if (e & 1) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }

private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<T> a_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rat>;

// Fraction-free (Bareiss) elimination; returns rank and, for square input, the determinant.
template <class T> std::size_t bareiss(Matrix<T> a, T *det = nullptr) {
  std::size_t n = a.rows(), m = a.cols(), rank = 0;
  T prev = 1;
  int sign = 1;
  for (std::size_t col = 0; col < m && rank < n; ++col) {
    std::size_t piv = rank;
    while (piv < n && a(piv, col) == 0) ++piv;
    if (piv == n) continue;
    if (piv != rank) {
      for (std::size_t j = 0; j < m; ++j) std::swap(a(piv, j), a(rank, j));
      sign = -sign;
    }
    for (std::size_t i = rank + 1; i < n; ++i) {
      for (std::size_t j = col + 1; j < m; ++j) {
        T v = a(rank, col) * a(i, j) - a(i, col) * a(rank, j);
        a(i, j) = v / prev;
      }
      a(i, col) = 0;
    }
    prev = a(rank, col);
    ++rank;
  }
  if (det) {
    if (n != m) throw Error(ErrorKind::InvalidArgument, "determinant of non-square matrix");
    *det = rank == n ? T(sign * a(n - 1, n - 1)) : T(0);
  }
  return rank;
}

template <class T> std::size_t rank(const Matrix<T> &a) { return bareiss(a); }
template <class T> T determinant(const Matrix<T> &a) {
  if (a.rows() == 0) return T(1);
  T d;
  bareiss(a, &d);
  return d;
}

RatMatrix to_rat(const IntMatrix &m);
// inverse over Q; throws if singular
RatMatrix inverse(const RatMatrix &m);
std::string matrix_to_string(const IntMatrix &m);

} // namespace hgm
