#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "yangr/error.hpp"
#include "yangr/rational.hpp"

namespace yangr {

/// Dense row-major matrix over an exact coefficient type. Entry (r, c) is
/// the image coefficient of basis vector c along basis vector r.
template <class T> class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      m(i, i) = T(1);
    return m;
  }
  static Matrix zero_like(const Matrix &o) { return Matrix(o.rows_, o.cols_); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T &operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  bool is_zero() const {
    for (const auto &x : data_)
      if (!yangr::is_zero(x))
        return false;
    return true;
  }
  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto &x : data_)
      n += yangr::is_zero(x) ? 0 : 1;
    return n;
  }
  bool is_diagonal() const {
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c)
        if (r != c && !yangr::is_zero((*this)(r, c)))
          return false;
    return true;
  }

  Matrix &operator+=(const Matrix &o) {
    check_same(o, "+");
    for (std::size_t k = 0; k < data_.size(); ++k)
      data_[k] += o.data_[k];
    return *this;
  }
  Matrix &operator-=(const Matrix &o) {
    check_same(o, "-");
    for (std::size_t k = 0; k < data_.size(); ++k)
      data_[k] -= o.data_[k];
    return *this;
  }
  Matrix &operator*=(const T &s) {
    for (auto &x : data_)
      x *= s;
    return *this;
  }
  /// this += s * o
  Matrix &add_scaled(const T &s, const Matrix &o) {
    check_same(o, "add_scaled");
    if (yangr::is_zero(s))
      return *this;
    for (std::size_t k = 0; k < data_.size(); ++k)
      if (!yangr::is_zero(o.data_[k]))
        data_[k] += s * o.data_[k];
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix &b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix &b) { return a -= b; }
  friend Matrix operator-(Matrix a) {
    for (auto &x : a.data_)
      x = -x;
    return a;
  }
  friend Matrix operator*(Matrix a, const T &s) { return a *= s; }
  friend Matrix operator*(const T &s, Matrix a) { return a *= s; }

  /// Product that skips zero entries of the left factor; generator matrices
  /// of weight modules are very sparse.
  friend Matrix operator*(const Matrix &a, const Matrix &b) {
    if (a.cols_ != b.rows_)
      throw InputError("matrix product dimension mismatch: " + a.shape() +
                       " * " + b.shape());
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T &aik = a(i, k);
        if (yangr::is_zero(aik))
          continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const T &bkj = b(k, j);
          if (!yangr::is_zero(bkj))
            out(i, j) += aik * bkj;
        }
      }
    return out;
  }

  friend bool operator==(const Matrix &a, const Matrix &b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c)
        t(c, r) = (*this)(r, c);
    return t;
  }

  std::string shape() const {
    return std::to_string(rows_) + "x" + std::to_string(cols_);
  }

private:
  void check_same(const Matrix &o, const char *op) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw InputError(std::string("matrix dimension mismatch in ") + op +
                       ": " + shape() + " vs " + o.shape());
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using QMatrix = Matrix<Rational>;

template <class T> bool is_zero(const Matrix<T> &m) { return m.is_zero(); }

template <class T> Matrix<T> commutator(const Matrix<T> &a, const Matrix<T> &b) {
  return a * b - b * a;
}

template <class T> Matrix<T> anticommutator(const Matrix<T> &a, const Matrix<T> &b) {
  return a * b + b * a;
}

/// Kronecker product a ⊗ b; basis pair (i, k) of the product has index
/// i * b.rows() + k.
template <class T> Matrix<T> kron(const Matrix<T> &a, const Matrix<T> &b) {
  Matrix<T> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const T &aij = a(i, j);
      if (yangr::is_zero(aij))
        continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) {
          const T &bkl = b(k, l);
          if (!yangr::is_zero(bkl))
            out(i * b.rows() + k, j * b.cols() + l) = aij * bkl;
        }
    }
  return out;
}

/// Largest absolute entry; zero iff the matrix is zero.
inline Rational max_abs(const QMatrix &m) {
  Rational best(0);
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      Rational a = abs(m(r, c));
      if (a > best)
        best = a;
    }
  return best;
}

} // namespace yangr
