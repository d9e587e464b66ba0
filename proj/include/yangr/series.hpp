#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "yangr/error.hpp"
#include "yangr/matrix.hpp"
#include "yangr/rational.hpp"

namespace yangr {

/// Formal power series in s^-1 truncated at order N: coefficient n is the
/// coefficient of s^-n, for n = 0..N. Coefficients beyond N are never read.
template <class T> class TruncSeries {
public:
  TruncSeries() = default;
  /// Zero series of order `order` whose coefficients are shaped like `like`.
  TruncSeries(std::size_t order, const T &like)
      : coeffs_(order + 1, zero_like(like)) {}
  explicit TruncSeries(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty())
      throw InputError("a truncated series needs at least one coefficient");
  }

  /// 1 + 0 s^-1 + ... for square coefficient type.
  static TruncSeries one(std::size_t order, const T &like) {
    TruncSeries out(order, like);
    out.coeffs_[0] = unit_like(like);
    return out;
  }

  std::size_t order() const { return coeffs_.size() - 1; }
  T &operator[](std::size_t n) { return coeffs_.at(n); }
  const T &operator[](std::size_t n) const { return coeffs_.at(n); }
  const std::vector<T> &coeffs() const { return coeffs_; }

  bool is_zero() const {
    for (const auto &c : coeffs_)
      if (!yangr::is_zero(c))
        return false;
    return true;
  }
  /// Smallest n with a nonzero s^-n coefficient.
  std::optional<std::size_t> first_nonzero() const {
    for (std::size_t n = 0; n < coeffs_.size(); ++n)
      if (!yangr::is_zero(coeffs_[n]))
        return n;
    return std::nullopt;
  }

  TruncSeries truncated(std::size_t order) const {
    if (order > this->order())
      throw InputError("cannot raise the truncation order of a series");
    return TruncSeries(
        std::vector<T>(coeffs_.begin(), coeffs_.begin() + order + 1));
  }

  TruncSeries &operator+=(const TruncSeries &o) {
    check_order(o);
    for (std::size_t n = 0; n < coeffs_.size(); ++n)
      coeffs_[n] += o.coeffs_[n];
    return *this;
  }
  TruncSeries &operator-=(const TruncSeries &o) {
    check_order(o);
    for (std::size_t n = 0; n < coeffs_.size(); ++n)
      coeffs_[n] -= o.coeffs_[n];
    return *this;
  }
  friend TruncSeries operator+(TruncSeries a, const TruncSeries &b) {
    return a += b;
  }
  friend TruncSeries operator-(TruncSeries a, const TruncSeries &b) {
    return a -= b;
  }
  friend bool operator==(const TruncSeries &a, const TruncSeries &b) {
    return a.coeffs_ == b.coeffs_;
  }

  void check_order(const TruncSeries &o) const {
    if (o.coeffs_.size() != coeffs_.size())
      throw InputError("series order mismatch: " + std::to_string(order()) +
                       " vs " + std::to_string(o.order()));
  }

private:
  static T zero_like(const T &like) {
    if constexpr (requires { T::zero_like(like); })
      return T::zero_like(like);
    else
      return T(0);
  }
  static T unit_like(const T &like) {
    if constexpr (requires { T::identity(like.rows()); }) {
      if (!like.square())
        throw InputError("identity series needs square coefficients");
      return T::identity(like.rows());
    } else
      return T(1);
  }

  std::vector<T> coeffs_;
};

using MatrixSeries = TruncSeries<QMatrix>;

/// Cauchy product truncated at the common order.
template <class T>
TruncSeries<T> series_mul(const TruncSeries<T> &a, const TruncSeries<T> &b) {
  a.check_order(b);
  const std::size_t order = a.order();
  std::vector<T> out;
  out.reserve(order + 1);
  for (std::size_t n = 0; n <= order; ++n) {
    T acc = a[0] * b[n];
    for (std::size_t k = 1; k <= n; ++k)
      if (!yangr::is_zero(a[k]) && !yangr::is_zero(b[n - k]))
        acc += a[k] * b[n - k];
    out.push_back(std::move(acc));
  }
  return TruncSeries<T>(std::move(out));
}

/// Divided-power derivative (1/n!) d^n/ds^n applied termwise:
/// s^-(r+1) maps to (-1)^n binom(r+n, n) s^-(r+1+n). Constant terms vanish.
template <class T>
TruncSeries<T> series_derivative(const TruncSeries<T> &a, std::size_t n) {
  if (n == 0)
    return a;
  TruncSeries<T> out(a.order(), a[0]);
  const Rational sign = (n % 2 == 0) ? Rational(1) : Rational(-1);
  for (std::size_t m = 1; m + n <= a.order(); ++m) {
    if (yangr::is_zero(a[m]))
      continue;
    const std::size_t r = m - 1;
    Rational c = sign * binomial(static_cast<std::int64_t>(r + n),
                                 static_cast<std::int64_t>(n));
    T term = a[m];
    term *= c;
    out[m + n] += term;
  }
  return out;
}

} // namespace yangr
