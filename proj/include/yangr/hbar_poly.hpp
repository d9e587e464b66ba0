#pragma once

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

#include "yangr/rational.hpp"

namespace yangr {

/// Polynomial in the deformation parameter hbar with rational coefficients.
/// Stored lowest degree first with no trailing zero coefficients; the zero
/// polynomial has an empty coefficient list.
class HbarPoly {
public:
  HbarPoly() = default;
  HbarPoly(const Rational &constant) {
    if (!yangr::is_zero(constant))
      coeffs_.push_back(constant);
  }
  HbarPoly(int constant) : HbarPoly(Rational(constant)) {}
  HbarPoly(std::initializer_list<Rational> coeffs) : coeffs_(coeffs) { trim(); }
  explicit HbarPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
    trim();
  }

  /// c * hbar^degree
  static HbarPoly monomial(const Rational &c, std::size_t degree) {
    std::vector<Rational> v(degree + 1);
    v[degree] = c;
    return HbarPoly(std::move(v));
  }
  static HbarPoly hbar() { return monomial(Rational(1), 1); }

  bool is_zero() const { return coeffs_.empty(); }
  /// Degree of the polynomial; -1 for zero.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Rational> &coeffs() const { return coeffs_; }
  Rational coeff(std::size_t k) const {
    return k < coeffs_.size() ? coeffs_[k] : Rational(0);
  }

  Rational eval(const Rational &hbar) const {
    Rational acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
      acc = acc * hbar + *it;
    return acc;
  }

  HbarPoly &operator+=(const HbarPoly &o) {
    if (o.coeffs_.size() > coeffs_.size())
      coeffs_.resize(o.coeffs_.size());
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k)
      coeffs_[k] += o.coeffs_[k];
    trim();
    return *this;
  }
  HbarPoly &operator-=(const HbarPoly &o) {
    if (o.coeffs_.size() > coeffs_.size())
      coeffs_.resize(o.coeffs_.size());
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k)
      coeffs_[k] -= o.coeffs_[k];
    trim();
    return *this;
  }
  HbarPoly &operator*=(const HbarPoly &o) {
    *this = *this * o;
    return *this;
  }

  friend HbarPoly operator+(HbarPoly a, const HbarPoly &b) { return a += b; }
  friend HbarPoly operator-(HbarPoly a, const HbarPoly &b) { return a -= b; }
  friend HbarPoly operator-(HbarPoly a) {
    for (auto &c : a.coeffs_)
      c = -c;
    return a;
  }
  friend HbarPoly operator*(const HbarPoly &a, const HbarPoly &b) {
    if (a.is_zero() || b.is_zero())
      return {};
    std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
        out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return HbarPoly(std::move(out));
  }
  friend bool operator==(const HbarPoly &a, const HbarPoly &b) {
    return a.coeffs_ == b.coeffs_;
  }

  std::string str() const {
    if (is_zero())
      return "0";
    std::string out;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      if (yangr::is_zero(coeffs_[k]))
        continue;
      std::string c = to_string(coeffs_[k]);
      if (!out.empty())
        out += (c.front() == '-') ? " - " : " + ";
      else if (c.front() == '-')
        out += "-";
      if (c.front() == '-')
        c.erase(0, 1);
      if (k == 0)
        out += c;
      else {
        if (c != "1")
          out += c + "*";
        out += (k == 1) ? "hbar" : "hbar^" + std::to_string(k);
      }
    }
    return out;
  }

private:
  void trim() {
    while (!coeffs_.empty() && yangr::is_zero(coeffs_.back()))
      coeffs_.pop_back();
  }

  std::vector<Rational> coeffs_;
};

inline bool is_zero(const HbarPoly &p) { return p.is_zero(); }

inline std::ostream &operator<<(std::ostream &os, const HbarPoly &p) {
  return os << p.str();
}

} // namespace yangr
