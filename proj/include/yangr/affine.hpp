#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "yangr/error.hpp"
#include "yangr/matrix.hpp"
#include "yangr/rational.hpp"

namespace yangr {

/// Sparse rational vector: (index, value) pairs sorted by index, no zeros.
class SparseVec {
public:
  using Entry = std::pair<std::size_t, Rational>;

  SparseVec() = default;
  /// Sorts, merges duplicates and drops zeros.
  explicit SparseVec(std::vector<Entry> entries) {
    std::sort(entries.begin(), entries.end(),
              [](const Entry &a, const Entry &b) { return a.first < b.first; });
    for (auto &e : entries) {
      if (!entries_.empty() && entries_.back().first == e.first)
        entries_.back().second += e.second;
      else
        entries_.push_back(std::move(e));
    }
    std::erase_if(entries_, [](const Entry &e) { return is_zero(e.second); });
  }
  static SparseVec unit(std::size_t index) {
    SparseVec v;
    v.entries_.emplace_back(index, Rational(1));
    return v;
  }

  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  const std::vector<Entry> &entries() const { return entries_; }
  const Entry &front() const { return entries_.front(); }

  Rational get(std::size_t index) const {
    auto it = std::lower_bound(
        entries_.begin(), entries_.end(), index,
        [](const Entry &e, std::size_t i) { return e.first < i; });
    return (it != entries_.end() && it->first == index) ? it->second
                                                        : Rational(0);
  }

  /// this += scale * other
  void axpy(const Rational &scale, const SparseVec &other) {
    if (is_zero(scale) || other.empty())
      return;
    std::vector<Entry> out;
    out.reserve(entries_.size() + other.entries_.size());
    auto a = entries_.begin();
    auto b = other.entries_.begin();
    while (a != entries_.end() || b != other.entries_.end()) {
      if (b == other.entries_.end() || (a != entries_.end() && a->first < b->first)) {
        out.push_back(std::move(*a));
        ++a;
      } else if (a == entries_.end() || b->first < a->first) {
        out.emplace_back(b->first, scale * b->second);
        ++b;
      } else {
        Rational v = a->second + scale * b->second;
        if (!is_zero(v))
          out.emplace_back(a->first, std::move(v));
        ++a;
        ++b;
      }
    }
    entries_ = std::move(out);
  }

  void scale(const Rational &s) {
    for (auto &e : entries_)
      e.second *= s;
  }

  Rational dot(std::span<const Rational> dense) const {
    Rational acc(0);
    for (const auto &[i, v] : entries_)
      acc += v * dense[i];
    return acc;
  }

private:
  std::vector<Entry> entries_;
};

/// A system of affine equations  sum_k a_k x_k = b  over exact rationals.
class AffineSystem {
public:
  explicit AffineSystem(std::size_t unknowns) : unknowns_(unknowns) {}

  std::size_t unknowns() const { return unknowns_; }
  std::size_t equations() const { return rows_.size(); }

  void add_equation(SparseVec lhs, Rational rhs) {
    if (!lhs.empty() && lhs.entries().back().first >= unknowns_)
      throw InputError("equation references unknown out of range");
    rows_.push_back(std::move(lhs));
    rhs_.push_back(std::move(rhs));
  }

  /// One scalar equation per entry of a matrix-valued linear form:
  /// sum_k unknown_coeffs[k] * x_k = rhs.
  void add_matrix_equation(std::span<const QMatrix> unknown_coeffs,
                           const QMatrix &rhs) {
    if (unknown_coeffs.size() != unknowns_)
      throw InputError("matrix linear form has wrong number of unknowns");
    for (const auto &m : unknown_coeffs)
      if (m.rows() != rhs.rows() || m.cols() != rhs.cols())
        throw InputError("matrix linear form dimension mismatch");
    for (std::size_t r = 0; r < rhs.rows(); ++r)
      for (std::size_t c = 0; c < rhs.cols(); ++c) {
        std::vector<SparseVec::Entry> e;
        for (std::size_t k = 0; k < unknowns_; ++k)
          if (!is_zero(unknown_coeffs[k](r, c)))
            e.emplace_back(k, unknown_coeffs[k](r, c));
        if (e.empty() && is_zero(rhs(r, c)))
          continue;
        add_equation(SparseVec(std::move(e)), rhs(r, c));
      }
  }

  const std::vector<SparseVec> &lhs() const { return rows_; }
  const std::vector<Rational> &rhs() const { return rhs_; }

private:
  std::size_t unknowns_;
  std::vector<SparseVec> rows_;
  std::vector<Rational> rhs_;
};

struct AffineSolution {
  std::vector<Rational> particular;               ///< free unknowns set to 0
  std::vector<std::vector<Rational>> homogeneous; ///< basis of the kernel
  std::vector<std::size_t> free_unknowns;
  std::size_t rank = 0;
};

/// Certificate of inconsistency: multipliers y with y^T A = 0 and
/// y^T b = residual != 0.
struct Inconsistent {
  SparseVec witness;
  Rational residual;
};

using AffineOutcome = std::variant<AffineSolution, Inconsistent>;

struct SolveOptions {
  bool homogeneous_basis = true;
  bool track_witness = true;
};

/// Exact row reduction to echelon form followed by back substitution.
inline AffineOutcome solve_affine(const AffineSystem &system,
                                  SolveOptions options = {}) {
  struct PivotRow {
    SparseVec row; // leading entry is 1 and sits at the pivot column
    Rational rhs;
    SparseVec combo;
  };
  std::vector<PivotRow> pivots;
  std::map<std::size_t, std::size_t> pivot_of_column;

  for (std::size_t eq = 0; eq < system.equations(); ++eq) {
    SparseVec row = system.lhs()[eq];
    Rational rhs = system.rhs()[eq];
    SparseVec combo = options.track_witness ? SparseVec::unit(eq) : SparseVec{};
    while (!row.empty()) {
      auto it = pivot_of_column.find(row.front().first);
      if (it == pivot_of_column.end())
        break;
      const PivotRow &p = pivots[it->second];
      Rational f = -row.front().second;
      row.axpy(f, p.row);
      rhs += f * p.rhs;
      if (options.track_witness)
        combo.axpy(f, p.combo);
    }
    if (row.empty()) {
      if (!is_zero(rhs))
        return Inconsistent{std::move(combo), rhs};
      continue;
    }
    Rational inv = 1 / row.front().second;
    row.scale(inv);
    rhs *= inv;
    if (options.track_witness)
      combo.scale(inv);
    pivot_of_column.emplace(row.front().first, pivots.size());
    pivots.push_back({std::move(row), std::move(rhs), std::move(combo)});
  }

  const std::size_t n = system.unknowns();
  AffineSolution sol;
  sol.rank = pivots.size();
  std::vector<bool> is_pivot(n, false);
  for (const auto &[col, idx] : pivot_of_column)
    is_pivot[col] = true;
  for (std::size_t k = 0; k < n; ++k)
    if (!is_pivot[k])
      sol.free_unknowns.push_back(k);

  auto back_substitute = [&](std::vector<Rational> &x, bool homogeneous) {
    for (auto it = pivot_of_column.rbegin(); it != pivot_of_column.rend(); ++it) {
      const PivotRow &p = pivots[it->second];
      Rational v = homogeneous ? Rational(0) : p.rhs;
      for (const auto &[col, a] : p.row.entries())
        if (col != it->first && !is_zero(x[col]))
          v -= a * x[col];
      x[it->first] = std::move(v);
    }
  };

  sol.particular.assign(n, Rational(0));
  back_substitute(sol.particular, false);
  if (options.homogeneous_basis)
    for (std::size_t f : sol.free_unknowns) {
      std::vector<Rational> x(n, Rational(0));
      x[f] = 1;
      back_substitute(x, true);
      sol.homogeneous.push_back(std::move(x));
    }
  return sol;
}

} // namespace yangr
