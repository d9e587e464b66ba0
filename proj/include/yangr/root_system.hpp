#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "yangr/error.hpp"
#include "yangr/matrix.hpp"
#include "yangr/rational.hpp"

namespace yangr {

/// Element of the root lattice Q in simple-root coordinates.
using RootVec = std::vector<int>;

inline int height(const RootVec &v) { return std::accumulate(v.begin(), v.end(), 0); }

inline RootVec operator+(RootVec a, const RootVec &b) {
  for (std::size_t k = 0; k < a.size(); ++k)
    a[k] += b[k];
  return a;
}
inline RootVec operator-(RootVec a, const RootVec &b) {
  for (std::size_t k = 0; k < a.size(); ++k)
    a[k] -= b[k];
  return a;
}
inline RootVec operator*(int c, RootVec a) {
  for (auto &x : a)
    x *= c;
  return a;
}
inline bool is_nonnegative(const RootVec &v) {
  return std::all_of(v.begin(), v.end(), [](int x) { return x >= 0; });
}
inline bool is_zero_vec(const RootVec &v) {
  return std::all_of(v.begin(), v.end(), [](int x) { return x == 0; });
}
inline RootVec simple_root(std::size_t rank, std::size_t i) {
  RootVec v(rank, 0);
  v.at(i) = 1;
  return v;
}

/// Human-readable form, e.g. "a1+2a2"; nodes are printed 1-based.
inline std::string root_label(const RootVec &v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0)
      continue;
    if (!out.empty())
      out += v[i] > 0 ? "+" : "-";
    else if (v[i] < 0)
      out += "-";
    int c = std::abs(v[i]);
    if (c != 1)
      out += std::to_string(c);
    out += "a" + std::to_string(i + 1);
  }
  return out.empty() ? "0" : out;
}

class CartanMatrix {
public:
  CartanMatrix() = default;
  /// Validates the generalized Cartan conditions on construction.
  explicit CartanMatrix(std::vector<std::vector<int>> rows) : rows_(std::move(rows)) {
    if (rows_.empty())
      throw InputError("Cartan matrix must have positive rank");
    for (const auto &r : rows_)
      if (r.size() != rows_.size())
        throw InputError("Cartan matrix must be square");
    const std::size_t n = rows_.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j && rows_[i][j] != 2)
          throw InputError("Cartan matrix diagonal entry a[" + std::to_string(i + 1) +
                           "][" + std::to_string(i + 1) + "] must be 2");
        if (i != j && rows_[i][j] > 0)
          throw InputError("Cartan matrix off-diagonal entry a[" + std::to_string(i + 1) +
                           "][" + std::to_string(j + 1) + "] must be <= 0");
        if (i != j && ((rows_[i][j] == 0) != (rows_[j][i] == 0)))
          throw InputError("Cartan matrix zero pattern not symmetric at (" +
                           std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
      }
  }

  static CartanMatrix preset(const std::string &name) {
    if (name == "A1")
      return CartanMatrix(std::vector<std::vector<int>>{{2}});
    if (name == "A2")
      return CartanMatrix({{2, -1}, {-1, 2}});
    if (name == "B2")
      return CartanMatrix({{2, -2}, {-1, 2}});
    if (name == "G2")
      return CartanMatrix({{2, -3}, {-1, 2}});
    throw InputError("unknown Cartan preset '" + name + "' (expected A1, A2, B2, G2)");
  }
  /// Rank-2 matrix [[2,-p],[-1,2]]: node 1 short, d = (1, p).
  static CartanMatrix rank2(int p) { return CartanMatrix({{2, -p}, {-1, 2}}); }

  std::size_t rank() const { return rows_.size(); }
  int operator()(std::size_t i, std::size_t j) const { return rows_[i][j]; }
  const std::vector<std::vector<int>> &rows() const { return rows_; }
  friend bool operator==(const CartanMatrix &, const CartanMatrix &) = default;

private:
  std::vector<std::vector<int>> rows_;
};

namespace detail {

/// Determinant by Gaussian elimination over Q.
inline Rational determinant(std::vector<std::vector<Rational>> m) {
  const std::size_t n = m.size();
  Rational det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && is_zero(m[p][c]))
      ++p;
    if (p == n)
      return Rational(0);
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (is_zero(m[r][c]))
        continue;
      Rational f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k)
        m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

} // namespace detail

/// Symmetrizers d_i with d_i a_ij = d_j a_ji, normalized per connected
/// component to coprime positive integers so that short roots have
/// (alpha, alpha) = 2.
inline std::vector<int> symmetrizers(const CartanMatrix &a) {
  const std::size_t n = a.rank();
  std::vector<std::optional<Rational>> d(n);
  std::vector<std::vector<std::size_t>> components;
  for (std::size_t start = 0; start < n; ++start) {
    if (d[start])
      continue;
    components.emplace_back();
    d[start] = Rational(1);
    std::vector<std::size_t> stack{start};
    while (!stack.empty()) {
      std::size_t i = stack.back();
      stack.pop_back();
      components.back().push_back(i);
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || a(i, j) == 0)
          continue;
        Rational dj = *d[i] * a(i, j) / a(j, i);
        if (!d[j]) {
          d[j] = dj;
          stack.push_back(j);
        } else if (*d[j] != dj) {
          throw InputError("Cartan matrix is not symmetrizable: d_" +
                           std::to_string(i + 1) + " a_" + std::to_string(i + 1) +
                           std::to_string(j + 1) + " != d_" + std::to_string(j + 1) +
                           " a_" + std::to_string(j + 1) + std::to_string(i + 1) +
                           " around a cycle");
        }
      }
    }
  }
  std::vector<int> out(n);
  for (const auto &comp : components) {
    mpz_class den_lcm(1), num_gcd(0);
    for (std::size_t i : comp)
      den_lcm = lcm(den_lcm, d[i]->get_den());
    for (std::size_t i : comp) {
      Rational scaled = *d[i] * den_lcm;
      num_gcd = gcd(num_gcd, scaled.get_num());
    }
    for (std::size_t i : comp) {
      Rational scaled = *d[i] * den_lcm / num_gcd;
      out[i] = static_cast<int>(scaled.get_num().get_si());
    }
  }
  return out;
}

/// Throws naming the first non-positive leading principal minor of the
/// symmetrized matrix d_i a_ij.
inline void require_finite_type(const CartanMatrix &a, const std::vector<int> &d) {
  const std::size_t n = a.rank();
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<std::vector<Rational>> m(k, std::vector<Rational>(k));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        m[i][j] = Rational(d[i] * a(i, j));
    Rational det = detail::determinant(std::move(m));
    if (sgn(det) <= 0)
      throw InputError("Cartan matrix is not of finite type: leading principal minor " +
                       std::to_string(k) + " of the symmetrized matrix is " +
                       to_string(det));
  }
}

class RootSystem {
public:
  const CartanMatrix &cartan() const { return cartan_; }
  std::size_t rank() const { return cartan_.rank(); }
  const std::vector<int> &d() const { return d_; }
  const std::vector<RootVec> &positive_roots() const { return roots_; }

  /// (alpha_i, alpha_j) = d_i a_ij extended bilinearly.
  int pairing(const RootVec &x, const RootVec &y) const {
    int acc = 0;
    for (std::size_t i = 0; i < rank(); ++i)
      for (std::size_t j = 0; j < rank(); ++j)
        acc += x[i] * y[j] * d_[i] * cartan_(i, j);
    return acc;
  }
  /// <x, alpha_i^vee> = sum_j x_j a_ij.
  int coroot_pairing(const RootVec &x, std::size_t i) const {
    int acc = 0;
    for (std::size_t j = 0; j < rank(); ++j)
      acc += x[j] * cartan_(i, j);
    return acc;
  }
  bool is_positive_root(const RootVec &v) const {
    return std::binary_search(sorted_.begin(), sorted_.end(), v);
  }
  std::optional<std::size_t> index_of(const RootVec &v) const {
    auto it = std::find(roots_.begin(), roots_.end(), v);
    if (it == roots_.end())
      return std::nullopt;
    return static_cast<std::size_t>(it - roots_.begin());
  }
  /// Image of a root-lattice element in Dynkin-label coordinates x(h_k).
  std::vector<int> to_dynkin(const RootVec &v) const {
    std::vector<int> out(rank(), 0);
    for (std::size_t k = 0; k < rank(); ++k)
      out[k] = coroot_pairing(v, k);
    return out;
  }
  /// Simple reflection s_i acting on root-lattice coordinates.
  RootVec reflect(std::size_t i, RootVec v) const {
    v[i] -= coroot_pairing(v, i);
    return v;
  }

  friend RootSystem build_root_system(const CartanMatrix &cartan);

private:
  CartanMatrix cartan_;
  std::vector<int> d_;
  std::vector<RootVec> roots_;
  std::vector<RootVec> sorted_;
};

/// Positive roots by closure under adding simple roots, using root-string
/// lengths; output ordered by height, ties with alpha_1-heavy roots first.
inline RootSystem build_root_system(const CartanMatrix &cartan) {
  RootSystem rs;
  rs.cartan_ = cartan;
  rs.d_ = symmetrizers(cartan);
  require_finite_type(cartan, rs.d_);
  const std::size_t n = cartan.rank();

  std::set<RootVec> found;
  std::vector<RootVec> layer;
  for (std::size_t i = 0; i < n; ++i) {
    layer.push_back(simple_root(n, i));
    found.insert(layer.back());
  }
  std::vector<RootVec> all;
  while (!layer.empty()) {
    std::sort(layer.begin(), layer.end(), std::greater<>());
    all.insert(all.end(), layer.begin(), layer.end());
    std::set<RootVec> next;
    for (const auto &beta : layer)
      for (std::size_t i = 0; i < n; ++i) {
        int p = 0;
        RootVec down = beta;
        while (true) {
          down[i] -= 1;
          if (!found.count(down))
            break;
          ++p;
        }
        int q = p - rs.coroot_pairing(beta, i);
        if (q > 0) {
          RootVec up = beta;
          up[i] += 1;
          next.insert(up);
        }
      }
    layer.assign(next.begin(), next.end());
    for (const auto &v : layer)
      found.insert(v);
    if (all.size() > 1000)
      throw InputError("root enumeration did not terminate; Cartan matrix is not finite type");
  }
  rs.roots_ = std::move(all);
  rs.sorted_ = rs.roots_;
  std::sort(rs.sorted_.begin(), rs.sorted_.end());
  return rs;
}

/// Evaluates alpha(h) for h = sum_i c_i d_i h_i, using alpha_j(d_i h_i) = d_i a_ij.
inline Rational root_eval(const RootSystem &rs, const RootVec &alpha,
                          std::span<const Rational> h) {
  if (alpha.size() != rs.rank() || h.size() != rs.rank())
    throw InputError("root_eval: coordinate length does not match rank " +
                     std::to_string(rs.rank()));
  Rational acc(0);
  for (std::size_t i = 0; i < rs.rank(); ++i) {
    if (is_zero(h[i]))
      continue;
    int col = 0;
    for (std::size_t j = 0; j < rs.rank(); ++j)
      col += alpha[j] * rs.d()[i] * rs.cartan()(i, j);
    acc += h[i] * col;
  }
  return acc;
}

/// Total order on the positive roots together with the simple-root pair
/// (i, j) certifying alpha_i < alpha_i+alpha_j < alpha_j with
/// alpha_i + l alpha_j not a root for l >= 2. Indices are 0-based.
struct ConvexOrder {
  std::vector<RootVec> sequence;
  std::pair<std::size_t, std::size_t> anchor{0, 0};

  std::size_t position(const RootVec &v) const {
    auto it = std::find(sequence.begin(), sequence.end(), v);
    if (it == sequence.end())
      throw DomainError("root " + root_label(v) + " is not in the order");
    return static_cast<std::size_t>(it - sequence.begin());
  }
};

/// True iff every alpha, beta with alpha+beta a root has the sum strictly
/// between them.
inline bool is_convex(const RootSystem &rs, const std::vector<RootVec> &sequence) {
  for (std::size_t a = 0; a < sequence.size(); ++a)
    for (std::size_t b = a + 1; b < sequence.size(); ++b) {
      RootVec sum = sequence[a] + sequence[b];
      if (!rs.is_positive_root(sum))
        continue;
      auto it = std::find(sequence.begin(), sequence.end(), sum);
      auto pos = static_cast<std::size_t>(it - sequence.begin());
      if (!(a < pos && pos < b))
        return false;
    }
  return true;
}

inline bool is_admissible_anchor(const RootSystem &rs, std::size_t i, std::size_t j) {
  const std::size_t n = rs.rank();
  if (i == j)
    return false;
  RootVec ai = simple_root(n, i), aj = simple_root(n, j);
  if (!rs.is_positive_root(ai + aj))
    return false;
  // root strings are unbroken, but check every l up to the maximal string length
  for (int l = 2; l <= 4; ++l)
    if (rs.is_positive_root(ai + l * aj))
      return false;
  return true;
}

/// Convex order satisfying the anchor condition: the anchor is the
/// lexicographically first admissible pair (i, j), and the order is the one
/// attached to the greedy reduced word of the longest Weyl element starting
/// with s_i. For B2 and G2 this is the order alpha_1 < ... < alpha_2 with
/// alpha_1 short.
inline ConvexOrder kt_order(const RootSystem &rs) {
  const std::size_t n = rs.rank();
  if (n < 2)
    throw DomainError("no admissible anchor: rank must be at least 2");
  std::optional<std::pair<std::size_t, std::size_t>> anchor;
  for (std::size_t i = 0; i < n && !anchor; ++i)
    for (std::size_t j = 0; j < n && !anchor; ++j)
      if (is_admissible_anchor(rs, i, j))
        anchor = std::make_pair(i, j);
  if (!anchor)
    throw DomainError("no admissible anchor: no simple roots alpha_i, alpha_j "
                      "with alpha_i+alpha_j a root");

  // w = s_{i_1} ... s_{i_k}; apply to a vector right-to-left
  std::vector<std::size_t> word;
  auto act = [&](RootVec v) {
    for (auto it = word.rbegin(); it != word.rend(); ++it)
      v = rs.reflect(*it, std::move(v));
    return v;
  };
  ConvexOrder order;
  order.anchor = *anchor;
  const std::size_t total = rs.positive_roots().size();
  while (order.sequence.size() < total) {
    std::optional<std::size_t> next;
    if (word.empty())
      next = anchor->first;
    else
      for (std::size_t s = 0; s < n && !next; ++s) {
        RootVec img = act(simple_root(n, s));
        if (is_nonnegative(img))
          next = s;
      }
    if (!next)
      throw DomainError("failed to extend reduced word of the longest element");
    order.sequence.push_back(act(simple_root(n, *next)));
    word.push_back(*next);
  }
  return order;
}

/// Multiplicities k_alpha aligned with the root sequence used to enumerate.
struct Partition {
  std::vector<int> multiplicity;
  int parts() const { return std::accumulate(multiplicity.begin(), multiplicity.end(), 0); }
  friend bool operator==(const Partition &, const Partition &) = default;
};

/// All ways of writing gamma as a nonnegative combination of the roots in
/// `sequence`, in increasing lexicographic order of multiplicity vectors.
inline std::vector<Partition> partitions(const std::vector<RootVec> &sequence,
                                         const RootVec &gamma) {
  if (!is_nonnegative(gamma))
    throw InputError("partitions: target " + root_label(gamma) + " is not in Q+");
  std::vector<Partition> out;
  Partition current{std::vector<int>(sequence.size(), 0)};
  auto recurse = [&](auto &&self, std::size_t idx, const RootVec &rest) -> void {
    if (idx == sequence.size()) {
      if (is_zero_vec(rest))
        out.push_back(current);
      return;
    }
    RootVec r = rest;
    for (int k = 0;; ++k) {
      current.multiplicity[idx] = k;
      self(self, idx + 1, r);
      r = r - sequence[idx];
      if (!is_nonnegative(r))
        break;
    }
    current.multiplicity[idx] = 0;
  };
  // enumerate with k ascending at each leading position -> lex order
  recurse(recurse, 0, gamma);
  return out;
}

inline std::vector<Partition> partitions(const RootSystem &rs, const RootVec &gamma) {
  return partitions(rs.positive_roots(), gamma);
}

/// Minimal number of positive roots summing to gamma; nu(0) = 0.
inline int nu(const RootSystem &rs, const RootVec &gamma) {
  if (is_zero_vec(gamma))
    return 0;
  auto parts = partitions(rs, gamma);
  if (parts.empty())
    throw DomainError("not in the partition semigroup: " + root_label(gamma));
  int best = parts.front().parts();
  for (const auto &p : parts)
    best = std::min(best, p.parts());
  return best;
}

/// All gamma in Q+ of height between 0 and max_height, by height then
/// descending lexicographic order.
inline std::vector<RootVec> lattice_points_up_to(std::size_t rank, int max_height) {
  std::vector<RootVec> out;
  RootVec cur(rank, 0);
  auto recurse = [&](auto &&self, std::size_t idx, int budget) -> void {
    if (idx == rank) {
      out.push_back(cur);
      return;
    }
    for (int c = 0; c <= budget; ++c) {
      cur[idx] = c;
      self(self, idx + 1, budget - c);
    }
    cur[idx] = 0;
  };
  recurse(recurse, 0, max_height);
  std::sort(out.begin(), out.end(), [](const RootVec &a, const RootVec &b) {
    int ha = height(a), hb = height(b);
    return ha != hb ? ha < hb : a > b;
  });
  return out;
}

} // namespace yangr
