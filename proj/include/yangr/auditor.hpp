#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "yangr/rminus.hpp"

namespace yangr {

/// Factor families J^(alpha)_n(s) along a convex order; J^(alpha)_0 = 1 is implicit.
struct FactorBlocks {
  ConvexOrder order;
  std::size_t N = 0;
  std::size_t dim = 0;
  std::map<std::pair<RootVec, int>, MatrixSeries> J;

  const MatrixSeries *find(const RootVec &alpha, int n) const {
    auto it = J.find({alpha, n});
    return it == J.end() ? nullptr : &it->second;
  }
};

inline std::string factor_label(const RootVec &alpha, int n) {
  return "J^(" + root_label(alpha) + ")_" + std::to_string(n);
}

/// F_gamma(s) = sum over partitions k of gamma of the ordered product of
/// J^(alpha)_{k_alpha}(s) along the convex order.
inline MatrixSeries expand_product(const FactorBlocks &fb, const RootVec &gamma) {
  const QMatrix like(fb.dim, fb.dim);
  MatrixSeries total(fb.N, like);
  std::vector<std::string> missing;
  for (const auto &part : partitions(fb.order.sequence, gamma)) {
    MatrixSeries prod = MatrixSeries::one(fb.N, like);
    bool complete = true;
    for (std::size_t k = 0; k < fb.order.sequence.size(); ++k) {
      const int mult = part.multiplicity[k];
      if (mult == 0)
        continue;
      const MatrixSeries *j = fb.find(fb.order.sequence[k], mult);
      if (!j) {
        missing.push_back(factor_label(fb.order.sequence[k], mult));
        complete = false;
        continue;
      }
      prod = series_mul(prod, *j);
    }
    if (complete)
      total += prod;
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto &m : missing)
      list += (list.empty() ? "" : ", ") + m;
    throw DomainError("factor blocks not forced for " + root_label(gamma) + ": " + list);
  }
  return total;
}

inline void require_anchor(const RootSystem &rs, const ConvexOrder &order) {
  auto [i, j] = order.anchor;
  const std::size_t n = rs.rank();
  if (n < 2 || !is_admissible_anchor(rs, i, j))
    throw DomainError("order has no admissible anchor");
  RootVec ai = simple_root(n, i), aj = simple_root(n, j);
  if (!(order.position(ai) < order.position(ai + aj) &&
        order.position(ai + aj) < order.position(aj)))
    throw DomainError("anchor roots are not ordered alpha_i < alpha_i+alpha_j < alpha_j");
}

/// Blocks forced by a factorized ansatz along `order`:
///   J^(alpha_k)_n = R_{n alpha_k},   J^(alpha_i+alpha_j)_1 = R_{alpha_i+alpha_j} - J^(alpha_i)_1 J^(alpha_j)_1.
/// In rank 1 only the simple line is forced and no anchor is needed.
inline FactorBlocks forced_factor_blocks(const RMinusBlocks &b, const ConvexOrder &order) {
  const RootSystem &rs = b.rs();
  const std::size_t n = rs.rank();
  if (n >= 2)
    require_anchor(rs, order);
  FactorBlocks fb{order, b.N, b.ctx.dim(), {}};
  for (std::size_t k = 0; k < n; ++k)
    for (int m = 1; m <= b.H; ++m) {
      RootVec line = m * simple_root(n, k);
      auto it = b.blocks.find(line);
      if (it != b.blocks.end())
        fb.J.emplace(std::make_pair(simple_root(n, k), m), it->second);
    }
  if (n >= 2) {
    auto [i, j] = order.anchor;
    RootVec ai = simple_root(n, i), aj = simple_root(n, j);
    auto it = b.blocks.find(ai + aj);
    if (it != b.blocks.end())
      fb.J.emplace(std::make_pair(ai + aj, 1),
                   it->second - series_mul(*fb.find(ai, 1), *fb.find(aj, 1)));
  }
  return fb;
}

inline MatrixSeries factorization_residual(const RMinusBlocks &b, const ConvexOrder &order,
                                           const RootVec &gamma) {
  FactorBlocks fb = forced_factor_blocks(b, order);
  return b.at(gamma) - expand_product(fb, gamma);
}

enum class Verdict { certified_nonzero, inconclusive, vacuous };

inline std::string to_string(Verdict v) {
  return v == Verdict::certified_nonzero ? "certified-nonzero"
         : v == Verdict::inconclusive    ? "inconclusive"
                                         : "vacuous";
}

struct ContraResult {
  Verdict verdict = Verdict::vacuous;
  bool nonzero = false;
  bool matches_expected = false;     ///< equals -2 p hbar x-_{ij} x-_{j,0} ⊗ x+_{ij} x+_{j,0}
  bool matches_simple_block = false; ///< second argument equals R_{alpha_j} at s^-2 divided by hbar
  int p = 0;
  Rational max_abs;
  QMatrix commutator;
};

/// [x-_{ij,0} ⊗ x+_{ij,0}, x-_{j,0} ⊗ x+_{j,1} - x-_{j,1} ⊗ x+_{j,0}] on V ⊗ W.
inline ContraResult contra_commutator(const RMinusBlocks &b, const ConvexOrder &order) {
  const TensorContext &ctx = b.ctx;
  const RootSystem &rs = ctx.rs();
  ContraResult out;
  if (rs.rank() < 2)
    return out;
  require_anchor(rs, order);
  auto [i, j] = order.anchor;
  const std::size_t n = rs.rank();
  const std::size_t k = *rs.index_of(simple_root(n, i) + simple_root(n, j));
  const QMatrix &xm_ij = ctx.left_roots.minus[k];
  const QMatrix &xp_ij = ctx.right_roots.plus[k];
  const QMatrix a = kron(xm_ij, xp_ij);
  const QMatrix second =
      kron(ctx.left.gen(GenKind::minus, j, 0), ctx.right.gen(GenKind::plus, j, 1)) -
      kron(ctx.left.gen(GenKind::minus, j, 1), ctx.right.gen(GenKind::plus, j, 0));
  out.commutator = commutator(a, second);
  out.p = -rs.cartan()(i, j);
  const QMatrix expected = Rational(-2 * out.p) * ctx.hbar() *
                           kron(xm_ij * ctx.left.gen(GenKind::minus, j, 0),
                                xp_ij * ctx.right.gen(GenKind::plus, j, 0));
  out.matches_expected = out.commutator == expected;
  auto it = b.blocks.find(simple_root(n, j));
  if (it != b.blocks.end() && b.N >= 2)
    out.matches_simple_block = (Rational(1) / ctx.hbar()) * it->second[2] == second;
  out.nonzero = !out.commutator.is_zero();
  out.max_abs = max_abs(out.commutator);
  out.verdict = out.nonzero ? Verdict::certified_nonzero : Verdict::inconclusive;
  return out;
}

struct ResidualSummary {
  RootVec gamma;
  bool computed = false;
  bool nonzero = false;
  std::optional<std::size_t> first_nonzero_order;
  std::string note;
};

struct ForcedSummary {
  RootVec root;
  int n = 0;
  std::optional<std::size_t> first_nonzero_order;
};

struct AuditReport {
  std::optional<std::pair<std::size_t, std::size_t>> anchor;
  std::vector<ForcedSummary> forced;
  std::vector<ResidualSummary> residuals;
  ContraResult contra;
  Verdict verdict = Verdict::vacuous;
};

/// Audit along `order`; gammas default to alpha_i + 2 alpha_j and 2 alpha_i + alpha_j.
/// A nonzero residual certifies that no factorized ansatz along the order
/// solves the recursion; a zero residual proves nothing.
inline AuditReport audit_factorization(const RMinusBlocks &b, const ConvexOrder &order,
                                       std::vector<RootVec> gammas = {}) {
  AuditReport report;
  const RootSystem &rs = b.rs();
  const std::size_t n = rs.rank();
  if (n < 2)
    return report;
  report.anchor = order.anchor;
  auto [i, j] = order.anchor;
  const RootVec ai = simple_root(n, i), aj = simple_root(n, j);
  if (gammas.empty())
    gammas = {ai + 2 * aj, 2 * ai + aj};
  FactorBlocks fb = forced_factor_blocks(b, order);
  for (const auto &[key, series] : fb.J)
    report.forced.push_back({key.first, key.second, series.first_nonzero()});
  bool any_nonzero = false;
  for (const auto &gamma : gammas) {
    ResidualSummary s{gamma, false, false, std::nullopt, {}};
    if (!b.blocks.count(gamma)) {
      s.note = "height of " + root_label(gamma) + " exceeds the computed range";
    } else {
      try {
        MatrixSeries res = b.at(gamma) - expand_product(fb, gamma);
        s.computed = true;
        s.first_nonzero_order = res.first_nonzero();
        s.nonzero = s.first_nonzero_order.has_value();
        any_nonzero = any_nonzero || s.nonzero;
      } catch (const DomainError &e) {
        s.note = e.what();
      }
    }
    report.residuals.push_back(std::move(s));
  }
  report.contra = contra_commutator(b, order);
  report.verdict = any_nonzero && report.contra.nonzero ? Verdict::certified_nonzero
                                                        : Verdict::inconclusive;
  return report;
}

} // namespace yangr
