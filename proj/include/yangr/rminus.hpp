#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "yangr/error.hpp"
#include "yangr/rep.hpp"
#include "yangr/root_system.hpp"
#include "yangr/series.hpp"

namespace yangr {

/// Which coweight h = d_j h_j the solver uses for the block gamma.
enum class HPolicy {
  first_nonzero, ///< smallest j with gamma(d_j h_j) != 0
  last_nonzero,  ///< largest such j
};

inline std::vector<Rational> choose_h(const RootSystem &rs, const RootVec &gamma, HPolicy policy) {
  const std::size_t n = rs.rank();
  std::vector<Rational> h(n, Rational(0));
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = policy == HPolicy::first_nonzero ? k : n - 1 - k;
    h[j] = 1;
    if (!is_zero(root_eval(rs, gamma, h)))
      return h;
    h[j] = 0;
  }
  throw DomainError("no basis coweight h with gamma(h) != 0 for gamma = " + root_label(gamma));
}

/// Weight blocks R-_gamma(s) on V ⊗ W for all gamma of height <= H, as full
/// matrices on V ⊗ W truncated at s^-N.
struct RMinusBlocks {
  TensorContext ctx;
  int H = 0;
  std::size_t N = 0;
  std::map<RootVec, MatrixSeries> blocks;
  std::map<RootVec, std::vector<Rational>> h_used;

  const MatrixSeries &at(const RootVec &gamma) const {
    auto it = blocks.find(gamma);
    if (it == blocks.end())
      throw InputError("no block computed for gamma = " + root_label(gamma));
    return it->second;
  }
  const RootSystem &rs() const { return ctx.rs(); }
};

namespace detail {

/// x-_alpha ⊗ x+_alpha for each positive root, in RootSystem order.
inline std::vector<QMatrix> root_tensors(const TensorContext &ctx) {
  std::vector<QMatrix> out;
  for (std::size_t k = 0; k < ctx.left_roots.roots.size(); ++k)
    out.push_back(kron(ctx.left_roots.minus[k], ctx.right_roots.plus[k]));
  return out;
}

inline QMatrix total_T(const TensorContext &ctx, std::span<const Rational> h) {
  return kron(T_matrix(ctx.left, h), QMatrix::identity(ctx.right.dim)) +
         kron(QMatrix::identity(ctx.left.dim), T_matrix(ctx.right, h));
}

/// s^-m coefficient of -hbar sum_alpha alpha(h) R_{gamma-alpha}(s) (x-_alpha ⊗ x+_alpha).
inline QMatrix recursion_rhs(const TensorContext &ctx, const std::vector<QMatrix> &tensors,
                             const std::map<RootVec, MatrixSeries> &blocks,
                             const RootVec &gamma, std::span<const Rational> h, std::size_t m) {
  QMatrix out(ctx.dim(), ctx.dim());
  for (std::size_t k = 0; k < ctx.left_roots.roots.size(); ++k) {
    const RootVec &alpha = ctx.left_roots.roots[k];
    RootVec rest = gamma - alpha;
    if (!is_nonnegative(rest))
      continue;
    Rational c = root_eval(ctx.rs(), alpha, h);
    if (is_zero(c))
      continue;
    auto it = blocks.find(rest);
    if (it == blocks.end())
      throw InputError("missing block " + root_label(rest));
    const QMatrix &prev = it->second[m];
    if (prev.is_zero())
      continue;
    out.add_scaled(-ctx.hbar() * c, prev * tensors[k]);
  }
  return out;
}

} // namespace detail

/// Solves the intertwining recursion by increasing height:
///   R_{gamma,m+1} = (Theta R_{gamma,m} - RHS_{gamma,m}) / gamma(h),  R_{gamma,0} = 0,
/// with Theta = ad(T(h) ⊗ 1 + 1 ⊗ T(h)) and R_0 = 1 ⊗ 1.
inline RMinusBlocks solve_rminus(const TensorContext &ctx, int H, std::size_t N,
                                 HPolicy policy = HPolicy::first_nonzero) {
  if (H < 1)
    throw InputError("height bound H must be at least 1");
  if (N < 1)
    throw InputError("series order N must be at least 1");
  if (ctx.left.R < static_cast<int>(N) || ctx.right.R < static_cast<int>(N))
    throw InputError("loop cutoff of both representations must be at least the series order " +
                     std::to_string(N));
  RMinusBlocks out{ctx, H, N, {}, {}};
  const std::size_t dim = ctx.dim();
  const QMatrix like(dim, dim);
  const auto tensors = detail::root_tensors(ctx);
  for (const auto &gamma : lattice_points_up_to(ctx.rs().rank(), H)) {
    if (is_zero_vec(gamma)) {
      out.blocks.emplace(gamma, MatrixSeries::one(N, like));
      continue;
    }
    const auto h = choose_h(ctx.rs(), gamma, policy);
    const Rational inv = Rational(1) / root_eval(ctx.rs(), gamma, h);
    const QMatrix T = detail::total_T(ctx, h);
    MatrixSeries series(N, like);
    for (std::size_t m = 0; m < N; ++m) {
      QMatrix next = commutator(T, series[m]);
      next -= detail::recursion_rhs(ctx, tensors, out.blocks, gamma, h, m);
      next *= inv;
      series[m + 1] = std::move(next);
    }
    out.blocks.emplace(gamma, std::move(series));
    out.h_used.emplace(gamma, h);
  }
  return out;
}

struct ResidualEntry {
  RootVec gamma;
  std::size_t h_index = 0; ///< basis coweight d_j h_j, 0-based j
  int order = 0;           ///< power m of s^-m; -1 for the s^1 term
  Rational max_abs;
};

struct IntertwiningReport {
  std::size_t checked = 0;
  std::vector<ResidualEntry> nonzero;
  bool ok() const { return nonzero.empty(); }
};

/// Evaluates, for every basis coweight h and every computed gamma != 0, the
/// coefficients of s^1, s^0, ..., s^-(N-1) in
///   [T(h) ⊗ 1 + 1 ⊗ T(h), R_gamma] + s [H ⊗ 1, R_gamma] - sum_alpha R_{gamma-alpha} r-_alpha(h),
/// where H = sum_i c_i xi_{i,0} is the level-0 image of h.
inline IntertwiningReport verify_intertwining(const RMinusBlocks &b) {
  const TensorContext &ctx = b.ctx;
  const std::size_t n = ctx.rs().rank();
  const auto tensors = detail::root_tensors(ctx);
  IntertwiningReport report;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Rational> h(n, Rational(0));
    h[j] = 1;
    const QMatrix T = detail::total_T(ctx, h);
    QMatrix Hl(ctx.left.dim, ctx.left.dim);
    for (std::size_t i = 0; i < n; ++i)
      Hl.add_scaled(h[i], ctx.left.gen(GenKind::cartan, i, 0));
    const QMatrix H1 = kron(Hl, QMatrix::identity(ctx.right.dim));
    for (const auto &[gamma, series] : b.blocks) {
      if (is_zero_vec(gamma))
        continue;
      auto record = [&](int order, const QMatrix &m) {
        ++report.checked;
        if (!m.is_zero())
          report.nonzero.push_back({gamma, j, order, max_abs(m)});
      };
      record(-1, commutator(H1, series[0]));
      for (std::size_t m = 0; m < b.N; ++m) {
        QMatrix res = commutator(T, series[m]) + commutator(H1, series[m + 1]);
        res -= detail::recursion_rhs(ctx, tensors, b.blocks, gamma, h, m);
        record(static_cast<int>(m), res);
      }
    }
  }
  return report;
}

struct BlockIssue {
  RootVec gamma;
  std::size_t order = 0;
};

/// Coefficients s^-m with m < nu(gamma) that fail to vanish.
inline std::vector<BlockIssue> divisibility_violations(const RMinusBlocks &b) {
  std::vector<BlockIssue> out;
  for (const auto &[gamma, series] : b.blocks) {
    if (is_zero_vec(gamma))
      continue;
    const int v = nu(b.rs(), gamma);
    for (std::size_t m = 0; m < static_cast<std::size_t>(v) && m <= b.N; ++m)
      if (!series[m].is_zero())
        out.push_back({gamma, m});
  }
  return out;
}

/// Coefficients with entries outside the (-gamma, gamma) weight block.
inline std::vector<BlockIssue> support_violations(const RMinusBlocks &b) {
  std::vector<BlockIssue> out;
  for (const auto &[gamma, series] : b.blocks)
    for (std::size_t m = 0; m <= b.N; ++m) {
      const QMatrix &c = series[m];
      bool bad = false;
      for (std::size_t r = 0; r < c.rows() && !bad; ++r)
        for (std::size_t k = 0; k < c.cols() && !bad; ++k)
          bad = !is_zero(c(r, k)) && !b.ctx.in_block(gamma, r, k);
      if (bad)
        out.push_back({gamma, m});
    }
  return out;
}

/// sum_n x-_{k,n} ⊗ d_s^(n) x+_k(s) with x+_k(s) = hbar sum_r x+_{k,r} s^-(r+1),
/// truncated at s^-N. Rank 1 only.
inline MatrixSeries sl2_closed_form(const TensorContext &ctx, std::size_t N) {
  if (ctx.rs().rank() != 1)
    throw DomainError("sl2_closed_form needs rank 1, got rank " + std::to_string(ctx.rs().rank()));
  if (N < 1 || ctx.left.R + 1 < static_cast<int>(N) || ctx.right.R + 1 < static_cast<int>(N))
    throw InputError("sl2_closed_form: loop cutoff too small for order " + std::to_string(N));
  const std::size_t dim = ctx.dim();
  MatrixSeries out(N, QMatrix(dim, dim));
  for (std::size_t m = 1; m <= N; ++m)
    for (std::size_t nder = 0; nder + 1 <= m; ++nder) {
      const std::size_t r = m - 1 - nder;
      Rational c = ctx.hbar() * binomial(static_cast<std::int64_t>(r + nder),
                                         static_cast<std::int64_t>(nder));
      if (nder % 2 == 1)
        c = -c;
      out[m].add_scaled(c, kron(ctx.left.gen(GenKind::minus, 0, static_cast<int>(nder)),
                                ctx.right.gen(GenKind::plus, 0, static_cast<int>(r))));
    }
  return out;
}

} // namespace yangr
