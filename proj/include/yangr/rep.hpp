#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "yangr/affine.hpp"
#include "yangr/error.hpp"
#include "yangr/freealg.hpp"
#include "yangr/matrix.hpp"
#include "yangr/rational.hpp"
#include "yangr/root_system.hpp"

namespace yangr {

using freealg::GenKind;

/// Seed data of a representation: a level-0 g-module plus xi_{i,1}.
/// Weights are Dynkin labels mu(h_i) of each basis vector.
struct RepSpec {
  std::string name;
  RootSystem rs;
  std::size_t dim = 0;
  std::vector<std::vector<int>> weights;
  std::vector<QMatrix> xi0, xplus0, xminus0;
  std::optional<std::vector<QMatrix>> xi1;
  Rational hbar{1}; ///< value of hbar that the xi1 data solves
};

namespace detail {

inline std::string gen_name(GenKind kind, std::size_t node, int loop) {
  return freealg::to_string(freealg::GenSymbol{kind, static_cast<int>(node), loop});
}

/// Q-grading check: entry (r, c) of a matrix of weight `shift` may be
/// nonzero only when weights[r] = weights[c] + shift.
inline std::optional<std::string> grading_error(const QMatrix &m,
                                                const std::vector<std::vector<int>> &weights,
                                                const std::vector<int> &shift) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (is_zero(m(r, c)))
        continue;
      for (std::size_t k = 0; k < shift.size(); ++k)
        if (weights[r][k] != weights[c][k] + shift[k])
          return "entry (" + std::to_string(r + 1) + "," + std::to_string(c + 1) +
                 ") breaks the weight grading";
    }
  return std::nullopt;
}

inline std::vector<int> kind_shift(const RootSystem &rs, GenKind kind, std::size_t node) {
  std::vector<int> zero(rs.rank(), 0);
  if (kind == GenKind::cartan)
    return zero;
  std::vector<int> s = rs.to_dynkin(simple_root(rs.rank(), node));
  if (kind == GenKind::minus)
    for (auto &x : s)
      x = -x;
  return s;
}

} // namespace detail

/// Throws InputError unless the level-0 data is a weight module for g.
inline void validate_level0(const RepSpec &spec) {
  const RootSystem &rs = spec.rs;
  const std::size_t n = rs.rank();
  const std::size_t dim = spec.dim;
  if (dim == 0)
    throw InputError("representation dimension must be positive");
  if (spec.weights.size() != dim)
    throw InputError("expected " + std::to_string(dim) + " weights, got " +
                     std::to_string(spec.weights.size()));
  for (const auto &w : spec.weights)
    if (w.size() != n)
      throw InputError("weight of wrong length; expected " + std::to_string(n) + " labels");
  auto check_family = [&](const std::vector<QMatrix> &family, const char *what) {
    if (family.size() != n)
      throw InputError(std::string(what) + ": expected " + std::to_string(n) + " matrices");
    for (const auto &m : family)
      if (m.rows() != dim || m.cols() != dim)
        throw InputError(std::string(what) + ": matrix is " + m.shape() + ", expected " +
                         std::to_string(dim) + "x" + std::to_string(dim));
  };
  check_family(spec.xi0, "xi0");
  check_family(spec.xplus0, "xplus0");
  check_family(spec.xminus0, "xminus0");
  if (spec.xi1)
    check_family(*spec.xi1, "xi1");

  for (std::size_t i = 0; i < n; ++i) {
    const QMatrix &h = spec.xi0[i];
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c) {
        Rational expect = r == c ? Rational(rs.d()[i] * spec.weights[r][i]) : Rational(0);
        if (h(r, c) != expect)
          throw InputError("xi_{" + std::to_string(i + 1) +
                           ",0} must be diagonal with eigenvalue d_i * mu(h_i) on basis vector " +
                           std::to_string(r + 1));
      }
    for (GenKind kind : {GenKind::plus, GenKind::minus}) {
      const QMatrix &x = kind == GenKind::plus ? spec.xplus0[i] : spec.xminus0[i];
      if (auto err = detail::grading_error(x, spec.weights, detail::kind_shift(rs, kind, i)))
        throw InputError(detail::gen_name(kind, i, 0) + ": " + *err);
    }
    if (spec.xi1)
      if (auto err = detail::grading_error((*spec.xi1)[i], spec.weights,
                                           std::vector<int>(n, 0)))
        throw InputError(detail::gen_name(GenKind::cartan, i, 1) + ": " + *err);
    for (std::size_t j = 0; j < n; ++j) {
      QMatrix br = commutator(spec.xplus0[i], spec.xminus0[j]);
      if (i == j)
        br -= spec.xi0[i];
      if (!br.is_zero())
        throw InputError("level-0 data violates [x+_{i,0}, x-_{j,0}] = delta_ij xi_{i,0} at (" +
                         std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
    }
  }
}

/// Generator matrices up to loop level R, produced from the seed by the
/// shift operators t_{i,1} = xi_{i,1} - (hbar/2) xi_{i,0}^2.
struct ExtendedRep {
  std::string name;
  RootSystem rs;
  std::size_t dim = 0;
  std::vector<std::vector<int>> weights;
  Rational hbar{1};
  int R = 0;
  std::vector<std::vector<QMatrix>> xi, xp, xm; ///< [node][loop]
  std::vector<QMatrix> t1;

  const QMatrix &gen(GenKind kind, std::size_t node, int loop) const {
    if (loop < 0 || loop > R)
      throw InputError("generator " + detail::gen_name(kind, node, loop) +
                       " beyond the loop cutoff " + std::to_string(R));
    const auto &family = kind == GenKind::plus ? xp : kind == GenKind::minus ? xm : xi;
    return family.at(node).at(static_cast<std::size_t>(loop));
  }
};

inline std::vector<QMatrix> shift_operators(const std::vector<QMatrix> &xi0,
                                            const std::vector<QMatrix> &xi1,
                                            const Rational &hbar) {
  std::vector<QMatrix> t1;
  for (std::size_t i = 0; i < xi0.size(); ++i) {
    QMatrix t = xi1[i];
    Rational half_hbar = hbar / 2;
    t.add_scaled(-half_hbar, xi0[i] * xi0[i]);
    t1.push_back(std::move(t));
  }
  return t1;
}

/// x^±_{j,r+1} = ±(1/(2 d_j)) [t_{j,1}, x^±_{j,r}],  xi_{i,r} = [x^+_{i,r}, x^-_{i,0}] for r >= 2.
inline ExtendedRep extend(const RepSpec &spec, int R, const Rational &hbar = Rational(1)) {
  if (!spec.xi1)
    throw InputError("representation '" + spec.name + "' has no xi1 data");
  if (R < 1)
    throw InputError("loop cutoff must be at least 1");
  if (is_zero(hbar))
    throw InputError("hbar must be nonzero");
  if (spec.hbar != hbar)
    throw InputError("level-one data of '" + spec.name + "' solves hbar = " + to_string(spec.hbar) +
                     ", not " + to_string(hbar) + "; rescale it with at_hbar");
  const std::size_t n = spec.rs.rank();
  ExtendedRep rep;
  rep.name = spec.name;
  rep.rs = spec.rs;
  rep.dim = spec.dim;
  rep.weights = spec.weights;
  rep.hbar = hbar;
  rep.R = R;
  rep.t1 = shift_operators(spec.xi0, *spec.xi1, hbar);
  rep.xi.resize(n);
  rep.xp.resize(n);
  rep.xm.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Rational step = Rational(1) / (2 * spec.rs.d()[j]);
    rep.xp[j].push_back(spec.xplus0[j]);
    rep.xm[j].push_back(spec.xminus0[j]);
    for (int r = 0; r < R; ++r) {
      rep.xp[j].push_back(step * commutator(rep.t1[j], rep.xp[j].back()));
      rep.xm[j].push_back(-step * commutator(rep.t1[j], rep.xm[j].back()));
    }
    rep.xi[j].push_back(spec.xi0[j]);
    rep.xi[j].push_back((*spec.xi1)[j]);
    for (int r = 2; r <= R; ++r)
      rep.xi[j].push_back(commutator(rep.xp[j][static_cast<std::size_t>(r)], rep.xm[j][0]));
  }
  return rep;
}

/// Image of a noncommutative polynomial with hbar specialized to rep.hbar.
inline QMatrix evaluate(const freealg::NCPoly &p, const ExtendedRep &rep) {
  QMatrix out(rep.dim, rep.dim);
  for (const auto &[word, coeff] : p.terms()) {
    Rational c = coeff.eval(rep.hbar);
    if (is_zero(c))
      continue;
    QMatrix m = QMatrix::identity(rep.dim);
    for (const auto &g : word)
      m = m * rep.gen(g.kind, static_cast<std::size_t>(g.node), g.loop);
    out.add_scaled(c, m);
  }
  return out;
}

struct Violation {
  std::string relation;     ///< "Y1".."Y6", or "grading"
  std::vector<int> indices; ///< relation indices, nodes 1-based
  std::string label;
  Rational max_abs;         ///< largest entry of the evaluated matrix
};

struct RelationReport {
  int cutoff = 0;
  std::size_t instances = 0;
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

inline int max_serre_length(const RootSystem &rs) {
  int out = 2;
  for (std::size_t i = 0; i < rs.rank(); ++i)
    for (std::size_t j = 0; j < rs.rank(); ++j)
      if (i != j)
        out = std::max(out, 2 - rs.cartan()(i, j));
  return out;
}

/// Evaluates every Y1-Y6 instance with loop indices <= R, and the Q-grading
/// of every stored generator.
inline RelationReport check_relations(const ExtendedRep &rep, int R) {
  if (R > rep.R)
    throw InputError("check_relations: cutoff " + std::to_string(R) +
                     " exceeds the extension level " + std::to_string(rep.R));
  RelationReport report;
  report.cutoff = R;
  const std::size_t n = rep.rs.rank();
  for (std::size_t i = 0; i < n; ++i)
    for (GenKind kind : {GenKind::plus, GenKind::minus, GenKind::cartan})
      for (int r = 0; r <= R; ++r) {
        ++report.instances;
        if (auto err = detail::grading_error(rep.gen(kind, i, r), rep.weights,
                                             detail::kind_shift(rep.rs, kind, i)))
          report.violations.push_back({"grading",
                                       {static_cast<int>(kind), static_cast<int>(i) + 1, r},
                                       detail::gen_name(kind, i, r) + ": " + *err,
                                       Rational(0)});
      }
  const auto rels = freealg::instantiate_relations(rep.rs, {R, max_serre_length(rep.rs)});
  for (const auto &rel : rels.relations) {
    ++report.instances;
    QMatrix m = evaluate(rel.poly, rep);
    if (!m.is_zero())
      report.violations.push_back({rel.id, rel.indices, rel.label(), max_abs(m)});
  }
  return report;
}

/// tau_a(y_r) = sum_s binom(r, s) a^(r-s) y_s on every stored generator.
inline ExtendedRep tau_shift(const ExtendedRep &rep, const Rational &a) {
  ExtendedRep out = rep;
  auto shift = [&](const std::vector<QMatrix> &levels) {
    std::vector<QMatrix> res;
    for (std::size_t r = 0; r < levels.size(); ++r) {
      QMatrix m = QMatrix::zero_like(levels[0]);
      for (std::size_t s = 0; s <= r; ++s)
        m.add_scaled(binomial(static_cast<std::int64_t>(r), static_cast<std::int64_t>(s)) *
                         power(a, static_cast<unsigned>(r - s)),
                     levels[s]);
      res.push_back(std::move(m));
    }
    return res;
  };
  for (std::size_t i = 0; i < rep.rs.rank(); ++i) {
    out.xi[i] = shift(rep.xi[i]);
    out.xp[i] = shift(rep.xp[i]);
    out.xm[i] = shift(rep.xm[i]);
  }
  std::vector<QMatrix> xi0, xi1;
  for (std::size_t i = 0; i < rep.rs.rank(); ++i) {
    xi0.push_back(out.xi[i][0]);
    xi1.push_back(out.xi[i][1]);
  }
  out.t1 = shift_operators(xi0, xi1, rep.hbar);
  return out;
}

/// Moves level-one data to another hbar through the loop grading
/// (xi_r, x_r) -> ((h'/h)^r xi_r, (h'/h)^r x_r), which maps modules at h to modules at h'.
inline RepSpec at_hbar(RepSpec spec, const Rational &hbar) {
  if (is_zero(hbar))
    throw InputError("hbar must be nonzero");
  if (spec.xi1)
    for (auto &m : *spec.xi1)
      m *= hbar / spec.hbar;
  spec.hbar = hbar;
  return spec;
}

/// RepSpec whose xi1 is shifted by a xi0, i.e. the seed of tau_a(extend(spec)).
inline RepSpec shifted_spec(RepSpec spec, const Rational &a) {
  if (!spec.xi1)
    throw InputError("representation '" + spec.name + "' has no xi1 data");
  for (std::size_t i = 0; i < spec.rs.rank(); ++i)
    (*spec.xi1)[i].add_scaled(a, spec.xi0[i]);
  return spec;
}

/// T(h) = sum_i c_i t_{i,1} for h = sum_i c_i d_i h_i.
inline QMatrix T_matrix(const ExtendedRep &rep, std::span<const Rational> h) {
  if (h.size() != rep.rs.rank())
    throw InputError("coweight has " + std::to_string(h.size()) + " coordinates, rank is " +
                     std::to_string(rep.rs.rank()));
  QMatrix out(rep.dim, rep.dim);
  for (std::size_t i = 0; i < h.size(); ++i)
    out.add_scaled(h[i], rep.t1[i]);
  return out;
}

/// Normalized root vectors: [x+_beta, x-_beta] = sum_i c_i xi_{i,0} for beta = sum_i c_i alpha_i.
struct RootVectors {
  std::vector<RootVec> roots; ///< positive roots in RootSystem order
  std::vector<QMatrix> plus, minus;
  std::vector<Rational> scale; ///< factor removed from the raw bracket of x+_beta
};

/// Simple roots use the level-0 generators. A non-simple beta is built as
/// beta = alpha_i + beta' with the smallest such i:
///   x+_beta ∝ [x+_i, x+_beta'],  x-_beta = [x-_beta', x-_i],
/// except that in rank 2 the root alpha_i + alpha_j for the anchor (i, j)
/// uses x-_beta = [x-_j, x-_i] and x+_beta ∝ [x+_i, x+_j]. The plus vector is
/// then divided by the scalar lambda with [x+, x-] = lambda sum_i c_i xi_{i,0}.
inline RootVectors root_vectors(const ExtendedRep &rep) {
  const RootSystem &rs = rep.rs;
  const std::size_t n = rs.rank();
  RootVectors out;
  std::optional<std::pair<std::size_t, std::size_t>> anchor;
  if (n == 2)
    anchor = kt_order(rs).anchor;
  for (const auto &beta : rs.positive_roots()) {
    QMatrix xp, xm;
    if (height(beta) == 1) {
      std::size_t i = static_cast<std::size_t>(std::find(beta.begin(), beta.end(), 1) - beta.begin());
      xp = rep.gen(GenKind::plus, i, 0);
      xm = rep.gen(GenKind::minus, i, 0);
    } else if (anchor && beta == simple_root(n, anchor->first) + simple_root(n, anchor->second)) {
      auto [i, j] = *anchor;
      xp = commutator(rep.gen(GenKind::plus, i, 0), rep.gen(GenKind::plus, j, 0));
      xm = commutator(rep.gen(GenKind::minus, j, 0), rep.gen(GenKind::minus, i, 0));
    } else {
      std::optional<std::size_t> prev;
      std::size_t node = 0;
      for (; node < n; ++node) {
        RootVec rest = beta - simple_root(n, node);
        if (rest[node] >= 0 && (prev = rs.index_of(rest)))
          break;
      }
      if (!prev)
        throw DomainError("no bracketing chain for root " + root_label(beta));
      xp = commutator(rep.gen(GenKind::plus, node, 0), out.plus[*prev]);
      xm = commutator(out.minus[*prev], rep.gen(GenKind::minus, node, 0));
    }
    QMatrix cartan(rep.dim, rep.dim);
    for (std::size_t i = 0; i < n; ++i)
      cartan.add_scaled(Rational(beta[i]), rep.gen(GenKind::cartan, i, 0));
    QMatrix br = commutator(xp, xm);
    Rational lambda(0);
    std::optional<std::pair<std::size_t, std::size_t>> probe;
    for (std::size_t r = 0; r < rep.dim && !probe; ++r)
      for (std::size_t c = 0; c < rep.dim && !probe; ++c)
        if (!is_zero(cartan(r, c)))
          probe = {r, c};
    if (probe)
      lambda = br(probe->first, probe->second) / cartan(probe->first, probe->second);
    if (!(br == lambda * cartan))
      throw DomainError("root vector normalization failed for " + root_label(beta) +
                        ": bracket is not a multiple of the coroot image");
    if (is_zero(lambda) && (!xp.is_zero() || !xm.is_zero()) && !cartan.is_zero())
      throw DomainError("root vector normalization failed for " + root_label(beta) +
                        ": root vectors act nontrivially but their bracket vanishes");
    if (!is_zero(lambda))
      xp *= Rational(1) / lambda;
    out.roots.push_back(beta);
    out.plus.push_back(std::move(xp));
    out.minus.push_back(std::move(xm));
    out.scale.push_back(is_zero(lambda) ? Rational(1) : lambda);
  }
  return out;
}

/// A pair of representations on V ⊗ W. Basis pair (v, w) has index
/// v * dim(W) + w.
struct TensorContext {
  ExtendedRep left, right;
  RootVectors left_roots, right_roots;

  std::size_t dim() const { return left.dim * right.dim; }
  const RootSystem &rs() const { return left.rs; }
  Rational hbar() const { return left.hbar; }

  /// True when entry (row, col) of an operator lies in the (-gamma, gamma) block.
  bool in_block(const RootVec &gamma, std::size_t row, std::size_t col) const {
    const auto g = left.rs.to_dynkin(gamma);
    const auto &wv = left.weights, &ww = right.weights;
    const std::size_t rv = row / right.dim, rw = row % right.dim;
    const std::size_t cv = col / right.dim, cw = col % right.dim;
    for (std::size_t k = 0; k < g.size(); ++k)
      if (wv[rv][k] != wv[cv][k] - g[k] || ww[rw][k] != ww[cw][k] + g[k])
        return false;
    return true;
  }
};

inline TensorContext make_context(ExtendedRep left, ExtendedRep right) {
  if (!(left.rs.cartan() == right.rs.cartan()))
    throw InputError("tensor factors use different Cartan matrices");
  if (left.hbar != right.hbar)
    throw InputError("tensor factors use different values of hbar");
  TensorContext ctx{std::move(left), std::move(right), {}, {}};
  ctx.left_roots = root_vectors(ctx.left);
  ctx.right_roots = root_vectors(ctx.right);
  return ctx;
}

/// r-(h) = -hbar sum_beta beta(h) x-_beta ⊗ x+_beta.
inline QMatrix r_minus_h(const TensorContext &ctx, std::span<const Rational> h) {
  QMatrix out(ctx.dim(), ctx.dim());
  for (std::size_t k = 0; k < ctx.left_roots.roots.size(); ++k) {
    Rational c = root_eval(ctx.rs(), ctx.left_roots.roots[k], h);
    if (is_zero(c))
      continue;
    out.add_scaled(-ctx.hbar() * c, kron(ctx.left_roots.minus[k], ctx.right_roots.plus[k]));
  }
  return out;
}

/// Affine family of xi_{i,1} solving the relations that are linear in it.
struct LevelOneFamily {
  bool consistent = false;
  std::size_t unknowns = 0;
  std::size_t equations = 0;
  std::vector<QMatrix> particular;              ///< per node
  std::vector<std::vector<QMatrix>> directions; ///< homogeneous basis, per node
  /// particular + sum_k params[k] directions[k]
  std::vector<QMatrix> at(std::span<const Rational> params) const {
    if (params.size() != directions.size())
      throw InputError("level-one family has " + std::to_string(directions.size()) +
                       " parameters, got " + std::to_string(params.size()));
    std::vector<QMatrix> out = particular;
    for (std::size_t k = 0; k < params.size(); ++k)
      for (std::size_t i = 0; i < out.size(); ++i)
        out[i].add_scaled(params[k], directions[k][i]);
    return out;
  }
};

/// Unknowns: entries of xi_{i,1} joining basis vectors of equal weight.
/// Constraints: every relation instance with loop indices <= 1 whose
/// monomials have loop degree <= `degree`; after the shift-operator extension
/// these are polynomial of that degree in the unknowns. Only degree 1, the
/// linear case, is supported.
inline LevelOneFamily solve_level_one(const RepSpec &spec, int degree = 1,
                                      const Rational &hbar = Rational(1)) {
  if (degree != 1)
    throw InputError("solve_level_one: only ansatz degree 1 (linear constraints) is supported");
  RepSpec base = spec;
  base.xi1.reset();
  base.hbar = hbar;
  validate_level0(base);
  const std::size_t n = spec.rs.rank();
  const std::size_t dim = spec.dim;

  struct Slot {
    std::size_t node, r, c;
  };
  std::vector<Slot> slots;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c)
        if (spec.weights[r] == spec.weights[c])
          slots.push_back({i, r, c});

  auto rels = freealg::instantiate_relations(spec.rs, {1, max_serre_length(spec.rs)});
  std::erase_if(rels.relations, [&](const freealg::Relation &rel) {
    for (const auto &[w, c] : rel.poly.terms())
      if (freealg::loopdeg(w) > degree)
        return true;
    return false;
  });

  auto evaluate_all = [&](const std::vector<QMatrix> &xi1) {
    base.xi1 = xi1;
    ExtendedRep rep = extend(base, 1, hbar);
    std::vector<QMatrix> out;
    for (const auto &rel : rels.relations)
      out.push_back(evaluate(rel.poly, rep));
    return out;
  };
  std::vector<QMatrix> zero(n, QMatrix(dim, dim));
  const auto e0 = evaluate_all(zero);
  std::vector<std::vector<QMatrix>> columns;
  for (const auto &slot : slots) {
    auto xi1 = zero;
    xi1[slot.node](slot.r, slot.c) = 1;
    auto ek = evaluate_all(xi1);
    for (std::size_t q = 0; q < ek.size(); ++q)
      ek[q] -= e0[q];
    columns.push_back(std::move(ek));
  }

  AffineSystem system(slots.size());
  for (std::size_t q = 0; q < rels.relations.size(); ++q) {
    std::vector<QMatrix> coeffs;
    for (const auto &col : columns)
      coeffs.push_back(col[q]);
    system.add_matrix_equation(coeffs, -e0[q]);
  }
  LevelOneFamily family;
  family.unknowns = slots.size();
  family.equations = system.equations();
  auto outcome = solve_affine(system);
  if (std::holds_alternative<Inconsistent>(outcome))
    return family;
  const auto &sol = std::get<AffineSolution>(outcome);
  family.consistent = true;
  auto assemble = [&](const std::vector<Rational> &x) {
    auto m = zero;
    for (std::size_t k = 0; k < slots.size(); ++k)
      m[slots[k].node](slots[k].r, slots[k].c) = x[k];
    return m;
  };
  family.particular = assemble(sol.particular);
  for (const auto &h : sol.homogeneous)
    family.directions.push_back(assemble(h));
  return family;
}

} // namespace yangr
