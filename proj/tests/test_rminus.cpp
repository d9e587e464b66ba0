#include <gtest/gtest.h>

#include "yangr/json_io.hpp"
#include "yangr/rminus.hpp"

using namespace yangr;
using freealg::GenKind;

namespace {

struct Pair {
  const char *left, *right;
  Rational ls, rs;
};

std::vector<Pair> pairs() {
  return {{"sl2_dim2", "sl2_dim2", ratio(1, 3), ratio(-2, 5)},
          {"sl2_dim2", "sl2_dim3", 0, ratio(3, 2)},
          {"sl2_dim3", "sl2_dim3", ratio(-1, 2), ratio(1, 7)},
          {"a2_fund", "a2_fund", ratio(1, 3), ratio(-2, 5)},
          {"a2_sym2", "a2_fund", 1, 0},
          {"b2_vec4", "b2_vec4", ratio(1, 2), -1}};
}

TensorContext ctx_for(const Pair &p, int R, Rational hbar = 1) {
  return io::build_context(io::load_fixture(p.left), io::load_fixture(p.right), p.ls, p.rs, R,
                           hbar);
}

} // namespace

TEST(ChooseH, Examples) {
  RootSystem a2 = build_root_system(CartanMatrix::preset("A2"));
  RootSystem b2 = build_root_system(CartanMatrix::preset("B2"));
  EXPECT_EQ(choose_h(a2, {1, 1}, HPolicy::first_nonzero), (std::vector<Rational>{1, 0}));
  EXPECT_EQ(choose_h(a2, {1, 1}, HPolicy::last_nonzero), (std::vector<Rational>{0, 1}));
  // (a1 + a2)(h_1) = 2 - 2 = 0 in B2
  EXPECT_EQ(choose_h(b2, {1, 1}, HPolicy::first_nonzero), (std::vector<Rational>{0, 1}));
  EXPECT_THROW(choose_h(a2, {0, 0}, HPolicy::first_nonzero), DomainError);
}

TEST(Solve, ZeroBlockIsIdentity) {
  TensorContext ctx = ctx_for(pairs()[3], 3);
  RMinusBlocks b = solve_rminus(ctx, 2, 3);
  const MatrixSeries &s = b.at({0, 0});
  EXPECT_EQ(s[0], QMatrix::identity(9));
  for (std::size_t m = 1; m <= 3; ++m)
    EXPECT_TRUE(s[m].is_zero());
  EXPECT_THROW(b.at({3, 3}), InputError);
}

TEST(Solve, FirstJetIsTheClassicalRMatrix) {
  // R_{beta,1} = hbar x-_beta ⊗ x+_beta for roots, zero elsewhere
  for (const auto &p : pairs()) {
    const Rational hbar = ratio(3, 2);
    TensorContext ctx = ctx_for(p, 2, hbar);
    RMinusBlocks b = solve_rminus(ctx, 3, 2);
    for (const auto &[gamma, s] : b.blocks) {
      if (is_zero_vec(gamma))
        continue;
      EXPECT_TRUE(s[0].is_zero());
      auto idx = ctx.rs().index_of(gamma);
      if (idx) {
        EXPECT_EQ(s[1], hbar * kron(ctx.left_roots.minus[*idx], ctx.right_roots.plus[*idx]))
            << p.left << " " << root_label(gamma);
      } else {
        EXPECT_TRUE(s[1].is_zero()) << p.left << " " << root_label(gamma);
      }
    }
  }
}

TEST(Solve, Sl2FundamentalGeometricSeries) {
  // R_alpha(s) = hbar x- ⊗ x+ / (s - (b - a)) for evaluation modules at a and b
  const Rational a = ratio(1, 3), bshift = ratio(-2, 5), hbar = 2;
  TensorContext ctx = ctx_for({"sl2_dim2", "sl2_dim2", a, bshift}, 6, hbar);
  RMinusBlocks b = solve_rminus(ctx, 3, 6);
  QMatrix e(4, 4);
  e(2, 1) = 1;
  for (std::size_t m = 1; m <= 6; ++m)
    EXPECT_EQ(b.at({1})[m], hbar * power(bshift - a, static_cast<unsigned>(m - 1)) * e) << m;
  for (std::size_t m = 0; m <= 6; ++m) {
    EXPECT_TRUE(b.at({2})[m].is_zero());
    EXPECT_TRUE(b.at({3})[m].is_zero());
  }
}

TEST(Solve, Sl2ClosedFormMatches) {
  for (const auto &p : pairs()) {
    if (std::string(p.left).rfind("sl2", 0) != 0)
      continue;
    for (const Rational &hbar : {Rational(1), ratio(-3, 4)}) {
      TensorContext ctx = ctx_for(p, 6, hbar);
      RMinusBlocks b = solve_rminus(ctx, 1, 6);
      EXPECT_EQ(sl2_closed_form(ctx, 6), b.at({1})) << p.left << " " << p.right;
    }
  }
}

TEST(Solve, SimpleRootLinesInHigherRank) {
  // on alpha_i with d_i = 1 the block is the rank-one closed form for node i
  for (const auto &p : pairs()) {
    TensorContext ctx = ctx_for(p, 4);
    if (ctx.rs().rank() < 2)
      continue;
    RMinusBlocks b = solve_rminus(ctx, 1, 4);
    for (std::size_t i = 0; i < ctx.rs().rank(); ++i) {
      if (ctx.rs().d()[i] != 1)
        continue;
      for (std::size_t m = 1; m <= 4; ++m) {
        QMatrix expect(ctx.dim(), ctx.dim());
        for (std::size_t n = 0; n < m; ++n) {
          Rational c = binomial(static_cast<std::int64_t>(m - 1), static_cast<std::int64_t>(n));
          if (n % 2)
            c = -c;
          expect.add_scaled(c, kron(ctx.left.gen(GenKind::minus, i, static_cast<int>(n)),
                                    ctx.right.gen(GenKind::plus, i, static_cast<int>(m - 1 - n))));
        }
        EXPECT_EQ(b.at(simple_root(2, i))[m], expect) << p.left << " node " << i << " m=" << m;
      }
    }
  }
}

TEST(Solve, IntertwiningHoldsForEveryPairAndCoweight) {
  for (const auto &p : pairs())
    for (const Rational &hbar : {Rational(1), ratio(-3, 2)}) {
      TensorContext ctx = ctx_for(p, 5, hbar);
      RMinusBlocks b = solve_rminus(ctx, ctx.rs().rank() == 1 ? 4 : 3, 5);
      IntertwiningReport r = verify_intertwining(b);
      EXPECT_TRUE(r.ok()) << p.left << "x" << p.right << " hbar=" << to_string(hbar) << ": "
                          << r.nonzero.size() << " nonzero";
      EXPECT_GT(r.checked, 0u);
      EXPECT_TRUE(divisibility_violations(b).empty()) << p.left;
      EXPECT_TRUE(support_violations(b).empty()) << p.left;
    }
}

TEST(Solve, IndependentOfTheCoweightChoice) {
  for (const auto &p : pairs()) {
    TensorContext ctx = ctx_for(p, 4);
    RMinusBlocks first = solve_rminus(ctx, 3, 4, HPolicy::first_nonzero);
    RMinusBlocks last = solve_rminus(ctx, 3, 4, HPolicy::last_nonzero);
    EXPECT_EQ(first.blocks, last.blocks) << p.left << " " << p.right;
  }
}

TEST(Solve, A2DivisibilityAtHeightFour) {
  TensorContext ctx = ctx_for({"a2_sym2", "a2_sym2", ratio(1, 3), ratio(-2, 5)}, 4);
  RMinusBlocks b = solve_rminus(ctx, 4, 4);
  EXPECT_TRUE(divisibility_violations(b).empty());
  EXPECT_TRUE(support_violations(b).empty());
  // nu(2a1+2a2) = 2, and the s^-2 coefficient is where it starts
  EXPECT_TRUE(b.at({2, 2})[1].is_zero());
  EXPECT_FALSE(b.at({2, 2})[2].is_zero());
}

TEST(Solve, PerturbationStaysLocalized) {
  TensorContext ctx = ctx_for({"a2_fund", "a2_fund", ratio(1, 3), ratio(-2, 5)}, 4);
  RMinusBlocks b = solve_rminus(ctx, 3, 4);
  const RootVec gamma{1, 0};
  b.blocks.at(gamma)[2](3, 1) += 1;
  IntertwiningReport r = verify_intertwining(b);
  ASSERT_FALSE(r.ok());
  bool self = false;
  for (const auto &e : r.nonzero) {
    EXPECT_TRUE(is_nonnegative(e.gamma - gamma)) << root_label(e.gamma);
    self = self || e.gamma == gamma;
  }
  EXPECT_TRUE(self);
}

TEST(Solve, DetectsOutOfBlockEntries) {
  TensorContext ctx = ctx_for({"a2_fund", "a2_fund", 0, 1}, 2);
  RMinusBlocks b = solve_rminus(ctx, 2, 2);
  b.blocks.at({1, 1})[2](0, 0) = 5;
  auto issues = support_violations(b);
  ASSERT_EQ(issues.size(), 1u);
  EXPECT_EQ(issues[0].gamma, (RootVec{1, 1}));
  b.blocks.at({1, 1})[2](0, 0) = 0;
  b.blocks.at({2, 0})[1](6, 0) = 1;
  EXPECT_FALSE(divisibility_violations(b).empty());
}

TEST(Solve, RefusesBadParameters) {
  TensorContext ctx = ctx_for(pairs()[3], 2);
  EXPECT_THROW(solve_rminus(ctx, 2, 4), InputError);
  EXPECT_THROW(solve_rminus(ctx, 0, 2), InputError);
  EXPECT_THROW(solve_rminus(ctx, 2, 0), InputError);
  EXPECT_THROW(sl2_closed_form(ctx, 2), DomainError);
  TensorContext sl2 = ctx_for(pairs()[0], 2);
  EXPECT_THROW(sl2_closed_form(sl2, 5), InputError);
}
