#include <gtest/gtest.h>

#include "yangr/json_io.hpp"
#include "yangr/presets.hpp"
#include "yangr/rep.hpp"

using namespace yangr;
using freealg::GenKind;

namespace {

std::vector<Rational> vec(std::initializer_list<Rational> v) { return v; }

/// True when b = c * a for some scalar c (a nonzero).
std::optional<Rational> proportion(const QMatrix &a, const QMatrix &b) {
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (!is_zero(a(r, c))) {
        Rational k = b(r, c) / a(r, c);
        if (b == k * a)
          return k;
        return std::nullopt;
      }
  return std::nullopt;
}

QMatrix unit(std::size_t dim, std::size_t r, std::size_t c) {
  QMatrix m(dim, dim);
  m(r, c) = 1;
  return m;
}

} // namespace

TEST(Fixtures, AllSatisfyTheRelationsAtCutoffFour) {
  for (const auto &name : presets::fixture_names()) {
    RepSpec spec = io::load_fixture(name);
    for (const Rational &hbar : {Rational(1), ratio(-3, 2)}) {
      // the fixture stores the hbar = 1 solution
      RepSpec s = at_hbar(spec, hbar);
      RelationReport r = check_relations(extend(s, 4, hbar), 4);
      EXPECT_TRUE(r.ok()) << name << " hbar=" << to_string(hbar) << ": "
                          << (r.violations.empty() ? "" : r.violations.front().label);
      EXPECT_GT(r.instances, 0u);
    }
  }
}

TEST(Fixtures, RescaledDataLiesInTheLevelOneFamily) {
  for (const auto &name : presets::fixture_names()) {
    const Rational hbar = ratio(-3, 2);
    RepSpec scaled = at_hbar(io::load_fixture(name), hbar);
    RepSpec solved = presets::level0(name);
    LevelOneFamily fam = solve_level_one(solved, 1, hbar);
    solved.xi1 = fam.particular;
    solved.hbar = hbar;
    EXPECT_TRUE(check_relations(extend(solved, 3, hbar), 3).ok()) << name;
    // the difference is a multiple of the shift direction
    QMatrix diff = (*scaled.xi1)[0] - (*solved.xi1)[0];
    ASSERT_EQ(fam.directions.size(), 1u);
    auto k = diff.is_zero() ? std::optional<Rational>(0) : proportion(fam.directions[0][0], diff);
    ASSERT_TRUE(k.has_value()) << name;
    EXPECT_EQ(*scaled.xi1, fam.at(vec({*k}))) << name;
  }
  RepSpec spec = io::load_fixture("sl2_dim2");
  EXPECT_THROW(extend(spec, 2, Rational(2)), InputError);
  EXPECT_THROW(at_hbar(spec, 0), InputError);
  EXPECT_EQ(at_hbar(at_hbar(spec, 5), 1).xi1, spec.xi1);
}

TEST(Fixtures, MatchTheLevelOneSolver) {
  for (const auto &name : presets::fixture_names()) {
    RepSpec stored = io::load_fixture(name);
    LevelOneFamily fam = solve_level_one(presets::level0(name));
    ASSERT_TRUE(fam.consistent) << name;
    ASSERT_TRUE(stored.xi1.has_value());
    EXPECT_EQ(*stored.xi1, fam.particular) << name;
  }
}

TEST(Extend, Sl2FundamentalIsTheEvaluationModule) {
  // x_r = a^r x_0 and xi_r = a^r xi_0 on the two-dimensional evaluation module
  const Rational a = ratio(2, 3);
  RepSpec spec = shifted_spec(io::load_fixture("sl2_dim2"), a);
  ExtendedRep rep = extend(spec, 5);
  for (int r = 0; r <= 5; ++r) {
    Rational ar = power(a, static_cast<unsigned>(r));
    EXPECT_EQ(rep.gen(GenKind::plus, 0, r), ar * unit(2, 0, 1));
    EXPECT_EQ(rep.gen(GenKind::minus, 0, r), ar * unit(2, 1, 0));
    if (r >= 1) {
      EXPECT_EQ(rep.gen(GenKind::cartan, 0, r), ar * rep.gen(GenKind::cartan, 0, 0));
    }
  }
}

TEST(Extend, ShiftOperatorIdentityForAllNodes) {
  // [t_{i,1}, x±_{j,r}] = ± d_i a_ij x±_{j,r+1}
  for (const auto &name : presets::fixture_names()) {
    ExtendedRep rep = extend(shifted_spec(io::load_fixture(name), ratio(1, 4)), 4);
    const RootSystem &rs = rep.rs;
    for (std::size_t i = 0; i < rs.rank(); ++i)
      for (std::size_t j = 0; j < rs.rank(); ++j)
        for (int r = 0; r < 4; ++r) {
          Rational c = rs.d()[i] * rs.cartan()(i, j);
          EXPECT_EQ(commutator(rep.t1[i], rep.gen(GenKind::plus, j, r)),
                    c * rep.gen(GenKind::plus, j, r + 1))
              << name << " i=" << i << " j=" << j << " r=" << r;
          EXPECT_EQ(commutator(rep.t1[i], rep.gen(GenKind::minus, j, r)),
                    -c * rep.gen(GenKind::minus, j, r + 1));
        }
  }
}

TEST(Extend, CartanLevelsAgreeWithEveryBracket) {
  // xi_{i,r+s} = [x+_{i,r}, x-_{i,s}] for all splittings
  for (const auto &name : presets::fixture_names()) {
    ExtendedRep rep = extend(io::load_fixture(name), 4);
    for (std::size_t i = 0; i < rep.rs.rank(); ++i)
      for (int r = 0; r <= 4; ++r)
        for (int s = 0; r + s <= 4; ++s)
          EXPECT_EQ(commutator(rep.gen(GenKind::plus, i, r), rep.gen(GenKind::minus, i, s)),
                    rep.gen(GenKind::cartan, i, r + s))
              << name;
  }
}

TEST(Extend, RejectsBadInput) {
  RepSpec spec = io::load_fixture("sl2_dim2");
  EXPECT_THROW(extend(spec, 0), InputError);
  EXPECT_THROW(extend(spec, 2, Rational(0)), InputError);
  RepSpec bare = presets::level0("sl2_dim2");
  EXPECT_THROW(extend(bare, 2), InputError);
  ExtendedRep rep = extend(spec, 2);
  EXPECT_THROW(rep.gen(GenKind::plus, 0, 3), InputError);
  EXPECT_THROW(check_relations(rep, 3), InputError);
}

TEST(CheckRelations, CorruptedA2FundamentalViolatesY3) {
  RepSpec spec = io::load_fixture("a2_fund");
  spec.xi1 = spec.xi0;
  RelationReport r = check_relations(extend(spec, 2), 2);
  ASSERT_FALSE(r.ok());
  bool found = false;
  for (const auto &v : r.violations)
    if (v.relation == "Y3" && v.indices == std::vector<int>{1, 1, 2, 0, 0}) {
      found = true;
      EXPECT_EQ(v.max_abs, ratio(1, 2));
    }
  EXPECT_TRUE(found);
  // hand computation: the instance evaluates to -1/2 E_23 at hbar = 1
  ExtendedRep rep = extend(spec, 2);
  auto rels = freealg::instantiate_relations(rep.rs, {2, 3});
  for (const auto &rel : rels.relations)
    if (rel.id == "Y3" && rel.indices == std::vector<int>{1, 1, 2, 0, 0}) {
      EXPECT_EQ(evaluate(rel.poly, rep), ratio(-1, 2) * unit(3, 1, 2));
    }
}

TEST(CheckRelations, CorruptedAdjointViolates) {
  RepSpec spec = io::load_fixture("sl2_dim3");
  spec.xi1 = spec.xi0;
  RelationReport r = check_relations(extend(spec, 2), 2);
  EXPECT_FALSE(r.ok());
  for (const auto &v : r.violations)
    EXPECT_GT(v.max_abs, 0);
}

TEST(CheckRelations, GradingViolationIsReported) {
  RepSpec spec = io::load_fixture("a2_fund");
  (*spec.xi1)[0](0, 1) = 1;
  RelationReport r = check_relations(extend(spec, 1), 1);
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.violations.front().relation, "grading");
}

TEST(Tau, GroupLawAndIdentity) {
  ExtendedRep rep = extend(io::load_fixture("a2_sym2"), 4);
  const Rational a = ratio(1, 3), b = ratio(-5, 2);
  ExtendedRep ab = tau_shift(tau_shift(rep, a), b), direct = tau_shift(rep, a + b);
  ExtendedRep id = tau_shift(rep, 0);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(ab.xp[i], direct.xp[i]);
    EXPECT_EQ(ab.xm[i], direct.xm[i]);
    EXPECT_EQ(ab.xi[i], direct.xi[i]);
    EXPECT_EQ(id.xi[i], rep.xi[i]);
    EXPECT_EQ(id.xp[i], rep.xp[i]);
    EXPECT_EQ(direct.xi[i][1], rep.xi[i][1] + (a + b) * rep.xi[i][0]);
  }
}

TEST(Tau, CommutesWithExtension) {
  for (const auto &name : presets::fixture_names()) {
    RepSpec spec = io::load_fixture(name);
    const Rational a = ratio(-2, 5);
    ExtendedRep lhs = tau_shift(extend(spec, 4), a);
    ExtendedRep rhs = extend(shifted_spec(spec, a), 4);
    for (std::size_t i = 0; i < spec.rs.rank(); ++i) {
      EXPECT_EQ(lhs.xp[i], rhs.xp[i]) << name;
      EXPECT_EQ(lhs.xm[i], rhs.xm[i]) << name;
      EXPECT_EQ(lhs.xi[i], rhs.xi[i]) << name;
      EXPECT_EQ(lhs.t1[i], rhs.t1[i]) << name;
    }
    EXPECT_TRUE(check_relations(rhs, 4).ok()) << name;
  }
}

TEST(TMatrix, LinearCombinationOfShiftOperators) {
  ExtendedRep rep = extend(io::load_fixture("b2_vec4"), 1);
  EXPECT_EQ(T_matrix(rep, vec({1, 0})), rep.t1[0]);
  EXPECT_EQ(T_matrix(rep, vec({2, ratio(1, 2)})), 2 * rep.t1[0] + ratio(1, 2) * rep.t1[1]);
  EXPECT_THROW(T_matrix(rep, vec({1})), InputError);
  // t_{i,1} = xi_{i,1} - hbar/2 xi_{i,0}^2
  ExtendedRep h2 = extend(at_hbar(io::load_fixture("sl2_dim3"), 2), 1, Rational(2));
  EXPECT_EQ(h2.t1[0], h2.xi[0][1] - h2.xi[0][0] * h2.xi[0][0]);
}

TEST(RootVectors, NormalizedBrackets) {
  for (const auto &name : presets::fixture_names()) {
    ExtendedRep rep = extend(io::load_fixture(name), 1);
    RootVectors rv = root_vectors(rep);
    ASSERT_EQ(rv.roots, rep.rs.positive_roots());
    for (std::size_t k = 0; k < rv.roots.size(); ++k) {
      QMatrix cartan(rep.dim, rep.dim);
      for (std::size_t i = 0; i < rep.rs.rank(); ++i)
        cartan.add_scaled(Rational(rv.roots[k][i]), rep.gen(GenKind::cartan, i, 0));
      EXPECT_EQ(commutator(rv.plus[k], rv.minus[k]), cartan) << name << " " << k;
      // weight grading of the root vectors
      const auto shift = rep.rs.to_dynkin(rv.roots[k]);
      for (std::size_t r = 0; r < rep.dim; ++r)
        for (std::size_t c = 0; c < rep.dim; ++c)
          if (!is_zero(rv.plus[k](r, c))) {
            for (std::size_t i = 0; i < rep.rs.rank(); ++i)
              EXPECT_EQ(rep.weights[r][i], rep.weights[c][i] + shift[i]);
          }
    }
  }
}

TEST(RootVectors, A2AnchorUsesTheSimpleBracket) {
  ExtendedRep rep = extend(io::load_fixture("a2_fund"), 1);
  RootVectors rv = root_vectors(rep);
  ASSERT_EQ(rv.roots[2], (RootVec{1, 1}));
  QMatrix raw = commutator(rep.gen(GenKind::plus, 0, 0), rep.gen(GenKind::plus, 1, 0));
  EXPECT_EQ(rv.plus[2], raw);
  EXPECT_EQ(rv.scale[2], 1);
  EXPECT_EQ(rv.minus[2], commutator(rep.gen(GenKind::minus, 1, 0), rep.gen(GenKind::minus, 0, 0)));
  // fundamental module: x+_{a1+a2} = E_13
  EXPECT_EQ(raw, unit(3, 0, 2));
}

TEST(RootVectors, B2HalfBracket) {
  ExtendedRep rep = extend(io::load_fixture("b2_vec4"), 1);
  RootVectors rv = root_vectors(rep);
  auto idx = rep.rs.index_of(RootVec{1, 1});
  ASSERT_TRUE(idx.has_value());
  QMatrix raw = commutator(rep.gen(GenKind::plus, 0, 0), rep.gen(GenKind::plus, 1, 0));
  EXPECT_EQ(rv.plus[*idx], ratio(1, 2) * raw);
  EXPECT_EQ(rv.scale[*idx], 2);
}

TEST(RMinusH, Sl2Example) {
  RepSpec f = io::load_fixture("sl2_dim2");
  TensorContext ctx = make_context(extend(f, 1), extend(f, 1));
  QMatrix r = r_minus_h(ctx, vec({1}));
  // -hbar alpha(h) x- ⊗ x+ with alpha(h) = 2; (v, w) has index 2v + w
  QMatrix expect(4, 4);
  expect(2, 1) = -2;
  EXPECT_EQ(r, expect);
  RepSpec f3 = at_hbar(f, 3);
  TensorContext c3 = make_context(extend(f3, 1, Rational(3)), extend(f3, 1, Rational(3)));
  EXPECT_EQ(r_minus_h(c3, vec({ratio(1, 2)})), Rational(3) * ratio(1, 2) * expect);
}

TEST(RMinusH, BlockStructure) {
  RepSpec f = io::load_fixture("a2_fund");
  TensorContext ctx = make_context(extend(f, 1), extend(f, 1));
  QMatrix r = r_minus_h(ctx, vec({1, 1}));
  for (std::size_t row = 0; row < 9; ++row)
    for (std::size_t col = 0; col < 9; ++col)
      if (!is_zero(r(row, col))) {
        bool in_some = false;
        for (const auto &beta : ctx.rs().positive_roots())
          in_some = in_some || ctx.in_block(beta, row, col);
        EXPECT_TRUE(in_some);
      }
  // beta(h) for h = h_1 + h_2: a1 -> 1, a2 -> 1, a1 + a2 -> 2
  EXPECT_EQ(r(1 * 3 + 0, 0 * 3 + 1), -1);
  EXPECT_EQ(r(2 * 3 + 0, 0 * 3 + 2), -2);
}

TEST(MakeContext, RejectsMismatch) {
  ExtendedRep a = extend(io::load_fixture("a2_fund"), 1);
  ExtendedRep b = extend(io::load_fixture("b2_vec4"), 1);
  EXPECT_THROW(make_context(a, b), InputError);
  ExtendedRep a2 = extend(at_hbar(io::load_fixture("a2_fund"), 2), 1, Rational(2));
  EXPECT_THROW(make_context(a, a2), InputError);
}

TEST(LevelOne, TrivialModuleForcesZero) {
  LevelOneFamily fam = solve_level_one(presets::level0("sl2_dim1"));
  ASSERT_TRUE(fam.consistent);
  EXPECT_TRUE(fam.directions.empty());
  EXPECT_TRUE(fam.particular[0].is_zero());
}

TEST(LevelOne, FamiliesAreTheShiftLine) {
  for (const auto &name : presets::fixture_names()) {
    RepSpec seed = presets::level0(name);
    LevelOneFamily fam = solve_level_one(seed);
    ASSERT_TRUE(fam.consistent) << name;
    ASSERT_EQ(fam.directions.size(), 1u) << name;
    auto k = proportion(seed.xi0[0], fam.directions[0][0]);
    ASSERT_TRUE(k.has_value()) << name;
    for (std::size_t i = 0; i < seed.rs.rank(); ++i)
      EXPECT_EQ(fam.directions[0][i], *k * seed.xi0[i]) << name;
    for (const Rational &t : {Rational(0), Rational(1), ratio(-7, 3)}) {
      RepSpec s = seed;
      s.xi1 = fam.at(vec({t}));
      EXPECT_TRUE(check_relations(extend(s, 3), 3).ok()) << name << " t=" << to_string(t);
    }
  }
}

TEST(LevelOne, Sl2FundamentalParameters) {
  LevelOneFamily fam = solve_level_one(presets::level0("sl2_dim2"));
  for (const Rational &a : {Rational(0), Rational(1)}) {
    RepSpec s = presets::level0("sl2_dim2");
    s.xi1 = s.xi0;
    (*s.xi1)[0] *= a;
    EXPECT_TRUE(check_relations(extend(s, 4), 4).ok());
  }
  EXPECT_THROW(fam.at(vec({})), InputError);
  EXPECT_THROW(solve_level_one(presets::level0("sl2_dim2"), 2), InputError);
}

TEST(Level0, Validation) {
  EXPECT_NO_THROW(validate_level0(presets::level0("b2_vec4")));
  RepSpec bad_diag = presets::level0("b2_vec4");
  bad_diag.xi0[1](0, 0) = 7;
  EXPECT_THROW(validate_level0(bad_diag), InputError);
  RepSpec bad_shape = presets::level0("a2_fund");
  bad_shape.xplus0.pop_back();
  EXPECT_THROW(validate_level0(bad_shape), InputError);
  RepSpec bad_grading = presets::level0("a2_fund");
  bad_grading.xplus0[0](1, 0) = 1;
  EXPECT_THROW(validate_level0(bad_grading), InputError);
  RepSpec bad_bracket = presets::level0("sl2_dim3");
  bad_bracket.xminus0[0] *= Rational(3);
  EXPECT_THROW(validate_level0(bad_bracket), InputError);
  EXPECT_THROW(presets::level0("e8_adjoint"), InputError);
}
