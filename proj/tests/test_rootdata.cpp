#include <deque>
#include <map>
#include <set>

#include <gtest/gtest.h>

#include "yangr/root_system.hpp"

using namespace yangr;

namespace {

RootSystem rs_of(const std::string &name) { return build_root_system(CartanMatrix::preset(name)); }

RootVec rv(std::initializer_list<int> v) { return RootVec(v); }

/// All roots as the Weyl orbit of the simple roots, computed by reflections only.
std::set<RootVec> weyl_orbit_positive(const RootSystem &rs) {
  std::set<RootVec> seen;
  std::deque<RootVec> queue;
  for (std::size_t i = 0; i < rs.rank(); ++i) {
    queue.push_back(simple_root(rs.rank(), i));
    seen.insert(queue.back());
  }
  while (!queue.empty()) {
    RootVec v = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < rs.rank(); ++i) {
      RootVec w = rs.reflect(i, v);
      if (seen.insert(w).second)
        queue.push_back(w);
    }
  }
  std::set<RootVec> pos;
  for (const auto &v : seen)
    if (is_nonnegative(v))
      pos.insert(v);
  return pos;
}

/// Partitions as sorted multisets of root indices, by exhaustive subtraction.
void brute_partitions(const std::vector<RootVec> &roots, const RootVec &rest, std::size_t from,
                      std::vector<int> &mult, std::set<std::vector<int>> &out) {
  if (is_zero_vec(rest)) {
    out.insert(mult);
    return;
  }
  for (std::size_t k = from; k < roots.size(); ++k) {
    RootVec next = rest - roots[k];
    if (!is_nonnegative(next))
      continue;
    ++mult[k];
    brute_partitions(roots, next, k, mult, out);
    --mult[k];
  }
}

/// Shortest path from 0 to gamma adding one positive root per step.
int bfs_nu(const RootSystem &rs, const RootVec &gamma) {
  std::map<RootVec, int> dist{{RootVec(rs.rank(), 0), 0}};
  std::deque<RootVec> queue{RootVec(rs.rank(), 0)};
  while (!queue.empty()) {
    RootVec v = queue.front();
    queue.pop_front();
    if (v == gamma)
      return dist[v];
    for (const auto &a : rs.positive_roots()) {
      RootVec w = v + a;
      if (!is_nonnegative(gamma - w) || dist.count(w))
        continue;
      dist[w] = dist[v] + 1;
      queue.push_back(w);
    }
  }
  return -1;
}

} // namespace

TEST(Cartan, Presets) {
  EXPECT_EQ(CartanMatrix::preset("B2").rows(), (std::vector<std::vector<int>>{{2, -2}, {-1, 2}}));
  EXPECT_EQ(CartanMatrix::preset("G2").rows(), (std::vector<std::vector<int>>{{2, -3}, {-1, 2}}));
  EXPECT_EQ(CartanMatrix::rank2(2), CartanMatrix::preset("B2"));
  EXPECT_THROW(CartanMatrix::preset("E8"), InputError);
}

TEST(Cartan, RejectsMalformedMatrices) {
  EXPECT_THROW(CartanMatrix({{3, -1}, {-1, 2}}), InputError);
  EXPECT_THROW(CartanMatrix({{2, 1}, {-1, 2}}), InputError);
  EXPECT_THROW(CartanMatrix({{2, 0}, {-1, 2}}), InputError);
  EXPECT_THROW(CartanMatrix({{2, -1}}), InputError);
}

TEST(Cartan, NonSymmetrizable) {
  CartanMatrix c({{2, -1, -1}, {-1, 2, -1}, {-2, -1, 2}});
  EXPECT_THROW(build_root_system(c), InputError);
}

TEST(Cartan, NonFiniteTypeNamesTheMinor) {
  try {
    build_root_system(CartanMatrix({{2, -2}, {-2, 2}}));
    FAIL() << "affine Cartan matrix accepted";
  } catch (const InputError &e) {
    EXPECT_NE(std::string(e.what()).find("minor 2"), std::string::npos) << e.what();
  }
}

TEST(RootSystem, A2) {
  RootSystem rs = rs_of("A2");
  EXPECT_EQ(rs.positive_roots(), (std::vector<RootVec>{rv({1, 0}), rv({0, 1}), rv({1, 1})}));
  EXPECT_EQ(rs.d(), (std::vector<int>{1, 1}));
}

TEST(RootSystem, B2) {
  RootSystem rs = rs_of("B2");
  EXPECT_EQ(rs.positive_roots(),
            (std::vector<RootVec>{rv({1, 0}), rv({0, 1}), rv({1, 1}), rv({2, 1})}));
  EXPECT_EQ(rs.d(), (std::vector<int>{1, 2}));
}

TEST(RootSystem, G2) {
  RootSystem rs = rs_of("G2");
  EXPECT_EQ(rs.positive_roots().size(), 6u);
  EXPECT_TRUE(rs.is_positive_root(rv({3, 2})));
  EXPECT_EQ(rs.d(), (std::vector<int>{1, 3}));
}

TEST(RootSystem, MatchesWeylOrbit) {
  for (auto c : {CartanMatrix::preset("A1"), CartanMatrix::preset("A2"), CartanMatrix::preset("B2"),
                 CartanMatrix::preset("G2"), CartanMatrix({{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}}),
                 CartanMatrix({{2, -1, 0}, {-1, 2, -2}, {0, -1, 2}}),
                 CartanMatrix({{2, -1, 0, 0}, {-1, 2, -2, 0}, {0, -1, 2, -1}, {0, 0, -1, 2}})}) {
    RootSystem rs = build_root_system(c);
    std::set<RootVec> mine(rs.positive_roots().begin(), rs.positive_roots().end());
    EXPECT_EQ(mine, weyl_orbit_positive(rs));
    // height order
    for (std::size_t k = 1; k < rs.positive_roots().size(); ++k)
      EXPECT_LE(height(rs.positive_roots()[k - 1]), height(rs.positive_roots()[k]));
  }
}

TEST(RootSystem, SymmetrizedFormAndNormalization) {
  for (const char *name : {"A2", "B2", "G2"}) {
    RootSystem rs = rs_of(name);
    for (std::size_t i = 0; i < rs.rank(); ++i)
      for (std::size_t j = 0; j < rs.rank(); ++j)
        EXPECT_EQ(rs.d()[i] * rs.cartan()(i, j), rs.d()[j] * rs.cartan()(j, i));
    int shortest = 1 << 20;
    for (const auto &a : rs.positive_roots())
      shortest = std::min(shortest, rs.pairing(a, a));
    EXPECT_EQ(shortest, 2) << name;
    for (std::size_t i = 0; i < rs.rank(); ++i) {
      RootVec a = simple_root(rs.rank(), i);
      EXPECT_EQ(rs.pairing(a, a), 2 * rs.d()[i]);
    }
  }
}

TEST(RootEval, Examples) {
  std::vector<Rational> h1{1, 0};
  EXPECT_EQ(root_eval(rs_of("A2"), rv({0, 1}), h1), -1);
  EXPECT_EQ(root_eval(rs_of("B2"), rv({0, 1}), h1), -2);
  for (const char *name : {"A2", "B2", "G2"}) {
    RootSystem rs = rs_of(name);
    for (std::size_t i = 0; i < 2; ++i) {
      std::vector<Rational> h(2, Rational(0));
      h[i] = 1;
      EXPECT_EQ(root_eval(rs, simple_root(2, i), h), 2 * rs.d()[i]);
    }
  }
  EXPECT_THROW(root_eval(rs_of("A2"), rv({1, 0}), std::vector<Rational>{1}), InputError);
}

TEST(RootEval, IsLinearInH) {
  RootSystem rs = rs_of("G2");
  std::vector<Rational> a{ratio(1, 2), 3}, b{-2, ratio(5, 7)}, sum{ratio(-3, 2), ratio(26, 7)};
  for (const auto &alpha : rs.positive_roots())
    EXPECT_EQ(root_eval(rs, alpha, a) + root_eval(rs, alpha, b), root_eval(rs, alpha, sum));
}

TEST(KtOrder, A2) {
  ConvexOrder o = kt_order(rs_of("A2"));
  EXPECT_EQ(o.sequence, (std::vector<RootVec>{rv({1, 0}), rv({1, 1}), rv({0, 1})}));
  EXPECT_EQ(o.anchor, std::make_pair(std::size_t{0}, std::size_t{1}));
}

TEST(KtOrder, B2MatchesDisplay) {
  ConvexOrder o = kt_order(rs_of("B2"));
  EXPECT_EQ(o.sequence, (std::vector<RootVec>{rv({1, 0}), rv({2, 1}), rv({1, 1}), rv({0, 1})}));
  EXPECT_EQ(o.anchor, std::make_pair(std::size_t{0}, std::size_t{1}));
}

TEST(KtOrder, G2MatchesDisplay) {
  ConvexOrder o = kt_order(rs_of("G2"));
  EXPECT_EQ(o.sequence, (std::vector<RootVec>{rv({1, 0}), rv({3, 1}), rv({2, 1}), rv({3, 2}),
                                              rv({1, 1}), rv({0, 1})}));
  EXPECT_EQ(o.anchor, std::make_pair(std::size_t{0}, std::size_t{1}));
}

TEST(KtOrder, RankOneHasNoAnchor) {
  try {
    kt_order(rs_of("A1"));
    FAIL();
  } catch (const DomainError &e) {
    EXPECT_NE(std::string(e.what()).find("no admissible anchor"), std::string::npos);
  }
}

TEST(KtOrder, ConvexWithAnchorInHigherRank) {
  for (auto c : {CartanMatrix({{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}}),
                 CartanMatrix({{2, -1, 0}, {-1, 2, -2}, {0, -1, 2}}),
                 CartanMatrix({{2, -1, 0}, {-1, 2, -1}, {0, -2, 2}}),
                 CartanMatrix({{2, -1, 0, 0}, {-1, 2, -2, 0}, {0, -1, 2, -1}, {0, 0, -1, 2}})}) {
    RootSystem rs = build_root_system(c);
    ConvexOrder o = kt_order(rs);
    EXPECT_EQ(o.sequence.size(), rs.positive_roots().size());
    std::set<RootVec> a(o.sequence.begin(), o.sequence.end());
    EXPECT_EQ(a.size(), o.sequence.size());
    EXPECT_TRUE(is_convex(rs, o.sequence));
    auto [i, j] = o.anchor;
    EXPECT_TRUE(is_admissible_anchor(rs, i, j));
    RootVec ai = simple_root(rs.rank(), i), aj = simple_root(rs.rank(), j);
    EXPECT_LT(o.position(ai), o.position(ai + aj));
    EXPECT_LT(o.position(ai + aj), o.position(aj));
  }
}

TEST(KtOrder, EveryRankTwoOrderIsConvex) {
  for (const char *name : {"A2", "B2", "G2"}) {
    RootSystem rs = rs_of(name);
    ConvexOrder o = kt_order(rs);
    // check the convexity property pair by pair, independent of is_convex
    for (const auto &a : rs.positive_roots())
      for (const auto &b : rs.positive_roots()) {
        if (!rs.is_positive_root(a + b))
          continue;
        std::size_t pa = o.position(a), pb = o.position(b), ps = o.position(a + b);
        EXPECT_TRUE((pa < ps && ps < pb) || (pb < ps && ps < pa)) << name;
      }
  }
}

TEST(Partitions, Examples) {
  RootSystem a2 = rs_of("A2");
  ConvexOrder o = kt_order(a2);
  auto p = partitions(o.sequence, rv({1, 1}));
  ASSERT_EQ(p.size(), 2u);
  // sequence (a1, a1+a2, a2): {a1, a2} = (1,0,1), {a1+a2} = (0,1,0)
  EXPECT_EQ(p[0].multiplicity, (std::vector<int>{0, 1, 0}));
  EXPECT_EQ(p[1].multiplicity, (std::vector<int>{1, 0, 1}));
  auto q = partitions(o.sequence, rv({2, 0}));
  ASSERT_EQ(q.size(), 1u);
  EXPECT_EQ(q[0].multiplicity, (std::vector<int>{2, 0, 0}));

  RootSystem b2 = rs_of("B2");
  auto r = partitions(kt_order(b2).sequence, rv({2, 1}));
  // sequence (a1, 2a1+a2, a1+a2, a2)
  std::set<std::vector<int>> got;
  for (const auto &x : r)
    got.insert(x.multiplicity);
  EXPECT_EQ(got, (std::set<std::vector<int>>{{0, 1, 0, 0}, {1, 0, 1, 0}, {2, 0, 0, 1}}));

  auto zero = partitions(a2, rv({0, 0}));
  ASSERT_EQ(zero.size(), 1u);
  EXPECT_EQ(zero[0].parts(), 0);
  EXPECT_THROW(partitions(a2, rv({-1, 1})), InputError);
}

TEST(Partitions, BruteForceCrossCheck) {
  for (const char *name : {"A2", "B2", "G2"}) {
    RootSystem rs = rs_of(name);
    ConvexOrder o = kt_order(rs);
    for (const auto &gamma : lattice_points_up_to(2, 6)) {
      auto mine = partitions(o.sequence, gamma);
      std::set<std::vector<int>> oracle;
      std::vector<int> mult(o.sequence.size(), 0);
      brute_partitions(o.sequence, gamma, 0, mult, oracle);
      std::set<std::vector<int>> got;
      for (std::size_t k = 0; k < mine.size(); ++k) {
        got.insert(mine[k].multiplicity);
        if (k) {
          EXPECT_LT(mine[k - 1].multiplicity, mine[k].multiplicity);
        }
        RootVec sum(2, 0);
        for (std::size_t a = 0; a < o.sequence.size(); ++a)
          sum = sum + mine[k].multiplicity[a] * o.sequence[a];
        EXPECT_EQ(sum, gamma);
      }
      EXPECT_EQ(got.size(), mine.size()) << "duplicates at " << root_label(gamma);
      EXPECT_EQ(got, oracle) << name << " " << root_label(gamma);
      EXPECT_EQ(nu(rs, gamma), bfs_nu(rs, gamma)) << name << " " << root_label(gamma);
    }
  }
}

TEST(Nu, Examples) {
  RootSystem a2 = rs_of("A2");
  EXPECT_EQ(nu(a2, rv({1, 0})), 1);
  EXPECT_EQ(nu(a2, rv({1, 1})), 1);
  EXPECT_EQ(nu(a2, rv({2, 0})), 2);
  EXPECT_EQ(nu(a2, rv({0, 0})), 0);
  EXPECT_EQ(nu(rs_of("G2"), rv({3, 2})), 1);
  EXPECT_THROW(nu(a2, rv({1, -1})), InputError);
}

TEST(Nu, Subadditive) {
  for (const char *name : {"A2", "B2", "G2"}) {
    RootSystem rs = rs_of(name);
    auto pts = lattice_points_up_to(2, 6);
    for (const auto &g : pts)
      for (const auto &h : pts)
        if (height(g) + height(h) <= 6) {
          EXPECT_LE(nu(rs, g + h), nu(rs, g) + nu(rs, h));
        }
  }
}

TEST(LatticePoints, CountAndOrder) {
  auto pts = lattice_points_up_to(2, 3);
  EXPECT_EQ(pts.size(), 10u);
  EXPECT_EQ(pts.front(), rv({0, 0}));
  EXPECT_EQ(pts[1], rv({1, 0}));
  EXPECT_EQ(pts[2], rv({0, 1}));
}

TEST(RootLabel, Format) {
  EXPECT_EQ(root_label(rv({1, 2})), "a1+2a2");
  EXPECT_EQ(root_label(rv({0, 1})), "a2");
  EXPECT_EQ(root_label(rv({0, 0})), "0");
}
