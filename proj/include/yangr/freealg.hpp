#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "yangr/affine.hpp"
#include "yangr/error.hpp"
#include "yangr/hbar_poly.hpp"
#include "yangr/root_system.hpp"

namespace yangr::freealg {

enum class GenKind : std::uint8_t { plus = 0, minus = 1, cartan = 2 };

/// One of x^+_{i,r}, x^-_{i,r}, xi_{i,r}; `node` is 0-based.
struct GenSymbol {
  GenKind kind = GenKind::cartan;
  int node = 0;
  int loop = 0;
  auto operator<=>(const GenSymbol &) const = default;
};

inline std::string to_string(const GenSymbol &g) {
  const char *head = g.kind == GenKind::plus ? "x+" : g.kind == GenKind::minus ? "x-" : "xi";
  return std::string(head) + "_{" + std::to_string(g.node + 1) + "," +
         std::to_string(g.loop) + "}";
}

using Word = std::vector<GenSymbol>;

inline std::string to_string(const Word &w) {
  if (w.empty())
    return "1";
  std::string out;
  for (const auto &g : w) {
    if (!out.empty())
      out += " ";
    out += to_string(g);
  }
  return out;
}

inline int loopdeg(const Word &w) {
  int acc = 0;
  for (const auto &g : w)
    acc += g.loop;
  return acc;
}

/// Q-grading: +alpha_i for x^+_i, -alpha_i for x^-_i, 0 for xi.
inline RootVec weight(const Word &w, std::size_t rank) {
  RootVec out(rank, 0);
  for (const auto &g : w) {
    if (g.kind == GenKind::plus)
      out.at(static_cast<std::size_t>(g.node)) += 1;
    else if (g.kind == GenKind::minus)
      out.at(static_cast<std::size_t>(g.node)) -= 1;
  }
  return out;
}

/// Noncommutative polynomial: finite map from words to nonzero coefficients.
template <class Letter, class Coeff> class Poly {
public:
  using WordT = std::vector<Letter>;
  using Terms = std::map<WordT, Coeff>;

  Poly() = default;
  static Poly monomial(WordT w, Coeff c = Coeff(1)) {
    Poly p;
    p.add_term(std::move(w), std::move(c));
    return p;
  }
  static Poly letter(Letter l) { return monomial(WordT{l}); }
  static Poly one() { return monomial(WordT{}); }

  void add_term(const WordT &w, const Coeff &c) {
    if (yangr::is_zero(c))
      return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (yangr::is_zero(it->second))
        terms_.erase(it);
    }
  }

  const Terms &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Coeff coeff(const WordT &w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Coeff() : it->second;
  }

  Poly &operator+=(const Poly &o) {
    for (const auto &[w, c] : o.terms_)
      add_term(w, c);
    return *this;
  }
  Poly &operator-=(const Poly &o) {
    for (const auto &[w, c] : o.terms_)
      add_term(w, -c);
    return *this;
  }
  Poly &operator*=(const Coeff &s) {
    if (yangr::is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto &[w, c] : terms_)
      c = c * s;
    std::erase_if(terms_, [](const auto &kv) { return yangr::is_zero(kv.second); });
    return *this;
  }

  friend Poly operator+(Poly a, const Poly &b) { return a += b; }
  friend Poly operator-(Poly a, const Poly &b) { return a -= b; }
  friend Poly operator-(Poly a) { return a *= Coeff(-1); }
  friend Poly operator*(Poly a, const Coeff &s) { return a *= s; }
  friend Poly operator*(const Coeff &s, Poly a) { return a *= s; }
  friend Poly operator*(const Poly &a, const Poly &b) {
    Poly out;
    for (const auto &[wa, ca] : a.terms_)
      for (const auto &[wb, cb] : b.terms_) {
        WordT w = wa;
        w.insert(w.end(), wb.begin(), wb.end());
        out.add_term(w, ca * cb);
      }
    return out;
  }
  friend bool operator==(const Poly &a, const Poly &b) { return a.terms_ == b.terms_; }

private:
  Terms terms_;
};

template <class L, class C> Poly<L, C> bracket(const Poly<L, C> &a, const Poly<L, C> &b) {
  return a * b - b * a;
}

using NCPoly = Poly<GenSymbol, HbarPoly>;

inline NCPoly gen(GenKind kind, int node, int loop) {
  return NCPoly::letter(GenSymbol{kind, node, loop});
}
inline NCPoly xp(int node, int loop) { return gen(GenKind::plus, node, loop); }
inline NCPoly xm(int node, int loop) { return gen(GenKind::minus, node, loop); }
inline NCPoly xi(int node, int loop) { return gen(GenKind::cartan, node, loop); }
inline NCPoly x_signed(int sign, int node, int loop) {
  return sign > 0 ? xp(node, loop) : xm(node, loop);
}

inline std::string to_string(const NCPoly &p) {
  if (p.is_zero())
    return "0";
  std::string out;
  for (const auto &[w, c] : p.terms()) {
    if (!out.empty())
      out += " + ";
    out += "(" + c.str() + ")*" + to_string(w);
  }
  return out;
}

/// Weight of a weight-homogeneous polynomial; nullopt if inhomogeneous or zero.
inline std::optional<RootVec> homogeneous_weight(const NCPoly &p, std::size_t rank) {
  std::optional<RootVec> w;
  for (const auto &[word, c] : p.terms()) {
    RootVec wt = weight(word, rank);
    if (w && *w != wt)
      return std::nullopt;
    w = wt;
  }
  return w;
}

/// Degrees loopdeg(word) + hbar-degree occurring in p.
inline std::set<int> total_degrees(const NCPoly &p) {
  std::set<int> out;
  for (const auto &[word, c] : p.terms())
    for (std::size_t k = 0; k < c.coeffs().size(); ++k)
      if (!yangr::is_zero(c.coeffs()[k]))
        out.insert(loopdeg(word) + static_cast<int>(k));
  return out;
}

struct Relation {
  std::string id;           ///< "Y1" .. "Y6"
  std::vector<int> indices; ///< instance indices, see instantiate_relations
  NCPoly poly;

  std::string label() const {
    std::string out = id + "(";
    for (std::size_t k = 0; k < indices.size(); ++k)
      out += (k ? "," : "") + std::to_string(indices[k]);
    return out + ")";
  }
};

struct RelationCutoffs {
  int loop_cutoff = 2;   ///< every letter has loop index <= this
  int length_cutoff = 5; ///< every monomial has length <= this
};

struct RelationSet {
  std::size_t rank = 0;
  std::vector<int> d;
  RelationCutoffs cutoffs;
  std::vector<Relation> relations;
  bool empty_warning = false; ///< cutoffs admitted no instance at all
};

/// Instances of the defining relations whose monomials respect the cutoffs.
/// Index layout (nodes 1-based as printed, sign = +1/-1):
///   Y1 (i, r, j, s)           [xi_{i,r}, xi_{j,s}]
///   Y2 (sign, i, j, s)        [xi_{i,0}, x^±_{j,s}] ∓ d_i a_ij x^±_{j,s}
///   Y3 (sign, i, j, r, s)     [xi_{i,r+1}, x_{j,s}] - [xi_{i,r}, x_{j,s+1}] ∓ hbar d_i a_ij/2 {xi_{i,r}, x_{j,s}}
///   Y4 (sign, i, j, r, s)     [x_{i,r+1}, x_{j,s}] - [x_{i,r}, x_{j,s+1}] ∓ hbar d_i a_ij/2 {x_{i,r}, x_{j,s}}
///   Y5 (i, j, r, s)           [x^+_{i,r}, x^-_{j,s}] - delta_ij xi_{i,r+s}
///   Y6 (sign, i, j, s, r_1..r_m)  symmetrized Serre relation, m = 1 - a_ij
inline RelationSet instantiate_relations(const RootSystem &rs, RelationCutoffs cutoffs) {
  RelationSet out;
  out.rank = rs.rank();
  out.d = rs.d();
  out.cutoffs = cutoffs;
  const int n = static_cast<int>(rs.rank());
  const int L = cutoffs.loop_cutoff;
  const HbarPoly hbar = HbarPoly::hbar();
  auto a = [&](int i, int j) { return rs.cartan()(static_cast<std::size_t>(i), static_cast<std::size_t>(j)); };
  auto di = [&](int i) { return rs.d()[static_cast<std::size_t>(i)]; };
  auto emit = [&](std::string id, std::vector<int> idx, NCPoly p, int length) {
    if (length > cutoffs.length_cutoff || p.is_zero())
      return;
    out.relations.push_back({std::move(id), std::move(idx), std::move(p)});
  };

  if (L >= 0) {
    for (int i = 0; i < n; ++i)
      for (int r = 0; r <= L; ++r)
        for (int j = 0; j < n; ++j)
          for (int s = 0; s <= L; ++s)
            if (std::make_pair(i, r) < std::make_pair(j, s))
              emit("Y1", {i + 1, r, j + 1, s}, bracket(xi(i, r), xi(j, s)), 2);
  }
  for (int sign : {1, -1})
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int s = 0; s <= L; ++s) {
          NCPoly x = x_signed(sign, j, s);
          emit("Y2", {sign, i + 1, j + 1, s},
               bracket(xi(i, 0), x) - HbarPoly(Rational(sign * di(i) * a(i, j))) * x, 2);
        }
  for (int sign : {1, -1})
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int r = 0; r + 1 <= L; ++r)
          for (int s = 0; s + 1 <= L; ++s) {
            HbarPoly c = hbar * HbarPoly(ratio(sign * di(i) * a(i, j), 2));
            NCPoly p = bracket(xi(i, r + 1), x_signed(sign, j, s)) -
                       bracket(xi(i, r), x_signed(sign, j, s + 1)) -
                       c * (xi(i, r) * x_signed(sign, j, s) + x_signed(sign, j, s) * xi(i, r));
            emit("Y3", {sign, i + 1, j + 1, r, s}, std::move(p), 2);
          }
  for (int sign : {1, -1})
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int r = 0; r + 1 <= L; ++r)
          for (int s = 0; s + 1 <= L; ++s) {
            HbarPoly c = hbar * HbarPoly(ratio(sign * di(i) * a(i, j), 2));
            NCPoly xi_r = x_signed(sign, i, r), xj_s = x_signed(sign, j, s);
            NCPoly p = bracket(x_signed(sign, i, r + 1), xj_s) -
                       bracket(xi_r, x_signed(sign, j, s + 1)) - c * (xi_r * xj_s + xj_s * xi_r);
            emit("Y4", {sign, i + 1, j + 1, r, s}, std::move(p), 2);
          }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int r = 0; r <= L; ++r)
        for (int s = 0; s <= L; ++s) {
          if (i == j && r + s > L)
            continue;
          NCPoly p = bracket(xp(i, r), xm(j, s));
          if (i == j)
            p -= xi(i, r + s);
          emit("Y5", {i + 1, j + 1, r, s}, std::move(p), 2);
        }
  for (int sign : {1, -1})
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j || a(i, j) == 0) {
          // m = 1: plain commutation
          if (i < j && a(i, j) == 0)
            for (int r = 0; r <= L; ++r)
              for (int s = 0; s <= L; ++s)
                emit("Y6", {sign, i + 1, j + 1, s, r},
                     bracket(x_signed(sign, i, r), x_signed(sign, j, s)), 2);
          continue;
        }
        const int m = 1 - a(i, j);
        if (m + 1 > cutoffs.length_cutoff)
          continue;
        std::vector<int> rs_idx(static_cast<std::size_t>(m), 0);
        // nondecreasing tuples r_1 <= ... <= r_m
        auto recurse = [&](auto &&self, int pos, int lo) -> void {
          if (pos == m) {
            for (int s = 0; s <= L; ++s) {
              std::vector<int> perm = rs_idx;
              NCPoly total;
              do {
                NCPoly inner = x_signed(sign, j, s);
                for (int k = m - 1; k >= 0; --k)
                  inner = bracket(x_signed(sign, i, perm[static_cast<std::size_t>(k)]), inner);
                total += inner;
              } while (std::next_permutation(perm.begin(), perm.end()));
              // std::next_permutation visits distinct arrangements only; each
              // arrangement stands for (multiplicity product)! permutations
              std::vector<int> idx{sign, i + 1, j + 1, s};
              idx.insert(idx.end(), rs_idx.begin(), rs_idx.end());
              emit("Y6", std::move(idx), std::move(total), m + 1);
            }
            return;
          }
          for (int r = lo; r <= L; ++r) {
            rs_idx[static_cast<std::size_t>(pos)] = r;
            self(self, pos + 1, r);
          }
        };
        recurse(recurse, 0, 0);
      }
  out.empty_warning = out.relations.empty();
  return out;
}

/// Restricts which letters may occur in the span used for membership.
enum class Sector {
  target_kinds, ///< only generator kinds occurring in the target
  cone,         ///< generators whose weights lie on the target's side, plus xi
  all,
};

struct MembershipBounds {
  int max_length = 5;  ///< word length of every monomial in u * rel * v
  int max_loopdeg = 2; ///< loop degree of every monomial in u * rel * v
  Sector sector = Sector::cone;
  std::size_t max_span = 400000; ///< cap on the number of products u * rel * v
};

inline std::string to_string(Sector s) {
  return s == Sector::target_kinds ? "target_kinds" : s == Sector::cone ? "cone" : "all";
}

class BoundOverflow : public Error {
public:
  BoundOverflow(std::size_t dim, std::size_t cap)
      : Error("membership span dimension " + std::to_string(dim) + " exceeds cap " +
              std::to_string(cap)),
        dimension(dim) {}
  std::size_t dimension;
};

struct CertificateTerm {
  Word left;
  std::size_t relation = 0; ///< index into the RelationSet
  Word right;
  HbarPoly coeff;
};

/// sum coeff * left * relation * right reproduces the certified target.
struct MembershipCertificate {
  std::vector<CertificateTerm> terms;

  NCPoly expand(const RelationSet &rels) const {
    NCPoly out;
    for (const auto &t : terms)
      out += t.coeff * (NCPoly::monomial(t.left) * rels.relations.at(t.relation).poly *
                        NCPoly::monomial(t.right));
    return out;
  }
};

/// "Not found" is a statement about the bounds, never a disproof.
struct NotFound {
  MembershipBounds bounds;
  std::size_t span_dimension = 0;
  std::size_t monomials = 0;
  std::string reason;
};

using MembershipOutcome = std::variant<MembershipCertificate, NotFound>;

namespace detail {

struct RelationInfo {
  RootVec weight;
  int degree = 0;
  int max_length = 0;
  int max_loop = 0;
};

inline std::optional<RelationInfo> relation_info(const Relation &rel, std::size_t rank) {
  RelationInfo info;
  auto w = homogeneous_weight(rel.poly, rank);
  auto degs = total_degrees(rel.poly);
  if (!w || degs.size() != 1)
    return std::nullopt;
  info.weight = *w;
  info.degree = *degs.begin();
  for (const auto &[word, c] : rel.poly.terms()) {
    info.max_length = std::max(info.max_length, static_cast<int>(word.size()));
    info.max_loop = std::max(info.max_loop, loopdeg(word));
  }
  return info;
}

} // namespace detail

/// Searches for target = sum q * hbar^e * u * rel * v over all products
/// whose monomials fit the bounds and whose weight and total degree
/// (loop degree plus hbar degree) match the target. Exact sparse solve.
inline MembershipOutcome ideal_member(const NCPoly &target, const RelationSet &rels,
                                      const MembershipBounds &bounds) {
  const std::size_t rank = rels.rank;
  if (target.is_zero())
    return MembershipCertificate{};
  auto target_weight = homogeneous_weight(target, rank);
  if (!target_weight)
    throw InputError("ideal_member: target is not weight-homogeneous");
  const std::set<int> degrees = total_degrees(target);
  const int max_degree = *degrees.rbegin();

  NotFound not_found{bounds, 0, 0, {}};
  for (const auto &[w, c] : target.terms())
    if (static_cast<int>(w.size()) > bounds.max_length || loopdeg(w) > bounds.max_loopdeg) {
      not_found.reason = "target monomial " + to_string(w) + " exceeds the bounds";
      return not_found;
    }

  // alphabet
  std::set<GenKind> kinds;
  if (bounds.sector == Sector::target_kinds) {
    for (const auto &[w, c] : target.terms())
      for (const auto &g : w)
        kinds.insert(g.kind);
  } else if (bounds.sector == Sector::cone) {
    bool nonneg = is_nonnegative(*target_weight);
    bool nonpos = std::all_of(target_weight->begin(), target_weight->end(),
                              [](int x) { return x <= 0; });
    kinds.insert(GenKind::cartan);
    if (nonneg || !nonpos)
      kinds.insert(GenKind::plus);
    if (nonpos || !nonneg)
      kinds.insert(GenKind::minus);
    if (is_zero_vec(*target_weight))
      kinds = {GenKind::plus, GenKind::minus, GenKind::cartan};
  } else {
    kinds = {GenKind::plus, GenKind::minus, GenKind::cartan};
  }
  const int loop_budget = std::min(bounds.max_loopdeg, max_degree);
  std::vector<GenSymbol> alphabet;
  for (GenKind k : kinds)
    for (int node = 0; node < static_cast<int>(rank); ++node)
      for (int r = 0; r <= loop_budget; ++r)
        alphabet.push_back({k, node, r});
  auto allowed = [&](const Word &w) {
    return std::all_of(w.begin(), w.end(),
                       [&](const GenSymbol &g) { return kinds.count(g.kind) > 0; });
  };

  // usable relations
  struct UsableRelation {
    std::size_t index;
    detail::RelationInfo info;
  };
  std::vector<UsableRelation> usable;
  int min_rel_length = bounds.max_length;
  for (std::size_t k = 0; k < rels.relations.size(); ++k) {
    const auto &rel = rels.relations[k];
    auto info = detail::relation_info(rel, rank);
    if (!info || info->degree > max_degree || info->max_length > bounds.max_length ||
        info->max_loop > bounds.max_loopdeg)
      continue;
    bool ok = true;
    for (const auto &[w, c] : rel.poly.terms())
      ok = ok && allowed(w);
    if (!ok)
      continue;
    usable.push_back({k, *info});
    min_rel_length = std::min(min_rel_length, info->max_length);
  }

  // context words
  struct Context {
    Word word;
    RootVec weight;
    int loop;
  };
  std::vector<Context> contexts;
  const int max_context = bounds.max_length - min_rel_length;
  {
    Word cur;
    auto recurse = [&](auto &&self, int loop) -> void {
      contexts.push_back({cur, weight(cur, rank), loop});
      if (static_cast<int>(cur.size()) >= max_context)
        return;
      for (const auto &g : alphabet) {
        if (loop + g.loop > loop_budget)
          continue;
        cur.push_back(g);
        self(self, loop + g.loop);
        cur.pop_back();
      }
    };
    if (max_context >= 0)
      recurse(recurse, 0);
  }
  std::map<RootVec, std::vector<std::size_t>> by_weight;
  for (std::size_t k = 0; k < contexts.size(); ++k)
    by_weight[contexts[k].weight].push_back(k);

  // columns
  struct Column {
    std::size_t u, rel, v;
    int e;
  };
  std::vector<Column> columns;
  for (int D : degrees)
    for (const auto &ur : usable) {
      if (ur.info.degree > D)
        continue;
      const int len_budget = bounds.max_length - ur.info.max_length;
      for (std::size_t ui = 0; ui < contexts.size(); ++ui) {
        const Context &u = contexts[ui];
        if (static_cast<int>(u.word.size()) > len_budget ||
            u.loop + ur.info.degree > D || u.loop + ur.info.max_loop > bounds.max_loopdeg)
          continue;
        RootVec need = *target_weight - ur.info.weight - u.weight;
        auto it = by_weight.find(need);
        if (it == by_weight.end())
          continue;
        for (std::size_t vi : it->second) {
          const Context &v = contexts[vi];
          if (static_cast<int>(u.word.size() + v.word.size()) > len_budget)
            continue;
          const int used = u.loop + v.loop;
          if (used + ur.info.degree > D || used + ur.info.max_loop > bounds.max_loopdeg)
            continue;
          columns.push_back({ui, ur.index, vi, D - ur.info.degree - used});
          if (columns.size() > bounds.max_span)
            throw BoundOverflow(columns.size(), bounds.max_span);
        }
      }
    }
  not_found.span_dimension = columns.size();

  // rows: (word, hbar degree)
  std::map<std::pair<Word, int>, std::size_t> row_of;
  std::vector<std::vector<SparseVec::Entry>> row_entries;
  auto row_index = [&](const Word &w, int k) {
    auto [it, inserted] = row_of.try_emplace({w, k}, row_entries.size());
    if (inserted)
      row_entries.emplace_back();
    return it->second;
  };
  for (std::size_t c = 0; c < columns.size(); ++c) {
    const Column &col = columns[c];
    const Word &u = contexts[col.u].word;
    const Word &v = contexts[col.v].word;
    for (const auto &[w, coeff] : rels.relations[col.rel].poly.terms()) {
      Word full = u;
      full.insert(full.end(), w.begin(), w.end());
      full.insert(full.end(), v.begin(), v.end());
      for (std::size_t k = 0; k < coeff.coeffs().size(); ++k)
        if (!yangr::is_zero(coeff.coeffs()[k]))
          row_entries[row_index(full, static_cast<int>(k) + col.e)].emplace_back(
              c, coeff.coeffs()[k]);
    }
  }
  for (const auto &[w, coeff] : target.terms())
    for (std::size_t k = 0; k < coeff.coeffs().size(); ++k)
      if (!yangr::is_zero(coeff.coeffs()[k]) && !row_of.count({w, static_cast<int>(k)})) {
        not_found.monomials = row_entries.size();
        not_found.reason = "target monomial " + to_string(w) + " not reached by the span";
        return not_found;
      }
  not_found.monomials = row_entries.size();

  AffineSystem system(columns.size());
  for (const auto &[key, r] : row_of) {
    Rational rhs = target.coeff(key.first).coeff(static_cast<std::size_t>(key.second));
    system.add_equation(SparseVec(std::move(row_entries[r])), rhs);
  }
  auto outcome = solve_affine(system, {.homogeneous_basis = false, .track_witness = false});
  if (std::holds_alternative<Inconsistent>(outcome)) {
    not_found.reason = "target not in the span within bounds";
    return not_found;
  }
  const auto &x = std::get<AffineSolution>(outcome).particular;

  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, HbarPoly> grouped;
  for (std::size_t c = 0; c < columns.size(); ++c)
    if (!yangr::is_zero(x[c]))
      grouped[{columns[c].u, columns[c].rel, columns[c].v}] +=
          HbarPoly::monomial(x[c], static_cast<std::size_t>(columns[c].e));
  MembershipCertificate cert;
  for (auto &[key, coeff] : grouped)
    if (!coeff.is_zero())
      cert.terms.push_back({contexts[std::get<0>(key)].word, std::get<1>(key),
                            contexts[std::get<2>(key)].word, coeff});
  if (!(cert.expand(rels) == target))
    throw Error("internal: membership certificate does not expand to the target: " + to_string(cert.expand(rels) - target));
  return cert;
}

} // namespace yangr::freealg
