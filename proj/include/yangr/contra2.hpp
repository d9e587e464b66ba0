#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "yangr/freealg.hpp"

namespace yangr::freealg {

/// Element of A ⊗ A for a free algebra A on `Letter`.
template <class Letter, class Coeff> class TensorPoly {
public:
  using WordT = std::vector<Letter>;
  using Key = std::pair<WordT, WordT>;

  void add_term(const WordT &l, const WordT &r, const Coeff &c) {
    if (yangr::is_zero(c))
      return;
    auto [it, inserted] = terms_.try_emplace({l, r}, c);
    if (!inserted) {
      it->second += c;
      if (yangr::is_zero(it->second))
        terms_.erase(it);
    }
  }
  static TensorPoly pure(const Poly<Letter, Coeff> &a, const Poly<Letter, Coeff> &b) {
    TensorPoly out;
    for (const auto &[wa, ca] : a.terms())
      for (const auto &[wb, cb] : b.terms())
        out.add_term(wa, wb, ca * cb);
    return out;
  }

  const std::map<Key, Coeff> &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  TensorPoly &operator+=(const TensorPoly &o) {
    for (const auto &[k, c] : o.terms_)
      add_term(k.first, k.second, c);
    return *this;
  }
  TensorPoly &operator-=(const TensorPoly &o) {
    for (const auto &[k, c] : o.terms_)
      add_term(k.first, k.second, -c);
    return *this;
  }
  friend TensorPoly operator+(TensorPoly a, const TensorPoly &b) { return a += b; }
  friend TensorPoly operator-(TensorPoly a, const TensorPoly &b) { return a -= b; }
  friend TensorPoly operator*(const TensorPoly &a, const TensorPoly &b) {
    TensorPoly out;
    for (const auto &[ka, ca] : a.terms_)
      for (const auto &[kb, cb] : b.terms_) {
        WordT l = ka.first, r = ka.second;
        l.insert(l.end(), kb.first.begin(), kb.first.end());
        r.insert(r.end(), kb.second.begin(), kb.second.end());
        out.add_term(l, r, ca * cb);
      }
    return out;
  }
  friend bool operator==(const TensorPoly &a, const TensorPoly &b) { return a.terms_ == b.terms_; }

private:
  std::map<Key, Coeff> terms_;
};

/// One checked identity of the rank-2 computation.
struct IdentityCheck {
  std::string name;
  NCPoly target;
  bool found = false;
  std::optional<MembershipCertificate> certificate;
  std::string note;
};

/// One application of an oriented rewrite rule during normalization:
/// coeff * (u ⊗ other) with the rule's left side spliced between u and v in
/// the tensor factor `factor`.
struct RewriteStep {
  std::size_t rule = 0;
  int factor = 0;
  std::string left, right, other;
  HbarPoly coeff;
};

struct Contra2Report {
  int p = 0;
  MembershipBounds bounds;
  std::vector<IdentityCheck> checks;
  std::vector<RewriteStep> steps;
  bool rules_match_checks = false;
  bool assembly_verified = false;
  /// normal form of the commutator in the abstract letters
  TensorPoly<char, HbarPoly> normal_form;
  HbarPoly rhs_coefficient; ///< coefficient of x3- x2- ⊗ x3+ x2+
  bool rhs_nonzero = false;
  std::string misprinted_variant; ///< outcome for the plus-generator variant
  bool passed = false;
};

namespace detail {

using CharPoly = Poly<char, HbarPoly>;
using CharTensor = TensorPoly<char, HbarPoly>;

/// lhs -> rhs, applied inside tensor factor `factor`.
struct Rule {
  std::string lhs;
  CharPoly rhs;
  int factor;
  std::size_t check; ///< index of the certified identity whose target is -(lhs - rhs)
};

inline CharPoly word(const std::string &w, HbarPoly c = HbarPoly(1)) {
  return CharPoly::monomial(std::vector<char>(w.begin(), w.end()), std::move(c));
}

inline std::optional<std::size_t> find_sub(const std::vector<char> &w, const std::string &pat) {
  if (pat.size() > w.size())
    return std::nullopt;
  for (std::size_t k = 0; k + pat.size() <= w.size(); ++k)
    if (std::equal(pat.begin(), pat.end(), w.begin() + static_cast<std::ptrdiff_t>(k)))
      return k;
  return std::nullopt;
}

} // namespace detail

/// Mechanical check of the rank-2 commutator computation for Cartan matrix
/// [[2,-p],[-1,2]] (d = (1, p)). Letters for the tensor assembly:
///   A = x-_{3,0}, C = x-_{2,0}, E = x-_{2,1} in the first factor,
///   B = x+_{3,0}, D = x+_{2,1}, F = x+_{2,0} in the second factor,
/// with x-_{3,0} = [x-_{2,0}, x-_{1,0}] and x+_{3,0} = (1/p)[x+_{1,0}, x+_{2,0}].
inline Contra2Report verify_contra2(int p, const MembershipBounds &bounds = {}) {
  using namespace detail;
  if (p < 1 || p > 3)
    throw InputError("verify_contra2: p must be 1, 2 or 3");
  Contra2Report report;
  report.p = p;
  report.bounds = bounds;
  const RootSystem rs = build_root_system(CartanMatrix::rank2(p));
  const RelationSet rels =
      instantiate_relations(rs, {bounds.max_loopdeg, bounds.max_length});
  const HbarPoly p_hbar = HbarPoly::monomial(Rational(p), 1);
  const int n1 = 0, n2 = 1;

  const NCPoly x3m = bracket(xm(n2, 0), xm(n1, 0));
  const NCPoly x3p = HbarPoly(ratio(1, p)) * bracket(xp(n1, 0), xp(n2, 0));
  std::map<char, NCPoly> subst{{'A', x3m},       {'C', xm(n2, 0)}, {'E', xm(n2, 1)},
                               {'B', x3p},       {'D', xp(n2, 1)}, {'F', xp(n2, 0)}};
  auto lift = [&](const std::vector<char> &w) {
    NCPoly out = NCPoly::one();
    for (char c : w)
      out = out * subst.at(c);
    return out;
  };
  auto lift_poly = [&](const CharPoly &a) {
    NCPoly out;
    for (const auto &[w, c] : a.terms())
      out += c * lift(w);
    return out;
  };

  auto run = [&](std::string name, NCPoly target) {
    IdentityCheck chk{std::move(name), std::move(target), false, std::nullopt, {}};
    try {
      auto outcome = ideal_member(chk.target, rels, bounds);
      if (auto *cert = std::get_if<MembershipCertificate>(&outcome)) {
        chk.found = true;
        chk.certificate = *cert;
      } else {
        const auto &nf = std::get<NotFound>(outcome);
        chk.note = nf.reason + " (span " + std::to_string(nf.span_dimension) + ")";
      }
    } catch (const BoundOverflow &e) {
      chk.note = e.what();
    }
    report.checks.push_back(std::move(chk));
    return report.checks.size() - 1;
  };

  for (int sign : {1, -1}) {
    NCPoly inner = bracket(x_signed(sign, n2, 0), x_signed(sign, n1, 0));
    NCPoly target = bracket(x_signed(sign, n2, 1), inner) -
                    HbarPoly(Rational(sign)) * p_hbar * (x_signed(sign, n2, 0) * inner);
    run(std::string("[x") + (sign > 0 ? "+" : "-") + "_{2,1},[x" + (sign > 0 ? "+" : "-") +
            "_{2,0},x" + (sign > 0 ? "+" : "-") + "_{1,0}]] " + (sign > 0 ? "-" : "+") +
            " p hbar x" + (sign > 0 ? "+" : "-") + "_{2,0}[x" + (sign > 0 ? "+" : "-") +
            "_{2,0},x" + (sign > 0 ? "+" : "-") + "_{1,0}]",
        std::move(target));
  }
  const std::size_t c_plus = run("[x+_{3,0},x+_{2,1}] + p hbar x+_{2,0}x+_{3,0}",
                                 bracket(x3p, xp(n2, 1)) + p_hbar * (xp(n2, 0) * x3p));
  const std::size_t c_minus = run("[x-_{3,0},x-_{2,1}] - p hbar x-_{2,0}x-_{3,0}",
                                  bracket(x3m, xm(n2, 1)) - p_hbar * (xm(n2, 0) * x3m));
  const std::size_t s_plus = run("[x+_{3,0},x+_{2,0}]", bracket(x3p, xp(n2, 0)));
  const std::size_t s_minus = run("[x-_{3,0},x-_{2,0}]", bracket(x3m, xm(n2, 0)));
  for (int k = 0; k <= 1; ++k)
    if (k <= bounds.max_loopdeg)
      run("[x+_{2,0},[x+_{2,0},x+_{1," + std::to_string(k) + "}]]",
          bracket(xp(n2, 0), bracket(xp(n2, 0), xp(n1, k))));

  try {
    NCPoly variant = bracket(x3m, xm(n2, 1)) - p_hbar * (xp(n2, 0) * x3p);
    (void)ideal_member(variant, rels, bounds);
    report.misprinted_variant = "accepted as a membership target";
  } catch (const InputError &e) {
    report.misprinted_variant = std::string("rejected: ") + e.what();
  }

  // Oriented rules; each rule's element lhs - rhs is minus a certified target.
  const std::vector<Rule> rules{
      {"CA", word("AC"), 0, s_minus},
      {"EA", word("AE") - word("CA", p_hbar), 0, c_minus},
      {"DB", word("BD") + word("FB", p_hbar), 1, c_plus},
      {"FB", word("BF"), 1, s_plus},
  };
  report.rules_match_checks = true;
  for (const auto &rule : rules) {
    NCPoly element = lift_poly(word(rule.lhs) - rule.rhs);
    if (!(element + report.checks[rule.check].target).is_zero())
      report.rules_match_checks = false;
  }

  // [A⊗B, C⊗D - E⊗F]
  const CharTensor ab = CharTensor::pure(word("A"), word("B"));
  const CharTensor other = CharTensor::pure(word("C"), word("D")) -
                           CharTensor::pure(word("E"), word("F"));
  const CharTensor lhs = ab * other - other * ab;

  CharTensor current = lhs;
  for (std::size_t guard = 0; guard < 1000; ++guard) {
    bool rewrote = false;
    for (const auto &[key, coeff] : current.terms()) {
      for (std::size_t r = 0; r < rules.size() && !rewrote; ++r) {
        const Rule &rule = rules[r];
        const auto &w = rule.factor == 0 ? key.first : key.second;
        auto pos = find_sub(w, rule.lhs);
        if (!pos)
          continue;
        std::vector<char> u(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(*pos));
        std::vector<char> v(w.begin() + static_cast<std::ptrdiff_t>(*pos + rule.lhs.size()),
                            w.end());
        const auto &oth = rule.factor == 0 ? key.second : key.first;
        CharPoly before = CharPoly::monomial(u) * word(rule.lhs) * CharPoly::monomial(v);
        CharPoly after = CharPoly::monomial(u) * rule.rhs * CharPoly::monomial(v);
        CharTensor delta = rule.factor == 0
                               ? CharTensor::pure(after - before, CharPoly::monomial(oth))
                               : CharTensor::pure(CharPoly::monomial(oth), after - before);
        HbarPoly c = coeff;
        report.steps.push_back({r, rule.factor, std::string(u.begin(), u.end()),
                                std::string(v.begin(), v.end()),
                                std::string(oth.begin(), oth.end()), c});
        CharTensor scaled;
        for (const auto &[k2, c2] : delta.terms())
          scaled.add_term(k2.first, k2.second, c2 * c);
        current += scaled;
        rewrote = true;
      }
      if (rewrote)
        break;
    }
    if (!rewrote)
      break;
  }
  report.normal_form = current;
  const CharTensor::Key target_key{{'A', 'C'}, {'B', 'F'}};
  auto it = current.terms().find(target_key);
  report.rhs_coefficient = it == current.terms().end() ? HbarPoly() : it->second;
  report.rhs_nonzero = !report.rhs_coefficient.is_zero() && current.terms().size() == 1;

  // Generator-level check: lift(lhs) - lift(nf) = sum of lifted rule applications.
  using GenTensor = TensorPoly<GenSymbol, HbarPoly>;
  auto lift_tensor = [&](const CharTensor &t) {
    GenTensor out;
    for (const auto &[k, c] : t.terms()) {
      GenTensor piece = GenTensor::pure(lift(k.first), lift(k.second));
      for (const auto &[k2, c2] : piece.terms())
        out.add_term(k2.first, k2.second, c2 * c);
    }
    return out;
  };
  GenTensor defect = lift_tensor(lhs) - lift_tensor(current);
  for (const auto &step : report.steps) {
    const Rule &rule = rules[step.rule];
    NCPoly element = NCPoly::monomial({}, step.coeff) *
                     lift(std::vector<char>(step.left.begin(), step.left.end())) *
                     lift_poly(word(rule.lhs) - rule.rhs) *
                     lift(std::vector<char>(step.right.begin(), step.right.end()));
    NCPoly oth = lift(std::vector<char>(step.other.begin(), step.other.end()));
    defect -= rule.factor == 0 ? GenTensor::pure(element, oth) : GenTensor::pure(oth, element);
  }
  report.assembly_verified = defect.is_zero() && report.rules_match_checks;

  bool all_found = true;
  for (const auto &c : report.checks)
    all_found = all_found && c.found;
  report.passed = all_found && report.assembly_verified && report.rhs_nonzero &&
                  report.rhs_coefficient == HbarPoly::monomial(Rational(-2 * p), 1);
  return report;
}

} // namespace yangr::freealg
