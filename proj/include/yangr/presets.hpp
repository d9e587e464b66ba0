#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "yangr/rep.hpp"

namespace yangr::presets {

/// Level-0 spec with empty matrices of the right shape.
inline RepSpec blank(const RootSystem &rs, std::size_t dim, std::string name) {
  RepSpec spec;
  spec.name = std::move(name);
  spec.rs = rs;
  spec.dim = dim;
  for (std::size_t i = 0; i < rs.rank(); ++i) {
    spec.xi0.emplace_back(dim, dim);
    spec.xplus0.emplace_back(dim, dim);
    spec.xminus0.emplace_back(dim, dim);
  }
  return spec;
}

/// Fills xi0 from the weights: xi_{i,0} = d_i mu(h_i).
inline void fill_cartan(RepSpec &spec) {
  for (std::size_t i = 0; i < spec.rs.rank(); ++i)
    for (std::size_t v = 0; v < spec.dim; ++v)
      spec.xi0[i](v, v) = spec.rs.d()[i] * spec.weights[v][i];
}

inline RepSpec trivial(const RootSystem &rs) {
  RepSpec spec = blank(rs, 1, "trivial");
  spec.weights.assign(1, std::vector<int>(rs.rank(), 0));
  return spec;
}

/// Irreducible sl2-module of dimension n; basis v_0..v_{n-1} of weights n-1-2k.
inline RepSpec sl2_irrep(std::size_t n) {
  const RootSystem rs = build_root_system(CartanMatrix::preset("A1"));
  RepSpec spec = blank(rs, n, "sl2_dim" + std::to_string(n));
  const int top = static_cast<int>(n) - 1;
  for (std::size_t k = 0; k < n; ++k)
    spec.weights.push_back({top - 2 * static_cast<int>(k)});
  for (std::size_t k = 1; k < n; ++k) {
    spec.xplus0[0](k - 1, k) = static_cast<long>(k * (n - k));
    spec.xminus0[0](k, k - 1) = 1;
  }
  fill_cartan(spec);
  return spec;
}

/// Sym^k of the defining representation of sl3, on monomials e1^a e2^b e3^c
/// listed with the highest weight first; E_ab acts as the derivation e_b -> e_a.
inline RepSpec a2_symmetric_power(int k) {
  const RootSystem rs = build_root_system(CartanMatrix::preset("A2"));
  std::vector<std::array<int, 3>> monomials;
  for (int a = k; a >= 0; --a)
    for (int b = k - a; b >= 0; --b)
      monomials.push_back({a, b, k - a - b});
  RepSpec spec = blank(rs, monomials.size(), k == 1 ? "a2_fund" : "a2_sym" + std::to_string(k));
  for (const auto &m : monomials)
    spec.weights.push_back({m[0] - m[1], m[1] - m[2]});
  auto index_of = [&](const std::array<int, 3> &m) {
    return static_cast<std::size_t>(std::find(monomials.begin(), monomials.end(), m) -
                                    monomials.begin());
  };
  // E_ab with a = from + 1 target letter
  auto apply = [&](QMatrix &out, int to, int from) {
    for (std::size_t c = 0; c < monomials.size(); ++c) {
      auto m = monomials[c];
      if (m[static_cast<std::size_t>(from)] == 0)
        continue;
      const int mult = m[static_cast<std::size_t>(from)];
      m[static_cast<std::size_t>(from)] -= 1;
      m[static_cast<std::size_t>(to)] += 1;
      out(index_of(m), c) += mult;
    }
  };
  apply(spec.xplus0[0], 0, 1);
  apply(spec.xminus0[0], 1, 0);
  apply(spec.xplus0[1], 1, 2);
  apply(spec.xminus0[1], 2, 1);
  fill_cartan(spec);
  return spec;
}

/// 4-dimensional module for Cartan matrix [[2,-2],[-1,2]] (d = (1, 2)).
inline RepSpec b2_vector() {
  const RootSystem rs = build_root_system(CartanMatrix::preset("B2"));
  RepSpec spec = blank(rs, 4, "b2_vec4");
  spec.weights = {{1, 0}, {-1, 1}, {1, -1}, {-1, 0}};
  spec.xplus0[0](0, 1) = 1;
  spec.xplus0[0](2, 3) = 1;
  spec.xminus0[0](1, 0) = 1;
  spec.xminus0[0](3, 2) = 1;
  spec.xplus0[1](1, 2) = 1;
  spec.xminus0[1](2, 1) = 2;
  fill_cartan(spec);
  return spec;
}

/// Level-0 seeds for the bundled fixtures, by name.
inline RepSpec level0(const std::string &name) {
  if (name == "sl2_dim1")
    return sl2_irrep(1);
  if (name == "sl2_dim2")
    return sl2_irrep(2);
  if (name == "sl2_dim3")
    return sl2_irrep(3);
  if (name == "a2_fund")
    return a2_symmetric_power(1);
  if (name == "a2_sym2")
    return a2_symmetric_power(2);
  if (name == "b2_vec4")
    return b2_vector();
  throw InputError("unknown representation preset '" + name + "'");
}

inline const std::vector<std::string> &fixture_names() {
  static const std::vector<std::string> names{"sl2_dim2", "sl2_dim3", "a2_fund", "a2_sym2",
                                              "b2_vec4"};
  return names;
}

} // namespace yangr::presets
