#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "yangr/auditor.hpp"
#include "yangr/contra2.hpp"
#include "yangr/freealg.hpp"
#include "yangr/rep.hpp"
#include "yangr/rminus.hpp"
#include "yangr/root_system.hpp"

namespace yangr::io {

using json = nlohmann::json;

inline json to_json(const Rational &x) { return to_string(x); }

/// Accepts "p/q" strings and JSON integers.
inline Rational rational_from_json(const json &j) {
  if (j.is_string())
    return parse_rational(j.get<std::string>());
  if (j.is_number_integer())
    return Rational(j.get<long>());
  throw InputError("expected a rational as a \"p/q\" string or an integer, got " + j.dump());
}

inline json to_json(const QMatrix &m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c)
      row.push_back(to_string(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline QMatrix matrix_from_json(const json &j) {
  if (!j.is_array())
    throw InputError("expected a matrix as an array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = rows ? j[0].size() : 0;
  QMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols)
      throw InputError("matrix rows have unequal lengths");
    for (std::size_t c = 0; c < cols; ++c)
      m(r, c) = rational_from_json(j[r][c]);
  }
  return m;
}

inline json to_json(const HbarPoly &p) {
  json out = json::array();
  for (const auto &c : p.coeffs())
    out.push_back(to_string(c));
  return out;
}

inline json to_json(const MatrixSeries &s) {
  json out = json::array();
  for (const auto &c : s.coeffs())
    out.push_back(to_json(c));
  return out;
}

inline json to_json(const RootVec &v) { return json(v); }

inline std::string gamma_key(const RootVec &v) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k)
    out += (k ? "," : "") + std::to_string(v[k]);
  return out;
}

inline RootVec parse_gamma_key(const std::string &key) {
  RootVec out;
  std::stringstream ss(key);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size())
        throw InputError("");
    } catch (const std::exception &) {
      throw InputError("invalid block key '" + key + "'");
    }
  }
  return out;
}

// ---- root data -----------------------------------------------------------

inline CartanMatrix cartan_from_json(const json &j) {
  const json &m = j.is_object() ? j.at("cartan") : j;
  if (!m.is_array())
    throw InputError("Cartan matrix must be a 2-D integer array");
  std::vector<std::vector<int>> rows;
  for (const auto &row : m) {
    if (!row.is_array())
      throw InputError("Cartan matrix must be a 2-D integer array");
    std::vector<int> r;
    for (const auto &x : row) {
      if (!x.is_number_integer())
        throw InputError("Cartan matrix entries must be integers");
      r.push_back(x.get<int>());
    }
    rows.push_back(std::move(r));
  }
  return CartanMatrix(std::move(rows));
}

inline std::optional<std::string> preset_name(const CartanMatrix &c) {
  for (const char *name : {"A1", "A2", "B2", "G2"})
    if (CartanMatrix::preset(name) == c)
      return std::string(name);
  return std::nullopt;
}

inline json to_json(const ConvexOrder &order) {
  json seq = json::array();
  json labels = json::array();
  for (const auto &v : order.sequence) {
    seq.push_back(v);
    labels.push_back(root_label(v));
  }
  return {{"sequence", seq},
          {"labels", labels},
          {"anchor", {order.anchor.first + 1, order.anchor.second + 1}}};
}

inline json to_json(const RootSystem &rs) {
  json roots = json::array();
  for (const auto &v : rs.positive_roots())
    roots.push_back(v);
  json out{{"cartan", rs.cartan().rows()}, {"d", rs.d()}, {"positive_roots", roots}};
  out["order"] = rs.rank() >= 2 ? to_json(kt_order(rs)) : json(nullptr);
  return out;
}

// ---- representations -----------------------------------------------------

inline json to_json(const RepSpec &spec) {
  json out;
  out["name"] = spec.name;
  if (auto p = preset_name(spec.rs.cartan()))
    out["preset"] = *p;
  else
    out["cartan"] = spec.rs.cartan().rows();
  out["dim"] = spec.dim;
  out["weights"] = spec.weights;
  auto family = [](const std::vector<QMatrix> &ms) {
    json a = json::array();
    for (const auto &m : ms)
      a.push_back(to_json(m));
    return a;
  };
  out["xi0"] = family(spec.xi0);
  out["xplus0"] = family(spec.xplus0);
  out["xminus0"] = family(spec.xminus0);
  if (spec.xi1) {
    out["xi1"] = family(*spec.xi1);
    out["hbar"] = to_string(spec.hbar);
  }
  return out;
}

inline RepSpec rep_spec_from_json(const json &j) {
  if (!j.is_object())
    throw InputError("representation spec must be a JSON object");
  try {
    RepSpec spec;
    spec.name = j.value("name", std::string("rep"));
    if (j.contains("preset"))
      spec.rs = build_root_system(CartanMatrix::preset(j.at("preset").get<std::string>()));
    else if (j.contains("cartan"))
      spec.rs = build_root_system(cartan_from_json(j.at("cartan")));
    else
      throw InputError("representation spec needs \"cartan\" or \"preset\"");
    spec.dim = j.at("dim").get<std::size_t>();
    spec.weights = j.at("weights").get<std::vector<std::vector<int>>>();
    auto family = [&](const char *key) {
      std::vector<QMatrix> out;
      for (const auto &m : j.at(key))
        out.push_back(matrix_from_json(m));
      return out;
    };
    spec.xi0 = family("xi0");
    spec.xplus0 = family("xplus0");
    spec.xminus0 = family("xminus0");
    if (j.contains("xi1"))
      spec.xi1 = family("xi1");
    spec.hbar = rational_from_json(j.value("hbar", json("1")));
    if (is_zero(spec.hbar))
      throw InputError("representation spec has hbar = 0");
    validate_level0(spec);
    return spec;
  } catch (const json::exception &e) {
    throw InputError(std::string("malformed representation spec: ") + e.what());
  }
}

inline json read_json_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw InputError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error &e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

inline void write_json_file(const std::string &path, const json &j) {
  std::ofstream out(path);
  if (!out)
    throw InputError("cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

inline RepSpec load_rep_spec(const std::string &path) {
  return rep_spec_from_json(read_json_file(path));
}

#ifdef YANGR_FIXTURE_DIR
inline constexpr const char *default_fixture_dir = YANGR_FIXTURE_DIR;
#else
inline constexpr const char *default_fixture_dir = "data/fixtures";
#endif

inline RepSpec load_fixture(const std::string &name,
                            const std::string &dir = default_fixture_dir) {
  return load_rep_spec(dir + "/" + name + ".json");
}

inline json to_json(const RelationReport &r) {
  json v = json::array();
  for (const auto &x : r.violations)
    v.push_back({{"relation", x.relation},
                 {"indices", x.indices},
                 {"label", x.label},
                 {"max_abs", to_string(x.max_abs)}});
  return {{"cutoff", r.cutoff}, {"instances", r.instances}, {"ok", r.ok()}, {"violations", v}};
}

// ---- R- blocks -----------------------------------------------------------

/// Everything needed to rebuild the tensor context plus the blocks.
struct BlocksFile {
  RepSpec left, right;
  Rational left_shift{0}, right_shift{0};
  Rational hbar{1};
  int R = 0;
  HPolicy policy = HPolicy::first_nonzero;
  RMinusBlocks blocks;
};

inline TensorContext build_context(const RepSpec &left, const RepSpec &right,
                                   const Rational &left_shift, const Rational &right_shift,
                                   int R, const Rational &hbar) {
  return make_context(extend(shifted_spec(at_hbar(left, hbar), left_shift), R, hbar),
                      extend(shifted_spec(at_hbar(right, hbar), right_shift), R, hbar));
}

inline json to_json(const BlocksFile &f) {
  json blocks = json::object();
  for (const auto &[gamma, series] : f.blocks.blocks)
    blocks[gamma_key(gamma)] = to_json(series);
  json hs = json::object();
  for (const auto &[gamma, h] : f.blocks.h_used) {
    json a = json::array();
    for (const auto &x : h)
      a.push_back(to_string(x));
    hs[gamma_key(gamma)] = a;
  }
  return {{"left", to_json(f.left)},
          {"right", to_json(f.right)},
          {"left_shift", to_string(f.left_shift)},
          {"right_shift", to_string(f.right_shift)},
          {"hbar", to_string(f.hbar)},
          {"H", f.blocks.H},
          {"N", f.blocks.N},
          {"R", f.R},
          {"h_policy", f.policy == HPolicy::first_nonzero ? "first_nonzero" : "last_nonzero"},
          {"h_used", hs},
          {"blocks", blocks}};
}

inline BlocksFile blocks_from_json(const json &j) {
  try {
    BlocksFile f;
    f.left = rep_spec_from_json(j.at("left"));
    f.right = rep_spec_from_json(j.at("right"));
    f.left_shift = rational_from_json(j.value("left_shift", json("0")));
    f.right_shift = rational_from_json(j.value("right_shift", json("0")));
    f.hbar = rational_from_json(j.value("hbar", json("1")));
    f.R = j.at("R").get<int>();
    f.policy = j.value("h_policy", std::string("first_nonzero")) == "last_nonzero"
                   ? HPolicy::last_nonzero
                   : HPolicy::first_nonzero;
    TensorContext ctx = build_context(f.left, f.right, f.left_shift, f.right_shift, f.R, f.hbar);
    RMinusBlocks b{std::move(ctx), j.at("H").get<int>(), j.at("N").get<std::size_t>(), {}, {}};
    const std::size_t dim = b.ctx.dim();
    for (const auto &[key, arr] : j.at("blocks").items()) {
      RootVec gamma = parse_gamma_key(key);
      if (gamma.size() != b.rs().rank())
        throw InputError("block key '" + key + "' does not match the rank");
      std::vector<QMatrix> coeffs;
      for (const auto &m : arr) {
        coeffs.push_back(matrix_from_json(m));
        if (coeffs.back().rows() != dim || coeffs.back().cols() != dim)
          throw InputError("block " + key + " has a coefficient of shape " +
                           coeffs.back().shape());
      }
      if (coeffs.size() != b.N + 1)
        throw InputError("block " + key + " has " + std::to_string(coeffs.size()) +
                         " coefficients, expected N+1");
      b.blocks.emplace(gamma, MatrixSeries(std::move(coeffs)));
    }
    if (j.contains("h_used"))
      for (const auto &[key, arr] : j.at("h_used").items()) {
        std::vector<Rational> h;
        for (const auto &x : arr)
          h.push_back(rational_from_json(x));
        if (h.size() != b.rs().rank())
          throw InputError("h_used entry '" + key + "' does not match the rank");
        b.h_used.emplace(parse_gamma_key(key), std::move(h));
      }
    f.blocks = std::move(b);
    return f;
  } catch (const json::exception &e) {
    throw InputError(std::string("malformed blocks file: ") + e.what());
  }
}

inline json to_json(const IntertwiningReport &r) {
  json nz = json::array();
  for (const auto &e : r.nonzero)
    nz.push_back({{"gamma", e.gamma},
                  {"h", e.h_index + 1},
                  {"order", e.order},
                  {"max_abs", to_string(e.max_abs)}});
  return {{"checked", r.checked}, {"ok", r.ok()}, {"nonzero", nz}};
}

// ---- audit ---------------------------------------------------------------

inline json opt_order(const std::optional<std::size_t> &o) {
  return o ? json(*o) : json(nullptr);
}

inline json to_json(const AuditReport &r) {
  json out;
  out["anchor"] = r.anchor ? json{r.anchor->first + 1, r.anchor->second + 1} : json(nullptr);
  json forced = json::array();
  for (const auto &f : r.forced)
    forced.push_back({{"block", factor_label(f.root, f.n)},
                      {"root", f.root},
                      {"n", f.n},
                      {"first_nonzero_order", opt_order(f.first_nonzero_order)}});
  out["forced_blocks_summary"] = forced;
  json res = json::array();
  for (const auto &s : r.residuals) {
    json e{{"gamma", s.gamma},
           {"label", root_label(s.gamma)},
           {"computed", s.computed},
           {"first_nonzero_order", opt_order(s.first_nonzero_order)},
           {"nonzero", s.nonzero}};
    if (!s.note.empty())
      e["note"] = s.note;
    res.push_back(std::move(e));
  }
  out["residuals"] = res;
  out["contra_commutator"] = {{"nonzero", r.contra.nonzero},
                              {"verdict", to_string(r.contra.verdict)},
                              {"p", r.contra.p},
                              {"matches_expected", r.contra.matches_expected},
                              {"matches_simple_block", r.contra.matches_simple_block},
                              {"max_abs", to_string(r.contra.max_abs)}};
  out["verdict"] = to_string(r.verdict);
  return out;
}

// ---- free algebra --------------------------------------------------------

inline json to_json(const freealg::Word &w) {
  json out = json::array();
  for (const auto &g : w)
    out.push_back(freealg::to_string(g));
  return out;
}

inline json to_json(const freealg::NCPoly &p) {
  json out = json::array();
  for (const auto &[w, c] : p.terms())
    out.push_back({{"word", to_json(w)}, {"coeff", to_json(c)}});
  return out;
}

inline json to_json(const freealg::MembershipCertificate &cert,
                    const freealg::RelationSet &rels) {
  json out = json::array();
  for (const auto &t : cert.terms) {
    const auto &rel = rels.relations.at(t.relation);
    out.push_back({{"left_word", to_json(t.left)},
                   {"relation_id", rel.id},
                   {"relation_indices", rel.indices},
                   {"right_word", to_json(t.right)},
                   {"coeff", to_json(t.coeff)}});
  }
  return out;
}

inline json to_json(const freealg::MembershipBounds &b) {
  return {{"max_length", b.max_length},
          {"max_loopdeg", b.max_loopdeg},
          {"sector", freealg::to_string(b.sector)},
          {"max_span", b.max_span}};
}

/// Report of verify_contra2; certificates are included when `with_certificates`.
inline json to_json(const freealg::Contra2Report &r, bool with_certificates = false) {
  const RootSystem rs = build_root_system(CartanMatrix::rank2(r.p));
  const auto rels =
      freealg::instantiate_relations(rs, {r.bounds.max_loopdeg, r.bounds.max_length});
  json checks = json::array();
  for (const auto &c : r.checks) {
    json e{{"identity", c.name},
           {"found", c.found},
           {"certificate_terms", c.certificate ? c.certificate->terms.size() : 0}};
    if (!c.note.empty())
      e["note"] = c.note;
    if (with_certificates && c.certificate)
      e["certificate"] = to_json(*c.certificate, rels);
    checks.push_back(std::move(e));
  }
  json nf = json::array();
  for (const auto &[key, c] : r.normal_form.terms())
    nf.push_back({{"left", std::string(key.first.begin(), key.first.end())},
                  {"right", std::string(key.second.begin(), key.second.end())},
                  {"coeff", to_json(c)}});
  return {{"p", r.p},
          {"bounds", to_json(r.bounds)},
          {"checks", checks},
          {"rewrite_steps", r.steps.size()},
          {"assembly_verified", r.assembly_verified},
          {"normal_form", nf},
          {"rhs_coefficient", to_json(r.rhs_coefficient)},
          {"rhs_coefficient_text", r.rhs_coefficient.str()},
          {"rhs_nonzero", r.rhs_nonzero},
          {"misprinted_variant", r.misprinted_variant},
          {"passed", r.passed}};
}

} // namespace yangr::io
