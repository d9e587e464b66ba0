// yangr: command-line front end for the R-matrix toolkit.
//
// Exit codes: 0 success, 2 configuration or input error, 3 verification failure.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "yangr/json_io.hpp"
#include "yangr/nogo.hpp"
#include "yangr/presets.hpp"
#include "yangr/yangr.hpp"

namespace {

using namespace yangr;
using io::json;

constexpr int kOk = 0;
constexpr int kInput = 2;
constexpr int kFailed = 3;

Rational parse_nonzero_hbar(const std::string &text) {
  Rational h = parse_rational(text);
  if (is_zero(h))
    throw InputError("hbar must be nonzero");
  return h;
}

void emit(const json &j, const std::string &path) {
  if (path.empty())
    std::cout << j.dump(2) << "\n";
  else
    io::write_json_file(path, j);
}

struct RootsArgs {
  std::string preset, cartan, out;
};

int cmd_roots(const RootsArgs &a) {
  if (a.preset.empty() == a.cartan.empty())
    throw InputError("roots: give exactly one of --preset and --cartan");
  CartanMatrix c = a.preset.empty() ? io::cartan_from_json(io::read_json_file(a.cartan))
                                    : CartanMatrix::preset(a.preset);
  RootSystem rs = build_root_system(c);
  emit(io::to_json(rs), a.out);
  return kOk;
}

struct CheckRepArgs {
  std::string spec, report, hbar = "1", shift = "0";
  int cutoff = 4;
};

int cmd_check_rep(const CheckRepArgs &a) {
  if (a.cutoff < 1)
    throw InputError("--cutoff must be at least 1");
  RepSpec spec = io::load_rep_spec(a.spec);
  const Rational hbar = parse_nonzero_hbar(a.hbar);
  ExtendedRep rep =
      extend(shifted_spec(at_hbar(spec, hbar), parse_rational(a.shift)), a.cutoff, hbar);
  RelationReport r = check_relations(rep, a.cutoff);
  std::cout << spec.name << ": " << r.instances << " instances checked, " << r.violations.size()
            << " violations\n";
  for (const auto &v : r.violations)
    std::cout << "  " << v.label << "  max |entry| = " << to_string(v.max_abs) << "\n";
  if (!a.report.empty())
    io::write_json_file(a.report, io::to_json(r));
  return r.ok() ? kOk : kFailed;
}

struct SolveArgs {
  std::string left, right, out, hbar = "1", left_shift = "0", right_shift = "0",
                                policy = "first_nonzero";
  int height = 3;
  int order = 4;
  int cutoff = 0;
};

int cmd_solve(const SolveArgs &a) {
  if (a.height < 1)
    throw InputError("--height must be at least 1");
  if (a.order < 1)
    throw InputError("--order must be at least 1");
  const int R = a.cutoff ? a.cutoff : a.order;
  if (R < a.order)
    throw InputError("loop cutoff must be at least the series order");
  io::BlocksFile f;
  f.left = io::load_rep_spec(a.left);
  f.right = io::load_rep_spec(a.right);
  f.left_shift = parse_rational(a.left_shift);
  f.right_shift = parse_rational(a.right_shift);
  f.hbar = parse_nonzero_hbar(a.hbar);
  f.R = R;
  if (a.policy == "first_nonzero")
    f.policy = HPolicy::first_nonzero;
  else if (a.policy == "last_nonzero")
    f.policy = HPolicy::last_nonzero;
  else
    throw InputError("--h-policy must be first_nonzero or last_nonzero");
  TensorContext ctx = io::build_context(f.left, f.right, f.left_shift, f.right_shift, R, f.hbar);
  f.blocks = solve_rminus(ctx, a.height, static_cast<std::size_t>(a.order), f.policy);
  IntertwiningReport iw = verify_intertwining(f.blocks);
  io::write_json_file(a.out, io::to_json(f));
  std::cout << "solved " << f.blocks.blocks.size() << " blocks (H=" << a.height
            << ", N=" << a.order << ") on a space of dimension " << ctx.dim()
            << "; intertwining residuals " << (iw.ok() ? "all zero" : "NONZERO") << "\n";
  return iw.ok() ? kOk : kFailed;
}

struct AuditArgs {
  std::string blocks, order = "kt", report;
};

int cmd_audit(const AuditArgs &a) {
  if (a.order != "kt")
    throw InputError("--order: only 'kt' is supported");
  io::BlocksFile f = io::blocks_from_json(io::read_json_file(a.blocks));
  AuditReport rep;
  if (f.blocks.rs().rank() >= 2)
    rep = audit_factorization(f.blocks, kt_order(f.blocks.rs()));
  json j = io::to_json(rep);
  if (!a.report.empty())
    io::write_json_file(a.report, j);
  if (!rep.anchor) {
    std::cout << "rank 1: no anchor, audit is vacuous\n";
    return kOk;
  }
  for (const auto &r : rep.residuals) {
    std::cout << "residual at " << root_label(r.gamma) << ": ";
    if (!r.computed)
      std::cout << "not computed (" << r.note << ")\n";
    else if (r.nonzero)
      std::cout << "nonzero, first at s^-" << *r.first_nonzero_order << "\n";
    else
      std::cout << "zero to order " << f.blocks.N << "\n";
  }
  std::cout << "contra commutator: " << to_string(rep.contra.verdict)
            << (rep.contra.matches_expected ? " (matches -2p hbar value)" : " (MISMATCH)") << "\n"
            << "verdict: " << to_string(rep.verdict) << "\n";
  return rep.contra.matches_expected ? kOk : kFailed;
}

struct NogoArgs {
  int max_length = 5, max_loopdeg = 2, height = 3, order = 4;
  std::size_t max_span = 400000;
  std::string sector = "cone", hbar = "1", report, fixtures = io::default_fixture_dir;
};

int cmd_nogo(const NogoArgs &a) {
  NogoConfig cfg;
  cfg.hbar = parse_nonzero_hbar(a.hbar);
  if (a.max_length < 1 || a.max_loopdeg < 0)
    throw InputError("membership bounds must be positive");
  cfg.bounds.max_length = a.max_length;
  cfg.bounds.max_loopdeg = a.max_loopdeg;
  cfg.bounds.max_span = a.max_span;
  if (a.sector == "cone")
    cfg.bounds.sector = freealg::Sector::cone;
  else if (a.sector == "target_kinds")
    cfg.bounds.sector = freealg::Sector::target_kinds;
  else if (a.sector == "all")
    cfg.bounds.sector = freealg::Sector::all;
  else
    throw InputError("--sector must be cone, target_kinds or all");
  if (a.height < 3)
    throw InputError("--height must be at least 3 to reach alpha_i + 2 alpha_j");
  if (a.order < 2)
    throw InputError("--order must be at least 2");
  cfg.H = a.height;
  cfg.N = static_cast<std::size_t>(a.order);
  cfg.fixture_dir = a.fixtures;
  NogoOutcome out = verify_nogo(cfg);
  if (!a.report.empty())
    io::write_json_file(a.report, out.report);
  for (const auto &c : out.report["certificates"])
    std::cout << "p=" << c["p"].get<int>() << ": coefficient " << c["rhs_coefficient_text"].get<std::string>()
              << ", " << (c["passed"].get<bool>() ? "certified" : "NOT certified") << "\n";
  for (const auto &e : out.report["audits"])
    std::cout << e["left"].get<std::string>() << " x " << e["right"].get<std::string>() << ": "
              << e["audit"]["verdict"].get<std::string>() << "\n";
  if (!out.passed) {
    std::cout << "FAILED at stage " << out.failed_stage << "\n";
    return kFailed;
  }
  std::cout << "no-go verified\n";
  return kOk;
}

struct ClosedFormArgs {
  std::string spec, right, out, hbar = "1", shift = "0", right_shift = "0";
  int order = 6;
};

int cmd_closed_form(const ClosedFormArgs &a) {
  if (a.order < 1)
    throw InputError("--order must be at least 1");
  RepSpec l = a.spec.empty() ? io::load_fixture("sl2_dim2") : io::load_rep_spec(a.spec);
  RepSpec r = a.right.empty() ? l : io::load_rep_spec(a.right);
  TensorContext ctx = io::build_context(l, r, parse_rational(a.shift), parse_rational(a.right_shift),
                                        a.order, parse_nonzero_hbar(a.hbar));
  const auto N = static_cast<std::size_t>(a.order);
  MatrixSeries cf = sl2_closed_form(ctx, N);
  RMinusBlocks b = solve_rminus(ctx, 1, N);
  const bool agree = cf == b.at({1});
  emit({{"closed_form", io::to_json(cf)}, {"matches_solver", agree}}, a.out);
  if (!a.out.empty())
    std::cout << "closed form to s^-" << N << (agree ? " agrees" : " DISAGREES")
              << " with the recursion\n";
  return agree ? kOk : kFailed;
}

struct FixtureArgs {
  std::string name, out;
  int cutoff = 4;
};

int cmd_make_fixture(const FixtureArgs &a) {
  RepSpec spec = presets::level0(a.name);
  LevelOneFamily fam = solve_level_one(spec);
  if (!fam.consistent)
    throw DomainError("no level-one data for '" + a.name + "'");
  spec.xi1 = fam.particular;
  RelationReport r = check_relations(extend(spec, a.cutoff), a.cutoff);
  if (!r.ok()) {
    std::cerr << "level-one solution fails " << r.violations.size() << " relation instances\n";
    return kFailed;
  }
  io::write_json_file(a.out, io::to_json(spec));
  std::cout << a.name << ": " << fam.directions.size() << "-parameter family, wrote "
            << a.out << "\n";
  return kOk;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Yangian R-matrix blocks and the factorization no-go check"};
  app.require_subcommand(1);

  RootsArgs roots;
  auto *c_roots = app.add_subcommand("roots", "positive roots and the convex order");
  c_roots->add_option("--preset", roots.preset, "A1, A2, B2 or G2");
  c_roots->add_option("--cartan", roots.cartan, "JSON file with a Cartan matrix");
  c_roots->add_option("--out", roots.out, "write JSON here instead of stdout");

  CheckRepArgs check;
  auto *c_check = app.add_subcommand("check-rep", "check the defining relations on a representation");
  c_check->add_option("--spec", check.spec)->required();
  c_check->add_option("--cutoff", check.cutoff, "loop cutoff R");
  c_check->add_option("--hbar", check.hbar);
  c_check->add_option("--shift", check.shift, "apply tau_a first");
  c_check->add_option("--report", check.report);

  SolveArgs solve;
  auto *c_solve = app.add_subcommand("solve-rminus", "solve the intertwining recursion on V x W");
  c_solve->add_option("--left", solve.left)->required();
  c_solve->add_option("--right", solve.right)->required();
  c_solve->add_option("--height", solve.height);
  c_solve->add_option("--order", solve.order);
  c_solve->add_option("--out", solve.out)->required();
  c_solve->add_option("--hbar", solve.hbar);
  c_solve->add_option("--left-shift", solve.left_shift);
  c_solve->add_option("--right-shift", solve.right_shift);
  c_solve->add_option("--cutoff", solve.cutoff, "loop cutoff R (default: the order)");
  c_solve->add_option("--h-policy", solve.policy, "first_nonzero or last_nonzero");

  AuditArgs audit;
  auto *c_audit = app.add_subcommand("audit-factorization", "audit a factorized ansatz");
  c_audit->add_option("--blocks", audit.blocks)->required();
  c_audit->add_option("--order", audit.order);
  c_audit->add_option("--report", audit.report);

  NogoArgs nogo;
  auto *c_nogo = app.add_subcommand("verify-nogo", "certificates plus the representation audit");
  c_nogo->add_option("--max-length", nogo.max_length);
  c_nogo->add_option("--max-loopdeg", nogo.max_loopdeg);
  c_nogo->add_option("--max-span", nogo.max_span);
  c_nogo->add_option("--sector", nogo.sector);
  c_nogo->add_option("--hbar", nogo.hbar);
  c_nogo->add_option("--height", nogo.height);
  c_nogo->add_option("--order", nogo.order);
  c_nogo->add_option("--fixtures", nogo.fixtures);
  c_nogo->add_option("--report", nogo.report);

  ClosedFormArgs cf;
  auto *c_cf = app.add_subcommand("closed-form-sl2", "closed form of the simple-root block");
  c_cf->add_option("--spec", cf.spec, "rank-1 representation (default: sl2_dim2 fixture)");
  c_cf->add_option("--right", cf.right, "second factor (default: same as --spec)");
  c_cf->add_option("--order", cf.order);
  c_cf->add_option("--hbar", cf.hbar);
  c_cf->add_option("--shift", cf.shift);
  c_cf->add_option("--right-shift", cf.right_shift);
  c_cf->add_option("--out", cf.out);

  FixtureArgs fix;
  auto *c_fix = app.add_subcommand("make-fixture", "solve the level-one data of a preset");
  c_fix->add_option("--name", fix.name)->required();
  c_fix->add_option("--out", fix.out)->required();
  c_fix->add_option("--cutoff", fix.cutoff);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kInput;
  }

  try {
    if (c_roots->parsed())
      return cmd_roots(roots);
    if (c_check->parsed())
      return cmd_check_rep(check);
    if (c_solve->parsed())
      return cmd_solve(solve);
    if (c_audit->parsed())
      return cmd_audit(audit);
    if (c_nogo->parsed())
      return cmd_nogo(nogo);
    if (c_cf->parsed())
      return cmd_closed_form(cf);
    if (c_fix->parsed())
      return cmd_make_fixture(fix);
  } catch (const InputError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const DomainError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const Error &e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return kInput;
}
