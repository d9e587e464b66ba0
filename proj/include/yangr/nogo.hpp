#pragma once

#include <string>
#include <vector>

#include "yangr/auditor.hpp"
#include "yangr/contra2.hpp"
#include "yangr/json_io.hpp"

namespace yangr {

struct FixturePair {
  std::string left, right;
  Rational left_shift, right_shift;
};

/// Fixtures tried in turn until one certifies; the fundamental pair is
/// degenerate for this audit, so the symmetric square follows it.
inline std::vector<FixturePair> default_audit_pairs() {
  return {{"a2_fund", "a2_fund", ratio(1, 3), ratio(-2, 5)},
          {"a2_sym2", "a2_sym2", ratio(1, 3), ratio(-2, 5)}};
}

struct NogoConfig {
  freealg::MembershipBounds bounds;
  Rational hbar{1};
  int H = 3;
  std::size_t N = 4;
  std::vector<FixturePair> pairs = default_audit_pairs();
  std::string fixture_dir = io::default_fixture_dir;
};

struct NogoOutcome {
  bool passed = false;
  std::string failed_stage; ///< "freealg", "rminus" or "audit"
  io::json report;
};

/// Certificates for p = 1, 2, 3, then the representation audit.
inline NogoOutcome verify_nogo(const NogoConfig &cfg) {
  NogoOutcome out;
  io::json certs = io::json::array();
  bool freealg_ok = true;
  for (int p = 1; p <= 3; ++p) {
    auto r = freealg::verify_contra2(p, cfg.bounds);
    freealg_ok = freealg_ok && r.passed;
    certs.push_back(io::to_json(r));
  }
  out.report["certificates"] = certs;
  out.report["bounds"] = io::to_json(cfg.bounds);

  io::json audits = io::json::array();
  bool certified = false, rminus_ok = true;
  for (const auto &pair : cfg.pairs) {
    RepSpec l = io::load_fixture(pair.left, cfg.fixture_dir);
    RepSpec r = io::load_fixture(pair.right, cfg.fixture_dir);
    TensorContext ctx = io::build_context(l, r, pair.left_shift, pair.right_shift,
                                          static_cast<int>(cfg.N), cfg.hbar);
    RMinusBlocks blocks = solve_rminus(ctx, cfg.H, cfg.N);
    IntertwiningReport iw = verify_intertwining(blocks);
    rminus_ok = rminus_ok && iw.ok();
    AuditReport audit = audit_factorization(blocks, kt_order(ctx.rs()));
    io::json entry{{"left", pair.left},
                   {"right", pair.right},
                   {"left_shift", to_string(pair.left_shift)},
                   {"right_shift", to_string(pair.right_shift)},
                   {"H", cfg.H},
                   {"N", cfg.N},
                   {"intertwining_ok", iw.ok()},
                   {"audit", io::to_json(audit)}};
    audits.push_back(std::move(entry));
    if (iw.ok() && audit.verdict == Verdict::certified_nonzero && audit.contra.matches_expected) {
      certified = true;
      break;
    }
  }
  out.report["audits"] = audits;
  out.report["hbar"] = to_string(cfg.hbar);

  if (!freealg_ok)
    out.failed_stage = "freealg";
  else if (!rminus_ok)
    out.failed_stage = "rminus";
  else if (!certified)
    out.failed_stage = "audit";
  out.passed = out.failed_stage.empty();
  out.report["passed"] = out.passed;
  out.report["failed_stage"] = out.passed ? io::json(nullptr) : io::json(out.failed_stage);
  return out;
}

} // namespace yangr
