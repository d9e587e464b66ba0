// Solves the R- recursion on the A2 symmetric-square pair and audits the
// factorized ansatz along the convex order.
#include <iostream>

#include "yangr/json_io.hpp"
#include "yangr/yangr.hpp"

using namespace yangr;

int main() {
  RepSpec sym2 = io::load_fixture("a2_sym2");
  TensorContext ctx = io::build_context(sym2, sym2, ratio(1, 3), ratio(-2, 5), 4, 1);
  RMinusBlocks blocks = solve_rminus(ctx, 3, 4);
  std::cout << "blocks: " << blocks.blocks.size() << ", intertwining "
            << (verify_intertwining(blocks).ok() ? "ok" : "FAILED") << "\n";

  ConvexOrder order = kt_order(ctx.rs());
  AuditReport audit = audit_factorization(blocks, order);
  for (const auto &r : audit.residuals) {
    std::cout << "residual at " << root_label(r.gamma) << ": ";
    if (!r.computed)
      std::cout << r.note << "\n";
    else if (r.first_nonzero_order)
      std::cout << "first nonzero at s^-" << *r.first_nonzero_order << "\n";
    else
      std::cout << "zero to s^-" << blocks.N << "\n";
  }
  std::cout << "contra commutator: " << to_string(audit.contra.verdict)
            << (audit.contra.matches_expected ? ", equals -2p hbar x-x- ⊗ x+x+" : "") << "\n"
            << "verdict: " << to_string(audit.verdict) << "\n";
  return 0;
}
