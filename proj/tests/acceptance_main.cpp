// Acceptance gate: runs the complete verification suite and demands a pass
// on every criterion. Skips count as failures here; there is no budget.

#include <cstdio>

#include "nielsen/atlas.hpp"

int main() {
  using namespace nielsen;

  ClaimsOptions opts;
  opts.suite = ClaimSuite::full;
  opts.threads = 0;
  opts.budget_seconds = 0.0;

  ClaimsReport report;
  try {
    report = claims_report(opts);
  } catch (const std::exception& e) {
    std::printf("ACCEPTANCE: FAIL (suite aborted: %s)\n", e.what());
    return 1;
  }

  bool ok = report.all_pass;
  if (report.claims.size() != 11) {
    std::printf("expected 11 criteria, got %zu\n", report.claims.size());
    ok = false;
  }
  for (const ClaimRow& row : report.claims) {
    if (row.status != ClaimStatus::pass) ok = false;
    const char* label = row.status == ClaimStatus::pass   ? "PASS"
                        : row.status == ClaimStatus::fail ? "FAIL"
                                                          : "SKIP";
    std::printf("[%s] %2d %-22s %7.2fs  %s\n", label, row.criterion, row.id.c_str(), row.seconds,
                row.detail.c_str());
  }
  std::printf("ACCEPTANCE: %s\n", ok ? "PASS" : "FAIL");
  return ok ? 0 : 1;
}
