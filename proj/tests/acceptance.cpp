// Acceptance suite: runs the full verification campaign and prints one
// pass/fail line per criterion. Exits nonzero if any criterion fails.

#include <cstdio>

#include "mmis/report.hpp"

int main() {
    mmis::CampaignConfig config;
    const auto results = mmis::run_verification_campaign(config, nullptr);
    int failures = 0;
    for (const auto& r : results) {
        std::printf("[%s] criterion %2d: %s (%.1fs)\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds);
        std::printf("       %s\n", r.detail.c_str());
        if (!r.passed) ++failures;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(results.size()) - failures, results.size());
    return failures == 0 ? 0 : 1;
}
