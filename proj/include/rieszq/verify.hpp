// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rieszq {

struct VerifyOptions {
    std::uint64_t seed = 0;
    int threads = 0;
    std::int64_t random_cases = 200;  // scales the randomized checks
    std::vector<std::string> only;    // run only these checks when non-empty
};

struct CheckResult {
    std::string name;
    std::int64_t cases = 0;
    std::int64_t failures = 0;
    double worst_slack = 0.0;  // smallest margin by which an assertion held
};

/// Runs the named property checks. Deterministic for a fixed seed and any
/// thread count. Throws parse_error on an unknown name in `only`.
std::vector<CheckResult> run_verify_suite(const VerifyOptions& opts = {});

std::vector<std::string> verify_check_names();

}  // namespace rieszq
