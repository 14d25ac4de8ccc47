#pragma once

#include <string>
#include <vector>

namespace haarlin {

struct SelfTestResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Desk-scale invariant suite: exact-arithmetic identities, route agreements,
/// the smoothing constants, cache fault injection and sampler determinism.
/// Failures are data, not exceptions.
std::vector<SelfTestResult> selftest(std::uint64_t seed = 1);

}  // namespace haarlin
