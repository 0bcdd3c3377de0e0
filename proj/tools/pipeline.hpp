#pragma once

#include <string>

#include "config.hpp"
#include "json.hpp"

namespace trihopf::cli {

enum ExitCode { kPass = 0, kVerificationFailure = 1, kParseError = 2, kCapacityError = 3 };

struct Outcome {
    int exit_code = kPass;
    nlohmann::ordered_json report;
    std::string text;  // human-readable rendering
};

/// Runs cfg.command (build, verify, invariants, moduli or cohomology).
Outcome run(const RunConfig& cfg);

}  // namespace trihopf::cli
