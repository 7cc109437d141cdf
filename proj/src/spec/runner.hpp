#pragma once

#include "homology/cochain.hpp"
#include "spec/spec_file.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace xmod {

/// Command-line overrides; unset fields fall back to the command block and
/// then to the defaults.
struct RunOptions {
    std::optional<std::string> coeff; // Z, Q, F<p>, GF<p> or GF(p)
    std::optional<int> max_degree;
    std::optional<std::uint64_t> budget;
    std::optional<bool> normalized;
    unsigned threads = 1;
};

enum ExitCode : int { kExitOk = 0, kExitInput = 1, kExitBudget = 2, kExitInvariant = 3 };

struct RunResult {
    int exit_code = kExitOk;
    /// Everything except "timings" is a deterministic function of the spec,
    /// the command and the options.
    nlohmann::json report;
};

/// Dispatches `command` (validate, nerve, cohomology, group-cohomology,
/// e2-page or structural) on the spec. Never throws for bad input: errors are
/// reported in the result with a nonzero exit code.
RunResult run_command(const SpecFile& spec, const std::string& command, const RunOptions& options);

/// Parses and runs in one go; parse errors become an input-error report.
RunResult run_spec_text(std::string_view text, const std::string& command, const RunOptions& options);

/// Parses a coefficient name: Z, Q, F<p>, GF<p>, GF(p).
CoefficientRing parse_coefficients(const std::string& name);

const char* version_string();

} // namespace xmod
