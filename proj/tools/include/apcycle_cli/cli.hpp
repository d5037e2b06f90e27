#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "apcycle/homotopy.hpp"

namespace apcycle::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kNonGeneric = 2,
    kCertificate = 3,
};

struct RunConfig {
    std::string subcommand;
    std::optional<int> N;
    std::optional<std::filesystem::path> input;
    std::uint64_t seed = 1;
    std::optional<std::filesystem::path> output;
    std::string format = "auto";
    unsigned threads = 0;
    TrackOptions track;
    int verbosity = 0;
    bool timing = false;
    bool paths = false;

    // verify
    bool verify_solve = true;

    // generate
    double coupling = 1.0;
    double omega_spread = 0.0;
    double delta_spread = 0.0;
};

struct VerifyCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct VerifyOptions {
    std::uint64_t seed = 1;
    unsigned threads = 0;
    TrackOptions track;
    bool solve = true;
    /// Oracle comparison is skipped above this N.
    int oracle_max_N = 7;
};

struct VerifyReport {
    int N = 0;
    std::vector<VerifyCheck> checks;
    bool non_generic = false;

    bool passed() const;
    nlohmann::json to_json() const;
};

VerifyReport verify(int N, const VerifyOptions& opts = {});

/// Dispatches a parsed configuration. Output goes to config.output when set,
/// otherwise to `out`; diagnostics go to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv with CLI11 and calls run().
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace apcycle::cli
