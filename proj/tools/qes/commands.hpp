#ifndef QES_TOOLS_COMMANDS_HPP
#define QES_TOOLS_COMMANDS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qes::cli {

enum ExitCode { kOk = 0, kCounterexample = 1, kInvalidConfig = 2, kGuard = 3, kInternal = 4 };

struct RunConfig {
    std::string command;
    int q = 1;
    std::vector<int> N;
    std::string pivot;
    std::string method = "auto";
    std::optional<int> guard_N;
    std::vector<std::string> D;
    std::string gamma = "1/2";
    std::vector<std::string> alpha;  // alpha_0 .. alpha_{q-1}
    std::vector<std::string> s;      // kernel at an explicit tuple
    int L = 0;
    std::string format = "text";
    std::string out;
    int jobs = 1;
    std::uint64_t seed = 0;
    bool tables = false;
    bool catalog = false;

    /// Throws std::invalid_argument.
    void validate() const;
    std::string to_json() const;
};

/// "a..b" or a single integer.
std::vector<int> parse_range(const std::string& text);

struct Output {
    int code = kOk;
    std::string body;
    std::string error;
};

/// Runs one command. Output is a pure function of the config (no clocks, no addresses).
Output run(const RunConfig& cfg);

/// Body as written to --out: json already carries the config, text and csv get "# " header lines.
std::string artifact(const RunConfig& cfg, const Output& out);

}  // namespace qes::cli

#endif  // QES_TOOLS_COMMANDS_HPP
