#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace mergemix::cli {

/// Process exit codes shared by every subcommand.
enum Exit : int {
    kOk = 0,
    kNegative = 1,   ///< violation found, odd partition total
    kMalformed = 2,  ///< unreadable or invalid input
    kLimits = 3,     ///< infeasible or too large for the solver
};

struct RunConfig {
    enum class Command { MaSolve, MaReduce, SchemeVerify, SchemeDesign, SimRun };
    enum class Format { Json, Csv };

    Command command = Command::MaSolve;
    std::string input;
    std::string output;  ///< empty or "-" writes to standard output
    Format format = Format::Json;

    // ma solve
    bool single = false;
    bool heuristic = false;
    std::int64_t max_cells = 64;

    // scheme verify / design
    bool base_case = false;
    bool impossibility = false;
    std::optional<int> lmax;
    std::optional<int> kmax;
    std::string pmf;

    // sim run
    std::string trace;
    std::optional<std::uint64_t> seed;
};

/// Runs one subcommand; results go to config.output (or `out`), diagnostics
/// to `err`. Never throws.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace mergemix::cli
