#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "oddsq/backend.hpp"

namespace oddsq::cli {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A fully validated invocation. parse_args either returns one of these or
/// throws UsageError naming the offending token.
struct Command {
    enum class Kind { Squares, SumSquares, NextSquare, BenchOps, BenchCompare, Help };

    Kind kind = Kind::Help;
    std::uint64_t n = 0;             // squares, sum-squares, next-square, bench-compare
    std::string square_decimal;      // next-square: the known square, as decimal text
    BackendKind backend = BackendKind::Machine;
    std::uint64_t seed = 1;
    std::size_t trials = 9;
    std::vector<std::size_t> sizes = {256, 512, 1024, 2048, 4096};  // bench-ops
    std::vector<std::string> ops = {"add", "sub", "mul", "divmod"};  // bench-ops
    std::size_t pad_limbs = 0;       // bench-compare: 0 = off
    std::string samples_out = "bench_samples.csv";
    std::string slopes_out = "bench_slopes.csv";
    std::string compare_out = "bench_compare.csv";
};

std::string usage_text();

/// Parses argv[1..]; unknown flags and malformed values are errors, not
/// warnings.
Command parse_args(const std::vector<std::string>& args);

/// Executes a validated command. Results go to `out`, diagnostics to `err`.
/// Returns 0 on success; on failure the last line written to `err`
/// identifies the error class.
int run(const Command& command, std::ostream& out, std::ostream& err);

/// parse_args + run with main()'s error handling: usage errors exit 2,
/// runtime errors exit 1.
int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err);

}  // namespace oddsq::cli
