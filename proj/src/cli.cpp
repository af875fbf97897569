#include "oddsq/cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <ostream>
#include <string_view>

#include "oddsq/bench.hpp"
#include "oddsq/sequences.hpp"

namespace oddsq::cli {

namespace {

std::uint64_t parse_u64(const std::string& text, std::string_view what) {
    std::uint64_t value = 0;
    const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || result.ec != std::errc{} ||
        result.ptr != text.data() + text.size()) {
        throw UsageError("invalid " + std::string(what) + " '" + text +
                         "': expected an unsigned integer");
    }
    return value;
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string current;
    for (const char c : text) {
        if (c == ',') {
            out.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    out.push_back(current);
    return out;
}

std::vector<std::size_t> parse_sizes(const std::string& text) {
    std::vector<std::size_t> sizes;
    for (const std::string& item : split_list(text)) {
        const std::uint64_t value = parse_u64(item, "size");
        if (value == 0) throw UsageError("sizes must be positive");
        if (!sizes.empty() && value <= sizes.back()) {
            throw UsageError("sizes must be strictly increasing, got '" + text + "'");
        }
        sizes.push_back(static_cast<std::size_t>(value));
    }
    return sizes;
}

std::vector<std::string> parse_ops(const std::string& text) {
    std::vector<std::string> ops;
    for (const std::string& item : split_list(text)) {
        try {
            (void)bench::parse_op(item);
        } catch (const bench::UnknownOperationError& e) {
            throw UsageError(e.what());
        }
        ops.push_back(item);
    }
    return ops;
}

BackendKind parse_backend(const std::string& text) {
    if (text == "machine") return BackendKind::Machine;
    if (text == "bignum") return BackendKind::Bignum;
    throw UsageError("invalid backend '" + text + "': expected machine or bignum");
}

struct VariantSpec {
    Command::Kind kind;
    std::vector<std::string_view> positionals;
    std::vector<std::string_view> flags;
};

const VariantSpec* find_variant(std::string_view name) {
    static const std::vector<VariantSpec> variants = {
        {Command::Kind::Squares, {"n"}, {"--backend"}},
        {Command::Kind::SumSquares, {"n"}, {"--backend"}},
        {Command::Kind::NextSquare, {"square", "n"}, {"--backend"}},
        {Command::Kind::BenchOps,
         {},
         {"--sizes", "--ops", "--trials", "--seed", "--samples-out", "--slopes-out"}},
        {Command::Kind::BenchCompare,
         {"n"},
         {"--backend", "--trials", "--seed", "--pad-limbs", "--out"}},
    };
    static const std::vector<std::string_view> names = {
        "squares", "sum-squares", "next-square", "bench-ops", "bench-compare"};
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == name) return &variants[i];
    }
    return nullptr;
}

std::uint64_t parse_square_for_machine(const std::string& text) {
    if (text.empty()) throw ParseError("empty decimal string");
    for (const char c : text) {
        if (c < '0' || c > '9') {
            throw ParseError(std::string("invalid decimal digit '") + c + "'");
        }
    }
    std::uint64_t value = 0;
    const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
    if (result.ec == std::errc::result_out_of_range) {
        throw OverflowError("square '" + text + "' exceeds the 64-bit machine range");
    }
    return value;
}

template <AdditiveBackend B>
void print_squares(std::uint64_t n, std::ostream& out) {
    for_each_square<B>(n, [&](std::uint64_t, const typename B::value_type& sq) {
        out << B::to_decimal(sq) << '\n';
    });
}

template <typename Writer>
void write_csv(const std::string& path, std::ostream& out, Writer&& writer) {
    if (path == "-") {
        writer(out);
        return;
    }
    std::ofstream file(path);
    if (!file) throw bench::IoError("cannot open '" + path + "' for writing");
    writer(file);
    if (!file) throw bench::IoError("failed writing '" + path + "'");
}

int run_bench_ops(const Command& command, std::ostream& out) {
    std::vector<bench::OpKind> ops;
    ops.reserve(command.ops.size());
    for (const std::string& name : command.ops) ops.push_back(bench::parse_op(name));

    const bench::BenchReport report =
        bench::run_ops_benchmark(ops, command.sizes, command.trials, command.seed);

    write_csv(command.samples_out, out,
              [&](std::ostream& s) { bench::write_samples_csv(s, report); });
    write_csv(command.slopes_out, out,
              [&](std::ostream& s) { bench::write_slopes_csv(s, report); });

    if (command.samples_out != "-" && command.slopes_out != "-") {
        out << "benchmark " << report.timestamp << " (" << report.environment
            << "), seed " << report.seed << '\n';
        for (const auto& row : report.slopes) {
            out << "  " << row.op << ": exponent " << row.exponent << " (r^2 "
                << row.r_squared << ", " << row.num_samples << " sizes)\n";
        }
        out << "samples written to " << command.samples_out << ", slopes to "
            << command.slopes_out << '\n';
    }
    return 0;
}

int run_bench_compare(const Command& command, std::ostream& out) {
    bench::BenchReport report;
    report.seed = command.seed;
    report.timestamp = bench::utc_timestamp();
    report.environment = bench::environment_note();
    report.comparisons.push_back(
        bench::compare_square_methods(command.n, command.backend, command.trials));
    if (command.pad_limbs > 0) {
        report.step_costs =
            bench::step_cost_at_limbs(command.pad_limbs, command.trials, command.seed);
    }

    write_csv(command.compare_out, out,
              [&](std::ostream& s) { bench::write_comparison_csv(s, report); });

    const bool to_stdout = command.compare_out == "-";
    const auto& comparison = report.comparisons.front();
    if (!to_stdout) {
        if (comparison.completed) {
            out << "n = " << comparison.n << ", backend " << comparison.backend
                << " (identical outputs verified)\n";
            out << "  additive:       " << comparison.additive.median_ns
                << " ns median, " << comparison.additive.digit_ops << " digit ops\n";
            out << "  multiplicative: " << comparison.multiplicative.median_ns
                << " ns median, " << comparison.multiplicative.digit_ops
                << " digit ops\n";
        } else {
            out << "comparison not completed: " << comparison.note << '\n';
        }
        if (report.step_costs) {
            out << "  one step at " << report.step_costs->operand_limbs
                << " limbs: additive " << report.step_costs->additive_median_ns
                << " ns, multiplicative "
                << report.step_costs->multiplicative_median_ns << " ns\n";
        }
        out << "comparison written to " << command.compare_out << '\n';
    }
    return 0;
}

}  // namespace

std::string usage_text() {
    return
        "usage: oddsq <command> [options]\n"
        "\n"
        "commands:\n"
        "  squares <n>            print k^2 for k = 1..n, one per line\n"
        "  sum-squares <n>        print the sum of the first n squares\n"
        "  next-square <sq> <n>   given sq = n^2, print (n+1)^2\n"
        "  bench-ops              time schoolbook add/sub/mul/divmod over a size\n"
        "                         grid and fit complexity exponents\n"
        "  bench-compare <n>      time and count the additive vs multiplicative\n"
        "                         square table for 1..n\n"
        "  help                   show this text\n"
        "\n"
        "options:\n"
        "  --backend machine|bignum   integer backend (default machine; machine\n"
        "                             overflow is detected and reported)\n"
        "  --seed <u64>               random seed for benchmark operands (default 1)\n"
        "  --trials <k>               timing repetitions per point, k >= 5 (default 9)\n"
        "  --sizes a,b,c,...          bench-ops limb sizes, strictly increasing\n"
        "                             (default 256,512,1024,2048,4096)\n"
        "  --ops a,b,...              bench-ops subset of add,sub,mul,divmod\n"
        "  --pad-limbs <k>            bench-compare: also time one stream step with\n"
        "                             the square inflated to k limbs\n"
        "  --samples-out <path>       bench-ops samples CSV (default bench_samples.csv)\n"
        "  --slopes-out <path>        bench-ops slopes CSV (default bench_slopes.csv)\n"
        "  --out <path>               bench-compare CSV (default bench_compare.csv)\n"
        "\n"
        "a path of '-' sends that CSV to standard output\n";
}

Command parse_args(const std::vector<std::string>& args) {
    if (args.empty()) throw UsageError("missing command");

    Command command;
    const std::string& name = args[0];
    if (name == "help" || name == "--help" || name == "-h") {
        command.kind = Command::Kind::Help;
        if (args.size() > 1) throw UsageError("unexpected argument '" + args[1] + "'");
        return command;
    }

    const VariantSpec* variant = find_variant(name);
    if (variant == nullptr) throw UsageError("unknown command '" + name + "'");
    command.kind = variant->kind;

    std::vector<std::string> positionals;
    for (std::size_t i = 1; i < args.size(); ++i) {
        const std::string& arg = args[i];
        if (!arg.empty() && arg[0] == '-' && arg != "-") {
            const bool known = std::find(variant->flags.begin(), variant->flags.end(),
                                         arg) != variant->flags.end();
            if (!known) {
                throw UsageError("unknown flag '" + arg + "' for command '" + name + "'");
            }
            if (i + 1 >= args.size()) {
                throw UsageError("flag '" + arg + "' needs a value");
            }
            const std::string& value = args[++i];
            if (arg == "--backend") {
                command.backend = parse_backend(value);
            } else if (arg == "--seed") {
                command.seed = parse_u64(value, "seed");
            } else if (arg == "--trials") {
                const std::uint64_t trials = parse_u64(value, "trial count");
                if (trials < 5) throw UsageError("--trials must be at least 5");
                command.trials = static_cast<std::size_t>(trials);
            } else if (arg == "--sizes") {
                command.sizes = parse_sizes(value);
            } else if (arg == "--ops") {
                command.ops = parse_ops(value);
            } else if (arg == "--pad-limbs") {
                const std::uint64_t limbs = parse_u64(value, "pad limb count");
                if (limbs == 0) throw UsageError("--pad-limbs must be positive");
                command.pad_limbs = static_cast<std::size_t>(limbs);
            } else if (arg == "--samples-out") {
                command.samples_out = value;
            } else if (arg == "--slopes-out") {
                command.slopes_out = value;
            } else if (arg == "--out") {
                command.compare_out = value;
            }
        } else {
            positionals.push_back(arg);
        }
    }

    if (positionals.size() != variant->positionals.size()) {
        if (positionals.size() < variant->positionals.size()) {
            throw UsageError("missing <" +
                             std::string(variant->positionals[positionals.size()]) +
                             "> for command '" + name + "'");
        }
        throw UsageError("unexpected argument '" +
                         positionals[variant->positionals.size()] + "'");
    }

    switch (command.kind) {
        case Command::Kind::Squares:
        case Command::Kind::SumSquares:
        case Command::Kind::BenchCompare:
            command.n = parse_u64(positionals[0], "n");
            break;
        case Command::Kind::NextSquare:
            command.square_decimal = positionals[0];
            command.n = parse_u64(positionals[1], "n");
            break;
        default:
            break;
    }
    if (command.kind == Command::Kind::BenchCompare && command.n == 0) {
        throw UsageError("bench-compare needs n >= 1");
    }
    return command;
}

int run(const Command& command, std::ostream& out, std::ostream& err) {
    try {
        switch (command.kind) {
            case Command::Kind::Help:
                out << usage_text();
                return 0;
            case Command::Kind::Squares:
                if (command.backend == BackendKind::Machine) {
                    print_squares<MachineBackend>(command.n, out);
                } else {
                    print_squares<NaturalBackend>(command.n, out);
                }
                return 0;
            case Command::Kind::SumSquares:
                if (command.backend == BackendKind::Machine) {
                    out << MachineBackend::to_decimal(
                               sum_of_squares_first_n<MachineBackend>(command.n))
                        << '\n';
                } else {
                    out << sum_of_squares_first_n<NaturalBackend>(command.n).to_decimal()
                        << '\n';
                }
                return 0;
            case Command::Kind::NextSquare:
                if (command.backend == BackendKind::Machine) {
                    const std::uint64_t square =
                        parse_square_for_machine(command.square_decimal);
                    out << MachineBackend::to_decimal(
                               next_square<MachineBackend>(square, command.n))
                        << '\n';
                } else {
                    const Natural square = Natural::from_decimal(command.square_decimal);
                    out << next_square<NaturalBackend>(square, command.n).to_decimal()
                        << '\n';
                }
                return 0;
            case Command::Kind::BenchOps:
                return run_bench_ops(command, out);
            case Command::Kind::BenchCompare:
                return run_bench_compare(command, out);
        }
        err << "error (internal): unhandled command\n";
        return 1;
    } catch (const OverflowError& e) {
        err << "error (overflow): " << e.what();
        if (command.backend == BackendKind::Machine) {
            err << "; retry with --backend bignum";
        }
        err << '\n';
        return 1;
    } catch (const UnderflowError& e) {
        err << "error (underflow): " << e.what() << '\n';
        return 1;
    } catch (const ParseError& e) {
        err << "error (parse): " << e.what() << '\n';
        return 1;
    } catch (const DivisionByZeroError& e) {
        err << "error (division-by-zero): " << e.what() << '\n';
        return 1;
    } catch (const bench::UnknownOperationError& e) {
        err << "error (unknown-operation): " << e.what() << '\n';
        return 1;
    } catch (const bench::InsufficientSamplesError& e) {
        err << "error (insufficient-samples): " << e.what() << '\n';
        return 1;
    } catch (const bench::OutputMismatchError& e) {
        err << "error (output-mismatch): " << e.what() << '\n';
        return 1;
    } catch (const bench::IoError& e) {
        err << "error (io): " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error (internal): " << e.what() << '\n';
        return 1;
    }
}

int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
    try {
        return run(parse_args(args), out, err);
    } catch (const UsageError& e) {
        err << usage_text();
        err << "error (usage): " << e.what() << '\n';
        return 2;
    }
}

}  // namespace oddsq::cli
