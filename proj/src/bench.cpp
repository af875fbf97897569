#include "oddsq/bench.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ctime>
#include <ostream>

namespace oddsq::bench {

namespace {

struct Operands {
    Natural x;
    Natural y;
};

// Operand construction per op; see time_op's contract for the divmod shape.
Operands make_operands(OpKind op, std::size_t size_limbs, std::mt19937_64& rng) {
    switch (op) {
        case OpKind::Add:
        case OpKind::Mul: {
            Natural a = random_natural(rng, size_limbs);
            Natural b = random_natural(rng, size_limbs);
            return {std::move(a), std::move(b)};
        }
        case OpKind::Sub: {
            Natural a = random_natural(rng, size_limbs);
            Natural b = random_natural(rng, size_limbs);
            if (compare(a, b) == std::strong_ordering::less) std::swap(a, b);
            return {std::move(a), std::move(b)};
        }
        case OpKind::DivMod: {
            Natural a = random_natural(rng, 2 * size_limbs);
            Natural b = random_natural(rng, size_limbs);
            return {std::move(a), std::move(b)};
        }
    }
    throw UnknownOperationError("unreachable op kind");
}

std::uint64_t exec_op(OpKind op, const Operands& operands) {
    switch (op) {
        case OpKind::Add:
            return add(operands.x, operands.y).limb_count();
        case OpKind::Sub:
            return sub(operands.x, operands.y).limb_count();
        case OpKind::Mul:
            return mul(operands.x, operands.y).limb_count();
        case OpKind::DivMod: {
            const DivModResult d = divmod(operands.x, operands.y);
            return d.quotient.limb_count() + d.remainder.limb_count();
        }
    }
    return 0;
}

std::mt19937_64 seeded_rng(std::uint64_t seed, OpKind op, std::size_t size) {
    std::seed_seq seq{seed, static_cast<std::uint64_t>(op) + 1,
                      static_cast<std::uint64_t>(size)};
    return std::mt19937_64(seq);
}

struct LogLogFit {
    double slope = 0.0;
    double r_squared = 0.0;
};

LogLogFit least_squares_loglog(std::span<const std::pair<double, double>> points) {
    const double count = static_cast<double>(points.size());
    double mean_x = 0.0;
    double mean_y = 0.0;
    for (const auto& [x, y] : points) {
        mean_x += std::log(x);
        mean_y += std::log(y);
    }
    mean_x /= count;
    mean_y /= count;

    double sxx = 0.0;
    double sxy = 0.0;
    for (const auto& [x, y] : points) {
        const double dx = std::log(x) - mean_x;
        const double dy = std::log(y) - mean_y;
        sxx += dx * dx;
        sxy += dx * dy;
    }
    const double slope = sxy / sxx;
    const double intercept = mean_y - slope * mean_x;

    double ss_res = 0.0;
    double ss_tot = 0.0;
    for (const auto& [x, y] : points) {
        const double ly = std::log(y);
        const double predicted = intercept + slope * std::log(x);
        ss_res += (ly - predicted) * (ly - predicted);
        ss_tot += (ly - mean_y) * (ly - mean_y);
    }
    double r2;
    if (ss_tot == 0.0) {
        r2 = ss_res == 0.0 ? 1.0 : 0.0;
    } else {
        r2 = std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0);
    }
    return {slope, r2};
}

void validate_size_grid(std::span<const std::size_t> sizes) {
    if (sizes.size() < 4) {
        throw InsufficientSamplesError("need at least 4 samples, got " +
                                       std::to_string(sizes.size()));
    }
    std::vector<std::size_t> sorted(sizes.begin(), sizes.end());
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        if (sorted[i] == sorted[i - 1]) {
            throw InsufficientSamplesError("duplicate input size " +
                                           std::to_string(sorted[i]));
        }
    }
    if (sorted.front() == 0 || sorted.back() < 10 * sorted.front()) {
        throw InsufficientSamplesError(
            "sizes must span at least one order of magnitude (got " +
            std::to_string(sorted.front()) + ".." + std::to_string(sorted.back()) +
            ")");
    }
}

std::string format_double(double v) {
    char buf[64];
    const auto result = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, result.ptr);
}

}  // namespace

namespace detail {

std::uint64_t median_u64(std::vector<std::uint64_t> values) {
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    if (values.size() % 2 == 1) return values[mid];
    return (values[mid - 1] + values[mid]) / 2;
}

}  // namespace detail

OpKind parse_op(std::string_view name) {
    if (name == "add") return OpKind::Add;
    if (name == "sub") return OpKind::Sub;
    if (name == "mul") return OpKind::Mul;
    if (name == "divmod") return OpKind::DivMod;
    throw UnknownOperationError("unknown operation '" + std::string(name) +
                                "'; expected add, sub, mul or divmod");
}

std::string_view op_name(OpKind op) {
    switch (op) {
        case OpKind::Add: return "add";
        case OpKind::Sub: return "sub";
        case OpKind::Mul: return "mul";
        case OpKind::DivMod: return "divmod";
    }
    return "?";
}

Natural random_natural(std::mt19937_64& rng, std::size_t limb_count) {
    if (limb_count == 0) return {};
    std::vector<Limb> limbs(limb_count);
    for (auto& l : limbs) l = static_cast<Limb>(rng());
    limbs.back() = static_cast<Limb>(1 + rng() % 0xFFFFFFFFull);
    return Natural::from_limbs(std::move(limbs));
}

TimingSample time_op(OpKind op, std::size_t size_limbs, std::size_t trials,
                     std::uint64_t seed) {
    if (size_limbs == 0) throw std::invalid_argument("size_limbs must be positive");
    if (trials < 5) throw std::invalid_argument("trials must be at least 5");

    auto rng = seeded_rng(seed, op, size_limbs);
    std::uint64_t sink = 0;

    // Calibrate the batch size on one extra operand set.
    const Operands calibration = make_operands(op, size_limbs, rng);
    const std::uint64_t t0 = detail::now_ns();
    sink += exec_op(op, calibration);
    const std::uint64_t once = std::max<std::uint64_t>(1, detail::now_ns() - t0);
    constexpr std::uint64_t kTargetBatchNs = 200'000;
    const std::size_t reps = static_cast<std::size_t>(std::min<std::uint64_t>(
        std::max<std::uint64_t>(kTargetBatchNs / once, 1), 1'000'000));

    for (int warmup = 0; warmup < 2; ++warmup) {
        const Operands operands = make_operands(op, size_limbs, rng);
        for (std::size_t r = 0; r < reps; ++r) sink += exec_op(op, operands);
    }

    std::vector<std::uint64_t> per_call;
    per_call.reserve(trials);
    for (std::size_t t = 0; t < trials; ++t) {
        const Operands operands = make_operands(op, size_limbs, rng);
        const std::uint64_t start = detail::now_ns();
        for (std::size_t r = 0; r < reps; ++r) sink += exec_op(op, operands);
        per_call.push_back(
            std::max<std::uint64_t>(1, (detail::now_ns() - start) / reps));
    }
    volatile std::uint64_t guard = sink;
    (void)guard;

    return {size_limbs, detail::median_u64(std::move(per_call)), trials};
}

TimingSample time_op(std::string_view op, std::size_t size_limbs,
                     std::size_t trials, std::uint64_t seed) {
    return time_op(parse_op(op), size_limbs, trials, seed);
}

SlopeFit fit_slope(std::vector<TimingSample> samples) {
    std::vector<std::size_t> sizes;
    sizes.reserve(samples.size());
    for (const auto& s : samples) sizes.push_back(s.size_limbs);
    validate_size_grid(sizes);

    std::vector<std::pair<double, double>> points;
    points.reserve(samples.size());
    for (const auto& s : samples) {
        if (s.median_ns == 0) {
            throw std::invalid_argument("sample durations must be positive");
        }
        points.emplace_back(static_cast<double>(s.size_limbs),
                            static_cast<double>(s.median_ns));
    }
    const LogLogFit fit = least_squares_loglog(points);
    return {fit.slope, fit.r_squared, std::move(samples)};
}

std::uint64_t digit_ops_for(OpKind op, std::size_t size_limbs, std::uint64_t seed) {
    if (size_limbs == 0) throw std::invalid_argument("size_limbs must be positive");
    auto rng = seeded_rng(seed, op, size_limbs);
    const Operands operands = make_operands(op, size_limbs, rng);
    reset_limb_op_count();
    volatile std::uint64_t guard = exec_op(op, operands);
    (void)guard;
    return limb_op_count();
}

SlopeFit fit_digit_op_slope(OpKind op, std::span<const std::size_t> sizes,
                            std::uint64_t seed) {
    validate_size_grid(sizes);
    std::vector<std::pair<double, double>> points;
    points.reserve(sizes.size());
    for (const std::size_t size : sizes) {
        points.emplace_back(static_cast<double>(size),
                            static_cast<double>(digit_ops_for(op, size, seed)));
    }
    const LogLogFit fit = least_squares_loglog(points);
    return {fit.slope, fit.r_squared, {}};
}

MethodComparison compare_square_methods(std::uint64_t n, BackendKind backend,
                                        std::size_t trials) {
    switch (backend) {
        case BackendKind::Machine:
            return compare_square_methods_on<MachineBackend>(n, trials, "machine");
        case BackendKind::Bignum:
            return compare_square_methods_on<NaturalBackend>(n, trials, "bignum");
    }
    throw std::invalid_argument("unreachable backend kind");
}

StepCosts step_cost_at_limbs(std::size_t limbs, std::size_t trials,
                             std::uint64_t seed) {
    if (limbs == 0) throw std::invalid_argument("limb count must be positive");
    if (trials < 5) throw std::invalid_argument("trials must be at least 5");
    std::seed_seq seq{seed, std::uint64_t{0x57e9c057}, static_cast<std::uint64_t>(limbs)};
    std::mt19937_64 rng(seq);

    const Natural k = random_natural(rng, std::max<std::size_t>(1, limbs / 2));
    const Natural square = mul(k, k);  // setup only, untimed
    const Natural odd = add_small(twice(k), 1);

    StepCosts out;
    out.operand_limbs = square.limb_count();
    std::uint64_t sink = 0;
    out.additive_median_ns = detail::median_call_ns(
        [&] {
            sink += add(square, odd).limb_count();
            sink += add_small(odd, 2).limb_count();
        },
        trials);
    out.multiplicative_median_ns = detail::median_call_ns(
        [&] { sink += mul(k, k).limb_count(); }, trials);
    volatile std::uint64_t guard = sink;
    (void)guard;
    return out;
}

BenchReport run_ops_benchmark(std::span<const OpKind> ops,
                              std::span<const std::size_t> sizes,
                              std::size_t trials, std::uint64_t seed) {
    BenchReport report;
    report.seed = seed;
    report.timestamp = utc_timestamp();
    report.environment = environment_note();

    for (const OpKind op : ops) {
        OpSeries series;
        series.op = op_name(op);
        for (const std::size_t size : sizes) {
            series.samples.push_back(time_op(op, size, trials, seed));
        }
        const SlopeFit wall = fit_slope(series.samples);
        report.slopes.push_back(
            {series.op, wall.exponent, wall.r_squared, wall.samples.size()});
        const SlopeFit counted = fit_digit_op_slope(op, sizes, seed);
        report.slopes.push_back({series.op + "_ops", counted.exponent,
                                 counted.r_squared, sizes.size()});
        report.series.push_back(std::move(series));
    }
    return report;
}

void write_samples_csv(std::ostream& out, const BenchReport& report) {
    out << "op,size_limbs,trials,median_ns,seed\n";
    for (const auto& series : report.series) {
        for (const auto& sample : series.samples) {
            out << series.op << ',' << sample.size_limbs << ',' << sample.trials
                << ',' << sample.median_ns << ',' << report.seed << '\n';
        }
    }
    if (!out) throw IoError("failed writing samples CSV");
}

void write_slopes_csv(std::ostream& out, const BenchReport& report) {
    out << "op,exponent,r_squared,num_samples\n";
    for (const auto& row : report.slopes) {
        out << row.op << ',' << format_double(row.exponent) << ','
            << format_double(row.r_squared) << ',' << row.num_samples << '\n';
    }
    if (!out) throw IoError("failed writing slopes CSV");
}

void write_comparison_csv(std::ostream& out, const BenchReport& report) {
    out << "method,backend,n,median_ns,digit_ops,seed\n";
    for (const auto& comparison : report.comparisons) {
        if (!comparison.completed) continue;
        out << "additive," << comparison.backend << ',' << comparison.n << ','
            << comparison.additive.median_ns << ','
            << comparison.additive.digit_ops << ',' << report.seed << '\n';
        out << "multiplicative," << comparison.backend << ',' << comparison.n
            << ',' << comparison.multiplicative.median_ns << ','
            << comparison.multiplicative.digit_ops << ',' << report.seed << '\n';
    }
    if (!out) throw IoError("failed writing comparison CSV");
}

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string environment_note() {
    std::string note = "compiler ";
#if defined(__clang__)
    note += "clang ";
#elif defined(__GNUC__)
    note += "gcc ";
#endif
#if defined(__VERSION__)
    note += __VERSION__;
#endif
#if defined(__linux__)
    note += ", linux";
#elif defined(__APPLE__)
    note += ", macos";
#endif
#if defined(__x86_64__)
    note += " x86_64";
#elif defined(__aarch64__)
    note += " aarch64";
#endif
    return note;
}

}  // namespace oddsq::bench
