#pragma once

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "oddsq/backend.hpp"
#include "oddsq/natural.hpp"
#include "oddsq/sequences.hpp"

namespace oddsq::bench {

class UnknownOperationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InsufficientSamplesError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class OutputMismatchError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class OpKind { Add, Sub, Mul, DivMod };

/// Accepts "add", "sub", "mul", "divmod"; anything else is UnknownOperationError.
OpKind parse_op(std::string_view name);
std::string_view op_name(OpKind op);

/// One measurement: the named op run on random operands of `size_limbs`
/// limbs, median over `trials` repetitions.
struct TimingSample {
    std::size_t size_limbs = 0;
    std::uint64_t median_ns = 0;
    std::size_t trials = 0;
};

/// Fitted log-log exponent: duration ~ c * size^exponent.
struct SlopeFit {
    double exponent = 0.0;
    double r_squared = 0.0;
    std::vector<TimingSample> samples;
};

/// One row of the slopes CSV. Wall-clock fits carry the plain op name;
/// digit-operation fits carry the op name with an "_ops" suffix.
struct SlopeRow {
    std::string op;
    double exponent = 0.0;
    double r_squared = 0.0;
    std::size_t num_samples = 0;
};

/// Times one schoolbook op at one operand size: fresh seeded random
/// operands per trial, at least two warmup batches, monotonic clock,
/// median of per-op durations. Sub operands are ordered so x >= y; divmod
/// dividends get 2 * size_limbs limbs so the quotient has ~size_limbs
/// digits (equal-size operands would make long division a linear-time
/// one-digit affair).
TimingSample time_op(OpKind op, std::size_t size_limbs, std::size_t trials,
                     std::uint64_t seed);
TimingSample time_op(std::string_view op, std::size_t size_limbs,
                     std::size_t trials, std::uint64_t seed);

/// Least-squares slope of log(median_ns) against log(size_limbs).
/// Requires >= 4 samples with distinct sizes spanning at least 10x.
SlopeFit fit_slope(std::vector<TimingSample> samples);

/// Exact limb-operation count for one run of the op at the given size.
/// Deterministic for a fixed seed, unlike wall time.
std::uint64_t digit_ops_for(OpKind op, std::size_t size_limbs, std::uint64_t seed);

/// Log-log slope of digit-op counts over the given sizes; the noise-free
/// counterpart of fit_slope on wall times. Same size preconditions.
SlopeFit fit_digit_op_slope(OpKind op, std::span<const std::size_t> sizes,
                            std::uint64_t seed);

struct MethodCost {
    std::uint64_t median_ns = 0;
    std::uint64_t digit_ops = 0;
    std::uint64_t arithmetic_calls = 0;
};

/// Additive vs multiplicative square table for the same n. A verdict is
/// only produced when both methods emit identical sequences.
struct MethodComparison {
    std::uint64_t n = 0;
    std::string backend;
    bool completed = false;
    std::string note;  // why not completed (machine overflow)
    MethodCost additive;
    MethodCost multiplicative;
};

MethodComparison compare_square_methods(std::uint64_t n, BackendKind backend,
                                        std::size_t trials);

/// Per-step cost with operands inflated to a target size: the stream state
/// is synthesized at square = k^2 for a random k of limbs/2 limbs, then one
/// additive step (add + add_small) is timed against one multiplicative
/// recompute (mul(k, k)).
struct StepCosts {
    std::size_t operand_limbs = 0;
    std::uint64_t additive_median_ns = 0;
    std::uint64_t multiplicative_median_ns = 0;
};

StepCosts step_cost_at_limbs(std::size_t limbs, std::size_t trials,
                             std::uint64_t seed);

struct OpSeries {
    std::string op;
    std::vector<TimingSample> samples;
};

struct BenchReport {
    std::uint64_t seed = 0;
    std::string timestamp;
    std::string environment;
    std::vector<OpSeries> series;
    std::vector<SlopeRow> slopes;
    std::vector<MethodComparison> comparisons;
    std::optional<StepCosts> step_costs;
};

/// Full Table-style run: per-op timing samples over the size grid plus
/// wall-clock and digit-op slope rows.
BenchReport run_ops_benchmark(std::span<const OpKind> ops,
                              std::span<const std::size_t> sizes,
                              std::size_t trials, std::uint64_t seed);

/// Header `op,size_limbs,trials,median_ns,seed`, one row per sample.
void write_samples_csv(std::ostream& out, const BenchReport& report);

/// Header `op,exponent,r_squared,num_samples`, one row per slope fit.
void write_slopes_csv(std::ostream& out, const BenchReport& report);

/// Header `method,backend,n,median_ns,digit_ops,seed`, two rows per
/// completed comparison.
void write_comparison_csv(std::ostream& out, const BenchReport& report);

/// Uniform random value of exactly limb_count limbs (top limb nonzero).
Natural random_natural(std::mt19937_64& rng, std::size_t limb_count);

std::string utc_timestamp();
std::string environment_note();

/// Comparison core, parameterized so tests can inject broken backends.
template <MultiplyingBackend B>
MethodComparison compare_square_methods_on(std::uint64_t n, std::size_t trials,
                                           std::string backend_label);

namespace detail {

inline std::uint64_t now_ns() {
    return static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(
            std::chrono::steady_clock::now().time_since_epoch())
            .count());
}

std::uint64_t median_u64(std::vector<std::uint64_t> values);

/// Median per-call duration of fn: calibrates a batch size so one timed
/// batch lasts long enough to be clock-resolvable, runs two warmup batches,
/// then `trials` measured batches.
template <typename Fn>
std::uint64_t median_call_ns(Fn&& fn, std::size_t trials) {
    constexpr std::uint64_t kTargetBatchNs = 200'000;
    const std::uint64_t t0 = now_ns();
    fn();
    const std::uint64_t once = std::max<std::uint64_t>(1, now_ns() - t0);
    const std::size_t reps = static_cast<std::size_t>(
        std::min<std::uint64_t>(std::max<std::uint64_t>(kTargetBatchNs / once, 1),
                                1'000'000));
    for (int warmup = 0; warmup < 2; ++warmup) {
        for (std::size_t r = 0; r < reps; ++r) fn();
    }
    std::vector<std::uint64_t> per_call;
    per_call.reserve(trials);
    for (std::size_t t = 0; t < trials; ++t) {
        const std::uint64_t start = now_ns();
        for (std::size_t r = 0; r < reps; ++r) fn();
        per_call.push_back(
            std::max<std::uint64_t>(1, (now_ns() - start) / reps));
    }
    return median_u64(std::move(per_call));
}

}  // namespace detail

template <MultiplyingBackend B>
MethodComparison compare_square_methods_on(std::uint64_t n, std::size_t trials,
                                           std::string backend_label) {
    if (n < 1) throw std::invalid_argument("comparison needs n >= 1");
    if (trials < 5) throw std::invalid_argument("trials must be at least 5");
    MethodComparison out;
    out.n = n;
    out.backend = std::move(backend_label);

    using CB = Counting<B>;
    try {
        CB::reset();
        const auto additive = squares_first_n<CB>(n);
        const OpCounts additive_counts = CB::counts;
        CB::reset();
        const auto multiplicative = squares_first_n_by_mul<CB>(n);
        const OpCounts multiplicative_counts = CB::counts;

        if (additive != multiplicative) {
            throw OutputMismatchError(
                "additive and multiplicative square tables disagree for n = " +
                std::to_string(n) + "; no timing verdict");
        }

        out.additive.digit_ops = additive_counts.digit_ops;
        out.additive.arithmetic_calls = additive_counts.arithmetic_calls();
        out.multiplicative.digit_ops = multiplicative_counts.digit_ops;
        out.multiplicative.arithmetic_calls = multiplicative_counts.arithmetic_calls();

        std::uint64_t sink = 0;
        out.additive.median_ns = detail::median_call_ns(
            [&] {
                for_each_square<B>(n, [&](std::uint64_t, const auto& sq) {
                    if constexpr (std::same_as<typename B::value_type, Natural>) {
                        sink += sq.limb_count();
                    } else {
                        sink ^= static_cast<std::uint64_t>(sq);
                    }
                });
            },
            trials);
        out.multiplicative.median_ns = detail::median_call_ns(
            [&] {
                for_each_square_by_mul<B>(n, [&](std::uint64_t, const auto& sq) {
                    if constexpr (std::same_as<typename B::value_type, Natural>) {
                        sink += sq.limb_count();
                    } else {
                        sink ^= static_cast<std::uint64_t>(sq);
                    }
                });
            },
            trials);
        volatile std::uint64_t guard = sink;
        (void)guard;
        out.completed = true;
    } catch (const OverflowError& e) {
        out.completed = false;
        out.note = e.what();
    }
    return out;
}

}  // namespace oddsq::bench
