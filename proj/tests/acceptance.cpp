// Acceptance suite: runs every contract criterion end to end and prints one
// pass/fail line per criterion. Exits nonzero if any fail.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oddsq/bench.hpp"
#include "oddsq/cli.hpp"
#include "oddsq/natural.hpp"
#include "oddsq/sequences.hpp"

using namespace oddsq;

namespace {

int g_failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail) {
    std::printf("[%s] %d. %s: %s\n", ok ? "PASS" : "FAIL", id, name.c_str(),
                detail.c_str());
    if (!ok) ++g_failures;
}

template <typename Fn>
void criterion(int id, const std::string& name, Fn&& fn) {
    try {
        fn();
    } catch (const std::exception& e) {
        report(id, name, false, std::string("exception: ") + e.what());
    }
}

Natural nat(std::uint64_t v) { return Natural::from_u64(v); }

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

// ---- criteria ----

void trace_fidelity() {
    SquareStream<MachineBackend> s;
    const auto first = s.step();
    const auto second = first.state.step();
    const bool machine_ok = s.odd == 1 && s.square == 0 && first.state.odd == 3 &&
                            first.state.square == 1 && first.value == 1 &&
                            second.state.odd == 5 && second.state.square == 4 &&
                            second.value == 4;

    SquareStream<NaturalBackend> sn;
    const auto nfirst = sn.step();
    const auto nsecond = nfirst.state.step();
    const bool natural_ok = nfirst.state.odd == nat(3) && nfirst.state.square == nat(1) &&
                            nsecond.state.odd == nat(5) && nsecond.state.square == nat(4);

    report(1, "trace fidelity", machine_ok && natural_ok,
           "from (1, 0): first step -> (3, 1), second -> (5, 4), both backends");
}

void oracle_equivalence() {
    bool ok = true;
    std::uint64_t checked = 0;
    for_each_square<MachineBackend>(100000, [&](std::uint64_t k, std::uint64_t sq) {
        if (sq != k * k) ok = false;
        ++checked;
    });
    ok = ok && checked == 100000;

    const auto naturals = squares_first_n<NaturalBackend>(1000);
    for (std::uint64_t k = 1; k <= 1000; ++k) {
        if (naturals[k - 1] != mul(nat(k), nat(k))) ok = false;
    }

    report(2, "oracle equivalence", ok,
           "additive squares == k*k for n <= 1e5 (machine) and n <= 1e3 (bignum)");
}

void recurrence_consistency() {
    std::uint64_t square = 0;
    for (std::uint64_t k = 0; k < 10000; ++k) {
        square = next_square<MachineBackend>(square, k);
    }
    bool ok = square == 100000000ull;

    Natural nsquare;
    for (std::uint64_t k = 0; k < 10000; ++k) {
        nsquare = next_square<NaturalBackend>(nsquare, k);
    }
    ok = ok && nsquare == nat(100000000ull);

    report(3, "recurrence consistency", ok,
           "folding next_square 1e4 times from (0, 0) gives (1e4)^2 exactly");
}

void sum_identity() {
    bool ok = true;
    for (const std::uint64_t n : {1ull, 10ull, 100ull, 1000ull, 10000ull}) {
        const Natural sum = sum_of_squares_first_n<NaturalBackend>(n);
        const Natural lhs = mul(nat(6), sum);
        const Natural rhs = mul(mul(nat(n), nat(n + 1)), nat(2 * n + 1));
        if (lhs != rhs) ok = false;
    }
    report(4, "sum identity", ok,
           "6 * sum_of_squares(n) == n(n+1)(2n+1) exactly for n in {1,10,100,1e3,1e4}");
}

template <typename CB>
void drive_additive_paths() {
    SquareStream<CB> s;
    s = s.step().state;
    s = s.step().state;
    (void)squares_first_n<CB>(1000);
    typename CB::value_type square = CB::zero();
    for (std::uint64_t k = 0; k < 10000; ++k) square = next_square<CB>(square, k);
    (void)sum_of_squares_first_n<CB>(10000);
}

void no_multiplication() {
    using CountNat = Counting<NaturalBackend>;
    CountNat::reset();
    drive_additive_paths<CountNat>();
    const std::uint64_t natural_muls = CountNat::counts.mul_calls;
    const std::uint64_t natural_adds = CountNat::counts.add_calls;

    using CountMach = Counting<MachineBackend>;
    CountMach::reset();
    drive_additive_paths<CountMach>();
    const std::uint64_t machine_muls = CountMach::counts.mul_calls;

    report(5, "no-multiplication guarantee",
           natural_muls == 0 && machine_muls == 0 && natural_adds > 0,
           "counting backends saw " + std::to_string(natural_muls + machine_muls) +
               " general-multiply calls across the criteria 1-4 paths");
}

void bignum_correctness() {
    bool ok = true;
    std::mt19937_64 rng(0xACCE97);

    for (int i = 0; i < 100000 && ok; ++i) {
        const std::uint32_t a = static_cast<std::uint32_t>(rng());
        const std::uint32_t b = static_cast<std::uint32_t>(rng());
        const Natural x = nat(a);
        const Natural y = nat(b);
        if (add(x, y) != nat(std::uint64_t{a} + b)) ok = false;
        if (mul(x, y) != nat(std::uint64_t{a} * b)) ok = false;
        if (compare(x, y) != (a <=> b)) ok = false;
        const std::uint32_t hi = a >= b ? a : b;
        const std::uint32_t lo = a >= b ? b : a;
        if (sub(nat(hi), nat(lo)) != nat(std::uint64_t{hi} - lo)) ok = false;
        if (b != 0) {
            const DivModResult d = divmod(x, y);
            if (d.quotient != nat(a / b) || d.remainder != nat(a % b)) ok = false;
        }
    }

    for (int i = 0; i < 1000 && ok; ++i) {
        const Natural x = bench::random_natural(rng, 64);
        const Natural y = bench::random_natural(rng, 64);
        const Natural z = bench::random_natural(rng, 64);
        if (add(x, y) != add(y, x)) ok = false;
        if (add(add(x, y), z) != add(x, add(y, z))) ok = false;
        if (mul(x, y) != mul(y, x)) ok = false;
        if (mul(mul(x, y), z) != mul(x, mul(y, z))) ok = false;
        if (mul(x, add(y, z)) != add(mul(x, y), mul(x, z))) ok = false;
        if (sub(add(x, y), y) != x) ok = false;
        const Natural divisor = bench::random_natural(rng, 32);
        const DivModResult d = divmod(x, divisor);
        if (add(mul(d.quotient, divisor), d.remainder) != x) ok = false;
        if (compare(d.remainder, divisor) != std::strong_ordering::less) ok = false;
    }

    report(6, "bignum correctness", ok,
           "1e5 randomized cases vs the machine oracle, 1e3 ring-law and "
           "division-identity cases at 64 limbs");
}

struct ComplexityResults {
    bench::TimingSample add_4096;
    bench::TimingSample mul_4096;
};

ComplexityResults complexity_exponents() {
    const std::size_t sizes[] = {256, 512, 1024, 2048, 4096};
    const std::uint64_t seed = 42;
    const std::size_t trials = 5;

    std::vector<bench::TimingSample> add_samples;
    std::vector<bench::TimingSample> mul_samples;
    for (const std::size_t size : sizes) {
        add_samples.push_back(bench::time_op(bench::OpKind::Add, size, trials, seed));
        mul_samples.push_back(bench::time_op(bench::OpKind::Mul, size, trials, seed));
    }
    const bench::SlopeFit wall_add = bench::fit_slope(add_samples);
    const bench::SlopeFit wall_mul = bench::fit_slope(mul_samples);
    const bench::SlopeFit ops_add = bench::fit_digit_op_slope(bench::OpKind::Add, sizes, seed);
    const bench::SlopeFit ops_mul = bench::fit_digit_op_slope(bench::OpKind::Mul, sizes, seed);

    const bool ok = wall_add.exponent >= 0.8 && wall_add.exponent <= 1.3 &&
                    wall_mul.exponent >= 1.7 && wall_mul.exponent <= 2.3 &&
                    std::abs(ops_add.exponent - 1.0) <= 0.05 &&
                    std::abs(ops_mul.exponent - 2.0) <= 0.05;

    report(7, "complexity exponents", ok,
           "wall add " + fmt(wall_add.exponent) + " in [0.8,1.3], wall mul " +
               fmt(wall_mul.exponent) + " in [1.7,2.3], digit-op add " +
               fmt(ops_add.exponent) + " within 0.05 of 1, digit-op mul " +
               fmt(ops_mul.exponent) + " within 0.05 of 2");

    return {add_samples.back(), mul_samples.back()};
}

void head_to_head(const ComplexityResults& timings) {
    const double ratio = double(timings.mul_4096.median_ns) /
                         double(timings.add_4096.median_ns);

    const bench::MethodComparison comparison =
        bench::compare_square_methods(1000, BackendKind::Bignum, 5);

    const bool ok = ratio >= 10.0 && comparison.completed &&
                    comparison.multiplicative.digit_ops > comparison.additive.digit_ops;

    report(8, "head-to-head claim", ok,
           "mul/add median ratio at 4096 limbs = " + fmt(ratio) +
               " (>= 10 required); digit ops at n = 1e3 bignum: multiplicative " +
               std::to_string(comparison.multiplicative.digit_ops) + " > additive " +
               std::to_string(comparison.additive.digit_ops));
}

void cli_contract() {
    std::ostringstream out1, err1;
    const int s1 = cli::cli_main({"squares", "3"}, out1, err1);
    const bool squares3 = s1 == 0 && out1.str() == "1\n4\n9\n" && err1.str().empty();

    std::ostringstream out2, err2;
    const int s2 = cli::cli_main({"squares", "0"}, out2, err2);
    const bool squares0 = s2 == 0 && out2.str().empty() && err2.str().empty();

    std::ostringstream out3, err3;
    const int s3 = cli::cli_main({"squares", "three"}, out3, err3);
    const bool invalid = s3 != 0 && !err3.str().empty();

    report(9, "CLI contract", squares3 && squares0 && invalid,
           "squares 3 emits exactly \"1\\n4\\n9\\n\" (exit 0), squares 0 emits "
           "nothing (exit 0), invalid input exits nonzero with a diagnostic");
}

}  // namespace

int main() {
    criterion(1, "trace fidelity", trace_fidelity);
    criterion(2, "oracle equivalence", oracle_equivalence);
    criterion(3, "recurrence consistency", recurrence_consistency);
    criterion(4, "sum identity", sum_identity);
    criterion(5, "no-multiplication guarantee", no_multiplication);
    criterion(6, "bignum correctness", bignum_correctness);

    ComplexityResults timings{};
    criterion(7, "complexity exponents", [&] { timings = complexity_exponents(); });
    criterion(8, "head-to-head claim", [&] { head_to_head(timings); });
    criterion(9, "CLI contract", cli_contract);

    if (g_failures == 0) {
        std::printf("acceptance: all 9 criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criteria FAILED\n", g_failures);
    return 1;
}
