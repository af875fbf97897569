#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>

#include "oddsq/backend.hpp"

using oddsq::AdditiveOnly;
using oddsq::Counting;
using oddsq::MachineBackend;
using oddsq::Natural;
using oddsq::NaturalBackend;
using oddsq::OverflowError;

TEST_CASE("machine backend arithmetic is checked at the exact boundary") {
    CHECK(MachineBackend::add(UINT64_MAX - 1, 1) == UINT64_MAX);
    CHECK_THROWS_AS(MachineBackend::add(UINT64_MAX, 1), OverflowError);
    CHECK_THROWS_AS(MachineBackend::add(1, UINT64_MAX), OverflowError);

    CHECK(MachineBackend::twice((std::uint64_t{1} << 63) - 1) ==
          UINT64_MAX - 1);
    CHECK_THROWS_AS(MachineBackend::twice(std::uint64_t{1} << 63), OverflowError);

    // (2^32 - 1) * (2^32 + 1) = 2^64 - 1 is the largest representable product.
    const std::uint64_t lo = (std::uint64_t{1} << 32) - 1;
    const std::uint64_t hi = (std::uint64_t{1} << 32) + 1;
    CHECK(MachineBackend::mul(lo, hi) == UINT64_MAX);
    CHECK_THROWS_AS(MachineBackend::mul(std::uint64_t{1} << 32, std::uint64_t{1} << 32),
                    OverflowError);
    CHECK(MachineBackend::mul(0, UINT64_MAX) == 0);

    CHECK(MachineBackend::add_small(7, 5) == 12);
    CHECK_THROWS_AS(MachineBackend::add_small(UINT64_MAX, 1), OverflowError);
}

TEST_CASE("machine backend plumbing") {
    CHECK(MachineBackend::zero() == 0);
    CHECK(MachineBackend::one() == 1);
    CHECK(MachineBackend::from_count(12345) == 12345);
    CHECK(MachineBackend::compare(3, 4) == std::strong_ordering::less);
    CHECK(MachineBackend::to_decimal(987654321) == "987654321");
}

TEST_CASE("natural backend delegates to the bignum kernels") {
    const Natural a = Natural::from_u64(UINT64_MAX);
    CHECK(NaturalBackend::add(a, NaturalBackend::one()).to_decimal() ==
          "18446744073709551616");
    CHECK(NaturalBackend::twice(a) == oddsq::twice(a));
    CHECK(NaturalBackend::compare(NaturalBackend::zero(), a) ==
          std::strong_ordering::less);
    CHECK(NaturalBackend::from_count(77) == Natural::from_u64(77));
    CHECK(NaturalBackend::mul(a, a) == oddsq::mul(a, a));
    CHECK(NaturalBackend::to_decimal(Natural::from_u64(5)) == "5");
}

TEST_CASE("counting backend tallies calls and digit ops") {
    using CB = Counting<NaturalBackend>;
    CB::reset();
    CHECK(CB::counts.add_calls == 0);

    const Natural x = Natural::from_u64(0x1234567890ABCDEFull);
    (void)CB::add(x, x);
    (void)CB::add_small(x, 3);
    (void)CB::twice(x);
    (void)CB::mul(x, x);
    (void)CB::compare(x, x);
    (void)CB::from_count(9);

    CHECK(CB::counts.add_calls == 1);
    CHECK(CB::counts.add_small_calls == 1);
    CHECK(CB::counts.twice_calls == 1);
    CHECK(CB::counts.mul_calls == 1);
    CHECK(CB::counts.compare_calls == 1);
    CHECK(CB::counts.from_count_calls == 1);
    CHECK(CB::counts.digit_ops > 0);
    CHECK(CB::counts.arithmetic_calls() == 4);

    const auto snapshot = CB::counts.digit_ops;
    CB::reset();
    CHECK(CB::counts.digit_ops == 0);

    // Deterministic: identical work yields identical tallies.
    (void)CB::add(x, x);
    (void)CB::add_small(x, 3);
    (void)CB::twice(x);
    (void)CB::mul(x, x);
    (void)CB::compare(x, x);
    (void)CB::from_count(9);
    CHECK(CB::counts.digit_ops == snapshot);

    // Building a Natural operand from a count is tallied limb work.
    CB::reset();
    (void)CB::from_count(9);
    CHECK(CB::counts.digit_ops == 1);
}

TEST_CASE("machine counting treats one word op as one digit op") {
    using CB = Counting<MachineBackend>;
    CB::reset();
    (void)CB::add(1, 2);
    (void)CB::mul(3, 4);
    (void)CB::twice(5);
    CHECK(CB::counts.digit_ops == 3);
    // from_count and compare are free on the machine backend.
    (void)CB::from_count(7);
    (void)CB::compare(1, 2);
    CHECK(CB::counts.digit_ops == 3);
}

TEST_CASE("additive-only adaptor exposes no multiply") {
    using AO = AdditiveOnly<NaturalBackend>;
    static_assert(oddsq::AdditiveBackend<AO>);
    static_assert(!oddsq::MultiplyingBackend<AO>);

    CHECK(AO::add(AO::one(), AO::one()) == Natural::from_u64(2));
    CHECK(AO::twice(AO::from_count(21)) == Natural::from_u64(42));
    CHECK(AO::to_decimal(AO::zero()) == "0");

    using AOM = AdditiveOnly<MachineBackend>;
    static_assert(oddsq::AdditiveBackend<AOM>);
    static_assert(!oddsq::MultiplyingBackend<AOM>);
    CHECK(AOM::add_small(40, 2) == 42);
}

TEST_CASE("overflow error carries the offending index when known") {
    const OverflowError plain("plain");
    CHECK(!plain.index().has_value());
    const OverflowError indexed("at 7", 7);
    CHECK(indexed.index() == 7);
}
