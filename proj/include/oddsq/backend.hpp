#pragma once

#include <compare>
#include <concepts>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include "oddsq/natural.hpp"

namespace oddsq {

/// Thrown by the machine backend when a result would leave the 64-bit
/// range. Carries the 1-based sequence index when a sequence operation can
/// name the first offending element.
class OverflowError : public std::runtime_error {
public:
    explicit OverflowError(const std::string& what,
                           std::optional<std::uint64_t> index = std::nullopt)
        : std::runtime_error(what), index_(index) {}

    std::optional<std::uint64_t> index() const { return index_; }

private:
    std::optional<std::uint64_t> index_;
};

enum class BackendKind { Machine, Bignum };

/// The capability set the square-generation algorithms are allowed to use.
/// Deliberately excludes general multiplication: code constrained to this
/// contract carries the no-multiplication guarantee by construction.
template <typename B>
concept AdditiveBackend = requires(const typename B::value_type& v,
                                   std::uint32_t small, std::uint64_t n) {
    typename B::value_type;
    { B::zero() } -> std::convertible_to<typename B::value_type>;
    { B::one() } -> std::convertible_to<typename B::value_type>;
    { B::add(v, v) } -> std::convertible_to<typename B::value_type>;
    { B::twice(v) } -> std::convertible_to<typename B::value_type>;
    { B::add_small(v, small) } -> std::convertible_to<typename B::value_type>;
    { B::compare(v, v) } -> std::convertible_to<std::strong_ordering>;
    { B::from_count(n) } -> std::convertible_to<typename B::value_type>;
    { B::to_decimal(v) } -> std::convertible_to<std::string>;
};

/// Additive capabilities plus general multiplication; needed only by the
/// baseline (mul-based) square table and by benchmarks.
template <typename B>
concept MultiplyingBackend =
    AdditiveBackend<B> && requires(const typename B::value_type& v) {
        { B::mul(v, v) } -> std::convertible_to<typename B::value_type>;
    };

/// Checked 64-bit integers. Overflow throws instead of wrapping: a wrapped
/// square would be silently wrong.
struct MachineBackend {
    using value_type = std::uint64_t;

    static constexpr value_type zero() { return 0; }
    static constexpr value_type one() { return 1; }

    static value_type add(value_type x, value_type y) {
        if (x > std::numeric_limits<value_type>::max() - y) {
            throw OverflowError("64-bit addition overflow");
        }
        return x + y;
    }

    static value_type twice(value_type x) { return add(x, x); }

    static value_type add_small(value_type x, std::uint32_t k) {
        return add(x, k);
    }

    static std::strong_ordering compare(value_type x, value_type y) {
        return x <=> y;
    }

    static value_type from_count(std::uint64_t n) { return n; }

    static value_type mul(value_type x, value_type y) {
        if (y != 0 && x > std::numeric_limits<value_type>::max() / y) {
            throw OverflowError("64-bit multiplication overflow");
        }
        return x * y;
    }

    static std::string to_decimal(value_type v) { return std::to_string(v); }
};

/// The Natural-backed backend: exact at any size, never overflows.
struct NaturalBackend {
    using value_type = Natural;

    static value_type zero() { return {}; }
    static value_type one() { return Natural::from_u64(1); }

    static value_type add(const value_type& x, const value_type& y) {
        return oddsq::add(x, y);
    }

    static value_type twice(const value_type& x) { return oddsq::twice(x); }

    static value_type add_small(const value_type& x, std::uint32_t k) {
        return oddsq::add_small(x, k);
    }

    static std::strong_ordering compare(const value_type& x, const value_type& y) {
        return oddsq::compare(x, y);
    }

    static value_type from_count(std::uint64_t n) { return Natural::from_u64(n); }

    static value_type mul(const value_type& x, const value_type& y) {
        return oddsq::mul(x, y);
    }

    static std::string to_decimal(const value_type& v) { return v.to_decimal(); }
};

static_assert(MultiplyingBackend<MachineBackend>);
static_assert(MultiplyingBackend<NaturalBackend>);

/// Strips the inner backend down to the additive contract. Instantiating
/// an algorithm with this adaptor proves at compile time that the
/// algorithm never names a multiply.
template <MultiplyingBackend B>
struct AdditiveOnly {
    using value_type = typename B::value_type;

    static value_type zero() { return B::zero(); }
    static value_type one() { return B::one(); }
    static value_type add(const value_type& x, const value_type& y) {
        return B::add(x, y);
    }
    static value_type twice(const value_type& x) { return B::twice(x); }
    static value_type add_small(const value_type& x, std::uint32_t k) {
        return B::add_small(x, k);
    }
    static std::strong_ordering compare(const value_type& x, const value_type& y) {
        return B::compare(x, y);
    }
    static value_type from_count(std::uint64_t n) { return B::from_count(n); }
    static std::string to_decimal(const value_type& v) { return B::to_decimal(v); }
};

struct OpCounts {
    std::uint64_t add_calls = 0;
    std::uint64_t add_small_calls = 0;
    std::uint64_t twice_calls = 0;
    std::uint64_t compare_calls = 0;
    std::uint64_t from_count_calls = 0;
    std::uint64_t mul_calls = 0;
    /// Primitive digit operations: limb-kernel inner-loop steps for the
    /// Natural backend, one word op per arithmetic call for the machine
    /// backend.
    std::uint64_t digit_ops = 0;

    std::uint64_t arithmetic_calls() const {
        return add_calls + add_small_calls + twice_calls + mul_calls;
    }
};

/// Pass-through backend that tallies calls and digit operations. State is
/// per-instantiation and thread-local; reset() before each measured region.
template <MultiplyingBackend B>
struct Counting {
    using value_type = typename B::value_type;

    static inline thread_local OpCounts counts{};

    static void reset() { counts = {}; }

    static value_type zero() { return B::zero(); }
    static value_type one() { return B::one(); }

    static value_type add(const value_type& x, const value_type& y) {
        ++counts.add_calls;
        return tally([&] { return B::add(x, y); });
    }
    static value_type twice(const value_type& x) {
        ++counts.twice_calls;
        return tally([&] { return B::twice(x); });
    }
    static value_type add_small(const value_type& x, std::uint32_t k) {
        ++counts.add_small_calls;
        return tally([&] { return B::add_small(x, k); });
    }
    static std::strong_ordering compare(const value_type& x, const value_type& y) {
        ++counts.compare_calls;
        return B::compare(x, y);
    }
    static value_type from_count(std::uint64_t n) {
        ++counts.from_count_calls;
        if constexpr (std::same_as<value_type, Natural>) {
            // Materializing the operand writes its limbs; that is real work
            // the additive method never does.
            return tally([&] { return B::from_count(n); });
        } else {
            return B::from_count(n);
        }
    }
    static value_type mul(const value_type& x, const value_type& y) {
        ++counts.mul_calls;
        return tally([&] { return B::mul(x, y); });
    }
    static std::string to_decimal(const value_type& v) { return B::to_decimal(v); }

private:
    template <typename Fn>
    static value_type tally(Fn&& fn) {
        if constexpr (std::same_as<value_type, Natural>) {
            const std::uint64_t before = limb_op_count();
            value_type result = fn();
            counts.digit_ops += limb_op_count() - before;
            return result;
        } else {
            ++counts.digit_ops;
            return fn();
        }
    }
};

static_assert(AdditiveBackend<AdditiveOnly<NaturalBackend>>);
static_assert(!MultiplyingBackend<AdditiveOnly<NaturalBackend>>);
static_assert(MultiplyingBackend<Counting<NaturalBackend>>);

}  // namespace oddsq
