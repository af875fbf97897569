#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace oddsq {

/// One digit of a Natural. Radix is 2^32: half the native word, so a limb
/// product plus carry always fits in a uint64_t during schoolbook
/// multiplication.
using Limb = std::uint32_t;

inline constexpr unsigned kLimbBits = 32;
inline constexpr std::uint64_t kLimbRadix = std::uint64_t{1} << kLimbBits;
inline constexpr std::uint64_t kLimbMask = kLimbRadix - 1;

class UnderflowError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DivisionByZeroError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Arbitrary-precision unsigned integer backed by the four schoolbook
/// algorithms (carry addition, borrow subtraction, long multiplication,
/// long division).
///
/// Representation: limbs least-significant first, no most-significant zero
/// limb. Zero is the empty limb sequence, so equality is structural.
/// Values are immutable once constructed; every operation returns a fresh
/// canonical value.
class Natural {
public:
    Natural() = default;  // zero

    static Natural from_u64(std::uint64_t value);

    /// Parses a nonempty string of digits 0-9. Leading zeros are accepted
    /// and canonicalized away. Throws ParseError otherwise.
    static Natural from_decimal(std::string_view text);

    /// Adopts a least-significant-first limb sequence, trimming
    /// most-significant zero limbs.
    static Natural from_limbs(std::vector<Limb> limbs);

    /// Decimal rendering: no leading zeros, "0" for zero.
    std::string to_decimal() const;

    /// The value as a machine word, if it fits.
    std::optional<std::uint64_t> to_u64() const;

    bool is_zero() const { return limbs_.empty(); }
    std::size_t limb_count() const { return limbs_.size(); }
    std::span<const Limb> limbs() const { return limbs_; }

    friend bool operator==(const Natural&, const Natural&) = default;

private:
    std::vector<Limb> limbs_;
};

struct DivModResult {
    Natural quotient;
    Natural remainder;  // always < divisor
};

/// Schoolbook addition with carry. Result has at most
/// max(limbs(x), limbs(y)) + 1 limbs.
Natural add(const Natural& x, const Natural& y);

/// Schoolbook subtraction with borrow. Throws UnderflowError when x < y.
Natural sub(const Natural& x, const Natural& y);

/// Schoolbook long multiplication. Result has at most
/// limbs(x) + limbs(y) limbs.
Natural mul(const Natural& x, const Natural& y);

/// Schoolbook long division: quotient-digit estimation against the top
/// divisor limbs with at most two downward corrections per digit.
/// Satisfies dividend = quotient * divisor + remainder, remainder < divisor.
/// Throws DivisionByZeroError when divisor is zero.
DivModResult divmod(const Natural& dividend, const Natural& divisor);

/// Numeric total order.
std::strong_ordering compare(const Natural& x, const Natural& y);

inline std::strong_ordering operator<=>(const Natural& x, const Natural& y) {
    return compare(x, y);
}

/// 2x by limb shift; never invokes mul.
Natural twice(const Natural& x);

/// x + k for a single-limb k.
Natural add_small(const Natural& x, Limb k);

/// Running tally of primitive limb operations executed by the kernels above
/// on this thread (one count per inner-loop step). Deterministic for fixed
/// inputs, unlike wall time; the bench module fits complexity exponents
/// against it.
std::uint64_t limb_op_count();
void reset_limb_op_count();

}  // namespace oddsq
