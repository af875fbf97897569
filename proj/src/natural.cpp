#include "oddsq/natural.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>

namespace oddsq {

namespace {

thread_local std::uint64_t g_limb_ops = 0;

inline void count_ops(std::uint64_t n) { g_limb_ops += n; }

void trim(std::vector<Limb>& limbs) {
    while (!limbs.empty() && limbs.back() == 0) limbs.pop_back();
}

// x * m + a for single-limb m, a. Used by decimal parsing.
std::vector<Limb> mul_small_add(std::span<const Limb> x, Limb m, Limb a) {
    std::vector<Limb> out;
    out.reserve(x.size() + 1);
    std::uint64_t carry = a;
    for (const Limb limb : x) {
        const std::uint64_t t = std::uint64_t(limb) * m + carry;
        out.push_back(static_cast<Limb>(t & kLimbMask));
        carry = t >> kLimbBits;
    }
    count_ops(x.size());
    if (carry != 0) out.push_back(static_cast<Limb>(carry));
    return out;
}

// In-place left shift by s bits, s < 32. dst must already hold the limbs.
void shift_left_bits(std::vector<Limb>& limbs, unsigned s) {
    if (s == 0) return;
    Limb carry = 0;
    for (Limb& limb : limbs) {
        const Limb next = limb >> (kLimbBits - s);
        limb = (limb << s) | carry;
        carry = next;
    }
    count_ops(limbs.size());
    if (carry != 0) limbs.push_back(carry);
}

void shift_right_bits(std::vector<Limb>& limbs, unsigned s) {
    if (s == 0) return;
    Limb carry = 0;
    for (std::size_t i = limbs.size(); i-- > 0;) {
        const Limb next = limbs[i] << (kLimbBits - s);
        limbs[i] = (limbs[i] >> s) | carry;
        carry = next;
    }
    count_ops(limbs.size());
}

// Division by a single-limb divisor: one pass from the most significant
// limb, tracking the running remainder in a word.
DivModResult divmod_by_limb(std::span<const Limb> u, Limb d) {
    std::vector<Limb> q(u.size(), 0);
    std::uint64_t rem = 0;
    for (std::size_t i = u.size(); i-- > 0;) {
        const std::uint64_t cur = (rem << kLimbBits) | u[i];
        q[i] = static_cast<Limb>(cur / d);
        rem = cur % d;
    }
    count_ops(u.size());
    std::vector<Limb> r;
    if (rem != 0) r.push_back(static_cast<Limb>(rem));
    return {Natural::from_limbs(std::move(q)), Natural::from_limbs(std::move(r))};
}

// Knuth-style long division for a multi-limb divisor. Normalizes so the
// divisor's top bit is set, estimates each quotient digit from the top two
// dividend limbs, corrects downward at most twice, then multiply-subtracts
// with a rare add-back when the estimate was still one too high.
DivModResult divmod_long(std::span<const Limb> u_in, std::span<const Limb> v_in) {
    const std::size_t n = v_in.size();
    const std::size_t m = u_in.size() - n;

    const unsigned shift = std::countl_zero(v_in.back());
    std::vector<Limb> v(v_in.begin(), v_in.end());
    shift_left_bits(v, shift);  // cannot grow: top limb keeps its high bits
    std::vector<Limb> u(u_in.begin(), u_in.end());
    u.push_back(0);  // room for the shifted-out bits; stays zero when shift == 0
    shift_left_bits(u, shift);

    std::vector<Limb> q(m + 1, 0);
    for (std::size_t j = m + 1; j-- > 0;) {
        const std::uint64_t top =
            (std::uint64_t(u[j + n]) << kLimbBits) | u[j + n - 1];
        std::uint64_t qhat = top / v[n - 1];
        std::uint64_t rhat = top % v[n - 1];
        while (qhat >= kLimbRadix ||
               qhat * v[n - 2] > ((rhat << kLimbBits) | u[j + n - 2])) {
            --qhat;
            rhat += v[n - 1];
            if (rhat >= kLimbRadix) break;
        }

        // u[j .. j+n] -= qhat * v
        std::uint64_t mul_carry = 0;
        std::uint64_t borrow = 0;
        for (std::size_t i = 0; i <= n; ++i) {
            const std::uint64_t p = (i < n ? qhat * v[i] : 0) + mul_carry;
            mul_carry = p >> kLimbBits;
            const std::uint64_t t = std::uint64_t(u[i + j]) - (p & kLimbMask) - borrow;
            u[i + j] = static_cast<Limb>(t & kLimbMask);
            borrow = (t >> kLimbBits) & 1;
        }
        count_ops(n + 1);

        if (borrow != 0) {
            // Estimate was one too high: add the divisor back.
            --qhat;
            std::uint64_t carry = 0;
            for (std::size_t i = 0; i < n; ++i) {
                const std::uint64_t t = std::uint64_t(u[i + j]) + v[i] + carry;
                u[i + j] = static_cast<Limb>(t & kLimbMask);
                carry = t >> kLimbBits;
            }
            u[j + n] = static_cast<Limb>((u[j + n] + carry) & kLimbMask);
            count_ops(n);
        }
        q[j] = static_cast<Limb>(qhat);
    }

    u.resize(n);
    shift_right_bits(u, shift);
    return {Natural::from_limbs(std::move(q)), Natural::from_limbs(std::move(u))};
}

}  // namespace

Natural Natural::from_u64(std::uint64_t value) {
    std::vector<Limb> limbs;
    while (value != 0) {
        limbs.push_back(static_cast<Limb>(value & kLimbMask));
        value >>= kLimbBits;
        count_ops(1);
    }
    Natural out;
    out.limbs_ = std::move(limbs);
    return out;
}

Natural Natural::from_limbs(std::vector<Limb> limbs) {
    trim(limbs);
    Natural out;
    out.limbs_ = std::move(limbs);
    return out;
}

Natural Natural::from_decimal(std::string_view text) {
    if (text.empty()) throw ParseError("empty decimal string");
    std::vector<Limb> acc;
    std::size_t pos = 0;
    while (pos < text.size()) {
        // Fold up to nine digits at a time: 10^9 < 2^32.
        const std::size_t take = std::min<std::size_t>(9, text.size() - pos);
        Limb chunk = 0;
        Limb scale = 1;
        for (std::size_t i = 0; i < take; ++i) {
            const char c = text[pos + i];
            if (c < '0' || c > '9') {
                throw ParseError(std::string("invalid decimal digit '") + c + "'");
            }
            chunk = chunk * 10 + static_cast<Limb>(c - '0');
            scale *= 10;
        }
        acc = mul_small_add(acc, scale, chunk);
        pos += take;
    }
    return from_limbs(std::move(acc));
}

std::string Natural::to_decimal() const {
    if (is_zero()) return "0";
    // Peel nine digits per round with the audited schoolbook division;
    // 10^9 is the largest power of ten below the limb radix.
    static const Natural kBillion = Natural::from_u64(1'000'000'000);
    std::vector<std::uint32_t> groups;
    Natural rest = *this;
    while (!rest.is_zero()) {
        DivModResult d = divmod(rest, kBillion);
        groups.push_back(static_cast<std::uint32_t>(d.remainder.to_u64().value_or(0)));
        rest = std::move(d.quotient);
    }
    std::string out;
    out.reserve(groups.size() * 9);
    char buf[16];
    std::snprintf(buf, sizeof buf, "%u", groups.back());
    out += buf;
    for (std::size_t i = groups.size() - 1; i-- > 0;) {
        std::snprintf(buf, sizeof buf, "%09u", groups[i]);
        out += buf;
    }
    return out;
}

std::optional<std::uint64_t> Natural::to_u64() const {
    if (limbs_.size() > 2) return std::nullopt;
    std::uint64_t value = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) {
        value = (value << kLimbBits) | limbs_[i];
    }
    return value;
}

Natural add(const Natural& x, const Natural& y) {
    const auto xs = x.limbs();
    const auto ys = y.limbs();
    const std::size_t len = std::max(xs.size(), ys.size());
    std::vector<Limb> out;
    out.reserve(len + 1);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < len; ++i) {
        const std::uint64_t t = (i < xs.size() ? xs[i] : 0) +
                                std::uint64_t(i < ys.size() ? ys[i] : 0) + carry;
        out.push_back(static_cast<Limb>(t & kLimbMask));
        carry = t >> kLimbBits;
    }
    count_ops(len);
    if (carry != 0) {
        out.push_back(1);
        count_ops(1);
    }
    return Natural::from_limbs(std::move(out));
}

Natural sub(const Natural& x, const Natural& y) {
    if (compare(x, y) == std::strong_ordering::less) {
        throw UnderflowError("natural subtraction underflow: minuend < subtrahend");
    }
    const auto xs = x.limbs();
    const auto ys = y.limbs();
    std::vector<Limb> out;
    out.reserve(xs.size());
    std::uint64_t borrow = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        // Wraparound carries the borrow in bit 32; branchless on random data.
        const std::uint64_t t =
            std::uint64_t(xs[i]) - (i < ys.size() ? ys[i] : 0) - borrow;
        out.push_back(static_cast<Limb>(t & kLimbMask));
        borrow = (t >> kLimbBits) & 1;
    }
    count_ops(xs.size());
    return Natural::from_limbs(std::move(out));
}

Natural mul(const Natural& x, const Natural& y) {
    if (x.is_zero() || y.is_zero()) return {};
    const auto xs = x.limbs();
    const auto ys = y.limbs();
    std::vector<Limb> out(xs.size() + ys.size(), 0);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        std::uint64_t carry = 0;
        for (std::size_t j = 0; j < ys.size(); ++j) {
            const std::uint64_t t =
                std::uint64_t(xs[i]) * ys[j] + out[i + j] + carry;
            out[i + j] = static_cast<Limb>(t & kLimbMask);
            carry = t >> kLimbBits;
        }
        out[i + ys.size()] = static_cast<Limb>(carry);
    }
    count_ops(xs.size() * (ys.size() + 1));
    return Natural::from_limbs(std::move(out));
}

DivModResult divmod(const Natural& dividend, const Natural& divisor) {
    if (divisor.is_zero()) throw DivisionByZeroError("division by zero");
    if (compare(dividend, divisor) == std::strong_ordering::less) {
        return {Natural{}, dividend};
    }
    if (divisor.limb_count() == 1) {
        return divmod_by_limb(dividend.limbs(), divisor.limbs()[0]);
    }
    return divmod_long(dividend.limbs(), divisor.limbs());
}

std::strong_ordering compare(const Natural& x, const Natural& y) {
    const auto xs = x.limbs();
    const auto ys = y.limbs();
    if (xs.size() != ys.size()) return xs.size() <=> ys.size();
    for (std::size_t i = xs.size(); i-- > 0;) {
        if (xs[i] != ys[i]) return xs[i] <=> ys[i];
    }
    return std::strong_ordering::equal;
}

Natural twice(const Natural& x) {
    const auto xs = x.limbs();
    std::vector<Limb> out;
    out.reserve(xs.size() + 1);
    Limb carry = 0;
    for (const Limb limb : xs) {
        out.push_back((limb << 1) | carry);
        carry = limb >> (kLimbBits - 1);
    }
    count_ops(xs.size());
    if (carry != 0) {
        out.push_back(carry);
        count_ops(1);
    }
    return Natural::from_limbs(std::move(out));
}

Natural add_small(const Natural& x, Limb k) {
    const auto xs = x.limbs();
    std::vector<Limb> out(xs.begin(), xs.end());
    std::uint64_t carry = k;
    for (std::size_t i = 0; i < out.size() && carry != 0; ++i) {
        const std::uint64_t t = out[i] + carry;
        out[i] = static_cast<Limb>(t & kLimbMask);
        carry = t >> kLimbBits;
        count_ops(1);
    }
    if (carry != 0) {
        out.push_back(static_cast<Limb>(carry));
        count_ops(1);
    }
    return Natural::from_limbs(std::move(out));
}

std::uint64_t limb_op_count() { return g_limb_ops; }

void reset_limb_op_count() { g_limb_ops = 0; }

}  // namespace oddsq
