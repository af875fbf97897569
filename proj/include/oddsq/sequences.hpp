#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "oddsq/backend.hpp"

namespace oddsq {

/// Generator state for multiplication-free square computation. Consecutive
/// squares differ by consecutive odd numbers, so one addition advances the
/// square and one small addition advances the increment.
///
/// Invariants: odd = 2*index + 1 and square = index * index, including the
/// initial state (odd = 1, square = 0, index = 0).
template <AdditiveBackend B>
struct SquareStream {
    using value_type = typename B::value_type;

    value_type odd = B::one();
    value_type square = B::zero();
    std::uint64_t index = 0;  // completed steps

    struct Step {
        SquareStream state;  // successor
        value_type value;    // (index + 1)^2
    };

    /// Emits the next square and the successor state; this value is
    /// untouched.
    Step step() const {
        Step out;
        out.value = B::add(square, odd);
        out.state.square = out.value;
        out.state.odd = B::add_small(odd, 2);
        out.state.index = index + 1;
        return out;
    }
};

namespace detail {

[[noreturn]] inline void rethrow_with_index(const OverflowError& e,
                                            std::uint64_t k,
                                            const char* what_failed) {
    throw OverflowError(std::string(what_failed) + " at k = " +
                            std::to_string(k) + " (" + e.what() + ")",
                        k);
}

}  // namespace detail

/// Calls emit(k, k^2) for k = 1..n using only additive operations. On the
/// machine backend, overflow is reported with the first unrepresentable k.
template <AdditiveBackend B, typename Emit>
void for_each_square(std::uint64_t n, Emit&& emit) {
    auto odd = B::one();
    auto square = B::zero();
    for (std::uint64_t k = 1; k <= n; ++k) {
        try {
            square = B::add(square, odd);
            odd = B::add_small(odd, 2);
        } catch (const OverflowError& e) {
            detail::rethrow_with_index(e, k, "square is unrepresentable");
        }
        emit(k, square);
    }
}

/// Squares of 1..n, additive method.
template <AdditiveBackend B>
std::vector<typename B::value_type> squares_first_n(std::uint64_t n) {
    std::vector<typename B::value_type> out;
    out.reserve(n);
    for_each_square<B>(n, [&](std::uint64_t, const typename B::value_type& sq) {
        out.push_back(sq);
    });
    return out;
}

/// (n+1)^2 from n^2: adds twice(n) + 1, the next odd number. The caller
/// guarantees square_n == n^2.
template <AdditiveBackend B>
typename B::value_type next_square(const typename B::value_type& square_n,
                                   std::uint64_t n) {
    return B::add_small(B::add(square_n, B::twice(B::from_count(n))), 1);
}

/// Sum of 1^2 .. n^2, accumulated from the additive stream.
template <AdditiveBackend B>
typename B::value_type sum_of_squares_first_n(std::uint64_t n) {
    auto total = B::zero();
    for_each_square<B>(n, [&](std::uint64_t k, const typename B::value_type& sq) {
        try {
            total = B::add(total, sq);
        } catch (const OverflowError& e) {
            detail::rethrow_with_index(e, k, "sum of squares is unrepresentable");
        }
    });
    return total;
}

/// Baseline: element k is mul(k, k). Benchmark comparator and test oracle
/// only.
template <MultiplyingBackend B, typename Emit>
void for_each_square_by_mul(std::uint64_t n, Emit&& emit) {
    for (std::uint64_t k = 1; k <= n; ++k) {
        typename B::value_type sq;
        try {
            const auto v = B::from_count(k);
            sq = B::mul(v, v);
        } catch (const OverflowError& e) {
            detail::rethrow_with_index(e, k, "square is unrepresentable");
        }
        emit(k, sq);
    }
}

template <MultiplyingBackend B>
std::vector<typename B::value_type> squares_first_n_by_mul(std::uint64_t n) {
    std::vector<typename B::value_type> out;
    out.reserve(n);
    for_each_square_by_mul<B>(n, [&](std::uint64_t, const typename B::value_type& sq) {
        out.push_back(sq);
    });
    return out;
}

}  // namespace oddsq
