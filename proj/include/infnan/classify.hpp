// Floating-point classification by bit inspection.
//
// Everything in this library that needs to know whether a value is finite,
// infinite, or NaN goes through classify().  The test is a raw exponent-field
// comparison on the bit pattern, so it
//   - treats quiet and signaling NaNs identically and ignores payloads,
//   - never touches the IEEE status flags,
//   - behaves the same under any rounding mode.
#pragma once

#include <bit>
#include <complex>
#include <concepts>
#include <cstdint>

namespace infnan {

enum class FpClass { Finite, Inf, NaN };

namespace detail {

template <class T>
struct FpBits;

template <>
struct FpBits<float> {
    using uint = std::uint32_t;
    static constexpr int mant_bits = 23;
    static constexpr uint exp_mask = 0xFFu;
    static constexpr uint mant_mask = 0x7FFFFFu;
};

template <>
struct FpBits<double> {
    using uint = std::uint64_t;
    static constexpr int mant_bits = 52;
    static constexpr uint exp_mask = 0x7FFull;
    static constexpr uint mant_mask = 0xFFFFFFFFFFFFFull;
};

} // namespace detail

// Raw biased exponent field (0 .. exp_mask); exp_mask marks Inf/NaN.
template <std::floating_point T>
constexpr int exponent_field(T x) noexcept {
    using B = detail::FpBits<T>;
    const auto bits = std::bit_cast<typename B::uint>(x);
    return static_cast<int>((bits >> B::mant_bits) & B::exp_mask);
}

template <std::floating_point T>
constexpr FpClass classify(T x) noexcept {
    using B = detail::FpBits<T>;
    const auto bits = std::bit_cast<typename B::uint>(x);
    if (((bits >> B::mant_bits) & B::exp_mask) != B::exp_mask)
        return FpClass::Finite;
    return (bits & B::mant_mask) == 0 ? FpClass::Inf : FpClass::NaN;
}

// Component-wise classification of a complex value with the precedence the
// index/scan rules need: any NaN component dominates, then any Inf component.
template <std::floating_point T>
constexpr FpClass classify(std::complex<T> z) noexcept {
    const FpClass re = classify(z.real());
    const FpClass im = classify(z.imag());
    if (re == FpClass::NaN || im == FpClass::NaN) return FpClass::NaN;
    if (re == FpClass::Inf || im == FpClass::Inf) return FpClass::Inf;
    return FpClass::Finite;
}

template <class T>
constexpr bool is_exceptional(T x) noexcept {
    return classify(x) != FpClass::Finite;
}

} // namespace infnan
