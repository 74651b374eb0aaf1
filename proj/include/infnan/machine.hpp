// Machine parameters for the supported working precisions.
//
// blue_min / blue_max are the scaling constants for sums of squares: any x with
// blue_min <= |x| <= blue_max has x*x neither underflowing below the smallest
// normal number nor overflowing.  They are computed from the radix-2 exponent
// range, never hard-coded, and validate() checks the defining properties by
// direct evaluation.
#pragma once

#include <cmath>
#include <concepts>
#include <limits>

#include "infnan/classify.hpp"

namespace infnan {

template <std::floating_point T>
struct MachineParams {
    T ov;             // largest finite value
    T un;             // smallest positive normal value
    T sfmin;          // smallest value that can be inverted without overflow
    T blue_min;       // smallest power of 2 whose square stays normal
    T blue_max;       // largest power of 2 whose square stays finite
    int max_exponent; // biased exponent field of Inf/NaN
};

template <std::floating_point T>
inline MachineParams<T> machine_params() noexcept {
    using L = std::numeric_limits<T>;
    MachineParams<T> p{};
    p.ov = L::max();
    p.un = L::min();
    const T small = T(1) / p.ov;
    p.sfmin = (small >= p.un) ? small * (T(1) + L::epsilon()) : p.un;
    // Powers of two: x = 2^e, x*x = 2^(2e).  Normal range is [2^(Emin-1), ~2^Emax).
    const int emin = L::min_exponent; // un == 2^(emin-1)
    const int emax = L::max_exponent; // ov == 2^emax * (1 - eps/2)
    const int bmin_exp = -((1 - emin) / 2); // ceil((emin-1)/2), emin-1 < 0
    const int bmax_exp = (emax - 1) / 2;    // floor((emax-1)/2)
    p.blue_min = std::ldexp(T(1), bmin_exp);
    p.blue_max = std::ldexp(T(1), bmax_exp);
    p.max_exponent = detail::FpBits<T>::exp_mask;
    return p;
}

// Defining properties, checkable at startup / in tests by direct evaluation.
template <std::floating_point T>
inline bool validate(const MachineParams<T>& p) noexcept {
    const T bmin_sq = p.blue_min * p.blue_min;
    const T half_sq = (p.blue_min / T(2)) * (p.blue_min / T(2));
    const T bmax_sq = p.blue_max * p.blue_max;
    const T dbl_sq = (T(2) * p.blue_max) * (T(2) * p.blue_max);
    return classify(bmin_sq) == FpClass::Finite && bmin_sq >= p.un &&
           half_sq < p.un &&
           classify(bmax_sq) == FpClass::Finite &&
           classify(dbl_sq) == FpClass::Inf &&
           classify(p.ov) == FpClass::Finite &&
           exponent_field(std::numeric_limits<T>::infinity()) == p.max_exponent &&
           exponent_field(std::numeric_limits<T>::quiet_NaN()) == p.max_exponent;
}

} // namespace infnan
