// Complex building blocks with pinned exception semantics.
//
//   safe_cabs : |z| without intermediate over/underflow.  Any infinite
//               component dominates (the result is +Inf even when the other
//               component is NaN); otherwise a NaN component yields NaN.
//   safe_cdiv : scaled complex division (Smith's formulas with the usual
//               pre-scaling), accurate to a few ulps across the full range.
//   cmul_textbook : 4-multiply complex product; (Inf+0i)*(Inf+Inf i) has NaN
//               components, exactly as IEEE arithmetic produces them.
//   cmul_annexg   : the same product followed by the C-standard recovery step
//               that turns "some component infinite" into a proper complex
//               infinity.
#pragma once

#include <cmath>
#include <complex>
#include <concepts>
#include <limits>

#include "infnan/classify.hpp"
#include "infnan/machine.hpp"

namespace infnan {

template <std::floating_point T>
inline T safe_cabs(std::complex<T> z) noexcept {
    const T re = z.real(), im = z.imag();
    // Inf beats NaN: an infinite component fixes the modulus regardless of the
    // other component.
    if (classify(re) == FpClass::Inf || classify(im) == FpClass::Inf)
        return std::numeric_limits<T>::infinity();
    if (classify(re) == FpClass::NaN || classify(im) == FpClass::NaN)
        return std::numeric_limits<T>::quiet_NaN();
    T w = std::fabs(re), v = std::fabs(im);
    if (w < v) { const T t = w; w = v; v = t; }
    if (w == T(0)) return T(0);
    const T q = v / w;
    return w * std::sqrt(T(1) + q * q);
}

// Textbook product: (a+bi)(c+di) = (ac-bd) + (ad+bc)i, four multiplies, no
// recovery of any kind.
template <std::floating_point T>
inline std::complex<T> cmul_textbook(std::complex<T> x, std::complex<T> y) noexcept {
    const T a = x.real(), b = x.imag(), c = y.real(), d = y.imag();
    return {a * c - b * d, a * d + b * c};
}

// Textbook product plus the recovery pass: if the raw result is (NaN,NaN) but
// one operand carries an infinity, rebuild the result so that it is a proper
// complex infinity (both components infinite or zero-signed products).
template <std::floating_point T>
inline std::complex<T> cmul_annexg(std::complex<T> x, std::complex<T> y) noexcept {
    T a = x.real(), b = x.imag(), c = y.real(), d = y.imag();
    T zr = a * c - b * d;
    T zi = a * d + b * c;
    if (classify(zr) == FpClass::NaN && classify(zi) == FpClass::NaN) {
        bool recalc = false;
        auto boxinf = [](T& re, T& im) {
            re = std::copysign(std::isinf(re) ? T(1) : T(0), re);
            im = std::copysign(std::isinf(im) ? T(1) : T(0), im);
        };
        if (std::isinf(a) || std::isinf(b)) {
            boxinf(a, b);
            if (std::isnan(c)) c = std::copysign(T(0), c);
            if (std::isnan(d)) d = std::copysign(T(0), d);
            recalc = true;
        }
        if (std::isinf(c) || std::isinf(d)) {
            boxinf(c, d);
            if (std::isnan(a)) a = std::copysign(T(0), a);
            if (std::isnan(b)) b = std::copysign(T(0), b);
            recalc = true;
        }
        if (recalc) {
            const T inf = std::numeric_limits<T>::infinity();
            zr = inf * (a * c - b * d);
            zi = inf * (a * d + b * c);
        }
    }
    return {zr, zi};
}

namespace detail {

// One quotient component, computed as (a + b*r) * t with a rearrangement when
// b*r would lose all accuracy.  The zero tests pick between two algebraically
// equal formulas; exceptional operands flow through unchanged (NaN/Inf make
// b*r nonzero, selecting the direct formula).
template <std::floating_point T>
inline T cdiv_component(T a, T b, T c, T d, T r, T t) noexcept {
    if (r != T(0)) {
        const T br = b * r;
        if (br != T(0)) return (a + br) * t;
        return a * t + (b * t) * r;
    }
    return (a + d * (b / c)) * t;
}

template <std::floating_point T>
inline void cdiv_scaled(T a, T b, T c, T d, T& p, T& q) noexcept {
    if (std::fabs(d) <= std::fabs(c)) {
        const T r = d / c;
        const T t = T(1) / (c + d * r);
        p = cdiv_component(a, b, c, d, r, t);
        q = cdiv_component(b, -a, c, d, r, t);
    } else {
        const T r = c / d;
        const T t = T(1) / (d + c * r);
        p = cdiv_component(b, a, d, c, r, t);
        q = -cdiv_component(a, -b, d, c, r, t);
    }
}

} // namespace detail

template <std::floating_point T>
inline std::complex<T> safe_cdiv(std::complex<T> x, std::complex<T> y) noexcept {
    using L = std::numeric_limits<T>;
    T a = x.real(), b = x.imag(), c = y.real(), d = y.imag();
    const MachineParams<T> mp = machine_params<T>();
    const T half = T(0.5), two = T(2);
    const T eps = L::epsilon();
    const T bs = two / (eps * eps);
    T ab = std::fmax(std::fabs(a), std::fabs(b));
    T cd = std::fmax(std::fabs(c), std::fabs(d));
    T s = T(1);
    if (ab >= half * mp.ov) { a *= half; b *= half; s *= two; }
    if (cd >= half * mp.ov) { c *= half; d *= half; s *= half; }
    if (ab <= mp.un * two / eps) { a *= bs; b *= bs; s /= bs; }
    if (cd <= mp.un * two / eps) { c *= bs; d *= bs; s *= bs; }
    T p, q;
    detail::cdiv_scaled(a, b, c, d, p, q);
    return {p * s, q * s};
}

} // namespace infnan
