// Level-1 vector kernels with consistent Inf/NaN semantics.
//
// iamax — three-tier selection rule, one pass:
//           1. index of the first NaN entry, if any;
//           2. else index of the first ±Inf entry, if any;
//           3. else index of the first entry of largest magnitude
//              (|re|+|im| proxy for complex, rescaled by 1/4 if the proxy
//              overflows on finite components).
// nrm2  — three-bin (small/medium/big) scaled sum of squares; any NaN entry
//         yields NaN, else any Inf entry yields +Inf, regardless of order.
// rotg  — Givens generation with a pinned table for exceptional inputs and
//         the "r carries the sign that makes c >= 0" convention otherwise.
// first/last nonzero helpers — trimming support so callers can shrink
//         triangular solves themselves instead of kernels skipping zeros.
// scal  — x <- alpha*x with no special case for alpha == 0 or 1, so
//         0 * Inf = NaN happens exactly as IEEE arithmetic dictates.
#pragma once

#include <cmath>
#include <complex>
#include <concepts>
#include <limits>

#include "infnan/classify.hpp"
#include "infnan/machine.hpp"
#include "infnan/views.hpp"

namespace infnan {

namespace detail {

template <std::floating_point T>
inline void check_vector(const char* routine, int n, int inc, int n_pos, int inc_pos) {
    if (n < 0) throw ArgumentError(routine, n_pos);
    if (inc < 1) throw ArgumentError(routine, inc_pos);
}

template <std::floating_point T>
inline T sign1(T x) noexcept { return std::copysign(T(1), x); }

} // namespace detail

// ---------------------------------------------------------------------------
// iamax
// ---------------------------------------------------------------------------

template <std::floating_point T>
inline int iamax(VectorView<const T> x) {
    detail::check_vector<T>("IAMAX", x.n, x.inc, 1, 3);
    if (x.n == 0) return 0;
    int result = 1;
    T smax = T(-1); // any finite magnitude (including 0) beats the sentinel
    bool noinfyet = true;
    for (int i = 1; i <= x.n; ++i) {
        const T xi = x[i];
        switch (classify(xi)) {
        case FpClass::NaN:
            return i; // first NaN wins outright
        case FpClass::Inf:
            if (noinfyet) { result = i; noinfyet = false; }
            break;
        case FpClass::Finite:
            if (noinfyet) {
                const T ax = std::fabs(xi);
                if (ax > smax) { smax = ax; result = i; }
            }
            break;
        }
    }
    return result;
}

template <std::floating_point T>
inline int iamax(VectorView<const std::complex<T>> x) {
    detail::check_vector<T>("IAMAX", x.n, x.inc, 1, 3);
    if (x.n == 0) return 0;
    int result = 1;
    T smax = T(-1);
    bool noinfyet = true;
    bool scaledsmax = false; // one-way switch to the 1/4-scaled proxy
    for (int i = 1; i <= x.n; ++i) {
        const T re = x[i].real(), im = x[i].imag();
        if (classify(re) == FpClass::NaN || classify(im) == FpClass::NaN)
            return i;
        if (!noinfyet) continue; // only NaNs can still change the answer
        if (classify(re) == FpClass::Inf || classify(im) == FpClass::Inf) {
            result = i;
            noinfyet = false;
        } else if (!scaledsmax) {
            const T ax = std::fabs(re) + std::fabs(im);
            if (classify(ax) == FpClass::Inf) {
                // Proxy overflowed on finite components: restart the scan of
                // magnitudes on a 1/4 scale (cannot overflow: both |re|,|im|
                // are finite, so |re|/4 + |im|/4 <= OV/2 + OV/2 = OV).
                scaledsmax = true;
                smax = T(0.25) * std::fabs(re) + T(0.25) * std::fabs(im);
                result = i;
            } else if (ax > smax) {
                smax = ax;
                result = i;
            }
        } else {
            const T ax = T(0.25) * std::fabs(re) + T(0.25) * std::fabs(im);
            if (ax > smax) { smax = ax; result = i; }
        }
    }
    return result;
}

// ---------------------------------------------------------------------------
// nrm2
// ---------------------------------------------------------------------------

namespace detail {

// Accumulation-safe bin thresholds and scalings: tbig/ssml/sbig leave enough
// headroom that a bin with any practical number of terms cannot over- or
// underflow (the exposed MachineParams blue_min/blue_max are the tight
// single-square constants instead).
constexpr int floordiv2(int v) noexcept { return (v >= 0) ? v / 2 : -((-v + 1) / 2); }
constexpr int ceildiv2(int v) noexcept { return (v >= 0) ? (v + 1) / 2 : -((-v) / 2); }

template <std::floating_point T>
struct Nrm2Consts {
    T tsml, tbig, ssml, sbig;
    Nrm2Consts() {
        using L = std::numeric_limits<T>;
        const int emin = L::min_exponent;
        const int emax = L::max_exponent;
        const int digs = L::digits;
        tsml = std::ldexp(T(1), ceildiv2(emin - 1));
        tbig = std::ldexp(T(1), floordiv2(emax - digs + 1));
        ssml = std::ldexp(T(1), -floordiv2(emin - digs));
        sbig = std::ldexp(T(1), -ceildiv2(emax + digs - 1));
    }
};

template <std::floating_point T>
struct Nrm2Acc {
    T abig = 0, amed = 0, asml = 0;
    bool notbig = true;
    bool saw_inf = false, saw_nan = false;
    const Nrm2Consts<T> k{};

    void add(T v) noexcept {
        switch (classify(v)) {
        case FpClass::NaN: saw_nan = true; return;
        case FpClass::Inf: saw_inf = true; return;
        case FpClass::Finite: break;
        }
        const T ax = std::fabs(v);
        if (ax > k.tbig) {
            const T t = ax * k.sbig;
            abig += t * t;
            notbig = false;
        } else if (ax < k.tsml) {
            if (notbig) {
                const T t = ax * k.ssml;
                asml += t * t;
            }
        } else {
            amed += ax * ax;
        }
    }

    T result() const noexcept {
        if (saw_nan) return std::numeric_limits<T>::quiet_NaN();
        if (saw_inf) return std::numeric_limits<T>::infinity();
        T scl = 1, sumsq = 0;
        if (abig > T(0)) {
            T b = abig;
            if (amed > T(0)) b += (amed * k.sbig) * k.sbig;
            scl = T(1) / k.sbig;
            sumsq = b;
        } else if (asml > T(0)) {
            if (amed > T(0)) {
                const T ym = std::sqrt(amed);
                const T ys = std::sqrt(asml) / k.ssml;
                const T ymin = ys > ym ? ym : ys;
                const T ymax = ys > ym ? ys : ym;
                scl = T(1);
                const T q = ymin / ymax;
                sumsq = ymax * ymax * (T(1) + q * q);
            } else {
                scl = T(1) / k.ssml;
                sumsq = asml;
            }
        } else {
            scl = T(1);
            sumsq = amed;
        }
        return scl * std::sqrt(sumsq);
    }
};

} // namespace detail

template <std::floating_point T>
inline T nrm2(VectorView<const T> x) {
    detail::check_vector<T>("NRM2", x.n, x.inc, 1, 3);
    if (x.n == 0) return T(0);
    detail::Nrm2Acc<T> acc;
    for (int i = 1; i <= x.n; ++i) acc.add(x[i]);
    return acc.result();
}

template <std::floating_point T>
inline T nrm2(VectorView<const std::complex<T>> x) {
    detail::check_vector<T>("NRM2", x.n, x.inc, 1, 3);
    if (x.n == 0) return T(0);
    detail::Nrm2Acc<T> acc;
    for (int i = 1; i <= x.n; ++i) {
        acc.add(x[i].real());
        acc.add(x[i].imag());
    }
    return acc.result();
}

// ---------------------------------------------------------------------------
// rotg
// ---------------------------------------------------------------------------

template <std::floating_point T>
struct GivensReal {
    T c, s, r, z;
};

// Exceptional-input table (checked in order):
//   any NaN           -> c = s = r = z = NaN
//   f = ±Inf, g = ±Inf -> c = NaN, s = NaN, r = ±Inf (sign unconstrained), z = NaN
//   f = ±Inf, g finite -> c = 1, s = 0, r = f, z = 0
//   f finite, g = ±Inf -> c = 0, s = 1, r = g, z = 1
template <std::floating_point T>
inline GivensReal<T> rotg(T f, T g) noexcept {
    const T nan = std::numeric_limits<T>::quiet_NaN();
    const T inf = std::numeric_limits<T>::infinity();
    const FpClass cf = classify(f), cg = classify(g);
    if (cf == FpClass::NaN || cg == FpClass::NaN) return {nan, nan, nan, nan};
    if (cf == FpClass::Inf && cg == FpClass::Inf) return {nan, nan, inf, nan};
    if (cf == FpClass::Inf) return {T(1), T(0), f, T(0)};
    if (cg == FpClass::Inf) return {T(0), T(1), g, T(1)};
    if (g == T(0)) return {T(1), T(0), f, T(0)};
    if (f == T(0)) return {T(0), T(1), g, T(1)};
    const T af = std::fabs(f), ag = std::fabs(g);
    const T d = af > ag ? af : ag;
    const T fs = f / d, gs = g / d;
    const T rr = std::sqrt(fs * fs + gs * gs); // in [1, sqrt(2)]
    const T sigma = detail::sign1(f);          // r takes f's sign so c >= 0
    const T c = std::fabs(fs) / rr;
    const T s = sigma * gs / rr;
    const T r = sigma * rr * d;
    const T z = (af > ag) ? s : T(1) / c;
    return {c, s, r, z};
}

template <std::floating_point T>
struct GivensComplex {
    T c;
    std::complex<T> s, r;
};

// Exceptional-input table (checked in order; "contains Inf" means either
// component):
//   any NaN component anywhere      -> c = NaN, s = (NaN,NaN), r = (NaN,NaN)
//   f and g both contain Inf        -> c = NaN, s = (NaN,NaN), r = (+Inf,0)
//   f contains Inf, g finite        -> c = 1,   s = 0,          r = f
//   f finite, g = ±Inf + finite i   -> c = 0,   s = (±1, 0),    r = (+Inf,0)
//   f finite, g = finite ± Inf i    -> c = 0,   s = (0, ∓1),    r = (+Inf,0)
//   f finite, g = ±Inf ± Inf i      -> c = 0,   s = (NaN,NaN),  r = (+Inf,0)
template <std::floating_point T>
inline GivensComplex<T> rotg(std::complex<T> f, std::complex<T> g) noexcept {
    using C = std::complex<T>;
    const T nan = std::numeric_limits<T>::quiet_NaN();
    const T inf = std::numeric_limits<T>::infinity();
    const FpClass cf = classify(f), cg = classify(g);
    if (cf == FpClass::NaN || cg == FpClass::NaN)
        return {nan, C(nan, nan), C(nan, nan)};
    if (cf == FpClass::Inf && cg == FpClass::Inf)
        return {nan, C(nan, nan), C(inf, T(0))};
    if (cf == FpClass::Inf) return {T(1), C(T(0), T(0)), f};
    if (cg == FpClass::Inf) {
        const bool re_inf = classify(g.real()) == FpClass::Inf;
        const bool im_inf = classify(g.imag()) == FpClass::Inf;
        if (re_inf && im_inf) return {T(0), C(nan, nan), C(inf, T(0))};
        if (re_inf)
            return {T(0), C(detail::sign1(g.real()), T(0)), C(inf, T(0))};
        return {T(0), C(T(0), -detail::sign1(g.imag())), C(inf, T(0))};
    }
    if (g == C(T(0), T(0))) return {T(1), C(T(0), T(0)), f};
    auto maxcomp = [](C z) {
        const T a = std::fabs(z.real()), b = std::fabs(z.imag());
        return a > b ? a : b;
    };
    if (f == C(T(0), T(0))) {
        const T d = maxcomp(g);
        const C gs(g.real() / d, g.imag() / d);
        const T rr = std::sqrt(gs.real() * gs.real() + gs.imag() * gs.imag());
        const C s(gs.real() / rr, -gs.imag() / rr); // conj(g)/|g|
        return {T(0), s, C(d * rr, T(0))};
    }
    const T df = maxcomp(f), dg = maxcomp(g);
    const T d = df > dg ? df : dg;
    const C fs(f.real() / d, f.imag() / d);
    const C gs(g.real() / d, g.imag() / d);
    const T hf = std::sqrt(fs.real() * fs.real() + fs.imag() * fs.imag());
    const T h = std::sqrt(hf * hf + gs.real() * gs.real() + gs.imag() * gs.imag());
    const T c = hf / h;
    const C us(fs.real() / hf, fs.imag() / hf); // f / |f|, unit modulus
    // s = (f/|f|) * conj(g) / ||(f,g)||, computed on the scaled values
    const C s((us.real() * gs.real() + us.imag() * gs.imag()) / h,
              (us.imag() * gs.real() - us.real() * gs.imag()) / h);
    const T rmag = h * d;
    const C r(us.real() * rmag, us.imag() * rmag);
    return {c, s, r};
}

// ---------------------------------------------------------------------------
// nonzero scans (NaN and Inf count as nonzero; returns 0 when none)
// ---------------------------------------------------------------------------

template <class T>
inline int first_nonzero(VectorView<const T> x) {
    for (int i = 1; i <= x.n; ++i)
        if (!(x[i] == T{})) return i;
    return 0;
}

template <class T>
inline int last_nonzero(VectorView<const T> x) {
    for (int i = x.n; i >= 1; --i)
        if (!(x[i] == T{})) return i;
    return 0;
}

template <class T>
inline int first_nonzero_row(MatrixView<const T> a) {
    for (int i = 1; i <= a.m; ++i)
        for (int j = 1; j <= a.n; ++j)
            if (!(a(i, j) == T{})) return i;
    return 0;
}

template <class T>
inline int last_nonzero_row(MatrixView<const T> a) {
    for (int i = a.m; i >= 1; --i)
        for (int j = 1; j <= a.n; ++j)
            if (!(a(i, j) == T{})) return i;
    return 0;
}

// ---------------------------------------------------------------------------
// scal — deliberately no alpha == 0 (or 1) shortcut
// ---------------------------------------------------------------------------

template <class T, class S>
inline void scal(S alpha, VectorView<T> x) {
    if (x.n < 0) throw ArgumentError("SCAL", 1);
    if (x.inc < 1) throw ArgumentError("SCAL", 4);
    for (int i = 1; i <= x.n; ++i) x[i] = T(alpha) * x[i];
}

} // namespace infnan
