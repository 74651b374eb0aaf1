// Runtime probes of the host's native floating-point environment.
//
// run_probes() exercises the platform's *built-in* complex abs / divide /
// multiply and scalar min/max on a fixed catalog of extreme inputs
// (components near the overflow threshold, near the underflow threshold,
// infinities, NaNs) and classifies the behavior against this library's own
// scaled-safe reference implementations.
//
// "Safe" is judged by exception conservation only: the native operation is
// safe when it produces an exceptional (Inf/NaN) result exactly where the
// reference does — no spurious overflow on representable results, no
// exceptional operand silently absorbed.  Ulp-level accuracy is out of scope.
//
// The catalogs are fixed and enumerated below, so two runs on the same
// platform and build produce byte-identical reports.  The probes never throw:
// every result is inspected through bit-level classification.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "infnan/classify.hpp"
#include "infnan/complex_ops.hpp"
#include "infnan/machine.hpp"

namespace infnan {

enum class MulSemantics { Textbook, CStandard, Other };

inline const char* to_string(MulSemantics s) noexcept {
    switch (s) {
    case MulSemantics::Textbook: return "Textbook";
    case MulSemantics::CStandard: return "CStandard";
    case MulSemantics::Other: return "Other";
    }
    return "Other";
}

struct ProbeReport {
    bool complex_abs_safe = false;
    bool complex_div_safe = false;
    MulSemantics complex_mul_semantics = MulSemantics::Other;
    bool minmax_propagates_nan = false;
    bool subnormals_supported = false;
    std::vector<std::string> notes;
};

namespace detail {

// Round-trip through a volatile slot so the compiler evaluates the native
// operation at run time instead of folding it with compile-time semantics.
template <class T>
inline T launder_value(T v) noexcept {
    volatile T slot = v;
    return slot;
}

template <std::floating_point T>
inline std::complex<T> launder_value(std::complex<T> z) noexcept {
    return {launder_value(z.real()), launder_value(z.imag())};
}

// Same-behavior comparison: identical component classes, identical finite
// values, identical infinity signs; NaN payloads ignored.
template <std::floating_point T>
inline bool same_component(T a, T b) noexcept {
    const FpClass ca = classify(a), cb = classify(b);
    if (ca != cb) return false;
    switch (ca) {
    case FpClass::NaN: return true;
    case FpClass::Inf: return std::signbit(a) == std::signbit(b);
    case FpClass::Finite: return a == b;
    }
    return false;
}

template <std::floating_point T>
inline bool same_result(std::complex<T> a, std::complex<T> b) noexcept {
    return same_component(a.real(), b.real()) &&
           same_component(a.imag(), b.imag());
}

inline std::string catalog_note(const char* op, const char* verdict,
                                std::size_t mismatches, std::size_t total,
                                std::size_t first_bad) {
    std::ostringstream os;
    os << op << ": " << verdict;
    if (mismatches == 0) {
        os << " on all " << total << " catalog inputs";
    } else {
        os << " on " << mismatches << " of " << total
           << " catalog inputs (first at index " << first_bad << ")";
    }
    return os.str();
}

} // namespace detail

inline ProbeReport run_probes() {
    using C = std::complex<double>;
    ProbeReport rep;
    const MachineParams<double> mp = machine_params<double>();
    const double ov = mp.ov, un = mp.un;
    const double inf = std::numeric_limits<double>::infinity();
    const double nan = std::numeric_limits<double>::quiet_NaN();

    // -- complex abs: native std::abs vs the scaled-safe reference ----------
    const C abs_catalog[20] = {
        {ov / 2, ov / 2},   {ov, ov / 2},      {ov * 0.75, ov * 0.75},
        {ov, 0.0},          {0.0, ov},         {un, un},
        {un / 2, un / 2},   {un, 0.0},         {0.0, 0.0},
        {1.0, 1.0},         {3.0, 4.0},        {inf, 0.0},
        {0.0, inf},         {inf, inf},        {-inf, 1.0},
        {1.0, -inf},        {nan, 0.0},        {0.0, nan},
        {nan, inf},         {nan, nan},
    };
    {
        std::size_t bad = 0, first = 0;
        for (std::size_t i = 0; i < 20; ++i) {
            const C z = detail::launder_value(abs_catalog[i]);
            const double native = std::abs(z);
            const double ref = safe_cabs(z);
            if (is_exceptional(native) != is_exceptional(ref)) {
                if (bad == 0) first = i;
                ++bad;
            }
        }
        rep.complex_abs_safe = (bad == 0);
        rep.notes.push_back(detail::catalog_note(
            "complex abs",
            bad == 0 ? "conserved exceptions versus the scaled reference"
                     : "disagreed with the scaled reference",
            bad, 20, first));
    }

    // -- complex divide: native operator/ vs the scaled-safe reference ------
    // Denominators are never exactly zero: the probe targets scaling of very
    // large / very small operands, not zero-division conventions.
    struct DivCase {
        C num, den;
    };
    const DivCase div_catalog[20] = {
        {{ov / 2, ov / 2}, {ov / 4, ov / 4}},
        {{ov / 2, ov / 3}, {ov / 5, ov / 7}},
        {{1.0, 1.0}, {ov / 2, ov / 2}},
        {{ov, ov / 2}, {ov / 2, ov / 4}},
        {{un, un}, {un, 0.0}},
        {{un / 2, un / 2}, {un / 2, 0.0}},
        {{un, 0.0}, {1e10, 0.0}},
        {{1.0, 2.0}, {3.0, 4.0}},
        {{5.0, 0.0}, {1.0, 0.0}},
        {{0.0, 0.0}, {3.0, 4.0}},
        {{1e300, 1e300}, {1e-300, 1e-300}},
        {{1e-300, 1e-300}, {1e300, 1e300}},
        {{inf, 0.0}, {1.0, 1.0}},
        {{1.0, 1.0}, {inf, 0.0}},
        {{nan, 0.0}, {1.0, 0.0}},
        {{1.0, 0.0}, {nan, nan}},
        {{inf, inf}, {inf, inf}},
        {{3.0, 4.0}, {un, un}},
        {{ov / 2, 0.0}, {0.5, 0.0}},
        {{1e-320, 1e-321}, {2.0, 0.0}},
    };
    {
        std::size_t bad = 0, first = 0;
        for (std::size_t i = 0; i < 20; ++i) {
            const C num = detail::launder_value(div_catalog[i].num);
            const C den = detail::launder_value(div_catalog[i].den);
            const C native = num / den;
            const C ref = safe_cdiv(num, den);
            if (is_exceptional(native) != is_exceptional(ref)) {
                if (bad == 0) first = i;
                ++bad;
            }
        }
        rep.complex_div_safe = (bad == 0);
        rep.notes.push_back(detail::catalog_note(
            "complex divide",
            bad == 0 ? "conserved exceptions versus the scaled reference"
                     : "disagreed with the scaled reference",
            bad, 20, first));
    }

    // -- complex multiply: textbook 4-multiply vs recovery-form semantics ---
    // Inputs 0, 2, and 18 discriminate: the recovery form re-derives an
    // infinity where the textbook form leaves NaN in both components.
    struct MulCase {
        C x, y;
    };
    const MulCase mul_catalog[20] = {
        {{inf, 0.0}, {inf, inf}},   {{inf, 0.0}, {1.0, 1.0}},
        {{inf, inf}, {1.0, 0.0}},   {{0.0, 1.0}, {inf, 0.0}},
        {{nan, 0.0}, {1.0, 0.0}},   {{ov, 0.0}, {2.0, 0.0}},
        {{ov / 2, ov / 2}, {2.0, 2.0}}, {{1.0, 2.0}, {3.0, 4.0}},
        {{un, un}, {un, un}},       {{inf, inf}, {inf, inf}},
        {{inf, inf}, {0.0, 0.0}},   {{2.0, 3.0}, {inf, inf}},
        {{2.0, 2.0}, {inf, -inf}},  {{1.0, -1.0}, {inf, inf}},
        {{inf, 1.0}, {inf, 1.0}},   {{inf, 1.0}, {1.0, inf}},
        {{inf, 1.0}, {inf, -1.0}},  {{inf, 2.0}, {0.0, 3.0}},
        {{nan, inf}, {2.0, 0.0}},   {{ov, ov}, {0.5, 0.5}},
    };
    {
        bool all_textbook = true, all_recovery = true;
        std::size_t first_other = 0, others = 0;
        for (std::size_t i = 0; i < 20; ++i) {
            const C x = detail::launder_value(mul_catalog[i].x);
            const C y = detail::launder_value(mul_catalog[i].y);
            const C native = x * y;
            const bool tb = detail::same_result(native, cmul_textbook(x, y));
            const bool rc = detail::same_result(native, cmul_annexg(x, y));
            all_textbook = all_textbook && tb;
            all_recovery = all_recovery && rc;
            if (!tb && !rc) {
                if (others == 0) first_other = i;
                ++others;
            }
        }
        if (all_textbook)
            rep.complex_mul_semantics = MulSemantics::Textbook;
        else if (all_recovery)
            rep.complex_mul_semantics = MulSemantics::CStandard;
        else
            rep.complex_mul_semantics = MulSemantics::Other;
        std::ostringstream os;
        os << "complex multiply: native matched ";
        if (all_textbook)
            os << "the textbook 4-multiply form on all 20 catalog inputs";
        else if (all_recovery)
            os << "the infinity-recovery form on all 20 catalog inputs";
        else
            os << "neither reference form on " << others
               << " of 20 catalog inputs (first at index " << first_other << ")";
        rep.notes.push_back(os.str());
    }

    // -- scalar min/max with a NaN operand ----------------------------------
    {
        const double q = detail::launder_value(3.0);
        const double w = detail::launder_value(nan);
        const bool all_nan =
            classify(std::fmax(q, w)) == FpClass::NaN &&
            classify(std::fmax(w, q)) == FpClass::NaN &&
            classify(std::fmin(q, w)) == FpClass::NaN &&
            classify(std::fmin(w, q)) == FpClass::NaN &&
            classify(std::max(q, w)) == FpClass::NaN &&
            classify(std::max(w, q)) == FpClass::NaN &&
            classify(std::min(q, w)) == FpClass::NaN &&
            classify(std::min(w, q)) == FpClass::NaN;
        rep.minmax_propagates_nan = all_nan;
        rep.notes.push_back(
            all_nan ? std::string("min/max: a NaN operand propagates to the "
                                  "result in all 8 probed call forms")
                    : std::string("min/max: at least one probed call form "
                                  "discards a NaN operand"));
    }

    // -- subnormal support ---------------------------------------------------
    {
        const double half_un = detail::launder_value(un) / 2;
        const bool ok = half_un > 0.0 && half_un < un &&
                        half_un * 2 == un &&
                        detail::launder_value(half_un) + half_un == un;
        rep.subnormals_supported = ok;
        rep.notes.push_back(
            ok ? std::string("subnormals: values below the normal range are "
                             "representable and exact under scaling by 2")
               : std::string("subnormals: arithmetic flushes values below the "
                             "normal range"));
    }

    rep.notes.push_back("probed at double precision");
    return rep;
}

// Flat key=value rendering; list-valued fields repeat their key per entry.
inline std::string to_text(const ProbeReport& r) {
    std::ostringstream os;
    os << "complex_abs_safe=" << (r.complex_abs_safe ? "true" : "false") << '\n'
       << "complex_div_safe=" << (r.complex_div_safe ? "true" : "false") << '\n'
       << "complex_mul_semantics=" << to_string(r.complex_mul_semantics) << '\n'
       << "minmax_propagates_nan="
       << (r.minmax_propagates_nan ? "true" : "false") << '\n'
       << "subnormals_supported="
       << (r.subnormals_supported ? "true" : "false") << '\n';
    for (const std::string& n : r.notes) os << "notes=" << n << '\n';
    return os.str();
}

} // namespace infnan
