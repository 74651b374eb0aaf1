// Exception-checking protocol: flag derivation, operand scanning, per-call
// aggregation, and reporting.
//
// A checked routine drives this machinery in a fixed pattern:
//
//   state = checkinit1(flag_report, context)   normalize (what, how), derive
//                                              the flags for child calls
//   ... legacy argument checks -> info ...
//   checkinit2(state, info, num_args, num_calls, info_array)
//   check_arg(...)    per operand, at input and/or output
//   check_call(...)   per child _EC call, folding the child's info_array
//   info = update_info(info, info_array, state)
//   if (state.call_report_exceptions && info != 0) report
//
// what (what to check):  -1 none (not even legacy argument checks), 0 legacy
//   only, 1 check own arguments, 2 also aggregate child calls.
// how (how to report):   0 nothing beyond the INFO result, 1 fill info_array,
//   2 additionally report through the context handler at this level, 3 report
//   at every level of the call tree, 4 defer to the context's stored flags.
//
// info_array layout (1-based slots):
//   1 legacy INFO | 2 what used | 3 how used | 4 final INFO | 5 num_args |
//   6 num_calls | 7..6+num_args per-argument reports | then per-call reports.
// Argument report values: -1 not checked, 0 checked clean, 1 exceptional on
// input, 2 exceptional on output, 3 both.  Call report values: -1 nothing
// reported (or not called), 1 a deeper call reported, 2 callee had an input
// exception, 3 output exception, 4 both.
#pragma once

#include <algorithm>
#include <functional>
#include <iostream>
#include <mutex>
#include <span>
#include <sstream>
#include <string>
#include <string_view>

#include "infnan/classify.hpp"
#include "infnan/views.hpp"

namespace infnan {

struct FlagReport {
    int what = 0;
    int how = 0;
    friend bool operator==(FlagReport, FlagReport) = default;
};

// Phase of a check_arg call, matching the INOUT codes of the protocol.
enum class ArgPhase : int {
    InputOnly = 0,
    OutputOnly = 1,
    InOutAtInput = 2,
    InOutAtOutput = 3,
};

// Event handed to an installed check_arg hook.  The hook may poison the
// operand through poke() — this is the fault-injection surface the fuzzing
// harness uses.  Hooks own their invocation counters (nothing global).
struct CheckArgEvent {
    std::string_view routine; // checking routine's report name
    int argnum;               // conventional position of the operand
    ArgPhase phase;
    int m, n;                                         // operand dimensions
    std::function<void(int i, int j, double v)> poke; // 1-based element write
};

// Reporting context: stores the deferred flags, the report handler/sink, and
// an optional check_arg hook.  Distinct contexts never interfere; all access
// is mutex-guarded.  Two presets exist besides the standard configurable one:
// a verbose context whose stored flags always read (2,3), and a terse context
// on which set/get/report are all no-ops.
class Context {
public:
    using Handler = std::function<void(std::string_view routine, std::span<const int> info_array)>;
    using CheckArgHook = std::function<void(const CheckArgEvent&)>;
    enum class Preset { Standard, Verbose, Terse };

    Context() = default;
    explicit Context(Preset preset, std::ostream* sink = nullptr)
        : preset_(preset), sink_(sink) {}

    void set_flags_to_report(FlagReport f) {
        std::lock_guard lock(mu_);
        if (preset_ == Preset::Standard) flags_ = f;
    }

    FlagReport flags_to_report() const {
        std::lock_guard lock(mu_);
        switch (preset_) {
        case Preset::Verbose: return {2, 3};
        case Preset::Terse: return {0, 0};
        case Preset::Standard: break;
        }
        return flags_;
    }

    void set_handler(Handler h) {
        std::lock_guard lock(mu_);
        handler_ = std::move(h);
    }

    void set_sink(std::ostream* sink) {
        std::lock_guard lock(mu_);
        sink_ = sink;
    }

    void set_check_arg_hook(CheckArgHook h) {
        std::lock_guard lock(mu_);
        hook_ = std::move(h);
    }

    void fire_check_arg_hook(const CheckArgEvent& ev) const {
        CheckArgHook hook;
        {
            std::lock_guard lock(mu_);
            hook = hook_;
        }
        if (hook) hook(ev);
    }

    // Render (or forward) one report line; never terminates the process.
    void report(std::string_view routine, std::span<const int> info_array) const {
        Handler handler;
        std::ostream* sink = nullptr;
        {
            std::lock_guard lock(mu_);
            if (preset_ == Preset::Terse) return;
            handler = handler_;
            sink = sink_;
        }
        if (handler) {
            handler(routine, info_array);
            return;
        }
        std::ostream& out = sink ? *sink : std::cerr;
        out << render_report_line(routine, info_array) << '\n';
    }

    // "EXC <routine> info_array=[v1,...,vK]", K = 6 + num_args + num_calls.
    static std::string render_report_line(std::string_view routine,
                                          std::span<const int> ia) {
        std::ostringstream os;
        os << "EXC " << routine.substr(0, 63) << " info_array=[";
        size_t k = ia.size();
        if (k >= 6) {
            const size_t want = 6 + static_cast<size_t>(std::max(0, ia[4])) +
                                static_cast<size_t>(std::max(0, ia[5]));
            k = std::min(k, want);
        }
        for (size_t i = 0; i < k; ++i) {
            if (i) os << ',';
            os << ia[i];
        }
        os << ']';
        return os.str();
    }

private:
    Preset preset_ = Preset::Standard;
    mutable std::mutex mu_;
    FlagReport flags_{0, 0};
    Handler handler_;
    CheckArgHook hook_;
    std::ostream* sink_ = nullptr;
};

// Null-tolerant free functions (a null context means "no context": default
// flags, reports dropped).
inline void set_flags_to_report(Context* ctx, FlagReport f) {
    if (ctx) ctx->set_flags_to_report(f);
}
inline FlagReport get_flags_to_report(const Context* ctx) {
    return ctx ? ctx->flags_to_report() : FlagReport{0, 0};
}
inline void report_exceptions(Context* ctx, std::string_view routine,
                              std::span<const int> info_array) {
    if (ctx) ctx->report(routine, info_array);
}

// Per-invocation checking state of one routine.
struct InternalState {
    FlagReport flags_internal{0, 0}; // normalized (what, how) in effect
    FlagReport flags_call{0, 0};     // flags to pass to child _EC calls
    bool call_report_exceptions = false;
    int info_internal_args = 0;  // first argument-exception code, 0 = none
    int info_internal_calls = 0; // first call-exception code, 0 = none
    // Plumbing, not protocol state: where reports/hook events go and under
    // which name.
    Context* ctx = nullptr;
    const char* routine = "";

    int what() const noexcept { return flags_internal.what; }
    int how() const noexcept { return flags_internal.how; }
};

namespace detail {
// what_next indexed by clamped what+1 (-1..2), how_next by clamped how (0..3).
inline constexpr int what_next[4] = {-1, 0, 0, 2};
inline constexpr int how_next[4] = {0, 1, 1, 3};
inline constexpr int clamp_what(int w) noexcept { return std::max(-1, std::min(w, 2)); }
} // namespace detail

// Normalize the requested flags and derive the child-call flags.  how = 4
// defers to the context's stored flags (whose how is then clamped to 0..3).
inline InternalState checkinit1(FlagReport flag_report, Context* ctx) {
    InternalState st;
    st.ctx = ctx;
    int what = detail::clamp_what(flag_report.what);
    int how = 0;
    st.flags_internal = {what, how};
    st.flags_call = {detail::what_next[what + 1], detail::how_next[0]};
    if (what == -1) return st; // checking fully off; children off too
    how = std::max(0, std::min(flag_report.how, 4));
    st.flags_internal.how = how;
    if (how == 4) {
        const FlagReport tmp = get_flags_to_report(ctx);
        what = detail::clamp_what(tmp.what);
        st.flags_internal.what = what;
        st.flags_call.what = detail::what_next[what + 1];
        if (what == -1) {
            st.flags_internal.how = 0;
            st.flags_call.how = detail::how_next[0];
            return st;
        }
        how = std::max(0, std::min(tmp.how, 3));
        st.flags_internal.how = how;
    }
    st.flags_call.how = detail::how_next[how];
    st.call_report_exceptions = (how >= 2);
    return st;
}

// Initialize the accumulators and (when how >= 1) the info_array header and
// report slots.  Argument slots pre-seeded with 0 or 1 ("already checked by
// the caller") are preserved; call slots always reset to -1.
inline void checkinit2(InternalState& st, int legacy_info, int num_args,
                       int num_calls, std::span<int> info_array) {
    st.info_internal_args = 0;
    st.info_internal_calls = 0;
    if (st.how() < 1) return;
    info_array[0] = legacy_info;
    info_array[1] = st.what();
    info_array[2] = st.how();
    info_array[3] = legacy_info;
    info_array[4] = num_args;
    info_array[5] = num_calls;
    for (int i = 0; i < num_args; ++i) {
        int& slot = info_array[static_cast<size_t>(6 + i)];
        if (slot != 0 && slot != 1) slot = -1;
    }
    for (int i = 0; i < num_calls; ++i)
        info_array[static_cast<size_t>(6 + num_args + i)] = -1;
}

struct ScanHit {
    bool found = false;
    int i = 0, j = 0; // 1-based position of the first hit, column-major order
};

// First Inf or NaN of a column-major matrix, by exponent-field inspection.
template <class E>
inline ScanHit scan_inf_nan(MatrixView<const E> a) noexcept {
    if (a.m <= 0 || a.n <= 0) return {};
    for (int j = 1; j <= a.n; ++j)
        for (int i = 1; i <= a.m; ++i)
            if (is_exceptional(a(i, j))) return {true, i, j};
    return {};
}

namespace detail {

template <std::floating_point T>
inline void poke_element(MatrixView<T> a, int i, int j, double v) {
    a(i, j) = static_cast<T>(v);
}
template <std::floating_point T>
inline void poke_element(MatrixView<std::complex<T>> a, int i, int j, double v) {
    a(i, j) = std::complex<T>(static_cast<T>(v), a(i, j).imag());
}

} // namespace detail

// Check one operand for Infs/NaNs and fold the result into the info_array
// slot `loc` (1-based) and the scalar accumulator.  `errflag` is the INFO
// code reported for an output exception; input exceptions report -argnum.
// The context's hook (if any) runs first and may poison the operand.
template <class E>
inline void check_arg(InternalState& st, MatrixView<E> a, int& legacy_info,
                      std::span<int> info_array, int argnum, ArgPhase inout,
                      int errflag, int loc) {
    if (st.ctx) {
        CheckArgEvent ev;
        ev.routine = st.routine;
        ev.argnum = argnum;
        ev.phase = inout;
        ev.m = a.m;
        ev.n = a.n;
        ev.poke = [a](int i, int j, double v) { detail::poke_element(a, i, j, v); };
        st.ctx->fire_check_arg_hook(ev);
    }
    if (st.what() < 1) return;
    const MatrixView<const E> ca(a);
    if (st.how() >= 1) {
        int& slot = info_array[static_cast<size_t>(loc - 1)];
        if (inout == ArgPhase::InputOnly || inout == ArgPhase::InOutAtInput) {
            if (slot != 0 && slot != 1) slot = scan_inf_nan(ca).found ? 1 : 0;
            if (st.info_internal_args == 0 && slot == 1)
                st.info_internal_args = -argnum;
        } else if (inout == ArgPhase::OutputOnly) {
            slot = scan_inf_nan(ca).found ? 2 : 0;
            if (st.info_internal_args == 0 && slot == 2)
                st.info_internal_args = errflag;
        } else { // InOutAtOutput
            if (scan_inf_nan(ca).found) slot += 2;
            // slot == 3 means the input already reported; input has priority
            if (st.info_internal_args == 0 && slot == 2)
                st.info_internal_args = errflag;
        }
    } else if (st.info_internal_args == 0 && legacy_info == 0) {
        // how == 0: no bookkeeping, stop at the first exception found
        if (scan_inf_nan(ca).found) {
            st.info_internal_args =
                (inout == ArgPhase::InputOnly || inout == ArgPhase::InOutAtInput)
                    ? -argnum
                    : errflag;
        }
    }
}

// Fold a completed child call's info_array into slot `loc`:  >=2 when the
// callee saw an argument exception (max argument report + 1), >=1 when only
// a deeper call reported.  Sets the scalar call accumulator to call_id on the
// first nonzero fold.
inline void check_call(InternalState& st, std::span<const int> callee_info_array,
                       std::span<int> info_array, int call_id, int loc) {
    if (st.what() < 2 || st.how() < 1) return;
    int tmp = info_array[static_cast<size_t>(loc - 1)];
    const int num_args = callee_info_array[4];
    const int num_calls = callee_info_array[5];
    int tmpcalls = 0;
    for (int i = 0; i < num_calls; ++i)
        tmpcalls = std::max(tmpcalls,
                            callee_info_array[static_cast<size_t>(6 + num_args + i)]);
    if (tmpcalls >= 1) tmp = std::max(tmp, 1);
    int tmpinout = 0;
    for (int i = 0; i < num_args; ++i)
        tmpinout = std::max(tmpinout, callee_info_array[static_cast<size_t>(6 + i)]);
    if (tmpinout > 0) tmp = std::max(tmp, tmpinout + 1);
    info_array[static_cast<size_t>(loc - 1)] = tmp;
    if (st.info_internal_calls == 0 && tmp > 0) st.info_internal_calls = call_id;
}

// Combine the legacy INFO with the recorded exceptions.  Legacy INFO wins;
// otherwise the first argument exception (input codes are negative, output
// codes positive), then — only when an info_array exists — the first call
// exception.  Returns the final INFO.
inline int update_info(int legacy_info, std::span<int> info_array,
                       const InternalState& st) {
    int info = legacy_info;
    const bool have_array = st.how() >= 1;
    if (have_array) {
        info_array[0] = legacy_info;
        info_array[3] = legacy_info;
    }
    if (st.info_internal_args != 0 && info == 0) {
        info = st.info_internal_args;
        if (have_array) info_array[3] = info;
    }
    if (st.info_internal_calls > 0 && have_array && info == 0) {
        info = st.info_internal_calls;
        info_array[3] = info;
    }
    return info;
}

} // namespace infnan
