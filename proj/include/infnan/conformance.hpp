// Conformance catalog for the exception-semantics kernels, plus the
// fault-injection harness that drives the checking protocol end to end.
//
// Catalog layout
//   IAMAX_R / IAMAX_C  index-selection cases: a finite base pattern crossed
//                      with NaN placements, Inf-insertion rules, and Inf-only
//                      placements.  Expected indices come from the generator's
//                      own construction bookkeeping (first NaN position, else
//                      first Inf position, else the base pattern's known
//                      winner) — never from running the kernel under test.
//   NRM2_R / NRM2_C    Euclidean-norm cases: scaled finite bases with known
//                      closed-form norms (tiny, huge, subnormal, and
//                      mixed-magnitude patterns), then Inf insertions
//                      (expect +Inf) and NaN placements (expect NaN).
//   ROTG_R / ROTG_C    Givens-generation rows: the pinned exceptional table
//                      plus hand-derived finite rows.
//   TRSV / GER / GESV  small worked systems whose corrupted inputs must
//                      propagate into the output instead of being absorbed
//                      by zero-skipping shortcuts.
//
// Placement machinery: location sets clamp to [1, n] and deduplicate; cases
// whose constructed contents collide are emitted once.  The five Inf
// insertion rules are: +Inf at the first non-NaN slot; -Inf at slot 1; +Inf
// at slot n; +Inf at slot 1 with -Inf at slot n; alternating-sign Inf at
// every non-NaN slot.  Insertions overwrite what they land on; NaN
// placements are applied first.
//
// run_injection() solves one clean, diagonally dominant random system while
// a hook installed on the reporting context poisons the k-th operand check
// matching the plan's phase (and optional routine filter).  The hook owns
// its counter; nothing global.  If the counter is never reached the run is
// reported as skipped rather than passed.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstring>
#include <functional>
#include <iomanip>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "infnan/blas1.hpp"
#include "infnan/blas23.hpp"
#include "infnan/classify.hpp"
#include "infnan/ec.hpp"
#include "infnan/machine.hpp"
#include "infnan/solvers.hpp"
#include "infnan/views.hpp"

namespace infnan {

// ---------------------------------------------------------------------------
// catalog types
// ---------------------------------------------------------------------------

enum class Routine {
    IamaxR,
    IamaxC,
    Nrm2R,
    Nrm2C,
    RotgR,
    RotgC,
    Trsv,
    Ger,
    Gesv,
};

inline const char* to_string(Routine r) {
    switch (r) {
    case Routine::IamaxR: return "IAMAX_R";
    case Routine::IamaxC: return "IAMAX_C";
    case Routine::Nrm2R: return "NRM2_R";
    case Routine::Nrm2C: return "NRM2_C";
    case Routine::RotgR: return "ROTG_R";
    case Routine::RotgC: return "ROTG_C";
    case Routine::Trsv: return "TRSV";
    case Routine::Ger: return "GER";
    case Routine::Gesv: return "GESV";
    }
    return "?";
}

inline std::optional<Routine> routine_from_string(std::string_view s) {
    for (Routine r : {Routine::IamaxR, Routine::IamaxC, Routine::Nrm2R,
                      Routine::Nrm2C, Routine::RotgR, Routine::RotgC,
                      Routine::Trsv, Routine::Ger, Routine::Gesv})
        if (s == to_string(r)) return r;
    return std::nullopt;
}

// Expected outcomes.  Finite component values compare within the suite's
// ulp tolerance; an expected exact zero requires an exact zero.
struct ExpectIndex {
    int index;
};
struct ExpectScalar {
    FpClass cls;
    double value; // meaningful when cls == Finite
};
struct ExpectComponent {
    FpClass cls;
    double value;     // meaningful when cls == Finite
    int inf_sign = 0; // for cls == Inf: +1 / -1, or 0 = either sign
};
struct ExpectComponents {
    std::vector<ExpectComponent> out;
};
using Expectation = std::variant<ExpectIndex, ExpectScalar, ExpectComponents>;

inline ExpectComponent comp_finite(double v) {
    return {FpClass::Finite, v, 0};
}
inline ExpectComponent comp_nan() {
    return {FpClass::NaN, 0.0, 0};
}
inline ExpectComponent comp_inf(int sign) {
    return {FpClass::Inf, 0.0, sign};
}

struct TestCase {
    std::string id;
    Routine routine = Routine::IamaxR;
    int precision_bits = 64; // 32 or 64
    int n = 0;               // vector length / matrix order
    // Operands as double-precision masters (exactly representable at the
    // case's precision): a/a_im = vector or column-major matrix, b/b_im =
    // second vector (rhs, scalar g, or rank-1 x), c/c_im = third vector.
    std::vector<double> a, a_im;
    std::vector<double> b, b_im;
    std::vector<double> c, c_im;
    char uplo = 'U', trans = 'N', diag = 'N';
    double alpha = 0, alpha_im = 0;
    std::optional<int> info;      // expected solver INFO, when applicable
    bool needs_subnormals = false; // skipped where subnormals flush to zero
    std::string group;
    Expectation expected = ExpectIndex{0};
};

struct FailureRecord {
    std::string id, expected, got;
};
struct CaseRecord {
    std::string id, routine, group, status, expected, got;
    int n = 0;
};
struct SuiteResult {
    int total = 0, passed = 0, failed = 0, skipped = 0;
    std::vector<FailureRecord> failures;
    std::vector<CaseRecord> records;
};

inline void merge_into(SuiteResult& acc, SuiteResult&& part) {
    acc.total += part.total;
    acc.passed += part.passed;
    acc.failed += part.failed;
    acc.skipped += part.skipped;
    std::move(part.failures.begin(), part.failures.end(),
              std::back_inserter(acc.failures));
    std::move(part.records.begin(), part.records.end(),
              std::back_inserter(acc.records));
}

// ---------------------------------------------------------------------------
// placement machinery
// ---------------------------------------------------------------------------

namespace catalog_detail {

inline std::vector<int> clamp_locations(std::vector<int> raw, int n) {
    for (int& v : raw) v = std::clamp(v, 1, n);
    std::sort(raw.begin(), raw.end());
    raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
    return raw;
}

// Singles, all pairs, all triples from the location set, then "every slot".
inline std::vector<std::vector<int>> placement_sets(const std::vector<int>& locs,
                                                    int n) {
    std::vector<std::vector<int>> out;
    const size_t k = locs.size();
    for (size_t i = 0; i < k; ++i) out.push_back({locs[i]});
    for (size_t i = 0; i < k; ++i)
        for (size_t j = i + 1; j < k; ++j) out.push_back({locs[i], locs[j]});
    for (size_t i = 0; i < k; ++i)
        for (size_t j = i + 1; j < k; ++j)
            for (size_t l = j + 1; l < k; ++l)
                out.push_back({locs[i], locs[j], locs[l]});
    std::vector<int> all(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) all[static_cast<size_t>(i)] = i + 1;
    out.push_back(std::move(all));
    return out;
}

// One catalog corruption: NaNs at `nans`, then signed Infs at `infs`
// (overwriting anything, NaNs included).
struct Insertion {
    std::vector<int> nans;
    std::vector<std::pair<int, int>> infs; // (position, sign)
    std::string label;
};

inline std::string set_label(const std::vector<int>& s) {
    std::string out = "{";
    for (size_t i = 0; i < s.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(s[i]);
    }
    return out + "}";
}

inline std::string short_set_label(const std::vector<int>& s, int n) {
    if (static_cast<int>(s.size()) == n && n > 3) return "{all}";
    return set_label(s);
}

inline std::vector<std::pair<int, int>> rule_positions(
    int rule, const std::vector<int>& nans, int n) {
    const auto has_nan = [&](int p) {
        return std::find(nans.begin(), nans.end(), p) != nans.end();
    };
    std::vector<std::pair<int, int>> out;
    switch (rule) {
    case 0: // +Inf at the first non-NaN slot
        for (int p = 1; p <= n; ++p)
            if (!has_nan(p)) {
                out.push_back({p, +1});
                break;
            }
        break;
    case 1: // -Inf at slot 1
        out.push_back({1, -1});
        break;
    case 2: // +Inf at slot n
        out.push_back({n, +1});
        break;
    case 3: // +Inf at slot 1, -Inf at slot n
        out.push_back({1, +1});
        if (n > 1) out.push_back({n, -1});
        break;
    case 4: // alternating-sign Inf at every non-NaN slot
        for (int p = 1; p <= n; ++p)
            if (!has_nan(p)) out.push_back({p, p % 2 == 0 ? +1 : -1});
        break;
    }
    return out;
}

inline const char* rule_label(int rule) {
    switch (rule) {
    case 0: return "first-clean";
    case 1: return "neg-first";
    case 2: return "last";
    case 3: return "ends";
    case 4: return "alternating";
    }
    return "?";
}

// NaN placements alone, NaN placements crossed with the five Inf rules, and
// Inf-only placements with alternating signs.
inline std::vector<Insertion> build_insertions(const std::vector<int>& locs,
                                               int n) {
    std::vector<Insertion> out;
    const auto sets = placement_sets(locs, n);
    for (const auto& s : sets)
        out.push_back({s, {}, "nan=" + short_set_label(s, n)});
    for (const auto& s : sets)
        for (int rule = 0; rule < 5; ++rule)
            out.push_back({s, rule_positions(rule, s, n),
                           "nan=" + short_set_label(s, n) + "/inf=" +
                               rule_label(rule)});
    for (const auto& s : sets) {
        std::vector<std::pair<int, int>> infs;
        for (int p : s) infs.push_back({p, p % 2 == 0 ? +1 : -1});
        out.push_back({{}, infs, "inf=" + short_set_label(s, n)});
    }
    return out;
}

// Content-signature dedupe across one generator invocation.
class Dedupe {
public:
    bool seen(const TestCase& tc) {
        std::string key;
        key.reserve(32 + 8 * (tc.a.size() + tc.a_im.size() + tc.b.size()));
        key += std::to_string(static_cast<int>(tc.routine));
        key += '/';
        key += std::to_string(tc.precision_bits);
        key += '/';
        key += std::to_string(tc.n);
        key += '/';
        key += tc.uplo;
        key += tc.trans;
        key += tc.diag;
        append(key, tc.alpha);
        append(key, tc.alpha_im);
        for (const auto* v : {&tc.a, &tc.a_im, &tc.b, &tc.b_im, &tc.c, &tc.c_im})
            for (double x : *v) append(key, x);
        return !keys_.insert(std::move(key)).second;
    }

private:
    static void append(std::string& key, double x) {
        char raw[sizeof(double)];
        std::memcpy(raw, &x, sizeof raw);
        key.append(raw, sizeof raw);
    }
    std::set<std::string> keys_;
};

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Applies an insertion to a real master vector and reports the expected
// index under the three-tier rule (finite_answer when nothing was inserted).
inline int apply_insertion_real(std::vector<double>& v, const Insertion& ins,
                                int finite_answer) {
    for (int p : ins.nans) v[static_cast<size_t>(p - 1)] = kNaN;
    for (auto [p, s] : ins.infs) v[static_cast<size_t>(p - 1)] = s * kInf;
    std::vector<int> nan_left;
    for (int p : ins.nans) {
        bool overwritten = false;
        for (auto [q, s] : ins.infs) overwritten = overwritten || q == p;
        if (!overwritten) nan_left.push_back(p);
    }
    if (!nan_left.empty()) return *std::min_element(nan_left.begin(), nan_left.end());
    if (!ins.infs.empty()) {
        int first = ins.infs.front().first;
        for (auto [p, s] : ins.infs) first = std::min(first, p);
        return first;
    }
    return finite_answer;
}

// Same for a complex master (components stored separately); NaN lands as
// (NaN, 0), Inf as (sign*Inf, 0).
inline int apply_insertion_complex(std::vector<double>& re,
                                   std::vector<double>& im,
                                   const Insertion& ins, int finite_answer) {
    for (int p : ins.nans) {
        re[static_cast<size_t>(p - 1)] = kNaN;
        im[static_cast<size_t>(p - 1)] = 0;
    }
    for (auto [p, s] : ins.infs) {
        re[static_cast<size_t>(p - 1)] = s * kInf;
        im[static_cast<size_t>(p - 1)] = 0;
    }
    std::vector<double> dummy = re;
    return apply_insertion_real(dummy, ins, finite_answer);
}

template <std::floating_point T>
struct CatalogConsts {
    double ov = static_cast<double>(machine_params<T>().ov);
    double un = static_cast<double>(machine_params<T>().un);
    double bmin = static_cast<double>(machine_params<T>().blue_min);
    double bmax = static_cast<double>(machine_params<T>().blue_max);
};

} // namespace catalog_detail

// ---------------------------------------------------------------------------
// index-selection catalog
// ---------------------------------------------------------------------------

namespace catalog_detail {

template <std::floating_point T>
void gen_iamax_real_typed(int n, std::vector<TestCase>& out) {
    if (n < 1) return;
    const int bits = std::is_same_v<T, float> ? 32 : 64;
    const std::string stem = std::string("iamax_r/f") + std::to_string(bits) +
                             "/n=" + std::to_string(n) + "/";
    Dedupe dedupe;
    std::vector<double> base(static_cast<size_t>(n));
    for (int k = 1; k <= n; ++k)
        base[static_cast<size_t>(k - 1)] = (k % 2 == 0 ? k : -k);

    auto emit = [&](std::string label, std::vector<double> v, int expected,
                    std::string group) {
        TestCase tc;
        tc.id = stem + std::move(label);
        tc.routine = Routine::IamaxR;
        tc.precision_bits = bits;
        tc.n = n;
        tc.a = std::move(v);
        tc.group = std::move(group);
        tc.expected = ExpectIndex{expected};
        if (!dedupe.seen(tc)) out.push_back(std::move(tc));
    };

    emit("base", base, n, "base");
    const auto locs = clamp_locations({1, 2, n / 2, n}, n);
    for (const auto& ins : build_insertions(locs, n)) {
        std::vector<double> v = base;
        const int expected = apply_insertion_real(v, ins, n);
        const std::string group = ins.nans.empty()          ? "inf"
                                  : ins.infs.empty()        ? "nan"
                                                            : "nan+inf";
        emit(ins.label, std::move(v), expected, group);
    }
}

// The four huge-magnitude proxy patterns: positions of one parity carry
// components near overflow (so the |re|+|im| proxy only orders them after
// rescaling), the other parity carries plain (-k, k) entries.
template <std::floating_point T>
void gen_iamax_complex_typed(int n, std::vector<TestCase>& out) {
    if (n < 2) return; // patterns need both parities present
    const int bits = std::is_same_v<T, float> ? 32 : 64;
    const CatalogConsts<T> cc;
    const std::string stem = std::string("iamax_c/f") + std::to_string(bits) +
                             "/n=" + std::to_string(n) + "/";
    Dedupe dedupe;

    auto emit = [&](std::string label, std::vector<double> re,
                    std::vector<double> im, int expected, std::string group) {
        TestCase tc;
        tc.id = stem + std::move(label);
        tc.routine = Routine::IamaxC;
        tc.precision_bits = bits;
        tc.n = n;
        tc.a = std::move(re);
        tc.a_im = std::move(im);
        tc.group = std::move(group);
        tc.expected = ExpectIndex{expected};
        if (!dedupe.seen(tc)) out.push_back(std::move(tc));
    };

    // Lifted real base.
    std::vector<double> lre(static_cast<size_t>(n)), lim(static_cast<size_t>(n), 0.0);
    for (int k = 1; k <= n; ++k)
        lre[static_cast<size_t>(k - 1)] = (k % 2 == 0 ? k : -k);

    // Huge patterns A-D: (parity carrying the huge entries, fraction oriented
    // ascending or descending) -> known winner.
    struct Pattern {
        const char* name;
        int huge_parity; // k % 2 == huge_parity gets the near-overflow entry
        bool reversed;   // fraction decreases with k
        int winner;
    };
    const int last_odd = (n % 2 == 1) ? n : n - 1;
    const int last_even = (n % 2 == 0) ? n : n - 1;
    const std::array<Pattern, 4> patterns{{
        {"hugeA", 1, false, last_odd},
        {"hugeB", 0, false, last_even},
        {"hugeC", 1, true, 1},
        {"hugeD", 0, true, 2},
    }};

    auto build_pattern = [&](const Pattern& p, std::vector<double>& re,
                             std::vector<double>& im) {
        re.assign(static_cast<size_t>(n), 0.0);
        im.assign(static_cast<size_t>(n), 0.0);
        for (int k = 1; k <= n; ++k) {
            const size_t idx = static_cast<size_t>(k - 1);
            if (k % 2 == p.huge_parity) {
                const int t = p.reversed ? n - k : k;
                const double frac =
                    static_cast<double>(t + 2) / static_cast<double>(t + 3);
                re[idx] = cc.ov * frac;
                im[idx] = cc.ov * frac;
            } else {
                re[idx] = -k;
                im[idx] = k;
            }
        }
    };

    emit("lifted/base", lre, lim, n, "base");
    std::array<std::vector<double>, 4> pre, pim;
    for (size_t i = 0; i < patterns.size(); ++i) {
        build_pattern(patterns[i], pre[i], pim[i]);
        emit(std::string(patterns[i].name) + "/base", pre[i], pim[i],
             patterns[i].winner, "proxy");
    }

    const auto locs = clamp_locations({1, 2, n / 2, n}, n);
    const auto insertions = build_insertions(locs, n);
    for (const auto& ins : insertions) {
        std::vector<double> re = lre, im = lim;
        const int expected = apply_insertion_complex(re, im, ins, n);
        const std::string group = ins.nans.empty()          ? "inf"
                                  : ins.infs.empty()        ? "nan"
                                                            : "nan+inf";
        emit("lifted/" + ins.label, std::move(re), std::move(im), expected,
             group);
    }
    for (size_t i = 0; i < patterns.size(); ++i) {
        for (const auto& ins : insertions) {
            std::vector<double> re = pre[i], im = pim[i];
            const int expected =
                apply_insertion_complex(re, im, ins, patterns[i].winner);
            emit(std::string(patterns[i].name) + "/" + ins.label,
                 std::move(re), std::move(im), expected, "proxy+exc");
        }
    }
}

} // namespace catalog_detail

inline std::vector<TestCase> gen_iamax_real_cases(int n,
                                                  int precision_bits = 64) {
    std::vector<TestCase> out;
    if (precision_bits == 32)
        catalog_detail::gen_iamax_real_typed<float>(n, out);
    else
        catalog_detail::gen_iamax_real_typed<double>(n, out);
    return out;
}

inline std::vector<TestCase> gen_iamax_complex_cases(int n,
                                                     int precision_bits = 64) {
    std::vector<TestCase> out;
    if (precision_bits == 32)
        catalog_detail::gen_iamax_complex_typed<float>(n, out);
    else
        catalog_detail::gen_iamax_complex_typed<double>(n, out);
    return out;
}

// ---------------------------------------------------------------------------
// Euclidean-norm catalog
// ---------------------------------------------------------------------------

namespace catalog_detail {

struct Nrm2Base {
    const char* name;
    std::vector<double> values; // master contents
    long double norm;           // exact norm of the finite base
    bool needs_subnormals = false;
    bool amended = false; // rescaled variant of a tiny-value pattern
};

template <std::floating_point T>
std::vector<Nrm2Base> nrm2_bases(int n) {
    const CatalogConsts<T> cc;
    std::vector<Nrm2Base> bases;
    auto alt = [&](double magnitude) {
        std::vector<double> v(static_cast<size_t>(n));
        for (int k = 1; k <= n; ++k)
            v[static_cast<size_t>(k - 1)] =
                (k % 2 == 0 ? magnitude : -magnitude);
        return v;
    };
    auto exact_norm = [&](const std::vector<double>& v) {
        long double acc = 0;
        for (double x : v) acc += static_cast<long double>(x) * x;
        return std::sqrt(acc);
    };
    const long double sqn = std::sqrt(static_cast<long double>(n));

    bases.push_back({"tiny", alt(cc.bmin / 2),
                     static_cast<long double>(cc.bmin / 2) * sqn, false, false});
    bases.push_back({"min-normal", alt(cc.un),
                     static_cast<long double>(cc.un) * sqn, false, false});
    {
        const double sub = cc.un / 1024; // exactly representable subnormal
        bases.push_back({"subnormal", alt(sub),
                         static_cast<long double>(sub) * sqn, true, false});
    }
    {
        const double mag = 2 * cc.bmin / n;
        bases.push_back({"tiny-over-n", alt(mag),
                         static_cast<long double>(mag) * sqn, false, true});
    }
    bases.push_back({"huge", alt(2 * cc.bmax),
                     static_cast<long double>(2 * cc.bmax) * sqn, false, false});
    {
        std::vector<double> v(static_cast<size_t>(n));
        for (int k = 1; k <= n; ++k)
            v[static_cast<size_t>(k - 1)] =
                (k % 2 == 0) ? cc.bmin : -7 * cc.bmin;
        bases.push_back({"mixed-tiny", v, exact_norm(v), false, false});
    }
    {
        std::vector<double> v(static_cast<size_t>(n));
        for (int k = 1; k <= n; ++k)
            v[static_cast<size_t>(k - 1)] =
                (k % 2 == 0) ? cc.bmax : -7 * cc.bmax;
        bases.push_back({"mixed-huge", v, exact_norm(v), false, false});
    }
    if (n > 1) {
        // Per-entry magnitude 2*OV/sqrt(n): every entry may itself be finite,
        // but the squared sum overflows, so the expected class is Inf.
        const double mag =
            static_cast<double>(2 * static_cast<long double>(cc.ov) / sqn);
        bases.push_back({"overflow-sum", alt(mag),
                         std::numeric_limits<long double>::infinity(), false,
                         false});
    }
    {
        std::vector<double> v(static_cast<size_t>(n));
        long double acc = 0;
        for (int k = 1; k <= n; ++k) {
            v[static_cast<size_t>(k - 1)] = (k % 2 == 0 ? k : -k);
            acc += static_cast<long double>(k) * k;
        }
        bases.push_back({"plain", v, std::sqrt(acc), false, false});
    }
    return bases;
}

template <std::floating_point T>
void gen_nrm2_typed(int n, bool complex_kind, std::vector<TestCase>& out) {
    if (n < 1) return;
    const int bits = std::is_same_v<T, float> ? 32 : 64;
    const std::string stem = std::string(complex_kind ? "nrm2_c/f" : "nrm2_r/f") +
                             std::to_string(bits) + "/n=" + std::to_string(n) +
                             "/";
    Dedupe dedupe;

    auto emit = [&](std::string label, std::vector<double> v,
                    Expectation expected, std::string group,
                    bool needs_sub, bool amended) {
        TestCase tc;
        tc.id = stem + std::move(label) + (amended ? "/amended" : "");
        tc.routine = complex_kind ? Routine::Nrm2C : Routine::Nrm2R;
        tc.precision_bits = bits;
        tc.n = n;
        if (complex_kind) {
            tc.a = std::move(v);
            tc.a_im.assign(static_cast<size_t>(n), 0.0);
        } else {
            tc.a = std::move(v);
        }
        tc.needs_subnormals = needs_sub;
        tc.group = std::move(group);
        tc.expected = std::move(expected);
        if (!dedupe.seen(tc)) out.push_back(std::move(tc));
    };

    const auto bases = nrm2_bases<T>(n);
    auto base_expectation = [&](const Nrm2Base& b) -> Expectation {
        if (std::isinf(static_cast<double>(b.norm)))
            return ExpectScalar{FpClass::Inf, 0.0};
        return ExpectScalar{FpClass::Finite, static_cast<double>(b.norm)};
    };

    // Finite bases.
    for (const auto& b : bases)
        emit(std::string(b.name), b.values, base_expectation(b), "finite",
             b.needs_subnormals, b.amended);

    const auto locs = clamp_locations({1, 2, n / 16, n / 2, n}, n);
    const auto sets = placement_sets(locs, n);

    // Inf insertions over every base -> +Inf.
    for (const auto& b : bases) {
        for (const auto& s : sets) {
            std::vector<double> v = b.values;
            for (int p : s)
                v[static_cast<size_t>(p - 1)] = (p % 2 == 0 ? kInf : -kInf);
            emit(std::string(b.name) + "/inf=" + short_set_label(s, n),
                 std::move(v), ExpectScalar{FpClass::Inf, 0.0}, "inf", false,
                 false);
        }
    }

    // NaN placements: full placement sets over every finite base, single-NaN
    // placements over every Inf-bearing case, and one all-NaN case -> NaN.
    for (const auto& b : bases) {
        for (const auto& s : sets) {
            std::vector<double> v = b.values;
            for (int p : s) v[static_cast<size_t>(p - 1)] = kNaN;
            emit(std::string(b.name) + "/nan=" + short_set_label(s, n),
                 std::move(v), ExpectScalar{FpClass::NaN, 0.0}, "nan", false,
                 false);
        }
        for (const auto& s : sets) {
            for (int q : locs) {
                std::vector<double> v = b.values;
                for (int p : s)
                    v[static_cast<size_t>(p - 1)] = (p % 2 == 0 ? kInf : -kInf);
                v[static_cast<size_t>(q - 1)] = kNaN;
                emit(std::string(b.name) + "/inf=" + short_set_label(s, n) +
                         "/nan={" + std::to_string(q) + "}",
                     std::move(v), ExpectScalar{FpClass::NaN, 0.0}, "nan+inf",
                     false, false);
            }
        }
    }
    emit("all-nan", std::vector<double>(static_cast<size_t>(n), kNaN),
         ExpectScalar{FpClass::NaN, 0.0}, "nan", false, false);
}

} // namespace catalog_detail

inline std::vector<TestCase> gen_nrm2_cases(int n, int precision_bits = 64) {
    std::vector<TestCase> out;
    if (precision_bits == 32) {
        catalog_detail::gen_nrm2_typed<float>(n, false, out);
        catalog_detail::gen_nrm2_typed<float>(n, true, out);
    } else {
        catalog_detail::gen_nrm2_typed<double>(n, false, out);
        catalog_detail::gen_nrm2_typed<double>(n, true, out);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Givens-generation catalog (fixed rows)
// ---------------------------------------------------------------------------

namespace catalog_detail {

inline void gen_rotg_real_rows(int precision_bits, std::vector<TestCase>& out) {
    const std::string stem =
        std::string("rotg_r/f") + std::to_string(precision_bits) + "/";
    struct Row {
        const char* name;
        double f, g;
        std::vector<ExpectComponent> exp; // c, s, r, z
        const char* group;
    };
    const auto N = comp_nan();
    const std::vector<Row> rows = {
        {"nan-f", kNaN, 2, {N, N, N, N}, "exceptional"},
        {"nan-g", 2, kNaN, {N, N, N, N}, "exceptional"},
        {"nan-both", kNaN, kNaN, {N, N, N, N}, "exceptional"},
        {"inf-inf-pp", kInf, kInf, {N, N, comp_inf(0), N}, "exceptional"},
        {"inf-inf-pm", kInf, -kInf, {N, N, comp_inf(0), N}, "exceptional"},
        {"inf-inf-mp", -kInf, kInf, {N, N, comp_inf(0), N}, "exceptional"},
        {"inf-inf-mm", -kInf, -kInf, {N, N, comp_inf(0), N}, "exceptional"},
        {"inf-finite-p", kInf, 2,
         {comp_finite(1), comp_finite(0), comp_inf(+1), comp_finite(0)},
         "exceptional"},
        {"inf-finite-m", -kInf, 2,
         {comp_finite(1), comp_finite(0), comp_inf(-1), comp_finite(0)},
         "exceptional"},
        {"finite-inf-p", 2, kInf,
         {comp_finite(0), comp_finite(1), comp_inf(+1), comp_finite(1)},
         "exceptional"},
        {"finite-inf-m", 2, -kInf,
         {comp_finite(0), comp_finite(1), comp_inf(-1), comp_finite(1)},
         "exceptional"},
        {"f3-g4", 3, 4,
         {comp_finite(0.6), comp_finite(0.8), comp_finite(5),
          comp_finite(1.0 / 0.6)},
         "finite"},
        {"f4-g3", 4, 3,
         {comp_finite(0.8), comp_finite(0.6), comp_finite(5), comp_finite(0.6)},
         "finite"},
        {"fm3-g4", -3, 4,
         {comp_finite(0.6), comp_finite(-0.8), comp_finite(-5),
          comp_finite(1.0 / 0.6)},
         "finite"},
        {"zero-zero", 0, 0,
         {comp_finite(1), comp_finite(0), comp_finite(0), comp_finite(0)},
         "finite"},
        {"g-zero", 5, 0,
         {comp_finite(1), comp_finite(0), comp_finite(5), comp_finite(0)},
         "finite"},
        {"f-zero", 0, 5,
         {comp_finite(0), comp_finite(1), comp_finite(5), comp_finite(1)},
         "finite"},
    };
    for (const auto& r : rows) {
        TestCase tc;
        tc.id = stem + r.name;
        tc.routine = Routine::RotgR;
        tc.precision_bits = precision_bits;
        tc.n = 1;
        tc.a = {r.f};
        tc.b = {r.g};
        tc.group = r.group;
        tc.expected = ExpectComponents{r.exp};
        out.push_back(std::move(tc));
    }
}

inline void gen_rotg_complex_rows(int precision_bits,
                                  std::vector<TestCase>& out) {
    const std::string stem =
        std::string("rotg_c/f") + std::to_string(precision_bits) + "/";
    const double rt2 = std::sqrt(2.0);
    struct Row {
        const char* name;
        double fr, fi, gr, gi;
        std::vector<ExpectComponent> exp; // c, s.re, s.im, r.re, r.im
        const char* group;
    };
    const auto N = comp_nan();
    const std::vector<Row> rows = {
        {"nan-f-re", kNaN, 0, 1, 2, {N, N, N, N, N}, "exceptional"},
        {"nan-f-im", 0, kNaN, 1, 2, {N, N, N, N, N}, "exceptional"},
        {"nan-g-re", 1, 2, kNaN, 0, {N, N, N, N, N}, "exceptional"},
        {"nan-g-im", 1, 2, 0, kNaN, {N, N, N, N, N}, "exceptional"},
        {"nan-all", kNaN, kNaN, kNaN, kNaN, {N, N, N, N, N}, "exceptional"},
        {"inf-both", kInf, 0, 0, kInf,
         {N, N, N, comp_inf(+1), comp_finite(0)}, "exceptional"},
        {"inf-both-2", -kInf, 1, 2, -kInf,
         {N, N, N, comp_inf(+1), comp_finite(0)}, "exceptional"},
        {"inf-f-re", kInf, 1, 2, 3,
         {comp_finite(1), comp_finite(0), comp_finite(0), comp_inf(+1),
          comp_finite(1)},
         "exceptional"},
        {"inf-f-im", 1, -kInf, 2, 3,
         {comp_finite(1), comp_finite(0), comp_finite(0), comp_finite(1),
          comp_inf(-1)},
         "exceptional"},
        {"inf-g-re-p", 1, 1, kInf, 5,
         {comp_finite(0), comp_finite(1), comp_finite(0), comp_inf(+1),
          comp_finite(0)},
         "exceptional"},
        {"inf-g-re-m", 1, 1, -kInf, 5,
         {comp_finite(0), comp_finite(-1), comp_finite(0), comp_inf(+1),
          comp_finite(0)},
         "exceptional"},
        {"inf-g-im-p", 1, 1, 5, kInf,
         {comp_finite(0), comp_finite(0), comp_finite(-1), comp_inf(+1),
          comp_finite(0)},
         "exceptional"},
        {"inf-g-im-m", 1, 1, 5, -kInf,
         {comp_finite(0), comp_finite(0), comp_finite(1), comp_inf(+1),
          comp_finite(0)},
         "exceptional"},
        {"inf-g-both", 1, 1, kInf, -kInf,
         {comp_finite(0), N, N, comp_inf(+1), comp_finite(0)}, "exceptional"},
        {"g-zero", 3, 4, 0, 0,
         {comp_finite(1), comp_finite(0), comp_finite(0), comp_finite(3),
          comp_finite(4)},
         "finite"},
        {"f-zero", 0, 0, 3, 4,
         {comp_finite(0), comp_finite(0.6), comp_finite(-0.8), comp_finite(5),
          comp_finite(0)},
         "finite"},
        {"unit-pair", 1, 0, 0, 1,
         {comp_finite(1 / rt2), comp_finite(0), comp_finite(-1 / rt2),
          comp_finite(rt2), comp_finite(0)},
         "finite"},
    };
    for (const auto& r : rows) {
        TestCase tc;
        tc.id = stem + r.name;
        tc.routine = Routine::RotgC;
        tc.precision_bits = precision_bits;
        tc.n = 1;
        tc.a = {r.fr};
        tc.a_im = {r.fi};
        tc.b = {r.gr};
        tc.b_im = {r.gi};
        tc.group = r.group;
        tc.expected = ExpectComponents{r.exp};
        out.push_back(std::move(tc));
    }
}

} // namespace catalog_detail

inline std::vector<TestCase> gen_rotg_cases(int precision_bits = 64) {
    std::vector<TestCase> out;
    catalog_detail::gen_rotg_real_rows(precision_bits, out);
    catalog_detail::gen_rotg_complex_rows(precision_bits, out);
    return out;
}

// ---------------------------------------------------------------------------
// worked systems: triangular solve, rank-1 update, full solve
// ---------------------------------------------------------------------------

// Each case's corrupted input must reach the output; the historical
// zero-skipping answers (all-finite) differ from every expected vector here,
// so an exact-class component match rules them out.
inline std::vector<TestCase> gen_solver_cases(int precision_bits = 64) {
    using catalog_detail::kNaN;
    std::vector<TestCase> out;
    const std::string suff = "/f" + std::to_string(precision_bits);
    const auto N = comp_nan();

    {
        // Upper solve where the corrupted column feeds every earlier entry:
        // historical answer [1, 0].
        TestCase tc;
        tc.id = "trsv/upper-2x2" + suff;
        tc.routine = Routine::Trsv;
        tc.precision_bits = precision_bits;
        tc.n = 2;
        tc.a = {1, 0, kNaN, kNaN}; // column-major [[1, NaN], [0, NaN]]
        tc.b = {1, 0};
        tc.uplo = 'U';
        tc.trans = 'N';
        tc.diag = 'N';
        tc.group = "worked";
        tc.expected = ExpectComponents{{N, N}};
        out.push_back(std::move(tc));
    }
    {
        // Corrupted entry multiplied by a zero intermediate: historical
        // answer [1, 0, 1].
        TestCase tc;
        tc.id = "trsv/upper-3x3" + suff;
        tc.routine = Routine::Trsv;
        tc.precision_bits = precision_bits;
        tc.n = 3;
        // column-major [[1, NaN, 1], [0, 1, 1], [0, 0, 1]]
        tc.a = {1, 0, 0, kNaN, 1, 0, 1, 1, 1};
        tc.b = {2, 1, 1};
        tc.uplo = 'U';
        tc.trans = 'N';
        tc.diag = 'N';
        tc.group = "worked";
        tc.expected = ExpectComponents{{N, comp_finite(0), comp_finite(1)}};
        out.push_back(std::move(tc));
    }
    {
        // Transposed lower solve touching the same corrupted data.
        TestCase tc;
        tc.id = "trsv/lower-t-2x2" + suff;
        tc.routine = Routine::Trsv;
        tc.precision_bits = precision_bits;
        tc.n = 2;
        tc.a = {1, kNaN, 0, kNaN}; // column-major [[1, 0], [NaN, NaN]]
        tc.b = {1, 0};
        tc.uplo = 'L';
        tc.trans = 'T';
        tc.diag = 'N';
        tc.group = "worked";
        tc.expected = ExpectComponents{{N, N}};
        out.push_back(std::move(tc));
    }
    {
        // Rank-1 update with a zero scaling column entry: 2 - NaN*0 must be
        // NaN, not an untouched 2 (the elimination shortcut this guards).
        TestCase tc;
        tc.id = "ger/schur-1x1" + suff;
        tc.routine = Routine::Ger;
        tc.precision_bits = precision_bits;
        tc.n = 1;
        tc.a = {2};
        tc.b = {kNaN}; // x
        tc.c = {0};    // y
        tc.alpha = -1;
        tc.group = "worked";
        tc.expected = ExpectComponents{{N}};
        out.push_back(std::move(tc));
    }
    {
        // 2x2 rank-1 update: the zero column may not shield the NaN row.
        TestCase tc;
        tc.id = "ger/2x2" + suff;
        tc.routine = Routine::Ger;
        tc.precision_bits = precision_bits;
        tc.n = 2;
        tc.a = {1, 1, 1, 1};
        tc.b = {1, kNaN}; // x
        tc.c = {0, 1};    // y
        tc.alpha = 1;
        tc.group = "worked";
        tc.expected =
            ExpectComponents{{comp_finite(1), N, comp_finite(2), N}};
        out.push_back(std::move(tc));
    }
    {
        // Full solve whose matrix carries a NaN: the corrupted pivot must
        // reach x (historical answer [0, 0.5] with a clean INFO).
        TestCase tc;
        tc.id = "gesv/nan-pivot-2x2" + suff;
        tc.routine = Routine::Gesv;
        tc.precision_bits = precision_bits;
        tc.n = 2;
        tc.a = {1, kNaN, 0, 2}; // column-major [[1, 0], [NaN, 2]]
        tc.b = {0, 1};
        tc.info = 0;
        tc.group = "worked";
        tc.expected = ExpectComponents{{N, N}};
        out.push_back(std::move(tc));
    }
    return out;
}

// ---------------------------------------------------------------------------
// suite runner
// ---------------------------------------------------------------------------

namespace catalog_detail {

inline bool platform_keeps_subnormals() {
    static const bool ok = [] {
        volatile double half_un = std::numeric_limits<double>::min() / 2;
        volatile float half_unf = std::numeric_limits<float>::min() / 2;
        return half_un != 0.0 && half_unf != 0.0f;
    }();
    return ok;
}

template <std::floating_point T>
bool finite_close(T got, double expected, int tol_ulps) {
    if (classify(got) != FpClass::Finite) return false;
    const T e = static_cast<T>(expected);
    if (e == T(0)) return got == T(0);
    const T ae = std::fabs(e);
    const T ulp = std::nextafter(ae, std::numeric_limits<T>::infinity()) - ae;
    return std::fabs(got - e) <= static_cast<T>(tol_ulps) * ulp;
}

template <std::floating_point T>
bool component_matches(T got, const ExpectComponent& ec, int tol_ulps) {
    switch (ec.cls) {
    case FpClass::NaN: return classify(got) == FpClass::NaN;
    case FpClass::Inf:
        if (classify(got) != FpClass::Inf) return false;
        return ec.inf_sign == 0 || (ec.inf_sign < 0) == std::signbit(got);
    case FpClass::Finite: return finite_close(got, ec.value, tol_ulps);
    }
    return false;
}

inline std::string render_value(double v) {
    std::ostringstream os;
    os.precision(9);
    os << v;
    return os.str();
}

inline std::string render_component(const ExpectComponent& ec) {
    switch (ec.cls) {
    case FpClass::NaN: return "nan";
    case FpClass::Inf:
        return ec.inf_sign == 0 ? "±inf" : (ec.inf_sign < 0 ? "-inf" : "+inf");
    case FpClass::Finite: return render_value(ec.value);
    }
    return "?";
}

inline std::string render_expectation(const Expectation& e, int tol_ulps) {
    if (const auto* idx = std::get_if<ExpectIndex>(&e))
        return "index " + std::to_string(idx->index);
    if (const auto* sc = std::get_if<ExpectScalar>(&e)) {
        if (sc->cls == FpClass::NaN) return "nan";
        if (sc->cls == FpClass::Inf) return "+inf";
        return render_value(sc->value) + " ±" + std::to_string(tol_ulps) +
               "ulp";
    }
    const auto& comps = std::get<ExpectComponents>(e).out;
    std::string s = "[";
    for (size_t i = 0; i < comps.size(); ++i) {
        if (i) s += ", ";
        s += render_component(comps[i]);
    }
    return s + "]";
}

template <std::floating_point T>
std::string render_values(const std::vector<T>& vals) {
    std::string s = "[";
    for (size_t i = 0; i < vals.size(); ++i) {
        if (i) s += ", ";
        s += render_value(static_cast<double>(vals[i]));
    }
    return s + "]";
}

template <std::floating_point T>
struct CaseOutcome {
    bool pass = false;
    std::string got;
};

template <std::floating_point T>
std::vector<T> narrow(const std::vector<double>& v) {
    std::vector<T> out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = static_cast<T>(v[i]);
    return out;
}

template <std::floating_point T>
std::vector<std::complex<T>> narrow_c(const std::vector<double>& re,
                                      const std::vector<double>& im) {
    std::vector<std::complex<T>> out(re.size());
    for (size_t i = 0; i < re.size(); ++i)
        out[i] = {static_cast<T>(re[i]),
                  static_cast<T>(i < im.size() ? im[i] : 0.0)};
    return out;
}

template <std::floating_point T>
CaseOutcome<T> check_components(const TestCase& tc, const std::vector<T>& got,
                                int tol_ulps) {
    const auto& comps = std::get<ExpectComponents>(tc.expected).out;
    bool pass = comps.size() == got.size();
    for (size_t i = 0; pass && i < comps.size(); ++i)
        pass = component_matches(got[i], comps[i], tol_ulps);
    return {pass, render_values(got)};
}

template <std::floating_point T>
CaseOutcome<T> run_case_typed(const TestCase& tc, int tol_ulps) {
    switch (tc.routine) {
    case Routine::IamaxR: {
        const auto x = narrow<T>(tc.a);
        const int got = iamax(VectorView<const T>{x.data(), tc.n, 1});
        return {got == std::get<ExpectIndex>(tc.expected).index,
                "index " + std::to_string(got)};
    }
    case Routine::IamaxC: {
        const auto x = narrow_c<T>(tc.a, tc.a_im);
        const int got =
            iamax(VectorView<const std::complex<T>>{x.data(), tc.n, 1});
        return {got == std::get<ExpectIndex>(tc.expected).index,
                "index " + std::to_string(got)};
    }
    case Routine::Nrm2R:
    case Routine::Nrm2C: {
        T got;
        if (tc.routine == Routine::Nrm2R) {
            const auto x = narrow<T>(tc.a);
            got = nrm2(VectorView<const T>{x.data(), tc.n, 1});
        } else {
            const auto x = narrow_c<T>(tc.a, tc.a_im);
            got = nrm2(VectorView<const std::complex<T>>{x.data(), tc.n, 1});
        }
        const auto& sc = std::get<ExpectScalar>(tc.expected);
        bool pass = false;
        switch (sc.cls) {
        case FpClass::NaN: pass = classify(got) == FpClass::NaN; break;
        case FpClass::Inf:
            pass = classify(got) == FpClass::Inf && !std::signbit(got);
            break;
        case FpClass::Finite: pass = finite_close(got, sc.value, tol_ulps); break;
        }
        return {pass, render_value(static_cast<double>(got))};
    }
    case Routine::RotgR: {
        const auto g = rotg(static_cast<T>(tc.a[0]), static_cast<T>(tc.b[0]));
        return check_components<T>(tc, {g.c, g.s, g.r, g.z}, tol_ulps);
    }
    case Routine::RotgC: {
        const std::complex<T> f(static_cast<T>(tc.a[0]),
                                static_cast<T>(tc.a_im[0]));
        const std::complex<T> gg(static_cast<T>(tc.b[0]),
                                 static_cast<T>(tc.b_im[0]));
        const auto g = rotg(f, gg);
        return check_components<T>(
            tc, {g.c, g.s.real(), g.s.imag(), g.r.real(), g.r.imag()},
            tol_ulps);
    }
    case Routine::Trsv: {
        auto a = narrow<T>(tc.a);
        auto x = narrow<T>(tc.b);
        trsv(tc.uplo, tc.trans, tc.diag,
             MatrixView<const T>{a.data(), tc.n, tc.n, tc.n},
             VectorView<T>{x.data(), tc.n, 1});
        return check_components<T>(tc, x, tol_ulps);
    }
    case Routine::Ger: {
        auto a = narrow<T>(tc.a);
        auto x = narrow<T>(tc.b);
        auto y = narrow<T>(tc.c);
        ger(static_cast<T>(tc.alpha), VectorView<const T>{x.data(), tc.n, 1},
            VectorView<const T>{y.data(), tc.n, 1},
            MatrixView<T>{a.data(), tc.n, tc.n, tc.n});
        return check_components<T>(tc, a, tol_ulps);
    }
    case Routine::Gesv: {
        auto a = narrow<T>(tc.a);
        auto b = narrow<T>(tc.b);
        std::vector<int> ipiv(static_cast<size_t>(tc.n));
        const int info =
            gesv(tc.n, 1, a.data(), tc.n, ipiv.data(), b.data(), tc.n);
        auto outcome = check_components<T>(tc, b, tol_ulps);
        if (tc.info && info != *tc.info) {
            outcome.pass = false;
            outcome.got += " (INFO=" + std::to_string(info) + ")";
        }
        return outcome;
    }
    }
    return {false, "unhandled routine"};
}

} // namespace catalog_detail

inline SuiteResult run_suite(const std::vector<TestCase>& cases,
                             int tolerance_ulps) {
    SuiteResult res;
    const bool subnormals_ok = catalog_detail::platform_keeps_subnormals();
    for (const auto& tc : cases) {
        ++res.total;
        CaseRecord rec;
        rec.id = tc.id;
        rec.routine = to_string(tc.routine);
        rec.group = tc.group;
        rec.n = tc.n;
        rec.expected =
            catalog_detail::render_expectation(tc.expected, tolerance_ulps);
        if (tc.needs_subnormals && !subnormals_ok) {
            ++res.skipped;
            rec.status = "skipped";
            rec.got = "subnormals unavailable";
            res.records.push_back(std::move(rec));
            continue;
        }
        bool pass;
        std::string got;
        if (tc.precision_bits == 32) {
            auto outcome = catalog_detail::run_case_typed<float>(tc, tolerance_ulps);
            pass = outcome.pass;
            got = std::move(outcome.got);
        } else {
            auto outcome = catalog_detail::run_case_typed<double>(tc, tolerance_ulps);
            pass = outcome.pass;
            got = std::move(outcome.got);
        }
        rec.status = pass ? "passed" : "failed";
        rec.got = std::move(got);
        if (pass) {
            ++res.passed;
        } else {
            ++res.failed;
            res.failures.push_back({rec.id, rec.expected, rec.got});
        }
        res.records.push_back(std::move(rec));
    }
    return res;
}

// Pass/fail grid: one row per routine and size, columns total/passed/
// failed/skipped.
inline std::string render_suite_grid(const SuiteResult& res) {
    struct Key {
        std::string routine;
        int n;
        bool operator<(const Key& o) const {
            return routine != o.routine ? routine < o.routine : n < o.n;
        }
    };
    struct Cell {
        int total = 0, passed = 0, failed = 0, skipped = 0;
    };
    std::map<Key, Cell> cells;
    for (const auto& r : res.records) {
        auto& c = cells[{r.routine, r.n}];
        ++c.total;
        if (r.status == "passed") ++c.passed;
        else if (r.status == "failed") ++c.failed;
        else ++c.skipped;
    }
    std::ostringstream os;
    auto line = [&](std::string_view routine, std::string_view n,
                    std::string_view total, std::string_view passed,
                    std::string_view failed, std::string_view skipped,
                    std::string_view verdict) {
        os << std::left << std::setw(10) << routine << std::right
           << std::setw(6) << n << std::setw(8) << total << std::setw(8)
           << passed << std::setw(8) << failed << std::setw(9) << skipped
           << "  " << verdict << '\n';
    };
    line("routine", "n", "total", "passed", "failed", "skipped", "");
    for (const auto& [key, c] : cells)
        line(key.routine, std::to_string(key.n), std::to_string(c.total),
             std::to_string(c.passed), std::to_string(c.failed),
             std::to_string(c.skipped), c.failed ? "FAIL" : "ok");
    line("overall", "", std::to_string(res.total), std::to_string(res.passed),
         std::to_string(res.failed), std::to_string(res.skipped),
         res.failed ? "FAIL" : "ok");
    return os.str();
}

// ---------------------------------------------------------------------------
// fault injection
// ---------------------------------------------------------------------------

enum class InjectPhase { Input, Output };
enum class InjectValue { Inf, NaN };

struct InjectPosition {
    bool random = false;
    int i = 1, j = 1;        // clamped to the operand's extent
    std::uint64_t seed = 0;  // used when random
};

struct InjectionPlan {
    std::string target_routine;  // empty = any routine
    int injection_counter = 1;   // 1-based among phase/routine-matching checks
    InjectPhase phase = InjectPhase::Input;
    InjectValue value = InjectValue::NaN;
    InjectPosition position{};
};

struct InjectionResult {
    bool skipped = false; // the counter was never reached
    int info = 0;
    std::array<int, 10> info_array{};
    std::vector<std::string> handler_transcript;
    // Where the poison actually landed.
    std::string fired_routine;
    int fired_argnum = 0;
    ArgPhase fired_phase = ArgPhase::InputOnly;
    int fired_i = 0, fired_j = 0;
};

inline InjectionResult run_injection(const InjectionPlan& plan,
                                     int system_size, FlagReport flags) {
    InjectionResult res;
    const int n = std::max(1, system_size);

    // Clean, well-conditioned system: uniform entries with a dominant
    // diagonal, fixed seed for reproducibility.
    std::mt19937_64 rng(0x5EEDF00Dull);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<double> a(static_cast<size_t>(n) * n), b(static_cast<size_t>(n));
    for (auto& v : a) v = uni(rng);
    for (int i = 1; i <= n; ++i) a[static_cast<size_t>((i - 1) * (n + 1))] += n + 1;
    for (auto& v : b) v = uni(rng);
    std::vector<int> ipiv(static_cast<size_t>(n));

    Context ctx;
    ctx.set_handler([&res](std::string_view routine, std::span<const int> ia) {
        res.handler_transcript.push_back(
            Context::render_report_line(routine, ia));
    });

    bool fired = false;
    int count = 0;
    ctx.set_check_arg_hook([&](const CheckArgEvent& ev) {
        const bool phase_ok =
            plan.phase == InjectPhase::Input
                ? (ev.phase == ArgPhase::InputOnly ||
                   ev.phase == ArgPhase::InOutAtInput)
                : (ev.phase == ArgPhase::OutputOnly ||
                   ev.phase == ArgPhase::InOutAtOutput);
        const bool routine_ok =
            plan.target_routine.empty() || ev.routine == plan.target_routine;
        if (!phase_ok || !routine_ok || fired) return;
        if (++count != plan.injection_counter) return;
        int i, j;
        if (plan.position.random) {
            std::mt19937_64 prng(plan.position.seed);
            i = 1 + static_cast<int>(prng() % static_cast<std::uint64_t>(ev.m));
            j = 1 + static_cast<int>(prng() % static_cast<std::uint64_t>(ev.n));
        } else {
            i = std::clamp(plan.position.i, 1, ev.m);
            j = std::clamp(plan.position.j, 1, ev.n);
        }
        const double v = plan.value == InjectValue::Inf
                             ? std::numeric_limits<double>::infinity()
                             : std::numeric_limits<double>::quiet_NaN();
        ev.poke(i, j, v);
        fired = true;
        res.fired_routine = std::string(ev.routine);
        res.fired_argnum = ev.argnum;
        res.fired_phase = ev.phase;
        res.fired_i = i;
        res.fired_j = j;
    });

    res.info = gesv_ec(n, 1, a.data(), n, ipiv.data(), b.data(), n, flags,
                       std::span<int>(res.info_array), &ctx);
    res.skipped = !fired;
    return res;
}

} // namespace infnan
