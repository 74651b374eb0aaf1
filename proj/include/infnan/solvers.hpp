// LU factorization and solve with exception checking at every level.
//
// Each routine exists in a checked form (suffix _ec) that takes a FlagReport,
// an info_array, and an optional reporting context, plus a legacy wrapper that
// behaves exactly like the checked form called with flags (0,0).  The checked
// forms never abort on bad arguments: they return the conventional negative
// INFO code (and report through the context when so configured).
//
// Conventional argument positions and the INFO codes derived from them
// (n is the routine's N argument):
//
//   gesv (N, NRHS, A, LDA, IPIV, B, LDB)     info_array size 10
//     A input -3 | B input -6 | A output n+1 | B output n+2
//     factorization call n+3 | solve call n+4
//     slots: 7 A, 8 B, 9 factorization call, 10 solve call
//   getrf / getrf2 (M, N, A, LDA, IPIV)      info_array size 9
//     A input -3 | A output n+1 | sub-factorization calls n+2 / n+3
//     slots: 7 A, 8 first call, 9 second/panel calls (folded)
//   getrs (TRANS, N, NRHS, A, LDA, IPIV, B, LDB)   info_array size 8
//     A input -4 | B input -7 | B output 1
//     slots: 7 A, 8 B
//
// The info_array spans must have at least these sizes whenever how >= 1; with
// how == 0 a one-element dummy suffices (nothing is read or written).
//
// A positive INFO from the factorization itself reports the index of a zero
// pivot, exactly as in the uncorrected routines; exception codes only ever
// fill INFO when it would otherwise be 0.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>

#include "infnan/blas1.hpp"
#include "infnan/blas23.hpp"
#include "infnan/ec.hpp"
#include "infnan/machine.hpp"
#include "infnan/views.hpp"

namespace infnan {

struct LuOptions {
    int block_size = 64; // panel width; <= 1 or >= min(m,n) selects unblocked
};

namespace detail {

template <class T>
struct lu_names;
template <>
struct lu_names<float> {
    static constexpr const char* gesv = "SGESV";
    static constexpr const char* getrf = "SGETRF";
    static constexpr const char* getrf2 = "SGETRF2";
    static constexpr const char* getrs = "SGETRS";
};
template <>
struct lu_names<double> {
    static constexpr const char* gesv = "DGESV";
    static constexpr const char* getrf = "DGETRF";
    static constexpr const char* getrf2 = "DGETRF2";
    static constexpr const char* getrs = "DGETRS";
};

} // namespace detail

// Recursive LU of a general m x n matrix with partial pivoting, checked.
template <std::floating_point T>
int getrf2_ec(int m, int n, T* a, int lda, int* ipiv, FlagReport flags,
              std::span<int> info_array, Context* ctx = nullptr) {
    int info = 0;
    InternalState st = checkinit1(flags, ctx);
    st.routine = detail::lu_names<T>::getrf2;
    MatrixView<T> av(a, m, n, lda);
    if (st.what() != -1) {
        if (m < 0)
            info = -1;
        else if (n < 0)
            info = -2;
        else if (lda < std::max(1, m))
            info = -4;
        checkinit2(st, info, 1, 2, info_array);
        if (info != 0) {
            if (st.call_report_exceptions)
                report_exceptions(st.ctx, st.routine, info_array);
            return info;
        }
        if (m == 0 || n == 0) return info;
        check_arg(st, av, info, info_array, 3, ArgPhase::InOutAtInput, 0, 7);
    }
    if (m == 0 || n == 0) return info;

    if (m == 1) {
        ipiv[0] = 1;
        if (av(1, 1) == T(0)) info = 1;
    } else if (n == 1) {
        const T sfmin = machine_params<T>().sfmin;
        const int i = iamax<T>(av.col(1));
        ipiv[0] = i;
        if (av(i, 1) != T(0)) {
            if (i != 1) {
                const T tmp = av(1, 1);
                av(1, 1) = av(i, 1);
                av(i, 1) = tmp;
            }
            if (std::fabs(av(1, 1)) >= sfmin) {
                scal(T(1) / av(1, 1), av.col(1, 2));
            } else {
                for (int k = 2; k <= m; ++k) av(k, 1) = av(k, 1) / av(1, 1);
            }
        } else {
            info = 1;
        }
    } else {
        const int mindim = std::min(m, n);
        const int n1 = mindim / 2;
        const int n2 = n - n1;
        const std::span<const int> piv(ipiv, static_cast<size_t>(mindim));

        std::array<int, 9> tmp1;
        tmp1.fill(-1);
        if (st.how() >= 1 && info_array[6] != -1) tmp1[6] = info_array[6];
        int iinfo = getrf2_ec(m, n1, a, lda, ipiv, st.flags_call,
                              std::span<int>(tmp1), ctx);
        if (info == 0 && iinfo > 0) info = iinfo;
        check_call(st, tmp1, info_array, n + 2, 8);

        laswp(av.sub(1, n1 + 1, m, n2), 1, n1, piv, 1);
        trsm<T>('L', 'L', 'N', 'U', T(1), av.sub(1, 1, n1, n1),
                av.sub(1, n1 + 1, n1, n2));
        gemm<T>('N', 'N', T(-1), av.sub(n1 + 1, 1, m - n1, n1),
                av.sub(1, n1 + 1, n1, n2), T(1),
                av.sub(n1 + 1, n1 + 1, m - n1, n2));

        std::array<int, 9> tmp2;
        tmp2.fill(-1);
        iinfo = getrf2_ec(m - n1, n2, &av(n1 + 1, n1 + 1), lda, ipiv + n1,
                          st.flags_call, std::span<int>(tmp2), ctx);
        check_call(st, tmp2, info_array, n + 3, 9);
        if (info == 0 && iinfo > 0) info = iinfo + n1;

        for (int i = n1 + 1; i <= mindim; ++i) ipiv[i - 1] += n1;
        laswp(av.sub(1, 1, m, n1), n1 + 1, mindim, piv, 1);
    }

    if (st.what() == -1) return info;
    check_arg(st, av, info, info_array, 3, ArgPhase::InOutAtOutput, n + 1, 7);
    info = update_info(info, info_array, st);
    if (st.call_report_exceptions && info != 0)
        report_exceptions(st.ctx, st.routine, info_array);
    return info;
}

// Blocked LU with partial pivoting, checked.  Delegates whole problems that
// fit in one panel to the recursive form; otherwise factorizes panel by panel,
// folding every panel call into the same info_array slot.
template <std::floating_point T>
int getrf_ec(int m, int n, T* a, int lda, int* ipiv, FlagReport flags,
             std::span<int> info_array, Context* ctx = nullptr,
             const LuOptions& opts = {}) {
    int info = 0;
    InternalState st = checkinit1(flags, ctx);
    st.routine = detail::lu_names<T>::getrf;
    MatrixView<T> av(a, m, n, lda);
    if (st.what() != -1) {
        if (m < 0)
            info = -1;
        else if (n < 0)
            info = -2;
        else if (lda < std::max(1, m))
            info = -4;
        checkinit2(st, info, 1, 2, info_array);
        if (info != 0) {
            if (st.call_report_exceptions)
                report_exceptions(st.ctx, st.routine, info_array);
            return info;
        }
        if (m == 0 || n == 0) return info;
        check_arg(st, av, info, info_array, 3, ArgPhase::InOutAtInput, 0, 7);
    }
    if (m == 0 || n == 0) return info;

    const int mindim = std::min(m, n);
    const int nb = opts.block_size;
    if (nb <= 1 || nb >= mindim) {
        std::array<int, 9> tmp1;
        tmp1.fill(-1);
        if (st.how() >= 1 && info_array[6] != 0) tmp1[6] = info_array[6];
        info = getrf2_ec(m, n, a, lda, ipiv, st.flags_call,
                         std::span<int>(tmp1), ctx);
        check_call(st, tmp1, info_array, n + 2, 8);
    } else {
        const std::span<const int> piv(ipiv, static_cast<size_t>(mindim));
        for (int j = 1; j <= mindim; j += nb) {
            const int jb = std::min(mindim - j + 1, nb);
            std::array<int, 9> tmp2;
            tmp2.fill(-1);
            const int iinfo =
                getrf2_ec(m - j + 1, jb, &av(j, j), lda, ipiv + (j - 1),
                          st.flags_call, std::span<int>(tmp2), ctx);
            check_call(st, tmp2, info_array, n + 3, 9);
            if (info == 0 && iinfo > 0) info = iinfo + j - 1;
            for (int i = j; i <= std::min(m, j + jb - 1); ++i)
                ipiv[i - 1] += j - 1;
            laswp(av.sub(1, 1, m, j - 1), j, j + jb - 1, piv, 1);
            if (j + jb <= n) {
                laswp(av.sub(1, j + jb, m, n - j - jb + 1), j, j + jb - 1, piv, 1);
                trsm<T>('L', 'L', 'N', 'U', T(1), av.sub(j, j, jb, jb),
                        av.sub(j, j + jb, jb, n - j - jb + 1));
                if (j + jb <= m)
                    gemm<T>('N', 'N', T(-1),
                            av.sub(j + jb, j, m - j - jb + 1, jb),
                            av.sub(j, j + jb, jb, n - j - jb + 1), T(1),
                            av.sub(j + jb, j + jb, m - j - jb + 1,
                                   n - j - jb + 1));
            }
        }
    }

    if (st.what() == -1) return info;
    check_arg(st, av, info, info_array, 3, ArgPhase::InOutAtOutput, n + 1, 7);
    info = update_info(info, info_array, st);
    if (st.call_report_exceptions && info != 0)
        report_exceptions(st.ctx, st.routine, info_array);
    return info;
}

// Solve op(A) X = B from an LU factorization, checked.  A is logically
// read-only; it is taken mutable so an installed check_arg hook can inject
// into it like any other checked operand.
template <std::floating_point T>
int getrs_ec(char trans, int n, int nrhs, T* a, int lda, const int* ipiv,
             T* b, int ldb, FlagReport flags, std::span<int> info_array,
             Context* ctx = nullptr) {
    int info = 0;
    InternalState st = checkinit1(flags, ctx);
    st.routine = detail::lu_names<T>::getrs;
    const bool notran = same_option(trans, 'N');
    MatrixView<T> av(a, n, n, lda);
    MatrixView<T> bv(b, n, nrhs, ldb);
    if (st.what() != -1) {
        if (!notran && !same_option(trans, 'T') && !same_option(trans, 'C'))
            info = -1;
        else if (n < 0)
            info = -2;
        else if (nrhs < 0)
            info = -3;
        else if (lda < std::max(1, n))
            info = -5;
        else if (ldb < std::max(1, n))
            info = -8;
        checkinit2(st, info, 2, 0, info_array);
        if (info != 0) {
            if (st.call_report_exceptions)
                report_exceptions(st.ctx, st.routine, info_array);
            return info;
        }
        if (n == 0 || nrhs == 0) return info;
        check_arg(st, av, info, info_array, 4, ArgPhase::InputOnly, 0, 7);
        check_arg(st, bv, info, info_array, 7, ArgPhase::InOutAtInput, 0, 8);
    }
    if (n == 0 || nrhs == 0) return info;

    const std::span<const int> piv(ipiv, static_cast<size_t>(n));
    if (notran) {
        laswp(bv, 1, n, piv, 1);
        trsm<T>('L', 'L', 'N', 'U', T(1), av, bv);
        trsm<T>('L', 'U', 'N', 'N', T(1), av, bv);
    } else {
        trsm<T>('L', 'U', trans, 'N', T(1), av, bv);
        trsm<T>('L', 'L', trans, 'U', T(1), av, bv);
        laswp(bv, 1, n, piv, -1);
    }

    if (st.what() == -1) return info;
    check_arg(st, bv, info, info_array, 7, ArgPhase::InOutAtOutput, 1, 8);
    info = update_info(info, info_array, st);
    if (st.call_report_exceptions && info != 0)
        report_exceptions(st.ctx, st.routine, info_array);
    return info;
}

// Factor A and solve A X = B, checked.  INFO is shared with the child calls:
// a nonzero result from the factorization (zero pivot or promoted exception)
// suppresses the solve, exactly like the uncorrected driver suppresses it on
// a positive INFO.
template <std::floating_point T>
int gesv_ec(int n, int nrhs, T* a, int lda, int* ipiv, T* b, int ldb,
            FlagReport flags, std::span<int> info_array, Context* ctx = nullptr,
            const LuOptions& opts = {}) {
    int info = 0;
    InternalState st = checkinit1(flags, ctx);
    st.routine = detail::lu_names<T>::gesv;
    MatrixView<T> av(a, n, n, lda);
    MatrixView<T> bv(b, n, nrhs, ldb);
    if (st.what() != -1) {
        if (n < 0)
            info = -1;
        else if (nrhs < 0)
            info = -2;
        else if (lda < std::max(1, n))
            info = -4;
        else if (ldb < std::max(1, n))
            info = -7;
        checkinit2(st, info, 2, 2, info_array);
        if (info != 0) {
            if (st.call_report_exceptions)
                report_exceptions(st.ctx, st.routine, info_array);
            return info;
        }
        if (n == 0) return info;
        check_arg(st, av, info, info_array, 3, ArgPhase::InOutAtInput, 0, 7);
        check_arg(st, bv, info, info_array, 6, ArgPhase::InOutAtInput, 0, 8);
    }
    if (n == 0) return info;

    std::array<int, 9> tmp_getrf;
    tmp_getrf.fill(-1);
    if (st.what() >= 1 && st.how() >= 1) tmp_getrf[6] = info_array[6];
    info = getrf_ec(n, n, a, lda, ipiv, st.flags_call,
                    std::span<int>(tmp_getrf), ctx, opts);
    check_call(st, tmp_getrf, info_array, n + 3, 9);
    if (info == 0) {
        std::array<int, 8> tmp_getrs;
        tmp_getrs.fill(-1);
        if (st.what() >= 1 && st.how() >= 1) tmp_getrs[7] = info_array[7];
        info = getrs_ec('N', n, nrhs, a, lda, ipiv, b, ldb, st.flags_call,
                        std::span<int>(tmp_getrs), ctx);
        check_call(st, tmp_getrs, info_array, n + 4, 10);
    }

    if (st.what() == -1) return info;
    check_arg(st, av, info, info_array, 3, ArgPhase::InOutAtOutput, n + 1, 7);
    check_arg(st, bv, info, info_array, 6, ArgPhase::InOutAtOutput, n + 2, 8);
    info = update_info(info, info_array, st);
    if (st.call_report_exceptions && info != 0)
        report_exceptions(st.ctx, st.routine, info_array);
    return info;
}

// Legacy entry points: checking off, array untouched, no reports.
template <std::floating_point T>
int getrf2(int m, int n, T* a, int lda, int* ipiv) {
    int dummy[1] = {0};
    return getrf2_ec(m, n, a, lda, ipiv, {0, 0}, std::span<int>(dummy));
}
template <std::floating_point T>
int getrf(int m, int n, T* a, int lda, int* ipiv) {
    int dummy[1] = {0};
    return getrf_ec(m, n, a, lda, ipiv, {0, 0}, std::span<int>(dummy));
}
template <std::floating_point T>
int getrs(char trans, int n, int nrhs, T* a, int lda, const int* ipiv, T* b,
          int ldb) {
    int dummy[1] = {0};
    return getrs_ec(trans, n, nrhs, a, lda, ipiv, b, ldb, {0, 0},
                    std::span<int>(dummy));
}
template <std::floating_point T>
int gesv(int n, int nrhs, T* a, int lda, int* ipiv, T* b, int ldb) {
    int dummy[1] = {0};
    return gesv_ec(n, nrhs, a, lda, ipiv, b, ldb, {0, 0},
                   std::span<int>(dummy));
}

// Whether a workspace of `count` elements is addressable when the count must
// survive a round trip through T and an index of `index_bits` bits.  The
// count is converted to T, rounded *up* to the next representable value if
// the conversion rounded down, rejected if it exceeds the index range, and
// finally required to round-trip exactly through the integer type.
template <std::floating_point T>
bool workspace_fits(std::int64_t count, int index_bits = 32) {
    if (count < 0) return false;
    T work1 = static_cast<T>(count);
    if (static_cast<long double>(work1) < static_cast<long double>(count))
        work1 = std::nextafter(work1, std::numeric_limits<T>::infinity());
    const long double limit =
        (index_bits >= 64)
            ? static_cast<long double>(std::numeric_limits<std::int64_t>::max())
            : static_cast<long double>(std::numeric_limits<std::int32_t>::max());
    if (static_cast<long double>(work1) > limit) return false;
    const auto inttmp = static_cast<std::int64_t>(work1);
    return static_cast<T>(inttmp) == work1;
}

} // namespace infnan
