// Level-2/3 matrix kernels with all data-dependent zero-skipping removed.
//
// The only operand shortcuts kept are the semantic gates on *scalar
// parameters*, which change what the operation means rather than reacting to
// data values:
//   gemm: alpha == 0 (A and B are not read), beta == 0 (C is not read),
//   trsm: alpha == 0 (B <- 0 without reading A),
//   ger/syr/syr2/spr: alpha == 0 (immediate return).
// trsv has no alpha and therefore no gate; nothing anywhere skips a multiply
// because a *data* value happens to be zero, so 0*NaN and 0*Inf produce NaN
// exactly as IEEE arithmetic specifies.
//
// Loop nests mirror the conventional column-major reference structure (gemm
// keeps the j/l/i ordering).  Complex products go through the textbook
// 4-multiply kernel; complex divisions go through the scaled-safe divide.
//
// Argument errors throw ArgumentError with the 1-based position of the
// offending argument in the conventional calling sequence:
//   GEMM (TRANSA,TRANSB,M,N,K,ALPHA,A,LDA,B,LDB,BETA,C,LDC)
//   TRSV (UPLO,TRANS,DIAG,N,A,LDA,X,INCX)
//   TRSM (SIDE,UPLO,TRANSA,DIAG,M,N,ALPHA,A,LDA,B,LDB)
//   GER  (M,N,ALPHA,X,INCX,Y,INCY,A,LDA)
//   SYR  (UPLO,N,ALPHA,X,INCX,A,LDA)
//   SYR2 (UPLO,N,ALPHA,X,INCX,Y,INCY,A,LDA)
//   SPR  (UPLO,N,ALPHA,X,INCX,AP)
//   LASWP(N,A,LDA,K1,K2,IPIV,INCX)
#pragma once

#include <complex>
#include <span>

#include "infnan/complex_ops.hpp"
#include "infnan/views.hpp"

namespace infnan {

namespace detail {

template <class E>
inline E emul(E a, E b) noexcept { return a * b; }
template <std::floating_point T>
inline std::complex<T> emul(std::complex<T> a, std::complex<T> b) noexcept {
    return cmul_textbook(a, b);
}

template <class E>
inline E ediv(E a, E b) noexcept { return a / b; }
template <std::floating_point T>
inline std::complex<T> ediv(std::complex<T> a, std::complex<T> b) noexcept {
    return safe_cdiv(a, b);
}

template <class E>
inline E opval(E a, bool /*conj*/) noexcept { return a; }
template <std::floating_point T>
inline std::complex<T> opval(std::complex<T> a, bool conj) noexcept {
    return conj ? std::conj(a) : a;
}

inline bool is_trans_opt(char t) noexcept {
    return same_option(t, 'N') || same_option(t, 'T') || same_option(t, 'C');
}

} // namespace detail

// ---------------------------------------------------------------------------
// gemm: C <- alpha*op(A)*op(B) + beta*C
// ---------------------------------------------------------------------------

template <class E>
void gemm(char transa, char transb, E alpha, MatrixView<const E> a,
          MatrixView<const E> b, E beta, MatrixView<E> c) {
    const bool nota = same_option(transa, 'N');
    const bool notb = same_option(transb, 'N');
    const bool conja = same_option(transa, 'C');
    const bool conjb = same_option(transb, 'C');
    if (!detail::is_trans_opt(transa)) throw ArgumentError("GEMM", 1);
    if (!detail::is_trans_opt(transb)) throw ArgumentError("GEMM", 2);
    const int m = c.m, n = c.n;
    const int k = nota ? a.n : a.m;
    if (m < 0) throw ArgumentError("GEMM", 3);
    if (n < 0) throw ArgumentError("GEMM", 4);
    if (k < 0) throw ArgumentError("GEMM", 5);
    const int nrowa = nota ? m : k;
    const int nrowb = notb ? k : n;
    if ((nota ? a.m : a.n) != m) throw ArgumentError("GEMM", 7);
    if (a.ld < (nrowa > 1 ? nrowa : 1)) throw ArgumentError("GEMM", 8);
    if ((notb ? b.m : b.n) != k || (notb ? b.n : b.m) != n)
        throw ArgumentError("GEMM", 9);
    if (b.ld < (nrowb > 1 ? nrowb : 1)) throw ArgumentError("GEMM", 10);
    if (c.ld < (m > 1 ? m : 1)) throw ArgumentError("GEMM", 13);

    const E zero{}, one = E(1);
    if (m == 0 || n == 0 || ((alpha == zero || k == 0) && beta == one)) return;

    if (alpha == zero) { // semantic gate: A and B are not read
        for (int j = 1; j <= n; ++j)
            for (int i = 1; i <= m; ++i)
                c(i, j) = (beta == zero) ? zero : detail::emul(beta, c(i, j));
        return;
    }

    if (notb) {
        if (nota) {
            // C <- alpha*A*B + beta*C, reference j/l/i nest
            for (int j = 1; j <= n; ++j) {
                if (beta == zero)
                    for (int i = 1; i <= m; ++i) c(i, j) = zero;
                else if (beta != one)
                    for (int i = 1; i <= m; ++i) c(i, j) = detail::emul(beta, c(i, j));
                for (int l = 1; l <= k; ++l) {
                    const E temp = detail::emul(alpha, b(l, j));
                    for (int i = 1; i <= m; ++i)
                        c(i, j) = c(i, j) + detail::emul(temp, a(i, l));
                }
            }
        } else {
            // C <- alpha*op(A)'*B + beta*C (dot-product form)
            for (int j = 1; j <= n; ++j)
                for (int i = 1; i <= m; ++i) {
                    E temp{};
                    for (int l = 1; l <= k; ++l)
                        temp = temp + detail::emul(detail::opval(a(l, i), conja), b(l, j));
                    c(i, j) = (beta == zero)
                                  ? detail::emul(alpha, temp)
                                  : detail::emul(alpha, temp) + detail::emul(beta, c(i, j));
                }
        }
    } else {
        if (nota) {
            // C <- alpha*A*op(B)' + beta*C
            for (int j = 1; j <= n; ++j) {
                if (beta == zero)
                    for (int i = 1; i <= m; ++i) c(i, j) = zero;
                else if (beta != one)
                    for (int i = 1; i <= m; ++i) c(i, j) = detail::emul(beta, c(i, j));
                for (int l = 1; l <= k; ++l) {
                    const E temp = detail::emul(alpha, detail::opval(b(j, l), conjb));
                    for (int i = 1; i <= m; ++i)
                        c(i, j) = c(i, j) + detail::emul(temp, a(i, l));
                }
            }
        } else {
            for (int j = 1; j <= n; ++j)
                for (int i = 1; i <= m; ++i) {
                    E temp{};
                    for (int l = 1; l <= k; ++l)
                        temp = temp + detail::emul(detail::opval(a(l, i), conja),
                                                   detail::opval(b(j, l), conjb));
                    c(i, j) = (beta == zero)
                                  ? detail::emul(alpha, temp)
                                  : detail::emul(alpha, temp) + detail::emul(beta, c(i, j));
                }
        }
    }
}

// ---------------------------------------------------------------------------
// trsv: solve op(A)*x = b in place; NO zero checks anywhere
// ---------------------------------------------------------------------------

template <class E>
void trsv(char uplo, char trans, char diag, MatrixView<const E> a, VectorView<E> x) {
    if (!same_option(uplo, 'U') && !same_option(uplo, 'L'))
        throw ArgumentError("TRSV", 1);
    if (!detail::is_trans_opt(trans)) throw ArgumentError("TRSV", 2);
    if (!same_option(diag, 'U') && !same_option(diag, 'N'))
        throw ArgumentError("TRSV", 3);
    const int n = x.n;
    if (n < 0 || a.m != n || a.n != n) throw ArgumentError("TRSV", 4);
    if (a.ld < (n > 1 ? n : 1)) throw ArgumentError("TRSV", 6);
    if (x.inc != 1) throw ArgumentError("TRSV", 8);
    if (n == 0) return;
    const bool upper = same_option(uplo, 'U');
    const bool notrans = same_option(trans, 'N');
    const bool conj = same_option(trans, 'C');
    const bool nounit = same_option(diag, 'N');

    if (notrans) {
        if (upper) {
            for (int j = n; j >= 1; --j) {
                if (nounit) x[j] = detail::ediv(x[j], a(j, j));
                const E temp = x[j];
                for (int i = j - 1; i >= 1; --i)
                    x[i] = x[i] - detail::emul(temp, a(i, j));
            }
        } else {
            for (int j = 1; j <= n; ++j) {
                if (nounit) x[j] = detail::ediv(x[j], a(j, j));
                const E temp = x[j];
                for (int i = j + 1; i <= n; ++i)
                    x[i] = x[i] - detail::emul(temp, a(i, j));
            }
        }
    } else {
        if (upper) {
            for (int j = 1; j <= n; ++j) {
                E temp = x[j];
                for (int i = 1; i <= j - 1; ++i)
                    temp = temp - detail::emul(detail::opval(a(i, j), conj), x[i]);
                if (nounit) temp = detail::ediv(temp, detail::opval(a(j, j), conj));
                x[j] = temp;
            }
        } else {
            for (int j = n; j >= 1; --j) {
                E temp = x[j];
                for (int i = n; i >= j + 1; --i)
                    temp = temp - detail::emul(detail::opval(a(i, j), conj), x[i]);
                if (nounit) temp = detail::ediv(temp, detail::opval(a(j, j), conj));
                x[j] = temp;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// trsm: B <- alpha*inv(op(A))*B (Left) or alpha*B*inv(op(A)) (Right)
// ---------------------------------------------------------------------------

template <class E>
void trsm(char side, char uplo, char transa, char diag, E alpha,
          MatrixView<const E> a, MatrixView<E> b) {
    const bool lside = same_option(side, 'L');
    if (!lside && !same_option(side, 'R')) throw ArgumentError("TRSM", 1);
    if (!same_option(uplo, 'U') && !same_option(uplo, 'L'))
        throw ArgumentError("TRSM", 2);
    if (!detail::is_trans_opt(transa)) throw ArgumentError("TRSM", 3);
    if (!same_option(diag, 'U') && !same_option(diag, 'N'))
        throw ArgumentError("TRSM", 4);
    const int m = b.m, n = b.n;
    if (m < 0) throw ArgumentError("TRSM", 5);
    if (n < 0) throw ArgumentError("TRSM", 6);
    const int nrowa = lside ? m : n;
    if (a.m != nrowa || a.n != nrowa) throw ArgumentError("TRSM", 8);
    if (a.ld < (nrowa > 1 ? nrowa : 1)) throw ArgumentError("TRSM", 9);
    if (b.ld < (m > 1 ? m : 1)) throw ArgumentError("TRSM", 11);
    if (m == 0 || n == 0) return;
    const E zero{}, one = E(1);
    const bool upper = same_option(uplo, 'U');
    const bool notrans = same_option(transa, 'N');
    const bool conj = same_option(transa, 'C');
    const bool nounit = same_option(diag, 'N');

    if (alpha == zero) { // semantic gate: B <- 0 without reading A
        for (int j = 1; j <= n; ++j)
            for (int i = 1; i <= m; ++i) b(i, j) = zero;
        return;
    }

    if (lside) {
        if (notrans) {
            // B <- alpha*inv(A)*B
            for (int j = 1; j <= n; ++j) {
                if (alpha != one)
                    for (int i = 1; i <= m; ++i) b(i, j) = detail::emul(alpha, b(i, j));
                if (upper) {
                    for (int k = m; k >= 1; --k) {
                        if (nounit) b(k, j) = detail::ediv(b(k, j), a(k, k));
                        for (int i = 1; i <= k - 1; ++i)
                            b(i, j) = b(i, j) - detail::emul(b(k, j), a(i, k));
                    }
                } else {
                    for (int k = 1; k <= m; ++k) {
                        if (nounit) b(k, j) = detail::ediv(b(k, j), a(k, k));
                        for (int i = k + 1; i <= m; ++i)
                            b(i, j) = b(i, j) - detail::emul(b(k, j), a(i, k));
                    }
                }
            }
        } else {
            // B <- alpha*inv(op(A)')*B (dot-product form)
            for (int j = 1; j <= n; ++j) {
                if (upper) {
                    for (int i = 1; i <= m; ++i) {
                        E temp = detail::emul(alpha, b(i, j));
                        for (int k = 1; k <= i - 1; ++k)
                            temp = temp - detail::emul(detail::opval(a(k, i), conj), b(k, j));
                        if (nounit) temp = detail::ediv(temp, detail::opval(a(i, i), conj));
                        b(i, j) = temp;
                    }
                } else {
                    for (int i = m; i >= 1; --i) {
                        E temp = detail::emul(alpha, b(i, j));
                        for (int k = i + 1; k <= m; ++k)
                            temp = temp - detail::emul(detail::opval(a(k, i), conj), b(k, j));
                        if (nounit) temp = detail::ediv(temp, detail::opval(a(i, i), conj));
                        b(i, j) = temp;
                    }
                }
            }
        }
    } else {
        if (notrans) {
            // B <- alpha*B*inv(A)
            if (upper) {
                for (int j = 1; j <= n; ++j) {
                    if (alpha != one)
                        for (int i = 1; i <= m; ++i) b(i, j) = detail::emul(alpha, b(i, j));
                    for (int k = 1; k <= j - 1; ++k)
                        for (int i = 1; i <= m; ++i)
                            b(i, j) = b(i, j) - detail::emul(a(k, j), b(i, k));
                    if (nounit) {
                        const E temp = detail::ediv(one, a(j, j));
                        for (int i = 1; i <= m; ++i) b(i, j) = detail::emul(temp, b(i, j));
                    }
                }
            } else {
                for (int j = n; j >= 1; --j) {
                    if (alpha != one)
                        for (int i = 1; i <= m; ++i) b(i, j) = detail::emul(alpha, b(i, j));
                    for (int k = j + 1; k <= n; ++k)
                        for (int i = 1; i <= m; ++i)
                            b(i, j) = b(i, j) - detail::emul(a(k, j), b(i, k));
                    if (nounit) {
                        const E temp = detail::ediv(one, a(j, j));
                        for (int i = 1; i <= m; ++i) b(i, j) = detail::emul(temp, b(i, j));
                    }
                }
            }
        } else {
            // B <- alpha*B*inv(op(A)')
            if (upper) {
                for (int k = n; k >= 1; --k) {
                    if (nounit) {
                        const E temp = detail::ediv(one, detail::opval(a(k, k), conj));
                        for (int i = 1; i <= m; ++i) b(i, k) = detail::emul(temp, b(i, k));
                    }
                    for (int j = 1; j <= k - 1; ++j) {
                        const E temp = detail::opval(a(j, k), conj);
                        for (int i = 1; i <= m; ++i)
                            b(i, j) = b(i, j) - detail::emul(temp, b(i, k));
                    }
                    if (alpha != one)
                        for (int i = 1; i <= m; ++i) b(i, k) = detail::emul(alpha, b(i, k));
                }
            } else {
                for (int k = 1; k <= n; ++k) {
                    if (nounit) {
                        const E temp = detail::ediv(one, detail::opval(a(k, k), conj));
                        for (int i = 1; i <= m; ++i) b(i, k) = detail::emul(temp, b(i, k));
                    }
                    for (int j = k + 1; j <= n; ++j) {
                        const E temp = detail::opval(a(j, k), conj);
                        for (int i = 1; i <= m; ++i)
                            b(i, j) = b(i, j) - detail::emul(temp, b(i, k));
                    }
                    if (alpha != one)
                        for (int i = 1; i <= m; ++i) b(i, k) = detail::emul(alpha, b(i, k));
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// ger: A <- A + alpha*x*y^T (no y(j)==0 skipping)
// ---------------------------------------------------------------------------

template <class E>
void ger(E alpha, VectorView<const E> x, VectorView<const E> y, MatrixView<E> a) {
    const int m = a.m, n = a.n;
    if (m < 0) throw ArgumentError("GER", 1);
    if (n < 0) throw ArgumentError("GER", 2);
    if (x.n != m) throw ArgumentError("GER", 4);
    if (x.inc != 1) throw ArgumentError("GER", 5);
    if (y.n != n) throw ArgumentError("GER", 6);
    if (y.inc != 1) throw ArgumentError("GER", 7);
    if (a.ld < (m > 1 ? m : 1)) throw ArgumentError("GER", 9);
    if (m == 0 || n == 0 || alpha == E{}) return; // semantic gate on alpha
    for (int j = 1; j <= n; ++j) {
        const E temp = detail::emul(alpha, y[j]);
        for (int i = 1; i <= m; ++i)
            a(i, j) = a(i, j) + detail::emul(x[i], temp);
    }
}

// ---------------------------------------------------------------------------
// syr / syr2 / spr: symmetric updates without x/y zero checks
// ---------------------------------------------------------------------------

template <class E>
void syr(char uplo, E alpha, VectorView<const E> x, MatrixView<E> a) {
    const bool upper = same_option(uplo, 'U');
    if (!upper && !same_option(uplo, 'L')) throw ArgumentError("SYR", 1);
    const int n = a.n;
    if (n < 0 || a.m != n) throw ArgumentError("SYR", 2);
    if (x.n != n) throw ArgumentError("SYR", 4);
    if (x.inc != 1) throw ArgumentError("SYR", 5);
    if (a.ld < (n > 1 ? n : 1)) throw ArgumentError("SYR", 7);
    if (n == 0 || alpha == E{}) return;
    for (int j = 1; j <= n; ++j) {
        const E temp = detail::emul(alpha, x[j]);
        const int i0 = upper ? 1 : j, i1 = upper ? j : n;
        for (int i = i0; i <= i1; ++i)
            a(i, j) = a(i, j) + detail::emul(x[i], temp);
    }
}

template <class E>
void syr2(char uplo, E alpha, VectorView<const E> x, VectorView<const E> y,
          MatrixView<E> a) {
    const bool upper = same_option(uplo, 'U');
    if (!upper && !same_option(uplo, 'L')) throw ArgumentError("SYR2", 1);
    const int n = a.n;
    if (n < 0 || a.m != n) throw ArgumentError("SYR2", 2);
    if (x.n != n) throw ArgumentError("SYR2", 4);
    if (x.inc != 1) throw ArgumentError("SYR2", 5);
    if (y.n != n) throw ArgumentError("SYR2", 6);
    if (y.inc != 1) throw ArgumentError("SYR2", 7);
    if (a.ld < (n > 1 ? n : 1)) throw ArgumentError("SYR2", 9);
    if (n == 0 || alpha == E{}) return;
    for (int j = 1; j <= n; ++j) {
        const E t1 = detail::emul(alpha, y[j]);
        const E t2 = detail::emul(alpha, x[j]);
        const int i0 = upper ? 1 : j, i1 = upper ? j : n;
        for (int i = i0; i <= i1; ++i)
            a(i, j) = a(i, j) + detail::emul(x[i], t1) + detail::emul(y[i], t2);
    }
}

template <class E>
void spr(char uplo, E alpha, VectorView<const E> x, VectorView<E> ap) {
    const bool upper = same_option(uplo, 'U');
    if (!upper && !same_option(uplo, 'L')) throw ArgumentError("SPR", 1);
    const int n = x.n;
    if (n < 0) throw ArgumentError("SPR", 2);
    if (x.inc != 1) throw ArgumentError("SPR", 5);
    if (ap.n < n * (n + 1) / 2 || ap.inc != 1) throw ArgumentError("SPR", 6);
    if (n == 0 || alpha == E{}) return;
    int kk = 1;
    for (int j = 1; j <= n; ++j) {
        const E temp = detail::emul(alpha, x[j]);
        if (upper) {
            int k = kk;
            for (int i = 1; i <= j; ++i, ++k)
                ap[k] = ap[k] + detail::emul(x[i], temp);
            kk += j;
        } else {
            int k = kk;
            for (int i = j; i <= n; ++i, ++k)
                ap[k] = ap[k] + detail::emul(x[i], temp);
            kk += n - j + 1;
        }
    }
}

// ---------------------------------------------------------------------------
// laswp: apply row interchanges ipiv[k1..k2] to all columns of A
// ---------------------------------------------------------------------------

template <class E>
void laswp(MatrixView<E> a, int k1, int k2, std::span<const int> ipiv, int incx) {
    if (incx != 1 && incx != -1) throw ArgumentError("LASWP", 7);
    if (k1 < 1) throw ArgumentError("LASWP", 4);
    if (k2 < k1) return;
    if (static_cast<int>(ipiv.size()) < k2) throw ArgumentError("LASWP", 6);
    const int i0 = (incx == 1) ? k1 : k2;
    const int i1 = (incx == 1) ? k2 : k1;
    for (int i = i0;; i += incx) {
        const int ip = ipiv[static_cast<size_t>(i - 1)];
        if (ip < 1 || ip > a.m) throw ArgumentError("LASWP", 6);
        if (ip != i) {
            for (int j = 1; j <= a.n; ++j) {
                const E tmp = a(i, j);
                a(i, j) = a(ip, j);
                a(ip, j) = tmp;
            }
        }
        if (i == i1) break;
    }
}

} // namespace infnan
