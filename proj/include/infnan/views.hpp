// Non-owning views over caller storage, 1-based like the calling conventions
// the kernels mirror.
//
//   VectorView  : base pointer, logical length n >= 0, stride inc >= 1.
//   MatrixView  : column-major, element (i,j) at offset (i-1) + (j-1)*ld.
//
// Views never allocate and never check bounds; the kernels validate the
// dimensional relations and report violations with ArgumentError carrying the
// 1-based position of the offending argument in the conventional calling
// sequence of the corresponding routine.
#pragma once

#include <stdexcept>
#include <string>
#include <type_traits>

namespace infnan {

struct ArgumentError : std::invalid_argument {
    ArgumentError(std::string routine_, int position_)
        : std::invalid_argument("argument " + std::to_string(position_) +
                                " of " + routine_ + " had an illegal value"),
          routine(std::move(routine_)), position(position_) {}
    std::string routine;
    int position;
};

template <class T>
struct VectorView {
    T* data = nullptr;
    int n = 0;
    int inc = 1;

    // Allow VectorView<T> -> VectorView<const T>.
    VectorView() = default;
    VectorView(T* data_, int n_, int inc_ = 1) : data(data_), n(n_), inc(inc_) {}
    template <class U>
        requires(std::is_same_v<std::remove_const_t<T>, U> && std::is_const_v<T>)
    VectorView(VectorView<U> v) : data(v.data), n(v.n), inc(v.inc) {}

    T& operator[](int i) const { return data[(i - 1) * static_cast<long>(inc)]; }
};

template <class T>
struct MatrixView {
    T* data = nullptr;
    int m = 0;
    int n = 0;
    int ld = 0;

    MatrixView() = default;
    MatrixView(T* data_, int m_, int n_, int ld_)
        : data(data_), m(m_), n(n_), ld(ld_) {}
    template <class U>
        requires(std::is_same_v<std::remove_const_t<T>, U> && std::is_const_v<T>)
    MatrixView(MatrixView<U> a) : data(a.data), m(a.m), n(a.n), ld(a.ld) {}

    T& operator()(int i, int j) const {
        return data[(i - 1) + (j - 1) * static_cast<long>(ld)];
    }

    // Block A(i0:i0+mm-1, j0:j0+nn-1), sharing storage.
    MatrixView sub(int i0, int j0, int mm, int nn) const {
        return MatrixView(&(*this)(i0, j0), mm, nn, ld);
    }

    VectorView<T> col(int j, int i0 = 1) const {
        return VectorView<T>(&(*this)(i0, j), m - i0 + 1, 1);
    }
};

// Case-insensitive single-letter option matching (the kernels accept the
// conventional 'U'/'L', 'N'/'T'/'C', 'L'/'R' characters in either case).
inline bool same_option(char a, char b) noexcept {
    auto up = [](char c) { return (c >= 'a' && c <= 'z') ? char(c - 'a' + 'A') : c; };
    return up(a) == up(b);
}

} // namespace infnan
