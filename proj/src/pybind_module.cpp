// Python bindings for the exception-consistent kernels.  The interface is
// deliberately small: runtime environment probes, the vector kernels with
// their exceptional-value contracts, the checked linear solver, and the
// workspace guard.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "infnan/blas1.hpp"
#include "infnan/probe.hpp"
#include "infnan/solvers.hpp"

namespace py = pybind11;
using namespace infnan;

namespace {

py::dict probe_dict() {
    const ProbeReport r = run_probes();
    py::dict d;
    d["complex_abs_safe"] = r.complex_abs_safe;
    d["complex_div_safe"] = r.complex_div_safe;
    d["complex_mul_semantics"] = std::string(to_string(r.complex_mul_semantics));
    d["minmax_propagates_nan"] = r.minmax_propagates_nan;
    d["subnormals_supported"] = r.subnormals_supported;
    d["notes"] = r.notes;
    return d;
}

int iamax_real(const std::vector<double>& v) {
    return iamax(VectorView<const double>{v.data(),
                                          static_cast<int>(v.size()), 1});
}

int iamax_complex(const std::vector<std::complex<double>>& v) {
    return iamax(VectorView<const std::complex<double>>{
        v.data(), static_cast<int>(v.size()), 1});
}

double nrm2_real(const std::vector<double>& v) {
    return nrm2(VectorView<const double>{v.data(),
                                         static_cast<int>(v.size()), 1});
}

double nrm2_complex(const std::vector<std::complex<double>>& v) {
    return nrm2(VectorView<const std::complex<double>>{
        v.data(), static_cast<int>(v.size()), 1});
}

py::tuple rotg_real(double f, double g) {
    const auto r = rotg(f, g);
    return py::make_tuple(r.c, r.s, r.r, r.z);
}

py::tuple rotg_complex(std::complex<double> f, std::complex<double> g) {
    const auto r = rotg(f, g);
    return py::make_tuple(r.c, r.s, r.r);
}

// Row-major nested lists in, column-major storage inside.
std::vector<double> to_col_major(const std::vector<std::vector<double>>& rows,
                                 int& n_out) {
    const int n = static_cast<int>(rows.size());
    for (const auto& row : rows)
        if (static_cast<int>(row.size()) != n)
            throw std::invalid_argument("matrix must be square");
    std::vector<double> a(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            a[static_cast<size_t>(j) * n + i] = rows[static_cast<size_t>(i)]
                                                    [static_cast<size_t>(j)];
    n_out = n;
    return a;
}

py::tuple solve_plain(const std::vector<std::vector<double>>& rows,
                      std::vector<double> b) {
    int n = 0;
    auto a = to_col_major(rows, n);
    if (static_cast<int>(b.size()) != n)
        throw std::invalid_argument("right-hand side length must match");
    std::vector<int> ipiv(static_cast<size_t>(std::max(n, 1)));
    const int info =
        gesv(n, 1, a.data(), std::max(n, 1), ipiv.data(), b.data(),
             std::max(n, 1));
    return py::make_tuple(b, info);
}

py::dict solve_checked(const std::vector<std::vector<double>>& rows,
                       std::vector<double> b, int what, int how) {
    int n = 0;
    auto a = to_col_major(rows, n);
    if (static_cast<int>(b.size()) != n)
        throw std::invalid_argument("right-hand side length must match");
    std::vector<int> ipiv(static_cast<size_t>(std::max(n, 1)));
    // Fill with the "not yet checked" sentinel: a slot preset to 0 would tell
    // the driver this caller had already screened that operand, suppressing
    // the input scan.  A fresh binding call has screened nothing.
    std::array<int, 10> ia;
    ia.fill(-1);
    const int info = gesv_ec(n, 1, a.data(), std::max(n, 1), ipiv.data(),
                             b.data(), std::max(n, 1), {what, how},
                             std::span<int>(ia));
    py::dict d;
    d["x"] = b;
    d["info"] = info;
    d["info_array"] = std::vector<int>(ia.begin(), ia.end());
    return d;
}

bool workspace_fits_py(std::int64_t count, int precision_bits, int index_bits) {
    if (precision_bits == 32) return workspace_fits<float>(count, index_bits);
    if (precision_bits == 64) return workspace_fits<double>(count, index_bits);
    throw std::invalid_argument("precision_bits must be 32 or 64");
}

} // namespace

PYBIND11_MODULE(infnan, m) {
    m.doc() = "Dense kernels with consistent Inf/NaN semantics";

    m.def("probe", &probe_dict,
          "Run the floating-point environment probes and return the findings");

    m.def("iamax", &iamax_real, py::arg("v"),
          "1-based index of the first NaN, else the first infinity, else the "
          "largest magnitude; 0 for an empty vector");
    m.def("iamax_complex", &iamax_complex, py::arg("v"),
          "Complex variant of iamax using the |re| + |im| magnitude proxy");
    m.def("nrm2", &nrm2_real, py::arg("v"),
          "Euclidean norm: NaN if any entry is NaN, else Inf if any entry is "
          "infinite, else the overflow-safe norm");
    m.def("nrm2_complex", &nrm2_complex, py::arg("v"));
    m.def("rotg", &rotg_real, py::arg("f"), py::arg("g"),
          "Real Givens rotation; returns (c, s, r, z)");
    m.def("rotg_complex", &rotg_complex, py::arg("f"), py::arg("g"),
          "Complex Givens rotation; returns (c, s, r)");

    m.def("solve", &solve_plain, py::arg("a"), py::arg("b"),
          "Solve A x = b by LU with partial pivoting; returns (x, info). "
          "A is a row-major nested list; exceptional values propagate into x");
    m.def("solve_checked", &solve_checked, py::arg("a"), py::arg("b"),
          py::arg("what") = 1, py::arg("how") = 1,
          "Checked solve: also reports exceptional inputs/outputs through "
          "info and a ten-slot info array");
    m.def("workspace_fits", &workspace_fits_py, py::arg("count"),
          py::arg("precision_bits") = 64, py::arg("index_bits") = 32,
          "Whether a workspace element count survives a round trip through "
          "the floating-point type and an integer index");
}
