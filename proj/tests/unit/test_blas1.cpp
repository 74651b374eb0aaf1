#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <vector>

#include "doctest.h"

#include "infnan/blas1.hpp"
#include "infnan/machine.hpp"

#include "../oracles.hpp"

using namespace infnan;

namespace {
const double inf = std::numeric_limits<double>::infinity();
const double qnan = std::numeric_limits<double>::quiet_NaN();
const double ov = std::numeric_limits<double>::max();

template <class T>
VectorView<const T> view(const std::vector<T>& v, int inc = 1) {
    // Logical length: elements reachable at positions 1, 1+inc, 1+2*inc, ...
    const int sz = static_cast<int>(v.size());
    return {v.data(), (sz + inc - 1) / inc, inc};
}

bool within_ulps(double got, double expected, int ulps) {
    if (std::isnan(expected)) return std::isnan(got);
    if (std::isinf(expected)) return got == expected;
    double lo = expected, hi = expected;
    for (int i = 0; i < ulps; ++i) {
        lo = std::nextafter(lo, -std::numeric_limits<double>::infinity());
        hi = std::nextafter(hi, std::numeric_limits<double>::infinity());
    }
    return lo <= got && got <= hi;
}
} // namespace

// ---------------------------------------------------------------------------
// iamax
// ---------------------------------------------------------------------------

TEST_CASE("iamax: three result tiers in priority order") {
    std::vector<double> v{1, qnan, inf, 5};
    CHECK(iamax(view(v)) == 2); // a NaN outranks everything after it

    std::vector<double> w{1, inf, 2, -inf};
    CHECK(iamax(view(w)) == 2); // first infinity when no NaN

    std::vector<double> f{3, 5, 5, 4};
    CHECK(iamax(view(f)) == 2); // strict > keeps the first of equal magnitudes

    std::vector<double> z{0, 0, 0};
    CHECK(iamax(view(z)) == 1); // all zeros still produce a valid index

    std::vector<double> one{-7};
    CHECK(iamax(view(one)) == 1);
}

TEST_CASE("iamax: empty vector and argument validation") {
    std::vector<double> v{1, 2};
    CHECK(iamax(VectorView<const double>{v.data(), 0, 1}) == 0);

    CHECK_THROWS_AS(iamax(VectorView<const double>{v.data(), -1, 1}),
                    ArgumentError);
    CHECK_THROWS_AS(iamax(VectorView<const double>{v.data(), 2, 0}),
                    ArgumentError);
    try {
        iamax(VectorView<const double>{v.data(), -1, 1});
    } catch (const ArgumentError& e) {
        CHECK(e.position == 1);
        CHECK(e.routine == "IAMAX");
    }
    try {
        iamax(VectorView<const double>{v.data(), 2, -3});
    } catch (const ArgumentError& e) {
        CHECK(e.position == 3);
    }
}

TEST_CASE("iamax: stride addresses only the strided elements") {
    // Logical vector is (1, 2, 3); the 99/98 fillers must be invisible.
    std::vector<double> v{1, 99, 2, 98, 3};
    CHECK(iamax(view(v, 2)) == 3);
    std::vector<double> w{1, qnan, 2, 98, 3};
    CHECK(iamax(view(w, 2)) == 3); // the NaN sits between strided slots
}

TEST_CASE("iamax: randomized agreement with the reference scan") {
    const double alphabet[] = {0, 1, -2, ov, inf, -inf, qnan};
    std::mt19937_64 rng(123);
    std::uniform_int_distribution<int> pick(0, 6);
    std::uniform_int_distribution<int> len(0, 40);
    for (int t = 0; t < 4000; ++t) {
        std::vector<double> v(static_cast<size_t>(len(rng)));
        for (auto& e : v) e = alphabet[pick(rng)];
        CHECK(iamax(VectorView<const double>{v.data(),
                                             static_cast<int>(v.size()), 1}) ==
              oracle::ref_iamax(v));
    }
    // Single precision follows the same contract.
    std::mt19937_64 rng2(321);
    const float fa[] = {0.f, 1.f, -2.f, std::numeric_limits<float>::max(),
                        std::numeric_limits<float>::infinity(),
                        -std::numeric_limits<float>::infinity(),
                        std::numeric_limits<float>::quiet_NaN()};
    for (int t = 0; t < 2000; ++t) {
        std::vector<float> v(static_cast<size_t>(len(rng2)));
        std::vector<double> vd;
        for (auto& e : v) {
            e = fa[pick(rng2)];
            vd.push_back(static_cast<double>(e));
        }
        CHECK(iamax(VectorView<const float>{v.data(),
                                            static_cast<int>(v.size()), 1}) ==
              oracle::ref_iamax(vd));
    }
}

TEST_CASE("iamax complex: NaN in either component wins immediately") {
    using C = std::complex<double>;
    std::vector<C> v{{1, 2}, {3, qnan}, {inf, 0}};
    CHECK(iamax(view(v)) == 2);
    std::vector<C> w{{1, 2}, {qnan, 3}, {9, 9}};
    CHECK(iamax(view(w)) == 2);
}

TEST_CASE("iamax complex: |re|+|im| proxy, then first infinity") {
    using C = std::complex<double>;
    std::vector<C> v{{3, 4}, {6, 0}}; // proxies 7 vs 6
    CHECK(iamax(view(v)) == 1);
    std::vector<C> w{{1, 1}, {0, inf}, {5, 5}, {inf, inf}};
    CHECK(iamax(view(w)) == 2);
}

TEST_CASE("iamax complex: proxy overflow switches to the quarter scale once") {
    using C = std::complex<double>;
    const double h = 0.75 * ov;
    // Proxy of (h, h) overflows; of (h2, h2) with h2 slightly larger also
    // overflows.  On the 1/4 scale both are finite and the larger must win.
    const double h2 = 0.76 * ov;
    std::vector<C> v{{h, h}, {h2, h2}};
    CHECK(iamax(view(v)) == 2);
    std::vector<C> w{{h2, h2}, {h, h}};
    CHECK(iamax(view(w)) == 1);
    // A later merely-large value must not displace the rescaled leader.
    std::vector<C> u{{h2, h2}, {ov / 8, 0}};
    CHECK(iamax(view(u)) == 1);
}

TEST_CASE("iamax complex: n = 0 and argument validation") {
    using C = std::complex<double>;
    std::vector<C> v{{1, 1}};
    CHECK(iamax(VectorView<const C>{v.data(), 0, 1}) == 0);
    CHECK_THROWS_AS(iamax(VectorView<const C>{v.data(), -2, 1}),
                    ArgumentError);
    CHECK_THROWS_AS(iamax(VectorView<const C>{v.data(), 1, 0}), ArgumentError);
}

// ---------------------------------------------------------------------------
// nrm2
// ---------------------------------------------------------------------------

TEST_CASE("nrm2: NaN anywhere outranks infinity") {
    std::vector<double> v{inf, qnan, 3};
    CHECK(std::isnan(nrm2(view(v))));
    std::vector<double> w{3, -inf, 4};
    CHECK(nrm2(view(w)) == inf);
    std::vector<double> u{qnan};
    CHECK(std::isnan(nrm2(view(u))));
}

TEST_CASE("nrm2: exact and near-exact finite values") {
    std::vector<double> v{3, 4};
    CHECK(nrm2(view(v)) == 5.0);
    std::vector<double> z;
    CHECK(nrm2(VectorView<const double>{z.data(), 0, 1}) == 0.0);

    // Values whose squares overflow: the scaled accumulation stays finite.
    std::vector<double> big{0.5 * ov, 0.5 * ov};
    const double r = nrm2(view(big));
    CHECK(std::isfinite(r));
    CHECK(within_ulps(r, 0.5 * ov * std::sqrt(2.0), 4));

    // Values whose squares underflow to zero in naive code.
    const double tiny = std::numeric_limits<double>::min() / 2;
    std::vector<double> small{tiny, tiny, tiny, tiny};
    CHECK(within_ulps(nrm2(view(small)), 2 * tiny, 4));
}

TEST_CASE("nrm2: randomized agreement with the extended-precision reference") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> mant(1.0, 2.0);
    std::uniform_int_distribution<int> expo(-120, 120);
    std::uniform_int_distribution<int> len(1, 60);
    std::uniform_int_distribution<int> sgn(0, 1);
    for (int t = 0; t < 2000; ++t) {
        std::vector<double> v(static_cast<size_t>(len(rng)));
        for (auto& e : v)
            e = (sgn(rng) ? 1 : -1) * std::ldexp(mant(rng), expo(rng));
        CHECK(within_ulps(nrm2(view(v)), oracle::ref_nrm2(v), 4));
    }
}

TEST_CASE("nrm2: stride and complex interleaving") {
    std::vector<double> v{3, 77, 4, 77};
    CHECK(nrm2(view(v, 2)) == 5.0);

    using C = std::complex<double>;
    std::vector<C> c{{3, 4}, {0, 0}};
    CHECK(nrm2(view(c)) == 5.0);
    std::vector<C> cn{{3, qnan}};
    CHECK(std::isnan(nrm2(view(cn))));
    std::vector<C> ci{{3, -inf}};
    CHECK(nrm2(view(ci)) == inf);
}

// ---------------------------------------------------------------------------
// rotg (real)
// ---------------------------------------------------------------------------

TEST_CASE("rotg real: exceptional-input table") {
    auto all_nan = [](const GivensReal<double>& g) {
        return std::isnan(g.c) && std::isnan(g.s) && std::isnan(g.r) &&
               std::isnan(g.z);
    };
    CHECK(all_nan(rotg(qnan, 1.0)));
    CHECK(all_nan(rotg(1.0, qnan)));
    CHECK(all_nan(rotg(qnan, qnan)));
    CHECK(all_nan(rotg(qnan, inf)));

    for (double fs : {1.0, -1.0})
        for (double gs : {1.0, -1.0}) {
            const auto g = rotg(fs * inf, gs * inf);
            CHECK(std::isnan(g.c));
            CHECK(std::isnan(g.s));
            CHECK(std::isinf(g.r)); // sign unconstrained
            CHECK(std::isnan(g.z));
        }

    const auto fi = rotg(-inf, 3.0);
    CHECK(fi.c == 1.0);
    CHECK(fi.s == 0.0);
    CHECK(fi.r == -inf);
    CHECK(fi.z == 0.0);

    const auto gi = rotg(3.0, inf);
    CHECK(gi.c == 0.0);
    CHECK(gi.s == 1.0);
    CHECK(gi.r == inf);
    CHECK(gi.z == 1.0);
}

TEST_CASE("rotg real: exact small rotations") {
    const auto a = rotg(3.0, 4.0);
    CHECK(a.c == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(a.s == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(a.r == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(a.z == doctest::Approx(1.0 / 0.6).epsilon(1e-15));

    const auto b = rotg(4.0, 3.0);
    CHECK(b.z == doctest::Approx(0.6).epsilon(1e-15)); // |f| > |g| stores s

    const auto c0 = rotg(0.0, 0.0);
    CHECK(c0.c == 1.0);
    CHECK(c0.s == 0.0);
    CHECK(c0.r == 0.0);
    CHECK(c0.z == 0.0);

    const auto gz = rotg(5.0, 0.0);
    CHECK(gz.c == 1.0);
    CHECK(gz.s == 0.0);
    CHECK(gz.r == 5.0);

    const auto fz = rotg(0.0, 5.0);
    CHECK(fz.c == 0.0);
    CHECK(fz.s == 1.0);
    CHECK(fz.r == 5.0);
    CHECK(fz.z == 1.0);
}

TEST_CASE("rotg real: rotation identities over random and extreme inputs") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> mant(1.0, 2.0);
    std::uniform_int_distribution<int> expo(-300, 300);
    std::uniform_int_distribution<int> sgn(0, 1);
    const double eps = std::numeric_limits<double>::epsilon();
    auto draw = [&] {
        return (sgn(rng) ? 1 : -1) * std::ldexp(mant(rng), expo(rng));
    };
    for (int t = 0; t < 10000; ++t) {
        const double f = draw(), g = draw();
        const auto gv = rotg(f, g);
        CHECK(within_ulps(gv.c * gv.c + gv.s * gv.s, 1.0, 4));
        CHECK(gv.c >= 0.0);
        // Applying the rotation reproduces (r, 0).
        CHECK(std::fabs(gv.c * f + gv.s * g - gv.r) <=
              8 * eps * std::fabs(gv.r));
        CHECK(std::fabs(-gv.s * f + gv.c * g) <= 8 * eps * std::fabs(gv.r));
        // z encodes the rotation compactly.
        if (std::fabs(f) > std::fabs(g)) {
            CHECK(gv.z == gv.s);
        } else if (gv.c != 0.0) {
            CHECK(within_ulps(gv.z, 1.0 / gv.c, 4));
        } else {
            CHECK(gv.z == 1.0);
        }
    }
}

// ---------------------------------------------------------------------------
// rotg (complex)
// ---------------------------------------------------------------------------

TEST_CASE("rotg complex: exceptional-input table") {
    using C = std::complex<double>;
    auto is_nan2 = [](C z) {
        return std::isnan(z.real()) && std::isnan(z.imag());
    };

    const auto n1 = rotg(C(qnan, 0), C(1, 1));
    CHECK(std::isnan(n1.c));
    CHECK(is_nan2(n1.s));
    CHECK(is_nan2(n1.r));

    const auto bi = rotg(C(inf, 0), C(0, -inf));
    CHECK(std::isnan(bi.c));
    CHECK(is_nan2(bi.s));
    CHECK(bi.r == C(inf, 0));

    const auto fi = rotg(C(-inf, 1), C(2, 3));
    CHECK(fi.c == 1.0);
    CHECK(fi.s == C(0, 0));
    CHECK(fi.r == C(-inf, 1));

    const auto gre = rotg(C(1, 2), C(-inf, 3));
    CHECK(gre.c == 0.0);
    CHECK(gre.s == C(-1, 0));
    CHECK(gre.r == C(inf, 0));

    const auto gim = rotg(C(1, 2), C(3, inf));
    CHECK(gim.c == 0.0);
    CHECK(gim.s == C(0, -1));
    CHECK(gim.r == C(inf, 0));

    const auto gboth = rotg(C(1, 2), C(inf, -inf));
    CHECK(gboth.c == 0.0);
    CHECK(is_nan2(gboth.s));
    CHECK(gboth.r == C(inf, 0));
}

TEST_CASE("rotg complex: exact small rotations") {
    using C = std::complex<double>;
    const auto gz = rotg(C(3, 4), C(0, 0));
    CHECK(gz.c == 1.0);
    CHECK(gz.s == C(0, 0));
    CHECK(gz.r == C(3, 4));

    const auto fz = rotg(C(0, 0), C(3, 4));
    CHECK(fz.c == 0.0);
    CHECK(fz.s.real() == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(fz.s.imag() == doctest::Approx(-0.8).epsilon(1e-15));
    CHECK(fz.r.real() == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(fz.r.imag() == 0.0);

    const auto up = rotg(C(1, 0), C(0, 1));
    const double i2 = 1.0 / std::sqrt(2.0);
    CHECK(up.c == doctest::Approx(i2).epsilon(1e-15));
    CHECK(up.s.real() == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(up.s.imag() == doctest::Approx(-i2).epsilon(1e-15));
    CHECK(up.r.real() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(std::fabs(up.r.imag()) <= 1e-16);
}

TEST_CASE("rotg complex: unitarity and application identities") {
    using C = std::complex<double>;
    std::mt19937_64 rng(555);
    std::uniform_real_distribution<double> mant(1.0, 2.0);
    std::uniform_int_distribution<int> expo(-200, 200);
    std::uniform_int_distribution<int> sgn(0, 1);
    const double eps = std::numeric_limits<double>::epsilon();
    auto draw = [&] {
        return (sgn(rng) ? 1 : -1) * std::ldexp(mant(rng), expo(rng));
    };
    for (int t = 0; t < 5000; ++t) {
        const C f(draw(), draw()), g(draw(), draw());
        const auto gv = rotg(f, g);
        CHECK(gv.c >= 0.0);
        CHECK(within_ulps(gv.c * gv.c + std::norm(gv.s), 1.0, 8));
        const C top = gv.c * f + gv.s * g;
        const C bot = -std::conj(gv.s) * f + gv.c * g;
        const double rmag = std::abs(gv.r);
        CHECK(std::abs(top - gv.r) <= 16 * eps * rmag);
        CHECK(std::abs(bot) <= 16 * eps * rmag);
    }
}

// ---------------------------------------------------------------------------
// scal and nonzero scans
// ---------------------------------------------------------------------------

TEST_CASE("scal: zero alpha multiplies through instead of assigning zeros") {
    std::vector<double> v{inf, qnan, 2, -0.0};
    scal(0.0, VectorView<double>{v.data(), 4, 1});
    CHECK(std::isnan(v[0])); // 0 * Inf = NaN
    CHECK(std::isnan(v[1])); // 0 * NaN = NaN
    CHECK(v[2] == 0.0);
    CHECK(v[3] == 0.0);

    std::vector<double> w{1, 2, 3};
    scal(2.0, VectorView<double>{w.data(), 3, 1});
    CHECK(w == std::vector<double>{2, 4, 6});

    CHECK_THROWS_AS(scal(1.0, VectorView<double>{w.data(), -1, 1}),
                    ArgumentError);
    CHECK_THROWS_AS(scal(1.0, VectorView<double>{w.data(), 3, 0}),
                    ArgumentError);
}

TEST_CASE("nonzero scans treat NaN and Inf as nonzero") {
    std::vector<double> v{0, 0, qnan, 0, inf, 0};
    CHECK(first_nonzero(view(v)) == 3);
    CHECK(last_nonzero(view(v)) == 5);
    std::vector<double> z{0, 0};
    CHECK(first_nonzero(view(z)) == 0);
    CHECK(last_nonzero(view(z)) == 0);

    // 2x3 column-major matrix with the only nonzero (a NaN) in row 2.
    std::vector<double> m{0, qnan, 0, 0, 0, 0};
    MatrixView<const double> a{m.data(), 2, 3, 2};
    CHECK(first_nonzero_row(a) == 2);
    CHECK(last_nonzero_row(a) == 2);
    std::vector<double> mz(6, 0.0);
    MatrixView<const double> az{mz.data(), 2, 3, 2};
    CHECK(first_nonzero_row(az) == 0);
}
