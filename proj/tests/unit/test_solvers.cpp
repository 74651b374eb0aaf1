#include <array>
#include <cmath>
#include <cstring>
#include <limits>
#include <random>
#include <vector>

#include "doctest.h"

#include "infnan/blas23.hpp"
#include "infnan/solvers.hpp"

#include "../oracles.hpp"

using namespace infnan;

namespace {
const double qnan = std::numeric_limits<double>::quiet_NaN();
const double inf = std::numeric_limits<double>::infinity();

std::vector<double> random_matrix(std::mt19937_64& rng, int m, int n) {
    std::uniform_real_distribution<double> uni(-1, 1);
    std::vector<double> a(static_cast<size_t>(m) * n);
    for (auto& e : a) e = uni(rng);
    return a;
}

// Diagonally dominated square matrix: always nonsingular, stable pivots.
std::vector<double> well_conditioned(std::mt19937_64& rng, int n) {
    auto a = random_matrix(rng, n, n);
    for (int i = 1; i <= n; ++i) oracle::at(a, n, i, i) += n + 1.0;
    return a;
}

bool bits_equal(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() &&
           std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}
} // namespace

// ---------------------------------------------------------------------------
// numerics: factorization and solve quality
// ---------------------------------------------------------------------------

TEST_CASE("getrf: exact factorization of a hand-checkable matrix") {
    // A = [[2, 1], [4, 3]] (column-major {2,4,1,3}).  Partial pivoting swaps
    // rows: P*A = [[4,3],[2,1]], L21 = 1/2, U = [[4,3],[0,-1/2]].
    std::vector<double> a{2, 4, 1, 3};
    std::array<int, 2> ipiv{};
    const int info = getrf<double>(2, 2, a.data(), 2, ipiv.data());
    CHECK(info == 0);
    CHECK(ipiv[0] == 2);
    CHECK(ipiv[1] == 2);
    CHECK(a[0] == 4.0);  // U11
    CHECK(a[1] == 0.5);  // L21
    CHECK(a[2] == 3.0);  // U12
    CHECK(a[3] == -0.5); // U22
}

TEST_CASE("getrf: P*A = L*U reconstruction on rectangular shapes") {
    std::mt19937_64 rng(808);
    for (const auto [m, n] : {std::pair{5, 3}, {3, 5}, {4, 4}, {1, 3}, {3, 1}}) {
        auto a = random_matrix(rng, m, n);
        const auto original = a;
        std::vector<int> ipiv(static_cast<size_t>(std::min(m, n)));
        const int info = getrf<double>(m, n, a.data(), m, ipiv.data());
        CHECK(info == 0);
        // Build L (m x k, unit diagonal) and U (k x n) from the packed result.
        const int k = std::min(m, n);
        std::vector<double> lu(static_cast<size_t>(m) * n, 0.0);
        for (int j = 1; j <= n; ++j)
            for (int i = 1; i <= m; ++i) {
                long double acc = 0;
                for (int l = 1; l <= std::min({i, k}); ++l) {
                    const double lv =
                        (l == i) ? 1.0 : oracle::at(a, m, i, l); // unit lower
                    const double uv =
                        (l <= j) ? oracle::at(a, m, l, j) : 0.0; // upper
                    if (l <= j) acc += static_cast<long double>(lv) * uv;
                }
                oracle::at(lu, m, i, j) = static_cast<double>(acc);
            }
        // Undo the pivoting: rows were swapped forward, so replay backward.
        laswp<double>(MatrixView<double>{lu.data(), m, n, m}, 1, k, ipiv, -1);
        for (size_t idx = 0; idx < lu.size(); ++idx)
            CHECK(std::fabs(lu[idx] - original[idx]) <= 1e-12);
    }
}

TEST_CASE("gesv: residual quality stays small over random systems") {
    std::mt19937_64 rng(606);
    std::uniform_int_distribution<int> dim(1, 32);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = dim(rng);
        const int nrhs = 1 + trial % 3;
        auto a = well_conditioned(rng, n);
        auto b = random_matrix(rng, n, nrhs);
        const auto a0 = a, b0 = b;
        std::vector<int> ipiv(static_cast<size_t>(n));
        const int info =
            gesv<double>(n, nrhs, a.data(), n, ipiv.data(), b.data(), n);
        CHECK(info == 0);
        CHECK(oracle::solve_residual_quality(n, nrhs, a0, n, b, n, b0, n) <=
              100.0L);
    }
}

TEST_CASE("gesv: single precision keeps the same contract") {
    std::mt19937_64 rng(607);
    std::uniform_real_distribution<double> uni(-1, 1);
    const int n = 16, nrhs = 2;
    std::vector<float> a(static_cast<size_t>(n) * n), b(static_cast<size_t>(n) * nrhs);
    for (auto& e : a) e = static_cast<float>(uni(rng));
    for (int i = 1; i <= n; ++i) oracle::at(a, n, i, i) += float(n + 1);
    for (auto& e : b) e = static_cast<float>(uni(rng));
    const auto a0 = a, b0 = b;
    std::vector<int> ipiv(static_cast<size_t>(n));
    const int info = gesv<float>(n, nrhs, a.data(), n, ipiv.data(), b.data(), n);
    CHECK(info == 0);
    CHECK(oracle::solve_residual_quality(n, nrhs, a0, n, b, n, b0, n) <= 100.0L);
}

TEST_CASE("gesv: exact zero pivot reports its position and suppresses the solve") {
    // [[1, 2], [2, 4]] is singular; elimination exposes the zero at step 2.
    std::vector<double> a{1, 2, 2, 4};
    std::vector<double> b{1, 1};
    const auto b_before = b;
    std::array<int, 2> ipiv{};
    const int info = gesv<double>(2, 1, a.data(), 2, ipiv.data(), b.data(), 2);
    CHECK(info == 2);
    CHECK(bits_equal(b, b_before)); // solve suppressed, B untouched
}

TEST_CASE("blocked and recursive factorizations agree") {
    std::mt19937_64 rng(909);
    const int n = 24;
    auto a1 = well_conditioned(rng, n);
    auto a2 = a1;
    auto b1 = random_matrix(rng, n, 2);
    auto b2 = b1;
    const auto a0 = a1, b0 = b1;
    std::vector<int> p1(static_cast<size_t>(n)), p2(static_cast<size_t>(n));
    std::array<int, 10> ia1, ia2;
    ia1.fill(-7);
    ia2.fill(-7);
    const int i1 = gesv_ec<double>(n, 2, a1.data(), n, p1.data(), b1.data(), n,
                                   {0, 0}, ia1, nullptr, LuOptions{64});
    const int i2 = gesv_ec<double>(n, 2, a2.data(), n, p2.data(), b2.data(), n,
                                   {0, 0}, ia2, nullptr, LuOptions{4});
    CHECK(i1 == 0);
    CHECK(i2 == 0);
    CHECK(oracle::solve_residual_quality(n, 2, a0, n, b1, n, b0, n) <= 100.0L);
    CHECK(oracle::solve_residual_quality(n, 2, a0, n, b2, n, b0, n) <= 100.0L);
    // Same pivot sequence on a well-separated matrix.
    CHECK(p1 == p2);
}

TEST_CASE("quick returns: empty problems touch nothing") {
    std::vector<double> b{qnan, 2};
    std::array<int, 10> ia;
    ia.fill(-7);
    int piv[1] = {0};
    const int info = gesv_ec<double>(0, 1, nullptr, 1, piv, b.data(), 1, {2, 1},
                                     ia, nullptr);
    CHECK(info == 0);
    // Header written, then the n == 0 quick return fires before any check.
    CHECK(ia[0] == 0);
    CHECK(ia[4] == 2);
    CHECK(ia[6] == -1);
    CHECK(std::isnan(b[0]));

    std::vector<double> a{1, 0, 0, 1};
    const int rs = getrs<double>('N', 2, 0, a.data(), 2, nullptr, nullptr, 2);
    CHECK(rs == 0);
}

TEST_CASE("legacy argument validation codes") {
    std::vector<double> a{1, 0, 0, 1};
    std::vector<double> b{1, 2};
    std::array<int, 2> ipiv{1, 2};
    CHECK(gesv<double>(-1, 1, a.data(), 2, ipiv.data(), b.data(), 2) == -1);
    CHECK(gesv<double>(2, -1, a.data(), 2, ipiv.data(), b.data(), 2) == -2);
    CHECK(gesv<double>(2, 1, a.data(), 1, ipiv.data(), b.data(), 2) == -4);
    CHECK(gesv<double>(2, 1, a.data(), 2, ipiv.data(), b.data(), 1) == -7);
    CHECK(getrf<double>(-1, 2, a.data(), 2, ipiv.data()) == -1);
    CHECK(getrf<double>(2, -2, a.data(), 2, ipiv.data()) == -2);
    CHECK(getrf<double>(2, 2, a.data(), 1, ipiv.data()) == -4);
    CHECK(getrs<double>('X', 2, 1, a.data(), 2, ipiv.data(), b.data(), 2) == -1);
    CHECK(getrs<double>('N', -1, 1, a.data(), 2, ipiv.data(), b.data(), 2) == -2);
    CHECK(getrs<double>('N', 2, -1, a.data(), 2, ipiv.data(), b.data(), 2) == -3);
    CHECK(getrs<double>('N', 2, 1, a.data(), 1, ipiv.data(), b.data(), 2) == -5);
    CHECK(getrs<double>('N', 2, 1, a.data(), 2, ipiv.data(), b.data(), 1) == -8);
    CHECK(getrf2<double>(2, 2, a.data(), 1, ipiv.data()) == -4);
}

TEST_CASE("getrs: transposed solves against gesv on the transposed system") {
    std::mt19937_64 rng(404);
    const int n = 6;
    auto a = well_conditioned(rng, n);
    auto b = random_matrix(rng, n, 1);
    // Solve A^T x = b through getrf(A) + getrs('T').
    auto lu = a;
    std::vector<int> ipiv(static_cast<size_t>(n));
    REQUIRE(getrf<double>(n, n, lu.data(), n, ipiv.data()) == 0);
    auto x = b;
    REQUIRE(getrs<double>('T', n, 1, lu.data(), n, ipiv.data(), x.data(), n) ==
            0);
    // Residual against the explicitly transposed matrix.
    std::vector<double> at(a.size());
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            oracle::at(at, n, i, j) = oracle::at(a, n, j, i);
    CHECK(oracle::solve_residual_quality(n, 1, at, n, x, n, b, n) <= 100.0L);
}

// ---------------------------------------------------------------------------
// checking protocol: frozen anchor chains
// ---------------------------------------------------------------------------

namespace {
struct SolveRun {
    int info = 0;
    std::array<int, 10> ia;
    std::vector<double> a, b;

    SolveRun(std::vector<double> a_in, std::vector<double> b_in,
             FlagReport flags, Context* ctx = nullptr, int n = 2, int nrhs = 1)
        : a(std::move(a_in)), b(std::move(b_in)) {
        ia.fill(-77);
        std::vector<int> ipiv(static_cast<size_t>(std::max(1, n)));
        info = gesv_ec<double>(n, nrhs, a.data(), n, ipiv.data(), b.data(), n,
                               flags, ia, ctx);
    }
};

const std::vector<double> kClean{4, 1, 1, 3};
const std::vector<double> kCleanB{1, 2};
const std::vector<double> kANan{1, qnan, 0, 2}; // [[1,0],[NaN,2]]
const std::vector<double> kANanB{0, 1};
const std::vector<double> kBNan{qnan, 1};
} // namespace

TEST_CASE("checked solve: clean system, full checking, full bookkeeping") {
    SolveRun run(kClean, kCleanB, {2, 1});
    CHECK(run.info == 0);
    const std::array<int, 10> want{0, 2, 1, 0, 2, 2, 0, 0, -1, -1};
    CHECK(run.ia == want);
    CHECK(run.b[0] == doctest::Approx(1.0 / 11).epsilon(1e-12));
    CHECK(run.b[1] == doctest::Approx(7.0 / 11).epsilon(1e-12));
}

TEST_CASE("checked solve: NaN in A, own-arguments checking") {
    SolveRun run(kANan, kANanB, {1, 1});
    CHECK(run.info == -3);
    const std::array<int, 10> want{0, 1, 1, -3, 2, 2, 3, 2, -1, -1};
    CHECK(run.ia == want);
    CHECK(std::isnan(run.b[0]));
    CHECK(std::isnan(run.b[1]));
}

TEST_CASE("checked solve: NaN in A, call aggregation promotes early") {
    SolveRun run(kANan, kANanB, {2, 1});
    CHECK(run.info == -3);
    // The factorization's promoted code becomes this routine's working INFO,
    // so the solve is suppressed and B survives untouched.
    const std::array<int, 10> want{-3, 2, 1, -3, 2, 2, 3, 0, 4, -1};
    CHECK(run.ia == want);
    CHECK(run.b[0] == 0.0);
    CHECK(run.b[1] == 1.0);
}

TEST_CASE("checked solve: NaN in B flows through both reporting depths") {
    SolveRun own(kClean, kBNan, {1, 1});
    CHECK(own.info == -6);
    const std::array<int, 10> want_own{0, 1, 1, -6, 2, 2, 0, 3, -1, -1};
    CHECK(own.ia == want_own);
    CHECK(std::isnan(own.b[0]));

    SolveRun agg(kClean, kBNan, {2, 1});
    CHECK(agg.info == -7); // the substitution routine's own code, shared up
    const std::array<int, 10> want_agg{-7, 2, 1, -7, 2, 2, 0, 3, -1, 4};
    CHECK(agg.ia == want_agg);
    CHECK(std::isnan(agg.b[0]));

    // The computed values agree bit for bit across checking scopes: the
    // substitution always runs because the factorization's INFO stays 0.
    SolveRun off(kClean, kBNan, {0, 0});
    CHECK(off.info == 0);
    CHECK(bits_equal(off.b, own.b));
    CHECK(bits_equal(off.b, agg.b));
}

TEST_CASE("checked solve: how = 0 leaves the array untouched") {
    SolveRun run(kANan, kANanB, {1, 0});
    CHECK(run.info == -3);
    for (int v : run.ia) CHECK(v == -77);

    SolveRun clean(kClean, kCleanB, {0, 0});
    CHECK(clean.info == 0);
    for (int v : clean.ia) CHECK(v == -77);
}

TEST_CASE("checked solve: what = -1 disables even legacy checks") {
    SolveRun run(kANan, kANanB, {-1, 3});
    CHECK(run.info == 0); // the NaN sails through unreported
    for (int v : run.ia) CHECK(v == -77);
    CHECK(std::isnan(run.b[0]));
    CHECK(std::isnan(run.b[1]));
}

TEST_CASE("checked solve: bad dimension reports through the header") {
    SolveRun run(kClean, kCleanB, {1, 1}, nullptr, 2, -1);
    CHECK(run.info == -2);
    const std::array<int, 10> want{-2, 1, 1, -2, 2, 2, -1, -1, -1, -1};
    CHECK(run.ia == want);
}

TEST_CASE("checked solve: reporting depth 2 emits exactly one line") {
    Context ctx;
    std::vector<std::string> lines;
    ctx.set_handler([&](std::string_view routine, std::span<const int> ia) {
        lines.push_back(Context::render_report_line(routine, ia));
    });
    SolveRun run(kANan, kANanB, {2, 2}, &ctx);
    CHECK(run.info == -3);
    REQUIRE(lines.size() == 1); // this level only, no child reports
    CHECK(lines[0] ==
          "EXC DGESV info_array=[-3,2,2,-3,2,2,3,0,4,-1]");
}

TEST_CASE("checked solve: reporting depth 3 reports at every level") {
    Context ctx;
    std::vector<std::string> names;
    ctx.set_handler([&](std::string_view routine, std::span<const int>) {
        names.emplace_back(routine);
    });
    SolveRun run(kANan, kANanB, {2, 3}, &ctx);
    CHECK(run.info == -3);
    // The recursive factorization reports at each affected level, then the
    // blocked wrapper, then the driver.
    REQUIRE(names.size() >= 3);
    CHECK(names.back() == "DGESV");
    bool saw_getrf = false, saw_getrf2 = false;
    for (const auto& s : names) {
        if (s == "DGETRF") saw_getrf = true;
        if (s == "DGETRF2") saw_getrf2 = true;
    }
    CHECK(saw_getrf);
    CHECK(saw_getrf2);
}

TEST_CASE("checked solve: deferred flags resolve through the context") {
    Context ctx;
    ctx.set_flags_to_report({1, 1});
    SolveRun run(kANan, kANanB, {2, 4}, &ctx); // how = 4: use ctx (1,1)
    CHECK(run.info == -3);
    const std::array<int, 10> want{0, 1, 1, -3, 2, 2, 3, 2, -1, -1};
    CHECK(run.ia == want);

    // Null context resolves to (0,0): checking quietly degrades to legacy.
    SolveRun plain(kANan, kANanB, {2, 4});
    CHECK(plain.info == 0);
    for (int v : plain.ia) CHECK(v == -77);
}

// ---------------------------------------------------------------------------
// workspace_fits
// ---------------------------------------------------------------------------

TEST_CASE("workspace_fits: boundary counts for a 32-bit index") {
    // 4 * 23170^2 = 2,147,425,600 fits; 4 * 23171^2 = 2,147,580,964 does not.
    const std::int64_t ok = 4LL * 23170 * 23170;
    const std::int64_t too_big = 4LL * 23171 * 23171;
    CHECK(workspace_fits<float>(ok));
    CHECK(workspace_fits<double>(ok));
    CHECK_FALSE(workspace_fits<float>(too_big));
    CHECK_FALSE(workspace_fits<double>(too_big));

    // The float path rounds the count up to the next representable value
    // before comparing: a count just below the index limit whose float
    // neighbor crosses it must be rejected.
    CHECK_FALSE(workspace_fits<float>(2147483647));
    CHECK(workspace_fits<double>(2147483647));
    CHECK(workspace_fits<float>(0));
    CHECK_FALSE(workspace_fits<float>(-1));
}

TEST_CASE("workspace_fits: 64-bit index widens the range") {
    CHECK(workspace_fits<double>(1LL << 40, 64));
    CHECK_FALSE(workspace_fits<double>(1LL << 40, 32));
    // 2^53 + 1 is not representable in double; the count rounds up to the
    // next representable neighbor, which round-trips exactly.
    CHECK(workspace_fits<double>((1LL << 53) + 1, 64));
    CHECK(workspace_fits<float>(1LL << 30, 32));
}
