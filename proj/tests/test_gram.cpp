#include "doctest.h"

#include <random>
#include <stdexcept>

#include "ovaline/criteria.hpp"
#include "ovaline/fixtures.hpp"
#include "ovaline/gpoly.hpp"
#include "ovaline/gram.hpp"
#include "test_util.hpp"

using namespace ovaline;
using namespace ovaline::test;

namespace {

PointSet regular_set(const FieldCtx& ctx) {
    return points_from_g(ctx, GFunctionTable{std::vector<FElem>(ctx.q() + 1, F_ONE)});
}

FMatrix random_matrix(const FieldCtx& ctx, std::mt19937_64& rng, std::uint32_t n) {
    FMatrix m = FMatrix::zero(n, n);
    for (FElem& e : m.a) e = random_felem(ctx, rng);
    return m;
}

// Characteristic polynomial by cofactor expansion of xI + A over F[x];
// exponential, test-only oracle.
FPoly oracle_char_poly(const FieldCtx& ctx, const FMatrix& a) {
    const std::uint32_t n = a.rows;
    std::vector<std::vector<FPoly>> p(n, std::vector<FPoly>(n));
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < n; ++j) {
            FPoly e{a.at(i, j)};
            if (i == j) e.push_back(F_ONE);
            p[i][j] = fpoly_trim(std::move(e));
        }

    struct Rec {
        const FieldCtx& ctx;
        const std::vector<std::vector<FPoly>>& p;
        FPoly det(std::vector<std::uint32_t> rows, std::vector<std::uint32_t> cols) {
            if (rows.size() == 1) return p[rows[0]][cols[0]];
            FPoly acc;
            for (std::size_t j = 0; j < cols.size(); ++j) {
                const FPoly& head = p[rows[0]][cols[j]];
                if (head.empty()) continue;
                std::vector<std::uint32_t> r2(rows.begin() + 1, rows.end());
                std::vector<std::uint32_t> c2;
                for (std::size_t t = 0; t < cols.size(); ++t)
                    if (t != j) c2.push_back(cols[t]);
                acc = fpoly_add(acc, fpoly_mul(ctx, head, det(std::move(r2), std::move(c2))));
            }
            return acc;
        }
    } rec{ctx, p};

    std::vector<std::uint32_t> idx(n);
    for (std::uint32_t i = 0; i < n; ++i) idx[i] = i;
    return rec.det(idx, idx);
}

}  // namespace

TEST_SUITE("gram") {

TEST_CASE("gram matrix shape") {
    const FieldCtx& ctx = fixture_context(4);
    const PointSet H = regular_set(ctx);

    for (std::uint64_t k : {1u, 2u, 3u}) {
        const FMatrix m = gram_matrix(ctx, H, k);
        CHECK(m.rows == ctx.q() + 1);
        for (std::uint32_t i = 0; i < m.rows; ++i) {
            CHECK(m.at(i, i) == F_ZERO);
            for (std::uint32_t j = 0; j < m.cols; ++j) CHECK(m.at(i, j) == m.at(j, i));
        }
    }

    // entrywise Frobenius
    const FMatrix m1 = gram_matrix(ctx, H, 1);
    const FMatrix m2 = gram_matrix(ctx, H, 2);
    for (std::size_t t = 0; t < m1.a.size(); ++t) CHECK(m2.a[t] == ctx.f_sq(m1.a[t]));

    // row sums vanish for the regular hyperoval at every power
    for (std::uint64_t k = 1; k <= ctx.q(); ++k) {
        const FMatrix mk = gram_matrix(ctx, H, k);
        for (std::uint32_t i = 0; i < mk.rows; ++i) {
            FElem sum = F_ZERO;
            for (std::uint32_t j = 0; j < mk.cols; ++j) sum = FieldCtx::f_add(sum, mk.at(i, j));
            CHECK(sum == F_ZERO);
        }
    }

    CHECK(rank_f(ctx, m1) == 2);

    // infinite points are rejected
    GFunctionTable g{std::vector<FElem>(ctx.q() + 1, F_ONE)};
    g.values[2] = F_ZERO;
    CHECK_THROWS_AS(gram_matrix(ctx, points_from_g(ctx, g), 1), std::invalid_argument);
}

TEST_CASE("gram criterion verdicts") {
    const FieldCtx& ctx8 = fixture_context(8);
    CHECK(check_gram_criterion(ctx8, regular_set(ctx8)).verdict);

    const FieldCtx& ctx16 = fixture_context(16);
    for (const Fixture& f : builtin_fixtures()) {
        if (f.name == "power_sum_gap_q16") {
            const auto table = g_coeffs_to_table(ctx16, std::get<GCoeffs>(f.payload));
            const auto rep = check_gram_criterion(ctx16, points_from_g(ctx16, table));
            CHECK(!rep.verdict);
            CHECK(std::holds_alternative<WitnessRowSum>(rep.witness));
        }
        if (f.name == "vandermonde_not_hyperoval_q8") {
            const auto rep = check_gram_criterion(ctx8, std::get<PointSet>(f.payload));
            CHECK(!rep.verdict);
            REQUIRE(std::holds_alternative<DirectionCollision>(rep.witness));
            CHECK(std::get<DirectionCollision>(rep.witness).direction == K_ONE);
        }
    }
}

TEST_CASE("gram verdict is invariant under K-scalar rescaling") {
    std::mt19937_64 rng(0x5eed0402);
    const FieldCtx& ctx = fixture_context(8);
    for (const Fixture& f : builtin_fixtures()) {
        if (f.q != 8) continue;
        PointSet pts;
        if (const GCoeffs* g = std::get_if<GCoeffs>(&f.payload)) {
            pts = points_from_g(ctx, g_coeffs_to_table(ctx, *g));
        } else {
            pts = std::get<PointSet>(f.payload);
            bool affine = contains_zero(pts);
            for (const auto& p : pts.pts)
                if (p.infinite) affine = false;
            if (!affine) continue;
        }
        const bool before = check_gram_criterion(ctx, pts).verdict;
        const KElem scale = random_kelem_nonzero(ctx, rng);
        std::vector<ProjPointK> scaled;
        for (const auto& p : pts.pts) scaled.push_back(affine_point(ctx.k_mul(p.z, scale)));
        const bool after = check_gram_criterion(ctx, make_point_set(ctx, scaled)).verdict;
        CHECK(before == after);
    }
}

TEST_CASE("exact linear algebra: rank, characteristic and minimal polynomials") {
    std::mt19937_64 rng(0x5eed0403);
    const auto ctx = FieldCtx::make(3);

    const FMatrix zero = FMatrix::zero(3, 3);
    CHECK(rank_f(ctx, zero) == 0);
    CHECK(char_poly(ctx, zero) == FPoly{F_ZERO, F_ZERO, F_ZERO, F_ONE});
    CHECK(min_poly(ctx, zero) == FPoly{F_ZERO, F_ONE});

    FMatrix ident = FMatrix::zero(3, 3);
    for (std::uint32_t i = 0; i < 3; ++i) ident.at(i, i) = F_ONE;
    CHECK(rank_f(ctx, ident) == 3);
    // (x+1)^3 = x^3 + x^2 + x + 1 in characteristic 2
    CHECK(char_poly(ctx, ident) == FPoly{F_ONE, F_ONE, F_ONE, F_ONE});
    CHECK(min_poly(ctx, ident) == FPoly{F_ONE, F_ONE});

    for (int it = 0; it < 60; ++it) {
        const std::uint32_t n = 2 + std::uint32_t(draw(rng, 3));
        const FMatrix a = random_matrix(ctx, rng, n);
        const FPoly cp = char_poly(ctx, a);
        CHECK(cp == oracle_char_poly(ctx, a));
        CHECK(fpoly_deg(cp) == int(n));

        const FPoly mp = min_poly(ctx, a);
        // annihilation
        const FMatrix eval = fpoly_eval_matrix(ctx, mp, a);
        CHECK(eval == FMatrix::zero(n, n));
        // divisibility
        FPoly quo, rem;
        fpoly_divmod(ctx, cp, mp, quo, rem);
        CHECK(rem.empty());
    }
}

TEST_CASE("spectrum report for regular and translation hyperovals") {
    for (std::uint32_t q : {4u, 8u, 16u}) {
        const FieldCtx& ctx = fixture_context(q);
        const auto rep = gram_spectrum_report(ctx, regular_set(ctx));
        INFO("q = ", q);
        CHECK(rep.trace_zero);
        CHECK(rep.rank == 2);
        CHECK(rep.kernel_dim == q - 1);
        CHECK(rep.mu0 != F_ZERO);
        CHECK(rep.char_shape_ok);
        CHECK(rep.min_shape_ok);
        CHECK(rep.eigen_checked == q - 1);
        CHECK(rep.eigen_ok);
        CHECK(rep.all_ok());
    }

    // q=8 translation fixture, normalized to an all-affine set through 0
    const FieldCtx& ctx = fixture_context(8);
    for (const Fixture& f : builtin_fixtures()) {
        if (f.name != "translation_q8") continue;
        const auto er = extract_g(ctx, std::get<PointSet>(f.payload));
        REQUIRE(er.ok());
        const auto norm = normalize_g(ctx, *er.table);
        REQUIRE(norm.found);
        const auto rep = gram_spectrum_report(ctx, points_from_g(ctx, norm.table));
        CHECK(rep.all_ok());
    }

    // non-hyperovals are rejected up front
    const FieldCtx& ctx16 = fixture_context(16);
    for (const Fixture& f : builtin_fixtures()) {
        if (f.name != "power_sum_gap_q16") continue;
        const auto table = g_coeffs_to_table(ctx16, std::get<GCoeffs>(f.payload));
        CHECK_THROWS_AS(gram_spectrum_report(ctx16, points_from_g(ctx16, table)),
                        std::invalid_argument);
    }
}

}  // TEST_SUITE
