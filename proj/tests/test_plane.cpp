#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

#include "ovaline/criteria.hpp"
#include "ovaline/plane.hpp"
#include "test_util.hpp"

using namespace ovaline;
using namespace ovaline::test;

namespace {

GFunctionTable const_table(const FieldCtx& ctx, FElem v) {
    return GFunctionTable{std::vector<FElem>(ctx.q() + 1, v)};
}

std::multiset<std::uint64_t> keys_of(const FieldCtx& ctx, const PointSet& s) {
    std::multiset<std::uint64_t> r;
    for (const auto& p : s.pts) r.insert(point_key(ctx, p));
    return r;
}

PointSet translation_hyperoval_q8(const FieldCtx& ctx) {
    // graph of t -> t^4 plus the two frame points, moved to the K-model
    std::vector<FElem> f(5, F_ZERO);
    f[4] = F_ONE;
    return points_h_to_k(ctx, opoly_points(ctx, f));
}

}  // namespace

TEST_SUITE("plane") {

TEST_CASE("incidence basics") {
    const auto ctx = FieldCtx::make(3);
    for (const KElem& u : ctx.unit_circle()) {
        CHECK(incident(ctx, affine_point(K_ZERO), line_k(ctx, u, F_ZERO)));
        for (std::uint32_t mu = 0; mu < ctx.q(); ++mu) {
            // the whole parallel class passes through the direction point
            CHECK(incident(ctx, ProjPointK{true, u}, line_k(ctx, u, FElem{mu})));
        }
        CHECK(incident(ctx, ProjPointK{true, u}, line_at_infinity()));
        CHECK(!incident(ctx, affine_point(K_ZERO), line_at_infinity()));
    }
}

TEST_CASE("line representative rescaling") {
    std::mt19937_64 rng(0x5eed0101);
    const auto ctx = FieldCtx::make(3);
    for (int it = 0; it < 50; ++it) {
        const KElem alpha = random_kelem_nonzero(ctx, rng);
        const FElem beta = random_felem(ctx, rng);
        const FElem lam = random_felem_nonzero(ctx, rng);
        const LineK a = line_k(ctx, alpha, beta);
        const LineK b = line_k(ctx, ctx.k_scale(alpha, lam), ctx.f_mul(beta, lam));
        CHECK(a == b);
        const ProjPointK p = draw(rng, 2) ? affine_point(random_kelem(ctx, rng))
                                          : ProjPointK{true, ctx.unit_circle()[draw(rng, ctx.q() + 1)]};
        CHECK(incident(ctx, p, a) == incident(ctx, p, b));
    }
}

TEST_CASE("every affine line has q affine points and one infinite point") {
    for (unsigned m : {2u, 3u}) {
        const auto ctx = FieldCtx::make(m);
        for (const KElem& v : ctx.unit_circle()) {
            for (std::uint32_t mu = 0; mu < ctx.q(); ++mu) {
                const LineK l = line_k(ctx, v, FElem{mu});
                std::uint32_t aff = 0, inf = 0;
                for (std::uint64_t enc = 0; enc < ctx.k_size(); ++enc) {
                    if (incident(ctx, affine_point(ctx.k_decode(enc)), l)) ++aff;
                }
                for (const KElem& u : ctx.unit_circle()) {
                    if (incident(ctx, ProjPointK{true, u}, l)) ++inf;
                }
                CHECK(aff == ctx.q());
                CHECK(inf == 1);
            }
        }
    }
}

TEST_CASE("homogeneous/K-model conversion") {
    const auto ctx = FieldCtx::make(3);
    CHECK(homog_to_k(ctx, point_h(ctx, F_ZERO, F_ZERO, F_ONE)) == affine_point(K_ZERO));
    // round trips at q = 8, both charts
    for (std::uint32_t x = 0; x < ctx.q(); ++x) {
        for (std::uint32_t y = 0; y < ctx.q(); ++y) {
            const ProjPointH p = point_h(ctx, FElem{x}, FElem{y}, F_ONE);
            CHECK(k_to_homog(ctx, homog_to_k(ctx, p)) == p);
            if (x || y) {
                const ProjPointH inf = point_h(ctx, FElem{x}, FElem{y}, F_ZERO);
                CHECK(k_to_homog(ctx, homog_to_k(ctx, inf)) == inf);
            }
        }
    }
    for (std::uint64_t enc = 0; enc < ctx.k_size(); ++enc) {
        const ProjPointK p = affine_point(ctx.k_decode(enc));
        CHECK(homog_to_k(ctx, k_to_homog(ctx, p)) == p);
    }
    for (const KElem& u : ctx.unit_circle()) {
        const ProjPointK p{true, u};
        CHECK(homog_to_k(ctx, k_to_homog(ctx, p)) == p);
    }
}

TEST_CASE("conversion preserves collinearity") {
    std::mt19937_64 rng(0x5eed0102);
    for (unsigned m : {2u, 3u, 4u}) {
        const auto ctx = FieldCtx::make(m);
        for (int it = 0; it < 200; ++it) {
            // three distinct points on a random homogeneous line ax+by+cz=0
            FElem a = random_felem(ctx, rng), b = random_felem(ctx, rng), c = random_felem(ctx, rng);
            if (a == F_ZERO && b == F_ZERO && c == F_ZERO) a = F_ONE;
            std::vector<ProjPointH> on_line;
            for (std::uint32_t x = 0; x < ctx.q() && on_line.size() < 64; ++x) {
                for (std::uint32_t y = 0; y < ctx.q(); ++y) {
                    for (std::uint32_t z = 0; z < 2; ++z) {
                        if (x == 0 && y == 0 && z == 0) continue;
                        const ProjPointH p = point_h(ctx, FElem{x}, FElem{y}, FElem{z});
                        if (incident_h(ctx, p, a, b, c) &&
                            std::find(on_line.begin(), on_line.end(), p) == on_line.end())
                            on_line.push_back(p);
                    }
                }
            }
            if (on_line.size() < 3) continue;
            std::vector<ProjPointH> tri;
            while (tri.size() < 3) {
                const ProjPointH p = on_line[draw(rng, on_line.size())];
                if (std::find(tri.begin(), tri.end(), p) == tri.end()) tri.push_back(p);
            }
            const ProjPointK k0 = homog_to_k(ctx, tri[0]);
            const ProjPointK k1 = homog_to_k(ctx, tri[1]);
            const ProjPointK k2 = homog_to_k(ctx, tri[2]);
            CHECK(incident(ctx, k2, line_through(ctx, k0, k1)));
        }
    }
}

TEST_CASE("opoly point sets") {
    const auto ctx4 = FieldCtx::make(2);
    std::vector<FElem> sq(3, F_ZERO);
    sq[2] = F_ONE;  // t^2
    const auto pts4 = opoly_points(ctx4, sq);
    CHECK(pts4.size() == ctx4.q() + 2);
    CHECK(check_geometric(ctx4, points_h_to_k(ctx4, pts4)).verdict);

    const auto ctx8 = FieldCtx::make(3);
    std::vector<FElem> ident(2, F_ZERO);
    ident[1] = F_ONE;  // t
    const auto rep = check_geometric(ctx8, points_h_to_k(ctx8, opoly_points(ctx8, ident)));
    CHECK(!rep.verdict);
    CHECK(std::holds_alternative<WitnessLine>(rep.witness));

    CHECK(check_geometric(ctx8, translation_hyperoval_q8(ctx8)).verdict);
}

TEST_CASE("lines through 0 meet a g-set at 0 and v/g(v)") {
    std::mt19937_64 rng(0x5eed0106);
    const auto ctx = FieldCtx::make(3);
    GFunctionTable g;
    for (std::uint32_t j = 0; j <= ctx.q(); ++j) g.values.push_back(random_felem_nonzero(ctx, rng));
    for (std::uint32_t j = 0; j <= ctx.q(); ++j) {
        const KElem v = ctx.unit_circle()[j];
        const LineK l = line_k(ctx, v, F_ZERO);
        const KElem y = ctx.k_scale(v, ctx.f_inv(g.values[j]));
        CHECK(incident(ctx, affine_point(y), l));
        CHECK(incident(ctx, affine_point(K_ZERO), l));
    }
}

TEST_CASE("translation") {
    std::mt19937_64 rng(0x5eed0103);
    const auto ctx = FieldCtx::make(3);
    const PointSet H = points_from_g(ctx, const_table(ctx, F_ONE));
    CHECK(keys_of(ctx, translate(ctx, H, K_ZERO)) == keys_of(ctx, H));
    for (int it = 0; it < 20; ++it) {
        const KElem b = random_kelem(ctx, rng);
        const PointSet t1 = translate(ctx, H, b);
        CHECK(keys_of(ctx, translate(ctx, t1, b)) == keys_of(ctx, H));
        CHECK(check_geometric(ctx, t1).verdict);  // affine maps preserve the property
    }
    const PointSet with_inf = translation_hyperoval_q8(ctx);
    CHECK_THROWS_AS(translate(ctx, with_inf, K_ONE, /*strict=*/true), std::invalid_argument);
}

TEST_CASE("extract_g on scaled circles") {
    const auto ctx = FieldCtx::make(3);
    // S u {0}: g == 1
    {
        const auto er = extract_g(ctx, points_from_g(ctx, const_table(ctx, F_ONE)));
        REQUIRE(er.ok());
        for (const FElem& v : er.table->values) CHECK(v == F_ONE);
    }
    // {lambda u} u {0}: g == 1/lambda
    for (std::uint32_t l = 1; l < ctx.q(); ++l) {
        std::vector<ProjPointK> pts{affine_point(K_ZERO)};
        for (const KElem& u : ctx.unit_circle()) pts.push_back(affine_point(ctx.k_scale(u, FElem{l})));
        const auto er = extract_g(ctx, make_point_set(ctx, std::move(pts)));
        REQUIRE(er.ok());
        for (const FElem& v : er.table->values) CHECK(v == ctx.f_inv(FElem{l}));
    }
}

TEST_CASE("extract_g/points_from_g round trips") {
    std::mt19937_64 rng(0x5eed0104);
    const auto ctx = FieldCtx::make(3);
    // tables -> points -> tables
    for (int it = 0; it < 100; ++it) {
        GFunctionTable g;
        for (std::uint32_t j = 0; j <= ctx.q(); ++j) g.values.push_back(random_felem(ctx, rng));
        const auto er = extract_g(ctx, points_from_g(ctx, g));
        REQUIRE(er.ok());
        CHECK(er.table->values == g.values);
    }
    // the q=8 translation set contains 0 and reconstructs exactly
    const PointSet H = translation_hyperoval_q8(ctx);
    const auto er = extract_g(ctx, H);
    REQUIRE(er.ok());
    CHECK(keys_of(ctx, points_from_g(ctx, *er.table)) == keys_of(ctx, H));
}

TEST_CASE("extract_g validation and collision witness") {
    const auto ctx = FieldCtx::make(3);
    const PointSet circle = points_from_g(ctx, const_table(ctx, F_ONE));

    // 0 removed
    std::vector<ProjPointK> no_zero;
    for (const auto& p : circle.pts)
        if (p.z != K_ZERO) no_zero.push_back(p);
    no_zero.push_back(affine_point(ctx.k_scale(K_ONE, FElem{3})));
    CHECK_THROWS_AS(extract_g(ctx, make_point_set(ctx, no_zero)), std::invalid_argument);

    // two points in direction 1: {1} and {3} say
    std::vector<ProjPointK> coll = circle.pts;
    for (auto& p : coll)
        if (p.z == ctx.unit_circle()[1]) p = affine_point(ctx.k_scale(K_ONE, FElem{3}));
    const auto er = extract_g(ctx, make_point_set(ctx, coll));
    CHECK(!er.ok());
    REQUIRE(er.collision.has_value());
    CHECK(er.collision->direction == K_ONE);
}

TEST_CASE("points_from_g infinite points") {
    const auto ctx = FieldCtx::make(3);
    GFunctionTable g = const_table(ctx, F_ONE);
    g.values[4] = F_ZERO;
    const PointSet H = points_from_g(ctx, g);
    CHECK(H.size() == ctx.q() + 2);
    std::uint32_t inf = 0;
    for (const auto& p : H.pts)
        if (p.infinite) ++inf;
    CHECK(inf == 1);
}

TEST_CASE("normalize_g") {
    std::mt19937_64 rng(0x5eed0105);
    const auto ctx = FieldCtx::make(3);

    // already nonvanishing: c = 0
    const auto r1 = normalize_g(ctx, const_table(ctx, F_ONE));
    REQUIRE(r1.found);
    CHECK(r1.c == K_ZERO);
    CHECK(r1.table.values == const_table(ctx, F_ONE).values);

    // g(u) = <b,u> + 1: adding <b,u> back cancels to the constant 1
    for (int it = 0; it < 20; ++it) {
        const KElem b = random_kelem_nonzero(ctx, rng);
        GFunctionTable g;
        for (const KElem& u : ctx.unit_circle())
            g.values.push_back(FieldCtx::f_add(ctx.bform(b, u), F_ONE));
        GFunctionTable cancelled;
        for (std::uint32_t j = 0; j <= ctx.q(); ++j)
            cancelled.values.push_back(
                FieldCtx::f_add(g.values[j], ctx.bform(b, ctx.unit_circle()[j])));
        CHECK(cancelled.values == const_table(ctx, F_ONE).values);
        // the scan finds some normalizer and its output never vanishes
        const auto r = normalize_g(ctx, g);
        REQUIRE(r.found);
        CHECK(r.table.nonvanishing());
        for (std::uint32_t j = 0; j <= ctx.q(); ++j)
            CHECK(r.table.values[j] ==
                  FieldCtx::f_add(g.values[j], ctx.bform(r.c, ctx.unit_circle()[j])));
    }

    // vanishing fixture: normalized set has no infinite points
    const auto er = extract_g(ctx, translation_hyperoval_q8(ctx));
    REQUIRE(er.ok());
    CHECK(!er.table->nonvanishing());
    const auto r2 = normalize_g(ctx, *er.table);
    REQUIRE(r2.found);
    for (const auto& p : points_from_g(ctx, r2.table).pts) CHECK(!p.infinite);

    // exactly linear tables admit no normalizer
    for (int it = 0; it < 10; ++it) {
        const KElem c0 = random_kelem(ctx, rng);
        GFunctionTable g;
        for (const KElem& u : ctx.unit_circle()) g.values.push_back(ctx.bform(c0, u));
        CHECK(!normalize_g(ctx, g).found);
    }
}

}  // TEST_SUITE
