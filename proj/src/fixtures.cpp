#include "ovaline/fixtures.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace ovaline {

const FieldCtx& fixture_context(std::uint32_t q) {
    static std::mutex mu;
    static std::map<std::uint32_t, FieldCtx> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(q);
    if (it != cache.end()) return it->second;
    if (q < 4 || (q & (q - 1)) != 0) throw std::invalid_argument("q must be a power of two >= 4");
    unsigned m = 0;
    for (std::uint32_t v = q; v > 1; v >>= 1) ++m;
    return cache.emplace(q, FieldCtx::make(m)).first->second;
}

namespace {

GCoeffs constant_one_coeffs(const FieldCtx& ctx) {
    GCoeffs g{std::vector<KElem>(ctx.q() + 1, K_ZERO)};
    g.a[0] = K_ONE;
    return g;
}

PointSet monomial_opoly_set(const FieldCtx& ctx, std::uint32_t degree) {
    std::vector<FElem> f(degree + 1, F_ZERO);
    f[degree] = F_ONE;
    return points_h_to_k(ctx, opoly_points(ctx, f));
}

// Ten points {0} u {1, lambda, mu} x {1, w, w^2} with w of order 3 on the
// unit circle and 1 + lambda^3 + mu^3 = 0; Vandermonde but not a hyperoval.
PointSet vandermonde_counterexample_q8(const FieldCtx& ctx) {
    FElem lambda{}, mu{};
    bool found = false;
    for (std::uint32_t l = 1; l < ctx.q() && !found; ++l) {
        for (std::uint32_t mm = 1; mm < ctx.q() && !found; ++mm) {
            const FElem s = FieldCtx::f_add(
                F_ONE, FieldCtx::f_add(ctx.f_pow(FElem{l}, 3), ctx.f_pow(FElem{mm}, 3)));
            if (s == F_ZERO) {
                lambda = FElem{l};
                mu = FElem{mm};
                found = true;
            }
        }
    }
    if (!found) throw std::logic_error("no (lambda, mu) with 1 + lambda^3 + mu^3 = 0");

    const KElem w = ctx.k_pow(ctx.unit_circle()[1], (ctx.q() + 1) / 3);
    std::vector<ProjPointK> pts{affine_point(K_ZERO)};
    for (const FElem s : {F_ONE, lambda, mu}) {
        for (const KElem& root : {K_ONE, w, ctx.k_mul(w, w)}) {
            pts.push_back(affine_point(ctx.k_scale(root, s)));
        }
    }
    return make_point_set(ctx, std::move(pts));
}

// g(u) = u^16 + w u^12 + w u^11 + w u^6 + w u^5 + u + 1 at q = 16 with
// w^3 = 1, w != 1 (w = 1 does not reproduce the stated power sums). The two
// order-3 elements are Frobenius conjugates; the smaller encoding is used.
GCoeffs power_sum_counterexample_q16(const FieldCtx& ctx) {
    KElem w{};
    bool found = false;
    for (std::uint64_t enc = 2; enc < ctx.k_size(); ++enc) {
        const KElem z = ctx.k_decode(enc);
        if (z != K_ONE && ctx.k_pow(z, 3) == K_ONE) {
            w = z;
            found = true;
            break;
        }
    }
    if (!found) throw std::logic_error("no element of order 3 in K");

    GCoeffs g{std::vector<KElem>(ctx.q() + 1, K_ZERO)};
    g.a[16] = K_ONE;
    g.a[12] = w;
    g.a[11] = w;
    g.a[6] = w;
    g.a[5] = w;
    g.a[1] = K_ONE;
    g.a[0] = K_ONE;
    return g;
}

}  // namespace

const std::vector<Fixture>& builtin_fixtures() {
    static const std::vector<Fixture> fixtures = [] {
        std::vector<Fixture> fs;
        for (std::uint32_t q : {4u, 8u, 16u, 32u}) {
            fs.push_back(Fixture{"regular_q" + std::to_string(q), q, "classical construction",
                                 constant_one_coeffs(fixture_context(q)), true});
        }
        fs.push_back(Fixture{"conic_q4", 4, "classical construction",
                             monomial_opoly_set(fixture_context(4), 2), true});
        fs.push_back(Fixture{"translation_q8", 8, "classical construction",
                             monomial_opoly_set(fixture_context(8), 4), true});
        fs.push_back(Fixture{"translation_q16", 16, "classical construction",
                             monomial_opoly_set(fixture_context(16), 8), true});
        fs.push_back(Fixture{"segre_q32", 32, "classical construction",
                             monomial_opoly_set(fixture_context(32), 6), true});
        fs.push_back(Fixture{"identity_opoly_q8", 8, "classical construction",
                             monomial_opoly_set(fixture_context(8), 1), false});
        fs.push_back(Fixture{"frobenius_sq_opoly_q16", 16, "classical construction",
                             monomial_opoly_set(fixture_context(16), 4), false});
        fs.push_back(Fixture{"vandermonde_not_hyperoval_q8", 8, "paper example",
                             vandermonde_counterexample_q8(fixture_context(8)), false});
        fs.push_back(Fixture{"power_sum_gap_q16", 16, "paper example",
                             power_sum_counterexample_q16(fixture_context(16)), false});
        return fs;
    }();
    return fixtures;
}

FixtureCheck check_fixture(const Fixture& f) {
    const FieldCtx& ctx = fixture_context(f.q);
    FixtureCheck r;
    r.name = f.name;
    r.expected = f.expected_verdict;
    if (const GCoeffs* g = std::get_if<GCoeffs>(&f.payload)) {
        validate_gcoeffs(ctx, *g);
        r.outcome.report = verify_all(ctx, g_coeffs_to_table(ctx, *g));
    } else {
        r.outcome = verify_point_set(ctx, std::get<PointSet>(f.payload));
    }
    r.actual = r.outcome.report.verdict;
    r.ok = r.actual == r.expected && r.outcome.report.unanimous;
    return r;
}

}  // namespace ovaline
