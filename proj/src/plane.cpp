#include "ovaline/plane.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace ovaline {

ProjPointK affine_point(KElem z) { return ProjPointK{false, z}; }

ProjPointK infinite_point(const FieldCtx& ctx, KElem direction) {
    if (direction == K_ZERO) throw std::invalid_argument("infinite point needs a nonzero direction");
    return ProjPointK{true, ctx.polar(direction).u};
}

std::uint64_t point_key(const FieldCtx& ctx, const ProjPointK& p) {
    return (std::uint64_t(p.infinite ? 1 : 0) << 40) | ctx.k_encode(p.z);
}

LineK line_k(const FieldCtx& ctx, KElem alpha, FElem beta) {
    if (alpha == K_ZERO) {
        if (beta == F_ZERO) throw std::invalid_argument("line coordinates must not both vanish");
        return line_at_infinity();
    }
    const PolarForm p = ctx.polar(alpha);
    return LineK{p.u, ctx.f_mul(beta, ctx.f_inv(p.lambda))};
}

bool incident(const FieldCtx& ctx, const ProjPointK& p, const LineK& l) {
    if (p.infinite) return ctx.bform(l.alpha, p.z) == F_ZERO;
    return FieldCtx::f_add(ctx.bform(l.alpha, p.z), l.beta) == F_ZERO;
}

LineK line_through(const FieldCtx& ctx, const ProjPointK& a, const ProjPointK& b) {
    if (a == b) throw std::invalid_argument("line_through needs two distinct points");
    if (a.infinite && b.infinite) return line_at_infinity();
    if (a.infinite) return line_through(ctx, b, a);
    // a is affine here
    if (b.infinite) return LineK{b.z, ctx.bform(b.z, a.z)};
    const KElem dir = FieldCtx::k_add(a.z, b.z);
    const KElem u = ctx.polar(dir).u;
    return LineK{u, ctx.bform(u, a.z)};
}

ProjPointH point_h(const FieldCtx& ctx, FElem x, FElem y, FElem z) {
    if (x == F_ZERO && y == F_ZERO && z == F_ZERO)
        throw std::invalid_argument("projective point must be nonzero");
    FElem s;
    if (z != F_ZERO)
        s = z;
    else if (y != F_ZERO)
        s = y;
    else
        s = x;
    const FElem inv = ctx.f_inv(s);
    return ProjPointH{ctx.f_mul(x, inv), ctx.f_mul(y, inv), ctx.f_mul(z, inv)};
}

bool incident_h(const FieldCtx& ctx, const ProjPointH& p, FElem a, FElem b, FElem c) {
    FElem acc = ctx.f_mul(a, p.x);
    acc = FieldCtx::f_add(acc, ctx.f_mul(b, p.y));
    acc = FieldCtx::f_add(acc, ctx.f_mul(c, p.z));
    return acc == F_ZERO;
}

ProjPointK homog_to_k(const FieldCtx& ctx, const ProjPointH& p) {
    const KElem w{p.x, p.y};
    if (p.z != F_ZERO) return affine_point(w);  // canonical form has z = 1
    return infinite_point(ctx, w);
}

ProjPointH k_to_homog(const FieldCtx& ctx, const ProjPointK& p) {
    // z = x + yi has x = <i,z> and y = <1,z>, i.e. the stored halves.
    if (!p.infinite) return point_h(ctx, p.z.re, p.z.im, F_ONE);
    return point_h(ctx, p.z.re, p.z.im, F_ZERO);
}

PointSet make_point_set(const FieldCtx& ctx, std::vector<ProjPointK> pts) {
    std::unordered_set<std::uint64_t> seen;
    for (const ProjPointK& p : pts) {
        if (p.infinite && !ctx.in_s(p.z))
            throw std::invalid_argument("infinite point direction not on the unit circle");
        if (!seen.insert(point_key(ctx, p)).second)
            throw std::invalid_argument("duplicate point in point set");
    }
    return PointSet{std::move(pts)};
}

bool contains_zero(const PointSet& set) {
    for (const ProjPointK& p : set.pts)
        if (!p.infinite && p.z == K_ZERO) return true;
    return false;
}

FElem opoly_eval(const FieldCtx& ctx, const std::vector<FElem>& f_coeffs, FElem t) {
    FElem acc = F_ZERO;
    for (auto it = f_coeffs.rbegin(); it != f_coeffs.rend(); ++it) {
        acc = FieldCtx::f_add(ctx.f_mul(acc, t), *it);
    }
    return acc;
}

std::vector<ProjPointH> opoly_points(const FieldCtx& ctx, const std::vector<FElem>& f_coeffs) {
    std::vector<ProjPointH> pts;
    pts.reserve(ctx.q() + 2);
    for (std::uint32_t v = 0; v < ctx.q(); ++v) {
        const FElem t{v};
        pts.push_back(point_h(ctx, t, opoly_eval(ctx, f_coeffs, t), F_ONE));
    }
    pts.push_back(point_h(ctx, F_ONE, F_ZERO, F_ZERO));
    pts.push_back(point_h(ctx, F_ZERO, F_ONE, F_ZERO));
    return pts;
}

PointSet points_h_to_k(const FieldCtx& ctx, const std::vector<ProjPointH>& pts) {
    std::vector<ProjPointK> out;
    out.reserve(pts.size());
    for (const ProjPointH& p : pts) out.push_back(homog_to_k(ctx, p));
    return make_point_set(ctx, std::move(out));
}

PointSet translate(const FieldCtx& ctx, const PointSet& set, KElem b, bool strict) {
    std::vector<ProjPointK> out;
    out.reserve(set.pts.size());
    for (const ProjPointK& p : set.pts) {
        if (p.infinite) {
            if (strict) throw std::invalid_argument("translate: infinite point present");
            out.push_back(p);
        } else {
            out.push_back(affine_point(FieldCtx::k_add(p.z, b)));
        }
    }
    return make_point_set(ctx, std::move(out));
}

ExtractResult extract_g(const FieldCtx& ctx, const PointSet& set) {
    const std::uint32_t q = ctx.q();
    if (set.size() != q + 2) throw std::invalid_argument("extract_g needs q+2 points");
    if (!contains_zero(set)) throw std::invalid_argument("extract_g needs 0 in the set");

    GFunctionTable table;
    table.values.assign(q + 1, F_ZERO);
    std::vector<std::optional<ProjPointK>> taken(q + 1);

    for (const ProjPointK& p : set.pts) {
        std::uint32_t idx;
        FElem value;
        if (p.infinite) {
            idx = *ctx.s_index(p.z);
            value = F_ZERO;
        } else {
            if (p.z == K_ZERO) continue;
            const PolarForm pf = ctx.polar(p.z);
            idx = *ctx.s_index(pf.u);
            value = ctx.f_inv(pf.lambda);
        }
        if (taken[idx]) {
            return ExtractResult{std::nullopt,
                                 DirectionCollision{*taken[idx], p, ctx.unit_circle()[idx]}};
        }
        taken[idx] = p;
        table.values[idx] = value;
    }
    return ExtractResult{std::move(table), std::nullopt};
}

PointSet points_from_g(const FieldCtx& ctx, const GFunctionTable& g) {
    const std::uint32_t q = ctx.q();
    if (g.values.size() != q + 1) throw std::invalid_argument("g table must have q+1 values");
    std::vector<ProjPointK> pts;
    pts.reserve(q + 2);
    for (std::uint32_t j = 0; j <= q; ++j) {
        const KElem u = ctx.unit_circle()[j];
        const FElem v = g.values[j];
        if (v == F_ZERO)
            pts.push_back(ProjPointK{true, u});
        else
            pts.push_back(affine_point(ctx.k_scale(u, ctx.f_inv(v))));
    }
    pts.push_back(affine_point(K_ZERO));
    return make_point_set(ctx, std::move(pts));
}

NormalizeResult normalize_g(const FieldCtx& ctx, const GFunctionTable& g) {
    const std::uint32_t q = ctx.q();
    if (g.values.size() != q + 1) throw std::invalid_argument("g table must have q+1 values");
    const auto& circle = ctx.unit_circle();
    for (std::uint64_t enc = 0; enc < ctx.k_size(); ++enc) {
        const KElem c = ctx.k_decode(enc);
        GFunctionTable out;
        out.values.resize(q + 1);
        bool ok = true;
        for (std::uint32_t j = 0; j <= q; ++j) {
            const FElem v = FieldCtx::f_add(g.values[j], ctx.bform(c, circle[j]));
            if (v == F_ZERO) {
                ok = false;
                break;
            }
            out.values[j] = v;
        }
        if (ok) return NormalizeResult{true, std::move(out), c};
    }
    return NormalizeResult{};
}

}  // namespace ovaline
