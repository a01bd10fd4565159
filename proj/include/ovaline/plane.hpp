#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ovaline/field.hpp"

namespace ovaline {

// Point of PG(2,q) in the K-model: either an affine element z of K (the
// point (z : 1)) or the point at infinity in a unit-circle direction u
// (the point (u : 0)).
struct ProjPointK {
    bool infinite = false;
    KElem z{};  // affine value, or the S-representative of the direction

    friend constexpr bool operator==(const ProjPointK& a, const ProjPointK& b) {
        return a.infinite == b.infinite && a.z == b.z;
    }
};

ProjPointK affine_point(KElem z);
// Direction may be any nonzero element; it is canonicalized into S.
ProjPointK infinite_point(const FieldCtx& ctx, KElem direction);

// Sort/dedup key; infinite points order after all affine ones.
std::uint64_t point_key(const FieldCtx& ctx, const ProjPointK& p);

// Line [alpha : beta] = { (x:z) : <alpha,x> + beta z = 0 }, canonicalized so
// that alpha lies in S, or alpha = 0 and beta = 1 (the line at infinity).
struct LineK {
    KElem alpha{};
    FElem beta{};

    friend constexpr bool operator==(const LineK& a, const LineK& b) {
        return a.alpha == b.alpha && a.beta == b.beta;
    }
};

LineK line_k(const FieldCtx& ctx, KElem alpha, FElem beta);
inline LineK line_at_infinity() { return LineK{K_ZERO, F_ONE}; }

bool incident(const FieldCtx& ctx, const ProjPointK& p, const LineK& l);
LineK line_through(const FieldCtx& ctx, const ProjPointK& a, const ProjPointK& b);

// Point of PG(2,q) in homogeneous coordinates over F, scaled so the last
// nonzero coordinate is 1.
struct ProjPointH {
    FElem x{}, y{}, z{};

    friend constexpr bool operator==(const ProjPointH& a, const ProjPointH& b) {
        return a.x == b.x && a.y == b.y && a.z == b.z;
    }
};

ProjPointH point_h(const FieldCtx& ctx, FElem x, FElem y, FElem z);
bool incident_h(const FieldCtx& ctx, const ProjPointH& p, FElem a, FElem b, FElem c);

ProjPointK homog_to_k(const FieldCtx& ctx, const ProjPointH& p);
ProjPointH k_to_homog(const FieldCtx& ctx, const ProjPointK& p);

// Ordered set of distinct points.
struct PointSet {
    std::vector<ProjPointK> pts;

    std::size_t size() const { return pts.size(); }
};

// Validates pairwise distinctness (throws std::invalid_argument otherwise).
PointSet make_point_set(const FieldCtx& ctx, std::vector<ProjPointK> pts);

bool contains_zero(const PointSet& set);

// Graph of an o-polynomial candidate: {(t : f(t) : 1)} plus the two frame
// points (1:0:0) and (0:1:0); f given by coefficients over F, index = degree.
std::vector<ProjPointH> opoly_points(const FieldCtx& ctx, const std::vector<FElem>& f_coeffs);
FElem opoly_eval(const FieldCtx& ctx, const std::vector<FElem>& f_coeffs, FElem t);
PointSet points_h_to_k(const FieldCtx& ctx, const std::vector<ProjPointH>& pts);

// Pointwise translation z -> z + b of the affine points. Infinite points are
// left alone unless strict is set, in which case they are an error.
PointSet translate(const FieldCtx& ctx, const PointSet& set, KElem b, bool strict = false);

// Values of a function S -> F, indexed by unit-circle position.
struct GFunctionTable {
    std::vector<FElem> values;

    bool nonvanishing() const {
        for (const FElem& v : values)
            if (v == F_ZERO) return false;
        return true;
    }
};

// Witness for two points of H \ {0} sharing a direction: together with 0
// they certify a 3-point line, so the set cannot be a hyperoval.
struct DirectionCollision {
    ProjPointK first;
    ProjPointK second;
    KElem direction;
};

struct ExtractResult {
    std::optional<GFunctionTable> table;
    std::optional<DirectionCollision> collision;

    bool ok() const { return table.has_value(); }
};

// Reads the g-function off a set of the shape {u/g(u)} u {0}: the point with
// direction u and polar part lambda has g(u) = 1/lambda; a point at infinity
// in direction u has g(u) = 0. Requires 0 in the set and |set| = q+2.
ExtractResult extract_g(const FieldCtx& ctx, const PointSet& set);

// {u/g(u) : g(u) != 0} u {u_inf : g(u) = 0} u {0}.
PointSet points_from_g(const FieldCtx& ctx, const GFunctionTable& g);

struct NormalizeResult {
    bool found = false;
    GFunctionTable table;
    KElem c{};
};

// Replaces g by the equivalent function g + <c,.> with the first c (by bit
// encoding) that removes all zero values; returns c = 0 when g is already
// nonvanishing. The associated point sets are projectively equivalent. Fails
// only when g(u) = <c0,u> identically, which puts all affine points of
// H \ {0} on one line.
NormalizeResult normalize_g(const FieldCtx& ctx, const GFunctionTable& g);

}  // namespace ovaline
