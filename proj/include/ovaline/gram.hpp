#pragma once

#include <cstdint>
#include <vector>

#include "ovaline/field.hpp"
#include "ovaline/plane.hpp"
#include "ovaline/report.hpp"

namespace ovaline {

// Dense matrix over F.
struct FMatrix {
    std::uint32_t rows = 0;
    std::uint32_t cols = 0;
    std::vector<FElem> a;

    static FMatrix zero(std::uint32_t r, std::uint32_t c) {
        return FMatrix{r, c, std::vector<FElem>(std::size_t(r) * c, F_ZERO)};
    }
    FElem& at(std::uint32_t r, std::uint32_t c) { return a[std::size_t(r) * cols + c]; }
    const FElem& at(std::uint32_t r, std::uint32_t c) const { return a[std::size_t(r) * cols + c]; }

    friend bool operator==(const FMatrix&, const FMatrix&) = default;
};

// Dense polynomial over F; coefficient i multiplies x^i. Normalized form has
// no trailing zero coefficients (the zero polynomial is empty).
using FPoly = std::vector<FElem>;

FPoly fpoly_trim(FPoly p);
int fpoly_deg(const FPoly& p);  // -1 for the zero polynomial
FPoly fpoly_add(const FPoly& a, const FPoly& b);
FPoly fpoly_mul(const FieldCtx& ctx, const FPoly& a, const FPoly& b);
// Euclidean division; divisor must be nonzero.
void fpoly_divmod(const FieldCtx& ctx, const FPoly& a, const FPoly& b, FPoly& quot, FPoly& rem);
FPoly fpoly_gcd(const FieldCtx& ctx, FPoly a, FPoly b);  // monic
FPoly fpoly_lcm(const FieldCtx& ctx, const FPoly& a, const FPoly& b);
FPoly fpoly_make_monic(const FieldCtx& ctx, FPoly p);
FMatrix fpoly_eval_matrix(const FieldCtx& ctx, const FPoly& p, const FMatrix& m);

FMatrix mat_mul(const FieldCtx& ctx, const FMatrix& a, const FMatrix& b);
std::vector<FElem> mat_apply(const FieldCtx& ctx, const FMatrix& m, const std::vector<FElem>& v);

// (q+1) x (q+1) matrix of <y_i, y_j>^k over the points of H \ {0}, in the
// set's own order. Requires 0 in H and every other point affine.
FMatrix gram_matrix(const FieldCtx& ctx, const PointSet& set, std::uint64_t k);

// Row sums of every power matrix vanish, 1 <= k <= q. The required
// no-two-points-on-a-line-through-0 condition is checked first; a collision
// is an automatic false with the collinear pair as witness.
CriterionReport check_gram_criterion(const FieldCtx& ctx, const PointSet& set);

std::uint32_t rank_f(const FieldCtx& ctx, FMatrix m);
FPoly char_poly(const FieldCtx& ctx, FMatrix m);
FPoly min_poly(const FieldCtx& ctx, const FMatrix& m);

struct SpectrumReport {
    FElem trace{};
    std::uint32_t rank = 0;
    std::uint32_t kernel_dim = 0;
    FElem mu0{};
    FPoly charpoly;
    FPoly minpoly;
    bool trace_zero = false;
    bool char_shape_ok = false;  // x^{q-1} (x + mu0)^2
    bool min_shape_ok = false;   // x (x + mu0)
    std::uint32_t eigen_checked = 0;
    bool eigen_ok = false;       // all q-1 stated kernel vectors annihilated
    bool all_ok() const {
        return trace_zero && rank == 2 && char_shape_ok && min_shape_ok && eigen_ok;
    }
};

// Spectral profile of the Gram matrix of a hyperoval through 0: the set is
// rescaled so that 1 is a point, the unique point on the i-axis is moved
// last and 1 second-to-last, and the stated rank/polynomial/eigenvector
// facts are all verified. Requires check_gram_criterion to pass.
SpectrumReport gram_spectrum_report(const FieldCtx& ctx, const PointSet& set);

}  // namespace ovaline
