#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ovaline/field.hpp"
#include "ovaline/plane.hpp"
#include "ovaline/report.hpp"

namespace ovaline {

// Polynomial over K of degree <= q, with arithmetic modulo x^{q+1} - 1.
// Coefficient i multiplies x^i; the vector always has exactly q+1 entries.
struct CircPoly {
    std::vector<KElem> c;
};

CircPoly circ_zero(const FieldCtx& ctx);
CircPoly circ_const(const FieldCtx& ctx, KElem v);
CircPoly circ_monomial(const FieldCtx& ctx, std::uint32_t degree, KElem v);
CircPoly circ_add(const FieldCtx& ctx, const CircPoly& a, const CircPoly& b);
CircPoly circ_mul(const FieldCtx& ctx, const CircPoly& a, const CircPoly& b);
CircPoly circ_pow(const FieldCtx& ctx, const CircPoly& a, std::uint64_t e);
KElem circ_eval(const FieldCtx& ctx, const CircPoly& p, KElem z);

// Unique polynomial of degree <= q matching the given values on S:
// coefficient i equals the sum over u of u^{-i} h(u).
CircPoly interpolate_on_s(const FieldCtx& ctx, std::span<const KElem> values);

// Expands the product of (x - u) over the unit circle and checks it equals
// x^{q+1} + 1, i.e. all intermediate elementary symmetric functions vanish.
bool elementary_symmetric_check(const FieldCtx& ctx);

// Coefficient form a_0..a_q of a g-function. Invariants: a_0 lies in F and
// a_{q+1-i} = a_i^q for 1 <= i <= q/2, which together force the values on S
// into F.
struct GCoeffs {
    std::vector<KElem> a;
};

void validate_gcoeffs(const FieldCtx& ctx, const GCoeffs& g);
GCoeffs g_table_to_coeffs(const FieldCtx& ctx, const GFunctionTable& table);
GFunctionTable g_coeffs_to_table(const FieldCtx& ctx, const GCoeffs& g);

// The x^{k-2i} coefficient of g^{q-1-k} mod (x^{q+1}-1) vanishes for every
// pair (i,k); the conjugate x^{2i-k+q+1} coefficient is asserted to match as
// its q-th power along the way. Requires a nonvanishing value table.
CriterionReport check_coeff_criterion(const FieldCtx& ctx, const GCoeffs& g);

// Same criterion through rho = 1/g: the x^{k-2i} coefficient of rho^k must
// vanish for every pair (i,k). rho is given by its (nonzero) values on S.
CriterionReport check_coeff_criterion_rho(const FieldCtx& ctx, std::span<const FElem> rho_values);

// Necessary support condition: a_t = 0 for every 1 <= t <= q with
// t mod 4 in {2,3}. Used as a search prefilter.
bool corollary_support_filter(const FieldCtx& ctx, const GCoeffs& g);

}  // namespace ovaline
