#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "ovaline/field.hpp"
#include "ovaline/plane.hpp"
#include "ovaline/report.hpp"

namespace ovaline {

// The index pairs (i,k) with 1 <= k <= q-2, 0 <= i <= floor((k-1)/2) and the
// bits of i contained in the bits of k; the exponents d = iq + k - i they
// generate; and the canonical (minimal) representatives of those exponents
// under doubling mod q^2 - 1.
struct ExponentSets {
    std::uint32_t q = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> m_pairs;  // (i, k)
    std::vector<std::uint64_t> d;
    std::vector<std::uint64_t> d_cal;
};

// q must be a power of two in [4, 4096].
ExponentSets compute_exponent_sets(std::uint32_t q);

// pi_k = sum of y^k over the given elements, k >= 1.
KElem power_sum(const FieldCtx& ctx, std::span<const KElem> points, std::uint64_t k);

// A set of t distinct elements is Vandermonde when pi_k = 0 for
// 1 <= k <= t-2, and super-Vandermonde when additionally pi_{t-1} = 0.
CriterionReport is_vandermonde(const FieldCtx& ctx, std::span<const KElem> elems);
CriterionReport is_super_vandermonde(const FieldCtx& ctx, std::span<const KElem> elems);

// pi_d = 0 over H \ {0} for every canonical exponent d. H must be of the
// shape {u/g(u)} u {0} with g nonvanishing (validated via extract_g).
CriterionReport check_power_sum(const FieldCtx& ctx, const PointSet& set);

// g(u) + <u,b> = 0 has an even number of solutions u for every b in K.
CriterionReport check_even_solution(const FieldCtx& ctx, const GFunctionTable& g);

// Every one of the q^2+q+1 lines meets the q+2 points in 0 or 2 points.
CriterionReport check_geometric(const FieldCtx& ctx, const PointSet& set);

// sum over u of <v, u/g(u)>^k = 0 for every v in S and 1 <= k <= q.
// Quadratic cost; kept as a cross-check rather than a default verifier.
CriterionReport check_bracket_power_sum(const FieldCtx& ctx, const GFunctionTable& g);

struct VerifyOptions {
    bool include_bracket = false;
};

// Normalizes g to a nonvanishing equivalent, then runs the geometric,
// even-solution, power-sum, coefficient and Gram verifiers (plus the bracket
// power sum cross-check on request). When no normalizer exists only the
// geometric verifier can run; such tables are never hyperovals.
ConsensusReport verify_all(const FieldCtx& ctx, const GFunctionTable& g,
                           const VerifyOptions& opts = {});

struct VerifyOutcome {
    ConsensusReport report;
    std::optional<DirectionCollision> collision;
    std::optional<KElem> translated_by;
};

// Point-set entry to verification: translates 0 into the set when absent,
// extracts g, and falls back to the geometric + Gram verdicts when the
// extraction finds a direction collision (a certified 3-point line).
VerifyOutcome verify_point_set(const FieldCtx& ctx, const PointSet& set,
                               const VerifyOptions& opts = {});

}  // namespace ovaline
