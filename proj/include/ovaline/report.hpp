#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "ovaline/field.hpp"
#include "ovaline/plane.hpp"

namespace ovaline {

enum class Method {
    geometric,
    even_solution,
    power_sum_d,
    bracket_power_sum,
    coeff,
    coeff_rho,
    gram,
    vandermonde,
    super_vandermonde,
};

const char* method_name(Method m);

// Failing power-sum exponent (d for the canonical-set criterion, k for the
// Vandermonde tests).
struct WitnessExponent {
    std::uint64_t d = 0;
};

// Line with an odd or > 2 intersection count.
struct WitnessLine {
    LineK line;
    std::uint32_t count = 0;
};

// b with an odd number of solutions of g(u) + <u,b> = 0.
struct WitnessB {
    KElem b;
    std::uint32_t count = 0;
};

// Pair (i,k) whose tested coefficient is nonzero; index = k - 2i.
struct WitnessCoeff {
    std::uint32_t i = 0;
    std::uint32_t k = 0;
    std::uint32_t index = 0;
};

// Gram row i whose k-th power row sum is nonzero.
struct WitnessRowSum {
    std::uint32_t row = 0;
    std::uint32_t k = 0;
};

// Direction v whose bracket power sum fails at exponent k.
struct WitnessBracket {
    KElem v;
    std::uint32_t k = 0;
};

struct WitnessMessage {
    std::string text;
};

using Witness = std::variant<std::monostate, WitnessExponent, WitnessLine, WitnessB,
                             WitnessCoeff, WitnessRowSum, WitnessBracket, DirectionCollision,
                             WitnessMessage>;

// Verdict of a single verifier; a false verdict always carries a witness.
struct CriterionReport {
    Method method{};
    bool verdict = false;
    Witness witness{};
};

// Aggregate of the verifiers run by verify_all. The criteria are provably
// equivalent, so any split vote is a defect, not a tie.
struct ConsensusReport {
    bool normalize_failed = false;
    KElem normalize_c{};
    std::vector<CriterionReport> methods;
    bool verdict = false;    // unanimous-true
    bool unanimous = false;  // all methods returned the same verdict
};

}  // namespace ovaline
