#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "ovaline/criteria.hpp"
#include "ovaline/gpoly.hpp"

namespace ovaline {

// Named verification instance with a stored expected verdict.
struct Fixture {
    std::string name;
    std::uint32_t q = 0;
    std::string source;  // "paper example", "classical construction" or "search hit"
    std::variant<GCoeffs, PointSet> payload;
    bool expected_verdict = false;
};

// Shared context with the default modulus and delta for the given q.
const FieldCtx& fixture_context(std::uint32_t q);

// The built-in corpus: regular hyperovals at q = 4..32, translation and
// Segre hyperovals through the o-polynomial pipeline, the two counterexample
// sets, and two non-hyperoval o-polynomial candidates.
const std::vector<Fixture>& builtin_fixtures();

struct FixtureCheck {
    std::string name;
    bool expected = false;
    bool actual = false;
    bool ok = false;
    VerifyOutcome outcome;
};

FixtureCheck check_fixture(const Fixture& f);

// Extra fixtures from *.json files in a directory (the OVALINE_FIXTURES
// mechanism); see the README for the schema.
std::vector<Fixture> fixtures_from_directory(const std::string& dir);

}  // namespace ovaline
