#pragma once

#include <cstdint>
#include <random>

#include "ovaline/field.hpp"

namespace ovaline::test {

// Deterministic helpers; plain modulo keeps draws reproducible across
// standard libraries.
inline std::uint64_t draw(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

inline FElem random_felem(const FieldCtx& ctx, std::mt19937_64& rng) {
    return FElem{std::uint32_t(draw(rng, ctx.q()))};
}

inline FElem random_felem_nonzero(const FieldCtx& ctx, std::mt19937_64& rng) {
    return FElem{std::uint32_t(1 + draw(rng, ctx.q() - 1))};
}

inline KElem random_kelem(const FieldCtx& ctx, std::mt19937_64& rng) {
    return ctx.k_decode(draw(rng, ctx.k_size()));
}

inline KElem random_kelem_nonzero(const FieldCtx& ctx, std::mt19937_64& rng) {
    return ctx.k_decode(1 + draw(rng, ctx.k_size() - 1));
}

}  // namespace ovaline::test
