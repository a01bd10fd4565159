#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

namespace ovaline {

// Element of the base field F = GF(2^m); bit i holds the coefficient of t^i
// in the polynomial basis defined by the field context's modulus.
struct FElem {
    std::uint32_t bits = 0;

    friend constexpr bool operator==(FElem a, FElem b) { return a.bits == b.bits; }
    friend constexpr bool operator!=(FElem a, FElem b) { return a.bits != b.bits; }
    friend constexpr bool operator<(FElem a, FElem b) { return a.bits < b.bits; }
};

// Element z = re + im*i of the quadratic extension K = F[i], i^2 = i + delta.
// z lies in F exactly when im = 0.
struct KElem {
    FElem re{};
    FElem im{};

    friend constexpr bool operator==(KElem a, KElem b) { return a.re == b.re && a.im == b.im; }
    friend constexpr bool operator!=(KElem a, KElem b) { return !(a == b); }
};

inline constexpr FElem F_ZERO{0};
inline constexpr FElem F_ONE{1};
inline constexpr KElem K_ZERO{};
inline constexpr KElem K_ONE{{1}, {0}};

// Unique factorization z = lambda * u with lambda in F* and u on the unit circle.
struct PolarForm {
    FElem lambda;
    KElem u;
};

// Immutable description of the tower F = GF(2^m) < K = GF(2^{2m}).
// All operations are pure functions of (context, inputs); contexts are safe
// to share across threads after construction.
class FieldCtx {
public:
    // f_poly is a bit-encoded irreducible of degree m over GF(2) (bit m set).
    // When omitted, the smallest irreducible by bit encoding is used, and
    // delta defaults to the smallest element of absolute trace 1 (which is 1
    // whenever m is odd). Supported range: 2 <= m <= 16.
    static FieldCtx make(unsigned m,
                         std::optional<std::uint32_t> f_poly = std::nullopt,
                         std::optional<FElem> delta = std::nullopt);

    unsigned m() const { return m_; }
    std::uint32_t q() const { return q_; }
    std::uint64_t k_order() const { return k_order_; }  // q^2 - 1
    std::uint32_t f_poly() const { return f_poly_; }
    FElem delta() const { return delta_; }
    KElem i_elem() const { return KElem{F_ZERO, F_ONE}; }

    // F arithmetic
    static FElem f_add(FElem a, FElem b) { return FElem{a.bits ^ b.bits}; }
    FElem f_mul(FElem a, FElem b) const;
    FElem f_sq(FElem a) const { return f_mul(a, a); }
    FElem f_inv(FElem a) const;
    FElem f_pow(FElem a, std::uint64_t e) const;
    FElem f_sqrt(FElem a) const;
    unsigned abs_trace(FElem a) const;  // trace down to GF(2); returns 0 or 1

    // K arithmetic
    static KElem k_add(KElem a, KElem b) { return KElem{f_add(a.re, b.re), f_add(a.im, b.im)}; }
    KElem k_mul(KElem a, KElem b) const;
    KElem k_sq(KElem a) const;
    KElem k_scale(KElem a, FElem s) const { return KElem{f_mul(a.re, s), f_mul(a.im, s)}; }
    KElem k_conj(KElem a) const { return KElem{f_add(a.re, a.im), a.im}; }
    KElem k_inv(KElem a) const;
    KElem k_pow(KElem a, std::uint64_t e) const;
    KElem k_sqrt(KElem a) const;

    FElem trace(KElem a) const { return a.im; }
    FElem norm(KElem a) const;
    // <a,b> = T(a * conj(b)); alternating, symmetric, F-valued.
    FElem bform(KElem a, KElem b) const;
    PolarForm polar(KElem z) const;

    // <a,b>^k rewritten as a sum of brackets of powers, with binomial
    // coefficients reduced mod 2 (C(k,i) odd iff the bits of i are contained
    // in the bits of k). Intended for 1 <= k <= q.
    FElem bracket_pow_expansion(KElem a, KElem b, std::uint64_t k) const;

    // The q+1 elements of norm 1, ordered as successive powers of a fixed
    // generator of the circle subgroup; element 0 is always 1.
    const std::vector<KElem>& unit_circle() const { return unit_circle_; }
    bool in_s(KElem z) const { return s_index(z).has_value(); }
    std::optional<std::uint32_t> s_index(KElem z) const;

    // Bit encodings: F elements are their bit vectors; K elements pack the
    // imaginary half above the real half, so F sorts first.
    std::uint64_t k_size() const { return std::uint64_t(q_) * q_; }
    std::uint32_t k_encode(KElem z) const { return (z.im.bits << m_) | z.re.bits; }
    KElem k_decode(std::uint64_t enc) const {
        return KElem{FElem{std::uint32_t(enc) & (q_ - 1)}, FElem{std::uint32_t(enc >> m_)}};
    }

private:
    FieldCtx() = default;
    void build_unit_circle();

    unsigned m_ = 0;
    std::uint32_t q_ = 0;
    std::uint32_t f_poly_ = 0;
    FElem delta_{};
    std::uint64_t k_order_ = 0;
    std::vector<KElem> unit_circle_;
    std::unordered_map<std::uint32_t, std::uint32_t> s_index_;
};

// Smallest irreducible polynomial of degree m over GF(2), by bit encoding.
std::uint32_t default_field_poly(unsigned m);

// Irreducibility test for a bit-encoded polynomial of the given degree.
bool gf2_irreducible(std::uint64_t poly, unsigned degree);

}  // namespace ovaline
