#include "ovaline/field.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace ovaline {

namespace {

// GF(2)[t] helpers on bit-encoded polynomials.

std::uint64_t gf2_mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t f, unsigned deg) {
    std::uint64_t r = 0;
    while (b) {
        if (b & 1) r ^= a;
        b >>= 1;
        a <<= 1;
        if ((a >> deg) & 1) a ^= f;
    }
    return r;
}

std::uint64_t gf2_mod(std::uint64_t a, std::uint64_t f) {
    const int df = std::bit_width(f) - 1;
    while (a && int(std::bit_width(a)) - 1 >= df) {
        const int shift = (int(std::bit_width(a)) - 1) - df;
        a ^= f << shift;
    }
    return a;
}

std::uint64_t gf2_gcd(std::uint64_t a, std::uint64_t b) {
    while (b) {
        a = gf2_mod(a, b);
        std::swap(a, b);
    }
    return a;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> ps;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

}  // namespace

bool gf2_irreducible(std::uint64_t poly, unsigned degree) {
    if (degree == 0) return false;
    if ((poly >> degree) != 1) return false;  // must have exact degree
    if (degree == 1) return true;             // t and t+1
    if ((poly & 1) == 0) return false;        // divisible by t

    // x^{2^degree} must reduce to x ...
    std::uint64_t x = 2;
    std::uint64_t cur = x;
    for (unsigned i = 0; i < degree; ++i) cur = gf2_mulmod(cur, cur, poly, degree);
    if (cur != x) return false;

    // ... and x^{2^{degree/p}} - x must be coprime to poly for prime p | degree.
    for (std::uint64_t p : prime_factors(degree)) {
        const unsigned k = degree / unsigned(p);
        std::uint64_t y = x;
        for (unsigned i = 0; i < k; ++i) y = gf2_mulmod(y, y, poly, degree);
        y ^= x;
        if (y == 0 || gf2_gcd(y, poly) != 1) return false;
    }
    return true;
}

std::uint32_t default_field_poly(unsigned m) {
    for (std::uint64_t cand = (std::uint64_t(1) << m) | 1; cand < (std::uint64_t(2) << m); cand += 2) {
        if (gf2_irreducible(cand, m)) return std::uint32_t(cand);
    }
    throw std::logic_error("no irreducible polynomial found");  // unreachable
}

FieldCtx FieldCtx::make(unsigned m, std::optional<std::uint32_t> f_poly,
                        std::optional<FElem> delta) {
    if (m < 2 || m > 16) throw std::invalid_argument("field degree m must be in [2, 16]");

    FieldCtx ctx;
    ctx.m_ = m;
    ctx.q_ = std::uint32_t(1) << m;
    ctx.k_order_ = std::uint64_t(ctx.q_) * ctx.q_ - 1;

    const std::uint32_t f = f_poly ? *f_poly : default_field_poly(m);
    if ((f >> m) != 1) throw std::invalid_argument("f_poly must have degree exactly m");
    if (!gf2_irreducible(f, m)) throw std::invalid_argument("f_poly is reducible over GF(2)");
    ctx.f_poly_ = f;

    if (delta) {
        if (delta->bits >= ctx.q_) throw std::invalid_argument("delta out of range");
        if (ctx.abs_trace(*delta) != 1) throw std::invalid_argument("delta must have absolute trace 1");
        ctx.delta_ = *delta;
    } else {
        FElem d{0};
        while (d.bits < ctx.q_ && ctx.abs_trace(d) != 1) ++d.bits;
        if (d.bits >= ctx.q_) throw std::logic_error("no trace-1 element found");  // unreachable
        ctx.delta_ = d;
    }

    ctx.build_unit_circle();
    return ctx;
}

FElem FieldCtx::f_mul(FElem a, FElem b) const {
    std::uint32_t r = 0;
    std::uint32_t x = a.bits;
    std::uint32_t y = b.bits;
    while (y) {
        if (y & 1) r ^= x;
        y >>= 1;
        x <<= 1;
        if ((x >> m_) & 1) x ^= f_poly_;
    }
    return FElem{r};
}

FElem FieldCtx::f_pow(FElem a, std::uint64_t e) const {
    if (a == F_ZERO) return e == 0 ? F_ONE : F_ZERO;
    e %= (q_ - 1);
    FElem r = F_ONE;
    FElem base = a;
    while (e) {
        if (e & 1) r = f_mul(r, base);
        base = f_sq(base);
        e >>= 1;
    }
    return r;
}

FElem FieldCtx::f_inv(FElem a) const {
    if (a == F_ZERO) throw std::invalid_argument("inverse of zero in F");
    return f_pow(a, q_ - 2);
}

FElem FieldCtx::f_sqrt(FElem a) const {
    FElem r = a;
    for (unsigned i = 0; i + 1 < m_; ++i) r = f_sq(r);
    return r;
}

unsigned FieldCtx::abs_trace(FElem a) const {
    FElem acc = a;
    FElem cur = a;
    for (unsigned i = 1; i < m_; ++i) {
        cur = f_sq(cur);
        acc = f_add(acc, cur);
    }
    if (acc.bits > 1) throw std::logic_error("absolute trace escaped GF(2)");
    return acc.bits;
}

KElem FieldCtx::k_mul(KElem a, KElem b) const {
    // (x1 + y1 i)(x2 + y2 i) with i^2 = i + delta.
    const FElem xx = f_mul(a.re, b.re);
    const FElem yy = f_mul(a.im, b.im);
    const FElem cross = f_add(f_mul(a.re, b.im), f_mul(a.im, b.re));
    return KElem{f_add(xx, f_mul(delta_, yy)), f_add(cross, yy)};
}

KElem FieldCtx::k_sq(KElem a) const {
    const FElem yy = f_sq(a.im);
    return KElem{f_add(f_sq(a.re), f_mul(delta_, yy)), yy};
}

KElem FieldCtx::k_inv(KElem a) const {
    if (a == K_ZERO) throw std::invalid_argument("inverse of zero in K");
    return k_scale(k_conj(a), f_inv(norm(a)));
}

KElem FieldCtx::k_pow(KElem a, std::uint64_t e) const {
    if (a == K_ZERO) return e == 0 ? K_ONE : K_ZERO;
    e %= k_order_;
    KElem r = K_ONE;
    KElem base = a;
    while (e) {
        if (e & 1) r = k_mul(r, base);
        base = k_sq(base);
        e >>= 1;
    }
    return r;
}

KElem FieldCtx::k_sqrt(KElem a) const {
    KElem r = a;
    for (unsigned i = 0; i + 1 < 2 * m_; ++i) r = k_sq(r);
    return r;
}

FElem FieldCtx::norm(KElem a) const {
    // N(x + yi) = x^2 + xy + delta y^2
    return f_add(f_add(f_sq(a.re), f_mul(a.re, a.im)), f_mul(delta_, f_sq(a.im)));
}

FElem FieldCtx::bform(KElem a, KElem b) const {
    // T(a * conj(b)) = a.re * b.im + b.re * a.im
    return f_add(f_mul(a.re, b.im), f_mul(b.re, a.im));
}

PolarForm FieldCtx::polar(KElem z) const {
    if (z == K_ZERO) throw std::invalid_argument("polar form of zero");
    const FElem lambda = f_sqrt(norm(z));
    return PolarForm{lambda, k_scale(z, f_inv(lambda))};
}

FElem FieldCtx::bracket_pow_expansion(KElem a, KElem b, std::uint64_t k) const {
    if (k == 0) throw std::invalid_argument("bracket power requires k >= 1");
    FElem acc = F_ZERO;
    for (std::uint64_t i = 0; 2 * i <= k - 1; ++i) {
        if ((i & ~k) != 0) continue;  // C(k,i) even
        const std::uint64_t e = i * q_ + (k - i);
        acc = f_add(acc, bform(k_pow(a, e), k_pow(b, e)));
    }
    return acc;
}

std::optional<std::uint32_t> FieldCtx::s_index(KElem z) const {
    auto it = s_index_.find(k_encode(z));
    if (it == s_index_.end()) return std::nullopt;
    return it->second;
}

void FieldCtx::build_unit_circle() {
    // Find the smallest generator of K* by bit encoding, then walk the
    // subgroup of (q+1)-st roots of unity as powers of w^(q-1).
    const auto primes = prime_factors(k_order_);
    KElem w{};
    bool found = false;
    for (std::uint64_t enc = 2; enc < k_size(); ++enc) {
        const KElem z = k_decode(enc);
        bool ok = true;
        for (std::uint64_t p : primes) {
            if (k_pow(z, k_order_ / p) == K_ONE) {
                ok = false;
                break;
            }
        }
        if (ok) {
            w = z;
            found = true;
            break;
        }
    }
    if (!found) throw std::logic_error("no generator of K* found");

    const KElem s0 = k_pow(w, q_ - 1);
    unit_circle_.reserve(q_ + 1);
    KElem u = K_ONE;
    for (std::uint32_t j = 0; j <= q_; ++j) {
        unit_circle_.push_back(u);
        s_index_.emplace(k_encode(u), j);
        if (norm(u) != F_ONE) throw std::logic_error("unit circle element with norm != 1");
        u = k_mul(u, s0);
    }
    if (u != K_ONE) throw std::logic_error("unit circle generator has wrong order");
    if (s_index_.size() != q_ + 1) throw std::logic_error("unit circle elements not distinct");
}

}  // namespace ovaline
