#include "ovaline/gpoly.hpp"

#include <stdexcept>

#include "ovaline/criteria.hpp"

namespace ovaline {

CircPoly circ_zero(const FieldCtx& ctx) {
    return CircPoly{std::vector<KElem>(ctx.q() + 1, K_ZERO)};
}

CircPoly circ_const(const FieldCtx& ctx, KElem v) {
    CircPoly p = circ_zero(ctx);
    p.c[0] = v;
    return p;
}

CircPoly circ_monomial(const FieldCtx& ctx, std::uint32_t degree, KElem v) {
    if (degree > ctx.q()) throw std::invalid_argument("monomial degree exceeds q");
    CircPoly p = circ_zero(ctx);
    p.c[degree] = v;
    return p;
}

static void check_len(const FieldCtx& ctx, const CircPoly& p) {
    if (p.c.size() != ctx.q() + 1) throw std::invalid_argument("circular polynomial has wrong length");
}

CircPoly circ_add(const FieldCtx& ctx, const CircPoly& a, const CircPoly& b) {
    check_len(ctx, a);
    check_len(ctx, b);
    CircPoly r = a;
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = FieldCtx::k_add(r.c[i], b.c[i]);
    return r;
}

CircPoly circ_mul(const FieldCtx& ctx, const CircPoly& a, const CircPoly& b) {
    check_len(ctx, a);
    check_len(ctx, b);
    const std::size_t n = ctx.q() + 1;
    CircPoly r = circ_zero(ctx);
    for (std::size_t i = 0; i < n; ++i) {
        if (a.c[i] == K_ZERO) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (b.c[j] == K_ZERO) continue;
            std::size_t k = i + j;
            if (k >= n) k -= n;
            r.c[k] = FieldCtx::k_add(r.c[k], ctx.k_mul(a.c[i], b.c[j]));
        }
    }
    return r;
}

CircPoly circ_pow(const FieldCtx& ctx, const CircPoly& a, std::uint64_t e) {
    check_len(ctx, a);
    CircPoly r = circ_const(ctx, K_ONE);
    CircPoly base = a;
    while (e) {
        if (e & 1) r = circ_mul(ctx, r, base);
        e >>= 1;
        if (e) base = circ_mul(ctx, base, base);
    }
    return r;
}

KElem circ_eval(const FieldCtx& ctx, const CircPoly& p, KElem z) {
    check_len(ctx, p);
    KElem acc = K_ZERO;
    for (auto it = p.c.rbegin(); it != p.c.rend(); ++it) {
        acc = FieldCtx::k_add(ctx.k_mul(acc, z), *it);
    }
    return acc;
}

CircPoly interpolate_on_s(const FieldCtx& ctx, std::span<const KElem> values) {
    const std::uint32_t q = ctx.q();
    if (values.size() != q + 1) throw std::invalid_argument("need one value per unit-circle element");
    CircPoly r = circ_zero(ctx);
    for (std::uint32_t j = 0; j <= q; ++j) {
        const KElem h = values[j];
        if (h == K_ZERO) continue;
        const KElem u = ctx.unit_circle()[j];
        const KElem uinv = ctx.k_conj(u);  // u^{-1} on the unit circle
        KElem w = h;
        for (std::uint32_t i = 0; i <= q; ++i) {
            r.c[i] = FieldCtx::k_add(r.c[i], w);
            w = ctx.k_mul(w, uinv);
        }
    }
    return r;
}

bool elementary_symmetric_check(const FieldCtx& ctx) {
    const std::uint32_t q = ctx.q();
    // plain (non-circular) expansion of prod (x - u)
    std::vector<KElem> prod{K_ONE};
    for (const KElem& u : ctx.unit_circle()) {
        std::vector<KElem> next(prod.size() + 1, K_ZERO);
        for (std::size_t i = 0; i < prod.size(); ++i) {
            next[i + 1] = FieldCtx::k_add(next[i + 1], prod[i]);
            next[i] = FieldCtx::k_add(next[i], ctx.k_mul(prod[i], u));
        }
        prod = std::move(next);
    }
    if (prod.size() != q + 2) return false;
    for (std::uint32_t i = 0; i <= q + 1; ++i) {
        const KElem want = (i == 0 || i == q + 1) ? K_ONE : K_ZERO;
        if (prod[i] != want) return false;
    }
    return true;
}

void validate_gcoeffs(const FieldCtx& ctx, const GCoeffs& g) {
    const std::uint32_t q = ctx.q();
    if (g.a.size() != q + 1) throw std::invalid_argument("coefficient vector must have q+1 entries");
    if (g.a[0].im != F_ZERO) throw std::invalid_argument("a_0 must lie in F");
    for (std::uint32_t i = 1; i <= q / 2; ++i) {
        if (g.a[q + 1 - i] != ctx.k_pow(g.a[i], q))
            throw std::invalid_argument("conjugate coefficient symmetry violated");
    }
}

GCoeffs g_table_to_coeffs(const FieldCtx& ctx, const GFunctionTable& table) {
    const std::uint32_t q = ctx.q();
    if (table.values.size() != q + 1) throw std::invalid_argument("g table must have q+1 values");
    std::vector<KElem> vals(q + 1);
    for (std::uint32_t j = 0; j <= q; ++j) vals[j] = KElem{table.values[j], F_ZERO};
    GCoeffs g{interpolate_on_s(ctx, vals).c};
    // F-valued input makes the symmetry automatic; a violation is a defect.
    if (g.a[0].im != F_ZERO) throw std::logic_error("interpolated a_0 escaped F");
    for (std::uint32_t i = 1; i <= q / 2; ++i) {
        if (g.a[q + 1 - i] != ctx.k_pow(g.a[i], q))
            throw std::logic_error("interpolated coefficients broke conjugate symmetry");
    }
    return g;
}

GFunctionTable g_coeffs_to_table(const FieldCtx& ctx, const GCoeffs& g) {
    validate_gcoeffs(ctx, g);
    const std::uint32_t q = ctx.q();
    GFunctionTable table;
    table.values.resize(q + 1);
    const CircPoly p{g.a};
    for (std::uint32_t j = 0; j <= q; ++j) {
        const KElem v = circ_eval(ctx, p, ctx.unit_circle()[j]);
        if (v.im != F_ZERO) throw std::logic_error("symmetric coefficients produced a value outside F");
        table.values[j] = v.re;
    }
    return table;
}

CriterionReport check_coeff_criterion(const FieldCtx& ctx, const GCoeffs& g) {
    const std::uint32_t q = ctx.q();
    const GFunctionTable table = g_coeffs_to_table(ctx, g);
    if (!table.nonvanishing())
        throw std::invalid_argument("coefficient criterion needs a nonvanishing table; normalize first");

    const ExponentSets es = compute_exponent_sets(q);
    // pairs grouped by k
    std::vector<std::vector<std::uint32_t>> is_for_k(q - 1);
    for (const auto& [i, k] : es.m_pairs) is_for_k[k].push_back(i);

    // Exponent e = q-1-k runs upward as k runs down from q-2 to 1; a single
    // multiplication chain covers every needed power. The witness is still
    // the first failing pair in ascending (k, i) order.
    const CircPoly base{g.a};
    CircPoly p = base;
    bool have_fail = false;
    std::uint32_t fail_i = 0, fail_k = 0;
    for (std::uint32_t k = q - 2; k >= 1; --k) {
        for (std::uint32_t i : is_for_k[k]) {
            const std::uint32_t idx = k - 2 * i;
            const std::uint32_t dual = q + 1 - idx;
            if (p.c[dual] != ctx.k_pow(p.c[idx], q))
                throw std::logic_error("conjugate coefficient duality violated");
            if (p.c[idx] != K_ZERO) {
                if (!have_fail || k < fail_k || (k == fail_k && i < fail_i)) {
                    have_fail = true;
                    fail_k = k;
                    fail_i = i;
                }
            }
        }
        if (k > 1) p = circ_mul(ctx, p, base);
    }

    CriterionReport r;
    r.method = Method::coeff;
    r.verdict = !have_fail;
    if (have_fail) r.witness = WitnessCoeff{fail_i, fail_k, fail_k - 2 * fail_i};
    return r;
}

CriterionReport check_coeff_criterion_rho(const FieldCtx& ctx, std::span<const FElem> rho_values) {
    const std::uint32_t q = ctx.q();
    if (rho_values.size() != q + 1) throw std::invalid_argument("rho needs q+1 values");
    std::vector<KElem> vals(q + 1);
    for (std::uint32_t j = 0; j <= q; ++j) {
        if (rho_values[j] == F_ZERO) throw std::invalid_argument("rho must not vanish on S");
        vals[j] = KElem{rho_values[j], F_ZERO};
    }
    const CircPoly rho = interpolate_on_s(ctx, vals);

    const ExponentSets es = compute_exponent_sets(q);
    std::vector<std::vector<std::uint32_t>> is_for_k(q - 1);
    for (const auto& [i, k] : es.m_pairs) is_for_k[k].push_back(i);

    CriterionReport r;
    r.method = Method::coeff_rho;
    CircPoly p = rho;  // rho^k, ascending k
    for (std::uint32_t k = 1; k <= q - 2; ++k) {
        for (std::uint32_t i : is_for_k[k]) {
            const std::uint32_t idx = k - 2 * i;
            const std::uint32_t dual = q + 1 - idx;
            if (p.c[dual] != ctx.k_pow(p.c[idx], q))
                throw std::logic_error("conjugate coefficient duality violated");
            if (p.c[idx] != K_ZERO) {
                r.verdict = false;
                r.witness = WitnessCoeff{i, k, idx};
                return r;
            }
        }
        if (k < q - 2) p = circ_mul(ctx, p, rho);
    }
    r.verdict = true;
    return r;
}

bool corollary_support_filter(const FieldCtx& ctx, const GCoeffs& g) {
    const std::uint32_t q = ctx.q();
    if (g.a.size() != q + 1) throw std::invalid_argument("coefficient vector must have q+1 entries");
    for (std::uint32_t t = 1; t <= q; ++t) {
        const std::uint32_t r = t % 4;
        if ((r == 2 || r == 3) && g.a[t] != K_ZERO) return false;
    }
    return true;
}

}  // namespace ovaline
