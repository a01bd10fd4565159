#include "ovaline/gram.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace ovaline {

FPoly fpoly_trim(FPoly p) {
    while (!p.empty() && p.back() == F_ZERO) p.pop_back();
    return p;
}

int fpoly_deg(const FPoly& p) { return int(p.size()) - 1; }

FPoly fpoly_add(const FPoly& a, const FPoly& b) {
    FPoly r = a.size() >= b.size() ? a : b;
    const FPoly& s = a.size() >= b.size() ? b : a;
    for (std::size_t i = 0; i < s.size(); ++i) r[i] = FieldCtx::f_add(r[i], s[i]);
    return fpoly_trim(std::move(r));
}

FPoly fpoly_mul(const FieldCtx& ctx, const FPoly& a, const FPoly& b) {
    if (a.empty() || b.empty()) return {};
    FPoly r(a.size() + b.size() - 1, F_ZERO);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == F_ZERO) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            r[i + j] = FieldCtx::f_add(r[i + j], ctx.f_mul(a[i], b[j]));
        }
    }
    return fpoly_trim(std::move(r));
}

void fpoly_divmod(const FieldCtx& ctx, const FPoly& a, const FPoly& b, FPoly& quot, FPoly& rem) {
    if (b.empty()) throw std::invalid_argument("polynomial division by zero");
    rem = fpoly_trim(a);
    quot.clear();
    const int db = fpoly_deg(b);
    const FElem lead_inv = ctx.f_inv(b.back());
    while (fpoly_deg(rem) >= db) {
        const int shift = fpoly_deg(rem) - db;
        const FElem f = ctx.f_mul(rem.back(), lead_inv);
        if (int(quot.size()) <= shift) quot.resize(shift + 1, F_ZERO);
        quot[shift] = FieldCtx::f_add(quot[shift], f);
        for (int i = 0; i <= db; ++i) {
            rem[i + shift] = FieldCtx::f_add(rem[i + shift], ctx.f_mul(f, b[i]));
        }
        rem = fpoly_trim(std::move(rem));
    }
    quot = fpoly_trim(std::move(quot));
}

FPoly fpoly_make_monic(const FieldCtx& ctx, FPoly p) {
    p = fpoly_trim(std::move(p));
    if (p.empty() || p.back() == F_ONE) return p;
    const FElem inv = ctx.f_inv(p.back());
    for (FElem& c : p) c = ctx.f_mul(c, inv);
    return p;
}

FPoly fpoly_gcd(const FieldCtx& ctx, FPoly a, FPoly b) {
    a = fpoly_trim(std::move(a));
    b = fpoly_trim(std::move(b));
    while (!b.empty()) {
        FPoly q, r;
        fpoly_divmod(ctx, a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    return fpoly_make_monic(ctx, std::move(a));
}

FPoly fpoly_lcm(const FieldCtx& ctx, const FPoly& a, const FPoly& b) {
    if (a.empty() || b.empty()) return {};
    const FPoly g = fpoly_gcd(ctx, a, b);
    FPoly q, r;
    fpoly_divmod(ctx, fpoly_mul(ctx, a, b), g, q, r);
    return fpoly_make_monic(ctx, std::move(q));
}

FMatrix mat_mul(const FieldCtx& ctx, const FMatrix& a, const FMatrix& b) {
    if (a.cols != b.rows) throw std::invalid_argument("matrix shape mismatch");
    FMatrix r = FMatrix::zero(a.rows, b.cols);
    for (std::uint32_t i = 0; i < a.rows; ++i) {
        for (std::uint32_t k = 0; k < a.cols; ++k) {
            const FElem v = a.at(i, k);
            if (v == F_ZERO) continue;
            for (std::uint32_t j = 0; j < b.cols; ++j) {
                r.at(i, j) = FieldCtx::f_add(r.at(i, j), ctx.f_mul(v, b.at(k, j)));
            }
        }
    }
    return r;
}

std::vector<FElem> mat_apply(const FieldCtx& ctx, const FMatrix& m, const std::vector<FElem>& v) {
    if (v.size() != m.cols) throw std::invalid_argument("matrix/vector shape mismatch");
    std::vector<FElem> r(m.rows, F_ZERO);
    for (std::uint32_t i = 0; i < m.rows; ++i) {
        FElem acc = F_ZERO;
        for (std::uint32_t j = 0; j < m.cols; ++j) acc = FieldCtx::f_add(acc, ctx.f_mul(m.at(i, j), v[j]));
        r[i] = acc;
    }
    return r;
}

FMatrix fpoly_eval_matrix(const FieldCtx& ctx, const FPoly& p, const FMatrix& m) {
    if (m.rows != m.cols) throw std::invalid_argument("polynomial of a non-square matrix");
    FMatrix acc = FMatrix::zero(m.rows, m.cols);
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        acc = mat_mul(ctx, acc, m);
        for (std::uint32_t i = 0; i < m.rows; ++i) acc.at(i, i) = FieldCtx::f_add(acc.at(i, i), *it);
    }
    return acc;
}

static std::vector<KElem> nonzero_affine_points(const FieldCtx& ctx, const PointSet& set) {
    const std::uint32_t q = ctx.q();
    if (set.size() != q + 2) throw std::invalid_argument("need q+2 points");
    if (!contains_zero(set)) throw std::invalid_argument("need 0 in the point set");
    std::vector<KElem> ys;
    ys.reserve(q + 1);
    for (const ProjPointK& p : set.pts) {
        if (p.infinite) throw std::invalid_argument("infinite point present");
        if (p.z == K_ZERO) continue;
        ys.push_back(p.z);
    }
    return ys;
}

FMatrix gram_matrix(const FieldCtx& ctx, const PointSet& set, std::uint64_t k) {
    const std::vector<KElem> ys = nonzero_affine_points(ctx, set);
    const std::uint32_t n = std::uint32_t(ys.size());
    FMatrix m = FMatrix::zero(n, n);
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = i + 1; j < n; ++j) {
            const FElem v = ctx.f_pow(ctx.bform(ys[i], ys[j]), k);
            m.at(i, j) = v;
            m.at(j, i) = v;
        }
    }
    return m;
}

CriterionReport check_gram_criterion(const FieldCtx& ctx, const PointSet& set) {
    CriterionReport r;
    r.method = Method::gram;

    const std::uint32_t q = ctx.q();
    const std::vector<KElem> ys = nonzero_affine_points(ctx, set);

    // two points with the same direction sit on one line through 0
    std::vector<std::optional<std::uint32_t>> seen_at(q + 1);
    for (std::uint32_t j = 0; j < ys.size(); ++j) {
        const std::uint32_t idx = *ctx.s_index(ctx.polar(ys[j]).u);
        if (seen_at[idx]) {
            r.verdict = false;
            r.witness = DirectionCollision{affine_point(ys[*seen_at[idx]]), affine_point(ys[j]),
                                           ctx.unit_circle()[idx]};
            return r;
        }
        seen_at[idx] = j;
    }

    const std::uint32_t n = std::uint32_t(ys.size());
    FMatrix base = FMatrix::zero(n, n);
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = i + 1; j < n; ++j) {
            const FElem v = ctx.bform(ys[i], ys[j]);
            base.at(i, j) = v;
            base.at(j, i) = v;
        }
    }

    FMatrix powers = base;
    for (std::uint32_t k = 1; k <= q; ++k) {
        for (std::uint32_t i = 0; i < n; ++i) {
            FElem sum = F_ZERO;
            for (std::uint32_t j = 0; j < n; ++j) sum = FieldCtx::f_add(sum, powers.at(i, j));
            if (sum != F_ZERO) {
                r.verdict = false;
                r.witness = WitnessRowSum{i, k};
                return r;
            }
        }
        if (k < q) {
            for (std::size_t t = 0; t < powers.a.size(); ++t)
                powers.a[t] = ctx.f_mul(powers.a[t], base.a[t]);
        }
    }
    r.verdict = true;
    return r;
}

std::uint32_t rank_f(const FieldCtx& ctx, FMatrix m) {
    std::uint32_t rank = 0;
    for (std::uint32_t col = 0; col < m.cols && rank < m.rows; ++col) {
        std::uint32_t pivot = rank;
        while (pivot < m.rows && m.at(pivot, col) == F_ZERO) ++pivot;
        if (pivot == m.rows) continue;
        for (std::uint32_t j = 0; j < m.cols; ++j) std::swap(m.at(rank, j), m.at(pivot, j));
        const FElem inv = ctx.f_inv(m.at(rank, col));
        for (std::uint32_t i = 0; i < m.rows; ++i) {
            if (i == rank || m.at(i, col) == F_ZERO) continue;
            const FElem f = ctx.f_mul(m.at(i, col), inv);
            for (std::uint32_t j = col; j < m.cols; ++j) {
                m.at(i, j) = FieldCtx::f_add(m.at(i, j), ctx.f_mul(f, m.at(rank, j)));
            }
        }
        ++rank;
    }
    return rank;
}

FPoly char_poly(const FieldCtx& ctx, FMatrix m) {
    if (m.rows != m.cols) throw std::invalid_argument("characteristic polynomial of a non-square matrix");
    const std::uint32_t n = m.rows;
    if (n == 0) return FPoly{F_ONE};

    // similarity reduction to upper Hessenberg form
    for (std::uint32_t col = 0; col + 2 < n; ++col) {
        std::uint32_t pivot = col + 1;
        while (pivot < n && m.at(pivot, col) == F_ZERO) ++pivot;
        if (pivot == n) continue;
        if (pivot != col + 1) {
            for (std::uint32_t j = 0; j < n; ++j) std::swap(m.at(col + 1, j), m.at(pivot, j));
            for (std::uint32_t i = 0; i < n; ++i) std::swap(m.at(i, col + 1), m.at(i, pivot));
        }
        const FElem inv = ctx.f_inv(m.at(col + 1, col));
        for (std::uint32_t i = col + 2; i < n; ++i) {
            if (m.at(i, col) == F_ZERO) continue;
            const FElem f = ctx.f_mul(m.at(i, col), inv);
            // row_i += f * row_{col+1}, then col_{col+1} += f * col_i
            for (std::uint32_t j = 0; j < n; ++j)
                m.at(i, j) = FieldCtx::f_add(m.at(i, j), ctx.f_mul(f, m.at(col + 1, j)));
            for (std::uint32_t i2 = 0; i2 < n; ++i2)
                m.at(i2, col + 1) = FieldCtx::f_add(m.at(i2, col + 1), ctx.f_mul(f, m.at(i2, i)));
        }
    }

    // det(xI - H) by last-column expansion over leading principal minors;
    // all signs collapse in characteristic 2.
    std::vector<FPoly> p(n + 1);
    p[0] = FPoly{F_ONE};
    for (std::uint32_t j = 1; j <= n; ++j) {
        FPoly term{m.at(j - 1, j - 1), F_ONE};  // x + h_{j-1,j-1}
        FPoly acc = fpoly_mul(ctx, term, p[j - 1]);
        FElem subprod = F_ONE;
        for (std::uint32_t i = j - 1; i-- > 0;) {
            // product of subdiagonal entries h_{i+1,i} ... h_{j-1,j-2}
            subprod = ctx.f_mul(subprod, m.at(i + 1, i));
            if (subprod == F_ZERO) break;
            const FElem coeff = ctx.f_mul(m.at(i, j - 1), subprod);
            if (coeff == F_ZERO) continue;
            FPoly scaled = p[i];
            for (FElem& c : scaled) c = ctx.f_mul(c, coeff);
            acc = fpoly_add(acc, scaled);
        }
        p[j] = std::move(acc);
    }
    return p[n];
}

FPoly min_poly(const FieldCtx& ctx, const FMatrix& m) {
    if (m.rows != m.cols) throw std::invalid_argument("minimal polynomial of a non-square matrix");
    const std::uint32_t n = m.rows;
    if (n == 0) return FPoly{F_ONE};

    FPoly result{F_ONE};
    for (std::uint32_t s = 0; s < n; ++s) {
        // Krylov chain of e_s until linear dependence
        std::vector<std::vector<FElem>> chain;
        std::vector<FElem> v(n, F_ZERO);
        v[s] = F_ONE;
        while (true) {
            // Solve chain * x = v by elimination to test dependence.
            const std::uint32_t t = std::uint32_t(chain.size());
            FMatrix aug = FMatrix::zero(n, t + 1);
            for (std::uint32_t c = 0; c < t; ++c)
                for (std::uint32_t rix = 0; rix < n; ++rix) aug.at(rix, c) = chain[c][rix];
            for (std::uint32_t rix = 0; rix < n; ++rix) aug.at(rix, t) = v[rix];

            std::uint32_t row = 0;
            std::vector<std::uint32_t> pivots;
            for (std::uint32_t c = 0; c < t && row < n; ++c) {
                std::uint32_t piv = row;
                while (piv < n && aug.at(piv, c) == F_ZERO) ++piv;
                if (piv == n) continue;
                for (std::uint32_t j = 0; j <= t; ++j) std::swap(aug.at(row, j), aug.at(piv, j));
                const FElem inv = ctx.f_inv(aug.at(row, c));
                for (std::uint32_t j = 0; j <= t; ++j) aug.at(row, j) = ctx.f_mul(aug.at(row, j), inv);
                for (std::uint32_t i = 0; i < n; ++i) {
                    if (i == row || aug.at(i, c) == F_ZERO) continue;
                    const FElem f = aug.at(i, c);
                    for (std::uint32_t j = 0; j <= t; ++j)
                        aug.at(i, j) = FieldCtx::f_add(aug.at(i, j), ctx.f_mul(f, aug.at(row, j)));
                }
                pivots.push_back(c);
                ++row;
            }
            bool dependent = true;
            for (std::uint32_t i = row; i < n; ++i)
                if (aug.at(i, t) != F_ZERO) dependent = false;

            if (dependent) {
                // combination coefficients give the monic annihilator of e_s
                FPoly p(t + 1, F_ZERO);
                p[t] = F_ONE;
                for (std::uint32_t r2 = 0; r2 < pivots.size(); ++r2) p[pivots[r2]] = aug.at(r2, t);
                result = fpoly_lcm(ctx, result, p);
                break;
            }
            chain.push_back(v);
            v = mat_apply(ctx, m, v);
        }
        if (fpoly_deg(result) == int(n)) break;
    }
    return result;
}

SpectrumReport gram_spectrum_report(const FieldCtx& ctx, const PointSet& set) {
    const std::uint32_t q = ctx.q();
    const CriterionReport crit = check_gram_criterion(ctx, set);
    if (!crit.verdict) throw std::invalid_argument("gram spectrum requires a hyperoval through 0");

    std::vector<KElem> ys = nonzero_affine_points(ctx, set);

    // rescale by the first point in bit-encoding order so that 1 is a point
    KElem p0 = ys[0];
    for (const KElem& y : ys)
        if (ctx.k_encode(y) < ctx.k_encode(p0)) p0 = y;
    const KElem p0inv = ctx.k_inv(p0);
    for (KElem& y : ys) y = ctx.k_mul(y, p0inv);

    // unique point on the i-axis (re = 0): every line through 0 meets the
    // rescaled set exactly once
    std::optional<std::uint32_t> axis;
    std::optional<std::uint32_t> one_pos;
    for (std::uint32_t j = 0; j < ys.size(); ++j) {
        if (ys[j].re == F_ZERO) {
            if (axis) throw std::logic_error("two points on the i-axis");
            axis = j;
        }
        if (ys[j] == K_ONE) one_pos = j;
    }
    if (!axis) throw std::logic_error("no point on the i-axis");
    if (!one_pos) throw std::logic_error("rescaling lost the point 1");

    std::vector<KElem> ordered;
    ordered.reserve(ys.size());
    for (std::uint32_t j = 0; j < ys.size(); ++j)
        if (j != *axis && j != *one_pos) ordered.push_back(ys[j]);
    ordered.push_back(K_ONE);        // y_q
    ordered.push_back(ys[*axis]);    // y_{q+1} = s_{q+1} i

    const std::uint32_t n = q + 1;
    FMatrix mh = FMatrix::zero(n, n);
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j) {
            const FElem v = ctx.bform(ordered[i], ordered[j]);
            mh.at(i, j) = v;
            mh.at(j, i) = v;
        }

    SpectrumReport rep;
    rep.trace = F_ZERO;
    for (std::uint32_t i = 0; i < n; ++i) rep.trace = FieldCtx::f_add(rep.trace, mh.at(i, i));
    rep.trace_zero = rep.trace == F_ZERO;

    rep.rank = rank_f(ctx, mh);
    rep.kernel_dim = n - rep.rank;
    rep.charpoly = char_poly(ctx, mh);
    rep.minpoly = min_poly(ctx, mh);

    // char poly must be x^{q-1} (x + mu0)^2 with mu0 != 0
    rep.char_shape_ok = false;
    if (fpoly_deg(rep.charpoly) == int(n) && std::uint32_t(n) >= 2) {
        bool low_zero = true;
        for (std::uint32_t i = 0; i + 2 < n; ++i)
            if (i < q - 1 && rep.charpoly[i] != F_ZERO) low_zero = false;
        const FElem mu0sq = rep.charpoly[q - 1];
        const FElem mu0 = ctx.f_sqrt(mu0sq);
        if (low_zero && mu0 != F_ZERO) {
            FPoly expect(q - 1, F_ZERO);
            expect.resize(n + 1, F_ZERO);
            expect[q - 1] = mu0sq;
            expect[n] = F_ONE;  // x^{q+1} + mu0^2 x^{q-1} ((x+mu0)^2 = x^2 + mu0^2)
            rep.char_shape_ok = fpoly_trim(rep.charpoly) == fpoly_trim(expect);
            rep.mu0 = mu0;
        }
    }
    if (rep.mu0 == F_ZERO) throw std::logic_error("gram matrix of a hyperoval with mu0 = 0");

    const FPoly expect_min{F_ZERO, rep.mu0, F_ONE};  // x^2 + mu0 x
    rep.min_shape_ok = fpoly_trim(rep.minpoly) == fpoly_trim(expect_min);

    // stated kernel vectors: e_i + c_i e_q + (s_i / s_{q+1}) e_{q+1}
    const FElem s_last = ordered[n - 1].im;
    const FElem s_last_inv = ctx.f_inv(s_last);
    rep.eigen_ok = true;
    for (std::uint32_t i = 0; i + 2 < n; ++i) {
        std::vector<FElem> v(n, F_ZERO);
        v[i] = F_ONE;
        v[n - 2] = ordered[i].re;                          // c_i = <i, y_i>
        v[n - 1] = ctx.f_mul(ordered[i].im, s_last_inv);   // s_i / s_{q+1}
        const std::vector<FElem> mv = mat_apply(ctx, mh, v);
        bool zero = true;
        for (const FElem& e : mv)
            if (e != F_ZERO) zero = false;
        if (zero) ++rep.eigen_checked;
        else rep.eigen_ok = false;
    }
    rep.eigen_ok = rep.eigen_ok && rep.eigen_checked == q - 1;
    return rep;
}

}  // namespace ovaline
