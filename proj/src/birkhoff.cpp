#include "tubular/birkhoff.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "tubular/error.hpp"
#include "tubular/linalg.hpp"

namespace tubular {

namespace {

Scalar coeff_at(const TLaurent& a, int d) { return a.coeff(d).coeff(Monomial(0), a.field()); }

TLaurent mono(const SpacePtr& sp, const Scalar& c, int d) { return TLaurent::monomial(sp, c, d, Monomial(0)); }

void check_precision(const Grid& g) {
    int lo = kExact, hi = -kExact + 1, min_prec = kExact;
    for (const auto& row : g)
        for (const auto& e : row) {
            min_prec = std::min(min_prec, e.prec());
            if (e.is_zero()) continue;
            lo = std::min(lo, e.order());
            hi = std::max(hi, e.order());
        }
    if (min_prec == kExact || lo == kExact) return;
    long spread = static_cast<long>(hi) - lo;
    long rel = static_cast<long>(min_prec) - lo;
    if (rel < 2 * spread + 2)
        throw InsufficientPrecision("relative precision " + std::to_string(rel) + " is below 2*spread+2 = " +
                                    std::to_string(2 * spread + 2));
}

// Column operations over k[[t]] bring g to an exact lower-triangular H with
// diagonal t^e_i and entries left of the diagonal reduced modulo t^e_i.
Grid column_hermite(Grid m) {
    std::size_t n = m.size();
    const SpacePtr& sp = m[0][0].space_ptr();
    Grid h(n, std::vector<TLaurent>(n, TLaurent(sp)));
    auto col_axpy = [&](std::size_t dst, const TLaurent& f, std::size_t src) {
        for (std::size_t k = 0; k < n; ++k) m[k][dst] -= f * m[k][src];
    };
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t best = n;
        for (std::size_t j = i; j < n; ++j)
            if (!m[i][j].is_zero() && (best == n || m[i][j].order() < m[i][best].order())) best = j;
        if (best == n) throw InsufficientPrecision("pivot of row " + std::to_string(i) + " is zero to working precision");
        int e = m[i][best].order();
        for (std::size_t j = i; j < n; ++j)
            if (m[i][j].is_zero() && m[i][j].prec() < e)
                throw InsufficientPrecision("pivot order of row " + std::to_string(i) + " cannot be certified");
        if (best != i)
            for (std::size_t k = 0; k < n; ++k) std::swap(m[k][i], m[k][best]);

        TLaurent unit_inv = laurent_inv(m[i][i].shifted(-e), m[i][i].relative_prec());
        for (std::size_t k = 0; k < n; ++k) m[k][i] = m[k][i] * unit_inv;
        for (std::size_t j = i + 1; j < n; ++j)
            if (!m[i][j].is_zero()) col_axpy(j, m[i][j].shifted(-e), i);
        for (std::size_t j = 0; j < i; ++j) {
            if (m[i][j].prec() < e)
                throw InsufficientPrecision("entry (" + std::to_string(i) + "," + std::to_string(j) +
                                            ") is not known modulo the pivot");
            TLaurent q = m[i][j].tail_from(e).shifted(-e);
            if (!q.is_zero()) col_axpy(j, q, i);
        }
        h[i][i] = mono(sp, Scalar::one(sp->field), e);
        for (std::size_t j = 0; j < i; ++j) h[i][j] = m[i][j].head_below(e);
    }
    return h;
}

// Inverse of a lower-triangular matrix with monomial diagonal.
Grid lower_inverse(const Grid& h) {
    std::size_t n = h.size();
    const SpacePtr& sp = h[0][0].space_ptr();
    Grid x(n, std::vector<TLaurent>(n, TLaurent(sp)));
    for (std::size_t i = 0; i < n; ++i) {
        TLaurent d_inv = laurent_inv(h[i][i], kExact);
        x[i][i] = d_inv;
        for (std::size_t j = 0; j < i; ++j) {
            TLaurent acc(sp);
            for (std::size_t k = j; k < i; ++k) acc += h[i][k] * x[k][j];
            x[i][j] = -(acc * d_inv);
        }
    }
    return x;
}

struct RowReduction {
    Grid linv;                 // in GL_r(k[1/t])
    std::vector<int> delta;    // row shifts: H = linv * diag(t^-delta) * R
    Grid r;                    // in GL_r(k[t])
};

// Row operations over k[1/t] until the matrix of lowest row coefficients is
// invertible. Each step lowers one row shift, so the loop terminates.
RowReduction row_reduce(const Grid& h) {
    std::size_t n = h.size();
    const SpacePtr& sp = h[0][0].space_ptr();
    Field f = sp->field;
    Grid m = h;
    Grid linv = grid_identity(sp, n);
    std::vector<int> delta(n);
    for (int guard = 0;; ++guard) {
        if (guard > 100000) throw std::logic_error("row reduction failed to terminate");
        for (std::size_t i = 0; i < n; ++i) {
            int low = kExact;
            for (const auto& e : m[i])
                if (!e.is_zero()) low = std::min(low, e.order());
            if (low == kExact) throw std::logic_error("zero row in an invertible matrix");
            delta[i] = -low;
        }
        ScalarMatrix lead(f, n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) lead.at(i, j) = coeff_at(m[i][j], -delta[i]);
        auto v = left_null_vector(lead);
        if (!v) break;
        std::size_t i0 = n;
        for (std::size_t i = 0; i < n; ++i)
            if (!(*v)[i].is_zero() && (i0 == n || delta[i] > delta[i0])) i0 = i;
        Scalar pivot = (*v)[i0];
        for (std::size_t i = 0; i < n; ++i) {
            if (i == i0 || (*v)[i].is_zero()) continue;
            TLaurent c = mono(sp, (*v)[i] / pivot, -(delta[i0] - delta[i]));
            for (std::size_t j = 0; j < n; ++j) m[i0][j] += c * m[i][j];
            for (std::size_t k = 0; k < n; ++k) linv[k][i] -= c * linv[k][i0];
        }
    }
    Grid r = m;
    for (std::size_t i = 0; i < n; ++i)
        for (auto& e : r[i]) e = e.shifted(delta[i]);
    return {std::move(linv), std::move(delta), std::move(r)};
}

Grid permute_rows(const Grid& a, const std::vector<std::size_t>& perm) {
    Grid out;
    for (auto p : perm) out.push_back(a[p]);
    return out;
}

Grid permute_cols(const Grid& a, const std::vector<std::size_t>& perm) {
    Grid out = a;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < perm.size(); ++k) out[i][k] = a[i][perm[k]];
    return out;
}

// Moves the block-lower part of a_minus(oo) across the diagonal factor.
void normalize_at_infinity(Grid& a_minus, const std::vector<int>& split, Grid& a_plus) {
    std::size_t n = split.size();
    const SpacePtr& sp = a_minus[0][0].space_ptr();
    Field f = sp->field;
    ScalarMatrix c(f, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) c.at(i, j) = coeff_at(a_minus[i][j], 0);

    std::vector<std::size_t> block(n);
    for (std::size_t i = 1; i < n; ++i) block[i] = block[i - 1] + (split[i] != split[i - 1] ? 1 : 0);
    std::size_t nblocks = block[n - 1] + 1;

    ScalarMatrix m = c;
    for (std::size_t b = nblocks - 1; b-- > 0;) {
        std::vector<std::size_t> rows, trail;
        for (std::size_t i = 0; i < n; ++i) {
            if (block[i] == b) rows.push_back(i);
            if (block[i] > b) trail.push_back(i);
        }
        ScalarMatrix s(f, trail.size(), trail.size());
        for (std::size_t p = 0; p < trail.size(); ++p)
            for (std::size_t q = 0; q < trail.size(); ++q) s.at(p, q) = m.at(trail[p], trail[q]);
        auto s_inv = inverse(s);
        if (!s_inv) return;
        for (auto i : rows) {
            // x = -m[i][trail] * s^-1, then row_i += x * m[trail][:].
            std::vector<Scalar> x(trail.size(), Scalar::zero(f));
            for (std::size_t q = 0; q < trail.size(); ++q)
                for (std::size_t p = 0; p < trail.size(); ++p) x[q] -= m.at(i, trail[p]) * s_inv->at(p, q);
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t q = 0; q < trail.size(); ++q) m.at(i, j) += x[q] * m.at(trail[q], j);
        }
    }
    auto m_inv = inverse(m);
    if (!m_inv) return;
    Grid mi(n, std::vector<TLaurent>(n, TLaurent(sp)));
    Grid twisted(n, std::vector<TLaurent>(n, TLaurent(sp)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            mi[i][j] = mono(sp, m_inv->at(i, j), 0);
            if (!m.at(i, j).is_zero()) twisted[i][j] = mono(sp, m.at(i, j), split[j] - split[i]);
        }
    a_minus = grid_mul(a_minus, mi);
    a_plus = grid_mul(twisted, a_plus);
}

}  // namespace

RMatrix split_diagonal(const ChartPtr& chart, const std::vector<int>& split) {
    Grid d = grid_identity(chart->space, split.size());
    for (std::size_t i = 0; i < split.size(); ++i) d[i][i] = mono(chart->space, Scalar::one(chart->field()), split[i]);
    return RMatrix(chart, RingTag::U, std::move(d));
}

BirkhoffFactorization birkhoff(const RMatrix& g) {
    if (g.space()->nvars() != 0) throw Unsupported("Birkhoff factorization needs a chart without y-variables");
    if (g.tag() != RingTag::W) throw IllegalTag("Birkhoff factorization takes a matrix over W");
    if (!gl_check(g)) throw NotInvertible("matrix is not in GL_r over W");
    std::size_t n = g.rank();
    const SpacePtr& sp = g.space();
    check_precision(g.entries());

    Grid h = column_hermite(g.entries());
    RowReduction rr = row_reduce(h);

    std::vector<int> split(n);
    for (std::size_t i = 0; i < n; ++i) split[i] = -rr.delta[i];
    Grid a_plus = grid_mul(grid_mul(rr.r, lower_inverse(h)), g.entries());
    Grid a_minus = rr.linv;

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return split[a] > split[b]; });
    std::vector<int> sorted(n);
    for (std::size_t k = 0; k < n; ++k) sorted[k] = split[perm[k]];
    a_minus = permute_cols(a_minus, perm);
    a_plus = permute_rows(a_plus, perm);
    normalize_at_infinity(a_minus, sorted, a_plus);

    for (const auto& row : a_minus)
        for (const auto& e : row)
            if (!e.is_exact() || (!e.is_zero() && e.high() > 1)) throw std::logic_error("a_minus left k[1/t]");
    for (const auto& row : a_plus)
        for (const auto& e : row)
            if (e.order() < 0) throw InsufficientPrecision("working precision too low to certify a_plus over k[[t]]");

    BirkhoffFactorization out{RMatrix(g.chart(), RingTag::U, a_minus), sorted,
                              RMatrix(g.chart(), RingTag::XHAT, a_plus)};
    Grid d = split_diagonal(g.chart(), sorted).entries();
    Grid back = grid_mul(grid_mul(out.a_minus.entries(), d), out.a_plus.entries());
    if (grid_mismatch(back, g.entries())) throw std::logic_error("Birkhoff reconstruction does not match g");
    ScalarMatrix p0(sp->field, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) p0.at(i, j) = coeff_at(out.a_plus.at(i, j), 0);
    if (determinant(p0).is_zero()) throw std::logic_error("a_plus(0) is singular");
    return out;
}

TwoSidedFactor two_sided_factor(const RMatrix& g, USide side) {
    if (g.tag() != RingTag::W) throw IllegalTag("two-sided factorization takes a matrix over W");
    TwoSidedFactor out;
    if (!gl_check(g)) {
        out.reason = "g is not invertible over W in chart '" + g.chart()->name + "'";
        return out;
    }
    const SpacePtr& sp = g.space();
    std::size_t n = g.rank();
    if (n == 1) {
        const TLaurent& a = g.at(0, 0);
        const auto& lead = a.lowest_coeff().terms().front();
        int low = a.order();
        if (side == USide::ProjectiveComplement) {
            if (sp->nvars() != 0) throw Unsupported("the complement at infinity is only modelled on single-variable charts");
            if (low != 0) {
                out.obstruction = {low};
                out.reason = "t-order " + std::to_string(low) + " is not absorbed by k[1/t]";
                return out;
            }
        }
        TLaurent hu = TLaurent::monomial(sp, lead.coef, side == USide::ProjectiveComplement ? 0 : low, lead.mono);
        TLaurent hx = a * laurent_inv(hu, kExact);
        out.h_u = RMatrix(g.chart(), RingTag::U, Grid{{hu}});
        out.h_xhat = RMatrix(g.chart(), RingTag::XHAT, Grid{{hx}});
        return out;
    }
    if (sp->nvars() != 0) throw Unsupported("rank >= 2 factorization needs a chart without y-variables");
    // g^T = a_minus d a_plus  gives  g = a_plus^T (d a_minus^T).
    BirkhoffFactorization bf = birkhoff(g.transpose());
    RMatrix hx = bf.a_plus.transpose();
    if (side == USide::ProjectiveComplement) {
        if (std::any_of(bf.split.begin(), bf.split.end(), [](int a) { return a != 0; })) {
            out.obstruction = bf.split;
            out.reason = "nonzero splitting type";
            return out;
        }
        out.h_xhat = hx;
        out.h_u = bf.a_minus.transpose();
        return out;
    }
    out.h_xhat = hx;
    out.h_u = mat_mul(split_diagonal(g.chart(), bf.split), bf.a_minus.transpose());
    return out;
}

}  // namespace tubular
