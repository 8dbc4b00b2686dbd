#include "tubular/matrix.hpp"

#include "tubular/error.hpp"

namespace tubular {

Grid grid_identity(const SpacePtr& space, std::size_t r) {
    Grid g(r, std::vector<TLaurent>(r, TLaurent(space)));
    for (std::size_t i = 0; i < r; ++i) g[i][i] = TLaurent::constant(space, Scalar::one(space->field));
    return g;
}

Grid grid_mul(const Grid& a, const Grid& b) {
    std::size_t n = a.size();
    if (b.size() != n) throw Error("matrix ranks differ");
    Grid c(n, std::vector<TLaurent>(n, TLaurent(a[0][0].space_ptr())));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            TLaurent acc(a[0][0].space_ptr());
            for (std::size_t k = 0; k < n; ++k) acc += a[i][k] * b[k][j];
            c[i][j] = std::move(acc);
        }
    return c;
}

Grid grid_transpose(const Grid& a) {
    Grid t = a;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) t[j][i] = a[i][j];
    return t;
}

namespace {

TLaurent det_rec(const Grid& a, std::vector<std::size_t>& cols, std::size_t row) {
    const SpacePtr& sp = a[0][0].space_ptr();
    if (row == a.size()) return TLaurent::constant(sp, Scalar::one(sp->field));
    TLaurent acc(sp);
    bool negative = false;
    for (std::size_t k = 0; k < cols.size(); ++k) {
        std::size_t c = cols[k];
        if (!(a[row][c].is_zero() && a[row][c].is_exact())) {
            cols.erase(cols.begin() + static_cast<long>(k));
            TLaurent minor = det_rec(a, cols, row + 1);
            cols.insert(cols.begin() + static_cast<long>(k), c);
            TLaurent term = a[row][c] * minor;
            if (negative) acc -= term; else acc += term;
        }
        negative = !negative;
    }
    return acc;
}

}  // namespace

TLaurent grid_det(const Grid& a) {
    std::vector<std::size_t> cols(a.size());
    for (std::size_t i = 0; i < cols.size(); ++i) cols[i] = i;
    return det_rec(a, cols, 0);
}

RMatrix::RMatrix(ChartPtr chart, RingTag tag, Grid entries)
    : chart_(std::move(chart)), tag_(tag), entries_(std::move(entries)) {
    std::size_t r = entries_.size();
    if (r == 0) throw Error("matrices need rank at least 1");
    const SpacePtr& sp = entries_[0][0].space_ptr();
    for (const auto& row : entries_) {
        if (row.size() != r) throw Error("matrix must be square");
        for (const auto& e : row) {
            require_same_space(sp, e.space_ptr());
            Element check(chart_, tag_, e);
            (void)check;
        }
    }
}

RMatrix RMatrix::identity(ChartPtr chart, RingTag tag, std::size_t r, SpacePtr space) {
    if (!space) space = chart->space;
    return RMatrix(std::move(chart), tag, grid_identity(space, r));
}

RMatrix RMatrix::from_elements(const std::vector<std::vector<Element>>& rows) {
    if (rows.empty() || rows[0].empty()) throw Error("empty matrix");
    Grid g;
    for (const auto& row : rows) {
        std::vector<TLaurent> r;
        for (const auto& e : row) {
            require_compatible(rows[0][0], e);
            r.push_back(e.value());
        }
        g.push_back(std::move(r));
    }
    return RMatrix(rows[0][0].chart(), rows[0][0].tag(), std::move(g));
}

int RMatrix::min_prec() const {
    int p = kExact;
    for (const auto& row : entries_)
        for (const auto& e : row) p = std::min(p, e.prec());
    return p;
}

RMatrix RMatrix::transpose() const { return RMatrix(chart_, tag_, grid_transpose(entries_)); }

RMatrix RMatrix::retagged(RingTag tag) const { return RMatrix(chart_, tag, entries_); }

bool operator==(const RMatrix& a, const RMatrix& b) {
    return a.chart_->name == b.chart_->name && a.tag_ == b.tag_ && a.entries_ == b.entries_;
}

namespace {

void require_same_ring(const RMatrix& a, const RMatrix& b) {
    require_compatible(a.element(0, 0), b.element(0, 0));
    if (a.rank() != b.rank()) throw Error("matrix ranks differ");
}

}  // namespace

RMatrix mat_mul(const RMatrix& a, const RMatrix& b) {
    require_same_ring(a, b);
    return RMatrix(a.chart(), a.tag(), grid_mul(a.entries(), b.entries()));
}

Element mat_det(const RMatrix& m) { return Element(m.chart(), m.tag(), grid_det(m.entries())); }

RMatrix mat_inv(const RMatrix& m, int relative_prec) {
    TLaurent det = grid_det(m.entries());
    if (!is_unit_value(m.tag(), det))
        throw NotInvertible("determinant " + tag_name(m.tag()) + "-ring non-unit; matrix not invertible");
    std::size_t n = m.rank();
    const SpacePtr& sp = m.space();
    Grid a = m.entries();
    Grid inv = grid_identity(sp, n);
    bool pivots_ok = true;
    for (std::size_t c = 0; c < n && pivots_ok; ++c) {
        std::size_t p = c;
        while (p < n && !is_unit_value(m.tag(), a[p][c])) ++p;
        if (p == n) {
            pivots_ok = false;
            break;
        }
        std::swap(a[p], a[c]);
        std::swap(inv[p], inv[c]);
        TLaurent piv_inv = unit_inverse(a[c][c], relative_prec);
        for (std::size_t j = 0; j < n; ++j) {
            a[c][j] = a[c][j] * piv_inv;
            inv[c][j] = inv[c][j] * piv_inv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || (a[i][c].is_zero() && a[i][c].is_exact())) continue;
            TLaurent f = a[i][c];
            for (std::size_t j = 0; j < n; ++j) {
                a[i][j] -= f * a[c][j];
                inv[i][j] -= f * inv[c][j];
            }
        }
    }
    if (!pivots_ok) {
        // Adjugate: inv_ij = (-1)^(i+j) det(minor_ji) / det.
        TLaurent det_inv = unit_inverse(det, relative_prec);
        const Grid& e = m.entries();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (n == 1) {
                    inv[i][j] = det_inv;
                    continue;
                }
                Grid minor;
                for (std::size_t r = 0; r < n; ++r) {
                    if (r == j) continue;
                    std::vector<TLaurent> row;
                    for (std::size_t c = 0; c < n; ++c)
                        if (c != i) row.push_back(e[r][c]);
                    minor.push_back(std::move(row));
                }
                TLaurent cof = grid_det(minor) * det_inv;
                inv[i][j] = ((i + j) % 2 == 0) ? cof : -cof;
            }
    }
    return RMatrix(m.chart(), m.tag(), std::move(inv));
}

bool gl_check(const RMatrix& m) { return is_unit_value(m.tag(), grid_det(m.entries())); }

bool gl_check(const ChartPtr& chart, RingTag tag, const Grid& entries) {
    try {
        return gl_check(RMatrix(chart, tag, entries));
    } catch (const IllegalTag&) {
        return false;
    }
}

RMatrix mat_embed(const RMatrix& m, RingTag to, int prec) {
    Grid g = m.entries();
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j) g[i][j] = embed(m.element(i, j), to, prec).value();
    return RMatrix(m.chart(), to, std::move(g));
}

RMatrix mat_hom(const RMatrix& m, const Substitution& sigma, ChartPtr target) {
    Grid g = m.entries();
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j) g[i][j] = chart_hom(m.element(i, j), sigma, target).value();
    return RMatrix(std::move(target), m.tag(), std::move(g));
}

std::optional<EntryMismatch> grid_mismatch(const Grid& a, const Grid& b) {
    if (a.size() != b.size()) throw Error("matrix ranks differ");
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
            if (compare(a[i][j], b[i][j]) == Comparison::Different) return EntryMismatch{i, j, a[i][j] - b[i][j]};
    return std::nullopt;
}

}  // namespace tubular
