#pragma once

// Shared helpers for the test binaries: spaces, parsing shortcuts, seeded
// random generators and oracles that do not go through the library's solvers.

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "tubular/berkovich.hpp"
#include "tubular/birkhoff.hpp"
#include "tubular/box.hpp"
#include "tubular/chart.hpp"
#include "tubular/descent.hpp"
#include "tubular/error.hpp"
#include "tubular/parse.hpp"
#include "tubular/scene.hpp"

namespace support {

using namespace tubular;

inline Field QQ() { return Field::rationals(); }

inline SpacePtr t_only(Field f = QQ()) { return make_space(f, "t", {}); }

inline SpacePtr ty(bool y_invertible = false, Field f = QQ()) { return make_space(f, "t", {"y"}, {y_invertible}); }

inline TLaurent P(const std::string& s, const SpacePtr& sp) { return parse_element(s, sp); }

inline ChartPtr line_chart(Field f = QQ()) { return make_chart("c1", t_only(f)); }

inline RMatrix W(const std::string& grid, const ChartPtr& c) { return RMatrix(c, RingTag::W, parse_grid(grid, c->space)); }

inline Grid truncate_grid(Grid g, int prec) {
    for (auto& row : g)
        for (auto& e : row) e = e.truncated(std::min(prec, e.prec()));
    return g;
}

// ---------------------------------------------------------------- random data

class Rng {
public:
    explicit Rng(unsigned seed) : gen_(seed) {}

    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
    bool coin() { return uniform(0, 1) == 1; }

    Scalar scalar(Field f, int bound = 3) {
        int v = uniform(-bound, bound);
        return Scalar(f, static_cast<long>(v));
    }

    Scalar nonzero(Field f, int bound = 3) {
        while (true) {
            Scalar s = scalar(f, bound);
            if (!s.is_zero()) return s;
        }
    }

    mpq_class unit_fraction_or_edge() {
        int kind = uniform(0, 9);
        if (kind == 0) return 0;
        if (kind == 1) return 1;
        int q = uniform(2, 7);
        int p = uniform(1, q - 1);
        mpq_class r(p, q);
        r.canonicalize();
        return r;
    }

    // Polynomial with t-degrees in [lo, hi] and y-degree <= ydeg, about `terms` terms.
    TLaurent laurent(const SpacePtr& sp, int lo, int hi, int ydeg, int terms) {
        std::vector<MultiPoly> coeffs(static_cast<std::size_t>(hi - lo + 1));
        for (int k = 0; k < terms; ++k) {
            int d = uniform(lo, hi);
            Monomial m(sp->nvars());
            for (std::size_t i = 0; i < sp->nvars(); ++i) m.exp[i] = uniform(0, ydeg);
            coeffs[static_cast<std::size_t>(d - lo)] += MultiPoly::term(nonzero(sp->field), m);
        }
        return TLaurent::from_coeffs(sp, lo, std::move(coeffs));
    }

    std::mt19937& engine() { return gen_; }

private:
    std::mt19937 gen_;
};

// Elementary matrix I + f * E_ij (i != j) or a diagonal matrix.
inline Grid elementary(const SpacePtr& sp, std::size_t r, std::size_t i, std::size_t j, const TLaurent& f) {
    Grid g = grid_identity(sp, r);
    g[i][j] = f;
    return g;
}

inline Grid diagonal(const SpacePtr& sp, const std::vector<TLaurent>& d) {
    Grid g = grid_identity(sp, d.size());
    for (std::size_t i = 0; i < d.size(); ++i) g[i][i] = d[i];
    return g;
}

inline TLaurent t_pow(const SpacePtr& sp, int e, const Scalar& c) { return TLaurent::monomial(sp, c, e, Monomial(sp->nvars())); }

// Random element of GL_r(k[1/t]): a constant diagonal times elementary factors.
inline Grid random_minus(Rng& rng, const SpacePtr& sp, std::size_t r, int depth, int max_deg) {
    Grid g = grid_identity(sp, r);
    for (std::size_t k = 0; k < r; ++k) g[k][k] = TLaurent::constant(sp, rng.nonzero(sp->field));
    for (int s = 0; r > 1 && s < depth; ++s) {
        std::size_t i = static_cast<std::size_t>(rng.uniform(0, static_cast<int>(r) - 1));
        std::size_t j = static_cast<std::size_t>(rng.uniform(0, static_cast<int>(r) - 2));
        if (j >= i) ++j;
        g = grid_mul(g, elementary(sp, r, i, j, rng.laurent(sp, -max_deg, 0, 0, 2)));
    }
    return g;
}

// Random element of GL_r(k[[t]]) given by a polynomial matrix. With a
// constant diagonal its determinant is constant, so the inverse is polynomial too.
inline Grid random_plus(Rng& rng, const SpacePtr& sp, std::size_t r, int depth, int max_deg, int ydeg = 0,
                        bool series_diagonal = false) {
    Grid g = grid_identity(sp, r);
    for (std::size_t k = 0; k < r; ++k) {
        g[k][k] = TLaurent::constant(sp, rng.nonzero(sp->field));
        if (series_diagonal) g[k][k] += rng.laurent(sp, 1, std::max(1, max_deg), ydeg, 1);
    }
    for (int s = 0; r > 1 && s < depth; ++s) {
        std::size_t i = static_cast<std::size_t>(rng.uniform(0, static_cast<int>(r) - 1));
        std::size_t j = static_cast<std::size_t>(rng.uniform(0, static_cast<int>(r) - 2));
        if (j >= i) ++j;
        g = grid_mul(g, elementary(sp, r, i, j, rng.laurent(sp, 0, max_deg, ydeg, 2)));
    }
    return g;
}

// ---------------------------------------------------------------- dense rank oracle

// Rank of a rational matrix by plain Gaussian elimination on mpq_class.
inline std::size_t dense_rank(std::vector<std::vector<mpq_class>> m) {
    std::size_t rows = m.size();
    if (rows == 0) return 0;
    std::size_t cols = m[0].size(), rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t p = rank;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[rank]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == rank || m[i][c] == 0) continue;
            mpq_class f = m[i][c] / m[rank][c];
            for (std::size_t k = c; k < cols; ++k) m[i][k] -= f * m[rank][k];
        }
        ++rank;
    }
    return rank;
}

// Coefficient of t^d in an element over a chart without y's, as a rational.
inline mpq_class coeff_q(const TLaurent& a, int d) {
    if (a.is_zero() || d < a.order() || d >= a.high()) return 0;
    const MultiPoly& c = a.coeff(d);
    if (c.is_zero()) return 0;
    return c.terms().front().coef.value();
}

// Dimension of { v in k[t]^2, deg v < D : t^n * g * v has no positive t-powers }
// for exact 2x2 g over k((t)) with no y's. With g = a_minus diag(t^a) a_plus this
// equals sum_i max(0, 1 - n - a_i) once D exceeds the degree of a_plus^-1.
inline std::size_t lattice_count(const Grid& g, int n, int D) {
    std::size_t r = g.size();
    int top = 0;
    for (const auto& row : g)
        for (const auto& e : row)
            if (!e.is_zero()) top = std::max(top, e.high());
    int max_deg = n + top + D;
    // Unknowns: v_j coefficient at t^e, e in [0, D).
    std::vector<std::vector<mpq_class>> rows;
    for (std::size_t i = 0; i < r; ++i)
        for (int deg = 1; deg <= max_deg; ++deg) {
            std::vector<mpq_class> row(r * static_cast<std::size_t>(D), 0);
            for (std::size_t j = 0; j < r; ++j)
                for (int e = 0; e < D; ++e) row[j * static_cast<std::size_t>(D) + static_cast<std::size_t>(e)] = coeff_q(g[i][j], deg - n - e);
            rows.push_back(std::move(row));
        }
    return r * static_cast<std::size_t>(D) - dense_rank(std::move(rows));
}

// Splitting type of an exact 2x2 g by exhaustive search over pairs a1 >= a2
// with a1 + a2 = ord det g, matching lattice counts for a range of shifts.
inline std::optional<std::vector<int>> brute_force_split(const Grid& g, int det_order, int range = 8, int D = 24) {
    std::vector<std::size_t> counts;
    for (int n = -range; n <= range; ++n) counts.push_back(lattice_count(g, n, D));
    std::optional<std::vector<int>> found;
    for (int a1 = -range; a1 <= range; ++a1) {
        int a2 = det_order - a1;
        if (a2 > a1) continue;
        bool match = true;
        for (int n = -range; n <= range && match; ++n) {
            long expect = std::max(0, 1 - n - a1) + std::max(0, 1 - n - a2);
            match = static_cast<long>(counts[static_cast<std::size_t>(n + range)]) == expect;
        }
        if (match) {
            if (found) return std::nullopt;  // ambiguous search window
            found = std::vector<int>{a1, a2};
        }
    }
    return found;
}

}  // namespace support
