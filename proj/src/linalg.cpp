#include "tubular/linalg.hpp"

#include <algorithm>
#include <numeric>

#include "tubular/error.hpp"

namespace tubular {

ScalarMatrix::ScalarMatrix(Field f, std::size_t rows, std::size_t cols)
    : field_(f), rows_(rows), cols_(cols), data_(rows * cols, Scalar::zero(f)) {}

ScalarMatrix ScalarMatrix::identity(Field f, std::size_t n) {
    ScalarMatrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::one(f);
    return m;
}

ScalarMatrix operator*(const ScalarMatrix& a, const ScalarMatrix& b) {
    if (a.cols_ != b.rows_) throw Error("matrix shapes do not match");
    ScalarMatrix c(a.field_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Scalar& x = a.at(i, k);
            if (x.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                if (!b.at(k, j).is_zero()) c.at(i, j) += x * b.at(k, j);
        }
    return c;
}

std::vector<std::size_t> rref(ScalarMatrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m.at(p, c).is_zero()) ++p;
        if (p == m.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(p, j), m.at(r, j));
        Scalar inv = m.at(r, c).inverse();
        for (std::size_t j = c; j < m.cols(); ++j) m.at(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m.at(i, c).is_zero()) continue;
            Scalar f = m.at(i, c);
            for (std::size_t j = c; j < m.cols(); ++j)
                if (!m.at(r, j).is_zero()) m.at(i, j) -= f * m.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::size_t rank(ScalarMatrix m) { return rref(m).size(); }

std::vector<std::vector<Scalar>> kernel_basis(const ScalarMatrix& m) {
    ScalarMatrix r = m;
    auto pivots = rref(r);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::vector<Scalar>> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<Scalar> v(m.cols(), Scalar::zero(m.field()));
        v[f] = Scalar::one(m.field());
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r.at(i, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

Scalar determinant(ScalarMatrix m) {
    if (m.rows() != m.cols()) throw Error("determinant of a non-square matrix");
    Scalar det = Scalar::one(m.field());
    std::size_t n = m.rows();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m.at(p, c).is_zero()) ++p;
        if (p == n) return Scalar::zero(m.field());
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m.at(p, j), m.at(c, j));
            det = -det;
        }
        det *= m.at(c, c);
        Scalar inv = m.at(c, c).inverse();
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m.at(i, c).is_zero()) continue;
            Scalar f = m.at(i, c) * inv;
            for (std::size_t j = c; j < n; ++j) m.at(i, j) -= f * m.at(c, j);
        }
    }
    return det;
}

std::optional<ScalarMatrix> inverse(const ScalarMatrix& m) {
    std::size_t n = m.rows();
    if (n != m.cols()) throw Error("inverse of a non-square matrix");
    ScalarMatrix aug(m.field(), n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = Scalar::one(m.field());
    }
    auto pivots = rref(aug);
    if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
    ScalarMatrix out(m.field(), n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out.at(i, j) = aug.at(i, n + j);
    return out;
}

std::optional<std::vector<Scalar>> left_null_vector(const ScalarMatrix& m) {
    ScalarMatrix t(m.field(), m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) t.at(j, i) = m.at(i, j);
    auto k = kernel_basis(t);
    if (k.empty()) return std::nullopt;
    return k.front();
}

SparseSystem::SparseSystem(Field f, std::size_t nvars) : field_(f), nvars_(nvars) {}

void SparseSystem::add(std::size_t row, std::size_t var, const Scalar& coef) {
    if (var >= nvars_) throw Error("sparse system variable out of range");
    auto& r = rows_[row];
    auto [it, inserted] = r.emplace(var, coef);
    if (!inserted) it->second += coef;
    if (it->second.is_zero()) r.erase(it);
}

namespace {

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

}  // namespace

// RREF of a block-diagonal matrix is block-wise RREF, and the canonical kernel
// basis vector of a free column is supported in that column's block, so the
// blocks can be solved independently.
std::vector<std::vector<Scalar>> SparseSystem::kernel() const {
    UnionFind uf(nvars_);
    for (const auto& [key, row] : rows_) {
        if (row.empty()) continue;
        std::size_t first = row.begin()->first;
        for (const auto& [v, c] : row) uf.unite(first, v);
    }
    std::map<std::size_t, std::vector<std::size_t>> comp_vars;
    for (std::size_t v = 0; v < nvars_; ++v) comp_vars[uf.find(v)].push_back(v);
    std::map<std::size_t, std::vector<const std::map<std::size_t, Scalar>*>> comp_rows;
    for (const auto& [key, row] : rows_)
        if (!row.empty()) comp_rows[uf.find(row.begin()->first)].push_back(&row);

    std::map<std::size_t, std::vector<Scalar>> by_free;
    for (const auto& [root, vars] : comp_vars) {
        std::map<std::size_t, std::size_t> local;
        for (std::size_t i = 0; i < vars.size(); ++i) local[vars[i]] = i;
        const auto& rs = comp_rows[root];
        ScalarMatrix m(field_, rs.size(), vars.size());
        for (std::size_t i = 0; i < rs.size(); ++i)
            for (const auto& [v, c] : *rs[i]) m.at(i, local[v]) = c;
        for (auto& kv : kernel_basis(m)) {
            std::vector<Scalar> full(nvars_, Scalar::zero(field_));
            std::size_t free_col = nvars_;
            for (std::size_t i = 0; i < vars.size(); ++i) full[vars[i]] = kv[i];
            // The free column of a canonical kernel vector is its last nonzero entry.
            for (std::size_t i = vars.size(); i-- > 0;)
                if (!kv[i].is_zero()) {
                    free_col = vars[i];
                    break;
                }
            by_free.emplace(free_col, std::move(full));
        }
    }
    std::vector<std::vector<Scalar>> out;
    out.reserve(by_free.size());
    for (auto& [f, v] : by_free) out.push_back(std::move(v));
    return out;
}

void IntLattice::add_generator(const std::vector<long>& g) {
    if (g.size() != n_) throw Error("lattice generator has the wrong length");
    std::vector<mpz_class> row(n_);
    for (std::size_t i = 0; i < n_; ++i) row[i] = g[i];
    basis_.push_back(std::move(row));
    reduce();
}

void IntLattice::reduce() {
    std::vector<std::vector<mpz_class>> rows = std::move(basis_);
    basis_.clear();
    std::size_t r = 0;
    for (std::size_t c = 0; c < n_ && r < rows.size(); ++c) {
        // Euclid on column c among rows r.. until a single nonzero remains.
        while (true) {
            std::size_t best = rows.size();
            for (std::size_t i = r; i < rows.size(); ++i)
                if (rows[i][c] != 0 && (best == rows.size() || abs(rows[i][c]) < abs(rows[best][c]))) best = i;
            if (best == rows.size()) break;
            std::swap(rows[r], rows[best]);
            bool done = true;
            for (std::size_t i = r + 1; i < rows.size(); ++i) {
                if (rows[i][c] == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
                for (std::size_t j = c; j < n_; ++j) rows[i][j] -= q * rows[r][j];
                if (rows[i][c] != 0) done = false;
            }
            if (done) break;
        }
        if (rows[r][c] == 0) continue;
        if (rows[r][c] < 0)
            for (auto& x : rows[r]) x = -x;
        ++r;
    }
    rows.resize(r);
    basis_ = std::move(rows);
}

bool IntLattice::contains(const std::vector<long>& v) const {
    if (v.size() != n_) throw Error("lattice vector has the wrong length");
    std::vector<mpz_class> w(n_);
    for (std::size_t i = 0; i < n_; ++i) w[i] = v[i];
    for (const auto& b : basis_) {
        std::size_t p = 0;
        while (b[p] == 0) ++p;
        if (w[p] % b[p] != 0) return false;
        mpz_class q = w[p] / b[p];
        for (std::size_t j = p; j < n_; ++j) w[j] -= q * b[j];
    }
    return std::all_of(w.begin(), w.end(), [](const mpz_class& x) { return x == 0; });
}

}  // namespace tubular
