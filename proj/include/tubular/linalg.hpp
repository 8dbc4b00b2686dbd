#pragma once

#include <map>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "tubular/scalar.hpp"

namespace tubular {

// Dense matrix over k, row major.
class ScalarMatrix {
public:
    ScalarMatrix() = default;
    ScalarMatrix(Field f, std::size_t rows, std::size_t cols);
    static ScalarMatrix identity(Field f, std::size_t n);

    Field field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Scalar& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Scalar& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    friend ScalarMatrix operator*(const ScalarMatrix& a, const ScalarMatrix& b);
    friend bool operator==(const ScalarMatrix&, const ScalarMatrix&) = default;

private:
    Field field_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

// In-place reduced row echelon form; returns the pivot columns.
std::vector<std::size_t> rref(ScalarMatrix& m);
std::size_t rank(ScalarMatrix m);

// Kernel basis in canonical form: one vector per free column (ascending),
// with a 1 at its free column and 0 at every other free column.
std::vector<std::vector<Scalar>> kernel_basis(const ScalarMatrix& m);

Scalar determinant(ScalarMatrix m);
std::optional<ScalarMatrix> inverse(const ScalarMatrix& m);
// Some nonzero v with v^T m = 0, if m is singular.
std::optional<std::vector<Scalar>> left_null_vector(const ScalarMatrix& m);

// Homogeneous system with sparse rows over `nvars` unknowns. The kernel is
// computed per connected component of the variable/row incidence graph; the
// result equals kernel_basis of the assembled dense matrix.
class SparseSystem {
public:
    SparseSystem(Field f, std::size_t nvars);

    // Adds coef to entry (row key, var). Rows are created on first use.
    void add(std::size_t row, std::size_t var, const Scalar& coef);
    std::size_t nvars() const { return nvars_; }
    std::size_t nrows() const { return rows_.size(); }

    std::vector<std::vector<Scalar>> kernel() const;

private:
    Field field_;
    std::size_t nvars_;
    std::map<std::size_t, std::map<std::size_t, Scalar>> rows_;
};

// Sublattice of Z^n spanned by integer generators, kept in Hermite normal form.
class IntLattice {
public:
    explicit IntLattice(std::size_t n) : n_(n) {}
    void add_generator(const std::vector<long>& g);
    bool contains(const std::vector<long>& v) const;
    std::size_t dimension() const { return n_; }
    std::size_t rank() const { return basis_.size(); }

private:
    void reduce();

    std::size_t n_;
    std::vector<std::vector<mpz_class>> basis_;
};

}  // namespace tubular
