#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tubular/scalar.hpp"

namespace tubular {

// Names and invertibility flags of the coordinate variables of a ring
// k[y_1..y_m][t] (t distinguished). An empty t_name marks a Z-free
// (interior) patch whose elements never involve t.
struct VarSpace {
    Field field;
    std::string t_name;
    std::vector<std::string> y_names;
    std::vector<bool> invertible;

    std::size_t nvars() const { return y_names.size(); }
    bool has_t() const { return !t_name.empty(); }
    std::optional<std::size_t> index_of(const std::string& name) const;

    // Same field and names, and every variable invertible here that is invertible in `base`.
    bool widens(const VarSpace& base) const;
    // Copy with the named variables additionally flagged invertible.
    VarSpace widened(const std::vector<std::string>& names) const;
    VarSpace fully_localized() const;

    friend bool operator==(const VarSpace&, const VarSpace&) = default;
};

using SpacePtr = std::shared_ptr<const VarSpace>;

SpacePtr make_space(Field field, std::string t_name, std::vector<std::string> y_names,
                    std::vector<bool> invertible = {});

bool same_space(const SpacePtr& a, const SpacePtr& b);
// Throws FieldMismatch / ChartMismatch unless a and b describe the same ring.
void require_same_space(const SpacePtr& a, const SpacePtr& b);

// Exponent vector over y_1..y_m. Negative entries are only legal at
// variables flagged invertible by the owning space.
struct Monomial {
    std::vector<int> exp;

    Monomial() = default;
    explicit Monomial(std::size_t nvars) : exp(nvars, 0) {}
    explicit Monomial(std::vector<int> e) : exp(std::move(e)) {}

    std::size_t size() const { return exp.size(); }
    bool is_one() const;
    int abs_degree() const;
    int degree() const;
    Monomial operator*(const Monomial& o) const;
    Monomial pow(int k) const;
    Monomial inverse() const;
    bool legal_in(const VarSpace& space) const;

    friend bool operator==(const Monomial&, const Monomial&) = default;
};

// Graded lexicographic order: total |exponent| first, then lexicographic with
// the first declared variable most significant. Returns <0, 0, >0.
int grlex_compare(const Monomial& a, const Monomial& b);

struct GrlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const { return grlex_compare(a, b) < 0; }
};

// Sparse polynomial in y with scalar coefficients. Terms are kept in
// descending grlex order with no zero coefficients, so equality is structural.
class MultiPoly {
public:
    struct Term {
        Monomial mono;
        Scalar coef;
        friend bool operator==(const Term&, const Term&) = default;
    };

    MultiPoly() = default;
    static MultiPoly constant(const Scalar& c, std::size_t nvars);
    static MultiPoly term(const Scalar& c, Monomial m);
    // Builds from arbitrary (possibly repeated, unsorted) terms.
    static MultiPoly from_terms(std::vector<Term> terms);

    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const std::vector<Term>& terms() const { return terms_; }

    // Coefficient of monomial m (zero scalar of `f` when absent).
    Scalar coeff(const Monomial& m, Field f) const;
    bool is_constant() const;
    // Single term c*y^a with a supported on invertible variables and c != 0.
    bool is_unit_in(const VarSpace& space) const;
    bool legal_in(const VarSpace& space) const;
    int abs_degree() const;

    MultiPoly operator-() const;
    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    MultiPoly scaled(const Scalar& c) const;
    MultiPoly times_monomial(const Monomial& m) const;

    friend bool operator==(const MultiPoly&, const MultiPoly&) = default;

private:
    std::vector<Term> terms_;
};

}  // namespace tubular
