#pragma once

#include <climits>
#include <string>
#include <vector>

#include "tubular/poly.hpp"

namespace tubular {

// Precision sentinel for exact (finitely supported) elements.
inline constexpr int kExact = INT_MAX;
inline constexpr int kDefaultPrecision = 16;

// Saturating add on precisions/orders: kExact absorbs.
int prec_add(long a, long b);

// Truncated Laurent series  sum_{d=low}^{prec-1} c_d t^d + O(t^prec)  with
// coefficients c_d in k[y] (Laurent in the invertible y's).
//
// Normal form: when nonzero, c_low != 0 and the last stored coefficient is
// nonzero; all stored degrees are < prec. A zero element keeps its precision:
// 0 + O(t^N) has order N, the exact zero has order kExact.
class TLaurent {
public:
    explicit TLaurent(SpacePtr space);  // exact zero

    static TLaurent zero(SpacePtr space, int prec = kExact);
    static TLaurent constant(SpacePtr space, const Scalar& c);
    static TLaurent monomial(SpacePtr space, const Scalar& c, int t_exp, Monomial y);
    // Normalizes; drops coefficients at degree >= prec; validates flags.
    static TLaurent from_coeffs(SpacePtr space, int low, std::vector<MultiPoly> coeffs, int prec = kExact);

    const VarSpace& space() const { return *space_; }
    const SpacePtr& space_ptr() const { return space_; }
    Field field() const { return space_->field; }

    bool is_exact() const { return prec_ == kExact; }
    bool is_zero() const { return coeffs_.empty(); }
    int prec() const { return prec_; }
    // t-adic order: lowest nonzero degree, or prec for (truncated/exact) zero.
    int order() const { return is_zero() ? prec_ : low_; }
    int low() const { return order(); }
    // One past the highest stored nonzero degree (== low for zero).
    int high() const { return is_zero() ? order() : low_ + static_cast<int>(coeffs_.size()); }
    const MultiPoly& coeff(int degree) const;
    const MultiPoly& lowest_coeff() const;
    const std::vector<MultiPoly>& coeffs() const { return coeffs_; }

    // Relative precision prec - order (kExact for exact elements).
    int relative_prec() const;

    TLaurent operator-() const;
    TLaurent& operator+=(const TLaurent& o);
    TLaurent& operator-=(const TLaurent& o);
    friend TLaurent operator+(TLaurent a, const TLaurent& b) { return a += b; }
    friend TLaurent operator-(TLaurent a, const TLaurent& b) { return a -= b; }
    friend TLaurent operator*(const TLaurent& a, const TLaurent& b);

    TLaurent scaled(const Scalar& c) const;
    TLaurent times_monomial(const Monomial& m) const;
    // Multiplication by t^k (exact shift of degrees and precision).
    TLaurent shifted(int k) const;
    TLaurent truncated(int prec) const;
    // Terms of degree >= d (precision kept) / terms of degree < d as an exact element.
    TLaurent tail_from(int d) const;
    TLaurent head_below(int d) const;
    // Reinterpret in a ring with the same names and at least the same invertible variables.
    TLaurent with_space(SpacePtr space) const;
    // Forget the precision marker (coefficients stay).
    TLaurent as_exact() const;

    bool is_polynomial_in_t() const { return is_zero() || low_ >= 0; }
    int max_abs_y_degree() const;

    // Structural identity: same coefficients and same precision.
    friend bool operator==(const TLaurent& a, const TLaurent& b);
    friend bool operator!=(const TLaurent& a, const TLaurent& b) { return !(a == b); }

private:
    void normalize();
    void validate() const;

    SpacePtr space_;
    int low_ = 0;
    int prec_ = kExact;
    std::vector<MultiPoly> coeffs_;
};

enum class Comparison { Equal, Different, Indistinguishable };

// Compares at min(prec_a, prec_b). Indistinguishable: the elements agree up
// to that precision but carry different precisions.
Comparison compare(const TLaurent& a, const TLaurent& b);
bool agree(const TLaurent& a, const TLaurent& b);

// Inverse of a unit: the lowest coefficient must be a unit of the coefficient
// ring. `relative_prec` counts significant terms of the result; it is capped
// by the relative precision of `a`. Result order is -order(a).
TLaurent laurent_inv(const TLaurent& a, int relative_prec = kDefaultPrecision);

// Exact inverse when a is a single term c*t^d*y^m with y^m invertible.
bool is_monomial_unit(const TLaurent& a);

}  // namespace tubular
