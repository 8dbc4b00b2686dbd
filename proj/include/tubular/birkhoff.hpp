#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tubular/matrix.hpp"

namespace tubular {

// g = a_minus * diag(t^split) * a_plus with a_minus in GL_r(k[1/t]) (tag U,
// exact), a_plus in GL_r(k[[t]]) (tag XHAT) and split descending.
//
// a_minus(oo) is normalized to be block upper unipotent with respect to the
// blocks of equal split. It equals I whenever g admits such a factorization;
// some g do not (for g = [[t,1],[0,1]] every factorization has a_minus(oo)
// with a nonzero upper corner).
struct BirkhoffFactorization {
    RMatrix a_minus;
    std::vector<int> split;
    RMatrix a_plus;
};

// Requires a chart without y-variables and g in GL_r over W. Needs relative
// precision at least 2 * (order spread of the entries) + 2.
BirkhoffFactorization birkhoff(const RMatrix& g);

// Diagonal factor diag(t^split) as an exact U-matrix of g's chart.
RMatrix split_diagonal(const ChartPtr& chart, const std::vector<int>& split);

// Which ring plays the role of O(U) on the chart side of a factorization.
//   ChartLocalization:   k[y][t, 1/t], so every power of t is a U-unit.
//   ProjectiveComplement: k[1/t] (the affine line at infinity), single
//                         variable charts only.
enum class USide { ChartLocalization, ProjectiveComplement };

// g = h_xhat * h_u with h_xhat over XHAT and h_u over U.
struct TwoSidedFactor {
    std::optional<RMatrix> h_xhat;
    std::optional<RMatrix> h_u;
    // Nonzero splitting type blocking the factorization (ProjectiveComplement).
    std::vector<int> obstruction;
    std::string reason;

    bool present() const { return h_xhat.has_value(); }
};

TwoSidedFactor two_sided_factor(const RMatrix& g, USide side = USide::ChartLocalization);

}  // namespace tubular
