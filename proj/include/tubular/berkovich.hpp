#pragma once

#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "tubular/laurent.hpp"

namespace tubular {

// A real semivaluation on a chart's A-ring k[y][t], k trivially valued.
//   Monomial: |y^a t^d| = prod r_v^a_v, extended by max over terms. Variables
//             without a stated radius have radius 1.
//   Eval:     |f| = rho^(ord_t f(a, t)) for a point a in k^m, and |f| = 0
//             when f(a, t) vanishes identically.
struct SemivalPoint {
    enum class Mode { Monomial, Eval };
    Mode mode = Mode::Monomial;
    std::map<std::string, mpq_class> radii;   // Monomial
    std::map<std::string, Scalar> values;     // Eval, y-coordinates
    mpq_class rho = 1;                        // Eval

    static SemivalPoint monomial(std::map<std::string, mpq_class> radii);
    static SemivalPoint evaluation(std::map<std::string, Scalar> values, mpq_class rho);
};

enum class RegionLabel { U_ETA, Z_ETA, W };

std::string region_name(RegionLabel r);

// Checks radii in [0,1] and names against the space; missing eval values are an error.
void validate_point(const SemivalPoint& p, const VarSpace& space);

mpq_class sval_eval(const SemivalPoint& p, const TLaurent& f);

RegionLabel classify_region(const SemivalPoint& p, const std::vector<TLaurent>& gens);

// max_i |f_i(p)|, for points of W only (NotInW otherwise).
mpq_class fiber_coord(const SemivalPoint& p, const std::vector<TLaurent>& gens);

SemivalPoint power_point(const SemivalPoint& p, int s);

// Smallest 0-based index attaining max_i |f_i(p)|; W points only.
std::size_t chart_select(const SemivalPoint& p, const std::vector<TLaurent>& gens);

// "mono: t=1/2, y=1/4" or "eval: y=3; rho=1/2".
SemivalPoint parse_point(const std::string& text, const VarSpace& space);
std::string render_point(const SemivalPoint& p);

// Comma-separated A-ring elements, e.g. "t, t*y".
std::vector<TLaurent> parse_generators(const std::string& text, const SpacePtr& space);

std::string render_rational(const mpq_class& q);

}  // namespace tubular
