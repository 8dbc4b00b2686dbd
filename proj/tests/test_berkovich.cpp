#include <doctest.h>

#include "support.hpp"

using namespace support;

namespace {

mpq_class power(const mpq_class& q, int e) {
    mpq_class r = 1;
    for (int i = 0; i < e; ++i) r *= q;
    return r;
}

// Valuation computed straight from the definition, term by term.
mpq_class oracle(const SemivalPoint& p, const TLaurent& f) {
    const VarSpace& sp = f.space();
    auto radius = [&](const std::string& v) {
        auto it = p.radii.find(v);
        return it == p.radii.end() ? mpq_class(1) : it->second;
    };
    if (p.mode == SemivalPoint::Mode::Monomial) {
        mpq_class best = 0;
        for (int d = f.order(); !f.is_zero() && d < f.high(); ++d)
            for (const auto& term : f.coeff(d).terms()) {
                mpq_class v = power(radius(sp.t_name), d);
                for (std::size_t i = 0; i < sp.nvars(); ++i) v *= power(radius(sp.y_names[i]), term.mono.exp[i]);
                best = std::max(best, v);
            }
        return best;
    }
    for (int d = f.order(); !f.is_zero() && d < f.high(); ++d) {
        mpq_class sum = 0;
        for (const auto& term : f.coeff(d).terms()) {
            mpq_class v = term.coef.value();
            for (std::size_t i = 0; i < sp.nvars(); ++i) v *= power(p.values.at(sp.y_names[i]).value(), term.mono.exp[i]);
            sum += v;
        }
        if (sum != 0) return power(p.rho, d);
    }
    return 0;
}

SemivalPoint mono(const std::string& text, const SpacePtr& sp) { return parse_point(text, *sp); }

}  // namespace

TEST_SUITE("semivaluations") {
    TEST_CASE("evaluation examples") {
        auto sp = ty();
        CHECK(sval_eval(mono("mono: t=1/2", sp), P("t", sp)) == mpq_class(1, 2));
        CHECK(sval_eval(mono("mono: t=1/2, y=1/4", sp), P("t + y", sp)) == mpq_class(1, 2));
        CHECK(sval_eval(mono("mono: t=1/3, y=0", sp), P("-7", sp)) == 1);
        CHECK(sval_eval(mono("mono: t=0", sp), P("5", sp)) == 1);
        CHECK(sval_eval(mono("mono: t=1/2", sp), TLaurent(sp)) == 0);
        CHECK(sval_eval(mono("eval: y=3; rho=1/2", sp), P("y - 3 + t^2", sp)) == mpq_class(1, 4));
        CHECK(sval_eval(mono("eval: y=3; rho=1/2", sp), P("y - 3", sp)) == 0);
        CHECK(sval_eval(mono("eval: y=3; rho=0", sp), P("y - 2 + t", sp)) == 1);
    }

    TEST_CASE("truncated inputs are refused") {
        auto sp = t_only();
        CHECK_THROWS(sval_eval(mono("mono: t=1/2", sp), P("t + O(t^4)", sp)));
    }

    TEST_CASE("radii outside the unit interval") {
        auto sp = ty();
        CHECK_THROWS(validate_point(mono("mono: t=3/2", sp), *sp));
        CHECK_THROWS(mono("mono: z=1/2", sp));
    }

    TEST_CASE("point literals round trip") {
        auto sp = ty();
        for (const char* s : {"mono: t=1/2, y=1/4", "eval: y=3; rho=1/2"}) CHECK(render_point(mono(s, sp)) == s);
    }

    TEST_CASE("randomized axioms against the term oracle") {
        Rng rng(1234);
        auto sp = make_space(QQ(), "t", {"y1", "y2"});
        for (int k = 0; k < 300; ++k) {
            SemivalPoint p;
            if (rng.coin()) {
                p = SemivalPoint::monomial({{"t", rng.unit_fraction_or_edge()},
                                            {"y1", rng.unit_fraction_or_edge()},
                                            {"y2", rng.unit_fraction_or_edge()}});
            } else {
                p = SemivalPoint::evaluation({{"y1", rng.scalar(QQ())}, {"y2", rng.scalar(QQ())}}, rng.unit_fraction_or_edge());
            }
            TLaurent f = rng.laurent(sp, 0, 3, 2, 3), g = rng.laurent(sp, 0, 3, 2, 3);
            mpq_class vf = sval_eval(p, f), vg = sval_eval(p, g);
            CHECK(vf == oracle(p, f));
            CHECK(sval_eval(p, f * g) == vf * vg);
            CHECK(sval_eval(p, f + g) <= std::max(vf, vg));
            CHECK(sval_eval(p, TLaurent::constant(sp, Scalar::one(QQ()))) == 1);
        }
    }
}

TEST_SUITE("regions") {
    TEST_CASE("principal generator") {
        auto sp = t_only();
        auto gens = parse_generators("t", sp);
        CHECK(classify_region(mono("mono: t=0", sp), gens) == RegionLabel::Z_ETA);
        CHECK(classify_region(mono("mono: t=1", sp), gens) == RegionLabel::U_ETA);
        CHECK(classify_region(mono("mono: t=1/2", sp), gens) == RegionLabel::W);
        CHECK(region_name(RegionLabel::U_ETA) == "U_ETA");
    }

    TEST_CASE("fiber coordinate") {
        auto sp = ty();
        CHECK(fiber_coord(mono("mono: t=1/3", sp), parse_generators("t", sp)) == mpq_class(1, 3));
        CHECK(fiber_coord(mono("mono: t=1/2, y=1/2", sp), parse_generators("t, t*y", sp)) == mpq_class(1, 2));
        CHECK_THROWS_AS(fiber_coord(mono("mono: t=1", sp), parse_generators("t", sp)), NotInW);
        CHECK_THROWS_AS(fiber_coord(mono("mono: t=0", sp), parse_generators("t", sp)), NotInW);
    }

    TEST_CASE("one generator of absolute value one puts the point in U") {
        auto sp = ty();
        CHECK(classify_region(mono("mono: t=1/2, y=1", sp), parse_generators("t, y", sp)) == RegionLabel::U_ETA);
    }

    TEST_CASE("power action") {
        auto sp = t_only();
        auto gens = parse_generators("t", sp);
        SemivalPoint p = mono("mono: t=1/2", sp);
        SemivalPoint p2 = power_point(p, 2);
        CHECK(p2.radii.at("t") == mpq_class(1, 4));
        CHECK(fiber_coord(p2, gens) == mpq_class(1, 4));
        CHECK(render_point(power_point(p, 1)) == render_point(p));
        CHECK(classify_region(power_point(mono("mono: t=1", sp), 5), gens) == RegionLabel::U_ETA);
        CHECK_THROWS(power_point(p, 0));
    }

    TEST_CASE("chart selection") {
        auto sp = ty();
        CHECK(chart_select(mono("mono: t=1/2", sp), parse_generators("t, t^2", sp)) == 0);
        CHECK(chart_select(mono("mono: t=1/3", sp), parse_generators("t, t", sp)) == 0);
        CHECK(chart_select(mono("mono: t=1/2, y=1", sp), parse_generators("t*y, t", sp)) == 0);
        CHECK(chart_select(mono("mono: t=1/2, y=1/8", sp), parse_generators("t*y, t", sp)) == 1);
        CHECK_THROWS_AS(chart_select(mono("mono: t=1", sp), parse_generators("t", sp)), NotInW);
    }

    TEST_CASE("partition and power invariance on random points") {
        Rng rng(77);
        auto sp = make_space(QQ(), "t", {"y1", "y2"});
        for (int k = 0; k < 300; ++k) {
            SemivalPoint p = SemivalPoint::monomial(
                {{"t", rng.unit_fraction_or_edge()}, {"y1", rng.unit_fraction_or_edge()}, {"y2", rng.unit_fraction_or_edge()}});
            std::vector<TLaurent> gens;
            int n = rng.uniform(1, 3);
            for (int i = 0; i < n; ++i) gens.push_back(rng.laurent(sp, 1, 2, 1, 2));
            mpq_class m = 0;
            for (const auto& g : gens) m = std::max(m, oracle(p, g));
            RegionLabel label = classify_region(p, gens);
            CHECK(label == (m == 1 ? RegionLabel::U_ETA : m == 0 ? RegionLabel::Z_ETA : RegionLabel::W));
            int s = rng.uniform(1, 4);
            SemivalPoint q = power_point(p, s);
            CHECK(classify_region(q, gens) == label);
            if (label != RegionLabel::W) continue;
            CHECK(fiber_coord(q, gens) == power(fiber_coord(p, gens), s));
            CHECK(chart_select(q, gens) == chart_select(p, gens));
        }
    }
}
