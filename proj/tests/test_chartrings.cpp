#include <doctest.h>

#include "support.hpp"

using namespace support;

namespace {

Element E(const ChartPtr& c, RingTag tag, const std::string& s) { return Element(c, tag, P(s, c->space)); }

ChartPtr plane_chart() { return make_chart("c1", ty()); }

}  // namespace

TEST_SUITE("ring tags") {
    TEST_CASE("support constraints") {
        auto c = line_chart();
        CHECK_THROWS_AS(E(c, RingTag::A, "t^-1"), IllegalTag);
        CHECK_THROWS_AS(E(c, RingTag::A, "1 + O(t^3)"), IllegalTag);
        CHECK_THROWS_AS(E(c, RingTag::U, "1 + O(t^3)"), IllegalTag);
        CHECK_THROWS_AS(E(c, RingTag::XHAT, "t^-1 + O(t^3)"), IllegalTag);
        CHECK_NOTHROW(E(c, RingTag::W, "t^-1 + O(t^3)"));
        CHECK_NOTHROW(E(c, RingTag::U, "t^-3 + t"));
    }

    TEST_CASE("tag names") {
        CHECK(parse_tag("XHAT") == RingTag::XHAT);
        CHECK(tag_name(RingTag::U) == "U");
        CHECK_THROWS_AS(parse_tag("V"), IllegalTag);
    }
}

TEST_SUITE("embeddings") {
    TEST_CASE("legal arrows") {
        auto c = line_chart();
        CHECK(render(embed(E(c, RingTag::A, "t"), RingTag::W, 5).value()) == "t + O(t^5)");
        CHECK(render(embed(E(c, RingTag::U, "t^-1"), RingTag::W, 4).value()) == "t^-1 + O(t^4)");
        CHECK_THROWS_AS(embed(E(c, RingTag::U, "t^-1"), RingTag::XHAT), IllegalArrow);
        CHECK_THROWS_AS(embed(E(c, RingTag::W, "1 + O(t^2)"), RingTag::XHAT), IllegalArrow);
    }

    TEST_CASE("the square commutes on random A-elements") {
        Rng rng(17);
        auto c = plane_chart();
        for (int k = 0; k < 60; ++k) {
            Element a(c, RingTag::A, rng.laurent(c->space, 0, 6, 3, 4));
            int prec = rng.uniform(1, 8);
            Element via_u = embed(embed(a, RingTag::U), RingTag::W, prec);
            Element via_x = embed(embed(a, RingTag::XHAT, prec), RingTag::W, prec);
            CHECK(via_u == via_x);
        }
    }
}

TEST_SUITE("units") {
    TEST_CASE("t is a W-unit but not an XHAT-unit") {
        auto c = line_chart();
        CHECK(is_unit(E(c, RingTag::W, "t + O(t^8)")));
        CHECK_FALSE(is_unit(E(c, RingTag::XHAT, "t + O(t^8)")));
    }

    TEST_CASE("tag-specific criteria") {
        auto c = plane_chart();
        CHECK(is_unit(E(c, RingTag::XHAT, "1 + t + O(t^8)")));
        CHECK_FALSE(is_unit(E(c, RingTag::W, "y + t + O(t^8)")));
        CHECK(is_unit(E(c, RingTag::A, "3")));
        CHECK_FALSE(is_unit(E(c, RingTag::A, "1 + t")));
        CHECK(is_unit(E(c, RingTag::U, "2*t^-3")));
        CHECK_FALSE(is_unit(E(c, RingTag::U, "t^-3 + 1")));
        auto inv = make_chart("c2", ty(true));
        CHECK(is_unit(E(inv, RingTag::U, "y^-2*t")));
        CHECK(is_unit(E(inv, RingTag::W, "y + t + O(t^4)")));
    }

    TEST_CASE("ring inverses") {
        auto c = line_chart();
        CHECK(render(ring_inv(E(c, RingTag::A, "2")).value()) == "1/2");
        CHECK(render(ring_inv(E(c, RingTag::U, "t^2")).value()) == "t^-2");
        CHECK(render(ring_inv(E(c, RingTag::XHAT, "1 - t + O(t^4)"), 4).value()) == "1 + t + t^2 + t^3 + O(t^4)");
        CHECK_THROWS_AS(ring_inv(E(c, RingTag::XHAT, "t + O(t^4)")), NotAUnit);
    }

    TEST_CASE("units are closed under products and inversion is an involution") {
        Rng rng(23);
        auto c = make_chart("c", ty(true));
        for (int k = 0; k < 60; ++k) {
            auto unit = [&] {
                int low = rng.uniform(-2, 2);
                TLaurent lead =
                    TLaurent::monomial(c->space, rng.nonzero(QQ()), low, Monomial(std::vector<int>{rng.uniform(-1, 1)}));
                return Element(c, RingTag::W, (lead + rng.laurent(c->space, low + 1, low + 3, 1, 2)).truncated(low + 8));
            };
            Element a = unit(), b = unit();
            CHECK(is_unit(a * b));
            Element back = ring_inv(ring_inv(a, 8), 8);
            CHECK(agree(back.value(), a.value()));
        }
    }
}

TEST_SUITE("overlap homomorphisms") {
    TEST_CASE("projective plane relations") {
        Scene p2 = build_projective(2);
        const Overlap& ov = p2.cover.require_overlap(0, 1);
        auto c1 = p2.cover.chart(0);
        CHECK(render(chart_hom(E(c1, RingTag::W, "t + O(t^3)"), ov.sigma, ov.chart).value()) == "t*y1^-1 + O(t^3)");
        CHECK(render(chart_hom(E(c1, RingTag::W, "y2"), ov.sigma, ov.chart).value()) == "y1^-1");
        CHECK(render(chart_hom(E(c1, RingTag::XHAT, "5"), ov.sigma, ov.chart).value()) == "5");
        CHECK_THROWS_AS(chart_hom(E(c1, RingTag::U, "t"), ov.sigma, ov.chart), IllegalTag);
    }

    TEST_CASE("round trip through both overlaps") {
        Scene p2 = build_projective(2);
        const Overlap& fwd = p2.cover.require_overlap(0, 1);
        const Overlap& bwd = p2.cover.require_overlap(1, 0);
        Substitution back = bwd.sigma.rebased(fwd.chart->space, p2.cover.chart(0)->space->fully_localized() == *bwd.chart->space
                                                                     ? bwd.chart->space
                                                                     : std::make_shared<const VarSpace>(bwd.chart->space->fully_localized()));
        Rng rng(31);
        auto sp = p2.cover.chart(0)->space;
        for (int k = 0; k < 40; ++k) {
            TLaurent a = rng.laurent(sp, -2, 3, 3, 4).truncated(rng.uniform(2, 6));
            TLaurent there = fwd.sigma.apply(a);
            TLaurent home = back.apply(there);
            CHECK(compare(home, a.with_space(home.space_ptr())) == Comparison::Equal);
        }
    }
}

TEST_SUITE("serialization") {
    TEST_CASE("tagged elements round trip") {
        Scene p2 = build_projective(2);
        auto lookup = [&](const std::string& n) { return p2.cover.find_chart(n); };
        Element e = E(p2.cover.require_overlap(0, 1).chart, RingTag::W, "t^-1*y1^-2 + 3 + O(t^4)");
        std::string s = serialize(e);
        CHECK(s == "W:c1~c2:t^-1*y1^-2 + 3 + O(t^4)");
        CHECK(parse_tagged(s, lookup) == e);
        CHECK_THROWS(parse_tagged("W:nowhere:1", lookup));
    }
}
