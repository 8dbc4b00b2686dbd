#include <doctest.h>

#include "support.hpp"

using namespace support;

TEST_SUITE("scalars") {
    TEST_CASE("rationals are kept in lowest terms") {
        Scalar a(QQ(), mpq_class(6, -4));
        CHECK(a.str() == "-3/2");
        CHECK((a * Scalar(QQ(), 2L)).str() == "-3");
        CHECK(a.inverse().str() == "-2/3");
    }

    TEST_CASE("prime field values live in [0, p)") {
        Field f = Field::prime(7);
        CHECK(Scalar(f, -1L).str() == "6");
        CHECK(Scalar(f, mpq_class(1, 3)).str() == "5");
        CHECK((Scalar(f, 3L) * Scalar(f, 5L)).str() == "1");
        CHECK_THROWS_AS(Scalar(f, mpq_class(1, 7)), NotAUnit);
    }

    TEST_CASE("field names parse") {
        CHECK(parse_field("QQ") == QQ());
        CHECK(parse_field("GF(5)") == Field::prime(5));
        CHECK_THROWS(parse_field("GF(6)"));
    }

    TEST_CASE("mixing fields is rejected") {
        CHECK_THROWS_AS(Scalar(QQ(), 1L) + Scalar(Field::prime(5), 1L), FieldMismatch);
    }
}

TEST_SUITE("laurent arithmetic") {
    TEST_CASE("shift by a monomial") {
        auto sp = t_only();
        CHECK(render(P("t^-1 + 1 + O(t^2)", sp) * P("t", sp)) == "1 + t + O(t^3)");
    }

    TEST_CASE("difference of squares keeps the matched precision") {
        auto sp = ty();
        TLaurent p = P("1 + y*t + O(t^3)", sp) * P("1 - y*t + O(t^3)", sp);
        CHECK(render(p) == "1 - t^2*y^2 + O(t^3)");
        CHECK(p.prec() == 3);
    }

    TEST_CASE("zero absorbs and keeps its precision") {
        auto sp = t_only();
        TLaurent z = P("1 + t + O(t^5)", sp) * TLaurent(sp);
        CHECK(z.is_zero());
        CHECK(z.is_exact());
        TLaurent z2 = P("t^2 + O(t^6)", sp) * TLaurent::zero(sp, 3);
        CHECK(z2.is_zero());
        CHECK(z2.prec() == 5);
    }

    TEST_CASE("precision rules for sums and products") {
        auto sp = t_only();
        TLaurent a = P("t^-2 + t + O(t^4)", sp), b = P("t + O(t^3)", sp);
        CHECK((a + b).prec() == 3);
        CHECK((a * b).prec() == std::min(4 + 1, 3 - 2));
    }

    TEST_CASE("mixed charts and fields are rejected") {
        CHECK_THROWS_AS(P("t", t_only()) + P("t", t_only(Field::prime(3))), FieldMismatch);
        CHECK_THROWS_AS(P("t", t_only()) + P("t", ty()), ChartMismatch);
    }

    TEST_CASE("comparison reports indistinguishable precisions") {
        auto sp = t_only();
        CHECK(compare(P("1 + t + O(t^2)", sp), P("1 + t + O(t^3)", sp)) == Comparison::Indistinguishable);
        CHECK(compare(P("1 + t + O(t^3)", sp), P("1 + t + O(t^3)", sp)) == Comparison::Equal);
        CHECK(compare(P("1 + O(t^3)", sp), P("1 + t + O(t^3)", sp)) == Comparison::Different);
    }

    TEST_CASE("ring axioms on random triples") {
        Rng rng(11);
        auto sp = ty(true);
        for (int k = 0; k < 60; ++k) {
            TLaurent a = rng.laurent(sp, -2, 3, 2, 3).truncated(6);
            TLaurent b = rng.laurent(sp, -1, 3, 2, 3).truncated(5);
            TLaurent c = rng.laurent(sp, 0, 4, 2, 3).truncated(7);
            CHECK(agree((a * b) * c, a * (b * c)));
            CHECK(agree(a * b, b * a));
            CHECK(agree(a * (b + c), a * b + a * c));
            CHECK(agree((a + b) + c, a + (b + c)));
        }
    }
}

TEST_SUITE("laurent inverse") {
    TEST_CASE("monomial") { CHECK(render(laurent_inv(P("t + O(t^5)", t_only()), 4)) == "t^-1 + O(t^3)"); }

    TEST_CASE("geometric series") {
        CHECK(render(laurent_inv(P("1 - t", t_only()), 4)) == "1 + t + t^2 + t^3 + O(t^4)");
    }

    TEST_CASE("non-unit lowest coefficient") {
        CHECK_THROWS_AS(laurent_inv(P("y + t", ty()), 4), NotAUnit);
        CHECK_THROWS_AS(laurent_inv(P("1 + y + t", ty(true)), 4), NotAUnit);
    }

    TEST_CASE("inverse of 2 + t checked by multiplying back") {
        auto sp = t_only();
        TLaurent a = P("2 + t", sp);
        TLaurent inv = laurent_inv(a, 3);
        CHECK(render(inv) == "1/2 - 1/4*t + 1/8*t^2 + O(t^3)");
        // Independent check: a * inv must be 1 up to the stated precision.
        TLaurent prod = a * inv;
        CHECK(prod.prec() == 3);
        CHECK(compare(prod, P("1 + O(t^3)", sp)) == Comparison::Equal);
    }

    TEST_CASE("random units multiply back to one") {
        Rng rng(5);
        auto sp = ty(true);
        for (int k = 0; k < 80; ++k) {
            int low = rng.uniform(-3, 3);
            TLaurent lead = TLaurent::monomial(sp, rng.nonzero(QQ()), low, Monomial(std::vector<int>{rng.uniform(-2, 2)}));
            TLaurent a = (lead + rng.laurent(sp, low + 1, low + 4, 2, 3)).truncated(low + 9);
            TLaurent inv = laurent_inv(a, 9);
            TLaurent one = a * inv;
            CHECK(compare(one, TLaurent::constant(sp, Scalar::one(QQ())).truncated(one.prec())) == Comparison::Equal);
            CHECK(inv.order() == -low);
        }
    }
}

TEST_SUITE("substitution") {
    SpacePtr source() { return make_space(QQ(), "t", {"y"}); }
    SpacePtr target() { return make_space(QQ(), "t", {"w"}, {true}); }
    Substitution sigma() {
        Field f = QQ();
        return Substitution(source(), target(), {Scalar::one(f), 1, Monomial(std::vector<int>{-1})},
                            {{Scalar::one(f), 0, Monomial(std::vector<int>{-1})}});
    }

    TEST_CASE("monomial images") {
        CHECK(render(sigma().apply(P("t + O(t^3)", source()))) == "t*w^-1 + O(t^3)");
        CHECK(render(sigma().apply(P("1 + y*t", source()))) == "1 + t*w^-2");
    }

    TEST_CASE("identity substitution") {
        auto sp = source();
        TLaurent a = P("3 + y*t^2 + O(t^5)", sp);
        CHECK(Substitution::identity(sp).apply(a) == a);
    }

    TEST_CASE("images must respect invertibility and t-degree") {
        Field f = QQ();
        auto plain = make_space(f, "t", {"w"});
        CHECK_THROWS_AS(Substitution(source(), plain, {Scalar::one(f), 1, Monomial(std::vector<int>{-1})},
                                     {{Scalar::one(f), 0, Monomial(std::vector<int>{1})}}),
                        FlagViolation);
        CHECK_THROWS(Substitution(source(), target(), {Scalar::one(f), 0, Monomial(std::vector<int>{1})},
                                  {{Scalar::one(f), 0, Monomial(std::vector<int>{1})}}));
    }

    TEST_CASE("precision scales with the t-degree of the image") {
        Field f = QQ();
        auto sp = t_only();
        Substitution sq(sp, sp, {Scalar::one(f), 2, Monomial()}, {});
        CHECK(render(sq.apply(P("1 + t + O(t^3)", sp))) == "1 + t^2 + O(t^6)");
    }

    TEST_CASE("substitution is a ring homomorphism on random inputs") {
        Rng rng(21);
        auto s = sigma();
        auto sp = source();
        for (int k = 0; k < 50; ++k) {
            TLaurent a = rng.laurent(sp, -1, 3, 2, 3).truncated(5);
            TLaurent b = rng.laurent(sp, 0, 3, 2, 3).truncated(4);
            CHECK(agree(s.apply(a * b), s.apply(a) * s.apply(b)));
            CHECK(agree(s.apply(a + b), s.apply(a) + s.apply(b)));
        }
    }
}

TEST_SUITE("element parsing") {
    TEST_CASE("reads truncated and exact elements") {
        auto sp = t_only();
        TLaurent a = P("t^-1 + 1 + O(t^2)", sp);
        CHECK(a.order() == -1);
        CHECK(a.prec() == 2);
        CHECK(a.coeffs().size() == 2);
        TLaurent b = P("3/2*y^2*t", ty());
        CHECK(b.is_exact());
        CHECK(render(b) == "3/2*t*y^2");
    }

    TEST_CASE("negative exponent on a non-invertible variable") {
        CHECK_THROWS_AS(P("y^-1*t", ty()), ParseError);
        CHECK_NOTHROW(P("y^-1*t", ty(true)));
    }

    TEST_CASE("syntax errors carry a position") {
        try {
            P("1 + * t", t_only());
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(e.position() == 4);
        }
    }

    TEST_CASE("render then parse is the identity on canonical forms") {
        Rng rng(3);
        auto sp = make_space(QQ(), "t", {"y1", "y2"}, {false, true});
        for (int k = 0; k < 80; ++k) {
            TLaurent a = rng.laurent(sp, -3, 4, 2, 4);
            if (rng.coin()) a = a.truncated(rng.uniform(-3, 6));
            std::string s = render(a);
            CHECK(P(s, sp) == a);
            CHECK(render(P(s, sp)) == s);
        }
    }

    TEST_CASE("prime field coefficients are reduced") {
        CHECK(render(P("8*t + 9", t_only(Field::prime(7)))) == "2 + t");
    }
}

TEST_SUITE("boxes") {
    TEST_CASE("zero and direct placement") {
        auto sp = t_only();
        Box b(-1, 2, 0);
        CHECK(box_vectorize(TLaurent(sp), b) == std::vector<Scalar>(3, Scalar::zero(QQ())));
        auto v = box_vectorize(P("t^-1 + 2*t", sp), b);
        CHECK(v == std::vector<Scalar>{Scalar(QQ(), 1L), Scalar(QQ(), 0L), Scalar(QQ(), 2L)});
    }

    TEST_CASE("support outside the box") {
        auto sp = t_only();
        CHECK_THROWS_AS(box_vectorize(P("t^3", sp), Box(-1, 2, 0)), TruncationLoss);
        CHECK_NOTHROW(box_vectorize(P("t^3", sp), Box(-1, 2, 0), true));
        CHECK_THROWS_AS(box_vectorize(P("1 + O(t)", sp), Box(-1, 2, 0)), TruncationLoss);
    }

    TEST_CASE("vectorization is linear") {
        Rng rng(8);
        auto sp = ty(true);
        Box b(-2, 3, 2);
        for (int k = 0; k < 40; ++k) {
            TLaurent a = rng.laurent(sp, -2, 2, 1, 3), c = rng.laurent(sp, -2, 2, 1, 3);
            Scalar alpha = rng.scalar(QQ());
            auto va = box_vectorize(a, b), vc = box_vectorize(c, b);
            auto vs = box_vectorize(a.scaled(alpha) + c, b);
            for (std::size_t i = 0; i < vs.size(); ++i) CHECK(vs[i] == alpha * va[i] + vc[i]);
            CHECK(box_unvectorize(sp, b, va) == a);
        }
    }

    TEST_CASE("box text") {
        CHECK(parse_box("-4:5:0") == Box(-4, 5, 0));
        CHECK(render_box(Box(-6, 1, 6)) == "-6:1:6");
        CHECK_THROWS(parse_box("3:3:0"));
    }
}
