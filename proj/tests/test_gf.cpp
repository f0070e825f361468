#include <catch2/catch_amalgamated.hpp>

#include "sqgeom/gf.hpp"

using namespace sqgeom;
using gf::Field;
using gf::FqElement;
using gf::QuadraticClass;

TEST_CASE("make_field basics") {
    Field f5 = gf::make_field(5, 1);
    CHECK(f5.q() == 5);
    CHECK(f5.minus_one_is_square()); // 2*2 = 4 = -1 in F_5

    Field f9 = gf::make_field(3, 2);
    CHECK(f9.q() == 9);
    CHECK(f9.minus_one_is_square());
    // lexicographically least monic irreducible of degree 2 over Z_3 is t^2+1
    CHECK(f9.modulus() == std::vector<std::int64_t>{1, 0, 1});

    Field f7 = gf::make_field(7, 1);
    CHECK_FALSE(f7.minus_one_is_square()); // 7 = 3 mod 4

    CHECK_THROWS_AS(gf::make_field(2, 1), InvalidPrimeError);
    CHECK_THROWS_AS(gf::make_field(9, 1), InvalidPrimeError);
    CHECK_THROWS_AS(gf::make_field(5, 0), InvalidPrimeError);
    CHECK_THROWS_AS(gf::make_field(5, 40), BudgetExceededError);
}

TEST_CASE("make_field is deterministic") {
    for (auto [p, k] : {std::pair<std::int64_t, std::int64_t>{3, 2}, {5, 3}, {7, 2}, {3, 4}}) {
        Field a = gf::make_field(p, k);
        Field b = gf::make_field(p, k);
        CHECK(a.modulus() == b.modulus());
    }
}

TEST_CASE("field arithmetic") {
    Field f9 = gf::make_field(3, 2);
    // t * t = -1 = 2 under the modulus t^2+1; t packs as 3
    CHECK(f9.mul(3, 3) == 2);

    Field f5 = gf::make_field(5, 1);
    CHECK(f5.add(3, 4) == 2);

    Field f13 = gf::make_field(13, 1);
    CHECK(f13.div(1, 2) == 7); // 2*7 = 14 = 1

    CHECK_THROWS_AS(f13.div(1, 0), DivisionByZeroError);
    CHECK_THROWS_AS(f13.inv(0), DivisionByZeroError);
}

TEST_CASE("FqElement operators and field mismatch") {
    Field f5 = gf::make_field(5, 1);
    Field f7 = gf::make_field(7, 1);
    FqElement a(f5, 3), b(f5, 4);
    CHECK((a + b).packed() == 2);
    CHECK((a * b).packed() == 2);
    CHECK((a - a).packed() == 0);
    CHECK_THROWS_AS(a + FqElement(f7, 1), FieldMismatchError);
    CHECK_THROWS_AS(a / FqElement(f5, 0), DivisionByZeroError);
    CHECK(a.str() == "3");
}

TEST_CASE("quadratic classification") {
    Field f13 = gf::make_field(13, 1);
    CHECK(f13.quadratic_class(4) == QuadraticClass::Square);
    // Euler criterion: 2^6 = 64 = 12 = -1 mod 13
    CHECK(f13.pow(2, 6) == 12);
    CHECK(f13.quadratic_class(2) == QuadraticClass::Nonsquare);
    CHECK(f13.quadratic_class(0) == QuadraticClass::Zero);
}

TEST_CASE("square roots") {
    Field f13 = gf::make_field(13, 1);
    // 5^2 = 25 = 12; the other root is 8, and 5 < 8
    CHECK(f13.square_root(12) == 5u);
    CHECK_FALSE(f13.square_root(2).has_value());
    CHECK(f13.square_root(0) == 0u);
}

TEST_CASE("square counts and root consistency, several fields") {
    for (auto [p, k] : {std::pair<std::int64_t, std::int64_t>{5, 1},
                        {13, 1},
                        {3, 2},
                        {3, 4},
                        {5, 2},
                        {17, 2},
                        {101, 1}}) {
        Field f = gf::make_field(p, k);
        INFO("field " << f.name());
        std::int64_t squares = 0, nonsquares = 0;
        for (std::uint32_t a = 0; a < f.q(); ++a) {
            switch (f.quadratic_class(a)) {
                case QuadraticClass::Square: ++squares; break;
                case QuadraticClass::Nonsquare: ++nonsquares; break;
                case QuadraticClass::Zero: CHECK(a == 0); break;
            }
            if (auto r = f.square_root(a)) CHECK(f.mul(*r, *r) == a);
        }
        CHECK(squares == (f.q() - 1) / 2);
        CHECK(nonsquares == (f.q() - 1) / 2);
        CHECK(f.minus_one_is_square() == (f.q() % 4 == 1));
    }
}

TEST_CASE("product-class table, exhaustive") {
    for (auto [p, k] :
         {std::pair<std::int64_t, std::int64_t>{5, 1}, {3, 2}, {13, 1}, {17, 2}}) {
        Field f = gf::make_field(p, k);
        INFO("field " << f.name());
        auto cls = [&](std::uint32_t a) { return static_cast<int>(f.quadratic_class(a)); };
        for (std::uint32_t a = 1; a < f.q(); ++a)
            for (std::uint32_t b = 1; b < f.q(); ++b)
                CHECK(cls(f.mul(a, b)) == cls(a) * cls(b));
    }
}

TEST_CASE("canonical element order") {
    Field f9 = gf::make_field(3, 2);
    // lexicographic low-degree-first: (0,0) (0,1) (0,2) (1,0) ...
    CHECK(f9.element_at(0) == 0);
    CHECK(f9.element_at(1) == 3); // coeffs (0,1) = t packs as 3
    CHECK(f9.element_at(2) == 6);
    CHECK(f9.element_at(3) == 1);
    for (std::int64_t r = 0; r < f9.q(); ++r) CHECK(f9.element_rank(f9.element_at(r)) == r);

    Field f13 = gf::make_field(13, 1);
    CHECK(f13.element_at(7) == 7); // identity for k = 1
    CHECK(f13.least_nonsquare() == 2);
}

TEST_CASE("field arithmetic in extension fields matches polynomial identities") {
    Field f = gf::make_field(5, 2);
    for (std::uint32_t a = 0; a < f.q(); ++a) {
        CHECK(f.add(a, f.neg(a)) == 0);
        if (a != 0) {
            CHECK(f.mul(a, f.inv(a)) == 1);
            CHECK(f.pow(a, f.q() - 1) == 1); // Fermat
        }
        for (std::uint32_t b = 0; b < f.q(); ++b) {
            CHECK(f.mul(a, b) == f.mul(b, a));
            CHECK(f.sub(f.add(a, b), b) == a);
        }
    }
}
