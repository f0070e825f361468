#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "sqgeom/ortho.hpp"

using namespace sqgeom;
using linalg::Mat;
using linalg::Row;
using ortho::AmbientPtr;
using ortho::Subspace;
using ortho::SubspaceClass;
using ortho::SubspaceKind;

namespace {

AmbientPtr space(std::int64_t q, std::size_t dim) {
    return ortho::make_space(gf::make_field_q(q), dim);
}

Row vec(std::initializer_list<std::uint32_t> v) { return Row(v); }

// random dim-d subspace via random vectors (retry until rank d)
Subspace random_subspace(const AmbientPtr& sp, std::size_t d, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint32_t> dist(0, static_cast<std::uint32_t>(
                                                            sp->field.q() - 1));
    while (true) {
        std::vector<Row> rows;
        for (std::size_t i = 0; i < d; ++i) {
            Row r(sp->dim);
            for (auto& x : r) x = dist(rng);
            rows.push_back(std::move(r));
        }
        Mat m = linalg::from_rows(rows);
        if (linalg::rank(sp->field, m) < d) continue;
        return ortho::span(sp, rows);
    }
}

} // namespace

TEST_CASE("gram matrix") {
    auto sp = space(5, 3);
    Mat g = ortho::gram_matrix(*sp, {vec({1, 0, 0}), vec({0, 1, 0})});
    CHECK(g == linalg::identity(2));

    auto sp13 = space(13, 4);
    Mat g1 = ortho::gram_matrix(*sp13, {vec({1, 5, 0, 0})});
    CHECK(g1.at(0, 0) == 0); // 1 + 25 = 26 = 0 mod 13

    Mat g2 = ortho::gram_matrix(*sp, {vec({1, 0, 0}), vec({1, 1, 0})});
    CHECK(g2.at(0, 0) == 1);
    CHECK(g2.at(0, 1) == 1);
    CHECK(g2.at(1, 0) == 1);
    CHECK(g2.at(1, 1) == 2);

    CHECK_THROWS_AS(ortho::gram_matrix(*sp, {}), EmptyInputError);
}

TEST_CASE("classification") {
    auto sp = space(13, 4);
    CHECK(ortho::classify(ortho::span(sp, {vec({1, 0, 0, 0})})) == SubspaceClass::square());
    // Gram [2]; 2 is a nonsquare mod 13
    CHECK(ortho::classify(ortho::span(sp, {vec({1, 1, 0, 0})})) == SubspaceClass::nonsquare());
    // 5^2 = -1 mod 13, so (1,5,0,0) is isotropic
    CHECK(ortho::classify(ortho::span(sp, {vec({1, 5, 0, 0})})) ==
          SubspaceClass::degenerate(1));
}

TEST_CASE("radical") {
    auto sp = space(13, 4);
    auto W = ortho::span(sp, {vec({1, 5, 0, 0}), vec({0, 0, 1, 0})});
    auto rad = ortho::radical(W);
    REQUIRE(rad.has_value());
    CHECK(*rad == ortho::span(sp, {vec({1, 5, 0, 0})}));

    auto ortho_plane = ortho::span(sp, {vec({1, 0, 0, 0}), vec({0, 1, 0, 0})});
    CHECK_FALSE(ortho::radical(ortho_plane).has_value());

    // totally isotropic line is its own radical
    auto ti = ortho::span(sp, {vec({1, 5, 0, 0}), vec({0, 0, 1, 5})});
    auto trad = ortho::radical(ti);
    REQUIRE(trad.has_value());
    CHECK(*trad == ti);
    CHECK(ortho::classify(ti) == SubspaceClass::degenerate(2));
}

TEST_CASE("perp") {
    auto sp = space(5, 3);
    auto e1 = ortho::span(sp, {vec({1, 0, 0})});
    auto p = ortho::perp(e1);
    CHECK(p == ortho::span(sp, {vec({0, 1, 0}), vec({0, 0, 1})}));

    auto sp13 = space(13, 4);
    auto iso = ortho::span(sp13, {vec({1, 5, 0, 0})});
    auto pi = ortho::perp(iso);
    CHECK(pi.dim() == 3);
    CHECK(ortho::contains(pi, iso)); // isotropic vectors lie in their own perp
}

TEST_CASE("perp involution on random subspaces") {
    std::mt19937_64 rng(20240817);
    for (std::int64_t q : {5, 9, 13}) {
        for (std::size_t dim : {3, 4}) {
            auto sp = space(q, dim);
            for (int trial = 0; trial < 200; ++trial) {
                std::uniform_int_distribution<std::size_t> dd(1, dim - 1);
                Subspace W = random_subspace(sp, dd(rng), rng);
                Subspace pp = ortho::perp(ortho::perp(W));
                CHECK(pp == W);
                CHECK(ortho::perp(W).dim() == dim - W.dim());
            }
        }
    }
}

TEST_CASE("enumeration counts match Gaussian binomials") {
    CHECK(ortho::gaussian_binomial(3, 1, 5) == 31);
    CHECK(ortho::gaussian_binomial(4, 2, 5) == 806);
    auto sp = space(5, 3);
    CHECK(ortho::enumerate_subspaces(sp, 1).size() == 31);
    auto sp4 = space(5, 4);
    CHECK(ortho::enumerate_subspaces(sp4, 2).size() == 806);
    for (std::int64_t q : {5, 9}) {
        for (std::size_t dim : {2, 3, 4}) {
            auto s = space(q, dim);
            for (std::size_t d = 1; d <= dim; ++d) {
                INFO("q=" << q << " dim=" << dim << " d=" << d);
                CHECK(ortho::enumerate_subspaces(s, d).size() ==
                      ortho::gaussian_binomial(dim, d, q));
            }
        }
    }
}

TEST_CASE("enumeration respects filter and budget") {
    // on the orthonormal plane over F_5 there are exactly 2 square points
    auto sp = space(5, 2);
    auto sq = ortho::enumerate_subspaces(sp, 1, {.filter = SubspaceKind::Square});
    CHECK(sq.size() == 2);
    CHECK_THROWS_AS(ortho::enumerate_subspaces(space(5, 4), 2, {.budget = 100}),
                    BudgetExceededError);
}

TEST_CASE("enumeration is deterministic and canonical") {
    auto sp = space(9, 3);
    auto a = ortho::enumerate_subspaces(sp, 2);
    auto b = ortho::enumerate_subspaces(sp, 2);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
    // canonical: RREF of each basis is itself
    for (const auto& s : a) {
        Mat m = s.basis();
        linalg::rref(sp->field, m);
        CHECK(m == s.basis());
    }
}

TEST_CASE("subspace classification is basis-invariant") {
    std::mt19937_64 rng(987654321);
    for (std::int64_t q : {5, 9, 13}) {
        auto sp = space(q, 4);
        const gf::Field& F = sp->field;
        std::uniform_int_distribution<std::uint32_t> dist(0, static_cast<std::uint32_t>(q - 1));
        int done = 0;
        while (done < 500) {
            std::uniform_int_distribution<std::size_t> dd(1, 3);
            std::size_t d = dd(rng);
            Subspace W = random_subspace(sp, d, rng);
            // random invertible change of basis
            Mat change(d, d);
            do {
                for (auto& x : change.a) x = dist(rng);
            } while (linalg::rank(F, change) < d);
            Mat alt = linalg::mul(F, change, W.basis());
            // classify from the transformed basis directly via its Gram det
            std::vector<Row> rows;
            for (std::size_t i = 0; i < d; ++i) rows.push_back(alt.row(i));
            Mat g = ortho::gram_matrix(*sp, rows);
            std::uint32_t det = linalg::det(F, g);
            SubspaceClass canonical = ortho::classify(W);
            if (det == 0)
                CHECK(canonical.kind == SubspaceKind::Degenerate);
            else
                CHECK((F.quadratic_class(det) == gf::QuadraticClass::Square
                           ? SubspaceKind::Square
                           : SubspaceKind::Nonsquare) == canonical.kind);
            ++done;
        }
    }
}

TEST_CASE("dim = rank + radical_dim, exhaustive small") {
    for (std::int64_t q : {5, 9, 13}) {
        for (std::size_t dim : {3, 4}) {
            auto sp = space(q, dim);
            const gf::Field& F = sp->field;
            for (std::size_t d = 1; d <= dim; ++d) {
                for (const auto& W : ortho::enumerate_subspaces(sp, d)) {
                    Mat g = ortho::gram_matrix(W);
                    std::size_t r = linalg::rank(F, g);
                    SubspaceClass cls = ortho::classify(W);
                    std::size_t rdim = cls.kind == SubspaceKind::Degenerate ? cls.radical_dim : 0;
                    CHECK(W.dim() == r + rdim);
                    if (auto rad = ortho::radical(W)) CHECK(rad->dim() == rdim);
                }
            }
        }
    }
}

TEST_CASE("orthogonal basis") {
    auto sp = space(5, 3);
    auto W0 = ortho::span(sp, {vec({1, 0, 0}), vec({0, 1, 0})});
    auto ob = ortho::orthogonal_basis(W0);
    CHECK(ob == std::vector<Row>{vec({1, 0, 0}), vec({0, 1, 0})});

    auto W1 = ortho::span(sp, {vec({1, 0, 0}), vec({1, 1, 0})});
    auto ob1 = ortho::orthogonal_basis(W1);
    REQUIRE(ob1.size() == 2);
    CHECK(ortho::form_value(*sp, ob1[0], ob1[1]) == 0);
    CHECK(ortho::span(sp, ob1) == W1);

    auto iso = ortho::span(sp, {vec({1, 2, 0})}); // 1+4 = 0 mod 5
    CHECK_THROWS_AS(ortho::orthogonal_basis(iso), DegenerateSubspaceError);
}

TEST_CASE("orthogonal basis property, random nondegenerate subspaces") {
    std::mt19937_64 rng(5150);
    for (std::int64_t q : {5, 9, 13}) {
        auto sp = space(q, 4);
        const gf::Field& F = sp->field;
        int done = 0;
        while (done < 500) {
            std::uniform_int_distribution<std::size_t> dd(1, 3);
            Subspace W = random_subspace(sp, dd(rng), rng);
            SubspaceClass cls = ortho::classify(W);
            if (cls.kind == SubspaceKind::Degenerate) continue;
            auto ob = ortho::orthogonal_basis(W);
            REQUIRE(ob.size() == W.dim());
            Mat g = ortho::gram_matrix(*sp, ob);
            std::uint32_t norm_product = 1;
            for (std::size_t i = 0; i < ob.size(); ++i) {
                CHECK(g.at(i, i) != 0);
                norm_product = F.mul(norm_product, g.at(i, i));
                for (std::size_t j = 0; j < ob.size(); ++j)
                    if (i != j) CHECK(g.at(i, j) == 0);
            }
            // the product of norms has the same class as the Gram determinant
            CHECK(F.quadratic_class(norm_product) ==
                  (cls.kind == SubspaceKind::Square ? gf::QuadraticClass::Square
                                                    : gf::QuadraticClass::Nonsquare));
            CHECK(ortho::span(sp, ob) == W);
            ++done;
        }
    }
}

TEST_CASE("subspace text form") {
    auto sp = space(13, 4);
    auto W = ortho::span(sp, {vec({0, 0, 1, 0}), vec({1, 5, 0, 0})});
    CHECK(W.str() == "1,5,0,0;0,0,1,0");
}

TEST_CASE("intersect") {
    auto sp = space(5, 4);
    auto A = ortho::span(sp, {vec({1, 0, 0, 0}), vec({0, 1, 0, 0})});
    auto B = ortho::span(sp, {vec({0, 1, 0, 0}), vec({0, 0, 1, 0})});
    auto I = ortho::intersect(A, B);
    REQUIRE(I.has_value());
    CHECK(*I == ortho::span(sp, {vec({0, 1, 0, 0})}));
    auto C = ortho::span(sp, {vec({0, 0, 0, 1})});
    CHECK_FALSE(ortho::intersect(A, C).has_value());
}
