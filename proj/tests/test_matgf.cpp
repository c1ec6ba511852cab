#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "unifact/matgf.hpp"
#include "unifact/poly.hpp"

using namespace unifact;

namespace {

Matrix mat(const FiniteField& f, const std::vector<std::vector<int64_t>>& rows) {
    Matrix m(f, int(rows.size()), int(rows[0].size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j) m.set(int(i), int(j), f.scalar(rows[i][j]));
    return m;
}

Matrix random_matrix(const FiniteField& f, int n, Rng& rng) {
    Matrix m(f, n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.set(i, j, f.from_index(rng.below(f.q())));
    return m;
}

Matrix random_invertible(const FiniteField& f, int n, Rng& rng) {
    while (true) {
        Matrix m = random_matrix(f, n, rng);
        if (!det(m).is_zero()) return m;
    }
}

} // namespace

TEST_CASE("rref examples") {
    FiniteField f5 = FiniteField::make(5, 1);
    Matrix id3 = Matrix::identity(f5, 3);
    RrefResult r = rref(id3);
    CHECK(r.R == id3);
    CHECK(r.T == id3);
    CHECK(r.rank == 3);

    Matrix zero2(f5, 2, 2);
    r = rref(zero2);
    CHECK(r.R == zero2);
    CHECK(r.T == Matrix::identity(f5, 2));
    CHECK(r.rank == 0);

    // row 2 = 2 * row 1
    Matrix dep = mat(f5, {{1, 2}, {2, 4}});
    r = rref(dep);
    CHECK(r.rank == 1);
    CHECK(r.T * dep == r.R);
    CHECK_FALSE(det(r.T).is_zero());
}

TEST_CASE("rref invariants on random matrices") {
    Rng rng(11);
    for (uint32_t q : {3u, 4u, 5u, 9u}) {
        FiniteField f = q == 4 ? FiniteField::make(2, 2)
                               : (q == 9 ? FiniteField::make(3, 2) : FiniteField::make(q, 1));
        for (int n = 1; n <= 8; n += 3) {
            for (int t = 0; t < 20; ++t) {
                Matrix a = random_matrix(f, n, rng);
                RrefResult r = rref(a);
                CHECK(r.T * a == r.R);
                CHECK_FALSE(det(r.T).is_zero());
            }
        }
    }
}

TEST_CASE("determinant examples and multiplicativity") {
    FiniteField f3 = FiniteField::make(3, 1);
    CHECK(det(Matrix::identity(f3, 3)).is_one());
    CHECK(det(mat(f3, {{1, 1}, {0, 1}})).is_one());
    CHECK(det(mat(f3, {{2, 0}, {0, 2}})).is_one()); // 4 = 1 mod 3

    Rng rng(3);
    FiniteField f5 = FiniteField::make(5, 1);
    for (int t = 0; t < 50; ++t) {
        Matrix a = random_matrix(f5, 4, rng);
        Matrix b = random_matrix(f5, 4, rng);
        CHECK(det(a * b) == det(a) * det(b));
    }
}

TEST_CASE("unipotency certificates") {
    FiniteField f3 = FiniteField::make(3, 1);
    auto c1 = is_unipotent(Matrix::identity(f3, 4));
    REQUIRE(c1.has_value());
    CHECK(c1->index == 1);

    auto c2 = is_unipotent(mat(f3, {{1, 1}, {0, 1}}));
    REQUIRE(c2.has_value());
    CHECK(c2->index == 2);
    CHECK(c2->check());

    CHECK_FALSE(is_unipotent(mat(f3, {{2, 0}, {0, 2}})).has_value());
}

TEST_CASE("unipotent inverse by geometric series") {
    FiniteField f5 = FiniteField::make(5, 1);
    auto cert = is_unipotent(mat(f5, {{1, 1}, {0, 1}}));
    REQUIRE(cert.has_value());
    CHECK(unipotent_inverse(*cert) == mat(f5, {{1, 4}, {0, 1}}));

    auto id = is_unipotent(Matrix::identity(f5, 3));
    CHECK(unipotent_inverse(*id) == Matrix::identity(f5, 3));

    // I + N with N = e12 + e23: inverse must be I - N + N^2
    Matrix n = mat(f5, {{0, 1, 0}, {0, 0, 1}, {0, 0, 0}});
    Matrix u = Matrix::identity(f5, 3) + n;
    auto c = is_unipotent(u);
    REQUIRE(c.has_value());
    CHECK(c->index == 3);
    Matrix inv = unipotent_inverse(*c);
    CHECK(inv * u == Matrix::identity(f5, 3));
    CHECK(u * inv == Matrix::identity(f5, 3));
    CHECK(inv == Matrix::identity(f5, 3) - n + n * n);
}

TEST_CASE("exhaustive 2x2 unipotent inverses for q in {3,4,5}") {
    for (uint32_t q : {3u, 4u, 5u}) {
        FiniteField f = q == 4 ? FiniteField::make(2, 2) : FiniteField::make(q, 1);
        int count = 0;
        for (uint64_t i = 0; i < f.q() * f.q() * f.q() * f.q(); ++i) {
            Matrix m(f, 2, 2);
            uint64_t rest = i;
            for (int t = 0; t < 4; ++t) {
                m.set(t / 2, t % 2, f.from_index(rest % f.q()));
                rest /= f.q();
            }
            auto cert = is_unipotent(m);
            if (!cert) continue;
            ++count;
            Matrix inv = unipotent_inverse(*cert);
            CHECK(inv * m == Matrix::identity(f, 2));
            CHECK(m * inv == Matrix::identity(f, 2));
        }
        // unipotent 2x2 matrices are I + nilpotent; there are q^2 of them
        CHECK(count == int(f.q() * f.q()));
    }
}

TEST_CASE("unitriangularize") {
    FiniteField f3 = FiniteField::make(3, 1);

    Matrix upper = mat(f3, {{1, 1}, {0, 1}});
    Matrix p = unitriangularize(upper);
    CHECK(p == Matrix::identity(f3, 2)); // flag already adapted

    Matrix lower = mat(f3, {{1, 0}, {1, 1}});
    p = unitriangularize(lower);
    CHECK(p == mat(f3, {{0, 1}, {1, 0}}));
    CHECK(p * lower * inverse(p) == mat(f3, {{1, 1}, {0, 1}}));

    CHECK_THROWS_AS(unitriangularize(mat(f3, {{2, 0}, {0, 1}})), Error);
}

TEST_CASE("unitriangularize on random conjugated strictly upper nilpotents") {
    Rng rng(23);
    for (uint32_t q : {3u, 5u}) {
        FiniteField f = FiniteField::make(q, 1);
        for (int n = 2; n <= 5; ++n) {
            for (int t = 0; t < 20; ++t) {
                Matrix nil(f, n, n);
                for (int i = 0; i < n; ++i)
                    for (int j = i + 1; j < n; ++j) nil.set(i, j, f.from_index(rng.below(q)));
                Matrix conj = random_invertible(f, n, rng);
                Matrix a = conj * (Matrix::identity(f, n) + nil) * inverse(conj);
                Matrix p = unitriangularize(a);
                Matrix tri = p * a * inverse(p);
                for (int i = 0; i < n; ++i) {
                    CHECK(tri.at(i, i).is_one());
                    for (int j = 0; j < i; ++j) CHECK(tri.at(i, j).is_zero());
                }
            }
        }
    }
}
