#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <tuple>

#include "unifact/algcore.hpp"

using namespace unifact;

namespace {

Algebra group_algebra(uint32_t p, uint32_t k, const std::string& group_name) {
    FiniteField f = FiniteField::make(p, k);
    FiniteGroup g = catalog_group(group_name);
    return Algebra::twisted_group_algebra(f, g, cocycle_trivial(g, f));
}

TwoCocycle klein_bilinear_cocycle(const FiniteGroup& v4, const FiniteField& f) {
    std::vector<std::vector<FieldElement>> values(4, std::vector<FieldElement>(4, f.one()));
    for (int u = 0; u < 4; ++u)
        for (int v = 0; v < 4; ++v)
            if (((u >> 1) & 1) && (v & 1)) values[u][v] = f.scalar(-1);
    return cocycle_from_values(v4, f, values);
}

/// Independent radical oracle: J = { x : x*y is nilpotent for every y },
/// computable by exhaustive enumeration on tiny algebras. A nil right ideal
/// sits inside the radical, and the radical is nil, so this set is exactly J.
std::vector<AlgebraElement> oracle_radical_members(const Algebra& a) {
    std::vector<AlgebraElement> members;
    uint64_t count = a.element_count();
    REQUIRE(count <= 100000);
    for (uint64_t i = 0; i < count; ++i) {
        AlgebraElement x = a.element_from_index(i);
        bool all_nil = true;
        for (uint64_t j = 0; j < count && all_nil; ++j)
            all_nil = nilpotency_index(x * a.element_from_index(j)).has_value();
        if (all_nil) members.push_back(x);
    }
    return members;
}

} // namespace

TEST_CASE("twisted group algebra construction") {
    Algebra a = group_algebra(3, 1, "C2");
    CHECK(a.dim() == 2);
    // g * g = 1
    CHECK(a.basis_element(1) * a.basis_element(1) == a.one());

    // twisted multiplication follows the cocycle table
    FiniteField f3 = FiniteField::make(3, 1);
    FiniteGroup v4 = catalog_group("C2xC2");
    TwoCocycle tau = klein_bilinear_cocycle(v4, f3);
    Algebra tw = Algebra::twisted_group_algebra(f3, v4, tau);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            AlgebraElement prod = tw.basis_element(i) * tw.basis_element(j);
            AlgebraElement expect = tw.basis_element(v4.op(i, j)).scaled(tau.value(i, j));
            CHECK(prod == expect);
        }
    // the twist makes it noncommutative
    CHECK(tw.basis_element(1) * tw.basis_element(2) !=
          tw.basis_element(2) * tw.basis_element(1));
}

TEST_CASE("element arithmetic and inverses") {
    Algebra a = group_algebra(3, 1, "S3");
    Rng rng(2);
    for (int t = 0; t < 20; ++t) {
        AlgebraElement x = random_element(a, rng);
        CHECK(a.one() * x == x);
        CHECK(x * a.one() == x);
    }
    for (int t = 0; t < 10; ++t) {
        AlgebraElement u = random_unit(a, rng);
        CHECK(u * u.inv() == a.one());
        CHECK(u.inv() * u == a.one());
    }

    // (1 + g)^2 = 0 in GF(4)C2, so 1 + g is not a unit
    Algebra b = group_algebra(2, 2, "C2");
    AlgebraElement x = b.one() + b.basis_element(1);
    CHECK((x * x).is_zero());
    CHECK_FALSE(x.is_unit());
    CHECK_THROWS_AS(x.inv(), Error);
}

TEST_CASE("regular representation") {
    Algebra a = group_algebra(5, 1, "C2");
    CHECK(regular_representation(a.one()) == Matrix::identity(a.field(), 2));
    Matrix lg = regular_representation(a.basis_element(1));
    CHECK(lg * lg == Matrix::identity(a.field(), 2));
    CHECK_FALSE(lg.is_identity());

    Algebra s3 = group_algebra(3, 1, "S3");
    Rng rng(4);
    for (int t = 0; t < 20; ++t) {
        AlgebraElement x = random_element(s3, rng);
        AlgebraElement y = random_element(s3, rng);
        CHECK(regular_representation(x * y) ==
              regular_representation(x) * regular_representation(y));
    }
}

TEST_CASE("nilpotency and unipotency certificates") {
    Algebra a = group_algebra(2, 2, "C2");
    CHECK(nilpotency_index(a.zero()) == 1);
    AlgebraElement x = a.one() + a.basis_element(1);
    CHECK(nilpotency_index(x) == 2);
    auto cert = is_unipotent(a.one());
    REQUIRE(cert.has_value());
    CHECK(cert->index == 1);
    auto cert2 = is_unipotent(a.basis_element(1)); // 1 - g = 1 + g nilpotent
    REQUIRE(cert2.has_value());
    CHECK(cert2->index == 2);
    CHECK(unipotent_inverse(*cert2) * a.basis_element(1) == a.one());
}

TEST_CASE("radical examples") {
    // p does not divide |G|: semisimple
    CHECK(radical(group_algebra(5, 1, "S3")).dim == 0);

    // GF(3)C3: the augmentation ideal, nilpotency index 3
    Algebra a = group_algebra(3, 1, "C3");
    RadicalData rad = radical(a);
    CHECK(rad.dim == 2);
    CHECK(rad.nilpotency_index == 3);
    AlgebraElement g1 = a.basis_element(1) - a.one();
    AlgebraElement g2 = a.basis_element(2) - a.one();
    CHECK(rad.contains(g1));
    CHECK(rad.contains(g2));
    // direct cubing
    CHECK_FALSE((g1 * g1).is_zero());
    CHECK((g1 * g1 * g1).is_zero());

    // GF(4)C2: dimension 1, (1+g)^2 = 0
    Algebra b = group_algebra(2, 2, "C2");
    RadicalData rb = radical(b);
    CHECK(rb.dim == 1);
    CHECK(rb.nilpotency_index == 2);
    CHECK(rb.contains(b.one() + b.basis_element(1)));
}

TEST_CASE("radical agrees with the exhaustive oracle") {
    std::vector<Algebra> algebras;
    algebras.push_back(group_algebra(2, 1, "C2"));
    algebras.push_back(group_algebra(2, 2, "C2"));
    algebras.push_back(group_algebra(3, 1, "C3"));
    {
        FiniteField f3 = FiniteField::make(3, 1);
        FiniteGroup v4 = catalog_group("C2xC2");
        algebras.push_back(
            Algebra::twisted_group_algebra(f3, v4, klein_bilinear_cocycle(v4, f3)));
    }
    for (const auto& a : algebras) {
        RadicalData rad = radical(a);
        std::vector<AlgebraElement> members = oracle_radical_members(a);
        // |J| = q^dim(J)
        uint64_t expect = 1;
        for (int i = 0; i < rad.dim; ++i) expect *= a.field().q();
        CHECK(members.size() == expect);
        for (const auto& m : members) CHECK(rad.contains(m));
    }
}

TEST_CASE("Maschke and p-group consistency over the catalog") {
    for (const auto& name : catalog_names()) {
        FiniteGroup g = catalog_group(name);
        for (uint32_t q : {3u, 4u, 5u, 9u}) {
            FiniteField f = q == 4 ? FiniteField::make(2, 2)
                                   : (q == 9 ? FiniteField::make(3, 2)
                                             : FiniteField::make(q, 1));
            Algebra a = Algebra::twisted_group_algebra(f, g, cocycle_trivial(g, f));
            RadicalData rad = radical(a);
            if (g.order() % int(f.p()) != 0) {
                CHECK(rad.dim == 0);
            }
            bool p_group = true;
            for (int x = 1; p_group && x < g.order(); ++x) {
                int ord = g.element_order(x);
                while (ord % int(f.p()) == 0) ord /= int(f.p());
                p_group = ord == 1;
            }
            if (p_group) {
                // augmentation ideal: spanned by g - 1
                CHECK(rad.dim == g.order() - 1);
                for (int x = 1; x < g.order(); ++x)
                    CHECK(rad.contains(a.basis_element(x) - a.one()));
            }
        }
    }
}

TEST_CASE("quotient structure") {
    Algebra semi = group_algebra(5, 1, "S3");
    RadicalData rad0 = radical(semi);
    QuotientData q0 = quotient(semi, rad0);
    CHECK(q0.quotient.dim() == 6);
    CHECK(q0.projection == Matrix::identity(semi.field(), 6));

    Algebra a = group_algebra(3, 1, "C3");
    QuotientData q1 = quotient(a, radical(a));
    CHECK(q1.quotient.dim() == 1);

    Algebra s3 = group_algebra(3, 1, "S3");
    QuotientData q2 = quotient(s3, radical(s3));
    CHECK(q2.quotient.dim() == 2);
    // projection of a section lift is the identity
    Rng rng(5);
    for (int t = 0; t < 20; ++t) {
        AlgebraElement x = random_element(q2.quotient, rng);
        CHECK(q2.project(q2.lift(x)) == x);
    }
}

namespace {

struct ComponentShape {
    int n;
    uint64_t field_size;
    bool operator<(const ComponentShape& other) const {
        return std::tie(n, field_size) < std::tie(other.n, other.field_size);
    }
    bool operator==(const ComponentShape& other) const {
        return n == other.n && field_size == other.field_size;
    }
};

std::vector<ComponentShape> shapes(const WedderburnDecomposition& wd) {
    std::vector<ComponentShape> out;
    for (const auto& c : wd.components) out.push_back({c.n, c.K.q()});
    std::sort(out.begin(), out.end());
    return out;
}

WedderburnDecomposition decompose_semisimple(const Algebra& a) {
    RadicalData rad = radical(a);
    QuotientData quo = quotient(a, rad);
    Rng rng(0);
    return wedderburn(quo.quotient, rng);
}

} // namespace

TEST_CASE("wedderburn shapes of small group algebras") {
    using S = std::vector<ComponentShape>;

    // GF(5)C4: x^4 - 1 splits into distinct linear factors
    CHECK(shapes(decompose_semisimple(group_algebra(5, 1, "C4"))) ==
          S{{1, 5}, {1, 5}, {1, 5}, {1, 5}});

    // GF(2)C3: trivial module over GF(2) plus one GF(4) component
    CHECK(shapes(decompose_semisimple(group_algebra(2, 1, "C3"))) == S{{1, 2}, {1, 4}});

    // GF(3)S3 modulo its radical: only the trivial and sign modules remain
    CHECK(shapes(decompose_semisimple(group_algebra(3, 1, "S3"))) == S{{1, 3}, {1, 3}});

    // GF(5)S3: two linear components and one 2x2 matrix ring
    CHECK(shapes(decompose_semisimple(group_algebra(5, 1, "S3"))) == S{{1, 5}, {1, 5}, {2, 5}});

    // GF(5)D4: four linear components and one 2x2 matrix ring
    CHECK(shapes(decompose_semisimple(group_algebra(5, 1, "D4"))) ==
          S{{1, 5}, {1, 5}, {1, 5}, {1, 5}, {2, 5}});

    // GF(3)Q8: the 4-dimensional block must be a matrix ring, not a field
    CHECK(shapes(decompose_semisimple(group_algebra(3, 1, "Q8"))) ==
          S{{1, 3}, {1, 3}, {1, 3}, {1, 3}, {2, 3}});

    // twisted Klein four group over GF(3) is a full 2x2 matrix ring
    FiniteField f3 = FiniteField::make(3, 1);
    FiniteGroup v4 = catalog_group("C2xC2");
    Algebra tw = Algebra::twisted_group_algebra(f3, v4, klein_bilinear_cocycle(v4, f3));
    CHECK(shapes(decompose_semisimple(tw)) == S{{2, 3}});
}

TEST_CASE("wedderburn with a nontrivial extension field in a matrix block") {
    // D5 = C5 : C2 over GF(3): 1 + 1 + 8, the 8-dimensional block is
    // M_2(GF(9)) since the Frobenius on GF(81) rel GF(9) realizes inversion
    FiniteField f3 = FiniteField::make(3, 1);
    FiniteGroup d5 = group_from_permutations({{1, 2, 3, 4, 0}, {0, 4, 3, 2, 1}});
    CHECK(d5.order() == 10);
    Algebra a = Algebra::twisted_group_algebra(f3, d5, cocycle_trivial(d5, f3));
    WedderburnDecomposition wd = decompose_semisimple(a);
    CHECK(shapes(wd) == std::vector<ComponentShape>{{1, 3}, {1, 3}, {2, 9}});
}

TEST_CASE("wedderburn images multiply correctly on random elements") {
    Algebra a = group_algebra(5, 1, "D4");
    RadicalData rad = radical(a);
    QuotientData quo = quotient(a, rad);
    Rng rng(0);
    WedderburnDecomposition wd = wedderburn(quo.quotient, rng);
    Rng sampler(31);
    for (int t = 0; t < 25; ++t) {
        AlgebraElement x = random_element(quo.quotient, sampler);
        AlgebraElement y = random_element(quo.quotient, sampler);
        for (size_t i = 0; i < wd.components.size(); ++i) {
            CHECK(wd.component_image(x * y, int(i)) ==
                  wd.component_image(x, int(i)) * wd.component_image(y, int(i)));
        }
        // round trip through lift
        std::vector<Matrix> images;
        for (size_t i = 0; i < wd.components.size(); ++i)
            images.push_back(wd.component_image(x, int(i)));
        CHECK(wd.assemble(images) == x);
    }
    CHECK_THROWS_AS(wedderburn(group_algebra(3, 1, "C3"), rng), Error); // not semisimple
}

TEST_CASE("nilfree verdicts and witnesses") {
    FiniteField f4 = FiniteField::make(2, 2);
    FiniteField f5 = FiniteField::make(5, 1);

    // abelian p'-group with symmetric twist: reduced
    FiniteGroup c3 = catalog_group("C3");
    NilfreeReport clean = nilfree_check(f4, c3, cocycle_trivial(c3, f4));
    CHECK(clean.verdict);
    CHECK_FALSE(clean.witness.has_value());
    // exhaustive confirmation over all 64 elements
    Algebra a = Algebra::twisted_group_algebra(f4, c3, cocycle_trivial(c3, f4));
    CHECK_FALSE(exhaustive_nilpotent_search(a).has_value());

    // p divides |G|: the p-element witness g - 1
    FiniteGroup c2 = catalog_group("C2");
    NilfreeReport wit = nilfree_check(f4, c2, cocycle_trivial(c2, f4));
    CHECK_FALSE(wit.verdict);
    REQUIRE(wit.witness.has_value());
    Algebra b = Algebra::twisted_group_algebra(f4, c2, cocycle_trivial(c2, f4));
    CHECK(*wit.witness == b.basis_element(1) - b.one());

    // nonabelian, semisimple: a rank-one nilpotent pulled back from the
    // matrix component
    FiniteGroup s3 = catalog_group("S3");
    NilfreeReport nonab = nilfree_check(f5, s3, cocycle_trivial(s3, f5));
    CHECK_FALSE(nonab.verdict);
    REQUIRE(nonab.witness.has_value());
    CHECK_FALSE(nonab.witness->is_zero());
    CHECK(nilpotency_index(*nonab.witness).has_value());

    // asymmetric twist on an abelian p'-group
    FiniteField f3 = FiniteField::make(3, 1);
    FiniteGroup v4 = catalog_group("C2xC2");
    NilfreeReport asym = nilfree_check(f3, v4, klein_bilinear_cocycle(v4, f3));
    CHECK_FALSE(asym.verdict);
    CHECK(asym.abelian);
    CHECK(asym.order_coprime_to_p);
    CHECK_FALSE(asym.symmetric);
    REQUIRE(asym.witness.has_value());
    CHECK(nilpotency_index(*asym.witness).has_value());

    // |F| = 2 violates the standing hypothesis
    FiniteField f2 = FiniteField::make(2, 1);
    CHECK_THROWS_AS(nilfree_check(f2, c3, cocycle_trivial(c3, f2)), Error);
}

TEST_CASE("nilfree verdict matches exhaustive search on small instances") {
    for (const auto& name : {"C2", "C3", "C4", "C2xC2", "S3"}) {
        FiniteGroup g = catalog_group(name);
        for (uint32_t q : {3u, 4u, 5u}) {
            FiniteField f = q == 4 ? FiniteField::make(2, 2) : FiniteField::make(q, 1);
            Algebra a = Algebra::twisted_group_algebra(f, g, cocycle_trivial(g, f));
            if (a.element_count() > kExhaustiveScanCap) continue;
            NilfreeReport report = nilfree_check(f, g, cocycle_trivial(g, f));
            CHECK(report.verdict == !exhaustive_nilpotent_search(a).has_value());
        }
    }
}

TEST_CASE("center of a matrix-ring group algebra") {
    // GF(3) twisted Klein four group is M_2(GF(3)): center is 1-dimensional
    FiniteField f3 = FiniteField::make(3, 1);
    FiniteGroup v4 = catalog_group("C2xC2");
    Algebra tw = Algebra::twisted_group_algebra(f3, v4, klein_bilinear_cocycle(v4, f3));
    CHECK(center_basis(tw).size() == 1);
    // the center of a commutative algebra is everything
    Algebra c4 = group_algebra(5, 1, "C4");
    CHECK(center_basis(c4).size() == 4);
}

TEST_CASE("minimal polynomials of algebra elements") {
    Algebra a = group_algebra(5, 1, "C4");
    // g has order 4: min poly x^4 - 1
    Poly mu = min_poly(a.basis_element(1), a.one());
    CHECK(poly_degree(mu) == 4);
    CHECK(poly_eval(mu, a.field().one()).is_zero());
    // 1 has min poly x - 1
    CHECK(poly_degree(min_poly(a.one(), a.one())) == 1);
}
