#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "unifact/gf.hpp"
#include "unifact/poly.hpp"

using namespace unifact;

namespace {

// test-local oracle: trial division over GF(p), independent of the library's
// gcd-based irreducibility test
using P = std::vector<uint32_t>;

P oracle_mod(P a, const P& m, uint32_t p) {
    auto trim = [](P& x) { while (!x.empty() && x.back() == 0) x.pop_back(); };
    trim(a);
    while (a.size() >= m.size()) {
        uint32_t lead = a.back();
        // m need not be monic here; scale by inverse of m's lead
        uint64_t inv = 1, base = m.back(), e = p - 2;
        while (e) { if (e & 1) inv = inv * base % p; base = base * base % p; e >>= 1; }
        uint32_t c = uint32_t(uint64_t(lead) * inv % p);
        size_t shift = a.size() - m.size();
        for (size_t i = 0; i < m.size(); ++i)
            a[shift + i] = uint32_t((a[shift + i] + uint64_t(p - 1) * c % p * m[i]) % p);
        trim(a);
    }
    return a;
}

bool oracle_irreducible(const P& f, uint32_t p) {
    uint32_t k = uint32_t(f.size()) - 1;
    if (k == 1) return true;
    // enumerate all monic divisor candidates of degree 1..k/2
    for (uint32_t d = 1; 2 * d <= k; ++d) {
        uint64_t count = 1;
        for (uint32_t i = 0; i < d; ++i) count *= p;
        for (uint64_t idx = 0; idx < count; ++idx) {
            P g(d + 1, 0);
            uint64_t rest = idx;
            for (uint32_t i = 0; i < d; ++i) { g[i] = uint32_t(rest % p); rest /= p; }
            g[d] = 1;
            if (oracle_mod(f, g, p).empty()) return false;
        }
    }
    return true;
}

} // namespace

TEST_CASE("field construction") {
    FiniteField f5 = FiniteField::make(5, 1);
    CHECK(f5.q() == 5);
    CHECK(f5.prime_field());

    // explicit modulus x^2 + x + 1: exhaustive root check over GF(2)
    P mod{1, 1, 1};
    for (uint32_t x = 0; x < 2; ++x) CHECK((1 + x + x * x) % 2 != 0);
    FiniteField f4 = FiniteField::make(2, 2, mod);
    CHECK(f4.q() == 4);
    CHECK_FALSE(f4.prime_field());

    CHECK_THROWS_AS(FiniteField::make(4, 1), Error);
    CHECK_THROWS_WITH_AS(FiniteField::make(4, 1), "NonPrime: p = 4 is not prime", Error);
    CHECK_THROWS_AS(FiniteField::make(2, 2, P{1, 0, 1}), Error); // x^2+1 = (x+1)^2
}

TEST_CASE("default moduli are irreducible and deterministic") {
    struct Case { uint32_t p, k; };
    for (Case c : {Case{2, 2}, Case{2, 3}, Case{2, 4}, Case{3, 2}, Case{3, 3},
                   Case{3, 4}, Case{5, 2}, Case{7, 2}}) {
        FiniteField f = FiniteField::make(c.p, c.k);
        CHECK(oracle_irreducible(f.modulus(), c.p));
        // interned: same parameters give the same descriptor
        CHECK(FiniteField::make(c.p, c.k) == f);
    }
    // frozen canonical choices
    CHECK(FiniteField::make(2, 2).modulus() == P{1, 1, 1});
    CHECK(FiniteField::make(3, 2).modulus() == P{1, 0, 1});
    // no irreducible with smaller coefficient order exists
    CHECK_FALSE(oracle_irreducible(P{0, 0, 1}, 3));
    CHECK_FALSE(oracle_irreducible(P{0, 1, 1}, 3));
    CHECK_FALSE(oracle_irreducible(P{0, 2, 1}, 3));
}

TEST_CASE("arithmetic examples") {
    FiniteField f5 = FiniteField::make(5, 1);
    CHECK(f5.scalar(2) * f5.scalar(3) == f5.one()); // 6 = 1 mod 5

    FiniteField f4 = FiniteField::make(2, 2);
    FieldElement x = f4.from_coords({0, 1});
    FieldElement x1 = f4.from_coords({1, 1});
    // x * (x+1) = x^2 + x = 1 under x^2 + x + 1 = 0
    CHECK(x * x1 == f4.one());

    CHECK_THROWS_AS(f5.one() / f5.zero(), Error);
    CHECK_THROWS_AS(f5.zero().inv(), Error);
}

TEST_CASE("inverses") {
    FiniteField f5 = FiniteField::make(5, 1);
    CHECK(f5.scalar(2).inv() == f5.scalar(3));
    CHECK(f5.one().inv() == f5.one());

    FiniteField f4 = FiniteField::make(2, 2);
    FieldElement x = f4.from_coords({0, 1});
    CHECK(x.inv() == f4.from_coords({1, 1}));
    CHECK(x.inv() * x == f4.one());
}

TEST_CASE("exhaustive inverse and Frobenius for every prime power q <= 81") {
    struct Case { uint32_t p, k; };
    std::vector<Case> cases;
    for (uint32_t q = 2; q <= 81; ++q) {
        for (uint32_t p = 2; p <= q; ++p) {
            bool prime = p >= 2;
            for (uint32_t d = 2; d * d <= p; ++d)
                if (p % d == 0) prime = false;
            if (!prime) continue;
            uint32_t k = 0, rest = q;
            while (rest % p == 0) {
                rest /= p;
                ++k;
            }
            if (rest == 1 && k >= 1) cases.push_back({p, k});
        }
    }
    CHECK(cases.size() == 32); // prime powers up to 81
    for (Case c : cases) {
        FiniteField f = FiniteField::make(c.p, c.k);
        for (uint64_t i = 1; i < f.q(); ++i) {
            FieldElement a = f.from_index(i);
            CHECK(a.inv() * a == f.one());
        }
        for (uint64_t i = 0; i < f.q(); ++i) {
            for (uint64_t j = 0; j < f.q(); ++j) {
                FieldElement a = f.from_index(i), b = f.from_index(j);
                CHECK((a + b).pow(int64_t(f.p())) == a.pow(int64_t(f.p())) + b.pow(int64_t(f.p())));
            }
        }
        for (uint64_t i = 0; i < f.q(); ++i) {
            FieldElement a = f.from_index(i);
            CHECK(a.frobenius().frobenius_inverse() == a);
        }
    }
}

TEST_CASE("field axioms on random triples") {
    Rng rng(7);
    for (uint32_t pk : {9u, 25u, 27u, 49u, 81u}) {
        uint32_t p = pk == 9 || pk == 27 || pk == 81 ? 3 : (pk == 25 ? 5 : 7);
        uint32_t k = pk == 9 || pk == 25 || pk == 49 ? 2 : 3;
        if (pk == 81) k = 4;
        FiniteField f = FiniteField::make(p, k);
        for (int t = 0; t < 200; ++t) {
            FieldElement a = f.from_index(rng.below(f.q()));
            FieldElement b = f.from_index(rng.below(f.q()));
            FieldElement c = f.from_index(rng.below(f.q()));
            CHECK((a + b) + c == a + (b + c));
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * b == b * a);
            CHECK(a * (b + c) == a * b + a * c);
        }
    }
}

TEST_CASE("nonunit scalar") {
    CHECK(nonunit_scalar(FiniteField::make(3, 1)) == FiniteField::make(3, 1).scalar(2));
    FiniteField f4 = FiniteField::make(2, 2);
    CHECK(nonunit_scalar(f4) == f4.from_coords({0, 1}));
    CHECK_THROWS_AS(nonunit_scalar(FiniteField::make(2, 1)), Error);
}

TEST_CASE("element indexing round trip and prime subfield") {
    FiniteField f9 = FiniteField::make(3, 2);
    for (uint64_t i = 0; i < f9.q(); ++i) CHECK(f9.from_index(i).index() == i);
    CHECK(f9.scalar(2).in_prime_subfield());
    CHECK_FALSE(f9.from_coords({0, 1}).in_prime_subfield());
}

TEST_CASE("field size cap") {
    CHECK_THROWS_AS(FiniteField::make(2, 17), Error);
    CHECK_THROWS_AS(FiniteField::make(65537, 1), Error);
    CHECK(FiniteField::make(2, 16).q() == 65536);
}
