#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "unifact/matgf.hpp"

namespace unifact {

/// Deterministic RNG used wherever an algorithm is randomized (equal-degree
/// splitting, module splitting, sampling). mt19937_64 is fully specified by
/// the standard, so certificates are reproducible across platforms.
class Rng {
public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    uint64_t next() { return gen_(); }

    /// Uniform value in [0, n) by masked rejection; avoids the
    /// implementation-defined std::uniform_int_distribution.
    uint64_t below(uint64_t n) {
        if (n <= 1) return 0;
        uint64_t mask = ~uint64_t(0);
        uint64_t limit = n - 1;
        int bits = 0;
        while (limit > 0) {
            ++bits;
            limit >>= 1;
        }
        mask = (bits == 64) ? ~uint64_t(0) : ((uint64_t(1) << bits) - 1);
        while (true) {
            uint64_t v = gen_() & mask;
            if (v < n) return v;
        }
    }

private:
    std::mt19937_64 gen_;
};

/// Polynomial over a finite field, coefficients low to high, no trailing
/// zeros; the zero polynomial is the empty vector.
using Poly = std::vector<FieldElement>;

Poly poly_trim(Poly a);
Poly poly_x(const FiniteField& field);
Poly poly_constant(const FieldElement& c);
int poly_degree(const Poly& a); // -1 for the zero polynomial
bool poly_is_zero(const Poly& a);
Poly poly_add(const Poly& a, const Poly& b);
Poly poly_sub(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& a, const FieldElement& c);
/// Division with remainder; divisor must be nonzero.
void poly_divmod(const Poly& a, const Poly& b, Poly& quotient, Poly& remainder);
Poly poly_mod(const Poly& a, const Poly& b);
Poly poly_monic(const Poly& a);
Poly poly_gcd(const Poly& a, const Poly& b);
Poly poly_derivative(const Poly& a);
Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m);
Poly poly_powmod(const Poly& base, uint64_t e, const Poly& m);
/// x^(q^power) mod m, computed by iterated q-th powers.
Poly poly_qpower_of_x(const Poly& m, uint32_t power);
FieldElement poly_eval(const Poly& a, const FieldElement& x);
/// Modular inverse of a mod m; requires gcd(a, m) = 1.
Poly poly_invmod(const Poly& a, const Poly& m);

bool poly_is_irreducible(const Poly& f);

/// Factors a squarefree monic polynomial into monic irreducibles via
/// distinct-degree then equal-degree (Cantor–Zassenhaus) splitting; the
/// factor list is sorted canonically (degree, then coefficient order).
std::vector<Poly> factor_squarefree(const Poly& f, Rng& rng);

/// The set of distinct monic irreducible factors of an arbitrary nonzero
/// polynomial (multiplicities dropped), sorted canonically.
std::vector<Poly> distinct_irreducible_factors(const Poly& f, Rng& rng);

/// Characteristic polynomial (monic, degree n) via Hessenberg reduction;
/// works over any finite field.
Poly char_poly(const Matrix& a);

/// Minimal polynomial of a square matrix (Krylov on the flattened powers).
Poly matrix_min_poly(const Matrix& a);

Matrix eval_poly_at_matrix(const Poly& f, const Matrix& a);

} // namespace unifact
