#pragma once

#include <vector>

#include "unifact/matgf.hpp"

namespace unifact {

/// Search budget for the deterministic backtracking vector enumeration.
inline constexpr uint64_t kFactorSearchBudget = 1'000'000;

/// Ordered list of certified unipotent factors whose product is the target.
/// verify() recomputes the product and every certificate, and every
/// factorization routine runs it before returning.
struct UnipotentFactorization {
    Matrix target;
    std::vector<UnipotentCertificate> factors;

    Matrix product() const;
    bool verify() const;
};

struct MatCommutatorWitness {
    Matrix target;
    Matrix b;
    Matrix c;

    bool verify() const; // [b, c] = b c b^-1 c^-1 equals target
};

/// det(A) = 1. Throws Singular on det = 0. Note that over GF(2) membership
/// in SL_n does not imply membership in the derived subgroup of GL_n.
bool is_sl(const Matrix& a);

/// Writes A in SL_n as a product of elementary transvections I + c*e_ij
/// (each unipotent of index 2) by Gauss-Jordan elimination with unit pivots;
/// at most n^2 + n factors. Works for every q >= 2.
UnipotentFactorization transvection_factorization(const Matrix& a);

/// At most two unipotent factors for nonscalar or identity A in SL_n, q >= 3:
/// conjugate A so that every leading principal minor is 1, split into a unit
/// lower- and unit upper-triangular factor, conjugate back. The conjugating
/// basis is found by deterministic lexicographic enumeration with
/// backtracking. Throws CentralNonIdentity for scalar A != I.
UnipotentFactorization two_unipotent_factorization(const Matrix& a);

/// At most three unipotent factors for any A in SL_n, q >= 3. A central
/// non-identity is first multiplied by b = [[1,1],[0,1]] ⊕ I to break
/// centrality, and b^-1 is appended as the third factor.
UnipotentFactorization three_unipotent_factorization(const Matrix& a);

/// Commutator witness [B, C] = A for a unipotent A of index <= 2, q >= 3:
/// conjugate A to the canonical form I + (I_r block at (1,2)), emit
/// B = diag(a I_r, I) with a outside {0,1} and C = I + (a-1)^-1 * (block),
/// conjugate back. Throws IndexTooHigh above index 2.
MatCommutatorWitness commutator_witness_index2(const Matrix& a);

} // namespace unifact
