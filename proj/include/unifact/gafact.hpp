#pragma once

#include "unifact/algcore.hpp"
#include "unifact/slfact.hpp"

namespace unifact {

/// Radical, quotient and Wedderburn data of one algebra, computed once and
/// shared across membership and factorization calls.
struct DecomposedAlgebra {
    Algebra algebra;
    RadicalData rad;
    QuotientData quo;
    WedderburnDecomposition wd;
    uint64_t seed = 0;
};

DecomposedAlgebra decompose(const Algebra& a, uint64_t seed = 0);

/// Per-component determinants of the image of an element in the semisimple
/// quotient; the verdict holds iff every determinant is 1 (for 1x1
/// components this forces the component value to be 1).
struct DerivedCertificate {
    std::vector<FieldElement> component_dets;
    bool verdict = false;
};

/// Decides membership in the derived subgroup of the unit group: project
/// through radical -> quotient -> Wedderburn and test every component
/// determinant against 1. Requires |F| > 2 and a unit argument.
DerivedCertificate derived_membership(const DecomposedAlgebra& d, const AlgebraElement& alpha);

/// Factorization alpha = gamma1 * gamma2 * (1 + delta) * beta^-1 into at most
/// three certified unipotent elements. Identity factors are dropped from the
/// list; alpha = 1 yields an empty list.
struct LiftedFactorization {
    AlgebraElement alpha;
    std::vector<AlgebraUnipotentCertificate> factors;
    AlgebraElement beta;  // scalar-breaking lift (unipotent)
    AlgebraElement delta; // element of the radical

    AlgebraElement product() const;
    bool verify() const;
};

/// The main factorization: per Wedderburn component, break centrality with
/// [[1,1],[0,1]] ⊕ I when needed, factor each component image into at most
/// two unipotent matrices, pull back through the isomorphism and the
/// complement-basis section, and absorb the radical defect delta into the
/// third factor (1 + delta) * beta^-1. Throws NotInDerived when the
/// membership test fails.
LiftedFactorization factor_three_unipotents(const DecomposedAlgebra& d,
                                            const AlgebraElement& alpha);

/// (1 + y) x for certified unipotent x and y in the radical, certified with
/// index at most m1 * m2 (x's index times the radical's nilpotency index).
AlgebraUnipotentCertificate unipotent_absorb(const RadicalData& rad,
                                             const AlgebraUnipotentCertificate& x,
                                             const AlgebraElement& y);

struct AlgCommutatorWitness {
    AlgebraElement target;
    AlgebraElement b;
    AlgebraElement c;

    bool verify() const;
};

/// Commutator witness [B, C] = u for a unipotent u of index <= 2 in a
/// semisimple algebra with |F| > 2, assembled from componentwise matrix
/// witnesses through the Wedderburn isomorphism.
AlgCommutatorWitness index2_commutator_semisimple(const DecomposedAlgebra& d,
                                                  const AlgebraElement& u);

} // namespace unifact
