#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "unifact/grp.hpp"
#include "unifact/matgf.hpp"
#include "unifact/poly.hpp"

namespace unifact {

inline constexpr int kMaxAlgebraDim = 64;
/// Exhaustive element scans are skipped above this many elements.
inline constexpr uint64_t kExhaustiveScanCap = 1'000'000;

class AlgebraElement;

/// Finite-dimensional associative unital algebra over a finite field, given
/// by structure constants. Twisted group algebras F^tau G are the monomial
/// case (each basis product is a scalar times one basis element); quotients
/// carry a dense table. Immutable after construction.
class Algebra {
public:
    Algebra() = default;

    static Algebra twisted_group_algebra(const FiniteField& field, const FiniteGroup& g,
                                         const TwoCocycle& tau);
    static Algebra from_structure_constants(const FiniteField& field, int dim,
                                            std::vector<std::vector<FieldElement>> table,
                                            std::vector<FieldElement> one);

    bool valid() const { return d_ != nullptr; }
    const FiniteField& field() const;
    int dim() const;
    bool is_group_algebra() const;
    const FiniteGroup& group() const;
    const TwoCocycle& cocycle() const;

    AlgebraElement zero() const;
    AlgebraElement one() const;
    AlgebraElement basis_element(int i) const;
    AlgebraElement element(std::vector<FieldElement> coeffs) const;
    AlgebraElement element_from_index(uint64_t index) const;
    uint64_t element_count() const; // q^dim, saturating at 2^63

    /// coefficients of basis_i * basis_j
    std::vector<FieldElement> basis_product(int i, int j) const;

    /// out += (a * b); out must be a zero-initialized coefficient vector.
    void mul_into(const std::vector<FieldElement>& a, const std::vector<FieldElement>& b,
                  std::vector<FieldElement>& out) const;

    /// Same multiplication structure: fast pointer check first, structural
    /// comparison of the tables otherwise.
    bool operator==(const Algebra& other) const;
    bool operator!=(const Algebra& other) const { return !(*this == other); }

private:
    struct Data;
    std::shared_ptr<const Data> d_;
};

class AlgebraElement {
public:
    AlgebraElement() = default;
    AlgebraElement(Algebra algebra, std::vector<FieldElement> coeffs);

    const Algebra& algebra() const { return algebra_; }
    const std::vector<FieldElement>& coeffs() const { return c_; }
    const FieldElement& coeff(int i) const { return c_[i]; }
    bool is_zero() const;
    bool is_one() const;
    uint64_t index() const;

    AlgebraElement operator+(const AlgebraElement& other) const;
    AlgebraElement operator-(const AlgebraElement& other) const;
    AlgebraElement operator*(const AlgebraElement& other) const;
    AlgebraElement operator-() const;
    AlgebraElement scaled(const FieldElement& c) const;
    bool operator==(const AlgebraElement& other) const;
    bool operator!=(const AlgebraElement& other) const { return !(*this == other); }

    bool is_unit() const;
    /// Two-sided inverse via the regular representation; throws NotAUnit.
    AlgebraElement inv() const;
    AlgebraElement pow(int64_t e) const;

private:
    Algebra algebra_;
    std::vector<FieldElement> c_;
};

/// Matrix of left multiplication by a on the structure basis.
Matrix regular_representation(const AlgebraElement& a);
/// Matrix of right multiplication by a (x -> x*a).
Matrix right_representation(const AlgebraElement& a);

/// Minimal k with a^k = 0, or absent. Nilpotency index never exceeds dim.
std::optional<int> nilpotency_index(const AlgebraElement& a);

struct AlgebraUnipotentCertificate {
    AlgebraElement u;
    int index = 0;

    bool check() const;
};

std::optional<AlgebraUnipotentCertificate> is_unipotent(const AlgebraElement& a);
AlgebraElement unipotent_inverse(const AlgebraUnipotentCertificate& cert);

AlgebraElement commutator(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement random_element(const Algebra& a, Rng& rng);
AlgebraElement random_unit(const Algebra& a, Rng& rng);

/// Basis of the Jacobson radical (canonical reduced echelon form), its
/// dimension, and the nilpotency index m = min { s : J^s = 0 }.
struct RadicalData {
    std::vector<AlgebraElement> basis;
    int dim = 0;
    int nilpotency_index = 1;

    bool contains(const AlgebraElement& x) const;
};

/// Jacobson radical by the characteristic-p iteration: nested kernels of the
/// p-power characteristic-polynomial coefficient functionals on the regular
/// representation. The result is re-verified structurally on every run
/// (two-sided ideal, nilpotent, semisimple quotient), so the certificate does
/// not depend on trusting the algorithm.
RadicalData radical(const Algebra& a);

struct QuotientData {
    Algebra source;
    Algebra quotient;
    Matrix projection; // dim(quotient) x dim(source)
    Matrix section;    // dim(source) x dim(quotient), projection * section = id
    std::vector<int> complement; // basis indices of the chosen complement

    AlgebraElement project(const AlgebraElement& x) const;
    AlgebraElement lift(const AlgebraElement& xbar) const;
};

/// A/J on the complement basis fixed by the radical's echelon form; the
/// projection is linear and multiplicative modulo J.
QuotientData quotient(const Algebra& a, const RadicalData& rad);

/// One simple factor M_n(K) of a semisimple algebra, with the explicit
/// isomorphism realized through a simple left module.
struct WedderburnComponent {
    int n = 0;                 // matrix size
    FiniteField K;             // component field as extension of the prime field
    int degree_over_F = 1;     // [K : F]
    AlgebraElement idempotent; // central primitive idempotent
    std::vector<AlgebraElement> block_basis;
    std::vector<Matrix> images; // images of block_basis under the isomorphism

    // solve data for mapping in both directions (over GF(p))
    Matrix module_solver;              // coords in the module basis theta^l * v_i
    std::vector<AlgebraElement> module_basis_vectors; // v_i, a K-basis of the module
    std::vector<AlgebraElement> theta_powers;         // theta^l, l < [K : F_p]
    Matrix lift_solver;                // inverse of the flattened isomorphism
    std::vector<AlgebraElement> fp_block_basis;       // F_p-basis of the block
};

struct WedderburnDecomposition {
    Algebra algebra; // the semisimple algebra that was decomposed
    std::vector<WedderburnComponent> components;

    /// phi_i(x * e_i) as an n_i x n_i matrix over K_i.
    Matrix component_image(const AlgebraElement& x, int i) const;
    /// Sum of preimages of the given per-component matrices.
    AlgebraElement assemble(const std::vector<Matrix>& images) const;
    AlgebraElement lift_component(int i, const Matrix& m) const;
};

/// Wedderburn decomposition of a semisimple algebra: central primitive
/// idempotents from factored minimal polynomials of central elements, then
/// each block split against an explicit simple module (spin, split or
/// certify, retry). Every isomorphism is verified on all basis products and
/// sum n_i^2 [K_i : F] = dim is asserted. Throws NotSemisimple.
WedderburnDecomposition wedderburn(const Algebra& semisimple, Rng& rng);

struct NilfreeReport {
    bool verdict = false; // true = no nonzero nilpotent elements
    bool abelian = false;
    bool order_coprime_to_p = false;
    bool symmetric = false;
    bool tau_prime_subfield = false;
    std::optional<AlgebraElement> witness; // nonzero nilpotent when verdict is false
};

/// Structural nil-free test for F^tau G: the algebra has no nonzero
/// nilpotents iff G is abelian, p does not divide |G| and tau is symmetric.
/// When false, an explicit verified nilpotent witness is produced.
NilfreeReport nilfree_check(const FiniteField& field, const FiniteGroup& g,
                            const TwoCocycle& tau, uint64_t seed = 0);

/// First nonzero nilpotent element in enumeration order, or absent.
/// Throws EnumerationCap when q^dim exceeds the cap.
std::optional<AlgebraElement> exhaustive_nilpotent_search(const Algebra& a,
                                                          uint64_t cap = kExhaustiveScanCap);

/// Basis of the center { z : zx = xz for all x }.
std::vector<AlgebraElement> center_basis(const Algebra& a);

/// Minimal polynomial of a over F in the unital subalgebra with unity e
/// (powers a^0 = e, a^1 = a, ...).
Poly min_poly(const AlgebraElement& a, const AlgebraElement& e);

} // namespace unifact
