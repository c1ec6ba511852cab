#pragma once

#include <optional>
#include <vector>

#include "unifact/gf.hpp"

namespace unifact {

/// User-facing matrices above this dimension are rejected; every target
/// instance is tiny and regular representations of catalog algebras stay
/// within it. Internal scratch matrices (stacked linear systems, flattened
/// solvers) may be taller, up to the hard cap.
inline constexpr int kMaxMatrixDim = 64;
inline constexpr int kMatrixHardCap = 4096;

/// Dense exact matrix over a finite field, row-major. All operations return
/// fresh values; nothing mutates in place through the public surface.
class Matrix {
public:
    Matrix() = default;
    Matrix(const FiniteField& field, int rows, int cols);
    static Matrix identity(const FiniteField& field, int n);
    static Matrix from_entries(const FiniteField& field,
                               const std::vector<std::vector<FieldElement>>& entries);

    const FiniteField& field() const { return field_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    const FieldElement& at(int i, int j) const { return e_[size_t(i) * cols_ + j]; }
    void set(int i, int j, const FieldElement& v) { e_[size_t(i) * cols_ + j] = v; }

    Matrix operator+(const Matrix& other) const;
    Matrix operator-(const Matrix& other) const;
    Matrix operator*(const Matrix& other) const;
    Matrix scaled(const FieldElement& c) const;
    bool operator==(const Matrix& other) const;
    bool operator!=(const Matrix& other) const { return !(*this == other); }

    Matrix pow(uint64_t e) const;
    Matrix transpose() const;
    bool is_zero() const;
    bool is_identity() const;
    /// True iff the matrix is a scalar multiple of the identity.
    bool is_scalar() const;

    /// Column-wise direct sum: this ⊕ other along the diagonal.
    Matrix direct_sum(const Matrix& other) const;

private:
    FiniteField field_;
    int rows_ = 0, cols_ = 0;
    std::vector<FieldElement> e_;
};

struct RrefResult {
    Matrix R;   // reduced row-echelon form
    Matrix T;   // invertible, T * A = R
    int rank = 0;
};

RrefResult rref(const Matrix& a);
int rank(const Matrix& a);
FieldElement det(const Matrix& a);
/// Throws Singular when not invertible.
Matrix inverse(const Matrix& a);
/// Canonical basis of { x : A x = 0 }, derived from the RREF free columns.
std::vector<std::vector<FieldElement>> nullspace(const Matrix& a);

Matrix mat_vec_to_matrix(const FiniteField& field, const std::vector<std::vector<FieldElement>>& columns);
std::vector<FieldElement> mat_apply(const Matrix& a, const std::vector<FieldElement>& v);

/// Witness that u is unipotent: (I - u)^index = 0 and (I - u)^(index-1) != 0.
struct UnipotentCertificate {
    Matrix u;
    int index = 0;

    bool check() const;
};

/// Minimal-index certificate, or absent when (I - A)^n != 0.
std::optional<UnipotentCertificate> is_unipotent(const Matrix& a);

/// Inverse through the finite geometric series sum_{j<k} (I - u)^j.
Matrix unipotent_inverse(const UnipotentCertificate& cert);

/// Returns invertible P with P * A * P^-1 upper triangular, all diagonal
/// entries 1. P is built from a basis adapted to the kernel flag
/// ker(N) ⊆ ker(N^2) ⊆ ... of N = I - A, completed in deterministic pivot
/// order. Throws NotUnipotent when A is not unipotent.
Matrix unitriangularize(const Matrix& a);

} // namespace unifact
