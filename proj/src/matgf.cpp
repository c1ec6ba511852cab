#include "unifact/matgf.hpp"

#include <string>

namespace unifact {

Matrix::Matrix(const FiniteField& field, int rows, int cols)
    : field_(field), rows_(rows), cols_(cols) {
    require(rows >= 1 && cols >= 1, ErrorCode::DimensionCap, "matrix dimensions must be positive");
    require(rows <= kMatrixHardCap && cols <= kMatrixHardCap, ErrorCode::DimensionCap,
            "matrix dimension exceeds " + std::to_string(kMatrixHardCap));
    e_.assign(size_t(rows) * cols, field.zero());
}

Matrix Matrix::identity(const FiniteField& field, int n) {
    Matrix m(field, n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, field.one());
    return m;
}

Matrix Matrix::from_entries(const FiniteField& field,
                            const std::vector<std::vector<FieldElement>>& entries) {
    require(!entries.empty() && !entries[0].empty(), ErrorCode::SchemaError, "empty entry grid");
    Matrix m(field, int(entries.size()), int(entries[0].size()));
    for (size_t i = 0; i < entries.size(); ++i) {
        require(entries[i].size() == entries[0].size(), ErrorCode::SchemaError,
                "ragged entry grid");
        for (size_t j = 0; j < entries[i].size(); ++j) {
            require(entries[i][j].info() == field.info(), ErrorCode::FieldMismatch,
                    "entry from a different field");
            m.set(int(i), int(j), entries[i][j]);
        }
    }
    return m;
}

Matrix Matrix::operator+(const Matrix& other) const {
    require(field_ == other.field_, ErrorCode::FieldMismatch, "matrix fields differ");
    require(rows_ == other.rows_ && cols_ == other.cols_, ErrorCode::DimensionCap,
            "matrix shapes differ");
    Matrix out(field_, rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i) out.e_[i] = e_[i] + other.e_[i];
    return out;
}

Matrix Matrix::operator-(const Matrix& other) const {
    require(field_ == other.field_, ErrorCode::FieldMismatch, "matrix fields differ");
    require(rows_ == other.rows_ && cols_ == other.cols_, ErrorCode::DimensionCap,
            "matrix shapes differ");
    Matrix out(field_, rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i) out.e_[i] = e_[i] - other.e_[i];
    return out;
}

Matrix Matrix::operator*(const Matrix& other) const {
    require(field_ == other.field_, ErrorCode::FieldMismatch, "matrix fields differ");
    require(cols_ == other.rows_, ErrorCode::DimensionCap, "inner dimensions differ");
    Matrix out(field_, rows_, other.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int l = 0; l < cols_; ++l) {
            const FieldElement& a = at(i, l);
            if (a.is_zero()) continue;
            for (int j = 0; j < other.cols_; ++j) {
                const FieldElement& b = other.at(l, j);
                if (b.is_zero()) continue;
                out.set(i, j, out.at(i, j) + a * b);
            }
        }
    }
    return out;
}

Matrix Matrix::scaled(const FieldElement& c) const {
    require(c.info() == field_.info(), ErrorCode::FieldMismatch, "scalar from a different field");
    Matrix out(field_, rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i) out.e_[i] = e_[i] * c;
    return out;
}

bool Matrix::operator==(const Matrix& other) const {
    if (field_ != other.field_ || rows_ != other.rows_ || cols_ != other.cols_) return false;
    for (size_t i = 0; i < e_.size(); ++i)
        if (e_[i] != other.e_[i]) return false;
    return true;
}

Matrix Matrix::pow(uint64_t e) const {
    require(square(), ErrorCode::NotSquare, "power of a non-square matrix");
    Matrix result = identity(field_, rows_);
    Matrix base = *this;
    while (e > 0) {
        if (e & 1) result = result * base;
        base = base * base;
        e >>= 1;
    }
    return result;
}

Matrix Matrix::transpose() const {
    Matrix out(field_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out.set(j, i, at(i, j));
    return out;
}

bool Matrix::is_zero() const {
    for (const auto& v : e_)
        if (!v.is_zero()) return false;
    return true;
}

bool Matrix::is_identity() const {
    if (!square()) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) {
            if (i == j && !at(i, j).is_one()) return false;
            if (i != j && !at(i, j).is_zero()) return false;
        }
    return true;
}

bool Matrix::is_scalar() const {
    if (!square()) return false;
    const FieldElement& d = at(0, 0);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) {
            if (i == j && at(i, j) != d) return false;
            if (i != j && !at(i, j).is_zero()) return false;
        }
    return true;
}

Matrix Matrix::direct_sum(const Matrix& other) const {
    require(field_ == other.field_, ErrorCode::FieldMismatch, "matrix fields differ");
    Matrix out(field_, rows_ + other.rows_, cols_ + other.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out.set(i, j, at(i, j));
    for (int i = 0; i < other.rows_; ++i)
        for (int j = 0; j < other.cols_; ++j) out.set(rows_ + i, cols_ + j, other.at(i, j));
    return out;
}

RrefResult rref(const Matrix& a) {
    const FiniteField& F = a.field();
    Matrix R = a;
    Matrix T = Matrix::identity(F, a.rows());
    int pivot_row = 0;
    for (int col = 0; col < a.cols() && pivot_row < a.rows(); ++col) {
        int pr = -1;
        for (int r = pivot_row; r < a.rows(); ++r) {
            if (!R.at(r, col).is_zero()) {
                pr = r;
                break;
            }
        }
        if (pr < 0) continue;
        if (pr != pivot_row) {
            for (int j = 0; j < R.cols(); ++j) {
                FieldElement tmp = R.at(pr, j);
                R.set(pr, j, R.at(pivot_row, j));
                R.set(pivot_row, j, tmp);
            }
            for (int j = 0; j < T.cols(); ++j) {
                FieldElement tmp = T.at(pr, j);
                T.set(pr, j, T.at(pivot_row, j));
                T.set(pivot_row, j, tmp);
            }
        }
        FieldElement inv = R.at(pivot_row, col).inv();
        for (int j = 0; j < R.cols(); ++j) R.set(pivot_row, j, R.at(pivot_row, j) * inv);
        for (int j = 0; j < T.cols(); ++j) T.set(pivot_row, j, T.at(pivot_row, j) * inv);
        for (int r = 0; r < a.rows(); ++r) {
            if (r == pivot_row) continue;
            FieldElement c = R.at(r, col);
            if (c.is_zero()) continue;
            for (int j = 0; j < R.cols(); ++j) R.set(r, j, R.at(r, j) - c * R.at(pivot_row, j));
            for (int j = 0; j < T.cols(); ++j) T.set(r, j, T.at(r, j) - c * T.at(pivot_row, j));
        }
        ++pivot_row;
    }
    return {std::move(R), std::move(T), pivot_row};
}

int rank(const Matrix& a) { return rref(a).rank; }

FieldElement det(const Matrix& a) {
    require(a.square(), ErrorCode::NotSquare, "determinant of a non-square matrix");
    const FiniteField& F = a.field();
    Matrix m = a;
    int n = a.rows();
    bool negate = false;
    FieldElement d = F.one();
    for (int col = 0; col < n; ++col) {
        int pr = -1;
        for (int r = col; r < n; ++r) {
            if (!m.at(r, col).is_zero()) {
                pr = r;
                break;
            }
        }
        if (pr < 0) return F.zero();
        if (pr != col) {
            negate = !negate;
            for (int j = 0; j < n; ++j) {
                FieldElement tmp = m.at(pr, j);
                m.set(pr, j, m.at(col, j));
                m.set(col, j, tmp);
            }
        }
        FieldElement pivot = m.at(col, col);
        d = d * pivot;
        FieldElement inv = pivot.inv();
        for (int r = col + 1; r < n; ++r) {
            FieldElement c = m.at(r, col);
            if (c.is_zero()) continue;
            FieldElement factor = c * inv;
            for (int j = col; j < n; ++j)
                m.set(r, j, m.at(r, j) - factor * m.at(col, j));
        }
    }
    return negate ? -d : d;
}

Matrix inverse(const Matrix& a) {
    require(a.square(), ErrorCode::NotSquare, "inverse of a non-square matrix");
    RrefResult r = rref(a);
    require(r.rank == a.rows(), ErrorCode::Singular, "matrix is singular");
    return r.T;
}

std::vector<std::vector<FieldElement>> nullspace(const Matrix& a) {
    const FiniteField& F = a.field();
    RrefResult r = rref(a);
    // locate pivot columns
    std::vector<int> pivot_col_of_row(r.rank, -1);
    std::vector<bool> is_pivot(a.cols(), false);
    for (int row = 0, col = 0; row < r.rank; ++row) {
        while (col < a.cols() && r.R.at(row, col).is_zero()) ++col;
        pivot_col_of_row[row] = col;
        is_pivot[col] = true;
    }
    std::vector<std::vector<FieldElement>> basis;
    for (int free = 0; free < a.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<FieldElement> v(a.cols(), F.zero());
        v[free] = F.one();
        for (int row = 0; row < r.rank; ++row)
            v[pivot_col_of_row[row]] = -r.R.at(row, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

Matrix mat_vec_to_matrix(const FiniteField& field,
                         const std::vector<std::vector<FieldElement>>& columns) {
    require(!columns.empty(), ErrorCode::InternalError, "no columns");
    Matrix m(field, int(columns[0].size()), int(columns.size()));
    for (size_t j = 0; j < columns.size(); ++j)
        for (size_t i = 0; i < columns[j].size(); ++i) m.set(int(i), int(j), columns[j][i]);
    return m;
}

std::vector<FieldElement> mat_apply(const Matrix& a, const std::vector<FieldElement>& v) {
    require(int(v.size()) == a.cols(), ErrorCode::DimensionCap, "vector length mismatch");
    std::vector<FieldElement> out(a.rows(), a.field().zero());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (!a.at(i, j).is_zero() && !v[j].is_zero()) out[i] = out[i] + a.at(i, j) * v[j];
    return out;
}

bool UnipotentCertificate::check() const {
    if (!u.square() || index < 1) return false;
    Matrix n = Matrix::identity(u.field(), u.rows()) - u;
    Matrix power = Matrix::identity(u.field(), u.rows());
    for (int j = 1; j < index; ++j) {
        power = power * n;
        if (power.is_zero()) return false; // index not minimal
    }
    return (power * n).is_zero();
}

std::optional<UnipotentCertificate> is_unipotent(const Matrix& a) {
    require(a.square(), ErrorCode::NotSquare, "unipotency of a non-square matrix");
    Matrix n = Matrix::identity(a.field(), a.rows()) - a;
    Matrix power = n;
    for (int k = 1; k <= a.rows(); ++k) {
        if (power.is_zero()) return UnipotentCertificate{a, k};
        power = power * n;
    }
    return std::nullopt;
}

Matrix unipotent_inverse(const UnipotentCertificate& cert) {
    require(cert.check(), ErrorCode::NotUnipotent, "invalid unipotent certificate");
    const FiniteField& F = cert.u.field();
    int n = cert.u.rows();
    Matrix N = Matrix::identity(F, n) - cert.u;
    Matrix sum = Matrix::identity(F, n);
    Matrix power = Matrix::identity(F, n);
    for (int j = 1; j < cert.index; ++j) {
        power = power * N;
        sum = sum + power;
    }
    return sum;
}

Matrix unitriangularize(const Matrix& a) {
    auto cert = is_unipotent(a);
    require(cert.has_value(), ErrorCode::NotUnipotent, "matrix is not unipotent");
    const FiniteField& F = a.field();
    int n = a.rows();
    Matrix N = Matrix::identity(F, n) - a;

    // flag basis: extend through ker N ⊆ ker N^2 ⊆ ... in deterministic order
    std::vector<std::vector<FieldElement>> basis;
    Matrix echelon(F, n, n); // rows hold reduced copies of chosen vectors
    int chosen = 0;
    auto try_add = [&](const std::vector<FieldElement>& v) {
        std::vector<FieldElement> red = v;
        for (int r = 0; r < chosen; ++r) {
            int pc = -1;
            for (int j = 0; j < n; ++j)
                if (!echelon.at(r, j).is_zero()) {
                    pc = j;
                    break;
                }
            if (!red[pc].is_zero()) {
                FieldElement c = red[pc];
                for (int j = 0; j < n; ++j) red[j] = red[j] - c * echelon.at(r, j);
            }
        }
        int pc = -1;
        for (int j = 0; j < n; ++j)
            if (!red[j].is_zero()) {
                pc = j;
                break;
            }
        if (pc < 0) return false;
        FieldElement inv = red[pc].inv();
        for (int j = 0; j < n; ++j) echelon.set(chosen, j, red[j] * inv);
        ++chosen;
        basis.push_back(v);
        return true;
    };

    Matrix power = N;
    while (chosen < n) {
        for (const auto& v : nullspace(power)) try_add(v);
        power = power * N;
    }

    Matrix Q = mat_vec_to_matrix(F, basis);
    Matrix P = inverse(Q);
    Matrix conj = P * a * Q;
    for (int i = 0; i < n; ++i) {
        require(conj.at(i, i).is_one(), ErrorCode::InternalError, "flag basis failed");
        for (int j = 0; j < i; ++j)
            require(conj.at(i, j).is_zero(), ErrorCode::InternalError, "flag basis failed");
    }
    return P;
}

} // namespace unifact
