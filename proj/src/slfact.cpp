#include "unifact/slfact.hpp"

#include <string>

namespace unifact {

Matrix UnipotentFactorization::product() const {
    Matrix p = Matrix::identity(target.field(), target.rows());
    for (const auto& f : factors) p = p * f.u;
    return p;
}

bool UnipotentFactorization::verify() const {
    if (!target.square()) return false;
    for (const auto& f : factors) {
        if (f.u.field() != target.field() || f.u.rows() != target.rows()) return false;
        if (!f.check()) return false;
    }
    return product() == target;
}

bool MatCommutatorWitness::verify() const {
    if (!b.square() || !c.square() || !target.square()) return false;
    if (det(b).is_zero() || det(c).is_zero()) return false;
    return b * c * inverse(b) * inverse(c) == target;
}

bool is_sl(const Matrix& a) {
    require(a.square(), ErrorCode::NotSquare, "SL membership of a non-square matrix");
    FieldElement d = det(a);
    require(!d.is_zero(), ErrorCode::Singular, "matrix is singular");
    return d.is_one();
}

namespace {

Matrix transvection(const FiniteField& F, int n, int i, int j, const FieldElement& c) {
    Matrix t = Matrix::identity(F, n);
    t.set(i, j, c);
    return t;
}

void push_transvection_inverse(std::vector<UnipotentCertificate>& factors,
                               const FiniteField& F, int n, int i, int j,
                               const FieldElement& c) {
    // the elimination applied I + c e_ij on the left; A carries its inverse
    factors.push_back({transvection(F, n, i, j, -c), 2});
}

} // namespace

UnipotentFactorization transvection_factorization(const Matrix& a) {
    require(is_sl(a), ErrorCode::NotSL, "matrix is not in SL_n");
    const FiniteField& F = a.field();
    int n = a.rows();
    Matrix work = a;
    std::vector<UnipotentCertificate> applied; // inverses, in application order

    auto add_row = [&](int dst, int src, const FieldElement& c) {
        // work <- (I + c e_{dst,src}) * work
        if (c.is_zero()) return;
        for (int j = 0; j < n; ++j) work.set(dst, j, work.at(dst, j) + c * work.at(src, j));
        push_transvection_inverse(applied, F, n, dst, src, c);
    };

    for (int col = 0; col < n; ++col) {
        if (!work.at(col, col).is_one()) {
            // make the pivot exactly 1 using a row below, creating one if needed
            int src = -1;
            for (int r = col + 1; r < n; ++r)
                if (!work.at(r, col).is_zero()) {
                    src = r;
                    break;
                }
            if (src < 0 && col + 1 < n) {
                // column entries below are zero; seed one from the pivot row
                require(!work.at(col, col).is_zero(), ErrorCode::InternalError,
                        "elimination lost invertibility");
                add_row(col + 1, col, F.one());
                src = col + 1;
            }
            if (src >= 0) {
                FieldElement fix = (F.one() - work.at(col, col)) / work.at(src, col);
                add_row(col, src, fix);
            }
        }
        require(work.at(col, col).is_one(), ErrorCode::InternalError,
                "unit pivot normalization failed");
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            add_row(r, col, -work.at(r, col));
        }
    }
    require(work.is_identity(), ErrorCode::InternalError, "elimination did not reach identity");

    // T_k ... T_1 A = I, so A = T_1^-1 ... T_k^-1 in application order
    UnipotentFactorization out;
    out.target = a;
    out.factors = std::move(applied);
    require(int(out.factors.size()) <= n * n + n, ErrorCode::InternalError,
            "transvection count exceeds the elimination bound");
    require(out.verify(), ErrorCode::InternalError, "transvection product check failed");
    return out;
}

namespace {

/// Deterministic enumeration of GF(q)^k with first nonzero coordinate 1,
/// lexicographic, most significant coordinate first.
class VectorEnumerator {
public:
    VectorEnumerator(const FiniteField& field, int k) : F_(field), k_(k) {
        total_ = 1;
        for (int i = 0; i < k; ++i) total_ *= F_.q();
    }

    bool next(std::vector<FieldElement>& out, uint64_t& budget) {
        while (idx_ + 1 < total_) {
            ++idx_;
            require(budget > 0, ErrorCode::EnumerationCap,
                    "factorization search budget exhausted");
            --budget;
            out.clear();
            uint64_t rest = idx_;
            for (int i = k_ - 1; i >= 0; --i) {
                uint64_t digit = rest % F_.q();
                rest /= F_.q();
                out.insert(out.begin(), F_.from_index(digit));
            }
            int first = -1;
            for (int i = 0; i < k_; ++i)
                if (!out[i].is_zero()) {
                    first = i;
                    break;
                }
            if (first >= 0 && out[first].is_one()) return true;
        }
        return false;
    }

private:
    FiniteField F_;
    int k_;
    uint64_t total_ = 0;
    uint64_t idx_ = 0;
};

bool all_leading_minors_one(const Matrix& m) {
    for (int k = 1; k <= m.rows(); ++k) {
        Matrix sub(m.field(), k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) sub.set(i, j, m.at(i, j));
        if (!det(sub).is_one()) return false;
    }
    return true;
}

/// Completes the given independent vectors to a basis with standard basis
/// vectors in index order.
Matrix complete_basis(const FiniteField& F, int n,
                      const std::vector<std::vector<FieldElement>>& lead) {
    std::vector<std::vector<FieldElement>> cols = lead;
    // echelon of the chosen columns
    std::vector<std::vector<FieldElement>> rows;
    std::vector<int> pivots;
    auto try_insert = [&](const std::vector<FieldElement>& v) {
        std::vector<FieldElement> red = v;
        for (size_t r = 0; r < rows.size(); ++r) {
            FieldElement c = red[pivots[r]];
            if (c.is_zero()) continue;
            for (int t = 0; t < n; ++t) red[t] = red[t] - c * rows[r][t];
        }
        int pivot = -1;
        for (int t = 0; t < n; ++t)
            if (!red[t].is_zero()) {
                pivot = t;
                break;
            }
        if (pivot < 0) return false;
        FieldElement inv = red[pivot].inv();
        for (int t = 0; t < n; ++t) red[t] = red[t] * inv;
        rows.push_back(std::move(red));
        pivots.push_back(pivot);
        return true;
    };
    for (const auto& v : lead)
        require(try_insert(v), ErrorCode::InternalError, "leading vectors are dependent");
    for (int i = 0; i < n && int(cols.size()) < n; ++i) {
        std::vector<FieldElement> ei(n, F.zero());
        ei[i] = F.one();
        if (try_insert(ei)) cols.push_back(std::move(ei));
    }
    require(int(cols.size()) == n, ErrorCode::InternalError, "basis completion failed");
    return mat_vec_to_matrix(F, cols);
}

/// Finds P with all leading principal minors of P^-1 M P equal to 1, by the
/// inductive construction: pick v with Mv outside its span, force the (1,1)
/// entry to 1 with the second basis vector (M - I)v, then recurse on the
/// Schur complement. Backtracks over choices of v; returns absent only for
/// scalar matrices (no valid v exists).
std::optional<Matrix> minor_normalize(const Matrix& m, uint64_t& budget) {
    const FiniteField& F = m.field();
    int k = m.rows();
    if (k == 1) {
        require(m.at(0, 0).is_one(), ErrorCode::InternalError,
                "determinant drifted during normalization");
        return Matrix::identity(F, 1);
    }
    if (all_leading_minors_one(m)) return Matrix::identity(F, k);
    if (m.is_scalar()) return std::nullopt;

    VectorEnumerator en(F, k);
    std::vector<FieldElement> v;
    while (en.next(v, budget)) {
        std::vector<FieldElement> mv = mat_apply(m, v);
        // e2 = (M - I) v must be independent of v
        std::vector<FieldElement> e2(k, F.zero());
        for (int i = 0; i < k; ++i) e2[i] = mv[i] - v[i];
        // dependence test: e2 = c v?
        bool dependent = true;
        {
            int lead = -1;
            for (int i = 0; i < k; ++i)
                if (!v[i].is_zero()) {
                    lead = i;
                    break;
                }
            FieldElement ratio = e2[lead] / v[lead];
            for (int i = 0; i < k && dependent; ++i)
                if (e2[i] != ratio * v[i]) dependent = false;
        }
        if (dependent) continue;

        Matrix p0 = complete_basis(F, k, {v, e2});
        Matrix b = inverse(p0) * m * p0;
        // column 1 of b is (1, 1, 0, ..., 0)^T by construction
        Matrix schur(F, k - 1, k - 1);
        for (int i = 1; i < k; ++i)
            for (int j = 1; j < k; ++j)
                schur.set(i - 1, j - 1, b.at(i, j) - b.at(i, 0) * b.at(0, j));
        std::optional<Matrix> w = minor_normalize(schur, budget);
        if (!w) continue; // the complement came out scalar; try another v
        Matrix q = Matrix::identity(F, 1).direct_sum(*w);
        Matrix p = p0 * q;
        Matrix conj = inverse(p) * m * p;
        require(all_leading_minors_one(conj), ErrorCode::InternalError,
                "minor normalization produced a bad basis");
        return p;
    }
    fail_internal("backtracking exhausted all vector choices");
}

/// Doolittle split B = L U with L unit lower triangular and U upper
/// triangular; all leading minors of B are 1, so U has unit diagonal too.
void unit_lu(const Matrix& b, Matrix& lower, Matrix& upper) {
    const FiniteField& F = b.field();
    int n = b.rows();
    lower = Matrix::identity(F, n);
    upper = Matrix(F, n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            FieldElement sum = b.at(i, j);
            for (int t = 0; t < i; ++t) sum = sum - lower.at(i, t) * upper.at(t, j);
            upper.set(i, j, sum);
        }
        require(upper.at(i, i).is_one(), ErrorCode::InternalError,
                "LU pivot is not 1 despite unit minors");
        for (int r = i + 1; r < n; ++r) {
            FieldElement sum = b.at(r, i);
            for (int t = 0; t < i; ++t) sum = sum - lower.at(r, t) * upper.at(t, i);
            lower.set(r, i, sum);
        }
    }
}

UnipotentCertificate certify_unipotent(const Matrix& u) {
    auto cert = is_unipotent(u);
    require(cert.has_value(), ErrorCode::InternalError, "factor is not unipotent");
    return *cert;
}

} // namespace

UnipotentFactorization two_unipotent_factorization(const Matrix& a) {
    require(a.field().q() >= 3, ErrorCode::FieldTooSmall,
            "bounded factor counts require |F| > 2");
    require(is_sl(a), ErrorCode::NotSL, "matrix is not in SL_n");
    UnipotentFactorization out;
    out.target = a;
    if (a.is_identity()) {
        require(out.verify(), ErrorCode::InternalError, "identity factorization check failed");
        return out;
    }
    if (auto cert = is_unipotent(a)) {
        out.factors.push_back(*cert);
        require(out.verify(), ErrorCode::InternalError, "factorization check failed");
        return out;
    }
    require(!a.is_scalar(), ErrorCode::CentralNonIdentity,
            "central non-identity matrices need three factors");

    uint64_t budget = kFactorSearchBudget;
    std::optional<Matrix> p = minor_normalize(a, budget);
    require(p.has_value(), ErrorCode::InternalError,
            "nonscalar matrix failed minor normalization");
    Matrix b = inverse(*p) * a * *p;
    Matrix lower, upper;
    unit_lu(b, lower, upper);
    require(lower * upper == b, ErrorCode::InternalError, "LU split failed");
    Matrix u1 = *p * lower * inverse(*p);
    Matrix u2 = *p * upper * inverse(*p);
    out.factors.push_back(certify_unipotent(u1));
    out.factors.push_back(certify_unipotent(u2));
    require(out.verify(), ErrorCode::InternalError, "factorization check failed");
    return out;
}

UnipotentFactorization three_unipotent_factorization(const Matrix& a) {
    require(a.field().q() >= 3, ErrorCode::FieldTooSmall,
            "bounded factor counts require |F| > 2");
    require(is_sl(a), ErrorCode::NotSL, "matrix is not in SL_n");
    if (a.is_identity() || !a.is_scalar()) return two_unipotent_factorization(a);

    // scalar non-identity: break centrality with b = [[1,1],[0,1]] ⊕ I
    const FiniteField& F = a.field();
    int n = a.rows();
    require(n >= 2, ErrorCode::InternalError, "scalar non-identity in SL_1 cannot exist");
    Matrix b = Matrix::identity(F, n);
    b.set(0, 1, F.one());
    UnipotentFactorization inner = two_unipotent_factorization(a * b);
    Matrix binv = Matrix::identity(F, n);
    binv.set(0, 1, -F.one());

    UnipotentFactorization out;
    out.target = a;
    out.factors = inner.factors;
    out.factors.push_back(certify_unipotent(binv));
    require(int(out.factors.size()) <= 3, ErrorCode::InternalError, "too many factors");
    require(out.verify(), ErrorCode::InternalError, "factorization check failed");
    return out;
}

MatCommutatorWitness commutator_witness_index2(const Matrix& a) {
    require(a.square(), ErrorCode::NotSquare, "witness for a non-square matrix");
    require(a.field().q() >= 3, ErrorCode::FieldTooSmall,
            "commutator witnesses require |F| > 2");
    auto cert = is_unipotent(a);
    require(cert.has_value(), ErrorCode::NotUnipotent, "matrix is not unipotent");
    require(cert->index <= 2, ErrorCode::IndexTooHigh,
            "witness construction needs index <= 2");
    const FiniteField& F = a.field();
    int n = a.rows();
    MatCommutatorWitness out;
    out.target = a;
    if (cert->index == 1) {
        out.b = Matrix::identity(F, n);
        out.c = Matrix::identity(F, n);
        require(out.verify(), ErrorCode::InternalError, "identity witness check failed");
        return out;
    }

    // canonical form: basis (x_1..x_r | y_1..y_r | z_*) with N y_i = x_i,
    // x_i spanning im N inside ker N, z extending to ker N
    Matrix N = a - Matrix::identity(F, n);
    RrefResult nr = rref(N);
    int r = nr.rank;
    std::vector<std::vector<FieldElement>> xs, ys;
    {
        // pivot columns of N give independent columns; use e_col as y
        std::vector<int> pivot_cols;
        for (int row = 0, col = 0; row < r; ++row) {
            while (col < n && nr.R.at(row, col).is_zero()) ++col;
            pivot_cols.push_back(col);
        }
        for (int col : pivot_cols) {
            std::vector<FieldElement> y(n, F.zero());
            y[col] = F.one();
            ys.push_back(y);
            xs.push_back(mat_apply(N, y));
        }
    }
    std::vector<std::vector<FieldElement>> basis = xs;
    {
        // extend xs to a basis of ker N, deterministically
        std::vector<std::vector<FieldElement>> rows;
        std::vector<int> pivots;
        auto try_insert = [&](const std::vector<FieldElement>& v) {
            std::vector<FieldElement> red = v;
            for (size_t t = 0; t < rows.size(); ++t) {
                FieldElement c = red[pivots[t]];
                if (c.is_zero()) continue;
                for (int s = 0; s < n; ++s) red[s] = red[s] - c * rows[t][s];
            }
            int pivot = -1;
            for (int s = 0; s < n; ++s)
                if (!red[s].is_zero()) {
                    pivot = s;
                    break;
                }
            if (pivot < 0) return false;
            FieldElement inv = red[pivot].inv();
            for (int s = 0; s < n; ++s) red[s] = red[s] * inv;
            rows.push_back(std::move(red));
            pivots.push_back(pivot);
            return true;
        };
        for (const auto& x : xs)
            require(try_insert(x), ErrorCode::InternalError, "image vectors are dependent");
        for (const auto& z : nullspace(N))
            if (try_insert(z)) basis.push_back(z);
    }
    // order the basis as (x | y | z)
    {
        std::vector<std::vector<FieldElement>> ordered;
        for (int i = 0; i < r; ++i) ordered.push_back(basis[i]);
        for (const auto& y : ys) ordered.push_back(y);
        for (int i = r; i < n - r; ++i) ordered.push_back(basis[i]);
        basis = std::move(ordered);
    }
    Matrix Q = mat_vec_to_matrix(F, basis);
    Matrix Qinv = inverse(Q);
    Matrix canonical = Qinv * a * Q;
    // expected: identity plus I_r block at rows 0..r-1, cols r..2r-1
    {
        Matrix expect = Matrix::identity(F, n);
        for (int i = 0; i < r; ++i) expect.set(i, r + i, F.one());
        require(canonical == expect, ErrorCode::InternalError,
                "canonical form construction failed");
    }

    FieldElement scale = nonunit_scalar(F);
    Matrix b0 = Matrix::identity(F, n);
    for (int i = 0; i < r; ++i) b0.set(i, i, scale);
    Matrix c0 = Matrix::identity(F, n);
    FieldElement coeff = (scale - F.one()).inv();
    for (int i = 0; i < r; ++i) c0.set(i, r + i, coeff);

    out.b = Q * b0 * Qinv;
    out.c = Q * c0 * Qinv;
    require(out.verify(), ErrorCode::InternalError, "commutator witness check failed");
    return out;
}

} // namespace unifact
