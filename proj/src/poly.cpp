#include "unifact/poly.hpp"

#include <algorithm>

namespace unifact {

Poly poly_trim(Poly a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
    return a;
}

Poly poly_x(const FiniteField& field) { return {field.zero(), field.one()}; }

Poly poly_constant(const FieldElement& c) {
    if (c.is_zero()) return {};
    return {c};
}

int poly_degree(const Poly& a) { return int(a.size()) - 1; }

bool poly_is_zero(const Poly& a) { return a.empty(); }

Poly poly_add(const Poly& a, const Poly& b) {
    const Poly& longer = a.size() >= b.size() ? a : b;
    const Poly& shorter = a.size() >= b.size() ? b : a;
    Poly out = longer;
    for (size_t i = 0; i < shorter.size(); ++i) out[i] = out[i] + shorter[i];
    return poly_trim(std::move(out));
}

Poly poly_sub(const Poly& a, const Poly& b) {
    Poly out = a;
    if (out.size() < b.size()) out.resize(b.size(), b[0].field().zero());
    for (size_t i = 0; i < b.size(); ++i) out[i] = out[i] - b[i];
    return poly_trim(std::move(out));
}

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    FiniteField F = a[0].field();
    Poly out(a.size() + b.size() - 1, F.zero());
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < b.size(); ++j) out[i + j] = out[i + j] + a[i] * b[j];
    }
    return poly_trim(std::move(out));
}

Poly poly_scale(const Poly& a, const FieldElement& c) {
    if (c.is_zero()) return {};
    Poly out = a;
    for (auto& v : out) v = v * c;
    return out;
}

void poly_divmod(const Poly& a, const Poly& b, Poly& quotient, Poly& remainder) {
    require(!b.empty(), ErrorCode::DivisionByZero, "polynomial division by zero");
    FiniteField F = b[0].field();
    remainder = a;
    if (a.size() < b.size()) {
        quotient = {};
        return;
    }
    quotient.assign(a.size() - b.size() + 1, F.zero());
    FieldElement lead_inv = b.back().inv();
    while (remainder.size() >= b.size()) {
        FieldElement c = remainder.back() * lead_inv;
        size_t shift = remainder.size() - b.size();
        if (!c.is_zero()) {
            quotient[shift] = c;
            for (size_t j = 0; j < b.size(); ++j)
                remainder[shift + j] = remainder[shift + j] - c * b[j];
        }
        remainder.pop_back();
        remainder = poly_trim(std::move(remainder));
        if (remainder.size() < b.size()) break;
    }
    quotient = poly_trim(std::move(quotient));
}

Poly poly_mod(const Poly& a, const Poly& b) {
    Poly q, r;
    poly_divmod(a, b, q, r);
    return r;
}

Poly poly_monic(const Poly& a) {
    if (a.empty()) return a;
    return poly_scale(a, a.back().inv());
}

Poly poly_gcd(const Poly& a, const Poly& b) {
    Poly r0 = poly_trim(a), r1 = poly_trim(b);
    while (!r1.empty()) {
        Poly r2 = poly_mod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r2);
    }
    return poly_monic(r0);
}

Poly poly_derivative(const Poly& a) {
    if (a.size() <= 1) return {};
    FiniteField F = a[0].field();
    Poly out(a.size() - 1, F.zero());
    for (size_t i = 1; i < a.size(); ++i) out[i - 1] = a[i] * F.scalar(int64_t(i));
    return poly_trim(std::move(out));
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m) {
    return poly_mod(poly_mul(a, b), m);
}

Poly poly_powmod(const Poly& base, uint64_t e, const Poly& m) {
    FiniteField F = m[0].field();
    Poly result{F.one()};
    Poly b = poly_mod(base, m);
    while (e > 0) {
        if (e & 1) result = poly_mulmod(result, b, m);
        b = poly_mulmod(b, b, m);
        e >>= 1;
    }
    return result;
}

Poly poly_qpower_of_x(const Poly& m, uint32_t power) {
    FiniteField F = m[0].field();
    Poly acc = poly_mod(poly_x(F), m);
    for (uint32_t i = 0; i < power; ++i) acc = poly_powmod(acc, F.q(), m);
    return acc;
}

FieldElement poly_eval(const Poly& a, const FieldElement& x) {
    FieldElement acc = x.field().zero();
    for (size_t i = a.size(); i-- > 0;) acc = acc * x + a[i];
    return acc;
}

Poly poly_invmod(const Poly& a, const Poly& m) {
    // extended Euclid
    Poly r0 = poly_trim(m), r1 = poly_mod(a, m);
    require(!r1.empty(), ErrorCode::DivisionByZero, "not invertible modulo m");
    FiniteField F = m[0].field();
    Poly t0{}, t1{F.one()};
    while (!r1.empty()) {
        Poly q, r2;
        poly_divmod(r0, r1, q, r2);
        Poly t2 = poly_sub(t0, poly_mul(q, t1));
        r0 = std::move(r1);
        r1 = std::move(r2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    require(poly_degree(r0) == 0, ErrorCode::DivisionByZero, "not coprime to the modulus");
    return poly_mod(poly_scale(t0, r0[0].inv()), m);
}

bool poly_is_irreducible(const Poly& f) {
    int n = poly_degree(f);
    if (n <= 0) return false;
    if (n == 1) return true;
    FiniteField F = f[0].field();
    Poly fm = poly_monic(f);
    // x^(q^n) must equal x mod f
    Poly xqn = poly_qpower_of_x(fm, uint32_t(n));
    if (poly_trim(poly_sub(xqn, poly_x(F))) != Poly{}) return false;
    // and gcd(x^(q^(n/t)) - x, f) = 1 for every prime t | n
    for (int t = 2; t <= n; ++t) {
        if (n % t != 0) continue;
        bool is_prime = true;
        for (int d = 2; d * d <= t; ++d)
            if (t % d == 0) is_prime = false;
        if (!is_prime) continue;
        Poly xq = poly_qpower_of_x(fm, uint32_t(n / t));
        Poly g = poly_gcd(fm, poly_sub(xq, poly_x(F)));
        if (poly_degree(g) != 0) return false;
    }
    return true;
}

namespace {

bool poly_less(const Poly& a, const Poly& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (size_t i = a.size(); i-- > 0;) {
        uint64_t ia = a[i].index(), ib = b[i].index();
        if (ia != ib) return ia < ib;
    }
    return false;
}

Poly random_poly_below(const FiniteField& F, int degree_bound, Rng& rng) {
    Poly out;
    for (int i = 0; i < degree_bound; ++i) out.push_back(F.from_index(rng.below(F.q())));
    return poly_trim(std::move(out));
}

/// Equal-degree splitting: g is a product of distinct monic irreducibles all
/// of degree d; returns them all.
void equal_degree_factor(const Poly& g, int d, Rng& rng, std::vector<Poly>& out) {
    int n = poly_degree(g);
    if (n == d) {
        out.push_back(poly_monic(g));
        return;
    }
    FiniteField F = g[0].field();
    Poly splitter;
    for (int attempt = 0; attempt < 256; ++attempt) {
        Poly r = random_poly_below(F, n, rng);
        if (poly_degree(r) < 1) continue;
        Poly g1 = poly_gcd(g, r);
        if (poly_degree(g1) > 0 && poly_degree(g1) < n) {
            splitter = g1;
            break;
        }
        if (F.p() == 2) {
            // trace splitting for characteristic 2
            uint32_t bits = F.k() * uint32_t(d);
            Poly t = poly_mod(r, g);
            Poly acc = t;
            for (uint32_t i = 1; i < bits; ++i) {
                t = poly_mulmod(t, t, g);
                acc = poly_add(acc, t);
            }
            Poly g2 = poly_gcd(g, acc);
            if (poly_degree(g2) > 0 && poly_degree(g2) < n) {
                splitter = g2;
                break;
            }
        } else {
            // r^((q^d - 1)/2): (q^d-1)/2 = (q-1)/2 * (1 + q + ... + q^(d-1))
            Poly norm = poly_mod(r, g);
            Poly acc = norm;
            for (int i = 1; i < d; ++i) {
                acc = poly_powmod(acc, F.q(), g);
                acc = poly_mulmod(acc, norm, g);
            }
            Poly s = poly_powmod(acc, (F.q() - 1) / 2, g);
            Poly s1 = poly_sub(s, Poly{F.one()});
            Poly g2 = poly_gcd(g, s1);
            if (poly_degree(g2) > 0 && poly_degree(g2) < n) {
                splitter = g2;
                break;
            }
        }
    }
    require(!splitter.empty(), ErrorCode::InternalError, "equal-degree splitting stalled");
    Poly q, r;
    poly_divmod(g, splitter, q, r);
    require(poly_is_zero(r), ErrorCode::InternalError, "splitter does not divide");
    equal_degree_factor(splitter, d, rng, out);
    equal_degree_factor(poly_monic(q), d, rng, out);
}

} // namespace

std::vector<Poly> factor_squarefree(const Poly& f, Rng& rng) {
    Poly fm = poly_monic(poly_trim(f));
    require(poly_degree(fm) >= 1, ErrorCode::InternalError, "factoring a constant");
    Poly d = poly_derivative(fm);
    require(poly_degree(poly_gcd(fm, d)) == 0, ErrorCode::InternalError,
            "input polynomial is not squarefree");

    std::vector<Poly> factors;
    // distinct-degree stage
    Poly rest = fm;
    Poly xq = poly_x(fm[0].field());
    for (int deg = 1; poly_degree(rest) >= 1; ++deg) {
        if (2 * deg > poly_degree(rest)) {
            factors.push_back(poly_monic(rest));
            break;
        }
        xq = poly_powmod(xq, fm[0].field().q(), rest);
        Poly diff = poly_sub(xq, poly_x(fm[0].field()));
        Poly g = poly_gcd(rest, diff);
        if (poly_degree(g) >= 1) {
            equal_degree_factor(g, deg, rng, factors);
            Poly q, r;
            poly_divmod(rest, g, q, r);
            rest = poly_monic(q);
            xq = poly_mod(xq, rest.empty() ? g : rest);
            if (poly_degree(rest) == 0) break;
        }
    }
    std::sort(factors.begin(), factors.end(), poly_less);
    return factors;
}

std::vector<Poly> distinct_irreducible_factors(const Poly& f, Rng& rng) {
    Poly fm = poly_monic(poly_trim(f));
    std::vector<Poly> out;
    if (poly_degree(fm) <= 0) return out;
    Poly d = poly_derivative(fm);
    if (poly_is_zero(d)) {
        // f = g(x^p) = (p-th root of g applied coefficientwise)(x)^p
        FiniteField F = fm[0].field();
        uint32_t p = F.p();
        Poly root;
        for (size_t i = 0; i < fm.size(); i += p) root.push_back(fm[i].frobenius_inverse());
        return distinct_irreducible_factors(root, rng);
    }
    Poly g = poly_gcd(fm, d);
    Poly q, r;
    poly_divmod(fm, g, q, r);
    require(poly_is_zero(r), ErrorCode::InternalError, "gcd does not divide");
    out = factor_squarefree(poly_monic(q), rng);
    if (poly_degree(g) > 0) {
        for (auto& extra : distinct_irreducible_factors(g, rng)) {
            bool present = false;
            for (const auto& have : out)
                if (have == extra) present = true;
            if (!present) out.push_back(std::move(extra));
        }
    }
    std::sort(out.begin(), out.end(), poly_less);
    return out;
}

Poly char_poly(const Matrix& a) {
    require(a.square(), ErrorCode::NotSquare, "characteristic polynomial of non-square matrix");
    const FiniteField& F = a.field();
    int n = a.rows();
    Matrix h = a;

    // similarity reduction to upper Hessenberg form
    for (int col = 0; col + 2 < n; ++col) {
        int pivot = -1;
        for (int r = col + 1; r < n; ++r) {
            if (!h.at(r, col).is_zero()) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) continue;
        if (pivot != col + 1) {
            // swap rows and the matching columns
            for (int j = 0; j < n; ++j) {
                FieldElement tmp = h.at(pivot, j);
                h.set(pivot, j, h.at(col + 1, j));
                h.set(col + 1, j, tmp);
            }
            for (int i = 0; i < n; ++i) {
                FieldElement tmp = h.at(i, pivot);
                h.set(i, pivot, h.at(i, col + 1));
                h.set(i, col + 1, tmp);
            }
        }
        FieldElement inv = h.at(col + 1, col).inv();
        for (int r = col + 2; r < n; ++r) {
            FieldElement u = h.at(r, col) * inv;
            if (u.is_zero()) continue;
            for (int j = 0; j < n; ++j) h.set(r, j, h.at(r, j) - u * h.at(col + 1, j));
            for (int i = 0; i < n; ++i) h.set(i, col + 1, h.at(i, col + 1) + u * h.at(i, r));
        }
    }

    // p_m(X) = (X - h[m][m]) p_{m-1}(X)
    //          - sum_i h[i][m] * (prod of subdiagonal below i) * p_{i-1}(X)
    std::vector<Poly> p(size_t(n) + 1);
    p[0] = {F.one()};
    for (int m = 1; m <= n; ++m) {
        Poly term = poly_mul(p[m - 1], {-h.at(m - 1, m - 1), F.one()});
        FieldElement prod = F.one();
        for (int i = m - 1; i >= 1; --i) {
            prod = prod * h.at(i, i - 1);
            if (prod.is_zero()) break;
            FieldElement c = h.at(i - 1, m - 1) * prod;
            if (!c.is_zero()) term = poly_sub(term, poly_scale(p[i - 1], c));
        }
        p[m] = std::move(term);
    }
    Poly out = p[n];
    out.resize(size_t(n) + 1, F.zero());
    return out;
}

Poly matrix_min_poly(const Matrix& a) {
    require(a.square(), ErrorCode::NotSquare, "minimal polynomial of non-square matrix");
    const FiniteField& F = a.field();
    int n = a.rows();
    size_t flat = size_t(n) * n;

    // echelon rows with expressions over the powers
    std::vector<std::vector<FieldElement>> rows;
    std::vector<int> pivots;
    std::vector<Poly> exprs;

    Matrix power = Matrix::identity(F, n);
    for (int m = 0;; ++m) {
        std::vector<FieldElement> vec(flat, F.zero());
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) vec[size_t(i) * n + j] = power.at(i, j);
        Poly expr(size_t(m) + 1, F.zero());
        expr[m] = F.one();
        for (size_t r = 0; r < rows.size(); ++r) {
            FieldElement c = vec[pivots[r]];
            if (c.is_zero()) continue;
            for (size_t t = 0; t < flat; ++t) vec[t] = vec[t] - c * rows[r][t];
            expr = poly_sub(expr, poly_scale(exprs[r], c));
        }
        int pivot = -1;
        for (size_t t = 0; t < flat; ++t)
            if (!vec[t].is_zero()) {
                pivot = int(t);
                break;
            }
        if (pivot < 0) {
            // monic by construction: the x^m coefficient survives reduction
            expr.resize(size_t(m) + 1, F.zero());
            return expr;
        }
        FieldElement inv = vec[pivot].inv();
        for (size_t t = 0; t < flat; ++t) vec[t] = vec[t] * inv;
        expr = poly_scale(expr, inv);
        rows.push_back(std::move(vec));
        pivots.push_back(pivot);
        exprs.push_back(std::move(expr));
        power = power * a;
        require(m <= n * n + 1, ErrorCode::InternalError, "minimal polynomial search overran");
    }
}

Matrix eval_poly_at_matrix(const Poly& f, const Matrix& a) {
    require(a.square(), ErrorCode::NotSquare, "polynomial of a non-square matrix");
    const FiniteField& F = a.field();
    Matrix acc(F, a.rows(), a.cols());
    for (size_t i = f.size(); i-- > 0;) {
        acc = acc * a;
        if (!f[i].is_zero()) {
            for (int d = 0; d < a.rows(); ++d) acc.set(d, d, acc.at(d, d) + f[i]);
        }
    }
    return acc;
}

} // namespace unifact
