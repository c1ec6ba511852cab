#include "unifact/grp.hpp"

#include <algorithm>
#include <map>

namespace unifact {

int FiniteGroup::element_order(int a) const {
    int e = identity_;
    int x = a;
    int ord = 1;
    while (x != e) {
        x = op(x, a);
        ++ord;
    }
    return ord;
}

bool FiniteGroup::abelian() const {
    for (int a = 0; a < n_; ++a)
        for (int b = a + 1; b < n_; ++b)
            if (op(a, b) != op(b, a)) return false;
    return true;
}

int FiniteGroup::power(int a, int e) const {
    int x = identity_;
    for (int i = 0; i < e; ++i) x = op(x, a);
    return x;
}

FiniteGroup group_from_table(const std::vector<std::vector<int>>& table) {
    int n = int(table.size());
    require(n >= 1 && n <= kDefaultGroupOrderCap, ErrorCode::OrderCapExceeded,
            "group order must be in [1, " + std::to_string(kDefaultGroupOrderCap) + "]");
    FiniteGroup g;
    g.n_ = n;
    g.table_.assign(size_t(n) * n, 0);
    for (int i = 0; i < n; ++i) {
        require(int(table[i].size()) == n, ErrorCode::SchemaError, "Cayley table is not square");
        for (int j = 0; j < n; ++j) {
            require(table[i][j] >= 0 && table[i][j] < n, ErrorCode::SchemaError,
                    "Cayley table index out of range");
            g.table_[size_t(i) * n + j] = table[i][j];
        }
    }
    // rows and columns must be permutations (cancellation / existence of inverses)
    for (int i = 0; i < n; ++i) {
        std::vector<bool> seen_row(n, false), seen_col(n, false);
        for (int j = 0; j < n; ++j) {
            int r = g.op(i, j), c = g.op(j, i);
            require(!seen_row[r] && !seen_col[c], ErrorCode::NoInverse,
                    "Cayley table row or column is not a permutation");
            seen_row[r] = true;
            seen_col[c] = true;
        }
    }
    // identity
    int identity = -1;
    for (int e = 0; e < n; ++e) {
        bool ok = true;
        for (int j = 0; j < n && ok; ++j) ok = g.op(e, j) == j && g.op(j, e) == j;
        if (ok) {
            identity = e;
            break;
        }
    }
    require(identity >= 0, ErrorCode::NoIdentity, "no two-sided identity element");
    g.identity_ = identity;
    // inverses
    g.inverse_.assign(n, -1);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            if (g.op(a, b) == identity && g.op(b, a) == identity) {
                g.inverse_[a] = b;
                break;
            }
        }
        require(g.inverse_[a] >= 0, ErrorCode::NoInverse,
                "element " + std::to_string(a) + " has no inverse");
    }
    // associativity, exhaustively
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                require(g.op(g.op(a, b), c) == g.op(a, g.op(b, c)), ErrorCode::NotAssociative,
                        "Cayley table is not associative");
    return g;
}

namespace {

std::vector<int> perm_compose(const std::vector<int>& a, const std::vector<int>& b) {
    // (a*b)(x) = a(b(x))
    std::vector<int> out(a.size());
    for (size_t x = 0; x < a.size(); ++x) out[x] = a[b[x]];
    return out;
}

} // namespace

FiniteGroup group_from_permutations(const std::vector<std::vector<int>>& generators,
                                    int order_cap) {
    require(!generators.empty(), ErrorCode::SchemaError, "no generators given");
    size_t m = generators[0].size();
    for (const auto& gen : generators) {
        require(gen.size() == m, ErrorCode::SchemaError,
                "generators act on different point sets");
        std::vector<bool> seen(m, false);
        for (int img : gen) {
            require(img >= 0 && size_t(img) < m && !seen[img], ErrorCode::SchemaError,
                    "generator is not a permutation");
            seen[img] = true;
        }
    }
    std::vector<int> id(m);
    for (size_t i = 0; i < m; ++i) id[i] = int(i);

    std::vector<std::vector<int>> elements{id};
    std::map<std::vector<int>, int> index{{id, 0}};
    for (size_t head = 0; head < elements.size(); ++head) {
        for (const auto& gen : generators) {
            std::vector<int> next = perm_compose(elements[head], gen);
            if (index.emplace(next, int(elements.size())).second) {
                require(int(elements.size()) < order_cap, ErrorCode::OrderCapExceeded,
                        "closure exceeds the order cap " + std::to_string(order_cap));
                elements.push_back(std::move(next));
            }
        }
    }
    int n = int(elements.size());
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            table[i][j] = index.at(perm_compose(elements[i], elements[j]));
    return group_from_table(table);
}

namespace {

FiniteGroup cyclic_group(int n) {
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t[i][j] = (i + j) % n;
    return group_from_table(t);
}

FiniteGroup klein_four() {
    std::vector<std::vector<int>> t(4, std::vector<int>(4));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) t[i][j] = i ^ j;
    return group_from_table(t);
}

FiniteGroup quaternion_group() {
    // elements 2*axis + sign with axis in {1, i, j, k}
    auto axis_mul = [](int a, int b, int& sign) {
        // returns axis of product, accumulates sign; 0=1,1=i,2=j,3=k
        static const int tbl[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
        static const int sgn[4][4] = {{+1, +1, +1, +1},
                                      {+1, -1, +1, -1},
                                      {+1, -1, -1, +1},
                                      {+1, +1, -1, -1}};
        sign *= sgn[a][b];
        return tbl[a][b];
    };
    std::vector<std::vector<int>> t(8, std::vector<int>(8));
    for (int x = 0; x < 8; ++x) {
        for (int y = 0; y < 8; ++y) {
            int sign = (x & 1 ? -1 : 1) * (y & 1 ? -1 : 1);
            int axis = axis_mul(x >> 1, y >> 1, sign);
            t[x][y] = 2 * axis + (sign < 0 ? 1 : 0);
        }
    }
    return group_from_table(t);
}

} // namespace

FiniteGroup catalog_group(const std::string& name) {
    if (name == "C2") return cyclic_group(2);
    if (name == "C3") return cyclic_group(3);
    if (name == "C4") return cyclic_group(4);
    if (name == "C5") return cyclic_group(5);
    if (name == "C6") return cyclic_group(6);
    if (name == "C7") return cyclic_group(7);
    if (name == "C8") return cyclic_group(8);
    if (name == "C2xC2") return klein_four();
    if (name == "S3") return group_from_permutations({{1, 0, 2}, {1, 2, 0}});
    if (name == "D4") return group_from_permutations({{1, 2, 3, 0}, {0, 3, 2, 1}});
    if (name == "Q8") return quaternion_group();
    fail(ErrorCode::SchemaError, "unknown catalog group '" + name + "'");
}

std::vector<std::string> catalog_names() {
    return {"C2", "C3", "C4", "C5", "C6", "C7", "C8", "C2xC2", "S3", "D4", "Q8"};
}

bool TwoCocycle::trivial() const {
    for (const auto& v : v_)
        if (!v.is_one()) return false;
    return true;
}

TwoCocycle TwoCocycle::build(const FiniteGroup& g, const FiniteField& field,
                             std::vector<FieldElement> values) {
    int n = g.order();
    TwoCocycle tau;
    for (const auto& v : values) {
        require(v.info() == field.info(), ErrorCode::FieldMismatch,
                "cocycle value from a different field");
        require(!v.is_zero(), ErrorCode::ZeroValue, "cocycle values must be nonzero");
    }
    auto at = [&](int a, int b) -> const FieldElement& { return values[size_t(a) * n + b]; };
    int e = g.identity();
    for (int a = 0; a < n; ++a)
        require(at(e, a).is_one() && at(a, e).is_one(), ErrorCode::NotNormalized,
                "cocycle is not normalized: tau(1,g) = tau(g,1) = 1 required");
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z)
                require(at(x, y) * at(g.op(x, y), z) == at(y, z) * at(x, g.op(y, z)),
                        ErrorCode::CocycleIdentityFails,
                        "cocycle identity fails at a triple");
    tau.field_ = field;
    tau.n_ = n;
    tau.v_ = std::move(values);
    tau.prime_subfield_ = true;
    for (const auto& v : tau.v_)
        if (!v.in_prime_subfield()) tau.prime_subfield_ = false;
    return tau;
}

TwoCocycle cocycle_trivial(const FiniteGroup& g, const FiniteField& field) {
    std::vector<FieldElement> values(size_t(g.order()) * g.order(), field.one());
    return TwoCocycle::build(g, field, std::move(values));
}

TwoCocycle cocycle_from_values(const FiniteGroup& g, const FiniteField& field,
                               const std::vector<std::vector<FieldElement>>& values) {
    int n = g.order();
    require(int(values.size()) == n, ErrorCode::SchemaError, "cocycle grid has wrong size");
    std::vector<FieldElement> flat;
    flat.reserve(size_t(n) * n);
    for (const auto& row : values) {
        require(int(row.size()) == n, ErrorCode::SchemaError, "cocycle grid has wrong size");
        for (const auto& v : row) flat.push_back(v);
    }
    return TwoCocycle::build(g, field, std::move(flat));
}

TwoCocycle cocycle_coboundary(const FiniteGroup& g, const FiniteField& field,
                              const std::vector<FieldElement>& mu) {
    int n = g.order();
    require(int(mu.size()) == n, ErrorCode::SchemaError, "mu must assign a value to every element");
    require(mu[g.identity()].is_one(), ErrorCode::NotNormalized, "mu(1) must be 1");
    for (const auto& v : mu)
        require(!v.is_zero(), ErrorCode::ZeroValue, "mu values must be nonzero");
    std::vector<std::vector<FieldElement>> values(n, std::vector<FieldElement>(n, field.one()));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) values[a][b] = mu[a] * mu[b] * mu[g.op(a, b)].inv();
    return cocycle_from_values(g, field, values);
}

bool cocycle_symmetric(const FiniteGroup& g, const TwoCocycle& tau) {
    int n = g.order();
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (tau.value(a, b) != tau.value(b, a)) return false;
    return true;
}

} // namespace unifact
