#pragma once

#include <string>
#include <vector>

#include "unifact/gf.hpp"

namespace unifact {

inline constexpr int kDefaultGroupOrderCap = 64;

/// Finite group in Cayley-table form. Construction verifies all group axioms
/// exhaustively, so a FiniteGroup value is always a genuine group.
class FiniteGroup {
public:
    int order() const { return n_; }
    int op(int a, int b) const { return table_[size_t(a) * n_ + b]; }
    int identity() const { return identity_; }
    int inverse(int a) const { return inverse_[a]; }
    int element_order(int a) const;
    bool abelian() const;
    const std::vector<int>& table_flat() const { return table_; }

    int power(int a, int e) const;

    bool operator==(const FiniteGroup& other) const {
        return n_ == other.n_ && table_ == other.table_;
    }

    friend FiniteGroup group_from_table(const std::vector<std::vector<int>>& table);
    friend FiniteGroup group_from_permutations(const std::vector<std::vector<int>>& generators,
                                               int order_cap);

private:
    int n_ = 0;
    int identity_ = 0;
    std::vector<int> table_;   // row-major, table[a*n+b] = a∘b
    std::vector<int> inverse_;
};

FiniteGroup group_from_table(const std::vector<std::vector<int>>& table);

/// Closure of permutation generators (0-based images on a common point set),
/// ordered by breadth-first discovery from the identity.
FiniteGroup group_from_permutations(const std::vector<std::vector<int>>& generators,
                                    int order_cap = kDefaultGroupOrderCap);

/// Built-in groups addressable by name:
/// C2 C3 C4 C5 C6 C7 C8 C2xC2 S3 D4 Q8.
FiniteGroup catalog_group(const std::string& name);
std::vector<std::string> catalog_names();

/// Normalized 2-cocycle on G with values in F*. Construction verifies the
/// cocycle identity tau(x,y) tau(xy,z) = tau(y,z) tau(x,yz) on all triples
/// and the normalization tau(1,g) = tau(g,1) = 1.
class TwoCocycle {
public:
    const FiniteField& field() const { return field_; }
    int order() const { return n_; }
    const FieldElement& value(int g, int h) const { return v_[size_t(g) * n_ + h]; }
    /// True iff every value lies in the prime subfield of F.
    bool prime_subfield_valued() const { return prime_subfield_; }
    bool trivial() const;

    friend TwoCocycle cocycle_trivial(const FiniteGroup& g, const FiniteField& field);
    friend TwoCocycle cocycle_from_values(const FiniteGroup& g, const FiniteField& field,
                                          const std::vector<std::vector<FieldElement>>& values);

private:
    /// Validates and assembles a cocycle from a flat value grid.
    static TwoCocycle build(const FiniteGroup& g, const FiniteField& field,
                            std::vector<FieldElement> values);

    FiniteField field_;
    int n_ = 0;
    bool prime_subfield_ = true;
    std::vector<FieldElement> v_;
};

TwoCocycle cocycle_trivial(const FiniteGroup& g, const FiniteField& field);
TwoCocycle cocycle_from_values(const FiniteGroup& g, const FiniteField& field,
                               const std::vector<std::vector<FieldElement>>& values);

/// Coboundary of mu : G -> F* with mu(1) = 1, i.e.
/// tau(g,h) = mu(g) mu(h) mu(gh)^-1. Always a normalized cocycle.
TwoCocycle cocycle_coboundary(const FiniteGroup& g, const FiniteField& field,
                              const std::vector<FieldElement>& mu);

bool cocycle_symmetric(const FiniteGroup& g, const TwoCocycle& tau);

} // namespace unifact
