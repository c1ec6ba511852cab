#include "unifact/unitrad.hpp"

#include <set>
#include <unordered_set>

namespace unifact {

namespace {

uint64_t checked_power(uint64_t base, int exp, uint64_t cap) {
    uint64_t out = 1;
    for (int i = 0; i < exp; ++i) {
        require(out <= cap / base, ErrorCode::EnumerationCap,
                "enumeration exceeds the cap");
        out *= base;
    }
    return out;
}

} // namespace

UnitGroupEnumeration one_plus_radical(const Algebra& a, const RadicalData& rad, uint64_t cap) {
    const FiniteField& F = a.field();
    uint64_t count = checked_power(F.q(), rad.dim, cap);

    UnitGroupEnumeration out;
    out.one_plus_j_count = count;
    out.one_plus_j.reserve(count);
    // enumerate coefficient tuples over the radical basis
    for (uint64_t idx = 0; idx < count; ++idx) {
        AlgebraElement x = a.one();
        uint64_t rest = idx;
        for (int i = 0; i < rad.dim; ++i) {
            uint64_t digit = rest % F.q();
            rest /= F.q();
            if (digit != 0) x = x + rad.basis[i].scaled(F.from_index(digit));
        }
        auto cert = is_unipotent(x);
        require(cert.has_value(), ErrorCode::InternalError,
                "element of 1 + J is not unipotent");
        out.one_plus_j.push_back(std::move(x));
    }

    // closure under products and inverses
    std::unordered_set<uint64_t> members;
    for (const auto& x : out.one_plus_j) members.insert(x.index());
    for (const auto& x : out.one_plus_j) {
        require(members.count(x.inv().index()) > 0, ErrorCode::InternalError,
                "1 + J is not closed under inverses");
    }
    if (count <= 256) {
        for (const auto& x : out.one_plus_j)
            for (const auto& y : out.one_plus_j)
                require(members.count((x * y).index()) > 0, ErrorCode::InternalError,
                        "1 + J is not closed under products");
    }

    // normality spot check: conjugation by the natural basis units
    for (int g = 0; g < a.dim(); ++g) {
        AlgebraElement bg = a.basis_element(g);
        if (!bg.is_unit()) continue;
        AlgebraElement bginv = bg.inv();
        for (const auto& x : out.one_plus_j)
            require(members.count((bg * x * bginv).index()) > 0, ErrorCode::InternalError,
                    "1 + J is not normal under basis units");
    }
    return out;
}

UnitGroupEnumeration unipotent_radical_check(const Algebra& a, const RadicalData& rad,
                                             uint64_t cap) {
    const FiniteField& F = a.field();
    require(F.q() >= 4, ErrorCode::FieldTooSmall,
            "the unipotent radical statement requires |F| >= 4");
    uint64_t total = checked_power(F.q(), a.dim(), cap * 16);

    UnitGroupEnumeration out = one_plus_radical(a, rad, cap);
    std::unordered_set<uint64_t> in_one_plus_j;
    for (const auto& x : out.one_plus_j) in_one_plus_j.insert(x.index());

    // enumerate all units (with inverses) and all unipotent units
    std::vector<AlgebraElement> units;
    std::vector<AlgebraElement> unit_invs;
    std::vector<AlgebraElement> unipotents;
    for (uint64_t idx = 0; idx < total; ++idx) {
        AlgebraElement x = a.element_from_index(idx);
        if (!x.is_unit()) continue;
        units.push_back(x);
        unit_invs.push_back(x.inv());
        require(units.size() <= cap, ErrorCode::EnumerationCap,
                "unit group exceeds the enumeration cap");
        if (is_unipotent(x)) unipotents.push_back(std::move(x));
    }
    out.unit_count = units.size();
    out.unipotent_count = unipotents.size();

    // (i) every element of 1 + J is unipotent: checked in one_plus_radical.
    // (ii) a unipotent outside 1 + J must have a non-unipotent element in its
    //      normal closure; otherwise 1 + J would not be the unique maximal
    //      unipotent normal subgroup.
    out.verdict = true;
    for (const auto& u : unipotents) {
        if (in_one_plus_j.count(u.index()) > 0) continue;
        // grow the normal closure of u, stopping at the first non-unipotent;
        // ordered set keeps the scan order deterministic
        std::set<uint64_t> closure{u.index()};
        std::vector<AlgebraElement> frontier{u};
        bool found_non_unipotent = false;
        while (!frontier.empty() && !found_non_unipotent) {
            AlgebraElement x = std::move(frontier.back());
            frontier.pop_back();
            // conjugates by all units, inverses, and products with members
            std::vector<AlgebraElement> candidates;
            candidates.push_back(x.inv());
            for (size_t g = 0; g < units.size(); ++g)
                candidates.push_back(units[g] * x * unit_invs[g]);
            for (const auto& idx : closure) {
                AlgebraElement y = a.element_from_index(idx);
                candidates.push_back(x * y);
                candidates.push_back(y * x);
            }
            for (auto& c : candidates) {
                if (closure.count(c.index()) > 0) continue;
                if (!is_unipotent(c)) {
                    found_non_unipotent = true;
                    break;
                }
                closure.insert(c.index());
                frontier.push_back(std::move(c));
                require(closure.size() <= cap, ErrorCode::EnumerationCap,
                        "normal closure exceeds the enumeration cap");
            }
        }
        if (!found_non_unipotent) {
            out.verdict = false;
            break;
        }
    }
    return out;
}

} // namespace unifact
