#pragma once

#include "unifact/algcore.hpp"

namespace unifact {

inline constexpr uint64_t kUnitEnumerationCap = 100'000;

/// Exhaustive enumeration data for the unit group of a small algebra.
struct UnitGroupEnumeration {
    uint64_t unit_count = 0;
    uint64_t one_plus_j_count = 0;
    uint64_t unipotent_count = 0;
    std::vector<AlgebraElement> one_plus_j; // populated by one_plus_radical
    bool verdict = false;                   // set by unipotent_radical_check
};

/// Enumerates 1 + J and asserts it is a normal subgroup of the unit group
/// consisting of unipotents; |1 + J| = q^(dim J). Normality is structural
/// (J is a two-sided ideal) and additionally spot-checked on conjugation by
/// the natural basis units.
UnitGroupEnumeration one_plus_radical(const Algebra& a, const RadicalData& rad,
                                      uint64_t cap = kUnitEnumerationCap);

/// Exhaustive verification that 1 + J is the unipotent radical of the unit
/// group: every element of 1 + J is unipotent, and every unipotent unit
/// whose normal closure consists solely of unipotents lies in 1 + J.
/// Requires |F| >= 4 and an enumerable unit group.
UnitGroupEnumeration unipotent_radical_check(const Algebra& a, const RadicalData& rad,
                                             uint64_t cap = kUnitEnumerationCap);

} // namespace unifact
