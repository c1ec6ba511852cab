#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "unifact/error.hpp"

namespace unifact {

/// Extension degrees beyond this are rejected at construction.
inline constexpr uint32_t kMaxExtensionDegree = 16;
/// Field size cap; keeps exhaustive oracles tractable.
inline constexpr uint64_t kMaxFieldSize = uint64_t(1) << 16;

/// Immutable description of GF(p^k). Instances are interned: two fields with
/// the same (p, k, modulus) share one FieldInfo, so pointer equality is field
/// equality. The intern table owns every FieldInfo for the process lifetime.
struct FieldInfo {
    uint32_t p = 0;
    uint32_t k = 1;
    uint64_t q = 0;
    std::vector<uint32_t> modulus; // monic of degree k, coefficients low to high

    bool prime_field() const { return k == 1; }
};

class FieldElement;

/// Value handle to an interned finite field.
class FiniteField {
public:
    FiniteField() = default;

    /// Builds GF(p^k). If no modulus is given, the lexicographically smallest
    /// monic irreducible of degree k over GF(p) is selected, so the field
    /// descriptor (and everything serialized against it) is reproducible.
    static FiniteField make(uint32_t p, uint32_t k,
                            const std::optional<std::vector<uint32_t>>& modulus = std::nullopt);

    bool valid() const { return info_ != nullptr; }
    uint32_t p() const { return info_->p; }
    uint32_t k() const { return info_->k; }
    uint64_t q() const { return info_->q; }
    const std::vector<uint32_t>& modulus() const { return info_->modulus; }
    bool prime_field() const { return info_->prime_field(); }
    const FieldInfo* info() const { return info_; }

    FiniteField prime_subfield() const { return make(p(), 1); }

    FieldElement zero() const;
    FieldElement one() const;
    /// Embeds an integer through the prime subfield.
    FieldElement scalar(int64_t value) const;
    FieldElement from_coords(const std::vector<uint32_t>& coords) const;
    /// Inverse of FieldElement::index(); elements are enumerated in
    /// coordinate order c0 + c1*p + c2*p^2 + ...
    FieldElement from_index(uint64_t index) const;

    bool operator==(const FiniteField& other) const { return info_ == other.info_; }
    bool operator!=(const FiniteField& other) const { return info_ != other.info_; }

private:
    friend class FieldElement;
    explicit FiniteField(const FieldInfo* info) : info_(info) {}
    const FieldInfo* info_ = nullptr;
};

/// Element of a finite field, stored in reduced canonical form (coordinates
/// in the power basis of the modulus, each in [0, p)). Arithmetic between
/// elements of different fields throws FieldMismatch.
class FieldElement {
public:
    FieldElement() = default;

    FiniteField field() const { return FiniteField(info_); }
    const FieldInfo* info() const { return info_; }
    uint32_t coord(uint32_t i) const { return c_[i]; }
    std::vector<uint32_t> coords() const;
    uint64_t index() const;

    bool is_zero() const;
    bool is_one() const;
    /// True iff coordinates 1..k-1 vanish, i.e. the element lies in GF(p).
    bool in_prime_subfield() const;
    /// The element with the same constant coordinate in GF(p); only valid
    /// when in_prime_subfield() holds.
    FieldElement to_prime_subfield() const;

    FieldElement operator+(const FieldElement& other) const;
    FieldElement operator-(const FieldElement& other) const;
    FieldElement operator*(const FieldElement& other) const;
    FieldElement operator/(const FieldElement& other) const;
    FieldElement operator-() const;
    FieldElement& operator+=(const FieldElement& other) { return *this = *this + other; }
    FieldElement& operator-=(const FieldElement& other) { return *this = *this - other; }
    FieldElement& operator*=(const FieldElement& other) { return *this = *this * other; }

    bool operator==(const FieldElement& other) const;
    bool operator!=(const FieldElement& other) const { return !(*this == other); }

    FieldElement inv() const;
    FieldElement pow(int64_t e) const;
    /// x -> x^p, an automorphism fixing the prime subfield.
    FieldElement frobenius() const;
    /// The unique p-th root (Frobenius is bijective on finite fields).
    FieldElement frobenius_inverse() const;

    std::string str() const;

private:
    friend class FiniteField;
    const FieldInfo* info_ = nullptr;
    std::array<uint16_t, kMaxExtensionDegree> c_{};
};

inline void require_same_field(const FieldElement& a, const FieldElement& b) {
    require(a.info() == b.info(), ErrorCode::FieldMismatch,
            "elements belong to different fields");
}

/// Deterministic element a with a != 0 and a != 1 (smallest in coordinate
/// order); needs q >= 3.
FieldElement nonunit_scalar(const FiniteField& field);

} // namespace unifact
