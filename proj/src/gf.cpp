#include "unifact/gf.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <tuple>

namespace unifact {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::NonPrime: return "NonPrime";
        case ErrorCode::ReducibleModulus: return "ReducibleModulus";
        case ErrorCode::DivisionByZero: return "DivisionByZero";
        case ErrorCode::FieldMismatch: return "FieldMismatch";
        case ErrorCode::FieldTooSmall: return "FieldTooSmall";
        case ErrorCode::DimensionCap: return "DimensionCap";
        case ErrorCode::NotSquare: return "NotSquare";
        case ErrorCode::NotUnipotent: return "NotUnipotent";
        case ErrorCode::NotAssociative: return "NotAssociative";
        case ErrorCode::NoIdentity: return "NoIdentity";
        case ErrorCode::NoInverse: return "NoInverse";
        case ErrorCode::OrderCapExceeded: return "OrderCapExceeded";
        case ErrorCode::CocycleIdentityFails: return "CocycleIdentityFails";
        case ErrorCode::NotNormalized: return "NotNormalized";
        case ErrorCode::ZeroValue: return "ZeroValue";
        case ErrorCode::NotAUnit: return "NotAUnit";
        case ErrorCode::NotSemisimple: return "NotSemisimple";
        case ErrorCode::NotSL: return "NotSL";
        case ErrorCode::Singular: return "Singular";
        case ErrorCode::CentralNonIdentity: return "CentralNonIdentity";
        case ErrorCode::IndexTooHigh: return "IndexTooHigh";
        case ErrorCode::NotInDerived: return "NotInDerived";
        case ErrorCode::NotInRadical: return "NotInRadical";
        case ErrorCode::HypothesisViolated: return "HypothesisViolated";
        case ErrorCode::EnumerationCap: return "EnumerationCap";
        case ErrorCode::SchemaError: return "SchemaError";
        case ErrorCode::CertificateInvalid: return "CertificateInvalid";
        case ErrorCode::InternalError: return "InternalError";
    }
    return "UnknownError";
}

namespace {

bool is_prime_u32(uint32_t n) {
    if (n < 2) return false;
    for (uint32_t d = 2; uint64_t(d) * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// --- polynomial arithmetic over GF(p), coefficients low to high ---

using ModPoly = std::vector<uint32_t>;

void mp_trim(ModPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

ModPoly mp_mul(const ModPoly& a, const ModPoly& b, uint32_t p) {
    if (a.empty() || b.empty()) return {};
    ModPoly out(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            out[i + j] = uint32_t((out[i + j] + uint64_t(a[i]) * b[j]) % p);
    }
    mp_trim(out);
    return out;
}

ModPoly mp_mod(ModPoly a, const ModPoly& m, uint32_t p) {
    mp_trim(a);
    // m is monic
    while (a.size() >= m.size()) {
        uint32_t c = a.back();
        size_t shift = a.size() - m.size();
        if (c != 0) {
            for (size_t j = 0; j < m.size(); ++j) {
                uint64_t sub = uint64_t(c) * m[j] % p;
                a[shift + j] = uint32_t((a[shift + j] + p - sub) % p);
            }
        }
        a.pop_back();
        mp_trim(a);
        if (a.size() < m.size()) break;
    }
    return a;
}

ModPoly mp_mulmod(const ModPoly& a, const ModPoly& b, const ModPoly& m, uint32_t p) {
    return mp_mod(mp_mul(a, b, p), m, p);
}

ModPoly mp_powmod(ModPoly base, uint64_t e, const ModPoly& m, uint32_t p) {
    ModPoly result{1};
    base = mp_mod(std::move(base), m, p);
    while (e > 0) {
        if (e & 1) result = mp_mulmod(result, base, m, p);
        base = mp_mulmod(base, base, m, p);
        e >>= 1;
    }
    return result;
}

ModPoly mp_gcd(ModPoly a, ModPoly b, uint32_t p) {
    auto inv_mod_p = [p](uint32_t x) {
        // Fermat; p prime
        uint64_t r = 1, base = x, e = p - 2;
        while (e > 0) {
            if (e & 1) r = r * base % p;
            base = base * base % p;
            e >>= 1;
        }
        return uint32_t(r);
    };
    mp_trim(a);
    mp_trim(b);
    while (!b.empty()) {
        // reduce a mod b (b not necessarily monic)
        uint32_t lead_inv = inv_mod_p(b.back());
        ModPoly r = a;
        while (r.size() >= b.size()) {
            uint32_t c = uint32_t(uint64_t(r.back()) * lead_inv % p);
            size_t shift = r.size() - b.size();
            if (c != 0) {
                for (size_t j = 0; j < b.size(); ++j) {
                    uint64_t sub = uint64_t(c) * b[j] % p;
                    r[shift + j] = uint32_t((r[shift + j] + p - sub) % p);
                }
            }
            r.pop_back();
            mp_trim(r);
            if (r.size() < b.size()) break;
        }
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

/// f monic of degree k >= 1 over GF(p): f is irreducible iff it shares no
/// factor with x^(p^d) - x for d = 1..k/2 and (for k > 1) has no constant
/// divisor issues; x^(p^d) - x is the product of all irreducibles of degree
/// dividing d.
bool mp_irreducible(const ModPoly& f, uint32_t p) {
    uint32_t k = uint32_t(f.size()) - 1;
    if (k == 0) return false;
    if (k == 1) return true;
    if (f[0] == 0) return false; // divisible by x
    ModPoly x{0, 1};
    ModPoly xp = x; // x^(p^d) mod f, starting d = 0
    for (uint32_t d = 1; 2 * d <= k; ++d) {
        xp = mp_powmod(xp, p, f, p);
        ModPoly diff = xp;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = (diff[1] + p - 1) % p;
        mp_trim(diff);
        ModPoly g = mp_gcd(f, diff, p);
        if (g.size() > 1) return false;
    }
    return true;
}

ModPoly smallest_irreducible(uint32_t p, uint32_t k) {
    if (k == 1) return {0, 1}; // x
    // enumerate monic degree-k polynomials by lexicographic coefficient order
    std::vector<uint32_t> c(k, 0);
    while (true) {
        ModPoly f(c.begin(), c.end());
        f.push_back(1);
        if (mp_irreducible(f, p)) return f;
        // next coefficient vector, last coordinate fastest
        int i = int(k) - 1;
        while (i >= 0 && c[i] == p - 1) c[i--] = 0;
        if (i < 0) fail_internal("no irreducible modulus found");
        ++c[i];
    }
}

struct FieldRegistry {
    std::mutex mutex;
    std::map<std::tuple<uint32_t, uint32_t, std::vector<uint32_t>>,
             std::unique_ptr<FieldInfo>> table;
};

FieldRegistry& registry() {
    static FieldRegistry r;
    return r;
}

} // namespace

FiniteField FiniteField::make(uint32_t p, uint32_t k,
                              const std::optional<std::vector<uint32_t>>& modulus) {
    require(is_prime_u32(p), ErrorCode::NonPrime,
            "p = " + std::to_string(p) + " is not prime");
    require(k >= 1 && k <= kMaxExtensionDegree, ErrorCode::DimensionCap,
            "extension degree k must be in [1, " + std::to_string(kMaxExtensionDegree) + "]");
    uint64_t q = 1;
    for (uint32_t i = 0; i < k; ++i) {
        q *= p;
        require(q <= kMaxFieldSize, ErrorCode::DimensionCap,
                "field size exceeds 2^16");
    }

    ModPoly f;
    if (modulus) {
        f = *modulus;
        require(f.size() == size_t(k) + 1, ErrorCode::ReducibleModulus,
                "modulus must have degree k");
        for (auto& c : f)
            require(c < p, ErrorCode::ReducibleModulus, "modulus coefficient out of range");
        require(f.back() == 1, ErrorCode::ReducibleModulus, "modulus must be monic");
        require(mp_irreducible(f, p), ErrorCode::ReducibleModulus,
                "modulus is reducible over GF(p)");
    } else {
        f = smallest_irreducible(p, k);
    }

    auto& reg = registry();
    std::lock_guard<std::mutex> lock(reg.mutex);
    auto key = std::make_tuple(p, k, f);
    auto it = reg.table.find(key);
    if (it == reg.table.end()) {
        auto info = std::make_unique<FieldInfo>();
        info->p = p;
        info->k = k;
        info->q = q;
        info->modulus = f;
        it = reg.table.emplace(std::move(key), std::move(info)).first;
    }
    return FiniteField(it->second.get());
}

FieldElement FiniteField::zero() const {
    FieldElement e;
    e.info_ = info_;
    return e;
}

FieldElement FiniteField::one() const { return scalar(1); }

FieldElement FiniteField::scalar(int64_t value) const {
    FieldElement e;
    e.info_ = info_;
    int64_t v = value % int64_t(info_->p);
    if (v < 0) v += info_->p;
    e.c_[0] = uint16_t(v);
    return e;
}

FieldElement FiniteField::from_coords(const std::vector<uint32_t>& coords) const {
    require(coords.size() == info_->k, ErrorCode::SchemaError,
            "expected " + std::to_string(info_->k) + " coordinates");
    FieldElement e;
    e.info_ = info_;
    for (uint32_t i = 0; i < info_->k; ++i) {
        require(coords[i] < info_->p, ErrorCode::SchemaError,
                "coordinate out of range [0, p)");
        e.c_[i] = uint16_t(coords[i]);
    }
    return e;
}

FieldElement FiniteField::from_index(uint64_t index) const {
    require(index < info_->q, ErrorCode::SchemaError, "element index out of range");
    FieldElement e;
    e.info_ = info_;
    for (uint32_t i = 0; i < info_->k; ++i) {
        e.c_[i] = uint16_t(index % info_->p);
        index /= info_->p;
    }
    return e;
}

std::vector<uint32_t> FieldElement::coords() const {
    std::vector<uint32_t> out(info_->k);
    for (uint32_t i = 0; i < info_->k; ++i) out[i] = c_[i];
    return out;
}

uint64_t FieldElement::index() const {
    uint64_t idx = 0;
    for (uint32_t i = info_->k; i-- > 0;) idx = idx * info_->p + c_[i];
    return idx;
}

bool FieldElement::is_zero() const {
    for (uint32_t i = 0; i < info_->k; ++i)
        if (c_[i] != 0) return false;
    return true;
}

bool FieldElement::is_one() const {
    if (c_[0] != 1) return false;
    for (uint32_t i = 1; i < info_->k; ++i)
        if (c_[i] != 0) return false;
    return true;
}

bool FieldElement::in_prime_subfield() const {
    for (uint32_t i = 1; i < info_->k; ++i)
        if (c_[i] != 0) return false;
    return true;
}

FieldElement FieldElement::to_prime_subfield() const {
    require(in_prime_subfield(), ErrorCode::InternalError,
            "element does not lie in the prime subfield");
    return FiniteField::make(info_->p, 1).scalar(c_[0]);
}

FieldElement FieldElement::operator+(const FieldElement& other) const {
    require_same_field(*this, other);
    FieldElement out;
    out.info_ = info_;
    for (uint32_t i = 0; i < info_->k; ++i)
        out.c_[i] = uint16_t((uint32_t(c_[i]) + other.c_[i]) % info_->p);
    return out;
}

FieldElement FieldElement::operator-(const FieldElement& other) const {
    require_same_field(*this, other);
    FieldElement out;
    out.info_ = info_;
    for (uint32_t i = 0; i < info_->k; ++i)
        out.c_[i] = uint16_t((uint32_t(c_[i]) + info_->p - other.c_[i]) % info_->p);
    return out;
}

FieldElement FieldElement::operator-() const {
    FieldElement out;
    out.info_ = info_;
    for (uint32_t i = 0; i < info_->k; ++i)
        out.c_[i] = uint16_t((info_->p - c_[i]) % info_->p);
    return out;
}

FieldElement FieldElement::operator*(const FieldElement& other) const {
    require_same_field(*this, other);
    const uint32_t p = info_->p;
    const uint32_t k = info_->k;
    FieldElement out;
    out.info_ = info_;
    if (k == 1) {
        out.c_[0] = uint16_t(uint64_t(c_[0]) * other.c_[0] % p);
        return out;
    }
    // schoolbook convolution, then reduce by the monic modulus from the top
    std::array<uint64_t, 2 * kMaxExtensionDegree> buf{};
    for (uint32_t i = 0; i < k; ++i) {
        if (c_[i] == 0) continue;
        for (uint32_t j = 0; j < k; ++j)
            buf[i + j] += uint64_t(c_[i]) * other.c_[j];
    }
    const auto& m = info_->modulus;
    for (uint32_t d = 2 * k - 2; d >= k; --d) {
        uint64_t c = buf[d] % p;
        if (c != 0) {
            for (uint32_t j = 0; j < k; ++j)
                buf[d - k + j] += c * (p - m[j]);
        }
        buf[d] = 0;
    }
    for (uint32_t i = 0; i < k; ++i) out.c_[i] = uint16_t(buf[i] % p);
    return out;
}

FieldElement FieldElement::inv() const {
    require(!is_zero(), ErrorCode::DivisionByZero, "inverse of zero");
    const uint32_t p = info_->p;
    if (info_->k == 1) {
        uint64_t r = 1, base = c_[0], e = p - 2;
        while (e > 0) {
            if (e & 1) r = r * base % p;
            base = base * base % p;
            e >>= 1;
        }
        FieldElement out;
        out.info_ = info_;
        out.c_[0] = uint16_t(r);
        return out;
    }
    // extended Euclid over GF(p)[x]
    auto inv_mod_p = [p](uint32_t x) {
        uint64_t r = 1, base = x, e = p - 2;
        while (e > 0) {
            if (e & 1) r = r * base % p;
            base = base * base % p;
            e >>= 1;
        }
        return uint32_t(r);
    };
    std::vector<uint32_t> r0 = info_->modulus;
    std::vector<uint32_t> r1(c_.begin(), c_.begin() + info_->k);
    while (!r1.empty() && r1.back() == 0) r1.pop_back();
    std::vector<uint32_t> t0{}, t1{1};
    auto poly_sub_scaled = [p](std::vector<uint32_t> a, const std::vector<uint32_t>& b,
                               uint32_t c, size_t shift) {
        if (a.size() < b.size() + shift) a.resize(b.size() + shift, 0);
        for (size_t j = 0; j < b.size(); ++j) {
            uint64_t sub = uint64_t(c) * b[j] % p;
            a[shift + j] = uint32_t((a[shift + j] + p - sub) % p);
        }
        while (!a.empty() && a.back() == 0) a.pop_back();
        return a;
    };
    while (!r1.empty()) {
        // divide r0 by r1
        std::vector<uint32_t> quotient;
        uint32_t lead_inv = inv_mod_p(r1.back());
        std::vector<uint32_t> rem = r0;
        if (rem.size() >= r1.size()) quotient.resize(rem.size() - r1.size() + 1, 0);
        while (rem.size() >= r1.size() && !rem.empty()) {
            uint32_t c = uint32_t(uint64_t(rem.back()) * lead_inv % p);
            size_t shift = rem.size() - r1.size();
            quotient[shift] = c;
            rem = poly_sub_scaled(std::move(rem), r1, c, shift);
            if (rem.size() < r1.size()) break;
        }
        // (r0, r1) <- (r1, rem); (t0, t1) <- (t1, t0 - q*t1)
        std::vector<uint32_t> qt1;
        for (size_t i = 0; i < quotient.size(); ++i) {
            if (quotient[i] == 0) continue;
            if (qt1.size() < t1.size() + i) qt1.resize(t1.size() + i, 0);
            for (size_t j = 0; j < t1.size(); ++j)
                qt1[i + j] = uint32_t((qt1[i + j] + uint64_t(quotient[i]) * t1[j]) % p);
        }
        std::vector<uint32_t> t2 = t0;
        if (t2.size() < qt1.size()) t2.resize(qt1.size(), 0);
        for (size_t j = 0; j < qt1.size(); ++j)
            t2[j] = uint32_t((t2[j] + p - qt1[j]) % p);
        while (!t2.empty() && t2.back() == 0) t2.pop_back();
        r0 = std::move(r1);
        r1 = std::move(rem);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    // r0 is the gcd, a nonzero constant since the modulus is irreducible
    if (r0.size() != 1) fail_internal("gcd with irreducible modulus not constant");
    uint32_t scale = inv_mod_p(r0[0]);
    FieldElement out;
    out.info_ = info_;
    for (size_t i = 0; i < t0.size() && i < info_->k; ++i)
        out.c_[i] = uint16_t(uint64_t(t0[i]) * scale % p);
    return out;
}

FieldElement FieldElement::operator/(const FieldElement& other) const {
    require_same_field(*this, other);
    return *this * other.inv();
}

bool FieldElement::operator==(const FieldElement& other) const {
    require_same_field(*this, other);
    for (uint32_t i = 0; i < info_->k; ++i)
        if (c_[i] != other.c_[i]) return false;
    return true;
}

FieldElement FieldElement::pow(int64_t e) const {
    FieldElement base = *this;
    uint64_t exp;
    if (e < 0) {
        base = inv();
        exp = uint64_t(-e);
    } else {
        exp = uint64_t(e);
    }
    FieldElement result = field().one();
    while (exp > 0) {
        if (exp & 1) result = result * base;
        base = base * base;
        exp >>= 1;
    }
    return result;
}

FieldElement FieldElement::frobenius() const { return pow(int64_t(info_->p)); }

FieldElement FieldElement::frobenius_inverse() const {
    // Frobenius has order k on GF(p^k), so its inverse is the (k-1)-fold power.
    FieldElement out = *this;
    for (uint32_t i = 0; i + 1 < info_->k; ++i) out = out.frobenius();
    return out;
}

std::string FieldElement::str() const {
    std::ostringstream os;
    os << "[";
    for (uint32_t i = 0; i < info_->k; ++i) {
        if (i) os << ",";
        os << c_[i];
    }
    os << "]";
    return os.str();
}

FieldElement nonunit_scalar(const FiniteField& field) {
    require(field.q() >= 3, ErrorCode::FieldTooSmall,
            "no element outside {0, 1} in GF(2)");
    return field.from_index(2);
}

} // namespace unifact
