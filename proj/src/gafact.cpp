#include "unifact/gafact.hpp"

namespace unifact {

DecomposedAlgebra decompose(const Algebra& a, uint64_t seed) {
    DecomposedAlgebra d;
    d.algebra = a;
    d.seed = seed;
    d.rad = radical(a);
    d.quo = quotient(a, d.rad);
    Rng rng(seed);
    d.wd = wedderburn(d.quo.quotient, rng);
    return d;
}

DerivedCertificate derived_membership(const DecomposedAlgebra& d, const AlgebraElement& alpha) {
    require(alpha.algebra() == d.algebra, ErrorCode::FieldMismatch,
            "element of a different algebra");
    require(d.algebra.field().q() > 2, ErrorCode::HypothesisViolated,
            "derived-subgroup membership requires |F| > 2");
    require(alpha.is_unit(), ErrorCode::NotAUnit, "element is not a unit");

    AlgebraElement abar = d.quo.project(alpha);
    DerivedCertificate cert;
    cert.verdict = true;
    for (size_t i = 0; i < d.wd.components.size(); ++i) {
        Matrix image = d.wd.component_image(abar, int(i));
        FieldElement det_i = det(image);
        require(!det_i.is_zero(), ErrorCode::InternalError,
                "unit image became singular in a component");
        if (!det_i.is_one()) cert.verdict = false;
        cert.component_dets.push_back(det_i);
    }
    return cert;
}

AlgebraElement LiftedFactorization::product() const {
    AlgebraElement p = alpha.algebra().one();
    for (const auto& f : factors) p = p * f.u;
    return p;
}

bool LiftedFactorization::verify() const {
    for (const auto& f : factors)
        if (!f.check()) return false;
    return product() == alpha;
}

LiftedFactorization factor_three_unipotents(const DecomposedAlgebra& d,
                                            const AlgebraElement& alpha) {
    DerivedCertificate membership = derived_membership(d, alpha);
    require(membership.verdict, ErrorCode::NotInDerived,
            "element is not in the derived subgroup of the unit group");

    const Algebra& A = d.algebra;
    LiftedFactorization out;
    out.alpha = alpha;
    out.beta = A.one();
    out.delta = A.zero();
    if (alpha.is_one()) return out;

    AlgebraElement abar = d.quo.project(alpha);

    // componentwise: break centrality if needed, then factor into <= 2 unipotents
    std::vector<Matrix> g1_images, g2_images, b_images;
    for (size_t i = 0; i < d.wd.components.size(); ++i) {
        const WedderburnComponent& comp = d.wd.components[i];
        Matrix a_i = d.wd.component_image(abar, int(i));
        Matrix b_i = Matrix::identity(comp.K, comp.n);
        if (a_i.is_scalar() && !a_i.is_identity()) {
            require(comp.n >= 2, ErrorCode::InternalError,
                    "1x1 component image should be the identity");
            b_i.set(0, 1, comp.K.one());
        }
        Matrix ab = a_i * b_i;
        UnipotentFactorization split = two_unipotent_factorization(ab);
        Matrix u1 = Matrix::identity(comp.K, comp.n);
        Matrix u2 = Matrix::identity(comp.K, comp.n);
        if (split.factors.size() == 1) {
            u1 = split.factors[0].u;
        } else if (split.factors.size() == 2) {
            u1 = split.factors[0].u;
            u2 = split.factors[1].u;
        }
        require(u1 * u2 == ab, ErrorCode::InternalError, "component split product mismatch");
        g1_images.push_back(std::move(u1));
        g2_images.push_back(std::move(u2));
        b_images.push_back(std::move(b_i));
    }

    AlgebraElement gamma1 = d.quo.lift(d.wd.assemble(g1_images));
    AlgebraElement gamma2 = d.quo.lift(d.wd.assemble(g2_images));
    AlgebraElement beta = d.quo.lift(d.wd.assemble(b_images));

    // unipotent modulo the nilpotent radical, hence unipotent
    auto c1 = is_unipotent(gamma1);
    auto c2 = is_unipotent(gamma2);
    require(c1 && c2, ErrorCode::InternalError, "lifted factors are not unipotent");
    AlgebraElement beta_inv = beta.inv();
    auto cb = is_unipotent(beta_inv);
    require(cb.has_value(), ErrorCode::InternalError, "beta inverse is not unipotent");

    // delta is the radical defect: gamma1 gamma2 (1 + delta) = alpha beta
    AlgebraElement delta = gamma2.inv() * gamma1.inv() * alpha * beta - A.one();
    require(d.rad.contains(delta), ErrorCode::InternalError,
            "factorization defect left the radical");

    AlgebraUnipotentCertificate third = unipotent_absorb(d.rad, *cb, delta);

    out.beta = beta;
    out.delta = delta;
    for (const auto& cert : {*c1, *c2, third})
        if (!cert.u.is_one()) out.factors.push_back(cert);
    require(int(out.factors.size()) <= 3, ErrorCode::InternalError, "too many factors");
    require(out.verify(), ErrorCode::InternalError, "lifted factorization check failed");
    return out;
}

AlgebraUnipotentCertificate unipotent_absorb(const RadicalData& rad,
                                             const AlgebraUnipotentCertificate& x,
                                             const AlgebraElement& y) {
    require(x.check(), ErrorCode::NotUnipotent, "invalid unipotent certificate");
    require(y.algebra() == x.u.algebra(), ErrorCode::FieldMismatch,
            "element of a different algebra");
    require(rad.contains(y), ErrorCode::NotInRadical,
            "absorbed element is outside the radical");
    const Algebra& A = x.u.algebra();
    AlgebraElement product = (A.one() + y) * x.u;
    auto cert = is_unipotent(product);
    require(cert.has_value(), ErrorCode::InternalError, "(1+y)x is not unipotent");
    require(cert->index <= x.index * rad.nilpotency_index, ErrorCode::InternalError,
            "unipotency index exceeds the m1*m2 bound");
    return *cert;
}

bool AlgCommutatorWitness::verify() const {
    if (!b.is_unit() || !c.is_unit()) return false;
    return b * c * b.inv() * c.inv() == target;
}

AlgCommutatorWitness index2_commutator_semisimple(const DecomposedAlgebra& d,
                                                  const AlgebraElement& u) {
    require(u.algebra() == d.algebra, ErrorCode::FieldMismatch,
            "element of a different algebra");
    require(d.algebra.field().q() > 2, ErrorCode::FieldTooSmall,
            "commutator witnesses require |F| > 2");
    require(d.rad.dim == 0, ErrorCode::NotSemisimple,
            "the algebra has a nonzero radical");
    auto cert = is_unipotent(u);
    require(cert.has_value(), ErrorCode::NotUnipotent, "element is not unipotent");
    require(cert->index <= 2, ErrorCode::IndexTooHigh,
            "witness construction needs index <= 2");

    AlgebraElement ubar = d.quo.project(u);
    std::vector<Matrix> b_images, c_images;
    for (size_t i = 0; i < d.wd.components.size(); ++i) {
        Matrix u_i = d.wd.component_image(ubar, int(i));
        MatCommutatorWitness w = commutator_witness_index2(u_i);
        b_images.push_back(w.b);
        c_images.push_back(w.c);
    }
    AlgCommutatorWitness out;
    out.target = u;
    // the quotient is the algebra itself here (J = 0); lift through the
    // section to stay in source coordinates
    out.b = d.quo.lift(d.wd.assemble(b_images));
    out.c = d.quo.lift(d.wd.assemble(c_images));
    require(out.verify(), ErrorCode::InternalError, "commutator witness check failed");
    return out;
}

} // namespace unifact
