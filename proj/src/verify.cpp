#include "unifact/verify.hpp"

namespace unifact {

namespace {

[[noreturn]] void invalid(const std::string& what) {
    fail(ErrorCode::CertificateInvalid, what);
}

void check(bool ok, const std::string& what) {
    if (!ok) invalid(what);
}

Algebra algebra_from_context(const Json& j) {
    if (!j.contains("field") || !j.contains("group") || !j.contains("cocycle"))
        fail(ErrorCode::SchemaError, "certificate lacks its algebra context");
    FiniteField F = field_from_json(j["field"]);
    FiniteGroup G = group_from_json(j["group"]);
    TwoCocycle tau = cocycle_from_json(j["cocycle"], G, F);
    return Algebra::twisted_group_algebra(F, G, tau);
}

std::vector<AlgebraElement> elements_from_array(const Json& j, const Algebra& a,
                                                const char* what) {
    if (!j.is_array()) fail(ErrorCode::SchemaError, std::string(what) + " must be an array");
    std::vector<AlgebraElement> out;
    for (const auto& entry : j) out.push_back(algelem_from_json(entry, a));
    return out;
}

/// Checks a claimed minimal unipotency index.
void check_unipotent_index(const AlgebraElement& u, int index, const std::string& label) {
    check(index >= 1, label + ": index must be positive");
    AlgebraUnipotentCertificate cert{u, index};
    check(cert.check(), label + ": (1-u)^index = 0 with minimal index fails");
}

void verify_radical_content(const Algebra& a, const std::vector<AlgebraElement>& basis,
                            int claimed_dim, int claimed_index) {
    check(int(basis.size()) == claimed_dim, "radical: basis size differs from claimed dim");
    // independence and ideal property
    RadicalData rad;
    rad.basis = basis;
    rad.dim = claimed_dim;
    for (const auto& b : basis) {
        check(nilpotency_index(b).has_value(), "radical: basis element is not nilpotent");
        for (int i = 0; i < a.dim(); ++i) {
            AlgebraElement e = a.basis_element(i);
            check(rad.contains(e * b) && rad.contains(b * e),
                  "radical: span is not a two-sided ideal");
        }
    }
    // nilpotency index of the ideal
    if (basis.empty()) {
        check(claimed_index == 1, "radical: zero ideal must have index 1");
    } else {
        std::vector<AlgebraElement> current = basis;
        int s = 1;
        while (!current.empty() && s <= claimed_index + 1) {
            std::vector<AlgebraElement> products;
            for (const auto& x : current)
                for (const auto& y : basis) products.push_back(x * y);
            // span of the products
            std::vector<AlgebraElement> next;
            RadicalData span;
            for (const auto& p : products) {
                if (p.is_zero()) continue;
                span.basis = next;
                if (!span.contains(p)) next.push_back(p);
            }
            current = std::move(next);
            ++s;
        }
        check(current.empty() && s == claimed_index, "radical: claimed nilpotency index fails");
    }
    // the recomputed radical must have the same span
    RadicalData recomputed = radical(a);
    check(recomputed.dim == claimed_dim, "radical: dimension differs from recomputation");
    for (const auto& b : basis)
        check(recomputed.contains(b), "radical: basis is not inside the recomputed radical");
}

void verify_radical(const Json& j) {
    Algebra a = algebra_from_context(j);
    std::vector<AlgebraElement> basis = elements_from_array(j.at("basis"), a, "basis");
    verify_radical_content(a, basis, int(j.at("dim").get<int64_t>()),
                           int(j.at("nilpotency_index").get<int64_t>()));
}

void verify_wedderburn(const Json& j) {
    Algebra a = algebra_from_context(j);
    std::vector<AlgebraElement> rbasis = elements_from_array(j.at("radical_basis"), a, "radical_basis");
    int rdim = int(j.at("radical_dim").get<int64_t>());
    check(int(rbasis.size()) == rdim, "wedderburn: radical basis size mismatch");
    // radical claims: nilpotent two-sided ideal (semisimplicity of the
    // quotient is certified by the isomorphisms below)
    RadicalData rad;
    rad.basis = rbasis;
    rad.dim = rdim;
    for (const auto& b : rbasis) {
        check(nilpotency_index(b).has_value(), "wedderburn: radical element not nilpotent");
        for (int i = 0; i < a.dim(); ++i) {
            AlgebraElement e = a.basis_element(i);
            check(rad.contains(e * b) && rad.contains(b * e),
                  "wedderburn: radical span is not an ideal");
        }
    }
    rad.nilpotency_index = a.dim() + 1; // not claimed here
    QuotientData quo = quotient(a, rad);
    const Algebra& S = quo.quotient;
    check(S.dim() == int(j.at("quotient_dim").get<int64_t>()),
          "wedderburn: quotient dimension mismatch");

    const Json& comps = j.at("components");
    if (!comps.is_array() || comps.empty())
        fail(ErrorCode::SchemaError, "wedderburn: components missing");

    AlgebraElement idem_sum = S.zero();
    std::vector<AlgebraElement> idems;
    int dim_count = 0;
    FiniteField Fp = a.field().prime_subfield();
    for (const auto& comp : comps) {
        int n = int(comp.at("n").get<int64_t>());
        FiniteField K = field_from_json(comp.at("K"));
        int deg = int(comp.at("degree_over_F").get<int64_t>());
        check(K.k() == a.field().k() * uint32_t(deg),
              "wedderburn: [K:F_p] does not match the claimed degree");
        AlgebraElement e = algelem_from_json(comp.at("idempotent"), S);
        check(e * e == e && !e.is_zero(), "wedderburn: idempotent fails e^2 = e");
        for (const auto& other : idems)
            check((e * other).is_zero() && (other * e).is_zero(),
                  "wedderburn: idempotents are not orthogonal");
        idems.push_back(e);
        idem_sum = idem_sum + e;
        // centrality
        for (int i = 0; i < S.dim(); ++i) {
            AlgebraElement b = S.basis_element(i);
            check(e * b == b * e, "wedderburn: idempotent is not central");
        }

        std::vector<AlgebraElement> fp_basis = elements_from_array(comp.at("fp_basis"), S, "fp_basis");
        const Json& imgs = comp.at("images");
        if (!imgs.is_array() || imgs.size() != fp_basis.size())
            fail(ErrorCode::SchemaError, "wedderburn: one image per basis element required");
        std::vector<Matrix> images;
        for (const auto& m : imgs) images.push_back(matrix_from_json(m, K));
        for (const auto& m : images)
            check(m.rows() == n && m.cols() == n, "wedderburn: image has wrong shape");

        // the fp basis must lie in the block and span it over the prime field
        size_t width = size_t(S.dim()) * a.field().k();
        std::vector<std::vector<FieldElement>> cols;
        for (const auto& b : fp_basis) {
            check(b * e == b && e * b == b, "wedderburn: basis element is outside the block");
            std::vector<FieldElement> flat;
            flat.reserve(width);
            for (int i = 0; i < S.dim(); ++i)
                for (uint32_t c = 0; c < a.field().k(); ++c)
                    flat.push_back(Fp.scalar(b.coeff(i).coord(c)));
            cols.push_back(std::move(flat));
        }
        Matrix basis_mat = mat_vec_to_matrix(Fp, cols);
        int block_fp_dim = rank(basis_mat);
        check(block_fp_dim == int(fp_basis.size()), "wedderburn: fp basis is dependent");
        check(block_fp_dim == n * n * int(K.k()), "wedderburn: block dimension mismatch");
        dim_count += n * n * deg;

        // the map must be a bijective homomorphism sending e to the identity
        Matrix solver = [&] {
            RrefResult r = rref(basis_mat);
            check(r.rank == basis_mat.cols(), "wedderburn: fp basis is dependent");
            Matrix s(Fp, basis_mat.cols(), basis_mat.rows());
            for (int i = 0; i < basis_mat.cols(); ++i)
                for (int c = 0; c < basis_mat.rows(); ++c) s.set(i, c, r.T.at(i, c));
            return s;
        }();
        auto image_of = [&](const AlgebraElement& x) {
            std::vector<FieldElement> flat;
            flat.reserve(width);
            for (int i = 0; i < S.dim(); ++i)
                for (uint32_t c = 0; c < a.field().k(); ++c)
                    flat.push_back(Fp.scalar(x.coeff(i).coord(c)));
            std::vector<FieldElement> gamma = mat_apply(solver, flat);
            // consistency: x must actually lie in the span
            std::vector<FieldElement> back = mat_apply(basis_mat, gamma);
            for (size_t t = 0; t < width; ++t)
                check(back[t] == flat[t], "wedderburn: element is outside the block span");
            Matrix out(K, n, n);
            bool first = true;
            for (size_t t = 0; t < gamma.size(); ++t) {
                if (gamma[t].is_zero()) continue;
                Matrix scaled = images[t].scaled(K.scalar(gamma[t].coord(0)));
                out = first ? scaled : out + scaled;
                first = false;
            }
            return out;
        };
        check(image_of(e) == Matrix::identity(K, n),
              "wedderburn: unity does not map to the identity matrix");
        for (size_t x = 0; x < fp_basis.size(); ++x)
            for (size_t y = 0; y < fp_basis.size(); ++y) {
                Matrix lhs = image_of(fp_basis[x] * fp_basis[y]);
                Matrix rhs = images[x] * images[y];
                check(lhs == rhs, "wedderburn: map is not multiplicative");
            }
        // bijectivity: the flattened images must be independent over GF(p)
        std::vector<std::vector<FieldElement>> img_cols;
        for (const auto& m : images) {
            std::vector<FieldElement> flat;
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c)
                    for (uint32_t l = 0; l < K.k(); ++l)
                        flat.push_back(Fp.scalar(m.at(r, c).coord(l)));
            img_cols.push_back(std::move(flat));
        }
        Matrix img_mat = mat_vec_to_matrix(Fp, img_cols);
        check(rank(img_mat) == int(images.size()), "wedderburn: map is not injective");
        check(int(images.size()) == n * n * int(K.k()), "wedderburn: map is not surjective");
    }
    check(idem_sum == S.one(), "wedderburn: idempotents do not sum to 1");
    check(dim_count == S.dim(), "wedderburn: sum n_i^2 [K_i:F] != dim");
}

void verify_derived(const Json& j) {
    Algebra a = algebra_from_context(j);
    uint64_t seed = j.at("seed").get<uint64_t>();
    AlgebraElement alpha = algelem_from_json(j.at("alpha"), a);
    DecomposedAlgebra d = decompose(a, seed);
    DerivedCertificate recomputed = derived_membership(d, alpha);
    const Json& dets = j.at("component_dets");
    check(dets.is_array() && dets.size() == recomputed.component_dets.size(),
          "derived: component count mismatch");
    for (size_t i = 0; i < recomputed.component_dets.size(); ++i) {
        FiniteField K = field_from_json(dets[i].at("K"));
        check(K == d.wd.components[i].K, "derived: component field mismatch");
        FieldElement claimed = element_from_json(dets[i].at("det"), K);
        check(claimed == recomputed.component_dets[i], "derived: determinant mismatch");
    }
    check(j.at("verdict").get<bool>() == recomputed.verdict, "derived: verdict mismatch");
}

void verify_factorization(const Json& j) {
    Algebra a = algebra_from_context(j);
    AlgebraElement alpha = algelem_from_json(j.at("alpha"), a);
    // component determinants, against a deterministic recomputation
    {
        DecomposedAlgebra d = decompose(a, j.at("seed").get<uint64_t>());
        DerivedCertificate recomputed = derived_membership(d, alpha);
        check(recomputed.verdict, "factorization: alpha is not in the derived subgroup");
        const Json& dets = j.at("component_dets");
        check(dets.is_array() && dets.size() == recomputed.component_dets.size(),
              "factorization: component count mismatch");
        for (size_t i = 0; i < recomputed.component_dets.size(); ++i) {
            FiniteField K = field_from_json(dets[i].at("K"));
            check(K == d.wd.components[i].K, "factorization: component field mismatch");
            check(element_from_json(dets[i].at("det"), K) == recomputed.component_dets[i],
                  "factorization: determinant mismatch");
        }
    }
    const Json& factors = j.at("factors");
    if (!factors.is_array()) fail(ErrorCode::SchemaError, "factorization: factors missing");
    check(factors.size() <= 3, "factorization: more than three factors");
    AlgebraElement product = a.one();
    std::vector<AlgebraElement> parsed;
    for (const auto& f : factors) {
        AlgebraElement u = algelem_from_json(f.at("element"), a);
        int index = int(f.at("index").get<int64_t>());
        check_unipotent_index(u, index, "factorization");
        product = product * u;
        parsed.push_back(u);
    }
    check(product == alpha, "factorization: factor product differs from alpha");
    check(alpha.is_unit(), "factorization: alpha is not a unit");
    // auxiliary data consistency
    AlgebraElement beta = algelem_from_json(j.at("beta"), a);
    AlgebraElement delta = algelem_from_json(j.at("delta"), a);
    check(is_unipotent(beta).has_value(), "factorization: beta is not unipotent");
    check(delta.is_zero() || nilpotency_index(delta).has_value(),
          "factorization: delta is not nilpotent");
    AlgebraElement third = (a.one() + delta) * beta.inv();
    bool third_matches = third.is_one() && factors.size() < 3;
    if (!parsed.empty() && parsed.back() == third) third_matches = true;
    if (alpha.is_one() && parsed.empty()) third_matches = third.is_one();
    check(third_matches, "factorization: (1+delta) beta^-1 does not match the third factor");
}

void verify_sl_factorization(const Json& j) {
    FiniteField F = field_from_json(j.at("field"));
    Matrix target = matrix_from_json(j.at("target"), F);
    std::string method = j.at("method").get<std::string>();
    const Json& factors = j.at("factors");
    if (!factors.is_array()) fail(ErrorCode::SchemaError, "sl_factorization: factors missing");
    check(is_sl(target), "sl_factorization: target is not in SL_n");
    int n = target.rows();
    Matrix product = Matrix::identity(F, n);
    for (const auto& f : factors) {
        Matrix u = matrix_from_json(f.at("matrix"), F);
        int index = int(f.at("index").get<int64_t>());
        UnipotentCertificate cert{u, index};
        check(cert.check(), "sl_factorization: factor unipotency fails");
        if (method == "transvections") {
            // shape: identity plus one off-diagonal entry
            int off = 0;
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c) {
                    if (r == c) {
                        check(u.at(r, c).is_one(), "sl_factorization: transvection diagonal");
                    } else if (!u.at(r, c).is_zero()) {
                        ++off;
                    }
                }
            check(off == 1, "sl_factorization: factor is not a transvection");
        }
        product = product * u;
    }
    if (method == "transvections")
        check(int(factors.size()) <= n * n + n, "sl_factorization: transvection count bound");
    if (method == "bounded") check(factors.size() <= 3, "sl_factorization: factor count bound");
    check(product == target, "sl_factorization: product differs from target");
}

void verify_mat_commutator(const Json& j) {
    FiniteField F = field_from_json(j.at("field"));
    MatCommutatorWitness w;
    w.target = matrix_from_json(j.at("target"), F);
    w.b = matrix_from_json(j.at("B"), F);
    w.c = matrix_from_json(j.at("C"), F);
    check(w.verify(), "commutator: [B, C] differs from the target");
}

void verify_alg_commutator(const Json& j) {
    Algebra a = algebra_from_context(j);
    AlgCommutatorWitness w;
    w.target = algelem_from_json(j.at("target"), a);
    w.b = algelem_from_json(j.at("B"), a);
    w.c = algelem_from_json(j.at("C"), a);
    check(w.verify(), "commutator: [B, C] differs from the target");
}

void verify_nilfree(const Json& j) {
    Algebra a = algebra_from_context(j);
    const FiniteGroup& g = a.group();
    const TwoCocycle& tau = a.cocycle();
    bool abelian = g.abelian();
    bool coprime = g.order() % int(a.field().p()) != 0;
    bool symmetric = cocycle_symmetric(g, tau);
    check(j.at("abelian").get<bool>() == abelian, "nilfree: abelian flag mismatch");
    check(j.at("order_coprime_to_p").get<bool>() == coprime, "nilfree: p' flag mismatch");
    check(j.at("symmetric").get<bool>() == symmetric, "nilfree: symmetry flag mismatch");
    check(j.at("tau_prime_subfield").get<bool>() == tau.prime_subfield_valued(),
          "nilfree: prime-subfield flag mismatch");
    bool verdict = abelian && coprime && symmetric;
    check(j.at("verdict").get<bool>() == verdict, "nilfree: verdict mismatch");
    if (!verdict) {
        if (!j.contains("witness")) invalid("nilfree: negative verdict must carry a witness");
        AlgebraElement w = algelem_from_json(j.at("witness"), a);
        check(!w.is_zero(), "nilfree: witness is zero");
        check(nilpotency_index(w).has_value(), "nilfree: witness is not nilpotent");
    } else {
        check(!j.contains("witness"), "nilfree: positive verdict must not carry a witness");
    }
}

void verify_unitrad(const Json& j) {
    Algebra a = algebra_from_context(j);
    RadicalData rad = radical(a);
    UnitGroupEnumeration e = unipotent_radical_check(a, rad);
    check(j.at("unit_group_order").get<uint64_t>() == e.unit_count,
          "unipotent_radical: unit group order mismatch");
    check(j.at("one_plus_J_order").get<uint64_t>() == e.one_plus_j_count,
          "unipotent_radical: |1+J| mismatch");
    check(j.at("unipotent_count").get<uint64_t>() == e.unipotent_count,
          "unipotent_radical: unipotent count mismatch");
    check(j.at("verdict").get<bool>() == e.verdict, "unipotent_radical: verdict mismatch");
}

} // namespace

std::string verify_certificate(const Json& certificate) {
    if (!certificate.is_object() || !certificate.contains("kind") ||
        !certificate["kind"].is_string())
        fail(ErrorCode::SchemaError, "certificate lacks a 'kind' tag");
    std::string kind = certificate["kind"].get<std::string>();
    try {
        if (kind == "radical") {
            verify_radical(certificate);
        } else if (kind == "wedderburn") {
            verify_wedderburn(certificate);
        } else if (kind == "derived") {
            verify_derived(certificate);
        } else if (kind == "factorization") {
            verify_factorization(certificate);
        } else if (kind == "sl_factorization") {
            verify_sl_factorization(certificate);
        } else if (kind == "mat_commutator") {
            verify_mat_commutator(certificate);
        } else if (kind == "alg_commutator") {
            verify_alg_commutator(certificate);
        } else if (kind == "nilfree") {
            verify_nilfree(certificate);
        } else if (kind == "unipotent_radical") {
            verify_unitrad(certificate);
        } else {
            fail(ErrorCode::SchemaError, "unknown certificate kind '" + kind + "'");
        }
    } catch (const Json::exception& e) {
        fail(ErrorCode::SchemaError, std::string("certificate field access failed: ") + e.what());
    } catch (const Error& e) {
        if (e.code() == ErrorCode::SchemaError || e.code() == ErrorCode::CertificateInvalid) throw;
        // every other failure provoked by untrusted data is a bad certificate
        fail(ErrorCode::CertificateInvalid, std::string("underlying check failed: ") + e.what());
    }
    return kind;
}

} // namespace unifact
